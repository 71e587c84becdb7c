//! Command-line front end: construct, verify, normalize, and enumerate
//! invariant generalized complex structures on maximal flag manifolds.
//!
//! Every command prints one deterministic JSON document. Exit codes: 0 on
//! success, 1 when the command ran but its verdict is negative (not
//! integrable, not Kahler, oracle disagreement, failed verification), 2 on
//! input or environment errors.

use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use flaggcs::cells::{cell_of_structure, enumerate_cells, shape_classes};
use flaggcs::integrability::{build_from_theta, is_integrable};
use flaggcs::json::{
    cell_to_dto, check_to_dto, decomposition_to_dto, kahler_to_dto, normal_form_to_dto,
    pair_from_json, root_system_to_dto, spinor_to_dto, structure_from_json, structure_to_dto,
    structure_to_json, to_pretty_json, word_to_dto, OracleRunDto, OracleStructureDto,
    OracleTripleDto, OrbitEntryDto, SpinorCheckDto, WeylOrbitDto,
};
use flaggcs::oracle::{max_nijenhuis, triple_reports, SlnRealization, NIJENHUIS_TOL};
use flaggcs::rational::{parse_rat, Rat};
use flaggcs::roots::{Root, RootSystem, WeylElement};
use flaggcs::sample::{random_integrable_structure, random_structure};
use flaggcs::spinors::{annihilates, annihilator_dimension, spinor_of};
use flaggcs::structures::{InvariantGcs, Sign};
use flaggcs::weyl_action::{act, orbit, stabilizer};

/// Cap on Weyl group enumeration; override with the FLAGGCS_WEYL_CAP
/// environment variable.
const WEYL_CAP_VAR: &str = "FLAGGCS_WEYL_CAP";

#[derive(Parser)]
#[command(
    name = "flaggcs",
    about = "Invariant generalized complex structures on maximal flag manifolds, in exact arithmetic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArg {
    /// Write the JSON document here instead of stdout.
    #[arg(long, value_name = "FILE")]
    output: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a root system: Cartan matrix, positive roots, additive triples.
    Roots {
        /// Algebra designator, e.g. A2 or G2.
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Verify a structure: defining identities, integrability, type.
    /// Exits 1 unless both checks pass.
    Check {
        /// Structure JSON file ("-" for stdin).
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Moduli coordinates of a structure plus the transform witness.
    NormalForm {
        /// Structure JSON file ("-" for stdin).
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Build the integrable structure determined by a subset of simple roots.
    Build {
        /// Algebra designator, e.g. A2.
        #[arg(long)]
        algebra: String,
        /// Comma-separated simple roots, 1-based: "a1,a3". Empty for none.
        #[arg(long, default_value = "")]
        theta: String,
        /// Positive rational parameters on theta, e.g. "2,1/2".
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        x: String,
        /// Rational B-coefficients on theta; defaults to zeros.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        b: String,
        /// Complex signs off the closure, e.g. "+1,-1"; defaults to all +1.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        signs: String,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Weyl orbit and stabilizer of a structure, or one translate via --word.
    WeylOrbit {
        /// Structure JSON file ("-" for stdin).
        #[arg(long)]
        input: String,
        /// Apply only this word (1-based reflection indices, e.g. "1,2";
        /// rightmost acts first) and print the translated structure.
        #[arg(long)]
        word: Option<String>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Pure spinor line of a structure.
    Spinor {
        /// Structure JSON file ("-" for stdin).
        #[arg(long)]
        input: String,
        /// Also verify Clifford annihilation and the annihilator dimension;
        /// exits 1 when verification fails.
        #[arg(long)]
        verify_annihilator: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Kahler verdicts for a pair {"J": ..., "Jp": ...}. Exits 1 unless the
    /// pair is Kahler (or almost Kahler with --almost).
    Kahler {
        /// Pair JSON file ("-" for stdin).
        #[arg(long)]
        input: String,
        /// Only require the almost (pointwise metric) level.
        #[arg(long)]
        almost: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Cell decomposition of the moduli space, or the cell of one structure.
    Cells {
        /// Algebra designator, e.g. A2.
        #[arg(long, conflicts_with = "locate")]
        algebra: Option<String>,
        /// Structure JSON file; prints the containing cell instead.
        #[arg(long)]
        locate: Option<String>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Compare symbolic integrability against the floating-point residual.
    /// Exits 1 on any disagreement.
    OracleCheck {
        /// Structure JSON file ("-" for stdin); single-structure mode.
        #[arg(long, conflicts_with_all = ["algebra", "samples", "seed"])]
        input: Option<String>,
        /// Algebra for sampling mode (A family only).
        #[arg(long)]
        algebra: Option<String>,
        /// Number of random structures to compare in sampling mode.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// RNG seed for sampling mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residual threshold separating roundoff from obstruction.
        #[arg(long, default_value_t = NIJENHUIS_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArg,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Any flaggcs or IO error is an input/environment problem: exit 2 via Err.
/// Negative verdicts are Ok(1).
fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Roots { algebra, out } => {
            let rs = RootSystem::parse(&algebra)?;
            emit(&out, to_pretty_json(&root_system_to_dto(&rs))?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { input, out } => {
            let j = read_structure(&input)?;
            let dto = check_to_dto(&j);
            let ok = dto.gacs && dto.integrable;
            emit(&out, to_pretty_json(&dto)?)?;
            Ok(verdict(ok))
        }
        Command::NormalForm { input, out } => {
            let j = read_structure(&input)?;
            emit(&out, to_pretty_json(&normal_form_to_dto(&j))?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Build {
            algebra,
            theta,
            x,
            b,
            signs,
            out,
        } => {
            let rs = Arc::new(RootSystem::parse(&algebra)?);
            let theta = parse_theta(&rs, &theta)?;
            let x = parse_rat_list(&x)?;
            let b = if b.trim().is_empty() {
                vec![Rat::default(); theta.len()]
            } else {
                parse_rat_list(&b)?
            };
            let closure_len = rs.theta_closure(&theta)?.len();
            let signs = if signs.trim().is_empty() {
                vec![Sign::Plus; rs.num_positive() - closure_len]
            } else {
                parse_sign_list(&signs)?
            };
            let j = build_from_theta(rs, &theta, &x, &b, &signs)?;
            emit(&out, structure_to_json(&j)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::WeylOrbit { input, word, out } => {
            let j = read_structure(&input)?;
            let cap = weyl_cap()?;
            match word {
                Some(word) => {
                    let w = parse_word(j.algebra(), &word)?;
                    let image = act(&w, &j)?;
                    emit(&out, structure_to_json(&image)?)?;
                }
                None => {
                    let orb = orbit(&j, cap)?;
                    let stab = stabilizer(&j, cap)?;
                    let dto = WeylOrbitDto {
                        algebra: j.algebra().name(),
                        orbit_size: orb.len(),
                        stabilizer_size: stab.len(),
                        entries: orb
                            .iter()
                            .map(|(w, image)| OrbitEntryDto {
                                word: word_to_dto(w.word()),
                                structure: structure_to_dto(image),
                            })
                            .collect(),
                    };
                    emit(&out, to_pretty_json(&dto)?)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Spinor {
            input,
            verify_annihilator,
            out,
        } => {
            let j = read_structure(&input)?;
            let phi = spinor_of(&j);
            let spinor = spinor_to_dto(j.algebra(), &phi);
            if !verify_annihilator {
                emit(&out, to_pretty_json(&spinor)?)?;
                return Ok(ExitCode::SUCCESS);
            }
            let d = j.algebra().num_positive();
            let dto = SpinorCheckDto {
                spinor,
                annihilates: annihilates(&j, &phi),
                annihilator_dimension: annihilator_dimension(&phi, d),
                expected_dimension: 2 * d,
            };
            let ok = dto.annihilates && dto.annihilator_dimension == dto.expected_dimension;
            emit(&out, to_pretty_json(&dto)?)?;
            Ok(verdict(ok))
        }
        Command::Kahler { input, almost, out } => {
            let pair = read_pair(&input)?;
            let dto = kahler_to_dto(&pair);
            let ok = if almost {
                dto.almost_kahler
            } else {
                dto.kahler
            };
            emit(&out, to_pretty_json(&dto)?)?;
            Ok(verdict(ok))
        }
        Command::Cells {
            algebra,
            locate,
            out,
        } => {
            let cap = weyl_cap()?;
            match (algebra, locate) {
                (Some(algebra), None) => {
                    let rs = Arc::new(RootSystem::parse(&algebra)?);
                    let decomp = enumerate_cells(rs.clone(), cap)?;
                    let shapes = shape_classes(rs.clone())?;
                    emit(
                        &out,
                        to_pretty_json(&decomposition_to_dto(&rs, &decomp, &shapes))?,
                    )?;
                    Ok(ExitCode::SUCCESS)
                }
                (None, Some(path)) => {
                    let j = read_structure(&path)?;
                    let cell = cell_of_structure(&j, cap)?;
                    emit(&out, to_pretty_json(&cell_to_dto(&cell))?)?;
                    Ok(ExitCode::SUCCESS)
                }
                _ => Err("cells wants exactly one of --algebra or --locate".into()),
            }
        }
        Command::OracleCheck {
            input,
            algebra,
            samples,
            seed,
            tol,
            out,
        } => match input {
            Some(path) => {
                let j = read_structure(&path)?;
                let r = SlnRealization::standard(j.algebra())?;
                let reports = triple_reports(&r, &j)?;
                let max_residual = reports.iter().map(|t| t.residual).fold(0.0, f64::max);
                let dto = OracleStructureDto {
                    algebra: j.algebra().name(),
                    tolerance: tol,
                    symbolic: is_integrable(&j),
                    numeric: max_residual < tol,
                    agree: is_integrable(&j) == (max_residual < tol),
                    max_residual,
                    triples: reports
                        .iter()
                        .map(|t| OracleTripleDto {
                            roots: t.roots.iter().map(|r| r.coords().to_vec()).collect(),
                            residual: t.residual,
                        })
                        .collect(),
                };
                let ok = dto.agree;
                emit(&out, to_pretty_json(&dto)?)?;
                Ok(verdict(ok))
            }
            None => {
                let algebra = algebra.ok_or("oracle-check wants --input or --algebra")?;
                let rs = Arc::new(RootSystem::parse(&algebra)?);
                let realization = SlnRealization::standard(&rs)?;
                let cap = weyl_cap()?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut agreements = 0;
                let mut disagreements = 0;
                let mut max_residual_integrable: f64 = 0.0;
                let mut min_residual_nonintegrable: Option<f64> = None;
                for i in 0..samples {
                    // Alternate arbitrary and certified-integrable samples.
                    let j = if i % 2 == 0 {
                        random_structure(&mut rng, &rs)
                    } else {
                        random_integrable_structure(&mut rng, &rs, cap)
                    };
                    let symbolic = is_integrable(&j);
                    let residual = max_nijenhuis(&realization, &j)?;
                    if symbolic {
                        max_residual_integrable = max_residual_integrable.max(residual);
                    } else {
                        min_residual_nonintegrable =
                            Some(min_residual_nonintegrable.map_or(residual, |m| m.min(residual)));
                    }
                    if symbolic == (residual < tol) {
                        agreements += 1;
                    } else {
                        disagreements += 1;
                    }
                }
                let dto = OracleRunDto {
                    algebra: rs.name(),
                    samples,
                    seed,
                    tolerance: tol,
                    agreements,
                    disagreements,
                    max_residual_integrable,
                    min_residual_nonintegrable,
                };
                let ok = disagreements == 0;
                emit(&out, to_pretty_json(&dto)?)?;
                Ok(verdict(ok))
            }
        },
    }
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn emit(out: &OutputArg, text: String) -> std::io::Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn read_structure(path: &str) -> Result<InvariantGcs, Box<dyn std::error::Error>> {
    Ok(structure_from_json(&read_input(path)?)?)
}

fn read_pair(path: &str) -> Result<flaggcs::kahler::KahlerPair, Box<dyn std::error::Error>> {
    Ok(pair_from_json(&read_input(path)?)?)
}

fn weyl_cap() -> Result<usize, Box<dyn std::error::Error>> {
    match std::env::var(WEYL_CAP_VAR) {
        Ok(v) => Ok(v
            .trim()
            .parse()
            .map_err(|_| format!("{WEYL_CAP_VAR} must be a positive integer, got `{v}`"))?),
        Err(_) => Ok(flaggcs::roots::DEFAULT_WEYL_CAP),
    }
}

/// Parses "a1,a3" into simple roots (1-based indices).
fn parse_theta(rs: &RootSystem, s: &str) -> Result<Vec<Root>, Box<dyn std::error::Error>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let idx: usize = tok
                .strip_prefix('a')
                .and_then(|rest| rest.parse().ok())
                .filter(|&i| 1 <= i && i <= rs.rank())
                .ok_or_else(|| {
                    format!(
                        "bad theta entry `{tok}` (expected a1..a{rank})",
                        rank = rs.rank()
                    )
                })?;
            Ok(Root::simple(rs.rank(), idx - 1))
        })
        .collect()
}

fn parse_rat_list(s: &str) -> Result<Vec<Rat>, Box<dyn std::error::Error>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|tok| Ok(parse_rat(tok)?)).collect()
}

fn parse_sign_list(s: &str) -> Result<Vec<Sign>, Box<dyn std::error::Error>> {
    s.split(',')
        .map(|tok| match tok.trim() {
            "+1" | "+" | "1" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            other => Err(format!("bad sign `{other}` (expected +1 or -1)").into()),
        })
        .collect()
}

/// Parses "1,2" into the element s_1 s_2 (rightmost acting first).
fn parse_word(rs: &RootSystem, s: &str) -> Result<WeylElement, Box<dyn std::error::Error>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(WeylElement::identity(rs.num_positive()));
    }
    let letters: Vec<usize> = s
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<usize>()
                .ok()
                .filter(|&i| 1 <= i && i <= rs.rank())
                .map(|i| i - 1)
                .ok_or_else(|| {
                    format!(
                        "bad word letter `{tok}` (expected 1..{rank})",
                        rank = rs.rank()
                    )
                })
        })
        .collect::<Result<_, _>>()?;
    Ok(WeylElement::from_word(rs, &letters))
}
