//! JSON interchange formats.
//!
//! Exact rationals travel as `"p"` or `"p/q"` strings and roots as
//! coordinate arrays over the simple basis. Serialization is deterministic:
//! struct fields keep declaration order, collections are emitted in the
//! crate's canonical orders (positive roots by height then coordinates,
//! cells in discovery order), so equal values produce byte-identical
//! documents.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cells::{CellDecomposition, ShapeClass, ThetaCell};
use crate::error::{Error, Result};
use crate::integrability::{integrability_report, TripleVerdict};
use crate::kahler::{self, KahlerPair};
use crate::rational::{format_rat, parse_rat};
use crate::roots::{Root, RootSystem};
use crate::spinors::{generator_name, Spinor};
use crate::structures::{Block, InvariantGcs, NormalForm, Sign};

/// Pretty JSON with a trailing newline.
pub fn to_pretty_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// One root's block. The `kind` tag distinguishes the two variants.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BlockDto {
    Complex {
        root: Vec<i64>,
        sign: i8,
    },
    NonComplex {
        root: Vec<i64>,
        a: String,
        x: String,
    },
}

/// A full invariant structure: one block per positive root.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StructureDto {
    pub algebra: String,
    pub blocks: Vec<BlockDto>,
}

fn block_to_dto(root: &Root, block: &Block) -> BlockDto {
    let coords = root.coords().to_vec();
    match block {
        Block::Complex(sign) => BlockDto::Complex {
            root: coords,
            sign: sign.to_i8(),
        },
        Block::NonComplex { a, x } => BlockDto::NonComplex {
            root: coords,
            a: format_rat(a),
            x: format_rat(x),
        },
    }
}

pub fn structure_to_dto(j: &InvariantGcs) -> StructureDto {
    StructureDto {
        algebra: j.algebra().name(),
        blocks: j
            .algebra()
            .positive_roots()
            .iter()
            .zip(j.blocks())
            .map(|(r, b)| block_to_dto(r, b))
            .collect(),
    }
}

/// Rebuilds a structure, requiring the blocks to cover the positive roots
/// exactly once (in any order).
pub fn structure_from_dto(dto: &StructureDto) -> Result<InvariantGcs> {
    let rs = Arc::new(RootSystem::parse(&dto.algebra)?);
    let d = rs.num_positive();
    let mut slots: Vec<Option<Block>> = vec![None; d];
    let mut duplicated = Vec::new();
    let mut unknown = Vec::new();
    for entry in &dto.blocks {
        let (coords, block) = match entry {
            BlockDto::Complex { root, sign } => (root, Block::complex(Sign::from_i8(*sign)?)),
            BlockDto::NonComplex { root, a, x } => {
                (root, Block::noncomplex(parse_rat(a)?, parse_rat(x)?)?)
            }
        };
        let root = Root::new(coords.clone());
        match rs.root_index(&root) {
            None => unknown.push(root.to_string()),
            Some(i) => {
                if slots[i].is_some() {
                    duplicated.push(root.to_string());
                } else {
                    slots[i] = Some(block);
                }
            }
        }
    }
    let missing: Vec<String> = slots
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_none())
        .map(|(i, _)| rs.root(i).to_string())
        .collect();
    if !missing.is_empty() || !duplicated.is_empty() || !unknown.is_empty() {
        return Err(Error::RootCoverage {
            missing,
            duplicated,
            unknown,
        });
    }
    InvariantGcs::new(rs, slots.into_iter().map(Option::unwrap).collect())
}

pub fn structure_to_json(j: &InvariantGcs) -> Result<String> {
    to_pretty_json(&structure_to_dto(j))
}

pub fn structure_from_json(s: &str) -> Result<InvariantGcs> {
    let dto: StructureDto = serde_json::from_str(s)?;
    structure_from_dto(&dto)
}

/// An ordered pair of structures on the same algebra.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PairDto {
    #[serde(rename = "J")]
    pub j: StructureDto,
    #[serde(rename = "Jp")]
    pub jp: StructureDto,
}

pub fn pair_to_dto(pair: &KahlerPair) -> PairDto {
    PairDto {
        j: structure_to_dto(pair.j()),
        jp: structure_to_dto(pair.jp()),
    }
}

pub fn pair_from_dto(dto: &PairDto) -> Result<KahlerPair> {
    KahlerPair::new(structure_from_dto(&dto.j)?, structure_from_dto(&dto.jp)?)
}

pub fn pair_from_json(s: &str) -> Result<KahlerPair> {
    let dto: PairDto = serde_json::from_str(s)?;
    pair_from_dto(&dto)
}

/// Root system description.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RootSystemDto {
    pub algebra: String,
    pub rank: usize,
    pub num_positive: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    /// Positive roots by height, then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    /// Index triples (i, j, k) with root i + root j = root k and i < j.
    pub additive_triples: Vec<[usize; 3]>,
}

pub fn root_system_to_dto(rs: &RootSystem) -> RootSystemDto {
    RootSystemDto {
        algebra: rs.name(),
        rank: rs.rank(),
        num_positive: rs.num_positive(),
        cartan_matrix: rs.cartan_matrix().to_vec(),
        simple_roots: rs
            .simple_roots()
            .iter()
            .map(|r| r.coords().to_vec())
            .collect(),
        positive_roots: rs
            .positive_roots()
            .iter()
            .map(|r| r.coords().to_vec())
            .collect(),
        additive_triples: rs.triples().to_vec(),
    }
}

/// One triple's verdict in an integrability report.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TripleVerdictDto {
    pub roots: Vec<Vec<i64>>,
    pub kinds: Vec<String>,
    pub ok: bool,
    pub reason: String,
}

fn verdict_to_dto(v: &TripleVerdict) -> TripleVerdictDto {
    TripleVerdictDto {
        roots: v.roots.iter().map(|r| r.coords().to_vec()).collect(),
        kinds: v.kinds.iter().map(|k| k.label().to_string()).collect(),
        ok: v.ok,
        reason: v.describe(),
    }
}

/// Verification summary of one structure.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckDto {
    pub algebra: String,
    /// Assembled matrix squares to -1 and is an isometry of the pairing.
    pub gacs: bool,
    pub integrable: bool,
    /// Number of noncomplex blocks.
    pub gcs_type: usize,
    pub triples: Vec<TripleVerdictDto>,
}

pub fn check_to_dto(j: &InvariantGcs) -> CheckDto {
    let report = integrability_report(j);
    CheckDto {
        algebra: j.algebra().name(),
        gacs: j.is_gacs(),
        integrable: report.integrable(),
        gcs_type: j.gcs_type(),
        triples: report.verdicts.iter().map(verdict_to_dto).collect(),
    }
}

/// Moduli coordinates plus the reconstruction witness.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NormalFormDto {
    pub algebra: String,
    /// Per positive root: "+0", "-0", or the nonzero rational x.
    pub coords: Vec<String>,
    /// Transform coefficients carrying the representative back to the input.
    pub witness: Vec<String>,
}

pub fn normal_form_to_dto(j: &InvariantGcs) -> NormalFormDto {
    let NormalForm { coords, witness } = j.normal_form();
    NormalFormDto {
        algebra: j.algebra().name(),
        coords: coords.iter().map(|c| c.to_string()).collect(),
        witness: witness.coeffs().iter().map(format_rat).collect(),
    }
}

/// Weyl words in JSON use 1-based simple-reflection indices (s_1 .. s_rank),
/// rightmost letter acting first.
pub fn word_to_dto(word: &[usize]) -> Vec<usize> {
    word.iter().map(|&i| i + 1).collect()
}

/// One cell of the decomposition.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CellDto {
    pub theta: Vec<Vec<i64>>,
    /// Translating word, 1-based reflection indices.
    pub word: Vec<usize>,
    pub dim: usize,
    pub gcs_type: usize,
    /// Per positive root: noncomplex/complex slot and sign, e.g. "n+1".
    pub slots: Vec<String>,
    pub key: String,
}

pub fn cell_to_dto(cell: &ThetaCell) -> CellDto {
    CellDto {
        theta: cell.theta().iter().map(|r| r.coords().to_vec()).collect(),
        word: word_to_dto(cell.word()),
        dim: cell.dim(),
        gcs_type: cell.gcs_type(),
        slots: cell.slots().iter().map(|s| s.tag()).collect(),
        key: cell.canonical_key(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ShapeClassDto {
    pub dim: usize,
    pub gcs_type: usize,
    pub thetas: Vec<Vec<Vec<i64>>>,
}

fn shape_class_to_dto(c: &ShapeClass) -> ShapeClassDto {
    ShapeClassDto {
        dim: c.dim,
        gcs_type: c.gcs_type,
        thetas: c
            .thetas
            .iter()
            .map(|theta| theta.iter().map(|r| r.coords().to_vec()).collect())
            .collect(),
    }
}

/// The full decomposition plus its shape census.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DecompositionDto {
    pub algebra: String,
    /// (w, Theta) pairs enumerated before deduplication.
    pub raw_count: usize,
    pub distinct: usize,
    pub shape_classes: Vec<ShapeClassDto>,
    pub cells: Vec<CellDto>,
}

pub fn decomposition_to_dto(
    rs: &RootSystem,
    d: &CellDecomposition,
    shapes: &[ShapeClass],
) -> DecompositionDto {
    DecompositionDto {
        algebra: rs.name(),
        raw_count: d.raw_count,
        distinct: d.cells.len(),
        shape_classes: shapes.iter().map(shape_class_to_dto).collect(),
        cells: d.cells.iter().map(cell_to_dto).collect(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComplexDto {
    pub re: String,
    pub im: String,
}

/// One term of a pure spinor: a generator monomial and its coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpinorTermDto {
    pub generators: Vec<String>,
    pub coeff: ComplexDto,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpinorDto {
    pub algebra: String,
    pub num_terms: usize,
    pub lowest_degree: Option<usize>,
    pub terms: Vec<SpinorTermDto>,
}

pub fn spinor_to_dto(rs: &RootSystem, phi: &Spinor) -> SpinorDto {
    let terms: Vec<SpinorTermDto> = phi
        .terms()
        .map(|(m, c)| SpinorTermDto {
            generators: m.iter().map(|&id| generator_name(id, rs)).collect(),
            coeff: ComplexDto {
                re: format_rat(&c.re),
                im: format_rat(&c.im),
            },
        })
        .collect();
    SpinorDto {
        algebra: rs.name(),
        num_terms: terms.len(),
        lowest_degree: phi.lowest_degree(),
        terms,
    }
}

/// Kahler verdicts for a pair, from weakest to strongest.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KahlerDto {
    pub algebra: String,
    pub commuting: bool,
    pub almost_kahler: bool,
    pub kahler: bool,
    /// Per-root row labels, present when the pair is almost Kahler.
    pub classification: Option<Vec<String>>,
    /// "first" or "second": which member is globally complex.
    pub complex_side: Option<String>,
    /// Per-root coordinate pairs on the moduli, present when almost Kahler.
    pub moduli: Option<Vec<[String; 2]>>,
    /// The free metric parameter per root, present when sides are global.
    pub metric_moduli: Option<Vec<String>>,
}

pub fn kahler_to_dto(pair: &KahlerPair) -> KahlerDto {
    let commuting = kahler::blocks_commute(pair);
    let almost = kahler::is_almost_kahler(pair);
    let strict = kahler::is_kahler_pair(pair);
    let classification = almost.then(|| {
        kahler::classification(pair)
            .expect("almost Kahler pairs classify")
            .iter()
            .map(|row| row.label().to_string())
            .collect()
    });
    let complex_side = match kahler::global_sides(pair) {
        Ok(kahler::GlobalSides::ComplexFirst) if almost => Some("first".to_string()),
        Ok(kahler::GlobalSides::ComplexSecond) if almost => Some("second".to_string()),
        _ => None,
    };
    let moduli = almost.then(|| {
        kahler::kahler_moduli(pair)
            .expect("almost Kahler pairs have moduli")
            .iter()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect()
    });
    let metric_moduli = (almost && complex_side.is_some()).then(|| {
        kahler::metric_moduli(pair)
            .expect("classified pairs have metric moduli")
            .iter()
            .map(format_rat)
            .collect()
    });
    KahlerDto {
        algebra: pair.algebra().name(),
        commuting,
        almost_kahler: almost,
        kahler: strict,
        classification,
        complex_side,
        moduli,
        metric_moduli,
    }
}

/// One entry of a Weyl orbit listing.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitEntryDto {
    /// Word of the acting element, 1-based reflection indices.
    pub word: Vec<usize>,
    pub structure: StructureDto,
}

/// A structure's Weyl orbit and stabilizer.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeylOrbitDto {
    pub algebra: String,
    pub orbit_size: usize,
    pub stabilizer_size: usize,
    pub entries: Vec<OrbitEntryDto>,
}

/// Spinor line plus its annihilator verification.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpinorCheckDto {
    pub spinor: SpinorDto,
    pub annihilates: bool,
    pub annihilator_dimension: usize,
    /// Half the generator count: the dimension a pure spinor line must have.
    pub expected_dimension: usize,
}

/// Numeric residual of one additive triple.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct OracleTripleDto {
    pub roots: Vec<Vec<i64>>,
    pub residual: f64,
}

/// Numeric oracle verdict on one structure, next to the symbolic one.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct OracleStructureDto {
    pub algebra: String,
    pub tolerance: f64,
    pub symbolic: bool,
    pub numeric: bool,
    pub agree: bool,
    pub max_residual: f64,
    pub triples: Vec<OracleTripleDto>,
}

/// One structure's worth of numeric-oracle evidence.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct OracleSampleDto {
    pub symbolic: bool,
    pub numeric: bool,
    pub max_residual: f64,
}

/// Summary of an oracle comparison run.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct OracleRunDto {
    pub algebra: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub agreements: usize,
    pub disagreements: usize,
    /// Largest residual among symbolically integrable samples.
    pub max_residual_integrable: f64,
    /// Smallest residual among symbolically non-integrable samples.
    pub min_residual_nonintegrable: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::roots::DEFAULT_WEYL_CAP;
    use crate::spinors::spinor_of;
    use crate::structures::InvariantGcs;

    fn a2() -> Arc<RootSystem> {
        Arc::new(RootSystem::parse("A2").unwrap())
    }

    fn sample_structure() -> InvariantGcs {
        InvariantGcs::new(
            a2(),
            vec![
                Block::complex(Sign::Minus),
                Block::noncomplex(rat(1, 2), int(3)).unwrap(),
                Block::complex(Sign::Plus),
            ],
        )
        .unwrap()
    }

    #[test]
    fn structure_round_trips_through_json() {
        let j = sample_structure();
        let text = structure_to_json(&j).unwrap();
        let back = structure_from_json(&text).unwrap();
        assert_eq!(back.blocks(), j.blocks());
        assert_eq!(back.algebra().name(), "A2");
        // Deterministic output.
        assert_eq!(structure_to_json(&back).unwrap(), text);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn structure_json_shape_is_stable() {
        let j = sample_structure();
        let text = structure_to_json(&j).unwrap();
        let expected = r#"{
  "algebra": "A2",
  "blocks": [
    {
      "kind": "complex",
      "root": [
        0,
        1
      ],
      "sign": -1
    },
    {
      "kind": "noncomplex",
      "root": [
        1,
        0
      ],
      "a": "1/2",
      "x": "3"
    },
    {
      "kind": "complex",
      "root": [
        1,
        1
      ],
      "sign": 1
    }
  ]
}
"#;
        assert_eq!(text, expected);
    }

    #[test]
    fn blocks_may_arrive_in_any_order() {
        let text = r#"{
            "algebra": "A2",
            "blocks": [
                {"kind": "complex", "root": [1, 1], "sign": 1},
                {"kind": "noncomplex", "root": [1, 0], "a": "0", "x": "-2"},
                {"kind": "complex", "root": [0, 1], "sign": -1}
            ]
        }"#;
        let j = structure_from_json(text).unwrap();
        assert_eq!(j.block(0), &Block::complex(Sign::Minus));
        assert_eq!(j.block(1), &Block::noncomplex(int(0), int(-2)).unwrap());
    }

    #[test]
    fn coverage_errors_are_detailed() {
        let missing = r#"{"algebra": "A2", "blocks": [
            {"kind": "complex", "root": [1, 0], "sign": 1}
        ]}"#;
        match structure_from_json(missing) {
            Err(Error::RootCoverage { missing, .. }) => {
                assert_eq!(missing, vec!["[0,1]", "[1,1]"]);
            }
            other => panic!("expected coverage error, got {other:?}"),
        }

        let duplicated = r#"{"algebra": "A1", "blocks": [
            {"kind": "complex", "root": [1], "sign": 1},
            {"kind": "complex", "root": [1], "sign": -1}
        ]}"#;
        assert!(matches!(
            structure_from_json(duplicated),
            Err(Error::RootCoverage { duplicated, .. }) if duplicated == vec!["[1]"]
        ));

        let unknown = r#"{"algebra": "A1", "blocks": [
            {"kind": "complex", "root": [2], "sign": 1},
            {"kind": "complex", "root": [1], "sign": 1}
        ]}"#;
        assert!(matches!(
            structure_from_json(unknown),
            Err(Error::RootCoverage { unknown, .. }) if unknown == vec!["[2]"]
        ));
    }

    #[test]
    fn bad_scalars_are_rejected() {
        let zero_x = r#"{"algebra": "A1", "blocks": [
            {"kind": "noncomplex", "root": [1], "a": "0", "x": "0"}
        ]}"#;
        assert!(matches!(structure_from_json(zero_x), Err(Error::ZeroX)));

        let bad_sign = r#"{"algebra": "A1", "blocks": [
            {"kind": "complex", "root": [1], "sign": 2}
        ]}"#;
        assert!(matches!(
            structure_from_json(bad_sign),
            Err(Error::InvalidSign(_))
        ));

        let bad_rat = r#"{"algebra": "A1", "blocks": [
            {"kind": "noncomplex", "root": [1], "a": "half", "x": "1"}
        ]}"#;
        assert!(matches!(
            structure_from_json(bad_rat),
            Err(Error::InvalidRational(_))
        ));
    }

    #[test]
    fn pair_round_trips() {
        let j = InvariantGcs::all_complex(a2(), Sign::Plus);
        let jp = InvariantGcs::new(
            a2(),
            vec![
                Block::symplectic(int(2)).unwrap(),
                Block::symplectic(int(2)).unwrap(),
                Block::symplectic(int(1)).unwrap(),
            ],
        )
        .unwrap();
        let pair = KahlerPair::new(j, jp).unwrap();
        let text = to_pretty_json(&pair_to_dto(&pair)).unwrap();
        assert!(text.contains("\"J\""));
        assert!(text.contains("\"Jp\""));
        let back = pair_from_json(&text).unwrap();
        assert_eq!(back.j().blocks(), pair.j().blocks());
        assert_eq!(back.jp().blocks(), pair.jp().blocks());

        let dto = kahler_to_dto(&pair);
        assert!(dto.kahler);
        assert_eq!(dto.complex_side.as_deref(), Some("first"));
        assert_eq!(
            dto.metric_moduli,
            Some(vec!["2".to_string(), "2".to_string(), "1".to_string()])
        );
    }

    #[test]
    fn check_dto_reports_verdicts() {
        let j = sample_structure();
        let dto = check_to_dto(&j);
        assert!(dto.gacs);
        assert_eq!(dto.gcs_type, 2);
        assert_eq!(dto.triples.len(), 1);
        assert_eq!(dto.triples[0].roots.len(), 3);
        let text = to_pretty_json(&dto).unwrap();
        assert!(text.contains("\"integrable\""));
    }

    #[test]
    fn root_system_dto_lists_invariants() {
        let dto = root_system_to_dto(&a2());
        assert_eq!(dto.rank, 2);
        assert_eq!(dto.num_positive, 3);
        assert_eq!(dto.positive_roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(dto.additive_triples, vec![[0, 1, 2]]);
        assert_eq!(dto.cartan_matrix, vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn normal_form_dto_prints_signed_zeros() {
        let j = sample_structure();
        let dto = normal_form_to_dto(&j);
        assert_eq!(dto.coords, vec!["-0", "3", "+0"]);
        // Witness coefficient at the noncomplex root is a/x = 1/6.
        assert_eq!(dto.witness, vec!["0", "1/6", "0"]);
    }

    #[test]
    fn spinor_dto_names_generators() {
        let j = InvariantGcs::all_complex(Arc::new(RootSystem::parse("A1").unwrap()), Sign::Plus);
        let dto = spinor_to_dto(j.algebra(), &spinor_of(&j));
        assert_eq!(dto.num_terms, 2);
        assert_eq!(dto.lowest_degree, Some(1));
        let names: Vec<&str> = dto
            .terms
            .iter()
            .flat_map(|t| t.generators.iter().map(String::as_str))
            .collect();
        assert_eq!(names, vec!["s[1]", "t[1]"]);
    }

    #[test]
    fn decomposition_dto_counts_cells() {
        let rs = a2();
        let decomp = crate::cells::enumerate_cells(rs.clone(), DEFAULT_WEYL_CAP).unwrap();
        let shapes = crate::cells::shape_classes(rs.clone()).unwrap();
        let dto = decomposition_to_dto(&rs, &decomp, &shapes);
        assert_eq!(dto.raw_count, 24);
        assert_eq!(dto.distinct, 24);
        assert_eq!(dto.shape_classes.len(), 3);
        assert_eq!(dto.cells.len(), 24);
        let text = to_pretty_json(&dto).unwrap();
        let again = to_pretty_json(&dto).unwrap();
        assert_eq!(text, again);
    }
}
