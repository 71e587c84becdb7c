//! Independent floating-point integrability oracle for A-family systems.
//!
//! The flag manifold of sl(n) is realized concretely: the positive root
//! e_i - e_j acts through the matrices X = E_ij / sqrt(2n), and the real
//! tangent basis per root is A = X - X^-, S = i(X + X^-) inside the compact
//! form. The invariant form is <X, Y> = 2n tr(XY), normalized so that
//! <A, A> = <S, S> = -2. The base point is H = diag(i lambda) with distinct
//! real lambda; the symplectic pairing of tangent vectors Y, Z at H is
//! omega(Y, Z) = <H, [Y, Z]>, and the per-root scale k = -1/(2(lambda_i -
//! lambda_j)) makes k omega(A, S) = 1. One-forms are turned back into
//! tangent vectors through a numerically solved 2x2 system against omega,
//! independently of any closed form.
//!
//! For an additive triple (alpha, beta, gamma) and +i eigenvectors u, v, w
//! of the corresponding blocks, split each as a tangent part (subscript 1)
//! and the omega-inverse of its form part (subscript 2). The obstruction
//!
//!   N = (1/12) ( k_gamma <H, [C2, [A1, B1]]>
//!              + k_alpha <H, [A2, [B1, C1]]>
//!              + k_beta  <H, [B2, [C1, A1]]> )
//!
//! vanishes over every eigenvector combination of every triple exactly when
//! the structure is integrable; its maximum modulus is the numeric residual.
//! All construction identities are validated to 1e-12 at build time and the
//! residual is compared against 1e-9, leaving seven orders of magnitude
//! between roundoff and a genuine obstruction.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rational::CRat;
use crate::roots::{Root, RootSystem};
use crate::structures::InvariantGcs;

/// Tolerance for the construction self-checks of a realization.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Threshold separating roundoff from a genuine integrability obstruction.
pub const NIJENHUIS_TOL: f64 = 1e-9;

/// Complex double-precision matrix.
pub type CMat = Mat<Complex64>;

fn unit_matrix(n: usize, i: usize, j: usize) -> CMat {
    let mut m = Mat::zeros(n, n);
    m.set(i, j, Complex64::new(1.0, 0.0));
    m
}

fn commutator(x: &CMat, y: &CMat) -> CMat {
    x.mul(y).sub(&y.mul(x))
}

fn max_abs(m: &CMat) -> f64 {
    let mut out: f64 = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out = out.max(m.get(i, j).norm());
        }
    }
    out
}

/// A concrete sl(n) realization of an A-family root system at a regular
/// diagonal base point.
pub struct SlnRealization {
    algebra_name: String,
    n: usize,
    lambda: Vec<f64>,
    h: CMat,
    /// Per positive root: the matrix index pair (i, j) of e_i - e_j.
    pairs: Vec<(usize, usize)>,
    a_mats: Vec<CMat>,
    s_mats: Vec<CMat>,
    k: Vec<f64>,
}

/// Matrix index pair (i, j) of an A-family positive root e_i - e_j: the
/// coordinates are a consecutive run of ones from i through j - 1.
fn root_to_pair(r: &Root) -> (usize, usize) {
    let support = r.support();
    let i = support[0];
    let j = support[support.len() - 1] + 1;
    assert!(
        (i..j).all(|s| r.coords()[s] == 1),
        "A-family positive roots have consecutive unit coordinates"
    );
    (i, j)
}

impl SlnRealization {
    /// Realization at the standard base point lambda = (n-1, n-3, ..)/2.
    pub fn standard(rs: &RootSystem) -> Result<Self> {
        let n = rs.rank() + 1;
        let lambda: Vec<f64> = (0..n).map(|i| (n as f64 - 1.0) / 2.0 - i as f64).collect();
        Self::realize(rs, &lambda)
    }

    pub fn realize(rs: &RootSystem, lambda: &[f64]) -> Result<Self> {
        if rs.family().letter() != 'A' {
            return Err(Error::OracleAlgebra {
                expected: "A".to_string(),
                got: rs.name(),
            });
        }
        let n = rs.rank() + 1;
        if lambda.len() != n {
            return Err(Error::OracleDegenerate(format!(
                "{n} base point eigenvalues, got {}",
                lambda.len()
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                if (lambda[i] - lambda[j]).abs() < 1e-9 {
                    return Err(Error::OracleDegenerate(format!(
                        "distinct eigenvalues (entries {i} and {j} coincide)"
                    )));
                }
            }
        }
        let sum: f64 = lambda.iter().sum();
        if sum.abs() > CONSTRUCTION_TOL {
            return Err(Error::OracleDegenerate(format!(
                "a traceless base point (eigenvalue sum is {sum})"
            )));
        }

        let scale = 1.0 / (2.0 * n as f64).sqrt();
        let mut h = Mat::zeros(n, n);
        for (i, l) in lambda.iter().enumerate() {
            h.set(i, i, Complex64::new(0.0, *l));
        }

        let mut pairs = Vec::new();
        let mut a_mats = Vec::new();
        let mut s_mats = Vec::new();
        let mut k = Vec::new();
        for r in rs.positive_roots() {
            let (i, j) = root_to_pair(r);
            let x = unit_matrix(n, i, j).scale(&Complex64::new(scale, 0.0));
            let xm = unit_matrix(n, j, i).scale(&Complex64::new(scale, 0.0));
            a_mats.push(x.sub(&xm));
            s_mats.push(x.add(&xm).scale(&Complex64::new(0.0, 1.0)));
            k.push(-1.0 / (2.0 * (lambda[i] - lambda[j])));
            pairs.push((i, j));
        }

        let out = SlnRealization {
            algebra_name: rs.name(),
            n,
            lambda: lambda.to_vec(),
            h,
            pairs,
            a_mats,
            s_mats,
            k,
        };
        out.validate()?;
        Ok(out)
    }

    /// Construction self-checks, each to within `CONSTRUCTION_TOL`.
    fn validate(&self) -> Result<()> {
        let breach = |what: &str, value: f64| -> Result<()> {
            if value.abs() < CONSTRUCTION_TOL {
                Ok(())
            } else {
                Err(Error::ToleranceBreach {
                    what: what.to_string(),
                    value,
                })
            }
        };
        breach("trace of the base point", self.h.trace().norm())?;
        for (idx, (i, j)) in self.pairs.iter().enumerate() {
            let a = &self.a_mats[idx];
            let s = &self.s_mats[idx];
            breach("<A,A> + 2", (self.pairing(a, a) + 2.0).norm())?;
            breach("<S,S> + 2", (self.pairing(s, s) + 2.0).norm())?;
            breach("<A,S>", self.pairing(a, s).norm())?;
            // k omega(A, S) = 1 at the base point.
            let omega_as = self.omega(a, s);
            breach("k*omega(A,S) - 1", (omega_as * self.k[idx] - 1.0).norm())?;
            // [H, A] = (lambda_i - lambda_j) S.
            let lhs = commutator(&self.h, a);
            let rhs = s.scale(&Complex64::new(self.lambda[*i] - self.lambda[*j], 0.0));
            breach("[H,A] - (lambda_i - lambda_j) S", max_abs(&lhs.sub(&rhs)))?;
        }
        Ok(())
    }

    pub fn algebra_name(&self) -> &str {
        &self.algebra_name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// The invariant form <X, Y> = 2n tr(XY).
    pub fn pairing(&self, x: &CMat, y: &CMat) -> Complex64 {
        x.mul(y).trace() * Complex64::new(2.0 * self.n as f64, 0.0)
    }

    /// The symplectic pairing omega(Y, Z) = <H, [Y, Z]> at the base point.
    pub fn omega(&self, y: &CMat, z: &CMat) -> Complex64 {
        self.pairing(&self.h, &commutator(y, z))
    }

    /// Real tangent basis (A, S) of one root block.
    pub fn tangent_basis(&self, root_index: usize) -> (&CMat, &CMat) {
        (&self.a_mats[root_index], &self.s_mats[root_index])
    }

    pub fn kks_scale(&self, root_index: usize) -> f64 {
        self.k[root_index]
    }

    /// Tangent part c0 A + c1 S of a block coordinate vector.
    pub fn vector_part(&self, root_index: usize, coords: &[Complex64; 4]) -> CMat {
        let (a, s) = self.tangent_basis(root_index);
        a.scale(&coords[0]).add(&s.scale(&coords[1]))
    }

    /// Tangent vector Z with k omega(Z, -) equal to the form part
    /// c2 sigma + c3 tau, found by solving the 2x2 system against the
    /// numerically evaluated omega.
    pub fn form_part_vector(&self, root_index: usize, coords: &[Complex64; 4]) -> CMat {
        let (a, s) = self.tangent_basis(root_index);
        let k = Complex64::new(self.k[root_index], 0.0);
        // Unknown Z = u A + v S; sigma, tau evaluate on (A, S) as the
        // identity, so k omega(Z, A) = c2 and k omega(Z, S) = c3.
        let m00 = self.omega(a, a) * k;
        let m01 = self.omega(s, a) * k;
        let m10 = self.omega(a, s) * k;
        let m11 = self.omega(s, s) * k;
        let det = m00 * m11 - m01 * m10;
        let u = (coords[2] * m11 - coords[3] * m01) / det;
        let v = (m00 * coords[3] - m10 * coords[2]) / det;
        a.scale(&u).add(&s.scale(&v))
    }
}

fn to_c64(c: &CRat) -> Complex64 {
    Complex64::new(
        c.re.to_f64().expect("rational fits in f64"),
        c.im.to_f64().expect("rational fits in f64"),
    )
}

/// Numeric, unit-normalized copies of a block's +i eigenvectors.
fn numeric_eigenvectors(j: &InvariantGcs, root_index: usize) -> [[Complex64; 4]; 2] {
    let basis = j.block(root_index).eigenbasis();
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 2];
    for (vi, v) in basis.iter().enumerate() {
        let mut numeric = [Complex64::new(0.0, 0.0); 4];
        for (ci, c) in v.iter().enumerate() {
            numeric[ci] = to_c64(c);
        }
        let norm = numeric.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in numeric.iter_mut() {
            *c /= norm;
        }
        out[vi] = numeric;
    }
    out
}

/// The obstruction of one eigenvector combination over one triple.
pub fn nijenhuis(
    r: &SlnRealization,
    triple: [usize; 3],
    u: &[Complex64; 4],
    v: &[Complex64; 4],
    w: &[Complex64; 4],
) -> Complex64 {
    let [ia, ib, ic] = triple;
    let a1 = r.vector_part(ia, u);
    let a2 = r.form_part_vector(ia, u);
    let b1 = r.vector_part(ib, v);
    let b2 = r.form_part_vector(ib, v);
    let c1 = r.vector_part(ic, w);
    let c2 = r.form_part_vector(ic, w);

    let term = |kk: f64, outer: &CMat, x: &CMat, y: &CMat| -> Complex64 {
        r.pairing(&r.h, &commutator(outer, &commutator(x, y))) * Complex64::new(kk, 0.0)
    };
    let total = term(r.kks_scale(ic), &c2, &a1, &b1)
        + term(r.kks_scale(ia), &a2, &b1, &c1)
        + term(r.kks_scale(ib), &b2, &c1, &a1);
    total / Complex64::new(12.0, 0.0)
}

/// Residual of one triple: the largest |N| over the eight eigenvector
/// combinations.
pub fn triple_residual(r: &SlnRealization, j: &InvariantGcs, triple: [usize; 3]) -> f64 {
    let us = numeric_eigenvectors(j, triple[0]);
    let vs = numeric_eigenvectors(j, triple[1]);
    let ws = numeric_eigenvectors(j, triple[2]);
    let mut max = 0.0f64;
    for u in &us {
        for v in &vs {
            for w in &ws {
                max = max.max(nijenhuis(r, triple, u, v, w).norm());
            }
        }
    }
    max
}

/// Per-triple numeric residuals of a structure.
#[derive(Clone, Debug)]
pub struct NumericTripleReport {
    pub roots: [Root; 3],
    pub residual: f64,
}

fn check_algebra(r: &SlnRealization, j: &InvariantGcs) -> Result<()> {
    if j.algebra().name() != r.algebra_name {
        return Err(Error::AlgebraMismatch {
            left: r.algebra_name.clone(),
            right: j.algebra().name(),
        });
    }
    Ok(())
}

pub fn triple_reports(r: &SlnRealization, j: &InvariantGcs) -> Result<Vec<NumericTripleReport>> {
    check_algebra(r, j)?;
    let rs = j.algebra();
    Ok(rs
        .triples()
        .iter()
        .map(|&t| NumericTripleReport {
            roots: rs.triple_roots(t),
            residual: triple_residual(r, j, t),
        })
        .collect())
}

/// Largest residual over all triples (zero for rank one).
pub fn max_nijenhuis(r: &SlnRealization, j: &InvariantGcs) -> Result<f64> {
    Ok(triple_reports(r, j)?
        .iter()
        .map(|t| t.residual)
        .fold(0.0, f64::max))
}

/// The oracle's verdict: every residual below `NIJENHUIS_TOL`.
pub fn numeric_integrability(r: &SlnRealization, j: &InvariantGcs) -> Result<bool> {
    Ok(max_nijenhuis(r, j)? < NIJENHUIS_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrability::{build_from_theta, is_integrable};
    use crate::rational::{int, rat};
    use crate::structures::{Block, Sign};
    use std::sync::Arc;

    fn a2() -> Arc<RootSystem> {
        Arc::new(RootSystem::parse("A2").unwrap())
    }

    #[test]
    fn realization_constructs_for_a_family() {
        for name in ["A1", "A2", "A3", "A4"] {
            let rs = RootSystem::parse(name).unwrap();
            let r = SlnRealization::standard(&rs).unwrap();
            assert_eq!(r.n(), rs.rank() + 1);
        }
    }

    #[test]
    fn non_a_families_are_rejected() {
        let rs = RootSystem::parse("B2").unwrap();
        assert!(matches!(
            SlnRealization::standard(&rs),
            Err(Error::OracleAlgebra { .. })
        ));
    }

    #[test]
    fn degenerate_base_points_are_rejected() {
        let rs = RootSystem::parse("A2").unwrap();
        assert!(matches!(
            SlnRealization::realize(&rs, &[1.0, 1.0, -2.0]),
            Err(Error::OracleDegenerate(_))
        ));
        assert!(matches!(
            SlnRealization::realize(&rs, &[1.0, 0.0]),
            Err(Error::OracleDegenerate(_))
        ));
        assert!(matches!(
            SlnRealization::realize(&rs, &[3.0, 1.0, -1.0]),
            Err(Error::OracleDegenerate(_))
        ));
        // Any traceless regular base point works, not just the standard one.
        assert!(SlnRealization::realize(&rs, &[3.5, 0.25, -3.75]).is_ok());
    }

    #[test]
    fn root_pairs_follow_support() {
        let rs = RootSystem::parse("A3").unwrap();
        let r = SlnRealization::standard(&rs).unwrap();
        for (idx, root) in rs.positive_roots().iter().enumerate() {
            let (i, j) = r.pairs[idx];
            assert!(i < j && j <= 4);
            let mut expected = [0i64; 3];
            for c in i..j {
                expected[c] = 1;
            }
            assert_eq!(root.coords(), &expected[..]);
        }
    }

    #[test]
    fn omega_matches_kks_scale() {
        let rs = RootSystem::parse("A3").unwrap();
        let r = SlnRealization::standard(&rs).unwrap();
        for idx in 0..rs.num_positive() {
            let (a, s) = r.tangent_basis(idx);
            let val = r.omega(a, s) * Complex64::new(r.kks_scale(idx), 0.0);
            assert!((val - 1.0).norm() < CONSTRUCTION_TOL);
            assert!(r.omega(a, a).norm() < CONSTRUCTION_TOL);
        }
    }

    #[test]
    fn form_part_matches_closed_form() {
        // The solve reproduces (c2, c3) -> c3 A - c2 S.
        let rs = a2();
        let r = SlnRealization::standard(&rs).unwrap();
        let coords = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(2.0, -1.0),
            Complex64::new(0.5, 3.0),
        ];
        for idx in 0..3 {
            let (a, s) = r.tangent_basis(idx);
            let z = r.form_part_vector(idx, &coords);
            let closed = a.scale(&coords[3]).add(&s.scale(&-coords[2]));
            assert!(max_abs(&z.sub(&closed)) < 1e-10);
        }
    }

    fn numeric_verdict(j: &InvariantGcs) -> bool {
        let r = SlnRealization::standard(j.algebra()).unwrap();
        numeric_integrability(&r, j).unwrap()
    }

    #[test]
    fn all_complex_structures_pass() {
        for sign in [Sign::Plus, Sign::Minus] {
            let j = InvariantGcs::all_complex(a2(), sign);
            assert!(numeric_verdict(&j));
        }
    }

    #[test]
    fn census_agrees_with_symbolic_table() {
        // All 27 kind patterns on the A2 triple, with noncomplex parameters
        // satisfying the parameter conditions: numeric and symbolic verdicts
        // agree on each, and the numeric gap is wide.
        let rs = a2();
        let r = SlnRealization::standard(&rs).unwrap();
        let blocks = |k: u8, slot: usize| -> Block {
            match k {
                0 => Block::Complex(Sign::Plus),
                1 => Block::Complex(Sign::Minus),
                _ => {
                    let x = if slot == 2 { int(1) } else { int(2) };
                    Block::noncomplex(int(0), x).unwrap()
                }
            }
        };
        let mut agreements = 0;
        for k0 in 0u8..3 {
            for k1 in 0u8..3 {
                for k2 in 0u8..3 {
                    let j = InvariantGcs::new(
                        rs.clone(),
                        vec![blocks(k0, 0), blocks(k1, 1), blocks(k2, 2)],
                    )
                    .unwrap();
                    let symbolic = is_integrable(&j);
                    let max = max_nijenhuis(&r, &j).unwrap();
                    if symbolic {
                        assert!(max < 1e-12, "pattern {k0}{k1}{k2}: residual {max}");
                    } else {
                        assert!(max > 1e-3, "pattern {k0}{k1}{k2}: residual {max}");
                    }
                    agreements += 1;
                }
            }
        }
        assert_eq!(agreements, 27);
    }

    #[test]
    fn parameter_conditions_show_up_numerically() {
        let rs = a2();
        let r = SlnRealization::standard(&rs).unwrap();
        // Harmonic parameters pass.
        let good = InvariantGcs::new(
            rs.clone(),
            vec![
                Block::noncomplex(int(0), int(2)).unwrap(),
                Block::noncomplex(int(0), int(2)).unwrap(),
                Block::noncomplex(int(0), int(1)).unwrap(),
            ],
        )
        .unwrap();
        assert!(is_integrable(&good));
        assert!(numeric_integrability(&r, &good).unwrap());

        // Equal x values fail both checks.
        let bad = InvariantGcs::new(
            rs.clone(),
            vec![
                Block::noncomplex(int(0), int(1)).unwrap(),
                Block::noncomplex(int(0), int(1)).unwrap(),
                Block::noncomplex(int(0), int(1)).unwrap(),
            ],
        )
        .unwrap();
        assert!(!is_integrable(&bad));
        assert!(!numeric_integrability(&r, &bad).unwrap());

        // Breaking only the b-additivity fails too.
        let skew = InvariantGcs::new(
            rs,
            vec![
                Block::noncomplex(int(1), int(2)).unwrap(),
                Block::noncomplex(int(0), int(2)).unwrap(),
                Block::noncomplex(int(0), int(1)).unwrap(),
            ],
        )
        .unwrap();
        assert!(!is_integrable(&skew));
        assert!(!numeric_integrability(&r, &skew).unwrap());
    }

    #[test]
    fn theta_structures_pass_on_a3() {
        let rs = Arc::new(RootSystem::parse("A3").unwrap());
        let r = SlnRealization::standard(&rs).unwrap();
        let theta: Vec<Root> = rs.simple_roots().to_vec();
        let j = build_from_theta(
            rs.clone(),
            &theta,
            &[int(1), rat(1, 2), int(3)],
            &[rat(2, 3), int(-1), rat(1, 5)],
            &[],
        )
        .unwrap();
        assert!(numeric_integrability(&r, &j).unwrap());
        let reports = triple_reports(&r, &j).unwrap();
        assert_eq!(reports.len(), rs.triples().len());
        for t in reports {
            assert!(t.residual < 1e-12);
        }
    }

    #[test]
    fn algebra_mismatch_is_rejected() {
        let r = SlnRealization::standard(&a2()).unwrap();
        let j = InvariantGcs::all_complex(Arc::new(RootSystem::parse("A3").unwrap()), Sign::Plus);
        assert!(matches!(
            max_nijenhuis(&r, &j),
            Err(Error::AlgebraMismatch { .. })
        ));
    }
}
