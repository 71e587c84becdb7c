//! Generalized Kahler pairs and their metrics.
//!
//! A pair (J, J') of commuting structures determines the operator G = -J J'
//! and the bilinear form G^T P; the pair is almost Kahler when the form is
//! positive definite. Everything is blockwise, so commutation, the metric,
//! and positivity decompose along positive roots.
//!
//! Per root, positive definiteness forces one member complex and the other
//! noncomplex, with the complex sign tied to the sign of x:
//!
//!   (complex(+), noncomplex x > 0)
//!   (noncomplex x > 0, complex(+))
//!   (complex(-), noncomplex x < 0)
//!   (noncomplex x < 0, complex(-))
//!
//! Adding integrability of both members (the strict Kahler condition) forces
//! the sides to agree globally: one member is complex at every root and the
//! other noncomplex at every root, because the noncomplex support of an
//! integrable structure and its complement can both be theta closures only
//! when one of them is empty.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::integrability::is_integrable;
use crate::matrix::Mat;
use crate::rational::Rat;
use crate::structures::{
    pairing_block, pairing_matrix, Block, InvariantGcs, ModuliCoordinate, Sign,
};

/// A pair of structures over one root system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KahlerPair {
    j: InvariantGcs,
    jp: InvariantGcs,
}

impl KahlerPair {
    pub fn new(j: InvariantGcs, jp: InvariantGcs) -> Result<Self> {
        if j.algebra() != jp.algebra() {
            return Err(Error::AlgebraMismatch {
                left: j.algebra().name(),
                right: jp.algebra().name(),
            });
        }
        Ok(KahlerPair { j, jp })
    }

    pub fn j(&self) -> &InvariantGcs {
        &self.j
    }

    pub fn jp(&self) -> &InvariantGcs {
        &self.jp
    }

    pub fn algebra(&self) -> &std::sync::Arc<crate::roots::RootSystem> {
        self.j.algebra()
    }
}

/// Whether two blocks commute, decided by the closed form and asserted
/// against the 4x4 matrix commutator. Complex blocks commute with
/// everything; two noncomplex blocks commute exactly when their b = a/x
/// witnesses match and their x agree up to sign.
pub fn commute_blocks(b1: &Block, b2: &Block) -> bool {
    let closed = match (b1, b2) {
        (Block::Complex(_), _) | (_, Block::Complex(_)) => true,
        (Block::NonComplex { a, x }, Block::NonComplex { a: w, x: z }) => {
            a.clone() * z.clone() == w.clone() * x.clone()
                && (x.clone() == z.clone() || x.clone() == -z.clone())
        }
    };
    let m1 = b1.matrix();
    let m2 = b2.matrix();
    let commutator_zero = m1.mul(&m2) == m2.mul(&m1);
    assert_eq!(
        closed, commutator_zero,
        "closed form disagrees with matrices"
    );
    closed
}

pub fn blocks_commute(pair: &KahlerPair) -> bool {
    pair.j
        .blocks()
        .iter()
        .zip(pair.jp.blocks())
        .all(|(b1, b2)| commute_blocks(b1, b2))
}

/// The operator G = -J J' and the bilinear form G^T P.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetricOperator {
    pub operator: Mat<Rat>,
    pub bilinear: Mat<Rat>,
}

pub fn metric_operator(pair: &KahlerPair) -> Result<MetricOperator> {
    if !blocks_commute(pair) {
        return Err(Error::NonCommuting);
    }
    let operator = pair
        .j
        .assembled_matrix()
        .mul(&pair.jp.assembled_matrix())
        .neg();
    let bilinear = operator
        .transpose()
        .mul(&pairing_matrix(pair.j.blocks().len()));
    assert!(bilinear.is_symmetric(), "commuting isometries symmetrize");
    Ok(MetricOperator { operator, bilinear })
}

/// Exact positive definiteness via leading principal minors.
pub fn is_positive_definite(m: &Mat<Rat>) -> bool {
    m.is_symmetric() && m.leading_principal_minors().iter().all(|d| d.is_positive())
}

pub fn is_almost_kahler(pair: &KahlerPair) -> bool {
    match metric_operator(pair) {
        Ok(g) => is_positive_definite(&g.bilinear),
        Err(_) => false,
    }
}

pub fn require_almost_kahler(pair: &KahlerPair) -> Result<MetricOperator> {
    let g = metric_operator(pair)?;
    if is_positive_definite(&g.bilinear) {
        Ok(g)
    } else {
        Err(Error::NotAlmostKahler)
    }
}

/// Almost Kahler, plus integrability of both members.
pub fn is_kahler_pair(pair: &KahlerPair) -> bool {
    is_almost_kahler(pair) && is_integrable(&pair.j) && is_integrable(&pair.jp)
}

/// Per-root shape of a positive-definite commuting pair.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum PairRow {
    /// (complex(+), noncomplex x > 0)
    ComplexPlusNoncomplex,
    /// (noncomplex x > 0, complex(+))
    NoncomplexComplexPlus,
    /// (complex(-), noncomplex x < 0)
    ComplexMinusNoncomplex,
    /// (noncomplex x < 0, complex(-))
    NoncomplexComplexMinus,
}

impl PairRow {
    pub fn label(self) -> &'static str {
        match self {
            PairRow::ComplexPlusNoncomplex => "(complex(+), noncomplex x>0)",
            PairRow::NoncomplexComplexPlus => "(noncomplex x>0, complex(+))",
            PairRow::ComplexMinusNoncomplex => "(complex(-), noncomplex x<0)",
            PairRow::NoncomplexComplexMinus => "(noncomplex x<0, complex(-))",
        }
    }
}

/// Classifies one root's block pair by computing its 4x4 metric form and
/// testing positivity, then names the row; the named rows are provably the
/// only positive ones, which the match below re-derives.
pub fn classify_root(root: &crate::roots::Root, b1: &Block, b2: &Block) -> Result<PairRow> {
    if !commute_blocks(b1, b2) {
        return Err(Error::NonCommuting);
    }
    let g = b1.matrix().mul(&b2.matrix()).neg();
    let f = g.transpose().mul(&pairing_block());
    if !is_positive_definite(&f) {
        return Err(Error::UnclassifiableRoot {
            root: root.to_string(),
            reason: "block metric form is not positive definite".to_string(),
        });
    }
    let row = match (b1, b2) {
        (Block::Complex(Sign::Plus), Block::NonComplex { x, .. }) if x.is_positive() => {
            PairRow::ComplexPlusNoncomplex
        }
        (Block::NonComplex { x, .. }, Block::Complex(Sign::Plus)) if x.is_positive() => {
            PairRow::NoncomplexComplexPlus
        }
        (Block::Complex(Sign::Minus), Block::NonComplex { x, .. }) if x.is_negative() => {
            PairRow::ComplexMinusNoncomplex
        }
        (Block::NonComplex { x, .. }, Block::Complex(Sign::Minus)) if x.is_negative() => {
            PairRow::NoncomplexComplexMinus
        }
        _ => unreachable!("positive definite block pairs match one of four rows"),
    };
    Ok(row)
}

/// Per-root classification of an almost Kahler pair.
pub fn classification(pair: &KahlerPair) -> Result<Vec<PairRow>> {
    pair.algebra()
        .positive_roots()
        .iter()
        .zip(pair.j.blocks().iter().zip(pair.jp.blocks()))
        .map(|(r, (b1, b2))| classify_root(r, b1, b2))
        .collect()
}

/// Which member is globally complex.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum GlobalSides {
    /// First member complex at every root, second noncomplex at every root.
    ComplexFirst,
    /// First member noncomplex at every root, second complex at every root.
    ComplexSecond,
}

/// Checks the global shape of a Kahler pair: one member all complex, the
/// other all noncomplex. Errors on mixed sides.
pub fn global_sides(pair: &KahlerPair) -> Result<GlobalSides> {
    let rows = classification(pair)?;
    let first_complex = rows.iter().all(|r| {
        matches!(
            r,
            PairRow::ComplexPlusNoncomplex | PairRow::ComplexMinusNoncomplex
        )
    });
    let second_complex = rows.iter().all(|r| {
        matches!(
            r,
            PairRow::NoncomplexComplexPlus | PairRow::NoncomplexComplexMinus
        )
    });
    match (first_complex, second_complex) {
        (true, false) => Ok(GlobalSides::ComplexFirst),
        (false, true) => Ok(GlobalSides::ComplexSecond),
        (true, true) => unreachable!("a root system has at least one positive root"),
        (false, false) => {
            let mixed: Vec<String> = pair
                .algebra()
                .positive_roots()
                .iter()
                .zip(&rows)
                .map(|(root, row)| format!("{root}: {}", row.label()))
                .collect();
            Err(Error::UnclassifiableRoot {
                root: "(global)".to_string(),
                reason: format!("complex sides differ across roots: {}", mixed.join("; ")),
            })
        }
    }
}

/// Per-root pair of moduli coordinates of an almost Kahler pair; the row
/// shapes make one slot a signed zero and the other the nonzero x, with
/// matching signs.
pub fn kahler_moduli(pair: &KahlerPair) -> Result<Vec<(ModuliCoordinate, ModuliCoordinate)>> {
    classification(pair)?;
    Ok(pair
        .j
        .moduli_coordinates()
        .into_iter()
        .zip(pair.jp.moduli_coordinates())
        .collect())
}

/// The nonzero x per root (the noncomplex member's parameter), one free
/// metric parameter per positive root.
pub fn metric_moduli(pair: &KahlerPair) -> Result<Vec<Rat>> {
    let rows = classification(pair)?;
    Ok(rows
        .iter()
        .zip(pair.j.blocks().iter().zip(pair.jp.blocks()))
        .map(|(row, (b1, b2))| {
            let nc = match row {
                PairRow::ComplexPlusNoncomplex | PairRow::ComplexMinusNoncomplex => b2,
                PairRow::NoncomplexComplexPlus | PairRow::NoncomplexComplexMinus => b1,
            };
            match nc {
                Block::NonComplex { x, .. } => x.clone(),
                Block::Complex(_) => unreachable!("row names the noncomplex member"),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrability::build_from_theta;
    use crate::rational::{int, rat};
    use crate::roots::{Root, RootSystem};
    use crate::structures::BTransform;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn a1() -> Arc<RootSystem> {
        Arc::new(RootSystem::parse("A1").unwrap())
    }

    fn a2() -> Arc<RootSystem> {
        Arc::new(RootSystem::parse("A2").unwrap())
    }

    fn nc(a: i64, x: i64) -> Block {
        Block::noncomplex(int(a), int(x)).unwrap()
    }

    fn pair1(b1: Block, b2: Block) -> KahlerPair {
        let rs = a1();
        KahlerPair::new(
            InvariantGcs::new(rs.clone(), vec![b1]).unwrap(),
            InvariantGcs::new(rs, vec![b2]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn commutation_table() {
        // Complex blocks commute with everything.
        assert!(commute_blocks(&Block::Complex(Sign::Plus), &nc(3, 5)));
        assert!(commute_blocks(
            &Block::Complex(Sign::Plus),
            &Block::Complex(Sign::Minus)
        ));
        // Noncomplex blocks commute iff equal witnesses and x up to sign.
        assert!(commute_blocks(&nc(1, 2), &nc(1, 2)));
        assert!(commute_blocks(&nc(1, 2), &nc(-1, -2)));
        assert!(!commute_blocks(&nc(1, 2), &nc(0, 2)));
        assert!(!commute_blocks(&nc(1, 2), &nc(1, 4)));
        assert!(!commute_blocks(&nc(0, 1), &nc(0, 2)));
    }

    #[test]
    fn exhaustive_rank_one_table() {
        // All commuting positive block pairs on A1 land in the four rows,
        // and every row occurs.
        let candidates = [
            Block::Complex(Sign::Plus),
            Block::Complex(Sign::Minus),
            nc(0, 2),
            nc(1, 2),
            nc(0, -2),
            nc(1, -2),
            nc(-3, 7),
        ];
        let root = Root::new(vec![1]);
        let mut seen = Vec::new();
        for b1 in &candidates {
            for b2 in &candidates {
                if !commute_blocks(b1, b2) {
                    continue;
                }
                let p = pair1(b1.clone(), b2.clone());
                match classify_root(&root, b1, b2) {
                    Ok(row) => {
                        assert!(is_almost_kahler(&p));
                        // Rank one: almost Kahler and Kahler coincide.
                        assert!(is_kahler_pair(&p));
                        let expected = match (b1, b2) {
                            (Block::Complex(Sign::Plus), Block::NonComplex { .. }) => {
                                PairRow::ComplexPlusNoncomplex
                            }
                            (Block::NonComplex { .. }, Block::Complex(Sign::Plus)) => {
                                PairRow::NoncomplexComplexPlus
                            }
                            (Block::Complex(Sign::Minus), Block::NonComplex { .. }) => {
                                PairRow::ComplexMinusNoncomplex
                            }
                            (Block::NonComplex { .. }, Block::Complex(Sign::Minus)) => {
                                PairRow::NoncomplexComplexMinus
                            }
                            _ => panic!("unexpected positive pair {b1:?} {b2:?}"),
                        };
                        assert_eq!(row, expected);
                        if !seen.contains(&row) {
                            seen.push(row);
                        }
                    }
                    Err(_) => assert!(!is_almost_kahler(&p)),
                }
            }
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn same_kind_pairs_are_never_positive() {
        for (b1, b2) in [
            (Block::Complex(Sign::Plus), Block::Complex(Sign::Plus)),
            (Block::Complex(Sign::Plus), Block::Complex(Sign::Minus)),
            (nc(1, 2), nc(1, 2)),
            (nc(1, 2), nc(-1, -2)),
        ] {
            assert!(!is_almost_kahler(&pair1(b1, b2)));
        }
    }

    #[test]
    fn metric_of_symplectic_complex_pair() {
        // (complex(+), noncomplex(0, x)): G swaps tangent and cotangent,
        // scaled by x and 1/x; G^2 = 1 with zero trace.
        let x = rat(7, 3);
        let p = pair1(
            Block::Complex(Sign::Plus),
            Block::noncomplex(int(0), x.clone()).unwrap(),
        );
        let g = require_almost_kahler(&p).unwrap();
        let mut expected = Mat::zeros(4, 4);
        expected.set(0, 2, x.clone());
        expected.set(1, 3, x.clone());
        expected.set(2, 0, x.recip());
        expected.set(3, 1, x.recip());
        assert_eq!(g.operator, expected);
        assert_eq!(g.operator.mul(&g.operator), Mat::identity(4));
        assert_eq!(metric_moduli(&p).unwrap(), vec![x]);
    }

    #[test]
    fn noncommuting_pair_is_rejected() {
        let p = pair1(nc(0, 1), nc(0, 2));
        assert!(matches!(metric_operator(&p), Err(Error::NonCommuting)));
        assert!(!is_almost_kahler(&p));
    }

    fn standard_global_pair(rs: &Arc<RootSystem>, xs: &[i64]) -> KahlerPair {
        let theta: Vec<Root> = rs.simple_roots().to_vec();
        let xs: Vec<Rat> = xs.iter().map(|&v| int(v)).collect();
        let jp =
            build_from_theta(rs.clone(), &theta, &xs, &vec![int(0); theta.len()], &[]).unwrap();
        KahlerPair::new(InvariantGcs::all_complex(rs.clone(), Sign::Plus), jp).unwrap()
    }

    #[test]
    fn global_pair_on_rank_two() {
        let rs = a2();
        let p = standard_global_pair(&rs, &[2, 2]);
        assert!(is_kahler_pair(&p));
        assert_eq!(global_sides(&p).unwrap(), GlobalSides::ComplexFirst);
        let coords = kahler_moduli(&p).unwrap();
        assert_eq!(coords.len(), 3);
        for (c, cp) in &coords {
            assert!(matches!(c, ModuliCoordinate::SignedZero(Sign::Plus)));
            assert!(matches!(cp, ModuliCoordinate::Symplectic(x) if x.is_positive()));
        }
        // Metric parameters: one positive x per root, here (2, 2, 1).
        let xs = metric_moduli(&p).unwrap();
        assert_eq!(xs.iter().filter(|x| x.is_positive()).count(), 3);

        // The flipped pair classifies on the other side.
        let flipped = KahlerPair::new(p.jp().clone(), p.j().clone()).unwrap();
        assert!(is_kahler_pair(&flipped));
        assert_eq!(global_sides(&flipped).unwrap(), GlobalSides::ComplexSecond);
    }

    #[test]
    fn mixed_sides_fail_strict_kahler() {
        // Per-root positive but with the complex member switching sides:
        // almost Kahler, not Kahler, and the global check reports the mix.
        let rs = a2();
        let mut j_blocks = vec![Block::Complex(Sign::Plus); 3];
        let mut jp_blocks = vec![Block::Complex(Sign::Plus); 3];
        j_blocks[0] = nc(0, 1);
        jp_blocks[1] = nc(0, 1);
        jp_blocks[2] = nc(0, 1);
        let p = KahlerPair::new(
            InvariantGcs::new(rs.clone(), j_blocks).unwrap(),
            InvariantGcs::new(rs, jp_blocks).unwrap(),
        )
        .unwrap();
        assert!(is_almost_kahler(&p));
        assert!(!is_kahler_pair(&p));
        assert!(matches!(
            global_sides(&p),
            Err(Error::UnclassifiableRoot { .. })
        ));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        /// Any per-root B-transform applied to both members preserves the
        /// almost Kahler condition; additive ones preserve strict Kahler.
        #[test]
        fn b_invariance(
            c0 in small_rat(),
            c1 in small_rat(),
            c2 in small_rat(),
            x1 in 1i64..=9,
            x2 in 1i64..=9,
        ) {
            let rs = a2();
            let p = standard_global_pair(&rs, &[x1, x2]);
            prop_assert!(is_kahler_pair(&p));

            // Arbitrary per-root coefficients: almost level only.
            let b = BTransform::new(vec![c0.clone(), c1.clone(), c2.clone()]);
            let q = KahlerPair::new(
                p.j().b_transform(&b).unwrap(),
                p.jp().b_transform(&b).unwrap(),
            ).unwrap();
            prop_assert!(is_almost_kahler(&q));
            prop_assert_eq!(metric_moduli(&q).unwrap(), metric_moduli(&p).unwrap());

            // Additive coefficients: the strict condition survives.
            let add = BTransform::from_simple_coeffs(&rs, &[c0, c1]);
            let qa = KahlerPair::new(
                p.j().b_transform(&add).unwrap(),
                p.jp().b_transform(&add).unwrap(),
            ).unwrap();
            prop_assert!(is_kahler_pair(&qa));
        }

        /// Classification agrees with brute-force positivity on random
        /// commuting pairs.
        #[test]
        fn classification_matches_positivity(
            a in small_rat(),
            x in small_rat().prop_filter("nonzero", |x| !num_traits::Zero::is_zero(x)),
            complex_first in proptest::bool::ANY,
            plus in proptest::bool::ANY,
        ) {
            let sign = if plus { Sign::Plus } else { Sign::Minus };
            let cblock = Block::Complex(sign);
            let nblock = Block::noncomplex(a, x.clone()).unwrap();
            let (b1, b2) = if complex_first {
                (cblock, nblock)
            } else {
                (nblock, cblock)
            };
            let p = pair1(b1.clone(), b2.clone());
            let positive = is_almost_kahler(&p);
            let expected = (sign == Sign::Plus) == x.is_positive();
            prop_assert_eq!(positive, expected);
            let root = Root::new(vec![1]);
            prop_assert_eq!(classify_root(&root, &b1, &b2).is_ok(), expected);
        }
    }
}
