//! Invariant generalized almost complex structures, block by block.
//!
//! On a maximal flag manifold an invariant generalized almost complex
//! structure decomposes along positive roots into 4x4 blocks acting on
//! coordinates over the ordered basis (A, S, sigma, tau) of a root's real
//! four-dimensional piece of (tangent + cotangent): A and S span the tangent
//! piece, and sigma, tau are the dual one-forms with sigma(A) = 1,
//! sigma(S) = 0, tau(A) = 0, tau(S) = 1.
//!
//! Each block is either one of the two complex blocks (the standard block
//! below or its negative) or a noncomplex block determined by rationals
//! (a, x) with x nonzero and third parameter y = (a^2 + 1)/x derived, so that
//! a^2 = xy - 1 holds by construction and invalid blocks are unrepresentable.
//!
//! B-field transforms act per root through a single rational coefficient b;
//! conjugating a noncomplex block sends a to a + b*x and fixes x, which pins
//! the orbit normal form: every noncomplex block is the b = a/x transform of
//! the symplectic block (0, x), while complex blocks are fixed points. The
//! moduli coordinate of a block is therefore either a signed zero (complex
//! blocks) or the nonzero rational x (noncomplex orbits), one copy of the
//! punctured line with a doubled origin per positive root.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{signature, Mat};
use crate::rational::{ci, cre, int, rat, CRat, Rat};
use crate::roots::{Root, RootSystem};

/// Sign of a complex block or of a signed-zero moduli coordinate.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidSign(other.to_string())),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i8())
    }
}

/// One root's 4x4 block.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Block {
    Complex(Sign),
    NonComplex { a: Rat, x: Rat },
}

impl Block {
    pub fn complex(sign: Sign) -> Self {
        Block::Complex(sign)
    }

    pub fn noncomplex(a: Rat, x: Rat) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroX);
        }
        Ok(Block::NonComplex { a, x })
    }

    /// The symplectic block (a = 0).
    pub fn symplectic(x: Rat) -> Result<Self> {
        Self::noncomplex(Rat::zero(), x)
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, Block::Complex(_))
    }

    pub fn is_noncomplex(&self) -> bool {
        !self.is_complex()
    }

    /// Derived parameter y = (a^2 + 1)/x of a noncomplex block.
    pub fn y(&self) -> Option<Rat> {
        match self {
            Block::Complex(_) => None,
            Block::NonComplex { a, x } => Some((a.clone() * a.clone() + Rat::one()) / x.clone()),
        }
    }

    /// The 4x4 matrix over (A, S, s, t) coordinates.
    pub fn matrix(&self) -> Mat<Rat> {
        match self {
            Block::Complex(sign) => {
                let j0 = standard_complex_matrix();
                match sign {
                    Sign::Plus => j0,
                    Sign::Minus => j0.neg(),
                }
            }
            Block::NonComplex { a, x } => {
                let y = self.y().unwrap();
                let z = Rat::zero();
                Mat::from_rows(vec![
                    vec![a.clone(), z.clone(), z.clone(), -x.clone()],
                    vec![z.clone(), a.clone(), x.clone(), z.clone()],
                    vec![z.clone(), -y.clone(), -a.clone(), z.clone()],
                    vec![y.clone(), z.clone(), z.clone(), -a.clone()],
                ])
            }
        }
    }

    /// Reads a block back off its 4x4 matrix, if the matrix is one.
    pub fn from_matrix(m: &Mat<Rat>) -> Option<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return None;
        }
        let j0 = standard_complex_matrix();
        if *m == j0 {
            return Some(Block::Complex(Sign::Plus));
        }
        if *m == j0.neg() {
            return Some(Block::Complex(Sign::Minus));
        }
        let x = -m.get(0, 3).clone();
        if x.is_zero() {
            return None;
        }
        let candidate = Block::NonComplex {
            a: m.get(0, 0).clone(),
            x,
        };
        (candidate.matrix() == *m).then_some(candidate)
    }

    /// The block at the negated root: complex blocks flip sign, noncomplex
    /// blocks keep a and negate x (hence negate y).
    pub fn negate_root(&self) -> Self {
        match self {
            Block::Complex(s) => Block::Complex(s.flipped()),
            Block::NonComplex { a, x } => Block::NonComplex {
                a: a.clone(),
                x: -x.clone(),
            },
        }
    }

    /// B-field transform by coefficient `b`, computed as the exact 4x4
    /// conjugation exp(-B) J exp(B) and cross-checked against the closed form
    /// (complex blocks fixed, noncomplex (a, x) -> (a + b*x, x)).
    pub fn b_transform(&self, b: &Rat) -> Self {
        let conj = b_exp(&-b.clone()).mul(&self.matrix()).mul(&b_exp(b));
        let out =
            Block::from_matrix(&conj).expect("conjugate of a block matrix is again a block matrix");
        let expected = match self {
            Block::Complex(s) => Block::Complex(*s),
            Block::NonComplex { a, x } => Block::NonComplex {
                a: a.clone() + b.clone() * x.clone(),
                x: x.clone(),
            },
        };
        assert_eq!(out, expected, "conjugation disagrees with the closed form");
        out
    }

    /// Moduli coordinate of the block's B-transform orbit.
    pub fn moduli_coordinate(&self) -> ModuliCoordinate {
        match self {
            Block::Complex(s) => ModuliCoordinate::SignedZero(*s),
            Block::NonComplex { x, .. } => ModuliCoordinate::Symplectic(x.clone()),
        }
    }

    /// Witness coefficient b with `symplectic(x).b_transform(b) == self`.
    pub fn normal_form_witness(&self) -> Rat {
        match self {
            Block::Complex(_) => Rat::zero(),
            Block::NonComplex { a, x } => a.clone() / x.clone(),
        }
    }

    /// Basis of the +i eigenspace as coordinate vectors over (A, S, s, t).
    pub fn eigenbasis(&self) -> [[CRat; 4]; 2] {
        let zero = CRat::zero();
        match self {
            Block::Complex(Sign::Plus) => [
                // A - iS and t + is (the latter is A* - iS*).
                [cre(int(1)), -ci(), zero.clone(), zero.clone()],
                [zero.clone(), zero.clone(), ci(), cre(int(1))],
            ],
            Block::Complex(Sign::Minus) => [
                [cre(int(1)), ci(), zero.clone(), zero.clone()],
                [zero.clone(), zero.clone(), -ci(), cre(int(1))],
            ],
            Block::NonComplex { a, x } => {
                // xA + (a - i)A* and xS + (a - i)S*, with S* = -s.
                let am_i = CRat::new(a.clone(), -Rat::one());
                [
                    [cre(x.clone()), zero.clone(), zero.clone(), am_i.clone()],
                    [zero.clone(), cre(x.clone()), -am_i, zero.clone()],
                ]
            }
        }
    }
}

fn standard_complex_matrix() -> Mat<Rat> {
    let rows = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect(),
    )
}

/// exp of the B-field generator with coefficient b: identity plus the 2x2
/// block [[0, b], [-b, 0]] mapping (A, S) into (s, t).
fn b_exp(b: &Rat) -> Mat<Rat> {
    let mut m = Mat::identity(4);
    m.set(2, 1, b.clone());
    m.set(3, 0, -b.clone());
    m
}

/// The natural pairing on one root block, with matrix (1/2) offdiag(I2, I2).
pub fn pairing_block() -> Mat<Rat> {
    let mut p = Mat::zeros(4, 4);
    let half = rat(1, 2);
    for (i, j) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
        p.set(i, j, half.clone());
    }
    p
}

/// Pairing on d root blocks.
pub fn pairing_matrix(d: usize) -> Mat<Rat> {
    Mat::block_diag(&vec![pairing_block(); d])
}

/// Checks M^2 = -1 and M^T P M = P for an assembled 4d x 4d matrix.
pub fn is_gacs_matrix(m: &Mat<Rat>) -> bool {
    if m.rows() != m.cols() || !m.rows().is_multiple_of(4) {
        return false;
    }
    let n = m.rows();
    let p = pairing_matrix(n / 4);
    m.mul(m) == Mat::identity(n).neg() && m.transpose().mul(&p).mul(m) == p
}

/// A total assignment of blocks to the positive roots of a root system.
#[derive(Clone, Debug)]
pub struct InvariantGcs {
    algebra: Arc<RootSystem>,
    blocks: Vec<Block>,
}

impl PartialEq for InvariantGcs {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.blocks == other.blocks
    }
}

impl Eq for InvariantGcs {}

impl InvariantGcs {
    pub fn new(algebra: Arc<RootSystem>, blocks: Vec<Block>) -> Result<Self> {
        if blocks.len() != algebra.num_positive() {
            return Err(Error::BlockCount {
                expected: algebra.num_positive(),
                got: blocks.len(),
            });
        }
        Ok(InvariantGcs { algebra, blocks })
    }

    /// The all-complex structure with the given sign everywhere.
    pub fn all_complex(algebra: Arc<RootSystem>, sign: Sign) -> Self {
        let blocks = vec![Block::Complex(sign); algebra.num_positive()];
        InvariantGcs { algebra, blocks }
    }

    pub fn algebra(&self) -> &Arc<RootSystem> {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Block {
        &self.blocks[i]
    }

    pub fn block_at(&self, root: &Root) -> Option<&Block> {
        self.algebra.root_index(root).map(|i| &self.blocks[i])
    }

    pub fn with_block(&self, i: usize, b: Block) -> Self {
        let mut out = self.clone();
        out.blocks[i] = b;
        out
    }

    /// Number of complex blocks (the structure's type).
    pub fn gcs_type(&self) -> usize {
        self.blocks.iter().filter(|b| b.is_complex()).count()
    }

    /// Positive roots carrying a noncomplex block.
    pub fn noncomplex_support(&self) -> Vec<Root> {
        self.algebra
            .positive_roots()
            .iter()
            .zip(&self.blocks)
            .filter(|(_, b)| b.is_noncomplex())
            .map(|(r, _)| r.clone())
            .collect()
    }

    /// Block-diagonal 4d x 4d matrix.
    pub fn assembled_matrix(&self) -> Mat<Rat> {
        let blocks: Vec<Mat<Rat>> = self.blocks.iter().map(Block::matrix).collect();
        Mat::block_diag(&blocks)
    }

    /// Checks the two defining identities on the assembled matrix.
    pub fn is_gacs(&self) -> bool {
        is_gacs_matrix(&self.assembled_matrix())
    }

    /// Applies a B-field transform blockwise.
    pub fn b_transform(&self, b: &BTransform) -> Result<Self> {
        if b.coeffs.len() != self.blocks.len() {
            return Err(Error::BlockCount {
                expected: self.blocks.len(),
                got: b.coeffs.len(),
            });
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&b.coeffs)
            .map(|(blk, c)| blk.b_transform(c))
            .collect();
        Ok(InvariantGcs {
            algebra: self.algebra.clone(),
            blocks,
        })
    }

    /// Per-root moduli coordinates (no witness).
    pub fn moduli_coordinates(&self) -> Vec<ModuliCoordinate> {
        self.blocks.iter().map(Block::moduli_coordinate).collect()
    }

    /// Orbit normal form: moduli coordinates plus the B-transform witness
    /// carrying the symplectic representative back to this structure.
    pub fn normal_form(&self) -> NormalForm {
        NormalForm {
            coords: self.moduli_coordinates(),
            witness: BTransform::new(self.blocks.iter().map(Block::normal_form_witness).collect()),
        }
    }

    /// The representative with every noncomplex block replaced by its
    /// symplectic form (a = 0); complex blocks unchanged.
    pub fn normal_representative(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| match b {
                Block::Complex(s) => Block::Complex(*s),
                Block::NonComplex { x, .. } => Block::NonComplex {
                    a: Rat::zero(),
                    x: x.clone(),
                },
            })
            .collect();
        InvariantGcs {
            algebra: self.algebra.clone(),
            blocks,
        }
    }
}

/// Compares two structures up to per-root B-field transforms.
pub fn moduli_equal(j1: &InvariantGcs, j2: &InvariantGcs) -> Result<bool> {
    if j1.algebra != j2.algebra {
        return Err(Error::AlgebraMismatch {
            left: j1.algebra.name(),
            right: j2.algebra.name(),
        });
    }
    Ok(j1.moduli_coordinates() == j2.moduli_coordinates())
}

/// A per-root B-field coefficient map; these compose additively.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BTransform {
    coeffs: Vec<Rat>,
}

impl BTransform {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        BTransform { coeffs }
    }

    pub fn zero(d: usize) -> Self {
        BTransform {
            coeffs: vec![Rat::zero(); d],
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        BTransform {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn negated(&self) -> Self {
        BTransform {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// True when the coefficients are additive over every additive root
    /// triple, i.e. b(a+b) = b(a) + b(b); exactly these maps come from closed
    /// invariant two-forms and preserve integrability.
    pub fn is_additive(&self, rs: &RootSystem) -> bool {
        rs.triples().iter().all(|&[i, j, k]| {
            self.coeffs[k].clone() == self.coeffs[i].clone() + self.coeffs[j].clone()
        })
    }

    /// Linear extension of per-simple-root coefficients; always additive.
    pub fn from_simple_coeffs(rs: &RootSystem, simple: &[Rat]) -> Self {
        assert_eq!(simple.len(), rs.rank());
        let coeffs = rs
            .positive_roots()
            .iter()
            .map(|r| {
                r.coords()
                    .iter()
                    .zip(simple)
                    .map(|(&n, b)| int(n) * b.clone())
                    .fold(Rat::zero(), |acc, v| acc + v)
            })
            .collect();
        BTransform { coeffs }
    }
}

/// Coordinate on the per-root moduli: the punctured real line together with a
/// doubled (signed) origin.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ModuliCoordinate {
    SignedZero(Sign),
    Symplectic(Rat),
}

impl fmt::Display for ModuliCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuliCoordinate::SignedZero(s) => match s {
                Sign::Plus => write!(f, "+0"),
                Sign::Minus => write!(f, "-0"),
            },
            ModuliCoordinate::Symplectic(x) => write!(f, "{x}"),
        }
    }
}

/// Result of `normal_form`: coordinates plus a reconstruction witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub coords: Vec<ModuliCoordinate>,
    pub witness: BTransform,
}

/// Signature of the assembled pairing, as (positive, negative) inertia.
pub fn pairing_signature(d: usize) -> (usize, usize) {
    let (pos, neg, zero) = signature(&pairing_matrix(d));
    assert_eq!(zero, 0, "pairing is nondegenerate");
    (pos, neg)
}

/// Complex-bilinear evaluation of the pairing on coordinate 4-vectors.
pub fn pairing_eval_block(u: &[CRat; 4], v: &[CRat; 4]) -> CRat {
    // 2P pairs slot 0 with 2 and slot 1 with 3.
    let half = cre(rat(1, 2));
    half * (u[0].clone() * v[2].clone()
        + u[2].clone() * v[0].clone()
        + u[1].clone() * v[3].clone()
        + u[3].clone() * v[1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat;
    use num_complex::Complex;
    use proptest::prelude::*;

    fn nc(a: Rat, x: Rat) -> Block {
        Block::noncomplex(a, x).unwrap()
    }

    #[test]
    fn standard_complex_block_matrix() {
        let m = Block::complex(Sign::Plus).matrix();
        let expect = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*m.get(i, j), int(expect[i][j]));
            }
        }
    }

    #[test]
    fn symplectic_block_matrix() {
        let m = Block::symplectic(int(1)).unwrap().matrix();
        let expect = [[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*m.get(i, j), int(expect[i][j]));
            }
        }
    }

    #[test]
    fn y_is_derived() {
        assert_eq!(nc(int(1), int(1)).y().unwrap(), int(2));
        assert_eq!(nc(int(0), int(2)).y().unwrap(), rat(1, 2));
        assert!(Block::noncomplex(int(1), int(0)).is_err());
    }

    #[test]
    fn pairing_block_properties() {
        let p = pairing_block();
        assert!(p.is_symmetric());
        let quarter_id = Mat::identity(4).scale(&rat(1, 4));
        assert_eq!(p.mul(&p), quarter_id);
        assert_eq!(signature(&p), (2, 2, 0));
    }

    #[test]
    fn pairing_dual_basis_values() {
        // <A + t, A> = 0 and <S, t> = 1/2 under the dual-basis convention.
        let p = pairing_block();
        let a = [int(1), int(0), int(0), int(0)];
        let s = [int(0), int(1), int(0), int(0)];
        let t = [int(0), int(0), int(0), int(1)];
        let pair = |u: &[Rat; 4], v: &[Rat; 4]| -> Rat {
            let pv = p.mul_vec(v);
            u.iter()
                .zip(&pv)
                .map(|(x, y)| x.clone() * y.clone())
                .fold(Rat::zero(), |acc, v| acc + v)
        };
        let a_plus_t = [int(1), int(0), int(0), int(1)];
        assert_eq!(pair(&a_plus_t, &a), int(0));
        assert_eq!(pair(&s, &t), rat(1, 2));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-50i64..=50, 1i64..=50).prop_map(|(n, d)| rat(n, d))
    }

    fn nonzero_rat() -> impl Strategy<Value = Rat> {
        (small_rat(), prop_oneof![Just(1i64), Just(-1i64)], 1i64..=50)
            .prop_map(|(a, s, d)| a + rat(s, d) * rat(1, 997))
            .prop_filter("nonzero", |r| !r.is_zero())
    }

    fn any_block() -> impl Strategy<Value = Block> {
        prop_oneof![
            Just(Block::Complex(Sign::Plus)),
            Just(Block::Complex(Sign::Minus)),
            (small_rat(), nonzero_rat()).prop_map(|(a, x)| nc(a, x)),
        ]
    }

    proptest! {
        #[test]
        fn blocks_square_to_minus_one_and_preserve_pairing(b in any_block()) {
            let m = b.matrix();
            prop_assert!(is_gacs_matrix(&m));
        }

        #[test]
        fn negate_root_is_an_involution(b in any_block()) {
            prop_assert_eq!(b.negate_root().negate_root(), b);
        }

        #[test]
        fn b_transforms_compose_additively(b in any_block(), c1 in small_rat(), c2 in small_rat()) {
            let lhs = b.b_transform(&c1).b_transform(&c2);
            let rhs = b.b_transform(&(c1 + c2));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn moduli_coordinate_is_b_invariant(b in any_block(), c in small_rat()) {
            prop_assert_eq!(b.b_transform(&c).moduli_coordinate(), b.moduli_coordinate());
        }

        #[test]
        fn normal_form_witness_reconstructs(b in any_block()) {
            let witness = b.normal_form_witness();
            let rep = match &b {
                Block::Complex(s) => Block::Complex(*s),
                Block::NonComplex { x, .. } => Block::symplectic(x.clone()).unwrap(),
            };
            prop_assert_eq!(rep.b_transform(&witness), b);
        }

        #[test]
        fn eigenbasis_vectors_are_isotropic_eigenvectors(b in any_block()) {
            let m = b.matrix();
            let i = ci();
            for v in b.eigenbasis() {
                let cm: Vec<CRat> = {
                    // Complexify the rational matrix action on v.
                    let mut out = vec![CRat::zero(); 4];
                    for r in 0..4 {
                        for c in 0..4 {
                            out[r] = out[r].clone()
                                + Complex::new(m.get(r, c).clone(), Rat::zero()) * v[c].clone();
                        }
                    }
                    out
                };
                for (mv, vv) in cm.iter().zip(&v) {
                    prop_assert_eq!(mv.clone(), i.clone() * vv.clone());
                }
                prop_assert_eq!(pairing_eval_block(&v, &v), CRat::zero());
            }
            let [v1, v2] = b.eigenbasis();
            prop_assert_eq!(pairing_eval_block(&v1, &v2), CRat::zero());
        }
    }

    #[test]
    fn eigenbasis_matches_symplectic_example() {
        // (a, x) = (0, 1): the eigenvectors are A - i*t and S + i*s,
        // i.e. A - i A* and S - i S*.
        let [v1, v2] = nc(int(0), int(1)).eigenbasis();
        assert_eq!(v1, [cre(int(1)), CRat::zero(), CRat::zero(), -ci()]);
        assert_eq!(v2, [CRat::zero(), cre(int(1)), ci(), CRat::zero()]);
    }

    #[test]
    fn eigenbasis_with_conjugates_spans() {
        for b in [
            Block::Complex(Sign::Plus),
            Block::Complex(Sign::Minus),
            nc(int(3), rat(2, 5)),
        ] {
            let [v1, v2] = b.eigenbasis();
            let conj = |v: &[CRat; 4]| -> Vec<CRat> { v.iter().map(|c| c.conj()).collect() };
            let m = Mat::from_rows(vec![v1.to_vec(), v2.to_vec(), conj(&v1), conj(&v2)]);
            assert_eq!(m.rank(), 4);
        }
    }

    #[test]
    fn b_transform_block_example() {
        let out = Block::symplectic(int(1)).unwrap().b_transform(&int(1));
        assert_eq!(out, nc(int(1), int(1)));
        assert_eq!(out.y().unwrap(), int(2));
    }

    #[test]
    fn complex_blocks_are_b_fixed() {
        for s in [Sign::Plus, Sign::Minus] {
            for c in [int(0), int(5), rat(-7, 3)] {
                assert_eq!(Block::Complex(s).b_transform(&c), Block::Complex(s));
            }
        }
    }

    #[test]
    fn normal_form_example() {
        let b = nc(int(3), int(2));
        assert_eq!(b.moduli_coordinate(), ModuliCoordinate::Symplectic(int(2)));
        assert_eq!(b.normal_form_witness(), rat(3, 2));
    }

    fn a2() -> Arc<RootSystem> {
        Arc::new(RootSystem::parse("A2").unwrap())
    }

    #[test]
    fn structure_accessors_and_gacs() {
        let rs = a2();
        let j = InvariantGcs::all_complex(rs.clone(), Sign::Plus);
        assert!(j.is_gacs());
        assert_eq!(j.gcs_type(), 3);
        assert!(j.noncomplex_support().is_empty());
        assert!(InvariantGcs::new(rs, vec![Block::Complex(Sign::Plus)]).is_err());
    }

    #[test]
    fn corrupted_matrix_fails_gacs() {
        let rs = a2();
        let j = InvariantGcs::all_complex(rs, Sign::Plus);
        let mut m = j.assembled_matrix();
        m.set(0, 1, int(7));
        assert!(!is_gacs_matrix(&m));
        assert!(!is_gacs_matrix(&Mat::zeros(12, 12)));
    }

    #[test]
    fn structure_normal_form_and_moduli_equal() {
        let rs = a2();
        let blocks = vec![
            nc(int(1), int(1)),
            Block::Complex(Sign::Minus),
            nc(int(3), int(2)),
        ];
        let j = InvariantGcs::new(rs.clone(), blocks).unwrap();
        let nf = j.normal_form();
        assert_eq!(
            nf.coords,
            vec![
                ModuliCoordinate::Symplectic(int(1)),
                ModuliCoordinate::SignedZero(Sign::Minus),
                ModuliCoordinate::Symplectic(int(2)),
            ]
        );
        let rebuilt = j.normal_representative().b_transform(&nf.witness).unwrap();
        assert_eq!(rebuilt, j);

        let j5 = InvariantGcs::new(
            rs.clone(),
            vec![
                nc(int(5), int(1)),
                Block::Complex(Sign::Minus),
                nc(int(0), int(2)),
            ],
        )
        .unwrap();
        assert!(moduli_equal(&j, &j5).unwrap());
        let jx = InvariantGcs::new(
            rs,
            vec![
                nc(int(1), int(2)),
                Block::Complex(Sign::Minus),
                nc(int(3), int(2)),
            ],
        )
        .unwrap();
        assert!(!moduli_equal(&j, &jx).unwrap());

        let other = Arc::new(RootSystem::parse("A3").unwrap());
        let k = InvariantGcs::all_complex(other, Sign::Plus);
        assert!(moduli_equal(&j, &k).is_err());
    }

    #[test]
    fn pairing_signature_is_split() {
        assert_eq!(pairing_signature(1), (2, 2));
        assert_eq!(pairing_signature(3), (6, 6));
    }
}
