//! Pure spinor lines of invariant structures.
//!
//! Spinors live in the exterior algebra on the cotangent generators sigma_r,
//! tau_r (one pair per positive root) with complex rational coefficients. An
//! element v = c0 A_r + c1 S_r + c2 sigma_r + c3 tau_r of a root block acts
//! by Clifford multiplication
//!
//!   v . phi = c0 (A_r contraction) + c1 (S_r contraction)
//!           + (c2 sigma_r + c3 tau_r) wedge phi
//!
//! where the contraction by A_r removes sigma_r and the contraction by S_r
//! removes tau_r (they are dual pairs). Then v . v . phi = <v, v> phi for the
//! natural pairing, and the annihilator of the spinor of a structure is its
//! +i eigenbundle: half-dimensional, so the spinor is pure.
//!
//! The spinor of a structure is the wedge, in positive root order, of
//!
//!   noncomplex (a, x):   1 + ((i - a)/x) sigma_r ^ tau_r
//!   complex(+):          tau_r + i sigma_r
//!   complex(-):          tau_r - i sigma_r
//!
//! and a B-field transform multiplies it by the closed even factor
//! prod_r (1 - b_r sigma_r ^ tau_r), exactly matching the spinor of the
//! transformed structure.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::matrix::Mat;
use crate::rational::{ci, cre, CRat, Rat};
use crate::structures::{BTransform, Block, InvariantGcs, Sign};

/// Generator ids: sigma of root r is 2r, tau of root r is 2r + 1.
pub fn sigma_id(root_index: usize) -> u16 {
    2 * root_index as u16
}

pub fn tau_id(root_index: usize) -> u16 {
    2 * root_index as u16 + 1
}

/// Human-readable generator name, e.g. `s[1,0]` or `t[0,1]`.
pub fn generator_name(id: u16, rs: &crate::roots::RootSystem) -> String {
    let root = rs.root((id / 2) as usize);
    let kind = if id.is_multiple_of(2) { "s" } else { "t" };
    format!("{kind}{root}")
}

/// A wedge monomial: strictly increasing generator ids.
pub type Monomial = Vec<u16>;

/// Sparse exterior-algebra element with complex rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spinor {
    terms: BTreeMap<Monomial, CRat>,
}

impl Spinor {
    pub fn zero() -> Self {
        Spinor {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Spinor::term(Vec::new(), cre(Rat::one()))
    }

    pub fn term(monomial: Monomial, coeff: CRat) -> Self {
        assert!(
            monomial.windows(2).all(|w| w[0] < w[1]),
            "monomial ids must be strictly increasing"
        );
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Spinor { terms }
    }

    pub fn generator(id: u16) -> Self {
        Spinor::term(vec![id], cre(Rat::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, monomial: &[u16]) -> CRat {
        self.terms.get(monomial).cloned().unwrap_or_else(CRat::zero)
    }

    /// Smallest wedge degree with a nonzero term.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(CRat::zero);
            *entry = entry.clone() + c.clone();
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Spinor { terms }
    }

    pub fn scale(&self, c: &CRat) -> Self {
        if c.is_zero() {
            return Spinor::zero();
        }
        Spinor {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Spinor::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, sign)) = wedge_monomials(m1, m2) {
                    let mut c = c1.clone() * c2.clone();
                    if sign < 0 {
                        c = -c;
                    }
                    out = out.add(&Spinor::term(m, c));
                }
            }
        }
        out
    }

    /// Interior product with the vector dual to generator `id`: each monomial
    /// containing `id` at position p contributes (-1)^p with `id` removed.
    pub fn contract(&self, id: u16) -> Self {
        let mut out = Spinor::zero();
        for (m, c) in &self.terms {
            if let Ok(p) = m.binary_search(&id) {
                let mut reduced = m.clone();
                reduced.remove(p);
                let coeff = if p % 2 == 0 { c.clone() } else { -c.clone() };
                out = out.add(&Spinor::term(reduced, coeff));
            }
        }
        out
    }
}

impl fmt::Display for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let gens = if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter()
                        .map(|id| format!("g{id}"))
                        .collect::<Vec<_>>()
                        .join("^")
                };
                format!("({c})*{gens}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Merges two strictly increasing monomials; None when they share an id,
/// otherwise the merged monomial and the (-1)^inversions reordering sign.
fn wedge_monomials(m1: &[u16], m2: &[u16]) -> Option<(Monomial, i32)> {
    let mut out = Vec::with_capacity(m1.len() + m2.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < m1.len() && j < m2.len() {
        if m1[i] == m2[j] {
            return None;
        }
        if m1[i] < m2[j] {
            out.push(m1[i]);
            i += 1;
        } else {
            // m2[j] jumps over the remaining entries of m1.
            inversions += m1.len() - i;
            out.push(m2[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&m1[i..]);
    out.extend_from_slice(&m2[j..]);
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((out, sign))
}

/// Clifford action of a root-block coordinate vector (over A, S, sigma, tau)
/// on a spinor.
pub fn clifford_act(root_index: usize, v: &[CRat; 4], phi: &Spinor) -> Spinor {
    let mut out = Spinor::zero();
    if !v[0].is_zero() {
        out = out.add(&phi.contract(sigma_id(root_index)).scale(&v[0]));
    }
    if !v[1].is_zero() {
        out = out.add(&phi.contract(tau_id(root_index)).scale(&v[1]));
    }
    let form = Spinor::generator(sigma_id(root_index))
        .scale(&v[2])
        .add(&Spinor::generator(tau_id(root_index)).scale(&v[3]));
    out.add(&form.wedge(phi))
}

/// Spinor factor of one block at one root.
pub fn block_factor(root_index: usize, block: &Block) -> Spinor {
    let s = sigma_id(root_index);
    let t = tau_id(root_index);
    match block {
        Block::Complex(Sign::Plus) => Spinor::generator(t).add(&Spinor::generator(s).scale(&ci())),
        Block::Complex(Sign::Minus) => {
            Spinor::generator(t).add(&Spinor::generator(s).scale(&-ci()))
        }
        Block::NonComplex { a, x } => {
            // 1 + ((i - a)/x) sigma ^ tau.
            let c = (ci() - cre(a.clone())) / cre(x.clone());
            Spinor::one().add(&Spinor::term(vec![s, t], c))
        }
    }
}

/// The spinor of a structure: wedge of block factors in positive root order.
pub fn spinor_of(j: &InvariantGcs) -> Spinor {
    let mut phi = Spinor::one();
    for (i, b) in j.blocks().iter().enumerate() {
        phi = phi.wedge(&block_factor(i, b));
    }
    phi
}

/// The even factor prod_r (1 - b_r sigma_r ^ tau_r) of a B-field transform.
pub fn b_transform_factor(b: &BTransform) -> Spinor {
    let mut out = Spinor::one();
    for (r, c) in b.coeffs().iter().enumerate() {
        let factor =
            Spinor::one().add(&Spinor::term(vec![sigma_id(r), tau_id(r)], -cre(c.clone())));
        out = out.wedge(&factor);
    }
    out
}

/// Checks that every +i eigenvector of every block annihilates the spinor.
pub fn annihilates(j: &InvariantGcs, phi: &Spinor) -> bool {
    j.blocks().iter().enumerate().all(|(r, b)| {
        b.eigenbasis()
            .iter()
            .all(|v| clifford_act(r, v, phi).is_zero())
    })
}

/// Dimension of the full Clifford annihilator of a spinor over d root blocks,
/// computed exactly as the kernel of the action matrix on the 4d standard
/// generators. Pure spinors have annihilator dimension exactly 2d.
pub fn annihilator_dimension(phi: &Spinor, d: usize) -> usize {
    assert!(!phi.is_zero(), "the zero spinor annihilates everything");
    // Column space: all monomials reachable from phi's by one generator.
    let mut images: Vec<Spinor> = Vec::with_capacity(4 * d);
    for r in 0..d {
        for k in 0..4 {
            let mut v = [CRat::zero(), CRat::zero(), CRat::zero(), CRat::zero()];
            v[k] = cre(Rat::one());
            images.push(clifford_act(r, &v, phi));
        }
    }
    let mut monomials: Vec<Monomial> = Vec::new();
    for im in &images {
        for (m, _) in im.terms() {
            if !monomials.contains(m) {
                monomials.push(m.clone());
            }
        }
    }
    monomials.sort();
    if monomials.is_empty() {
        return 4 * d;
    }
    let rows: Vec<Vec<CRat>> = images
        .iter()
        .map(|im| monomials.iter().map(|m| im.coeff(m)).collect())
        .collect();
    let mat = Mat::from_rows(rows);
    4 * d - mat.rank()
}
