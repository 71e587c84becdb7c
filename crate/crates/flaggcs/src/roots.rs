//! Root systems of the simple Lie algebras and their Weyl groups.
//!
//! Roots are stored as integer coordinate vectors over the simple-root basis.
//! Positive roots are generated by closing the simple roots under all simple
//! reflections and keeping the nonnegative vectors; they are ordered by
//! (height, lexicographic), which fixes a deterministic indexing used by every
//! structure in this crate. Weyl elements are stored as reduced words together
//! with their signed permutation action on the positive roots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on Weyl group enumeration (the full group for every rank that
/// is practical to sweep; E and high-rank B/C/D groups exceed it on purpose).
pub const DEFAULT_WEYL_CAP: usize = 100_000;

/// A root written over the simple-root basis, e.g. `[1, 1]` for a1 + a2.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Root {
    coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root { coords }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        assert!(i < rank);
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Root { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.coords.iter().all(|&c| c <= 0) && self.coords.iter().any(|&c| c < 0)
    }

    pub fn negated(&self) -> Self {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.coords.len(), other.coords.len());
        Root {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Indices of the simple roots appearing with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Ordering key used for positive roots: height, then coordinates.
    pub fn sort_key(&self) -> (i64, Vec<i64>) {
        (self.height(), self.coords.clone())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }

    fn rank_ok(self, n: usize) -> bool {
        match self {
            Family::A => n >= 1,
            Family::B => n >= 2,
            Family::C => n >= 3,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
            Family::F => n == 4,
            Family::G => n == 2,
        }
    }

    fn positive_count(self, n: usize) -> usize {
        match self {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

/// A simple root system with its deterministic positive-root indexing.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
    triples: Vec<[usize; 3]>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    /// Builds the root system of the given family and rank.
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        if !family.rank_ok(rank) {
            return Err(Error::InvalidAlgebra {
                family: family.letter(),
                rank,
            });
        }
        let cartan = cartan_matrix(family, rank);
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..rank {
            let mut c = vec![0i64; rank];
            c[i] = 1;
            seen.insert(c.clone());
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            for j in 0..rank {
                let image = reflect_coords(&cartan, &c, j);
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut positive: Vec<Root> = seen
            .into_iter()
            .map(Root::new)
            .filter(Root::is_positive)
            .collect();
        positive.sort_by_key(|r| r.sort_key());
        assert_eq!(
            positive.len(),
            family.positive_count(rank),
            "positive root closure does not match the classical count"
        );
        let index: HashMap<Root, usize> = positive
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let mut triples = Vec::new();
        for i in 0..positive.len() {
            for j in i + 1..positive.len() {
                let sum = positive[i].plus(&positive[j]);
                if let Some(&k) = index.get(&sum) {
                    triples.push([i, j, k]);
                }
            }
        }
        triples.sort();
        Ok(RootSystem {
            family,
            rank,
            cartan,
            positive,
            index,
            triples,
        })
    }

    /// Parses a designator such as `"A2"`.
    pub fn parse(name: &str) -> Result<Self> {
        let mut chars = name.trim().chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::BadAlgebraName(name.to_string()))?;
        let family =
            Family::from_letter(letter).ok_or_else(|| Error::BadAlgebraName(name.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::BadAlgebraName(name.to_string()))?;
        Self::build(family, rank)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots ordered by (height, lexicographic).
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Number of positive roots, written `d` throughout.
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank).map(|i| Root::simple(self.rank, i)).collect()
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.positive[i]
    }

    /// Index pairs `[i, j, k]` with `root(i) + root(j) = root(k)`, each
    /// unordered pair listed once with `i < j`.
    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn triple_roots(&self, t: [usize; 3]) -> [Root; 3] {
        [
            self.positive[t[0]].clone(),
            self.positive[t[1]].clone(),
            self.positive[t[2]].clone(),
        ]
    }

    /// Positive roots whose simple support lies in `theta`.
    ///
    /// Every element of `theta` must itself be simple.
    pub fn theta_closure(&self, theta: &[Root]) -> Result<Vec<Root>> {
        let allowed = self.theta_index_set(theta)?;
        Ok(self
            .positive
            .iter()
            .filter(|r| r.support().iter().all(|i| allowed.contains(i)))
            .cloned()
            .collect())
    }

    fn theta_index_set(&self, theta: &[Root]) -> Result<HashSet<usize>> {
        let mut allowed = HashSet::new();
        for t in theta {
            let support = t.support();
            let simple = t.rank() == self.rank && support.len() == 1 && t.coords()[support[0]] == 1;
            if !simple {
                return Err(Error::NotSimpleRoot(t.to_string()));
            }
            allowed.insert(support[0]);
        }
        Ok(allowed)
    }

    /// Action of the simple reflection `s_j` on an arbitrary root.
    pub fn simple_reflection(&self, j: usize, r: &Root) -> Root {
        Root::new(reflect_coords(&self.cartan, r.coords(), j))
    }

    /// The simple reflection `s_j` as a Weyl element.
    pub fn simple_reflection_element(&self, j: usize) -> WeylElement {
        assert!(j < self.rank);
        let perm = self
            .positive
            .iter()
            .map(|r| self.signed_index(&self.simple_reflection(j, r)))
            .collect();
        WeylElement {
            word: vec![j],
            perm,
        }
    }

    fn signed_index(&self, r: &Root) -> (usize, bool) {
        if let Some(&i) = self.index.get(r) {
            (i, false)
        } else {
            let i = *self
                .index
                .get(&r.negated())
                .expect("simple reflection image must be a root");
            (i, true)
        }
    }

    /// Enumerates the Weyl group (breadth-first over reduced words) up to the
    /// default cap.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        self.weyl_group_capped(DEFAULT_WEYL_CAP)
    }

    pub fn weyl_group_capped(&self, cap: usize) -> Result<Vec<WeylElement>> {
        let d = self.positive.len();
        let gens: Vec<WeylElement> = (0..self.rank)
            .map(|j| self.simple_reflection_element(j))
            .collect();
        let mut elements = vec![WeylElement::identity(d)];
        let mut seen: HashSet<Vec<(usize, bool)>> = HashSet::new();
        seen.insert(elements[0].perm.clone());
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in &gens {
                let next = current.compose(g);
                if seen.contains(&next.perm) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::WeylCapExceeded {
                        cap,
                        found: elements.len(),
                    });
                }
                seen.insert(next.perm.clone());
                elements.push(next);
            }
        }
        Ok(elements)
    }
}

/// A Weyl group element: a reduced word in simple reflections plus its signed
/// permutation of the positive roots.
///
/// Equality and hashing compare the permutation only: two elements are equal
/// when they act identically on the roots, regardless of which words
/// produced them. The word is a witness, canonical (breadth-first shortest)
/// for elements coming out of group enumeration but unreduced for products.
#[derive(Clone, Eq, Debug)]
pub struct WeylElement {
    word: Vec<usize>,
    perm: Vec<(usize, bool)>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

impl WeylElement {
    pub fn identity(d: usize) -> Self {
        WeylElement {
            word: Vec::new(),
            perm: (0..d).map(|i| (i, false)).collect(),
        }
    }

    /// Builds the element `s_{w[0]} s_{w[1]} ...` (rightmost letter acts
    /// first on roots).
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut w = WeylElement::identity(rs.num_positive());
        for &j in word {
            w = w.compose(&rs.simple_reflection_element(j));
        }
        w
    }

    /// Word in 0-based simple reflection indices.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm
            .iter()
            .enumerate()
            .all(|(i, &(j, s))| i == j && !s)
    }

    /// Image of the i-th positive root as (index, negated).
    pub fn apply_index(&self, i: usize) -> (usize, bool) {
        self.perm[i]
    }

    /// Image of an arbitrary root (positive or negative).
    pub fn apply(&self, rs: &RootSystem, r: &Root) -> Result<Root> {
        let (base, flip) = if r.is_positive() {
            (r.clone(), false)
        } else {
            (r.negated(), true)
        };
        let i = rs
            .root_index(&base)
            .ok_or_else(|| Error::UnknownRoot(r.to_string()))?;
        let (j, neg) = self.perm[i];
        let image = rs.root(j).clone();
        Ok(if neg != flip { image.negated() } else { image })
    }

    /// The composite `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.perm.len(), other.perm.len());
        let perm = other
            .perm
            .iter()
            .map(|&(j, s)| {
                let (k, t) = self.perm[j];
                (k, s ^ t)
            })
            .collect();
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { word, perm }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![(0, false); self.perm.len()];
        for (i, &(j, s)) in self.perm.iter().enumerate() {
            perm[j] = (i, s);
        }
        let word = self.word.iter().rev().copied().collect();
        WeylElement { word, perm }
    }
}

fn reflect_coords(cartan: &[Vec<i64>], coords: &[i64], j: usize) -> Vec<i64> {
    // s_j(b) = b - <b, a_j^v> a_j with <a_i, a_j^v> = cartan[i][j].
    let pairing: i64 = coords
        .iter()
        .enumerate()
        .map(|(i, &c)| c * cartan[i][j])
        .sum();
    let mut out = coords.to_vec();
    out[j] -= pairing;
    out
}

fn cartan_matrix(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
    }
    let mut chain = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        Family::A => {
            for i in 0..n.saturating_sub(1) {
                chain(i, i + 1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                chain(i, i + 1);
            }
            // Last simple root short: <a_{n-1}, a_n^v> = -2.
            c[n - 2][n - 1] = -2;
        }
        Family::C => {
            for i in 0..n - 1 {
                chain(i, i + 1);
            }
            // Last simple root long: <a_n, a_{n-1}^v> = -2.
            c[n - 1][n - 2] = -2;
        }
        Family::D => {
            for i in 0..n - 2 {
                chain(i, i + 1);
            }
            chain(n - 3, n - 1);
            c[n - 2][n - 1] = 0;
            c[n - 1][n - 2] = 0;
        }
        Family::E => {
            // Bourbaki numbering: chain 1-3-4-5-..., node 2 attached to 4.
            let edges: &[(usize, usize)] = match n {
                6 => &[(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
                7 => &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
                _ => &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
            };
            for &(a, b) in edges {
                chain(a - 1, b - 1);
            }
        }
        Family::F => {
            chain(0, 1);
            chain(2, 3);
            c[1][2] = -2;
            c[2][1] = -1;
        }
        Family::G => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(name: &str) -> RootSystem {
        RootSystem::parse(name).unwrap()
    }

    #[test]
    fn a1_has_one_positive_root() {
        let r = rs("A1");
        assert_eq!(r.positive_roots(), &[Root::new(vec![1])]);
        assert!(r.triples().is_empty());
    }

    #[test]
    fn a2_positive_roots_and_triple() {
        let r = rs("A2");
        let set: HashSet<_> = r.positive_roots().iter().cloned().collect();
        let expected: HashSet<_> = [vec![1, 0], vec![0, 1], vec![1, 1]]
            .into_iter()
            .map(Root::new)
            .collect();
        assert_eq!(set, expected);
        assert_eq!(r.triples().len(), 1);
        let [a, b, g] = r.triple_roots(r.triples()[0]);
        assert_eq!(a.plus(&b), g);
    }

    #[test]
    fn a3_has_four_additive_triples() {
        assert_eq!(rs("A3").triples().len(), 4);
    }

    #[test]
    fn positive_counts_match_classical_formulas() {
        let cases = [
            ("A1", 1),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("C4", 16),
            ("D4", 12),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ];
        for (name, count) in cases {
            assert_eq!(rs(name).num_positive(), count, "{name}");
        }
    }

    #[test]
    fn ordering_is_by_height_then_lex() {
        let r = rs("A2");
        assert_eq!(
            r.positive_roots(),
            &[
                Root::new(vec![0, 1]),
                Root::new(vec![1, 0]),
                Root::new(vec![1, 1])
            ]
        );
    }

    #[test]
    fn invalid_designators_are_rejected() {
        for name in [
            "A0", "B1", "C2", "D3", "E5", "E9", "F3", "G4", "H2", "A", "",
        ] {
            assert!(RootSystem::parse(name).is_err(), "{name}");
        }
    }

    #[test]
    fn theta_closure_examples() {
        let r = rs("A2");
        let a1 = Root::new(vec![1, 0]);
        let a2 = Root::new(vec![0, 1]);
        assert_eq!(
            r.theta_closure(std::slice::from_ref(&a1)).unwrap(),
            vec![a1.clone()]
        );
        assert_eq!(r.theta_closure(&[a1.clone(), a2.clone()]).unwrap().len(), 3);
        assert!(r.theta_closure(&[Root::new(vec![1, 1])]).is_err());

        let r3 = rs("A3");
        let t = vec![Root::new(vec![1, 0, 0]), Root::new(vec![0, 0, 1])];
        assert_eq!(r3.theta_closure(&t).unwrap().len(), 2);
    }

    #[test]
    fn theta_closure_monotone_and_idempotent() {
        let r = rs("B3");
        let simples = r.simple_roots();
        for mask in 0u32..(1 << 3) {
            let theta: Vec<Root> = simples
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| s.clone())
                .collect();
            let closure = r.theta_closure(&theta).unwrap();
            // Idempotent: simples inside the closure regenerate it.
            let back: Vec<Root> = closure
                .iter()
                .filter(|x| x.height() == 1)
                .cloned()
                .collect();
            assert_eq!(r.theta_closure(&back).unwrap(), closure);
            // Monotone under adding one more simple root.
            for (i, s) in simples.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    continue;
                }
                let mut bigger = theta.clone();
                bigger.push(s.clone());
                let big_closure = r.theta_closure(&bigger).unwrap();
                assert!(closure.iter().all(|x| big_closure.contains(x)));
            }
        }
    }

    #[test]
    fn weyl_orders() {
        let cases = [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("B2", 8),
            ("G2", 12),
            ("B3", 48),
        ];
        for (name, order) in cases {
            assert_eq!(rs(name).weyl_group().unwrap().len(), order, "{name}");
        }
    }

    #[test]
    fn weyl_cap_is_enforced() {
        match rs("A3").weyl_group_capped(10) {
            Err(Error::WeylCapExceeded { cap: 10, found }) => assert_eq!(found, 10),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn simple_reflection_action_in_a2() {
        let r = rs("A2");
        let s1 = r.simple_reflection_element(0);
        let a1 = Root::new(vec![1, 0]);
        let a2 = Root::new(vec![0, 1]);
        let sum = Root::new(vec![1, 1]);
        assert_eq!(s1.apply(&r, &a1).unwrap(), a1.negated());
        assert_eq!(s1.apply(&r, &a2).unwrap(), sum);
        assert_eq!(s1.apply(&r, &sum).unwrap(), a2);
    }

    #[test]
    fn weyl_elements_permute_roots_and_compose() {
        let r = rs("A3");
        let group = r.weyl_group().unwrap();
        for w in group.iter().take(10) {
            for root in r.positive_roots() {
                let image = w.apply(&r, root).unwrap();
                let base = if image.is_positive() {
                    image.clone()
                } else {
                    image.negated()
                };
                assert!(r.root_index(&base).is_some());
            }
            // Words reproduce the stored permutation.
            assert_eq!(&WeylElement::from_word(&r, w.word()), w);
            // Inverse really inverts.
            assert!(w.compose(&w.inverse()).is_identity());
        }
        let w1 = &group[3];
        let w2 = &group[7];
        let composite = w1.compose(w2);
        for root in r.positive_roots() {
            let step = w1.apply(&r, &w2.apply(&r, root).unwrap()).unwrap();
            assert_eq!(composite.apply(&r, root).unwrap(), step);
        }
    }

    #[test]
    fn triple_images_avoid_forbidden_sign_patterns() {
        // The image (u, v, u+v) of an additive triple can never have the sum
        // positive with both summands negative, or vice versa.
        for name in ["A2", "A3", "B2"] {
            let r = rs(name);
            for w in r.weyl_group().unwrap() {
                for &t in r.triples() {
                    let [a, b, g] = r.triple_roots(t);
                    let u = w.apply(&r, &a).unwrap();
                    let v = w.apply(&r, &b).unwrap();
                    let s = w.apply(&r, &g).unwrap();
                    assert_eq!(u.plus(&v), s);
                    let pattern = (u.is_positive(), v.is_positive(), s.is_positive());
                    assert!(pattern != (true, true, false));
                    assert!(pattern != (false, false, true));
                }
            }
        }
    }
}
