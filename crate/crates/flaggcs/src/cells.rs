//! Cell decomposition of the moduli of integrable structures.
//!
//! Per positive root the moduli coordinate is a point of the punctured real
//! line with doubled origin. Integrability ties these coordinates together:
//! every integrable structure normalizes (some Weyl element makes all x
//! positive and all complex signs plus), and normalized structures are
//! exactly the standard ones built from a subset Theta of simple roots. The
//! moduli space is therefore covered by translates w . c_Theta of standard
//! cells, where c_Theta keeps noncomplex blocks with positive x on the
//! closure of Theta and plus complex blocks elsewhere.
//!
//! A translated cell records, per positive root, either a noncomplex slot
//! with an x-orientation or a complex slot with a sign; the orientation or
//! sign is plus exactly when the inverse translate of the root is positive.
//! Consequently a cell's data determines the inversion set of the translating
//! element, which determines the element, which in turn pins Theta: distinct
//! (w, Theta) pairs always give distinct cells and the covering is disjoint.
//! Cell dimension is |Theta| (one free parameter per theta root; closure
//! parameters are bound by the integrability relations) and the type of every
//! structure in the cell is the number of complex slots.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::roots::{Root, RootSystem, WeylElement};
use crate::structures::{Block, InvariantGcs, Sign};
use crate::weyl_action::first_normalizing_element;

/// Per-root slot of a cell.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum CellSlot {
    /// Noncomplex slot; the sign is the orientation of the x half-line.
    NonComplex(Sign),
    /// Complex slot with a fixed sign.
    Complex(Sign),
}

impl CellSlot {
    /// Short slot label, e.g. `"n+1"` or `"c-1"`.
    pub fn tag(self) -> String {
        match self {
            CellSlot::NonComplex(s) => format!("n{s:+}", s = s.to_i8()),
            CellSlot::Complex(s) => format!("c{s:+}", s = s.to_i8()),
        }
    }
}

/// One cell of the decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaCell {
    algebra: Arc<RootSystem>,
    theta: Vec<Root>,
    word: Vec<usize>,
    slots: Vec<CellSlot>,
    dim: usize,
    gcs_type: usize,
}

impl ThetaCell {
    pub fn algebra(&self) -> &Arc<RootSystem> {
        &self.algebra
    }

    /// The standard cell's theta, a subset of the simple roots.
    pub fn theta(&self) -> &[Root] {
        &self.theta
    }

    /// Reduced word of the translating Weyl element.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Per-root slots in positive-root order.
    pub fn slots(&self) -> &[CellSlot] {
        &self.slots
    }

    /// Number of free parameters.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Type of every structure in the cell.
    pub fn gcs_type(&self) -> usize {
        self.gcs_type
    }

    /// Noncomplex roots with their x-orientations.
    pub fn support(&self) -> Vec<(Root, Sign)> {
        self.algebra
            .positive_roots()
            .iter()
            .zip(&self.slots)
            .filter_map(|(r, s)| match s {
                CellSlot::NonComplex(sign) => Some((r.clone(), *sign)),
                CellSlot::Complex(_) => None,
            })
            .collect()
    }

    /// Deterministic serialization of the per-root slots; equal keys mean
    /// equal cells.
    pub fn canonical_key(&self) -> String {
        self.slots
            .iter()
            .zip(self.algebra.positive_roots())
            .map(|(s, r)| format!("{r}:{}", s.tag()))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Whether a structure's kind and sign pattern lies in this cell.
    /// Membership in the decomposition additionally presumes integrability,
    /// which binds the closure parameters; the pattern alone is tested here.
    pub fn contains(&self, j: &InvariantGcs) -> bool {
        if j.algebra() != &self.algebra {
            return false;
        }
        self.slots
            .iter()
            .zip(j.blocks())
            .all(|(slot, b)| match (slot, b) {
                (CellSlot::NonComplex(Sign::Plus), Block::NonComplex { x, .. }) => x.is_positive(),
                (CellSlot::NonComplex(Sign::Minus), Block::NonComplex { x, .. }) => x.is_negative(),
                (CellSlot::Complex(s), Block::Complex(t)) => s == t,
                _ => false,
            })
    }
}

/// The standard cell of a subset of simple roots.
pub fn standard_cell(algebra: Arc<RootSystem>, theta: &[Root]) -> Result<ThetaCell> {
    let d = algebra.num_positive();
    translated_cell(algebra, &WeylElement::identity(d), theta)
}

/// The translate w . c_Theta.
pub fn translated_cell(
    algebra: Arc<RootSystem>,
    w: &WeylElement,
    theta: &[Root],
) -> Result<ThetaCell> {
    let closure = algebra.theta_closure(theta)?;
    let in_closure: Vec<bool> = {
        let mut v = vec![false; algebra.num_positive()];
        for r in &closure {
            v[algebra.root_index(r).unwrap()] = true;
        }
        v
    };
    let winv = w.inverse();
    let slots: Vec<CellSlot> = (0..algebra.num_positive())
        .map(|i| {
            let (src, negated) = winv.apply_index(i);
            let sign = if negated { Sign::Minus } else { Sign::Plus };
            if in_closure[src] {
                CellSlot::NonComplex(sign)
            } else {
                CellSlot::Complex(sign)
            }
        })
        .collect();
    let mut theta = theta.to_vec();
    theta.sort_by_key(|r| r.sort_key());
    Ok(ThetaCell {
        dim: theta.len(),
        gcs_type: algebra.num_positive() - closure.len(),
        algebra,
        theta,
        word: w.word().to_vec(),
        slots,
    })
}

/// The full decomposition: every (w, Theta) translate, deduplicated by
/// canonical key in discovery order.
#[derive(Clone, Debug)]
pub struct CellDecomposition {
    pub cells: Vec<ThetaCell>,
    /// Number of (w, Theta) pairs enumerated, before deduplication.
    pub raw_count: usize,
}

pub fn enumerate_cells(algebra: Arc<RootSystem>, cap: usize) -> Result<CellDecomposition> {
    let group = algebra.weyl_group_capped(cap)?;
    let rank = algebra.rank();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut cells = Vec::new();
    let mut raw = 0usize;
    for w in &group {
        for mask in 0u64..(1 << rank) {
            let theta: Vec<Root> = (0..rank)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| algebra.simple_roots()[i].clone())
                .collect();
            let cell = translated_cell(algebra.clone(), w, &theta)?;
            raw += 1;
            let key = cell.canonical_key();
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(cells.len());
                cells.push(cell);
            }
        }
    }
    Ok(CellDecomposition {
        cells,
        raw_count: raw,
    })
}

/// A class of standard cells sharing dimension and type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShapeClass {
    pub dim: usize,
    pub gcs_type: usize,
    /// Thetas of the standard cells in the class, in enumeration order.
    pub thetas: Vec<Vec<Root>>,
}

/// Groups the standard cells (identity translate) by (dimension, type).
/// Weyl translation preserves both, so these classes are the shapes cells
/// take in the decomposition.
pub fn shape_classes(algebra: Arc<RootSystem>) -> Result<Vec<ShapeClass>> {
    let rank = algebra.rank();
    let mut by_shape: BTreeMap<(usize, usize), Vec<Vec<Root>>> = BTreeMap::new();
    for mask in 0u64..(1 << rank) {
        let theta: Vec<Root> = (0..rank)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| algebra.simple_roots()[i].clone())
            .collect();
        let cell = standard_cell(algebra.clone(), &theta)?;
        by_shape
            .entry((cell.dim(), cell.gcs_type()))
            .or_default()
            .push(cell.theta().to_vec());
    }
    Ok(by_shape
        .into_iter()
        .map(|((dim, gcs_type), thetas)| ShapeClass {
            dim,
            gcs_type,
            thetas,
        })
        .collect())
}

/// Locates the cell containing a structure: finds the first normalizing
/// element w, reads Theta off the normalized support, and returns the
/// w^{-1} translate. Errors when no element normalizes the structure or when
/// the normalized support is not a theta closure (both only happen for
/// non-integrable structures).
pub fn cell_of_structure(j: &InvariantGcs, cap: usize) -> Result<ThetaCell> {
    let rs = j.algebra().clone();
    let w = first_normalizing_element(j, cap)?;
    let jn = crate::weyl_action::act(&w, j)?;
    let support = jn.noncomplex_support();
    let theta: Vec<Root> = support
        .iter()
        .filter(|r| r.height() == 1)
        .cloned()
        .collect();
    let closure = rs.theta_closure(&theta)?;
    if closure != support {
        return Err(Error::SupportNotThetaClosure {
            support: support.iter().map(|r| r.to_string()).collect(),
        });
    }
    translated_cell(rs, &w.inverse(), &theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrability::build_from_theta;
    use crate::rational::{int, rat};
    use crate::structures::ModuliCoordinate;

    fn system(name: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::parse(name).unwrap())
    }

    #[test]
    fn rank_one_cells_cover_the_doubled_line() {
        // Four cells: the two signed origins and the two open half-lines.
        let rs = system("A1");
        let decomp = enumerate_cells(rs.clone(), 1000).unwrap();
        assert_eq!(decomp.raw_count, 4);
        assert_eq!(decomp.cells.len(), 4);
        let slots: Vec<CellSlot> = decomp.cells.iter().map(|c| c.slots()[0]).collect();
        assert!(slots.contains(&CellSlot::Complex(Sign::Plus)));
        assert!(slots.contains(&CellSlot::Complex(Sign::Minus)));
        assert!(slots.contains(&CellSlot::NonComplex(Sign::Plus)));
        assert!(slots.contains(&CellSlot::NonComplex(Sign::Minus)));

        // Each moduli coordinate lands in exactly one cell.
        for coord in [
            ModuliCoordinate::SignedZero(Sign::Plus),
            ModuliCoordinate::SignedZero(Sign::Minus),
            ModuliCoordinate::Symplectic(rat(7, 2)),
            ModuliCoordinate::Symplectic(rat(-1, 3)),
        ] {
            let block = match &coord {
                ModuliCoordinate::SignedZero(s) => Block::Complex(*s),
                ModuliCoordinate::Symplectic(x) => Block::noncomplex(int(0), x.clone()).unwrap(),
            };
            let j = InvariantGcs::new(rs.clone(), vec![block]).unwrap();
            let homes: Vec<_> = decomp.cells.iter().filter(|c| c.contains(&j)).collect();
            assert_eq!(homes.len(), 1);
        }

        // Quotient by the group: shapes (dim 0, type 1) and (dim 1, type 0).
        let classes = shape_classes(rs).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!((classes[0].dim, classes[0].gcs_type), (0, 1));
        assert_eq!((classes[1].dim, classes[1].gcs_type), (1, 0));
    }

    #[test]
    fn rank_two_decomposition_is_disjoint() {
        let rs = system("A2");
        let decomp = enumerate_cells(rs, 1000).unwrap();
        assert_eq!(decomp.raw_count, 6 * 4);
        assert_eq!(decomp.cells.len(), decomp.raw_count);
    }

    #[test]
    fn distinct_counts_match_raw_counts() {
        for name in ["A1", "A2", "B2", "A3"] {
            let rs = system(name);
            let decomp = enumerate_cells(rs, 100_000).unwrap();
            assert_eq!(decomp.cells.len(), decomp.raw_count, "{name}");
        }
    }

    #[test]
    fn a2_shape_classes() {
        // Theta of sizes 0, 1, 1, 2 give shapes (0,3), (1,2) twice, (2,0).
        let classes = shape_classes(system("A2")).unwrap();
        let shapes: Vec<(usize, usize, usize)> = classes
            .iter()
            .map(|c| (c.dim, c.gcs_type, c.thetas.len()))
            .collect();
        assert_eq!(shapes, vec![(0, 3, 1), (1, 2, 2), (2, 0, 1)]);
    }

    #[test]
    fn standard_cell_shape() {
        let rs = system("A2");
        let theta = vec![rs.simple_roots()[0].clone()];
        let cell = standard_cell(rs.clone(), &theta).unwrap();
        assert_eq!(cell.dim(), 1);
        assert_eq!(cell.gcs_type(), 2);
        let i1 = rs.root_index(&theta[0]).unwrap();
        for (i, slot) in cell.slots().iter().enumerate() {
            if i == i1 {
                assert_eq!(*slot, CellSlot::NonComplex(Sign::Plus));
            } else {
                assert_eq!(*slot, CellSlot::Complex(Sign::Plus));
            }
        }
        assert!(cell.word().is_empty());
        assert_eq!(cell.support(), vec![(theta[0].clone(), Sign::Plus)]);
    }

    #[test]
    fn round_trip_build_then_locate() {
        for name in ["A2", "A3"] {
            let rs = system(name);
            let rank = rs.rank();
            for mask in 0u64..(1 << rank) {
                let theta: Vec<Root> = (0..rank)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| rs.simple_roots()[i].clone())
                    .collect();
                let closure = rs.theta_closure(&theta).unwrap();
                let nsigns = rs.num_positive() - closure.len();
                let j = build_from_theta(
                    rs.clone(),
                    &theta,
                    &vec![int(2); theta.len()],
                    &vec![rat(1, 3); theta.len()],
                    &vec![Sign::Plus; nsigns],
                )
                .unwrap();
                let cell = cell_of_structure(&j, 100_000).unwrap();
                let mut expected = theta.clone();
                expected.sort_by_key(|r| r.sort_key());
                assert_eq!(cell.theta(), &expected[..]);
                assert!(cell.word().is_empty());
                assert!(cell.contains(&j));
                assert_eq!(cell.dim(), theta.len());
                assert_eq!(cell.gcs_type(), j.gcs_type());
            }
        }
    }

    #[test]
    fn locates_translated_structures() {
        // Noncomplex with x>0 at the first positive root, complex(-) at the
        // other two: integrable, and in a nonstandard translate of a
        // one-dimensional standard cell.
        let rs = system("A2");
        let j = InvariantGcs::new(
            rs.clone(),
            vec![
                Block::noncomplex(int(0), int(1)).unwrap(),
                Block::Complex(Sign::Minus),
                Block::Complex(Sign::Minus),
            ],
        )
        .unwrap();
        let cell = cell_of_structure(&j, 1000).unwrap();
        assert!(cell.contains(&j));
        assert_eq!(cell.theta().len(), 1);
        assert!(!cell.word().is_empty());

        // The located cell is one of the enumerated ones.
        let decomp = enumerate_cells(rs, 1000).unwrap();
        assert!(decomp
            .cells
            .iter()
            .any(|c| c.canonical_key() == cell.canonical_key()));
    }

    #[test]
    fn support_must_be_a_closure() {
        // Noncomplex only at the highest root: normalized already, but the
        // support is not a theta closure.
        let rs = system("A2");
        let j = InvariantGcs::new(
            rs,
            vec![
                Block::Complex(Sign::Plus),
                Block::Complex(Sign::Plus),
                Block::noncomplex(int(0), int(1)).unwrap(),
            ],
        )
        .unwrap();
        match cell_of_structure(&j, 1000) {
            Err(Error::SupportNotThetaClosure { support }) => {
                assert_eq!(support, vec!["[1,1]".to_string()]);
            }
            other => panic!("expected support error, got {other:?}"),
        }
    }

    #[test]
    fn membership_respects_cell_boundaries() {
        let rs = system("A2");
        let theta: Vec<Root> = rs.simple_roots().to_vec();
        let cell = standard_cell(rs.clone(), &theta).unwrap();
        let j = build_from_theta(
            rs.clone(),
            &theta,
            &[int(1), int(1)],
            &[int(0), int(0)],
            &[],
        )
        .unwrap();
        assert!(cell.contains(&j));
        // Negating one x leaves the cell.
        let j2 = j.with_block(0, Block::noncomplex(int(0), int(-1)).unwrap());
        assert!(!cell.contains(&j2));
        // A structure over a different algebra is never contained.
        let other = InvariantGcs::all_complex(system("A3"), Sign::Plus);
        assert!(!cell.contains(&other));
    }
}
