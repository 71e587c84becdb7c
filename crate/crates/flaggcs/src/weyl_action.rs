//! Weyl group action on invariant structures.
//!
//! An element w acts on a structure J by pulling blocks back along w: the
//! block of w.J at a positive root alpha is the block of J at w^{-1}(alpha)
//! when that root is positive, and the root-negated block of J at
//! -w^{-1}(alpha) otherwise (complex blocks flip sign, noncomplex blocks
//! negate x). The action is a group action preserving the defining
//! identities, integrability, and type.

use crate::error::{Error, Result};
use crate::roots::WeylElement;
use crate::structures::{Block, InvariantGcs};

/// Applies a Weyl element to a structure.
pub fn act(w: &WeylElement, j: &InvariantGcs) -> Result<InvariantGcs> {
    let rs = j.algebra();
    let winv = w.inverse();
    let blocks = (0..rs.num_positive())
        .map(|i| {
            let (src, negated) = winv.apply_index(i);
            let b = j.block(src).clone();
            if negated {
                b.negate_root()
            } else {
                b
            }
        })
        .collect();
    InvariantGcs::new(rs.clone(), blocks)
}

/// Orbit of a structure under the whole Weyl group, deduplicated and in a
/// deterministic order (breadth-first discovery order over reduced words).
pub fn orbit(j: &InvariantGcs, cap: usize) -> Result<Vec<(WeylElement, InvariantGcs)>> {
    let rs = j.algebra().clone();
    let group = rs.weyl_group_capped(cap)?;
    let mut seen: Vec<InvariantGcs> = Vec::new();
    let mut out = Vec::new();
    for w in group {
        let image = act(&w, j)?;
        if !seen.contains(&image) {
            seen.push(image.clone());
            out.push((w, image));
        }
    }
    Ok(out)
}

/// Stabilizer of a structure: the Weyl elements fixing it.
pub fn stabilizer(j: &InvariantGcs, cap: usize) -> Result<Vec<WeylElement>> {
    let rs = j.algebra().clone();
    let group = rs.weyl_group_capped(cap)?;
    let mut out = Vec::new();
    for w in group {
        if act(&w, j)? == *j {
            out.push(w);
        }
    }
    Ok(out)
}

/// The first group element (breadth-first order) whose action sends the
/// structure to one with all noncomplex parameters positive and all complex
/// signs positive; integrable structures always have one.
pub fn first_normalizing_element(j: &InvariantGcs, cap: usize) -> Result<WeylElement> {
    let rs = j.algebra().clone();
    let group = rs.weyl_group_capped(cap)?;
    for w in group {
        if is_normalized(&act(&w, j)?) {
            return Ok(w);
        }
    }
    Err(Error::NoNormalizingElement)
}

/// All complex signs positive and all noncomplex x positive.
pub fn is_normalized(j: &InvariantGcs) -> bool {
    use num_traits::Signed;
    j.blocks().iter().all(|b| match b {
        Block::Complex(s) => *s == crate::structures::Sign::Plus,
        Block::NonComplex { x, .. } => x.is_positive(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrability::{build_from_theta, is_integrable};
    use crate::rational::{int, rat};
    use crate::roots::{Root, RootSystem};
    use crate::structures::Sign;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn a2() -> Arc<RootSystem> {
        Arc::new(RootSystem::parse("A2").unwrap())
    }

    fn nc(a: i64, x: i64) -> Block {
        Block::noncomplex(int(a), int(x)).unwrap()
    }

    #[test]
    fn simple_reflection_action_on_a2() {
        // The reflection s in the first basis root [1,0] negates [1,0] and
        // swaps [0,1] <-> [1,1]. Blocks pull back along s^{-1} = s.
        let rs = a2();
        let s = rs.simple_reflection_element(0);
        let r01 = Root::new(vec![0, 1]);
        let r10 = Root::new(vec![1, 0]);
        let r11 = Root::new(vec![1, 1]);
        let mut blocks = vec![Block::Complex(Sign::Plus); 3];
        blocks[rs.root_index(&r01).unwrap()] = nc(1, 2);
        blocks[rs.root_index(&r10).unwrap()] = Block::Complex(Sign::Plus);
        blocks[rs.root_index(&r11).unwrap()] = Block::Complex(Sign::Minus);
        let j = InvariantGcs::new(rs.clone(), blocks).unwrap();
        let out = act(&s, &j).unwrap();
        // At [0,1]: s^{-1}([0,1]) = [1,1], whose block is complex(-).
        assert_eq!(out.block_at(&r01).unwrap(), &Block::Complex(Sign::Minus));
        // At [1,0]: s^{-1}([1,0]) = -[1,0], so complex(+) flips to complex(-).
        assert_eq!(out.block_at(&r10).unwrap(), &Block::Complex(Sign::Minus));
        // At [1,1]: s^{-1}([1,1]) = [0,1], carrying the noncomplex block.
        assert_eq!(out.block_at(&r11).unwrap(), &nc(1, 2));
    }

    #[test]
    fn orbit_of_all_complex_structure() {
        // The all-plus complex structure on A2 has orbit size 6 / |stab|;
        // the stabilizer is trivial because every nonidentity element sends
        // some positive root to a negative one, flipping that sign.
        let rs = a2();
        let j = InvariantGcs::all_complex(rs, Sign::Plus);
        let orb = orbit(&j, 1000).unwrap();
        assert_eq!(orb.len(), 6);
        assert!(orb[0].0.is_identity());
        assert_eq!(orb[0].1, j);
        assert_eq!(stabilizer(&j, 1000).unwrap().len(), 1);
    }

    #[test]
    fn normalization_finds_identity_for_normalized() {
        let rs = a2();
        let j = InvariantGcs::all_complex(rs, Sign::Plus);
        assert!(is_normalized(&j));
        assert!(first_normalizing_element(&j, 1000).unwrap().is_identity());
    }

    #[test]
    fn normalization_of_flipped_structure() {
        let rs = a2();
        // (noncomplex at alpha1 with x > 0, complex(-), complex(-)) is the
        // image of a normalized structure under a nonidentity element.
        let j = InvariantGcs::new(
            rs.clone(),
            vec![
                nc(0, 1),
                Block::Complex(Sign::Minus),
                Block::Complex(Sign::Minus),
            ],
        )
        .unwrap();
        assert!(is_integrable(&j));
        assert!(!is_normalized(&j));
        let w = first_normalizing_element(&j, 1000).unwrap();
        let jn = act(&w, &j).unwrap();
        assert!(is_normalized(&jn));
        assert!(!w.is_identity());
    }

    fn random_integrable() -> impl Strategy<Value = InvariantGcs> {
        // A standard-form structure (plus signs off the closure, so every
        // mixed triple is admissible) pushed around by a group element for
        // sign and orientation variety.
        (0u8..4, 1i64..=5, 1i64..=5, -5i64..=5, -5i64..=5, 0usize..6).prop_map(
            |(mask, x1, x2, b1, b2, widx)| {
                let rs = a2();
                let theta: Vec<Root> = (0..2)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| rs.simple_roots()[i].clone())
                    .collect();
                let xs = [int(x1), int(x2)];
                let bs = [rat(b1, 3), rat(b2, 2)];
                let closure = rs.theta_closure(&theta).unwrap().len();
                let signs = vec![Sign::Plus; rs.num_positive() - closure];
                let j = build_from_theta(
                    rs.clone(),
                    &theta,
                    &xs[..theta.len()],
                    &bs[..theta.len()],
                    &signs,
                )
                .unwrap();
                let group = rs.weyl_group().unwrap();
                act(&group[widx % group.len()], &j).unwrap()
            },
        )
    }

    proptest! {
        /// Group action law (w1 w2).J = w1.(w2.J), identities preserved.
        #[test]
        fn action_is_a_group_action(j in random_integrable(), pick in 0usize..36) {
            let rs = j.algebra().clone();
            let group = rs.weyl_group().unwrap();
            let w1 = &group[pick % group.len()];
            let w2 = &group[(pick / group.len()) % group.len()];
            let lhs = act(&w1.compose(w2), &j).unwrap();
            let rhs = act(w1, &act(w2, &j).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert!(lhs.is_gacs());
            prop_assert_eq!(lhs.gcs_type(), j.gcs_type());
            prop_assert!(is_integrable(&lhs));
            // Inverse undoes the action.
            prop_assert_eq!(act(&w1.inverse(), &act(w1, &j).unwrap()).unwrap(), j);
        }

        /// Every integrable structure built from theta data normalizes, and
        /// orbits are closed under the group with consistent sizes.
        #[test]
        fn integrable_structures_normalize(j in random_integrable()) {
            let w = first_normalizing_element(&j, 1000).unwrap();
            prop_assert!(is_normalized(&act(&w, &j).unwrap()));
            let orb = orbit(&j, 1000).unwrap();
            let stab = stabilizer(&j, 1000).unwrap();
            prop_assert_eq!(orb.len() * stab.len(), 6);
        }
    }
}
