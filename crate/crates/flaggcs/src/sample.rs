//! Seeded random generation of blocks, structures, and transforms.
//!
//! Every function takes an explicit `Rng`, so callers control determinism by
//! seeding. Rationals are kept small (numerators and denominators up to 50 in
//! magnitude) to exercise nontrivial denominators while keeping exact
//! arithmetic fast.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::integrability::build_from_theta;
use crate::rational::{rat, Rat};
use crate::roots::{Root, RootSystem};
use crate::structures::{BTransform, Block, InvariantGcs, Sign};
use crate::weyl_action::act;

/// Magnitude bound on random numerators and denominators.
pub const MAX_SCALAR: i64 = 50;

pub fn random_rational<R: Rng>(rng: &mut R) -> Rat {
    rat(
        rng.gen_range(-MAX_SCALAR..=MAX_SCALAR),
        rng.gen_range(1..=MAX_SCALAR),
    )
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> Rat {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_positive_rational<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.gen_range(1..=MAX_SCALAR), rng.gen_range(1..=MAX_SCALAR))
}

pub fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen::<bool>() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn random_block<R: Rng>(rng: &mut R) -> Block {
    if rng.gen::<bool>() {
        Block::complex(random_sign(rng))
    } else {
        Block::noncomplex(random_rational(rng), random_nonzero_rational(rng))
            .expect("x is nonzero by construction")
    }
}

/// Arbitrary blockwise structure; typically not integrable.
pub fn random_structure<R: Rng>(rng: &mut R, rs: &Arc<RootSystem>) -> InvariantGcs {
    let blocks = (0..rs.num_positive()).map(|_| random_block(rng)).collect();
    InvariantGcs::new(rs.clone(), blocks).expect("block count matches")
}

/// Random standard-form integrable structure: a random subset of simple
/// roots with positive parameters inside the closure, plus signs outside.
pub fn random_theta_structure<R: Rng>(rng: &mut R, rs: &Arc<RootSystem>) -> InvariantGcs {
    let theta: Vec<Root> = rs
        .simple_roots()
        .into_iter()
        .filter(|_| rng.gen::<bool>())
        .collect();
    let x: Vec<Rat> = theta
        .iter()
        .map(|_| random_positive_rational(rng))
        .collect();
    let b: Vec<Rat> = theta.iter().map(|_| random_rational(rng)).collect();
    let closure_len = rs.theta_closure(&theta).expect("theta is simple").len();
    let signs = vec![Sign::Plus; rs.num_positive() - closure_len];
    build_from_theta(rs.clone(), &theta, &x, &b, &signs)
        .expect("standard-form structures are integrable")
}

/// Random integrable structure in general position: a standard-form
/// structure pushed by a random additive transform and a random Weyl
/// translate. Both moves preserve integrability but scatter the signs and
/// parameters.
pub fn random_integrable_structure<R: Rng>(
    rng: &mut R,
    rs: &Arc<RootSystem>,
    cap: usize,
) -> InvariantGcs {
    let j = random_theta_structure(rng, rs);
    let b = random_additive_btransform(rng, rs);
    let j = j.b_transform(&b).expect("coefficient count matches");
    let group = rs
        .weyl_group_capped(cap)
        .expect("cap is ample for the caller's rank");
    let w = &group[rng.gen_range(0..group.len())];
    act(w, &j).expect("action preserves block count")
}

/// Unconstrained per-root transform coefficients.
pub fn random_btransform<R: Rng>(rng: &mut R, d: usize) -> BTransform {
    BTransform::new((0..d).map(|_| random_rational(rng)).collect())
}

/// Additive transform: random coefficients on the simple roots, extended
/// linearly.
pub fn random_additive_btransform<R: Rng>(rng: &mut R, rs: &RootSystem) -> BTransform {
    let simple: Vec<Rat> = (0..rs.rank()).map(|_| random_rational(rng)).collect();
    BTransform::from_simple_coeffs(rs, &simple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrability::is_integrable;
    use crate::roots::DEFAULT_WEYL_CAP;
    use num_traits::{Signed, ToPrimitive};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_generation_is_deterministic() {
        let rs = Arc::new(RootSystem::parse("A2").unwrap());
        let a = random_structure(&mut ChaCha8Rng::seed_from_u64(7), &rs);
        let b = random_structure(&mut ChaCha8Rng::seed_from_u64(7), &rs);
        assert_eq!(a.blocks(), b.blocks());
    }

    #[test]
    fn theta_structures_are_integrable() {
        let rs = Arc::new(RootSystem::parse("A3").unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let j = random_theta_structure(&mut rng, &rs);
            assert!(is_integrable(&j));
            assert!(j.is_gacs());
        }
    }

    #[test]
    fn general_position_structures_stay_integrable() {
        let rs = Arc::new(RootSystem::parse("A2").unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut saw_minus_sign = false;
        let mut saw_negative_x = false;
        for _ in 0..60 {
            let j = random_integrable_structure(&mut rng, &rs, DEFAULT_WEYL_CAP);
            assert!(is_integrable(&j));
            for b in j.blocks() {
                match b {
                    Block::Complex(Sign::Minus) => saw_minus_sign = true,
                    Block::NonComplex { x, .. } if x.is_negative() => saw_negative_x = true,
                    _ => {}
                }
            }
        }
        // The Weyl translate reaches outside the standard form.
        assert!(saw_minus_sign);
        assert!(saw_negative_x);
    }

    #[test]
    fn random_scalars_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let r = random_rational(&mut rng);
            // Reduction only shrinks magnitudes, so the raw bounds survive.
            let n = r.numer().to_i64().unwrap();
            let d = r.denom().to_i64().unwrap();
            assert!(n.abs() <= MAX_SCALAR);
            assert!((1..=MAX_SCALAR).contains(&d));
            assert!(!random_nonzero_rational(&mut rng).is_zero());
            assert!(random_positive_rational(&mut rng).is_positive());
        }
    }

    #[test]
    fn additive_transforms_satisfy_the_triple_law() {
        let rs = Arc::new(RootSystem::parse("A3").unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let b = random_additive_btransform(&mut rng, &rs);
            assert!(b.is_additive(&rs));
        }
    }
}
