//! Exact invariant generalized complex geometry on maximal flag manifolds.
//!
//! An invariant generalized almost complex structure on a maximal flag
//! manifold decomposes into independent 4x4 blocks, one per positive root of
//! the underlying root system. Each block is either complex (a sign) or
//! noncomplex (two rational parameters), and integrability reduces to a
//! finite check over the additive triples of positive roots. Everything here
//! is computed in exact rational arithmetic: construction and verification
//! of structures, B-field transforms and moduli normal forms, the Weyl group
//! action, pure spinor lines, generalized Kahler pairs, and the cell
//! decomposition of the moduli space.
//!
//! The [`oracle`] module is the one deliberate exception to exactness: it
//! rebuilds A-family structures from explicit special unitary matrices and
//! measures the integrability obstruction in floating point, giving an
//! independent check of the symbolic verdicts.
//!
//! # Quick start
//!
//! ```
//! use flaggcs::prelude::*;
//! use std::sync::Arc;
//!
//! let rs = Arc::new(RootSystem::parse("A2")?);
//! // Noncomplex on the closure of both simple roots, harmonic parameters.
//! let j = build_from_theta(
//!     rs.clone(),
//!     &rs.simple_roots(),
//!     &[int(2), int(2)],
//!     &[int(0), int(0)],
//!     &[],
//! )?;
//! assert!(j.is_gacs());
//! assert!(is_integrable(&j));
//! // Type counts complex blocks; this structure is noncomplex everywhere.
//! assert_eq!(j.gcs_type(), 0);
//! assert_eq!(j.normal_form().coords.len(), rs.num_positive());
//! # Ok::<(), flaggcs::Error>(())
//! ```

// Index loops mirror the j, k subscripts of the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod cells;
pub mod error;
pub mod integrability;
pub mod json;
pub mod kahler;
pub mod matrix;
pub mod oracle;
pub mod rational;
pub mod roots;
pub mod sample;
pub mod spinors;
pub mod structures;
pub mod weyl_action;

pub use error::{Error, Result};

/// The crate's working vocabulary in one import.
pub mod prelude {
    pub use crate::cells::{
        cell_of_structure, enumerate_cells, shape_classes, standard_cell, translated_cell,
        CellDecomposition, CellSlot, ShapeClass, ThetaCell,
    };
    pub use crate::error::{Error, Result};
    pub use crate::integrability::{
        admissible_patterns, build_from_theta, integrability_report, is_integrable,
        require_integrable, IntegrabilityReport, SlotKind, TripleVerdict, VerdictReason,
    };
    pub use crate::kahler::{
        blocks_commute, classification, global_sides, is_almost_kahler, is_kahler_pair,
        kahler_moduli, metric_moduli, metric_operator, require_almost_kahler, GlobalSides,
        KahlerPair, MetricOperator, PairRow,
    };
    pub use crate::matrix::Mat;
    pub use crate::oracle::{
        max_nijenhuis, numeric_integrability, triple_reports, SlnRealization, CONSTRUCTION_TOL,
        NIJENHUIS_TOL,
    };
    pub use crate::rational::{format_rat, int, parse_rat, rat, CRat, Rat};
    pub use crate::roots::{Root, RootSystem, WeylElement, DEFAULT_WEYL_CAP};
    pub use crate::spinors::{
        annihilates, annihilator_dimension, b_transform_factor, clifford_act, spinor_of, Spinor,
    };
    pub use crate::structures::{
        moduli_equal, BTransform, Block, InvariantGcs, ModuliCoordinate, NormalForm, Sign,
    };
    pub use crate::weyl_action::{
        act, first_normalizing_element, is_normalized, orbit, stabilizer,
    };
}
