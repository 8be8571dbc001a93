//! Finite bicrossed-product quantum groups built from a matched pair of
//! finite groups: irreducible representations, fusion rules, induction,
//! length functions and rapid-decay checks.

pub mod algebra;
pub mod bicrossed;
pub mod cache;
pub mod corpus;
pub mod dual;
pub mod error;
pub mod fusion;
pub mod group;
pub mod io;
pub mod length;
pub mod linalg;
pub mod matched_pair;
pub mod rep;



pub use algebra::{Algebra, AlgebraElement, Tensor};
pub use bicrossed::{Bicrossed, BicrossedRep, ClassId, IrrClass};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use matched_pair::{MatchedPair, OrbitData};
pub use rep::{Character, IrrepTable, UnitaryRep};

use serde::{Deserialize, Serialize};

/// Groups larger than this are rejected by the irrep solver unless the caller
/// raises the cap.
pub const DEFAULT_ORDER_CAP: usize = 200;

/// Fresh random draws attempted before a reducible block is declared unsplittable.
pub const SPLIT_RETRIES: usize = 8;

/// Numerical tolerances shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// residuals of algebraic identities
    pub alg: f64,
    /// distance to the nearest integer when rounding dimensions
    pub int: f64,
    /// eigenvalue gap separating clusters in the irrep splitter
    pub split: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            alg: 1e-9,
            int: 1e-6,
            split: 1e-7,
        }
    }
}
