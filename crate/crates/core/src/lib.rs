//! Divisor class groups, Cox-ring data and Du Val correspondences of
//! trinomial varieties, computed exactly from exponent data.
//!
//! Every class group is available two ways: from the closed formulas in
//! [`classgroup::class_group_formula`] and as the Smith-form cokernel of
//! the grading matrix in [`classgroup::class_group_snf`]. The two are
//! independent routes and are cross-checked throughout the test suites.
//!
//! ```
//! use tricl_core::classgroup::{class_group, Method};
//! use tricl_core::TrinomialVariety;
//!
//! let v = TrinomialVariety::from_blocks(vec![vec![2, 4], vec![2], vec![2, 6]], 0).unwrap();
//! let report = class_group(&v.adjust().variety, Method::Both).unwrap();
//! assert_eq!(report.group.to_string(), "Z/2 x Z^2");
//! assert_eq!(report.agreement, Some(true));
//! ```

pub mod classgroup;
pub mod coxring;
pub mod error;
pub mod linalg;
pub mod type1;
pub mod variety;

pub use error::{Error, Result};

/// Unbounded integer used for all matrix entries and group invariants.
pub type Int = num_bigint::BigInt;
pub type IntMatrix = linalg::Matrix<Int>;
pub type FgAbelianGroup = linalg::AbelianGroup<Int>;
pub type SmithData = linalg::SmithData<Int>;

pub use classgroup::{ClassGroup, ClassGroupReport, Method};
pub use coxring::{CoxConstruction, DuValLabel, IterationChain, PlatonicTriple};
pub use type1::Type1Variety;
pub use variety::{Coefficient, RationalityClass, TrinomialVariety};
