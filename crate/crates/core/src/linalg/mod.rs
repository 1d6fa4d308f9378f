//! Exact integer linear algebra: dense matrices, Smith normal form,
//! cokernels as finitely generated abelian groups, determinantal divisors
//! and lattice saturation.
//!
//! Everything is generic over [`IntScalar`]; the crate root fixes the
//! scalar to `BigInt` for the domain code.

mod group;
mod lattice;
mod matrix;
mod scalar;
mod smith;

pub use group::{canonical_group, cokernel, AbelianGroup, Cokernel, ParseGroupError};
pub use lattice::{determinantal_divisor, is_saturated_sublattice, is_sublattice, matrix_a, matrix_b};
pub use matrix::Matrix;
pub use scalar::{gcd_all, lcm_all, IntScalar};
pub use smith::{rank, smith_invariants, SmithData};
