//! Exact arithmetic on finitely generated abelian groups.
//!
//! Relation matrices follow one convention throughout the crate: rows are
//! relations, columns are generators, so a matrix `A` with `c` columns
//! presents the group `Z^c / rowspace(A)`. Homomorphisms `Z^a -> Z^b` are
//! stored as `a × b` matrices acting on row vectors (`x ↦ x·M`), which makes
//! the image of a map directly usable as a relation matrix.

mod group;
pub mod json_int;
mod matrix;
pub(crate) mod scalar;
mod smith;
pub mod sparse;

pub use group::{FgAbelianGroup, GroupOrder};
pub use matrix::IntegerMatrix;
pub use smith::{
    cokernel, invariant_factors, left_kernel, rank, smith_normal_form, solve_left, solve_left_rows, SmithForm,
};
