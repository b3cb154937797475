//! Exact linear algebra over Euclidean rings.

mod group;
mod matrix;
mod smith;
mod solve;

pub use group::{halve, span_over_f2, AbelianGroup, Cokernel, GroupElement, GroupHom};
pub use matrix::Matrix;
pub use smith::{smith_normal_form, SmithDecomposition};
pub use solve::{rank_f2, solve, solve_f2, solve_with_smith, Insoluble};
