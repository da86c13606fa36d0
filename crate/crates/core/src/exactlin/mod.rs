//! Exact linear algebra over the integers and over `Z/M` for composite `M`.
//!
//! Everything reduces to Smith normal form with tracked transformation
//! matrices; mod-`M` questions are answered through the integer lift
//! `[A | M*I]` so that composite moduli require no special casing.

mod homology;
mod matrix;
mod smith;

pub use homology::{
    complete_unimodular, homology_at, homology_at_mod, image_basis, kernel_basis, kernel_basis_mod,
    quotient_group, rank, solve, solve_many, solve_mod, CohomologyGroup,
};
pub use matrix::ExactMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
