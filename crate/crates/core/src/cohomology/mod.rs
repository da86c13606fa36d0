//! Group cohomology of the distribution: Hom complexes against the
//! periodic resolution, closed-form tables, cup products, lifting.

pub mod cup;
pub mod homcomplex;
pub mod lemma;
pub mod lift;
pub mod verify;
pub mod zmod;

pub use cup::{
    classes_equal, cup_closed_form, cup_on_distribution_cochain, cup_via_diagonal, is_cocycle,
    module_structure_coefficients, CupValue, ModuleStructureCheck, UCochain,
};
pub use homcomplex::{
    build_k, class_count, hom_p_u, k_image, k_matrix, k_symbols_at, GradedComplex, KDiff, KSymbol,
    USymbol,
};
pub use lemma::{lemma_complex_check, LemmaReport};
pub use lift::{
    evaluation_structure, explicit_prime_cocycle, lift_cocycle, verify_module_structure,
    CocycleClass, EvaluationStructure, LiftedCocycle,
};
pub use verify::{
    restriction_kernel, restriction_kernel_prediction, theorem_a_prediction, verify_mod_m_counts,
    verify_quasi_iso, verify_slice_degeneration, verify_theorem_a,
};
pub use zmod::{cohomology_z_closed_form, cohomology_z_snf};
