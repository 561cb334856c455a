//! Bakry-Emery curvature of signed graphs.

pub mod closed_form;
pub mod operators;
pub mod pipeline;
pub mod signature;

pub use closed_form::{closed_form_minus, closed_form_plus, determined_curvature_plus, ClosedFormInputs};
pub use operators::{connection_laplacian_apply, gamma, gamma2, gamma2_pair, gamma_pair};
pub use pipeline::{
    curvature_matrix, gamma2_form, k_be, k_be_sweep, q_matrix_formula, q_matrix_schur, soundness_check, star_gauge,
    CurvaturePipelineTrace, Exact, Gamma2Form, QMatrix,
};
pub use signature::{balancing_switch, is_antibalanced, is_balanced, switch, Signature, SwitchingFunction};
