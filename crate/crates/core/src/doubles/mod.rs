//! Finite models of the classical doubles `D₂ = g((u⁻¹))`,
//! `D₃ = g((u⁻¹)) ⊕ g` and `D₄ = g((u⁻¹)) ⊕ g[ε]`.
//!
//! The loop part is cut to a window of `u`-exponents. Elements become
//! coordinate rows over an ambient basis and subspaces are spans of rows,
//! so every Lagrangian, complement and transversality statement reduces to
//! exact rank computations.

mod d4;
mod model;
mod triples;
mod wk;

pub use d4::{
    d4_bracket, dual_basis_check, dual_sum_projection, dual_sum_projection_against, embed_i,
    q4_form, D3Element, D4Element, TruncatedTensor2,
};
pub use model::{Case, Model, ModelSubspace, SubalgebraReport, Window};
pub use triples::{
    case2_model, case2_p, case2_pstar, case3_model, case3_p, case3_pstar, case4_model, case4_p,
    case4_pstar, check_transversality, TransversalityReport,
};
pub use wk::{
    build_wk, orth_complement_truncated, quotient_image_of_p, wk_loop_part, DualNumberSubspace,
};
