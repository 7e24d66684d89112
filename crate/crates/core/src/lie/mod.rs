//! Finite-dimensional data for `sl(n)`: basis, structure constants,
//! Killing form, Casimir tensors, distinguished subalgebras and the
//! normalisation choices that the r-matrix catalog depends on.

mod calibrate;
mod casimir;
mod element;
mod subalgebra;
mod table;

pub use calibrate::{
    calibrate_casimir, dj_rmatrix, report as calibration_report, Calibration, CandidateResidual,
    DjOrientation, DjRMatrix, Pairing, CANDIDATE_SCALES,
};
pub use casimir::{casimir, CasimirSpec};
pub use element::{bracket, bracket_poly, GElement, GPoly};
pub use subalgebra::{
    borel_minus, borel_plus, cartan, orthogonal_complement_g, parabolic, GSubspace,
};
pub use table::{make_sl, BasisLabel, LieTable, Matrix};
