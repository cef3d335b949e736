//! Quotient norms `‖f‖_{H^∞/B H^∞}` by three routes (Pick matrix, Toeplitz
//! compression, compressed multiplication on `K_B`) and multi-start
//! estimators for the interpolation constant and the Carleson constant.

mod compression;
mod estimate;
mod pick;
mod result;

pub use compression::{compression_matrix, quotient_norm, quotient_norm_in, CompressionMatrix};
pub use estimate::{
    c_sigma_estimate, carleson_estimate, CSigmaEstimate, CarlesonEstimate, CARLESON_STARTS, ESTIMATE_STARTS,
};
pub use pick::{cs_value, interpolation_coords, np_value, pick_matrix, PickProblem};
pub use result::SolverResult;
