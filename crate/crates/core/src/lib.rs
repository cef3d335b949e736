//! Two-sided bounds for constrained `H^∞` interpolation on the unit disc.
//!
//! The numeric core is generic over the scalar type (`f32` or `f64`) through
//! [`scalar::Real`]; the aliases below fix the common instantiations.

pub mod analytic;
pub mod blaschke;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod json;
pub mod linalg;
pub mod model_space;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};

pub type TaylorSeries64 = analytic::TaylorSeries<f64>;
pub type TaylorSeries32 = analytic::TaylorSeries<f32>;
pub type SpaceSpec64 = analytic::SpaceSpec<f64>;
pub type SpaceSpec32 = analytic::SpaceSpec<f32>;
pub type NodeSet64 = blaschke::NodeSet<f64>;
pub type NodeSet32 = blaschke::NodeSet<f32>;
pub type BlaschkeProduct64 = blaschke::BlaschkeProduct<f64>;
pub type BlaschkeProduct32 = blaschke::BlaschkeProduct<f32>;
pub type MalmquistBasis64 = model_space::MalmquistBasis<f64>;
pub type MalmquistBasis32 = model_space::MalmquistBasis<f32>;
pub type KernelSpec64 = model_space::KernelSpec<f64>;
pub type KernelSpec32 = model_space::KernelSpec<f32>;
