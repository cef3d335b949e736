use serde::{Deserialize, Serialize};

use crate::json::ComplexRecord;

/// Solver output: `{value, route, tol, seed, witness_coeffs?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResult {
    pub value: f64,
    pub route: String,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_coeffs: Option<Vec<ComplexRecord>>,
}

impl SolverResult {
    pub fn new(value: f64, route: &str) -> Self {
        Self { value, route: route.into(), tol: None, seed: None, witness_coeffs: None }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = Some(tol);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_witness(mut self, coeffs: Vec<ComplexRecord>) -> Self {
        self.witness_coeffs = Some(coeffs);
        self
    }
}
