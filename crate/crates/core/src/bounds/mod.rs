//! Closed-form upper bounds, the constants feeding them, and the lower-bound
//! witness pipeline for one-point node sets.

mod bernstein;
mod constants;
mod report;
mod upper;
mod witness;

pub use bernstein::{bernstein_trials, random_nodes, BernsteinTrials};
pub use constants::{
    bernstein_alpha, bernstein_cap, eval_functional_norm, theorem_a_c1_factor, BernsteinConstant, C1Factor,
    C1_LIMIT_BELOW,
};
pub use report::{check_ordering, reports_to_csv, BoundReport, OrderingViolation, Side, CSV_HEADER};
pub use upper::{ub_bprime, ub_cnr, ub_cnr_is_heuristic, ub_energy, ub_poisson, ub_simple};
pub use witness::{
    fejer_lower_estimate, lb_closed, lower_witness, outer_power_witness, partial_sum_check,
    partial_sum_check_exact, psi1_coeffs_exact, witness_big_psi, witness_norm_sqr_exact, witness_psi, ExactPartialSum, LowerWitness,
    PartialSum, WitnessPower,
};
