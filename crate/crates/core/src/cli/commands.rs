use std::path::Path;

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::args::{Command, Format, Output};
use super::{emit, read_file, CliError};
use crate::analytic::{SpaceSpec, TaylorSeries};
use crate::blaschke::{BlaschkeProduct, NodeSet};
use crate::bounds::{
    bernstein_alpha, bernstein_trials, check_ordering, eval_functional_norm, lb_closed, lower_witness,
    reports_to_csv, theorem_a_c1_factor, ub_bprime, ub_cnr, ub_cnr_is_heuristic, ub_energy, ub_poisson, ub_simple,
    BoundReport, OrderingViolation, Side, WitnessPower,
};
use crate::error::{Error, Result};
use crate::json::{complex_list_records, parse_complex_list};
use crate::model_space::{theorem_b_upper_bound, KernelSpec};
use crate::solvers::{c_sigma_estimate, carleson_estimate, cs_value, np_value, quotient_norm, PickProblem, SolverResult};

type C64 = Complex<f64>;

/// Slack used by every ordering assertion made before emission.
const ORDER_SLACK: f64 = 1e-6;

pub(super) fn execute(cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::Bounds { sigma, space, output } => {
            let sigma = load_sigma(sigma)?;
            let space = SpaceSpec::parse(space)?;
            let reports = bounds_reports(&sigma, &space)?;
            ordered(&reports)?;
            write_reports(&reports, output)
        }
        Command::Sandwich { n, r, space, power, budget, seed, output } => {
            let space = SpaceSpec::parse(space)?;
            let reports = sandwich_reports(&space, *n, *r, *power, *budget, *seed)?;
            write_reports(&reports, output)
        }
        Command::Np { sigma, values, tol, output } => {
            if !(*tol > 0.0) {
                return Err(Error::input("tol must be positive").into());
            }
            let sigma = load_sigma(sigma)?;
            if sigma.nodes().iter().any(|nd| nd.mult > 1) {
                return Err(Error::input("the Pick route needs distinct nodes").into());
            }
            let values: Vec<C64> = parse_complex_list(&read_file(values)?)?;
            let prob = PickProblem::new(sigma.flat(), values)?;
            let value = np_value(&prob, *tol)?;
            write_solver(&SolverResult::new(value, "pick").with_tol(*tol), output)
        }
        Command::Cs { coeffs, output } => {
            let w: Vec<C64> = parse_complex_list(&read_file(coeffs)?)?;
            write_solver(&SolverResult::new(cs_value(&w)?, "schur"), output)
        }
        Command::Quotient { sigma, f, output } => {
            let sigma = load_sigma(sigma)?;
            let coeffs: Vec<C64> = parse_complex_list(&read_file(f)?)?;
            if coeffs.is_empty() {
                return Err(Error::input("f needs at least one coefficient").into());
            }
            let value = quotient_norm(&TaylorSeries::polynomial(coeffs), &sigma)?;
            write_solver(&SolverResult::new(value, "compression"), output)
        }
        Command::Bernstein { n, r, trials, seed, output } => {
            let t = bernstein_trials(*n, *r, *trials, *seed)?;
            let space = SpaceSpec::<f64>::h2().to_string();
            let mut reports = vec![
                BoundReport::new("bernstein_empirical", Side::Lower, &space, *n, *r, t.max_ratio).with_grid(*trials),
                BoundReport::new("bernstein_sup", Side::Lower, &space, *n, *r, t.max_sup).with_grid(*trials),
                BoundReport::new("bernstein_alpha", Side::Upper, &space, *n, *r, t.alpha),
                BoundReport::new("bernstein_cap", Side::Upper, &space, *n, *r, t.cap),
            ];
            if bernstein_alpha(*n, *r)?.capped {
                reports[2].note = Some("capped".into());
            }
            ordered(&reports)?;
            write_reports(&reports, output)
        }
        Command::Carleson { sigma, budget, seed, output } => {
            let sigma = load_sigma(sigma)?;
            let est = carleson_estimate(&sigma, *budget, *seed)?;
            let res = SolverResult::new(est.value, "carleson")
                .with_seed(*seed)
                .with_witness(complex_list_records(&est.data));
            write_solver(&res, output)
        }
        Command::Table { nmax, rgrid, space, seed: _, output } => {
            let space = SpaceSpec::parse(space)?;
            let radii = parse_grid(rgrid)?;
            if *nmax == 0 {
                return Err(Error::input("nmax must be at least 1").into());
            }
            let ns: Vec<usize> = std::iter::successors(Some(1usize), |k| k.checked_mul(2)).take_while(|k| k <= nmax).collect();
            let cells: Vec<(usize, f64)> = ns.iter().flat_map(|&n| radii.iter().map(move |&r| (n, r))).collect();
            let rows: Vec<Vec<BoundReport>> =
                cells.par_iter().map(|&(n, r)| table_cell(&space, n, r)).collect::<Result<_>>()?;
            let reports: Vec<BoundReport> = rows.into_iter().flatten().collect();
            ordered(&reports)?;
            write_reports(&reports, output)
        }
    }
}

fn load_sigma(path: &Path) -> Result<NodeSet<f64>, CliError> {
    Ok(NodeSet::from_json(&read_file(path)?)?)
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let radii = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::input(format!("bad radius {t:?} in grid"))))
        .collect::<Result<Vec<f64>>>()?;
    if let Some(r) = radii.iter().find(|r| !(**r >= 0.0 && **r < 1.0)) {
        return Err(Error::input(format!("radius {r} outside [0, 1)")));
    }
    Ok(radii)
}

fn ordered(reports: &[BoundReport]) -> Result<(), CliError> {
    check_ordering(reports, ORDER_SLACK).map_err(CliError::Ordering)
}

fn write_reports(reports: &[BoundReport], output: &Output) -> Result<(), CliError> {
    let text = match output.format.unwrap_or(Format::Csv) {
        Format::Csv => reports_to_csv(reports),
        Format::Json => to_json(reports)?,
    };
    emit(&text, output.out.as_deref())
}

fn write_solver(res: &SolverResult, output: &Output) -> Result<(), CliError> {
    let text = match output.format.unwrap_or(Format::Json) {
        Format::Json => to_json(res)?,
        Format::Csv => {
            let tol = res.tol.map(|t| format!("{t:.16e}")).unwrap_or_default();
            let seed = res.seed.map(|s| s.to_string()).unwrap_or_default();
            format!("value,route,tol,seed\n{:.16e},{},{tol},{seed}\n", res.value, res.route)
        }
    };
    emit(&text, output.out.as_deref())
}

fn to_json<S: serde::Serialize + ?Sized>(v: &S) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn ub_cnr_report(space: &SpaceSpec<f64>, n: usize, r: f64) -> Result<BoundReport> {
    let rep = BoundReport::new("ub_cnr", Side::Upper, &space.to_string(), n, r, ub_cnr(space, n, r)?);
    Ok(if ub_cnr_is_heuristic(space) { rep.with_note("heuristic constant") } else { rep })
}

/// All closed-form and grid bounds available for `sigma` in `space`.
pub(crate) fn bounds_reports(sigma: &NodeSet<f64>, space: &SpaceSpec<f64>) -> Result<Vec<BoundReport>> {
    let (n, r) = (sigma.n(), sigma.r());
    let h2 = SpaceSpec::<f64>::h2().to_string();
    let label = space.to_string();
    let b = BlaschkeProduct::new(sigma.clone());
    let mut out = vec![
        BoundReport::new("ub_energy", Side::Upper, &h2, n, r, ub_energy(&b)?),
        BoundReport::new("ub_bprime", Side::Upper, &h2, n, r, ub_bprime(&b)?),
        BoundReport::new("ub_poisson", Side::Upper, &h2, n, r, ub_poisson(sigma)?),
        BoundReport::new("ub_simple", Side::Upper, &h2, n, r, ub_simple(sigma)),
        ub_cnr_report(space, n, r)?,
    ];
    let bern = bernstein_alpha(n, r)?;
    let rep = BoundReport::new("bernstein_alpha", Side::Aux, &h2, n, r, bern.value);
    out.push(if bern.capped { rep.with_note("capped") } else { rep });
    let c1 = theorem_a_c1_factor(n, r)?;
    let rep = BoundReport::new("c1_factor", Side::Aux, &h2, n, r, c1.value);
    out.push(if c1.limit_form { rep.with_note("limit form") } else { rep });
    if let Some(spec) = KernelSpec::for_space(space) {
        let eval = sigma
            .nodes()
            .iter()
            .map(|nd| eval_functional_norm(space, nd.lambda.norm()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        out.push(BoundReport::new("eval_functional_norm", Side::Lower, &label, n, r, eval));
        let grid = crate::analytic::boundary_ladder::<f64>().len() * crate::analytic::DISC_ANGLES;
        let tb = theorem_b_upper_bound(sigma, &spec)?;
        out.push(BoundReport::new("kernel_projection_sup", Side::Upper, &label, n, r, tb).with_grid(grid));
        let t = 1.0 - (1.0 - r) / n as f64;
        let env = eval_functional_norm(space, t)?;
        out.push(BoundReport::new("conjecture_scale", Side::Aux, &label, n, r, env).with_note("display only"));
    }
    Ok(out)
}

/// The witness value for `{-r}^n` in `space`, or `None` when the space has
/// no lower-bound construction.
fn witness_report(space: &SpaceSpec<f64>, n: usize, r: f64, power: Option<u32>) -> Result<Option<BoundReport>> {
    let label = space.to_string();
    let zeros = NodeSet::repeated(C64::zero(), n)?;
    if space.is_hinf() {
        let one = TaylorSeries::constant(C64::one());
        let q = quotient_norm(&one, &NodeSet::repeated(C64::new(-r, 0.0), n)?)?;
        return Ok(Some(BoundReport::new("witness_quotient", Side::Lower, &label, n, r, q)));
    }
    if let Some(alpha) = space.hilbert_alpha() {
        let power = match power {
            Some(k) => WitnessPower::from_int(k)?,
            None if alpha <= -0.5 => WitnessPower::Two,
            None => WitnessPower::One,
        };
        if power == WitnessPower::Two && alpha > -0.5 {
            return Err(Error::input(format!("N = 2 witness is not in the unit ball of {space}")));
        }
        let w = lower_witness(n, r, power)?;
        let q = quotient_norm(&w.psi, &zeros)?;
        return Ok(Some(BoundReport::new("witness_quotient", Side::Lower, &label, n, r, q)));
    }
    match space.hardy_exponent() {
        Some(p) if p.is_finite() && p > 2.0 && (p / 2.0).fract() == 0.0 => {
            if power.is_some_and(|k| k != 1) {
                return Err(Error::input("even-p witnesses are transferred from N = 1"));
            }
            let w = lower_witness(n, r, WitnessPower::One)?;
            let q = quotient_norm(&w.psi, &zeros)?.powf(2.0 / p);
            Ok(Some(BoundReport::new("witness_quotient", Side::Lower, &label, n, r, q).with_note("transferred")))
        }
        _ => Ok(None),
    }
}

fn check_nr(n: usize, r: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::input(format!("r = {r} outside [0, 1)")));
    }
    Ok(())
}

fn optional(v: Result<f64>) -> Result<Option<f64>> {
    match v {
        Ok(x) => Ok(Some(x)),
        Err(Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `lb_closed ≤ witness ≤ estimate ≤ ub_cnr` for `{-r}^n`, checked link by
/// link before anything is returned.
pub(crate) fn sandwich_reports(
    space: &SpaceSpec<f64>,
    n: usize,
    r: f64,
    power: Option<u32>,
    budget: usize,
    seed: u64,
) -> Result<Vec<BoundReport>, CliError> {
    check_nr(n, r)?;
    let label = space.to_string();
    let witness = witness_report(space, n, r, power)?
        .ok_or_else(|| Error::Unsupported(format!("no lower-bound witness in {space}")))?;
    let mut chain = Vec::new();
    if let Some(lb) = optional(lb_closed(space, n, r))? {
        chain.push(BoundReport::new("lb_closed", Side::Lower, &label, n, r, lb));
    }
    chain.push(witness);
    let estimate = if space.is_hinf() {
        BoundReport::new("c_sigma_estimate", Side::Lower, &label, n, r, 1.0).with_note("contractive")
    } else {
        let sigma = NodeSet::repeated(C64::new(-r, 0.0), n)?;
        let est = c_sigma_estimate(&sigma, space, budget, seed)?;
        let rep = BoundReport::new("c_sigma_estimate", Side::Lower, &label, n, r, est.value);
        if est.transferred { rep.with_note("transferred") } else { rep }
    };
    chain.push(estimate);
    chain.push(ub_cnr_report(space, n, r)?);
    for pair in chain.windows(2) {
        if pair[0].value > pair[1].value + ORDER_SLACK {
            return Err(CliError::Ordering(OrderingViolation { lower: pair[0].clone(), upper: pair[1].clone() }));
        }
    }
    Ok(chain)
}

/// Rows of one `(n, r)` cell of the bound table for `{-r}^n`.
pub(crate) fn table_cell(space: &SpaceSpec<f64>, n: usize, r: f64) -> Result<Vec<BoundReport>> {
    let label = space.to_string();
    let mut out = vec![ub_cnr_report(space, n, r)?];
    if let Some(lb) = optional(lb_closed(space, n, r))? {
        out.push(BoundReport::new("lb_closed", Side::Lower, &label, n, r, lb));
    }
    if let Some(w) = witness_report(space, n, r, None)? {
        out.push(w);
    }
    if space.hilbert_alpha().is_some() {
        out.push(BoundReport::new("eval_functional_norm", Side::Lower, &label, n, r, eval_functional_norm(space, r)?));
    }
    if space.hilbert_alpha() == Some(0.0) {
        let sigma = NodeSet::repeated(C64::new(-r, 0.0), n)?;
        out.push(BoundReport::new("ub_simple", Side::Upper, &label, n, r, ub_simple(&sigma)));
        out.push(BoundReport::new("ub_poisson", Side::Upper, &label, n, r, ub_poisson(&sigma)?));
    }
    Ok(out)
}
