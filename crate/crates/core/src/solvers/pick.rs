use num_traits::{One, Zero};

use crate::blaschke::NodeSet;
use crate::bounds::ub_simple;
use crate::error::{Error, Result};
use crate::linalg::{vec_norm, CMatrix};
use crate::model_space::MalmquistBasis;
use crate::scalar::{real, Real, C};

/// Minimum pairwise distance accepted between interpolation nodes.
const NODE_SEPARATION: f64 = 1e-10;

const MAX_BISECTIONS: usize = 200;

/// Nevanlinna–Pick data: distinct nodes in the disc and target values.
#[derive(Debug, Clone, PartialEq)]
pub struct PickProblem<T> {
    nodes: Vec<C<T>>,
    values: Vec<C<T>>,
}

impl<T: Real> PickProblem<T> {
    pub fn new(nodes: Vec<C<T>>, values: Vec<C<T>>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::input(format!("{} nodes but {} values", nodes.len(), values.len())));
        }
        let set = NodeSet::from_points(&nodes)?;
        if !set.is_separated(T::of(NODE_SEPARATION)) {
            return Err(Error::input("interpolation nodes must be pairwise distinct"));
        }
        Ok(Self { nodes, values })
    }

    /// Values `f(λ_i)` of a polynomial at the given nodes.
    pub fn sampled(nodes: Vec<C<T>>, f: &crate::analytic::TaylorSeries<T>) -> Result<Self> {
        let values = nodes.iter().map(|&l| f.evaluate(l)).collect::<Result<Vec<_>>>()?;
        Self::new(nodes, values)
    }

    pub fn nodes(&self) -> &[C<T>] {
        &self.nodes
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `((c² - conj(w_i) w_j)/(1 - conj(λ_i) λ_j))_{ij}`, symmetrized.
pub fn pick_matrix<T: Real>(prob: &PickProblem<T>, c: T) -> CMatrix<T> {
    let (l, w) = (&prob.nodes, &prob.values);
    let c2 = real(c * c);
    let mut m = CMatrix::from_fn(l.len(), l.len(), |i, j| (c2 - w[i].conj() * w[j]) / (C::<T>::one() - l[i].conj() * l[j]));
    m.symmetrize();
    m
}

/// Relative eigenvalue floor of the PSD test, a few multiples of the
/// Jacobi solver's backward error at the sizes used here.
const PSD_FLOOR: f64 = 1e-14;

/// PSD test on `D M D` with `D = diag((1-|λ_i|²)^{1/2})`; the congruence
/// keeps the inertia and brings the kernel part to unit diagonal.
fn feasible<T: Real>(prob: &PickProblem<T>, c: T) -> Result<bool> {
    let d: Vec<T> = prob.nodes.iter().map(|l| (T::one() - l.norm_sqr()).sqrt()).collect();
    let mut m = pick_matrix(prob, c);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            m[(i, j)] = m[(i, j)] * d[i] * d[j];
        }
    }
    let floor = -T::of(PSD_FLOOR) * m.frobenius();
    Ok(m.min_eigenvalue()? >= floor)
}

/// Coordinates in the Malmquist basis of the minimal-norm `H²` interpolant:
/// the lower-triangular system `Σ_k e_k(λ_i) c_k = w_i`.
pub fn interpolation_coords<T: Real>(basis: &MalmquistBasis<T>, values: &[C<T>]) -> Result<Vec<C<T>>> {
    let nodes = basis.nodes();
    let mut c: Vec<C<T>> = Vec::with_capacity(nodes.len());
    for (i, &l) in nodes.iter().enumerate() {
        let row = basis.eval_all(l)?;
        let partial = (0..i).fold(C::zero(), |acc, k| acc + row[k] * c[k]);
        if row[i].is_zero() {
            return Err(Error::input("interpolation needs distinct nodes"));
        }
        c.push((values[i] - partial) / row[i]);
    }
    Ok(c)
}

/// Smallest `c` making the Pick matrix positive semidefinite, by bisection
/// to width `tol` on `[max|w_i|, ‖g‖₂ · (Σ(1+|λ|)/(1-|λ|))^{1/2} · (1 + 1e-3)]`,
/// where `g` is the minimal-norm `H²` interpolant.
pub fn np_value<T: Real>(prob: &PickProblem<T>, tol: T) -> Result<T> {
    if !(tol > T::zero()) {
        return Err(Error::input("tolerance must be positive"));
    }
    let mut lo = prob.values.iter().fold(T::zero(), |a, w| a.max(w.norm()));
    if feasible(prob, lo)? {
        return Ok(lo);
    }
    let sigma = NodeSet::from_points(&prob.nodes)?;
    let basis = MalmquistBasis::new(&sigma);
    let coords = interpolation_coords(&basis, &prob.values)?;
    let mut hi = (vec_norm(&coords) * ub_simple(&sigma) * T::of(1.0 + 1e-3)).max(lo);
    let mut doublings = 0;
    while !feasible(prob, hi)? {
        hi = hi * T::of(2.0) + T::min_positive_value();
        doublings += 1;
        if doublings > 60 {
            return Err(Error::Convergence("no feasible upper bracket for the Pick matrix".into()));
        }
    }
    let mut iters = 0;
    while hi - lo > tol {
        if iters == MAX_BISECTIONS {
            return Err(Error::Convergence(format!("bisection did not reach width {tol} in {MAX_BISECTIONS} steps")));
        }
        let mid = lo + (hi - lo) / T::of(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(prob, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        iters += 1;
    }
    // a probe just above `hi` sits inside roundoff for ill-conditioned
    // kernels, so the up-set property is sampled at `2 hi`
    if !feasible(prob, hi * T::of(2.0))? {
        return Err(Error::Invariant(format!("Pick feasibility not monotone near c = {hi}")));
    }
    Ok(hi)
}

/// Spectral norm of the lower-triangular Toeplitz matrix with first column
/// `w_0..w_n`.
pub fn cs_value<T: Real>(w: &[C<T>]) -> Result<T> {
    if w.is_empty() {
        return Ok(T::zero());
    }
    let n = w.len();
    let m = CMatrix::from_fn(n, n, |i, j| if i >= j { w[i - j] } else { C::zero() });
    m.spectral_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::TaylorSeries;
    use crate::scalar::cplx;

    fn c(re: f64, im: f64) -> C<f64> {
        cplx(re, im)
    }

    #[test]
    fn pick_matrix_examples() {
        let p = PickProblem::new(vec![c(0.5, 0.0)], vec![c(0.3, 0.4)]).unwrap();
        let m = pick_matrix(&p, 2.0);
        assert!((m[(0, 0)] - c((4.0 - 0.25) / 0.75, 0.0)).norm() < 1e-15);
        let p = PickProblem::new(vec![c(0.5, 0.1), c(-0.2, 0.3)], vec![c(0.0, 0.0); 2]).unwrap();
        assert!(pick_matrix(&p, 0.7).min_eigenvalue().unwrap() >= 0.0);
    }

    #[test]
    fn np_examples() {
        let p = PickProblem::new(vec![c(0.5, 0.0)], vec![c(0.8, 0.0)]).unwrap();
        assert!((np_value(&p, 1e-10).unwrap() - 0.8).abs() < 1e-9);
        let k = TaylorSeries::constant(c(0.3, -0.4));
        let p = PickProblem::sampled(vec![c(0.5, 0.0), c(-0.1, 0.6), c(0.0, -0.3)], &k).unwrap();
        assert!((np_value(&p, 1e-10).unwrap() - 0.5).abs() < 1e-9);
        assert!(PickProblem::new(vec![c(0.5, 0.0), c(0.5, 0.0)], vec![c(1.0, 0.0); 2]).is_err());
    }

    #[test]
    fn cs_examples() {
        assert!((cs_value(&[c(0.3, 0.4)]).unwrap() - 0.5).abs() < 1e-15);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((cs_value(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap() - golden).abs() < 1e-13);
        assert!((cs_value(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn interpolant_matches_values() {
        let nodes = vec![c(0.5, 0.1), c(-0.2, 0.3), c(0.0, -0.7)];
        let vals = vec![c(1.0, 0.0), c(0.0, 2.0), c(-0.5, 0.5)];
        let basis = MalmquistBasis::new(&NodeSet::from_points(&nodes).unwrap());
        let coords = interpolation_coords(&basis, &vals).unwrap();
        let g = basis.combine(&coords);
        for (l, w) in nodes.iter().zip(&vals) {
            assert!((g.evaluate(*l).unwrap() - *w).norm() < 1e-12);
        }
    }
}
