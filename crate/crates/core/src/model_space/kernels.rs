use num_traits::Zero;

use rayon::prelude::*;

use super::default_degree_cap;
use crate::analytic::{boundary_ladder, weighted_inner, CircleGrid, SpaceSpec, TaylorSeries, DISC_ANGLES};
use crate::blaschke::NodeSet;
use crate::error::{Error, Result};
use crate::scalar::{real, Real, C};

/// Reproducing kernels of the weighted space with inner product
/// `Σ ĥ(k) conj(ĝ(k)) (k+1)^{2α}`:
/// `k_λ(z) = Σ (k+1)^{-2α} conj(λ)^k z^k`.
///
/// `α = 0` is the Szegő kernel, `α = -1/2` the Bergman kernel
/// `(1 - conj(λ) z)^{-2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec<T> {
    pub alpha: T,
}

impl<T: Real> KernelSpec<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if !(alpha >= -T::one() && alpha <= T::zero()) {
            return Err(Error::input(format!("weight exponent must lie in [-1, 0], got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn szego() -> Self {
        Self { alpha: T::zero() }
    }

    pub fn bergman() -> Self {
        Self { alpha: T::of(-0.5) }
    }

    /// The kernel family of a Hilbert space in the weighted scale.
    pub fn for_space(space: &SpaceSpec<T>) -> Option<Self> {
        space.hilbert_alpha().map(|alpha| Self { alpha })
    }

    fn weight(&self, k: usize) -> T {
        T::of_usize(k + 1).powf(-(self.alpha + self.alpha))
    }

    pub fn inner(&self, h: &TaylorSeries<T>, g: &TaylorSeries<T>) -> C<T> {
        weighted_inner(h, g, self.alpha)
    }

    pub fn norm(&self, h: &TaylorSeries<T>) -> T {
        self.inner(h, h).re.max(T::zero()).sqrt()
    }

    pub fn reproducing_kernel(&self, lambda: C<T>, cap: usize) -> Result<TaylorSeries<T>> {
        self.derivative_kernel(lambda, 0, cap)
    }

    /// `(d/d conj(λ))^i k_λ`, which reproduces `f^{(i)}(λ)`.
    pub fn derivative_kernel(&self, lambda: C<T>, order: usize, cap: usize) -> Result<TaylorSeries<T>> {
        if !(lambda.norm() < T::one()) {
            return Err(Error::domain(format!("kernel node {lambda} is not inside the unit disc")));
        }
        let lc = lambda.conj();
        let mut coeffs = vec![C::zero(); cap + 1];
        let mut power = C::new(T::one(), T::zero());
        for (k, slot) in coeffs.iter_mut().enumerate().skip(order) {
            let falling = ((k - order + 1)..=k).fold(T::one(), |acc, j| acc * T::of_usize(j));
            *slot = power * (self.weight(k) * falling);
            power *= lc;
        }
        Ok(if lambda.norm() == T::zero() { TaylorSeries::polynomial(coeffs) } else { TaylorSeries::truncated(coeffs) })
    }

    /// Kernel diagonal `k_t(t) = Σ (k+1)^{-2α} t^{2k}` for real `t ∈ [0, 1)`.
    pub fn diagonal(&self, t: T) -> Result<T> {
        if !(t >= T::zero() && t < T::one()) {
            return Err(Error::domain(format!("diagonal point {t} outside [0, 1)")));
        }
        let x = t * t;
        let one = T::one();
        let a = self.alpha.to_f64_lossy();
        if a == 0.0 {
            return Ok(one / (one - x));
        }
        if a == -0.5 {
            return Ok(one / ((one - x) * (one - x)));
        }
        if a == -1.0 {
            return Ok((one + x) / ((one - x) * (one - x) * (one - x)));
        }
        let mut sum = T::zero();
        let mut xp = one;
        let mut k = 0usize;
        loop {
            let term = self.weight(k) * xp;
            sum += term;
            if term <= sum * T::epsilon() && k > 16 {
                return Ok(sum);
            }
            xp *= x;
            k += 1;
            if k > 100_000_000 {
                return Err(Error::Convergence("kernel diagonal series".into()));
            }
        }
    }
}

/// Truncation degree making every derivative kernel attached to `sigma`
/// negligible past the cap (relative to its largest coefficient), and at
/// least [`default_degree_cap`].
pub fn kernel_degree_cap<T: Real>(sigma: &NodeSet<T>, spec: &KernelSpec<T>) -> usize {
    let tol = (T::epsilon().to_f64_lossy() * 0.05).ln();
    let two_a = -2.0 * spec.alpha.to_f64_lossy();
    let mut need = default_degree_cap(sigma);
    for node in sigma.distinct() {
        let a = node.lambda.norm().to_f64_lossy();
        if a == 0.0 {
            need = need.max(node.mult);
            continue;
        }
        let i = node.mult - 1;
        let log_c = |k: usize| -> f64 {
            let falling: f64 = ((k - i + 1)..=k).map(|j| (j as f64).ln()).sum();
            two_a * ((k + 1) as f64).ln() + falling + (k - i) as f64 * a.ln()
        };
        let mut peak = f64::NEG_INFINITY;
        let mut k = i;
        while k < super::MAX_DEGREE_CAP {
            let here = log_c(k);
            peak = peak.max(here);
            let ratio = (log_c(k + 1) - here).exp();
            if ratio < 1.0 && here - (1.0 - ratio).ln() - peak <= tol {
                break;
            }
            k += 1;
        }
        need = need.max(k);
    }
    need.min(super::MAX_DEGREE_CAP)
}

/// Gram–Schmidt, in the weighted inner product, of the kernel sequence
/// `k_{λ_1,0}, ...`, where a node's `i`-th repetition in the flat list
/// contributes the `i`-th derivative kernel. The result is an orthonormal
/// basis of the span of the kernels at `sigma`.
///
/// Classical Gram–Schmidt with one reorthogonalization pass; a pivot below
/// `1e-12` times the first pivot is reported as numerical dependence.
pub fn gram_schmidt_kernels<T: Real>(
    sigma: &NodeSet<T>,
    spec: &KernelSpec<T>,
    cap: usize,
) -> Result<Vec<TaylorSeries<T>>> {
    let cap = cap.max(kernel_degree_cap(sigma, spec));
    let flat = sigma.flat();
    let mut out: Vec<TaylorSeries<T>> = Vec::with_capacity(flat.len());
    let mut first_pivot = T::zero();
    for (idx, &l) in flat.iter().enumerate() {
        let order = flat[..idx].iter().filter(|&&m| m == l).count();
        let mut v = spec.derivative_kernel(l, order, cap)?;
        for _ in 0..2 {
            let proj: Vec<C<T>> = out.iter().map(|q| spec.inner(&v, q)).collect();
            for (q, p) in out.iter().zip(proj) {
                v = v.linear_combination(C::new(T::one(), T::zero()), q, -p);
            }
        }
        let pivot = spec.norm(&v);
        if idx == 0 {
            first_pivot = pivot;
        }
        if !(pivot >= T::of(1e-12) * first_pivot) || pivot == T::zero() {
            return Err(Error::NumericallyDependent { index: idx, pivot: pivot.to_f64_lossy() });
        }
        out.push(v.scale(real(T::one() / pivot)));
    }
    Ok(out)
}

/// Supremum over the disc of the norm of the projection of the kernel at
/// `z` onto the span of the kernels at `sigma`, which equals
/// `(Σ_l |g_l(z)|²)^{1/2}` for any orthonormal basis `(g_l)` of that span.
///
/// Evaluated on radii `1 - 2^{-j}`, `j = 1..=20`, times 512 angles.
pub fn theorem_b_upper_bound<T: Real>(sigma: &NodeSet<T>, spec: &KernelSpec<T>) -> Result<T> {
    let g = gram_schmidt_kernels(sigma, spec, default_degree_cap(sigma))?;
    let grid = CircleGrid::<T>::new(DISC_ANGLES);
    let best = boundary_ladder::<T>()
        .into_par_iter()
        .map(|rho| {
            let mut acc = vec![T::zero(); DISC_ANGLES];
            for gl in &g {
                for (a, v) in acc.iter_mut().zip(gl.circle_values(&grid, rho)) {
                    *a += v.norm_sqr();
                }
            }
            acc.into_iter().fold(T::zero(), T::max)
        })
        .reduce(T::zero, T::max);
    Ok(best.sqrt())
}
