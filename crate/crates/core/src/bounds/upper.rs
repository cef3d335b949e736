use rayon::prelude::*;

use crate::analytic::{boundary_ladder, CircleGrid, SpaceSpec, SUP_ANGLES};
use crate::blaschke::{BlaschkeProduct, NodeSet};
use crate::error::{Error, Result};
use crate::model_space::projected_szego_norm;
use crate::scalar::Real;

fn circle_sup<T: Real>(f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<T> {
    (0..SUP_ANGLES)
        .into_par_iter()
        .map(f)
        .try_reduce(T::zero, |a, b| Ok(a.max(b)))
}

/// Grid supremum over the disc of `((1 - |B(z)|²)/(1 - |z|²))^{1/2}`, on
/// radii `1 - 2^{-j}` times 4096 angles.
pub fn ub_energy<T: Real>(b: &BlaschkeProduct<T>) -> Result<T> {
    let grid = CircleGrid::<T>::new(SUP_ANGLES);
    boundary_ladder::<T>()
        .into_par_iter()
        .map(|rho| {
            (0..SUP_ANGLES).try_fold(T::zero(), |acc, l| Ok(acc.max(projected_szego_norm(b, grid.point(l, rho))?)))
        })
        .try_reduce(T::zero, |a, b| Ok(a.max(b)))
}

/// `√2 · (sup_{|ζ|=1} |B'(ζ)|)^{1/2}` over 4096 angles.
pub fn ub_bprime<T: Real>(b: &BlaschkeProduct<T>) -> Result<T> {
    let grid = CircleGrid::<T>::new(SUP_ANGLES);
    let sup = circle_sup(|l| Ok(b.boundary_derivative(grid.point(l, T::one()))?.norm()))?;
    Ok(T::SQRT_2() * sup.sqrt())
}

/// `(sup_{|z|=1} Σ_k (1-|λ_k|²)/|z-λ_k|²)^{1/2}` over 4096 angles.
pub fn ub_poisson<T: Real>(sigma: &NodeSet<T>) -> Result<T> {
    let grid = CircleGrid::<T>::new(SUP_ANGLES);
    let flat = sigma.flat();
    let sup = circle_sup(|l| {
        let z = grid.point(l, T::one());
        Ok(flat.iter().map(|&nd| (T::one() - nd.norm_sqr()) / (z - nd).norm_sqr()).sum::<T>())
    })?;
    Ok(sup.sqrt())
}

/// `(Σ_j (1+|λ_j|)/(1-|λ_j|))^{1/2}`.
pub fn ub_simple<T: Real>(sigma: &NodeSet<T>) -> T {
    sigma
        .flat()
        .iter()
        .map(|l| {
            let a = l.norm();
            (T::one() + a) / (T::one() - a)
        })
        .sum::<T>()
        .sqrt()
}

/// True when [`ub_cnr`] uses the interpolated constant `A_p = 2^{1/p}`
/// rather than a constant proved for that space.
pub fn ub_cnr_is_heuristic<T: Real>(space: &SpaceSpec<T>) -> bool {
    match *space {
        SpaceSpec::HardyP(p) => !(p == T::one() || p == T::of(2.0) || p.is_infinite()),
        SpaceSpec::WeightedA2(_) => false,
    }
}

/// Upper bound for the worst case over all node sets with `n` points of
/// modulus at most `r`:
///
/// * `H¹`: `2n/(1-r)`; `H²`: `√2 (n/(1-r))^{1/2}`; `H^∞`: `1`;
/// * other `H^p`: `2^{1/p} (n/(1-r))^{1/p}` (interpolated constant);
/// * Bergman: `10^{1/4} √2 · n/(1-r)`;
/// * weight `α = -1`: `2√10 (n/(1-r))^{3/2}`;
/// * other `α = -θ`: `A(0)^{1-θ} A(1)^θ (n/(1-r))^{1/2+θ}`.
pub fn ub_cnr<T: Real>(space: &SpaceSpec<T>, n: usize, r: T) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    if !(r >= T::zero() && r < T::one()) {
        return Err(Error::domain(format!("r = {r} outside [0, 1)")));
    }
    let x = T::of_usize(n) / (T::one() - r);
    let two = T::of(2.0);
    let ten = T::of(10.0);
    let a0 = T::SQRT_2();
    let a1 = two * ten.sqrt();
    match *space {
        SpaceSpec::HardyP(p) if p.is_infinite() => Ok(T::one()),
        SpaceSpec::HardyP(p) if p == T::one() => Ok(two * x),
        SpaceSpec::HardyP(p) if p == two => Ok(a0 * x.sqrt()),
        SpaceSpec::HardyP(p) if p > T::one() => Ok(two.powf(p.recip()) * x.powf(p.recip())),
        SpaceSpec::HardyP(p) => Err(Error::Unsupported(format!("Hardy exponent {p}"))),
        SpaceSpec::WeightedA2(a) if a == T::zero() => Ok(a0 * x.sqrt()),
        SpaceSpec::WeightedA2(a) if a == T::of(-0.5) => Ok(ten.powf(T::of(0.25)) * a0 * x),
        SpaceSpec::WeightedA2(a) if a == -T::one() => Ok(a1 * x.powf(T::of(1.5))),
        SpaceSpec::WeightedA2(a) if a > -T::one() && a < T::zero() => {
            let theta = -a;
            let amp = a0.powf(T::one() - theta) * a1.powf(theta);
            Ok(amp * x.powf(T::of(0.5) + theta))
        }
        SpaceSpec::WeightedA2(a) => Err(Error::Unsupported(format!("weight exponent {a}"))),
    }
}
