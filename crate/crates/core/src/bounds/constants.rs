use crate::analytic::SpaceSpec;
use crate::error::{Error, Result};
use crate::model_space::KernelSpec;
use crate::scalar::Real;

fn check_r<T: Real>(r: T) -> Result<()> {
    if r >= T::zero() && r < T::one() {
        Ok(())
    } else {
        Err(Error::domain(format!("r = {r} outside [0, 1)")))
    }
}

/// Bernstein constant for `K_B` with `n` nodes of modulus at most `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinConstant<T> {
    pub value: T,
    /// True when `n < 2` and the simplified cap `3n/(1-r)` is returned.
    pub capped: bool,
}

/// `3n/(1-r)`.
pub fn bernstein_cap<T: Real>(n: usize, r: T) -> Result<T> {
    check_r(r)?;
    Ok(T::of(3.0) * T::of_usize(n) / (T::one() - r))
}

/// `[1 + (1+r)(n-1) + √(n-2)]/(1-r)` for `n ≥ 2`, bounding `‖f'‖₂/‖f‖₂` on
/// `K_B`; smaller `n` falls back to the cap.
pub fn bernstein_alpha<T: Real>(n: usize, r: T) -> Result<BernsteinConstant<T>> {
    check_r(r)?;
    if n < 2 {
        return Ok(BernsteinConstant { value: bernstein_cap(n, r)?, capped: true });
    }
    let one = T::one();
    let value = (one + (one + r) * T::of_usize(n - 1) + T::of_usize(n - 2).sqrt()) / (one - r);
    Ok(BernsteinConstant { value, capped: false })
}

/// Norm of `f ↦ f(t)` on a Hilbert space of the weighted scale:
/// `k_t(t)^{1/2}`.
pub fn eval_functional_norm<T: Real>(space: &SpaceSpec<T>, t: T) -> Result<T> {
    let spec = KernelSpec::for_space(space)
        .ok_or_else(|| Error::Unsupported(format!("no evaluation-functional formula for {space}")))?;
    Ok(spec.diagonal(t)?.sqrt())
}

/// Below this radius the displayed factor is replaced by its limit form.
pub const C1_LIMIT_BELOW: f64 = 0.05;

/// Bound on `max_k sup_{|z| = 2/(1+r)} |e_k(z)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C1Factor<T> {
    pub value: T,
    /// True when `r < 0.05` and the displayed formula (singular at `r = 0`)
    /// was replaced by the per-factor bound
    /// `1 + (ρ²-1)(1-r²)/(1-rρ)²`, `ρ = 2/(1+r)`.
    pub limit_form: bool,
}

/// `(1 - 2r/(r+1))^{-1} · (2 Π_{j<n} (1 + 2(1/r² - 1)/(1 - 4r²/(r+1)²)))^{1/2}`.
pub fn theorem_a_c1_factor<T: Real>(n: usize, r: T) -> Result<C1Factor<T>> {
    check_r(r)?;
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let one = T::one();
    let two = T::of(2.0);
    let prefactor = one / (one - two * r / (r + one));
    let reps = T::of_usize(n - 1);
    if r < T::of(C1_LIMIT_BELOW) {
        let rho = two / (one + r);
        let factor = one + (rho * rho - one) * (one - r * r) / ((one - r * rho) * (one - r * rho));
        let value = prefactor * (two * factor.powf(reps)).sqrt();
        return Ok(C1Factor { value, limit_form: true });
    }
    let q = T::of(4.0) * r * r / ((r + one) * (r + one));
    let factor = one + two * (one / (r * r) - one) / (one - q);
    Ok(C1Factor { value: prefactor * (two * factor.powf(reps)).sqrt(), limit_form: false })
}
