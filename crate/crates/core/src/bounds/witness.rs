use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::analytic::{
    fejer_half_width, fejer_multiplier, poly_pow, quadrature_size, zero_free_power, SpaceSpec, TaylorSeries,
};
use crate::blaschke::NodeSet;
use crate::error::{Error, Result};
use crate::model_space::MalmquistBasis;
use crate::scalar::{real, Real, C};

/// Power `N` of the composition `z ↦ z^N` used to build the witness:
/// `N = 1` targets `H²`, `N = 2` the Bergman space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessPower {
    One,
    Two,
}

impl WitnessPower {
    pub fn from_int(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            _ => Err(Error::input(format!("witness power must be 1 or 2, got {n}"))),
        }
    }

    pub fn exponent(self) -> u32 {
        match self {
            Self::One => 1,
            Self::Two => 2,
        }
    }

    /// Weight exponent of the space whose unit ball contains the witness.
    pub fn alpha<T: Real>(self) -> T {
        match self {
            Self::One => T::zero(),
            Self::Two => T::of(-0.5),
        }
    }
}

/// The worst-case witness for the one-point set `{-r}` repeated `n` times.
#[derive(Debug, Clone)]
pub struct LowerWitness<T: Real> {
    pub n: usize,
    pub r: T,
    pub power: WitnessPower,
    /// `n^{-N/2} (1-r²)^{-N/2} ψ₁^N` with
    /// `ψ₁ = 1 + (1+r) Σ_{k=1}^{n-1} z^k + r z^n`; the quotient norm over
    /// `z^n` of this polynomial equals that of `big_psi` over `b_{-r}^n`.
    pub psi: TaylorSeries<T>,
    /// `n^{-N/2} Q_n^N` with `Q_n` the sum of the Malmquist basis.
    pub big_psi: TaylorSeries<T>,
    /// Weighted norm of `big_psi` (at most 1).
    pub big_psi_norm: T,
}

fn check_nr<T: Real>(n: usize, r: T) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    if !(r >= T::zero() && r < T::one()) {
        return Err(Error::domain(format!("r = {r} outside [0, 1)")));
    }
    Ok(())
}

fn psi1<T: Real>(n: usize, r: T) -> TaylorSeries<T> {
    let mut c = vec![real(T::one() + r); n + 1];
    c[0] = C::one();
    c[n] = real(r);
    if n == 1 {
        c = vec![C::one(), real(r)];
    }
    TaylorSeries::polynomial(c)
}

/// `n^{-N/2} (1-r²)^{-N/2} ψ₁^N`.
pub fn witness_psi<T: Real>(n: usize, r: T, power: WitnessPower) -> Result<TaylorSeries<T>> {
    check_nr(n, r)?;
    let e = power.exponent();
    let base = psi1(n, r);
    let pow = poly_pow(&base.coeffs()[..=base.degree()], e);
    let scale = (T::of_usize(n) * (T::one() - r * r)).powf(-T::of(e as f64) / T::of(2.0));
    Ok(TaylorSeries::polynomial(pow).scale(real(scale)))
}

/// Builds both sides of the witness and checks `‖Ψ‖ ≤ 1 + 1e-8` in the
/// weighted space attached to `power`.
pub fn lower_witness<T: Real>(n: usize, r: T, power: WitnessPower) -> Result<LowerWitness<T>> {
    let psi = witness_psi(n, r, power)?;
    let sigma = NodeSet::repeated(real(-r), n)?;
    let big_psi = witness_big_psi(&MalmquistBasis::new(&sigma), power);
    let big_psi_norm = SpaceSpec::WeightedA2(power.alpha()).norm(&big_psi)?;
    if big_psi_norm > T::one() + T::of(1e-8) {
        return Err(Error::Invariant(format!("witness norm {big_psi_norm} exceeds 1")));
    }
    Ok(LowerWitness { n, r, power, psi, big_psi, big_psi_norm })
}

/// `n^{-N/2} Q^N` with `Q = Σ_k e_k` the sum of the basis functions.
pub fn witness_big_psi<T: Real>(basis: &MalmquistBasis<T>, power: WitnessPower) -> TaylorSeries<T> {
    let n = basis.len();
    let q = basis.combine(&vec![C::one(); n]);
    let q_pow = match power {
        WitnessPower::One => q,
        WitnessPower::Two => q.mul_truncated(&q, basis.degree_cap()),
    };
    q_pow.scale(real(T::of_usize(n).powf(-T::of(power.exponent() as f64) / T::of(2.0))))
}

/// Partial coefficient sum `Σ_{j≤m} ψ̂(j)` and its floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSum<T> {
    pub sum: T,
    pub floor: T,
}

/// `Σ_{j=0}^m ψ̂(j)` for the normalized witness, with `m` the Fejér
/// half-width, against the floor `(2√2)^{-1} (n/(1-r))^{1/2}` (`N = 1`) or
/// `n/(16(1-r))` (`N = 2`).
pub fn partial_sum_check<T: Real>(n: usize, r: T, power: WitnessPower) -> Result<PartialSum<T>> {
    let psi = witness_psi(n, r, power)?;
    let m = fejer_half_width(n);
    let sum = (0..=m).map(|j| psi.coeff(j).re).sum::<T>();
    let x = T::of_usize(n) / (T::one() - r);
    let floor = match power {
        WitnessPower::One => x.sqrt() / (T::of(2.0) * T::SQRT_2()),
        WitnessPower::Two => x / T::of(16.0),
    };
    if sum < floor {
        return Err(Error::Invariant(format!("partial sum {sum} below floor {floor}")));
    }
    Ok(PartialSum { sum, floor })
}

type Q = Ratio<i128>;

/// Exact coefficients of `ψ₁` for rational `r`.
pub fn psi1_coeffs_exact(n: usize, r: Q) -> Vec<Q> {
    if n == 1 {
        return vec![Q::one(), r];
    }
    let mut c = vec![Q::one() + r; n + 1];
    c[0] = Q::one();
    c[n] = r;
    c
}

/// Exact version of the partial-sum floors for the unnormalized `ψ₁^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactPartialSum {
    /// `Σ_{j≤m}` of the coefficients of `ψ₁^N`.
    pub psi_sum: Q,
    /// `Σ_{j≤m}` of the coefficients of `S^N`, `S = 1 + z + ... + z^{n-1}`.
    pub s_sum: i128,
    /// `n/2` for `N = 1`, `n²/8` for `N = 2`.
    pub floor: Q,
    /// `m + 1 ≥ n/2` (`N = 1`) or `4(m+1)(m+2) ≥ n²` (`N = 2`).
    pub closed_form_holds: bool,
    /// `psi_sum ≥ s_sum ≥ floor` and the closed-form inequality.
    pub holds: bool,
}

/// Checks `Σ^m(ψ₁^N) ≥ Σ^m(S^N) ≥ floor` in exact arithmetic. `S^N` is
/// expanded directly, so the count is right for every `n` including 1.
pub fn partial_sum_check_exact(n: usize, r: Q, power: WitnessPower) -> Result<ExactPartialSum> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    if r < Q::zero() || r >= Q::one() {
        return Err(Error::domain(format!("r = {r} outside [0, 1)")));
    }
    let m = fejer_half_width(n);
    let e = power.exponent();
    let psi = poly_pow(&psi1_coeffs_exact(n, r), e);
    let psi_sum = psi.iter().take(m + 1).fold(Q::zero(), |a, &b| a + b);
    let s = poly_pow(&vec![1i128; n], e);
    let s_sum: i128 = s.iter().take(m + 1).sum();
    let (n_i, m_i) = (n as i128, m as i128);
    let (floor, closed_form_holds) = match power {
        WitnessPower::One => (Q::new(n_i, 2), 2 * (m_i + 1) >= n_i),
        WitnessPower::Two => (Q::new(n_i * n_i, 8), 4 * (m_i + 1) * (m_i + 2) >= n_i * n_i),
    };
    let holds = psi_sum >= Q::from_integer(s_sum) && Q::from_integer(s_sum) >= floor && closed_form_holds;
    Ok(ExactPartialSum { psi_sum, s_sum, floor, closed_form_holds, holds })
}

/// `‖Q_n‖²` for the one-point set `{-r}^n` in exact arithmetic, from the
/// Gram entries `⟨e_j, e_k⟩ = (1-r²) · k_λ(λ) · b_λ(λ)^{|j-k|}`, which follow
/// from the reproducing property of the Szegő kernel.
pub fn witness_norm_sqr_exact(n: usize, r: Q) -> Q {
    let lambda = -r;
    let one = Q::one();
    let kernel_diag = one / (one - lambda * lambda);
    let b_at_node = (lambda - lambda) / (one - lambda * lambda);
    let s2 = one - r * r;
    let mut total = Q::zero();
    for j in 0..n {
        for k in 0..n {
            let d = j.abs_diff(k) as i32;
            total += s2 * kernel_diag * b_at_node.pow(d);
        }
    }
    total
}

/// `½ sup_{|z|=1} |ψ * F_n|`, asserted to dominate `½ Σ_{j≤m} ψ̂(j)`.
pub fn fejer_lower_estimate<T: Real>(psi: &TaylorSeries<T>, n: usize) -> Result<T> {
    if !psi.is_exact() {
        return Err(Error::domain("Fejér estimate needs an exact polynomial"));
    }
    if psi.coeffs().iter().any(|c| c.im != T::zero() || c.re < T::zero()) {
        return Err(Error::domain("Fejér estimate needs nonnegative real coefficients"));
    }
    let mult = fejer_multiplier::<T>(n)?;
    let conv = psi.multiplier_apply(&mult);
    let value = conv.sup_on_circle(quadrature_size(conv.degree())) / T::of(2.0);
    let m = fejer_half_width(n);
    let half_sum = (0..=m).map(|j| psi.coeff(j).re).sum::<T>() / T::of(2.0);
    if value < half_sum * (T::one() - T::of(64.0) * T::epsilon()) {
        return Err(Error::Invariant(format!("Fejér estimate {value} below half partial sum {half_sum}")));
    }
    Ok(value)
}

/// Closed-form lower bound for the one-point set `{λ}^n`:
/// `H²`: `(4√2)^{-1} (n/(1-|λ|))^{1/2}`; Bergman: `n/(32(1-|λ|))`;
/// even `p`: `32^{-1/p} (n/(1-|λ|))^{1/p}`.
pub fn lb_closed<T: Real>(space: &SpaceSpec<T>, n: usize, lam_abs: T) -> Result<T> {
    check_nr(n, lam_abs)?;
    let x = T::of_usize(n) / (T::one() - lam_abs);
    let two = T::of(2.0);
    if let Some(a) = space.hilbert_alpha() {
        if a == T::zero() {
            return Ok(x.sqrt() / (T::of(4.0) * T::SQRT_2()));
        }
        if a == T::of(-0.5) {
            return Ok(x / T::of(32.0));
        }
        return Err(Error::Unsupported(format!("no closed lower bound for {space}")));
    }
    match *space {
        SpaceSpec::HardyP(p) if p.is_finite() && p >= two && (p / two).fract() == T::zero() => {
            Ok((x / T::of(32.0)).powf(p.recip()))
        }
        _ => Err(Error::Unsupported(format!("lower bound proved only for even p, got {space}"))),
    }
}

/// `F = f^{q/p}` for `p/q` a positive integer, with `‖F‖_p^p = ‖f‖_q^q`.
pub fn outer_power_witness<T: Real>(f: &TaylorSeries<T>, p: u32, q: u32, cap: usize) -> Result<TaylorSeries<T>> {
    if q == 0 || p == 0 || p % q != 0 {
        return Err(Error::domain(format!("p/q = {p}/{q} is not a positive integer")));
    }
    zero_free_power(f, Ratio::new(1, p / q), cap)
}

impl<T: Real> LowerWitness<T> {
    /// Coefficients of `psi` as plain complex numbers.
    pub fn psi_coeffs(&self) -> Vec<Complex<T>> {
        self.psi.coeffs().to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_witness() {
        let w = lower_witness(2, 0.0, WitnessPower::One).unwrap();
        let s = 0.5f64.sqrt();
        assert!((w.psi.coeff(0).re - s).abs() < 1e-15 && (w.psi.coeff(1).re - s).abs() < 1e-15);
        assert_eq!(w.psi.degree(), 1);
        assert!((w.big_psi_norm - 1.0).abs() < 1e-12);
        let w = lower_witness(5, 0.9, WitnessPower::Two).unwrap();
        assert!(w.big_psi_norm <= 1.0 + 1e-8);
        assert_eq!(w.psi.degree(), 10);
        assert!(w.psi.coeffs().iter().all(|c| c.re >= 0.0 && c.im == 0.0));
    }

    #[test]
    fn partial_sum_examples() {
        let e = partial_sum_check_exact(2, Q::zero(), WitnessPower::One).unwrap();
        assert_eq!(e.psi_sum, Q::from_integer(2));
        assert!(e.holds);
        let e = partial_sum_check_exact(4, Q::zero(), WitnessPower::Two).unwrap();
        assert_eq!(e.s_sum, 6);
        assert_eq!(e.floor, Q::from_integer(2));
        let e = partial_sum_check_exact(1, Q::new(1, 2), WitnessPower::Two).unwrap();
        assert_eq!(e.s_sum, 1);
        assert!(e.holds);
        let p = partial_sum_check(8, 0.5, WitnessPower::One).unwrap();
        assert!(p.sum >= p.floor);
    }

    #[test]
    fn exact_witness_norm() {
        for n in [1, 2, 7, 30] {
            assert_eq!(witness_norm_sqr_exact(n, Q::new(9, 10)), Q::from_integer(n as i128));
        }
    }

    #[test]
    fn fejer_examples() {
        let one = TaylorSeries::<f64>::from_real(&[1.0]);
        assert!((fejer_lower_estimate(&one, 1).unwrap() - 0.75).abs() < 1e-15);
        assert!(fejer_lower_estimate(&TaylorSeries::<f64>::from_real(&[1.0, -1.0]), 2).is_err());
    }

    #[test]
    fn lb_closed_examples() {
        assert!((lb_closed(&SpaceSpec::h2(), 32, 0.0f64).unwrap() - 1.0).abs() < 1e-15);
        assert!((lb_closed(&SpaceSpec::bergman(), 32, 0.0f64).unwrap() - 1.0).abs() < 1e-15);
        assert!((lb_closed(&SpaceSpec::HardyP(4.0), 32, 0.0f64).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(lb_closed(&SpaceSpec::HardyP(3.0), 32, 0.0), Err(Error::Unsupported(_))));
        assert!(matches!(lb_closed(&SpaceSpec::HardyP(1.0), 32, 0.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn outer_power_examples() {
        let one = TaylorSeries::<f64>::from_real(&[1.0]);
        let f = outer_power_witness(&one, 4, 2, 8).unwrap();
        assert!((f.coeff(0).re - 1.0).abs() < 1e-15);
        let f = TaylorSeries::<f64>::from_real(&[1.0, 0.5]);
        let big = outer_power_witness(&f, 4, 2, 400).unwrap();
        let exact = TaylorSeries::polynomial(big.coeffs().to_vec());
        let lhs = SpaceSpec::HardyP(4.0).norm(&exact).unwrap().powi(4);
        let rhs = SpaceSpec::h2().norm(&f).unwrap().powi(2);
        assert!((lhs - rhs).abs() < 1e-8);
        assert!(outer_power_witness(&f, 3, 2, 8).is_err());
    }
}
