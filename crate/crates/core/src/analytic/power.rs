//! Analytic rational powers of polynomials without zeros near the closed disc.

use num_rational::Ratio;
use num_traits::Zero;

use super::{poly_pow, CircleGrid, TaylorSeries};
use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Radius margin `δ`: zeros are excluded from the disc of radius `1 + δ`.
pub const OUTER_MARGIN: f64 = 0.02;

const CHECK_POINTS: usize = 4096;

/// Evidence that a polynomial has no zeros in `|z| ≤ 1 + δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterCheck {
    pub min_modulus: f64,
    pub winding: i64,
}

impl OuterCheck {
    /// Samples `f` on `|z| = 1 + δ`: the minimum modulus and the winding
    /// number of the image curve around 0 (the zero count inside).
    pub fn run<T: Real>(f: &TaylorSeries<T>) -> Self {
        let grid = CircleGrid::new(CHECK_POINTS);
        let vals = f.circle_values(&grid, T::of(1.0 + OUTER_MARGIN));
        let min_modulus = vals.iter().fold(f64::INFINITY, |acc, v| acc.min(v.norm().to_f64_lossy()));
        let mut turn = 0.0f64;
        for (i, v) in vals.iter().enumerate() {
            let next = vals[(i + 1) % vals.len()];
            let step = (next / v).arg().to_f64_lossy();
            turn += step;
        }
        let winding = (turn / std::f64::consts::TAU).round() as i64;
        Self { min_modulus, winding }
    }

    pub fn is_zero_free<T: Real>(&self, f: &TaylorSeries<T>) -> bool {
        let scale: f64 = f.coeffs().iter().map(|c| c.norm().to_f64_lossy()).sum();
        let floor = 1e3 * T::epsilon().to_f64_lossy() * scale.max(f64::MIN_POSITIVE);
        self.min_modulus > floor && self.winding == 0
    }
}

/// Truncation at degree `cap` of `exp(a · log f)` with the branch fixed by the
/// principal power at `f(0)`.
///
/// Integer exponents are computed by exact polynomial multiplication and do
/// not need the zero check.
pub fn zero_free_power<T: Real>(f: &TaylorSeries<T>, exponent: Ratio<u32>, cap: usize) -> Result<TaylorSeries<T>> {
    if !f.is_exact() {
        return Err(Error::domain("zero_free_power needs an exact polynomial"));
    }
    if exponent.numer().is_zero() {
        return Err(Error::domain("exponent must be positive"));
    }
    let coeffs = &f.coeffs()[..=f.degree()];
    if exponent.is_integer() {
        let e = exponent.to_integer();
        let full = poly_pow(coeffs, e);
        let exact = full.len() <= cap + 1;
        let mut out: Vec<C<T>> = full.into_iter().take(cap + 1).collect();
        out.resize(cap + 1, C::zero());
        return Ok(if exact { TaylorSeries::polynomial(out) } else { TaylorSeries::truncated(out) });
    }
    let check = OuterCheck::run(f);
    if !check.is_zero_free(f) {
        return Err(Error::NotOuterSafe(format!(
            "polynomial may vanish in |z| <= {} (min modulus {:e}, winding {})",
            1.0 + OUTER_MARGIN,
            check.min_modulus,
            check.winding
        )));
    }
    let a = T::of(*exponent.numer() as f64 / *exponent.denom() as f64);
    let f0 = coeffs[0];
    let mut g = Vec::with_capacity(cap + 1);
    g.push(f0.powf(a));
    for k in 1..=cap {
        let mut acc = C::<T>::zero();
        for j in 1..=k.min(coeffs.len() - 1) {
            let w = (a + T::one()) * T::of_usize(j) - T::of_usize(k);
            acc += coeffs[j] * g[k - j] * w;
        }
        g.push(acc / (f0 * T::of_usize(k)));
    }
    Ok(TaylorSeries::truncated(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    #[test]
    fn constant_square_root() {
        let g = zero_free_power(&TaylorSeries::<f64>::from_real(&[4.0]), Ratio::new(1, 2), 4).unwrap();
        assert!((g.coeff(0) - cplx(2.0, 0.0)).norm() < 1e-15);
        assert!(g.coeffs()[1..].iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn exact_squaring() {
        let g = zero_free_power(&TaylorSeries::<f64>::from_real(&[1.0, 0.5]), Ratio::from_integer(2), 8).unwrap();
        assert!(g.is_exact());
        assert_eq!(&g.coeffs()[..3], &[cplx(1.0, 0.0), cplx(1.0, 0.0), cplx(0.25, 0.0)]);
    }

    #[test]
    fn square_root_squares_back() {
        let f = TaylorSeries::<f64>::from_real(&[1.0, 0.5]);
        let g = zero_free_power(&f, Ratio::new(1, 2), 8).unwrap();
        let exact_g = TaylorSeries::polynomial(g.coeffs().to_vec());
        let sq = exact_g.mul_exact(&exact_g).unwrap();
        for k in 0..=8 {
            assert!((sq.coeff(k) - f.coeff(k)).norm() <= 1e-10, "k={k}");
        }
    }

    #[test]
    fn rejects_zero_inside() {
        let f = TaylorSeries::<f64>::from_real(&[0.5, 1.0]);
        assert!(matches!(zero_free_power(&f, Ratio::new(1, 2), 8), Err(Error::NotOuterSafe(_))));
        let edge = TaylorSeries::<f64>::from_real(&[1.0, 1.0]);
        assert!(matches!(zero_free_power(&edge, Ratio::new(1, 2), 8), Err(Error::NotOuterSafe(_))));
    }
}
