//! Fejér-window coefficient multipliers.

use super::TaylorSeries;
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Window half-width `m`: `n/2` for even `n`, `(n+1)/2` for odd `n`.
pub fn fejer_half_width(n: usize) -> usize {
    n.div_ceil(2)
}

fn window<T: Real>(m: usize, j: i64) -> T {
    let w = 1.0 - j.unsigned_abs() as f64 / (m + 1) as f64;
    T::of(w.max(0.0))
}

/// Analytic-side coefficients `F̂(j) = Φ̂_m(j) + Φ̂_m(j - m)`, `j = 0..=n`,
/// with `Φ̂_m(j) = max(0, 1 - |j|/(m+1))`.
pub fn fejer_multiplier<T: Real>(n: usize) -> Result<TaylorSeries<T>> {
    if n == 0 {
        return Err(Error::domain("Fejér multiplier needs n >= 1"));
    }
    let m = fejer_half_width(n);
    let coeffs = (0..=n as i64)
        .map(|j| real(window::<T>(m, j) + window::<T>(m, j - m as i64)))
        .collect();
    Ok(TaylorSeries::polynomial(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let f2 = fejer_multiplier::<f64>(2).unwrap();
        let got: Vec<f64> = f2.coeffs().iter().map(|c| c.re).collect();
        assert_eq!(got, vec![1.5, 1.5, 0.5]);
        let f1 = fejer_multiplier::<f64>(1).unwrap();
        assert_eq!(f1.coeff(0).re, 1.5);
        assert!(fejer_multiplier::<f64>(0).is_err());
    }

    #[test]
    fn at_least_one_on_the_first_half() {
        for n in 1..=500 {
            let m = fejer_half_width(n);
            let f = fejer_multiplier::<f64>(n).unwrap();
            for j in 0..=m {
                assert!(f.coeff(j).re >= 1.0 - 1e-15, "n={n} j={j}");
            }
        }
    }
}
