//! Function arithmetic on the disc: truncated Taylor series, Hardy and
//! weighted norms, the Cauchy pairing, Fejér multipliers and analytic
//! powers of zero-free functions.

pub mod circle;
mod fejer;
mod power;
mod space;

use std::ops::{Add, Mul};

use num_traits::{One, Zero};

pub use circle::{boundary_ladder, CircleGrid, DISC_ANGLES, SUP_ANGLES};
pub use fejer::{fejer_half_width, fejer_multiplier};
pub use power::{zero_free_power, OuterCheck, OUTER_MARGIN};
pub use space::{quadrature_size, SpaceSpec};

use crate::error::{Error, Result};
use crate::scalar::{real, Real, C};

/// Truncated power series `Σ_{k ≤ D} f̂(k) z^k`.
///
/// `exact` marks a polynomial that is fully represented by its stored
/// coefficients; otherwise the stored coefficients are the truncation of an
/// analytic function at degree `D = degree_cap()`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries<T> {
    coeffs: Vec<C<T>>,
    exact: bool,
}

impl<T: Real> TaylorSeries<T> {
    /// Exact polynomial. An empty coefficient list is the zero polynomial.
    pub fn polynomial(coeffs: Vec<C<T>>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![C::zero()] } else { coeffs };
        Self { coeffs, exact: true }
    }

    /// Truncation of a non-polynomial analytic function.
    pub fn truncated(coeffs: Vec<C<T>>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![C::zero()] } else { coeffs };
        Self { coeffs, exact: false }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::polynomial(coeffs.iter().map(|&c| real(T::of(c))).collect())
    }

    pub fn constant(c: C<T>) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = C::one();
        Self::polynomial(coeffs)
    }

    pub fn zero(cap: usize) -> Self {
        Self::polynomial(vec![C::zero(); cap + 1])
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C<T>> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C<T> {
        self.coeffs.get(k).copied().unwrap_or_else(C::zero)
    }

    pub fn degree_cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Index of the last nonzero coefficient (0 for the zero series).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Re-truncates or zero-pads to `cap`. Cutting nonzero coefficients of
    /// an exact polynomial makes the result inexact.
    pub fn with_cap(&self, cap: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        let exact = self.exact && self.degree() <= cap;
        coeffs.resize(cap + 1, C::zero());
        Self { coeffs, exact }
    }

    /// Horner evaluation on the open unit disc.
    pub fn evaluate(&self, z: C<T>) -> Result<C<T>> {
        if z.norm() >= T::one() {
            return Err(Error::domain(format!("evaluation point |z| = {} is not inside the unit disc", z.norm())));
        }
        Ok(self.eval_at(z))
    }

    /// Horner evaluation of the stored coefficients anywhere in ℂ.
    pub fn eval_at(&self, z: C<T>) -> C<T> {
        self.coeffs.iter().rev().fold(C::zero(), |acc, &c| acc * z + c)
    }

    /// `⟨h, g⟩ = Σ ĥ(k) conj(ĝ(k))` over the shared coefficient range.
    pub fn cauchy_pairing(&self, other: &Self) -> C<T> {
        self.coeffs.iter().zip(&other.coeffs).fold(C::zero(), |acc, (a, b)| acc + *a * b.conj())
    }

    /// Squared H² norm of the stored coefficients.
    pub fn h2_norm_sqr(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self { coeffs: vec![C::zero()], exact: self.exact };
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * T::of_usize(k)).collect();
        Self { coeffs, exact: self.exact }
    }

    /// Coefficientwise (Hadamard) product.
    pub fn multiplier_apply(&self, mult: &Self) -> Self {
        let cap = self.degree_cap().min(mult.degree_cap());
        let coeffs = (0..=cap).map(|k| self.coeffs[k] * mult.coeffs[k]).collect();
        let exact = self.exact && mult.exact;
        Self { coeffs, exact }
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| c * s).collect(), exact: self.exact }
    }

    /// Highest degree to which the stored data determines the function.
    fn valid_cap(&self) -> Option<usize> {
        if self.exact {
            None
        } else {
            Some(self.degree_cap())
        }
    }

    fn combined_cap(a: &Self, b: &Self) -> Option<usize> {
        match (a.valid_cap(), b.valid_cap()) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    /// `a·self + b·other`, valid up to the smaller truncation.
    pub fn linear_combination(&self, a: C<T>, other: &Self, b: C<T>) -> Self {
        let cap = Self::combined_cap(self, other)
            .unwrap_or_else(|| self.degree_cap().max(other.degree_cap()));
        let coeffs = (0..=cap).map(|k| self.coeff(k) * a + other.coeff(k) * b).collect();
        Self { coeffs, exact: self.exact && other.exact }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.linear_combination(C::one(), other, C::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.linear_combination(C::one(), other, -C::<T>::one())
    }

    /// Product truncated at degree `cap` (or earlier if an inexact factor
    /// does not determine higher coefficients).
    pub fn mul_truncated(&self, other: &Self, cap: usize) -> Self {
        let valid = Self::combined_cap(self, other).map_or(cap, |v| v.min(cap));
        let coeffs = convolve(&self.coeffs[..=self.degree().min(valid)], &other.coeffs, valid);
        let exact = self.exact && other.exact && self.degree() + other.degree() <= valid;
        let mut out = Self { coeffs, exact };
        out.coeffs.resize(valid + 1, C::zero());
        out
    }

    /// Exact product of two polynomials.
    pub fn mul_exact(&self, other: &Self) -> Result<Self> {
        if !(self.exact && other.exact) {
            return Err(Error::domain("exact product needs two exact polynomials"));
        }
        Ok(self.mul_truncated(other, self.degree() + other.degree()))
    }

    /// Multiplies by `(a + b z)`, truncating at `cap`.
    pub fn mul_linear(&self, a: C<T>, b: C<T>, cap: usize) -> Self {
        let factor = Self::polynomial(vec![a, b]);
        self.mul_truncated(&factor, cap)
    }

    /// Divides by `(1 - c z)` as a power series, truncating at `cap`.
    pub fn div_one_minus(&self, c: C<T>, cap: usize) -> Self {
        let cap = self.valid_cap().map_or(cap, |v| v.min(cap));
        let mut out = Vec::with_capacity(cap + 1);
        let mut prev = C::zero();
        for k in 0..=cap {
            prev = self.coeff(k) + c * prev;
            out.push(prev);
        }
        Self { coeffs: out, exact: self.exact && c.is_zero() }
    }

    /// Values on an `m`-point circle of the given radius.
    pub fn circle_values(&self, grid: &CircleGrid<T>, radius: T) -> Vec<C<T>> {
        grid.values(&self.coeffs, radius)
    }

    /// Sup of `|f|` over an `m`-point grid on the unit circle.
    pub fn sup_on_circle(&self, m: usize) -> T {
        let grid = CircleGrid::new(m);
        self.circle_values(&grid, T::one()).iter().fold(T::zero(), |acc, v| acc.max(v.norm()))
    }

    pub fn space_norm(&self, space: &SpaceSpec<T>) -> Result<T> {
        space.norm(self)
    }
}

/// Truncated Cauchy product of two coefficient sequences, generic over any
/// ring-like element (complex floats, exact rationals, integers).
pub fn convolve<E>(a: &[E], b: &[E], cap: usize) -> Vec<E>
where
    E: Clone + Zero + Add<Output = E> + Mul<Output = E>,
{
    let len = (a.len() + b.len()).saturating_sub(1).min(cap + 1);
    let mut out = vec![E::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if i >= len || x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Exact integer power of a coefficient sequence.
pub fn poly_pow<E>(a: &[E], exponent: u32) -> Vec<E>
where
    E: Clone + Zero + One + Add<Output = E> + Mul<Output = E>,
{
    let mut out = vec![E::one()];
    for _ in 0..exponent {
        out = convolve(&out, a, usize::MAX - 1);
    }
    out
}

/// Weighted inner product `Σ ĥ(k) conj(ĝ(k)) (k+1)^{2α}`.
pub fn weighted_inner<T: Real>(h: &TaylorSeries<T>, g: &TaylorSeries<T>, alpha: T) -> C<T> {
    let two_alpha = alpha + alpha;
    h.coeffs()
        .iter()
        .zip(g.coeffs())
        .enumerate()
        .fold(C::zero(), |acc, (k, (a, b))| acc + *a * b.conj() * T::of_usize(k + 1).powf(two_alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn s(c: &[f64]) -> TaylorSeries<f64> {
        TaylorSeries::from_real(c)
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(s(&[1.0, 1.0]).evaluate(C::zero()).unwrap(), C::one());
        let id = s(&[0.0, 1.0]).evaluate(cplx(0.0, 0.5)).unwrap();
        assert!((id - cplx(0.0, 0.5)).norm() < 1e-15);
        let v = s(&[1.0, 2.0, 3.0]).evaluate(cplx(0.1, 0.0)).unwrap();
        assert!((v.re - 1.23).abs() < 1e-14 && v.im == 0.0);
        assert!(matches!(s(&[1.0]).evaluate(cplx(1.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(s(&[1.0, 2.0]).cauchy_pairing(&s(&[1.0, 0.0])), C::one());
        let h = s(&[0.0, 1.0]);
        let g = TaylorSeries::polynomial(vec![C::zero(), cplx(0.0, 1.0)]);
        assert_eq!(h.cauchy_pairing(&g), cplx(0.0, -1.0));
        let f = s(&[1.0, 1.0, 1.0]);
        assert_eq!(f.cauchy_pairing(&f), cplx(3.0, 0.0));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(s(&[7.0]).derivative(), s(&[0.0]));
        assert_eq!(s(&[0.0, 0.0, 1.0]).derivative(), s(&[0.0, 2.0]));
        assert_eq!(s(&[1.0, 1.0, 1.0]).derivative(), s(&[1.0, 2.0]));
    }

    #[test]
    fn multiplier_examples() {
        let f = s(&[1.0, -2.0, 4.0]);
        assert_eq!(f.multiplier_apply(&s(&[1.0, 1.0, 1.0])), f);
        assert_eq!(s(&[1.0, 1.0, 1.0]).multiplier_apply(&s(&[1.0, 0.0, 0.0])), s(&[1.0, 0.0, 0.0]));
        assert_eq!(s(&[2.0, 4.0]).multiplier_apply(&s(&[0.5, 0.25])), s(&[1.0, 1.0]));
    }

    #[test]
    fn products_track_exactness() {
        let a = s(&[1.0, 1.0]);
        let sq = a.mul_exact(&a).unwrap();
        assert_eq!(sq, s(&[1.0, 2.0, 1.0]));
        assert!(sq.is_exact());
        let geo = TaylorSeries::constant(C::one()).div_one_minus(cplx(0.5, 0.0), 10);
        assert!(!geo.is_exact());
        assert!((geo.coeff(3).re - 0.125f64).abs() < 1e-15);
        let back = geo.mul_linear(C::one(), cplx(-0.5, 0.0), 10);
        assert!((back.coeff(0) - C::one()).norm() < 1e-15);
        assert!(back.coeffs()[1..10].iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn generic_convolution_is_exact_on_rationals() {
        use num_rational::Ratio;
        let half = Ratio::new(1i64, 2);
        let a = vec![Ratio::from_integer(1), half];
        assert_eq!(poly_pow(&a, 2), vec![Ratio::from_integer(1), Ratio::from_integer(1), Ratio::new(1, 4)]);
    }
}
