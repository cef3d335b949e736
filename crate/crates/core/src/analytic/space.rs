//! Coefficient spaces: Hardy `H^p` and the weighted Hilbert spaces
//! `Σ |f̂(k)|² (k+1)^{2α}`.

use std::fmt;

use super::{CircleGrid, TaylorSeries};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which function space a norm is taken in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpaceSpec<T> {
    /// Hardy space `H^p`, `p ∈ [1, ∞]` (`p = +∞` is `H^∞`).
    HardyP(T),
    /// Weighted space with weight `(k+1)^{2α}`, `α ∈ [-1, 0]`.
    WeightedA2(T),
}

/// Uniform boundary quadrature size for a polynomial of the given degree.
pub fn quadrature_size(degree: usize) -> usize {
    4096.max(8 * (degree + 1))
}

impl<T: Real> SpaceSpec<T> {
    pub fn hardy(p: T) -> Result<Self> {
        if !(p >= T::one()) {
            return Err(Error::input(format!("Hardy exponent must lie in [1, inf], got {p}")));
        }
        Ok(Self::HardyP(p))
    }

    pub fn weighted(alpha: T) -> Result<Self> {
        if !(alpha >= -T::one() && alpha <= T::zero()) {
            return Err(Error::input(format!("weight exponent must lie in [-1, 0], got {alpha}")));
        }
        Ok(Self::WeightedA2(alpha))
    }

    pub fn h2() -> Self {
        Self::HardyP(T::of(2.0))
    }

    pub fn hinf() -> Self {
        Self::HardyP(T::infinity())
    }

    pub fn bergman() -> Self {
        Self::WeightedA2(T::of(-0.5))
    }

    /// Parses `h2 | h1 | hinf | hp:<p> | bergman | w2:<alpha>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |t: &str| -> Result<T> {
            let v: f64 = t.trim().parse().map_err(|_| Error::input(format!("bad number '{t}' in space '{s}'")))?;
            Ok(T::of(v))
        };
        match s.to_ascii_lowercase().as_str() {
            "h2" => Ok(Self::h2()),
            "h1" => Ok(Self::HardyP(T::one())),
            "hinf" => Ok(Self::hinf()),
            "bergman" => Ok(Self::bergman()),
            other => {
                if let Some(p) = other.strip_prefix("hp:") {
                    if p.trim() == "inf" {
                        return Ok(Self::hinf());
                    }
                    Self::hardy(num(p)?)
                } else if let Some(a) = other.strip_prefix("w2:") {
                    Self::weighted(num(a)?)
                } else {
                    Err(Error::input(format!("unknown space '{s}' (expected h2, h1, hinf, hp:<p>, bergman or w2:<alpha>)")))
                }
            }
        }
    }

    /// Weight exponent when the space is a Hilbert space of the weighted
    /// family (`H²` maps to `α = 0`).
    pub fn hilbert_alpha(&self) -> Option<T> {
        match *self {
            Self::HardyP(p) if p == T::of(2.0) => Some(T::zero()),
            Self::WeightedA2(a) => Some(a),
            _ => None,
        }
    }

    /// Hardy exponent, if this is a Hardy space (`H²` included, even when
    /// written as `w2:0`).
    pub fn hardy_exponent(&self) -> Option<T> {
        match *self {
            Self::HardyP(p) => Some(p),
            Self::WeightedA2(a) if a == T::zero() => Some(T::of(2.0)),
            _ => None,
        }
    }

    pub fn is_hinf(&self) -> bool {
        matches!(*self, Self::HardyP(p) if p.is_infinite())
    }

    pub fn norm(&self, f: &TaylorSeries<T>) -> Result<T> {
        match *self {
            Self::WeightedA2(alpha) => Ok(weighted_norm(f, alpha)),
            Self::HardyP(p) => {
                if !f.is_exact() {
                    if p == T::of(2.0) {
                        return Ok(weighted_norm(f, T::zero()));
                    }
                    if !p.is_infinite() {
                        return Err(Error::domain("H^p norm with p < inf needs an exact polynomial"));
                    }
                }
                let deg = if f.is_exact() { f.degree() } else { f.degree_cap() };
                hardy_norm_on_grid(f, p, quadrature_size(deg))
            }
        }
    }
}

fn weighted_norm<T: Real>(f: &TaylorSeries<T>, alpha: T) -> T {
    let two_alpha = alpha + alpha;
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm_sqr() * T::of_usize(k + 1).powf(two_alpha))
        .sum::<T>()
        .sqrt()
}

/// `(mean over m boundary points of |f|^p)^{1/p}`, or the max for `p = ∞`.
pub(crate) fn hardy_norm_on_grid<T: Real>(f: &TaylorSeries<T>, p: T, m: usize) -> Result<T> {
    let deg = f.degree();
    if m <= deg {
        return Err(Error::Invariant(format!("quadrature size {m} below Nyquist threshold for degree {deg}")));
    }
    let grid = CircleGrid::new(m);
    let vals = f.circle_values(&grid, T::one());
    if p.is_infinite() {
        return Ok(vals.iter().fold(T::zero(), |acc, v| acc.max(v.norm())));
    }
    let mean = vals.iter().map(|v| v.norm().powf(p)).sum::<T>() / T::of_usize(m);
    Ok(mean.powf(T::one() / p))
}

impl<T: Real> fmt::Display for SpaceSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::HardyP(p) if p.is_infinite() => write!(f, "hinf"),
            Self::HardyP(p) if p == T::of(2.0) => write!(f, "h2"),
            Self::HardyP(p) if p == T::one() => write!(f, "h1"),
            Self::HardyP(p) => write!(f, "hp:{p}"),
            Self::WeightedA2(a) if a == T::of(-0.5) => write!(f, "bergman"),
            Self::WeightedA2(a) => write!(f, "w2:{a}"),
        }
    }
}
