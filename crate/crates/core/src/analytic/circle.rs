//! Uniform grids on circles |z| = ρ, evaluated with one FFT per series.

use std::f64::consts::PI;
use std::sync::Arc;

use num_traits::Zero;
use rustfft::{Fft, FftPlanner};

use crate::scalar::{cis, Real, C};

/// `m` equally spaced points `ρ e^{2πil/m}`, `l = 0..m`.
#[derive(Clone)]
pub struct CircleGrid<T: Real> {
    m: usize,
    fft: Arc<dyn Fft<T>>,
}

impl<T: Real> std::fmt::Debug for CircleGrid<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CircleGrid").field("m", &self.m).finish()
    }
}

impl<T: Real> CircleGrid<T> {
    pub fn new(m: usize) -> Self {
        assert!(m > 0, "empty circle grid");
        let fft = FftPlanner::new().plan_fft_inverse(m);
        Self { m, fft }
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn angle(&self, l: usize) -> T {
        T::of(2.0 * PI * l as f64 / self.m as f64)
    }

    pub fn point(&self, l: usize, radius: T) -> C<T> {
        cis(self.angle(l)) * radius
    }

    /// Values of `Σ_j c_j z^j` at the grid points of radius `radius`.
    /// Coefficients beyond `m` are folded onto their alias class first.
    pub fn values(&self, coeffs: &[C<T>], radius: T) -> Vec<C<T>> {
        let mut buf = vec![C::zero(); self.m];
        let mut rp = T::one();
        for (j, &c) in coeffs.iter().enumerate() {
            buf[j % self.m] += c * rp;
            rp *= radius;
        }
        self.fft.process(&mut buf);
        buf
    }
}

/// Boundary-biased radial ladder `1 - 2^{-j}`, `j = 1..=20`.
pub fn boundary_ladder<T: Real>() -> Vec<T> {
    (1..=20).map(|j| T::one() - T::of(2f64.powi(-j))).collect()
}

/// Angle count used for every circle supremum.
pub const SUP_ANGLES: usize = 4096;

/// Angle count for the disc-supremum of Theorem-B type quantities.
pub const DISC_ANGLES: usize = 512;
