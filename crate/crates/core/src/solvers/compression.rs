use crate::analytic::TaylorSeries;
use crate::blaschke::NodeSet;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::model_space::{default_degree_cap, MalmquistBasis};
use crate::scalar::{Real, C};

/// Matrix of `h ↦ P_B(f h)` on `K_B` in a Malmquist basis.
#[derive(Debug, Clone)]
pub struct CompressionMatrix<T: Real> {
    pub entries: CMatrix<T>,
    /// Flat node order of the basis the entries refer to.
    pub nodes: Vec<C<T>>,
    pub symbol: TaylorSeries<T>,
}

impl<T: Real> CompressionMatrix<T> {
    pub fn norm(&self) -> Result<T> {
        self.entries.spectral_norm()
    }
}

/// `entries[j][k] = ⟨f e_k, e_j⟩`.
///
/// `f` must be an exact polynomial with `deg f + n ≤ D`, or a truncated
/// series known to at least the basis degree `D`.
pub fn compression_matrix<T: Real>(f: &TaylorSeries<T>, basis: &MalmquistBasis<T>) -> Result<CompressionMatrix<T>> {
    let n = basis.len();
    let cap = basis.degree_cap();
    if f.is_exact() {
        if f.degree() + n > cap {
            return Err(Error::DegreeCap { need: f.degree() + n, have: cap });
        }
    } else if f.degree_cap() < cap {
        return Err(Error::DegreeCap { need: cap, have: f.degree_cap() });
    }
    let products: Vec<TaylorSeries<T>> = basis.elements().iter().map(|e| f.mul_truncated(e, cap)).collect();
    let entries = CMatrix::from_fn(n, n, |j, k| products[k].cauchy_pairing(basis.element(j)));
    Ok(CompressionMatrix { entries, nodes: basis.nodes().to_vec(), symbol: f.clone() })
}

/// `‖f‖_{H^∞/B_σ H^∞}` as the norm of the compressed multiplication by `f`.
pub fn quotient_norm<T: Real>(f: &TaylorSeries<T>, sigma: &NodeSet<T>) -> Result<T> {
    let need = if f.is_exact() { f.degree() + sigma.n() } else { f.degree_cap() };
    let cap = default_degree_cap(sigma).max(need);
    let basis = MalmquistBasis::with_cap(sigma, cap)?;
    quotient_norm_in(f, &basis)
}

/// [`quotient_norm`] reusing a prebuilt basis.
pub fn quotient_norm_in<T: Real>(f: &TaylorSeries<T>, basis: &MalmquistBasis<T>) -> Result<T> {
    compression_matrix(f, basis)?.norm()
}
