//! The model space `K_B = H² ⊖ B H²`: the Malmquist orthonormal basis,
//! orthogonal projection, the compressed shift, reproducing kernels of the
//! weighted spaces and their Gram–Schmidt orthonormalization.

mod kernels;
mod szego;

pub use kernels::{
    gram_schmidt_kernels, kernel_degree_cap, theorem_b_upper_bound, KernelSpec,
};
pub use szego::{projected_szego_closed_form, projected_szego_norm, szego_kernel};

use num_traits::{One, Zero};

use crate::analytic::TaylorSeries;
use crate::blaschke::{eval_factor, NodeSet};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::{real, Real, C};

/// Hard ceiling on automatically chosen truncation degrees.
pub const MAX_DEGREE_CAP: usize = 65536;

/// Truncation degree for expansions attached to `sigma`:
/// `max(256, 8n, D_tail)`, where `D_tail` makes the coefficient tail of every
/// Malmquist function smaller than a small multiple of machine epsilon.
///
/// On `|z| = R > 1` each factor obeys
/// `|b_λ(z)|² ≤ 1 + (R²-1)(1-|λ|²)/(1-|λ|R)²` and the normalized Szegő kernel
/// is at most `√(1-|λ|²)/(1-|λ|R)`, so Cauchy's estimate bounds the `j`-th
/// coefficient by `M_R R^{-j}`. The best `R` on a geometric grid is used.
pub fn default_degree_cap<T: Real>(sigma: &NodeSet<T>) -> usize {
    let mods: Vec<f64> = sigma.flat().iter().map(|l| l.norm().to_f64_lossy()).collect();
    let n = mods.len();
    let tol = T::epsilon().to_f64_lossy() * 0.05;
    let r = mods.iter().cloned().fold(0.0, f64::max);
    let r_max = if r > 0.0 { (1.0 / r).min(1e8) } else { 1e8 };
    let mut best = f64::INFINITY;
    let steps = 400;
    for s in 1..steps {
        let big_r = (r_max.ln() * s as f64 / steps as f64).exp();
        if big_r <= 1.0 {
            continue;
        }
        let mut log_m = 0.0;
        let mut kernel_max: f64 = 0.0;
        let mut ok = true;
        for &a in &mods {
            let den = 1.0 - a * big_r;
            if den <= 0.0 {
                ok = false;
                break;
            }
            log_m += 0.5 * (1.0 + (big_r * big_r - 1.0) * (1.0 - a * a) / (den * den)).ln();
            kernel_max = kernel_max.max((1.0 - a * a).sqrt() / den);
        }
        if !ok {
            continue;
        }
        log_m += kernel_max.ln();
        // Σ_{j>D} (M R^{-j})² ≤ M² R^{-2(D+1)} / (1 - R^{-2})
        let log_r = big_r.ln();
        let tail_den = 0.5 * (1.0 - 1.0 / (big_r * big_r)).ln();
        let d = (log_m - tail_den - tol.ln()) / log_r - 1.0;
        best = best.min(d.max(0.0).ceil());
    }
    let tail = if best.is_finite() { best as usize } else { MAX_DEGREE_CAP };
    256.max(8 * n).max(tail).min(MAX_DEGREE_CAP)
}

/// Orthonormal basis `e_1..e_n` of `K_{B_σ}`:
/// `e_k = (Π_{j<k} b_{λ_j}) · √(1-|λ_k|²)/(1-conj(λ_k) z)`.
///
/// The basis depends on the order of the flat node list.
#[derive(Debug, Clone)]
pub struct MalmquistBasis<T: Real> {
    sigma: NodeSet<T>,
    flat: Vec<C<T>>,
    basis: Vec<TaylorSeries<T>>,
    cap: usize,
}

impl<T: Real> MalmquistBasis<T> {
    pub fn new(sigma: &NodeSet<T>) -> Self {
        Self::build(sigma, default_degree_cap(sigma))
    }

    /// Builds with an explicit truncation degree, which must be at least
    /// [`default_degree_cap`].
    pub fn with_cap(sigma: &NodeSet<T>, cap: usize) -> Result<Self> {
        let need = default_degree_cap(sigma);
        if cap < need {
            return Err(Error::DegreeCap { need, have: cap });
        }
        Ok(Self::build(sigma, cap))
    }

    fn build(sigma: &NodeSet<T>, cap: usize) -> Self {
        let flat = sigma.flat();
        let mut prefix = TaylorSeries::constant(C::one()).with_cap(cap);
        let mut basis = Vec::with_capacity(flat.len());
        for &l in &flat {
            let norm = real((T::one() - l.norm_sqr()).sqrt());
            basis.push(prefix.div_one_minus(l.conj(), cap).scale(norm));
            prefix = prefix.mul_linear(l, -C::<T>::one(), cap).div_one_minus(l.conj(), cap);
        }
        Self { sigma: sigma.clone(), flat, basis, cap }
    }

    pub fn sigma(&self) -> &NodeSet<T> {
        &self.sigma
    }

    pub fn nodes(&self) -> &[C<T>] {
        &self.flat
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    pub fn elements(&self) -> &[TaylorSeries<T>] {
        &self.basis
    }

    pub fn element(&self, k: usize) -> &TaylorSeries<T> {
        &self.basis[k]
    }

    /// `(⟨f, e_k⟩)_k`.
    pub fn coefficients(&self, f: &TaylorSeries<T>) -> Vec<C<T>> {
        self.basis.iter().map(|e| f.cauchy_pairing(e)).collect()
    }

    /// `Σ_k c_k e_k`.
    pub fn combine(&self, c: &[C<T>]) -> TaylorSeries<T> {
        let mut out = TaylorSeries::truncated(vec![C::zero(); self.cap + 1]);
        for (ck, e) in c.iter().zip(&self.basis) {
            out = out.linear_combination(C::one(), e, *ck);
        }
        out
    }

    /// Orthogonal projection `Σ_k ⟨f, e_k⟩ e_k`.
    pub fn project(&self, f: &TaylorSeries<T>) -> TaylorSeries<T> {
        self.combine(&self.coefficients(f))
    }

    /// `G_{jk} = ⟨e_k, e_j⟩`.
    pub fn gram(&self) -> CMatrix<T> {
        let n = self.len();
        CMatrix::from_fn(n, n, |j, k| self.basis[k].cauchy_pairing(&self.basis[j]))
    }

    /// `(e_1(z), ..., e_n(z))` from the closed form, valid off the poles.
    pub fn eval_all(&self, z: C<T>) -> Result<Vec<C<T>>> {
        let mut prefix = C::<T>::one();
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.flat {
            let den = C::<T>::one() - l.conj() * z;
            out.push(prefix * (T::one() - l.norm_sqr()).sqrt() / den);
            prefix *= eval_factor(l, z)?;
        }
        Ok(out)
    }

    /// Matrix of the compressed shift `P_B z|_{K_B}`:
    /// `T_{jk} = ⟨z e_k, e_j⟩`.
    pub fn compressed_shift(&self) -> CMatrix<T> {
        let n = self.len();
        CMatrix::from_fn(n, n, |j, k| {
            let (ek, ej) = (self.basis[k].coeffs(), self.basis[j].coeffs());
            ek.iter().zip(&ej[1..]).fold(C::zero(), |acc, (a, b)| acc + *a * b.conj())
        })
    }

    /// Compressions `e_k(T)` of multiplication by each basis function, built
    /// by rational functional calculus on the compressed shift:
    /// `b_λ(T) = (λ - T)(1 - conj(λ) T)^{-1}`.
    pub fn compressed_basis_elements(&self) -> Result<Vec<CMatrix<T>>> {
        let t = self.compressed_shift();
        let n = self.len();
        let id = CMatrix::<T>::identity(n);
        let mut prefix = id.clone();
        let mut out = Vec::with_capacity(n);
        for &l in &self.flat {
            let mut den = id.clone();
            den.axpy(-l.conj(), &t);
            let resolvent = den.inverse()?;
            let norm = real((T::one() - l.norm_sqr()).sqrt());
            out.push(prefix.matmul(&resolvent).scale(norm));
            let mut num = id.scale(l);
            num.axpy(-C::<T>::one(), &t);
            prefix = prefix.matmul(&num.matmul(&resolvent));
        }
        Ok(out)
    }

    /// `G_{jk} = ⟨e_k', e_j'⟩`, so that `‖(Σ c_k e_k)'‖₂² = c* G c`.
    pub fn derivative_gram(&self) -> CMatrix<T> {
        let d: Vec<TaylorSeries<T>> = self.basis.iter().map(|e| e.derivative()).collect();
        let n = self.len();
        let mut g = CMatrix::from_fn(n, n, |j, k| d[k].cauchy_pairing(&d[j]));
        g.symmetrize();
        g
    }

    /// `f(T)` for a polynomial `f`, by Horner's scheme.
    pub fn compress_polynomial(&self, f: &TaylorSeries<T>) -> CMatrix<T> {
        let t = self.compressed_shift();
        let n = self.len();
        let coeffs = &f.coeffs()[..=f.degree()];
        let mut acc = CMatrix::zeros(n, n);
        for &c in coeffs.iter().rev() {
            acc = acc.matmul(&t);
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn c(re: f64, im: f64) -> C<f64> {
        cplx(re, im)
    }

    #[test]
    fn origin_basis_is_signed_monomials() {
        let b = MalmquistBasis::new(&NodeSet::repeated(c(0.0, 0.0), 3).unwrap());
        let expect = [vec![1.0], vec![0.0, -1.0], vec![0.0, 0.0, 1.0]];
        for (e, want) in b.elements().iter().zip(expect.iter()) {
            assert!(e.is_exact());
            for (k, w) in want.iter().enumerate() {
                assert_eq!(e.coeff(k), c(*w, 0.0));
            }
            assert_eq!(e.degree(), want.len() - 1);
        }
    }

    #[test]
    fn one_node_basis_is_normalized_szego_kernel() {
        let l = c(0.3, -0.4);
        let b = MalmquistBasis::new(&NodeSet::from_points(&[l]).unwrap());
        let s = (1.0 - l.norm_sqr()).sqrt();
        for k in 0..20 {
            assert!((b.element(0).coeff(k) - l.conj().powi(k as i32) * s).norm() < 1e-15);
        }
    }

    #[test]
    fn two_node_gram_is_identity() {
        let b = MalmquistBasis::new(&NodeSet::from_points(&[c(0.5, 0.0), c(-0.3, 0.0)]).unwrap());
        let g = b.gram();
        assert!(g.max_abs_diff(&CMatrix::identity(2)) < 1e-10);
    }

    #[test]
    fn basis_vanishes_at_earlier_nodes() {
        let pts = [c(0.5, 0.1), c(-0.3, 0.4), c(0.2, -0.6)];
        let b = MalmquistBasis::new(&NodeSet::from_points(&pts).unwrap());
        for k in 0..3 {
            for (j, &l) in pts.iter().enumerate().take(k) {
                assert!(b.element(k).evaluate(l).unwrap().norm() < 1e-12, "k={k} j={j}");
            }
            let closed = b.eval_all(c(0.1, 0.2)).unwrap();
            assert!((closed[k] - b.element(k).evaluate(c(0.1, 0.2)).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn projection_examples() {
        let n = 4;
        let b = MalmquistBasis::new(&NodeSet::repeated(c(0.0, 0.0), n).unwrap());
        let f = TaylorSeries::from_real(&[1.0, -2.0, 3.0, 0.5, 7.0, 9.0]);
        let g = b.project(&f);
        for k in 0..10 {
            let want = if k < n { f.coeff(k) } else { C::zero() };
            assert!((g.coeff(k) - want).norm() < 1e-14);
        }
        let b = MalmquistBasis::new(&NodeSet::from_points(&[c(0.4, 0.0)]).unwrap());
        let g = b.project(&TaylorSeries::monomial(1));
        assert!((g.evaluate(c(0.4, 0.0)).unwrap() - c(0.4, 0.0)).norm() < 1e-12);
        let again = b.project(&g);
        assert!(again.sub(&g).coeffs().iter().all(|x| x.norm() < 1e-12));
    }

    #[test]
    fn compressed_calculus_matches_direct_pairing() {
        let pts = [c(0.5, 0.1), c(-0.3, 0.4), c(0.5, 0.1)];
        let b = MalmquistBasis::new(&NodeSet::from_points(&pts).unwrap());
        let f = TaylorSeries::from_real(&[0.3, -1.0, 2.0, 0.25]);
        let horner = b.compress_polynomial(&f);
        let direct = CMatrix::from_fn(3, 3, |j, k| {
            f.mul_truncated(b.element(k), b.degree_cap()).cauchy_pairing(b.element(j))
        });
        assert!(horner.max_abs_diff(&direct) < 1e-12);
        let es = b.compressed_basis_elements().unwrap();
        for (k, ek) in es.iter().enumerate() {
            let direct = CMatrix::from_fn(3, 3, |j, l| {
                b.element(k).mul_truncated(b.element(l), b.degree_cap()).cauchy_pairing(b.element(j))
            });
            assert!(ek.max_abs_diff(&direct) < 1e-12, "k={k}");
        }
    }

    #[test]
    fn degree_cap_grows_near_the_boundary() {
        let small = default_degree_cap(&NodeSet::repeated(c(0.5, 0.0), 4).unwrap());
        assert_eq!(small, 256);
        let big = default_degree_cap(&NodeSet::repeated(c(0.95, 0.0), 12).unwrap());
        assert!(big > 256 && big < MAX_DEGREE_CAP);
        let zero = default_degree_cap(&NodeSet::repeated(c(0.0, 0.0), 40).unwrap());
        assert_eq!(zero, 320);
    }

    #[test]
    fn explicit_cap_below_default_is_rejected() {
        let s = NodeSet::repeated(c(0.95, 0.0), 12).unwrap();
        assert!(matches!(MalmquistBasis::with_cap(&s, 256), Err(Error::DegreeCap { .. })));
    }
}
