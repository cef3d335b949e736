//! Small dense complex matrices: Hermitian Jacobi eigensolver, spectral
//! norms and LU solves. Sizes here stay below a few dozen rows.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{fabs, real, Real, C};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: C<T>, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(C::one(), other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(-C::<T>::one(), other);
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(C::zero(), |acc, j| acc + self[(i, j)] * v[j]))
            .collect()
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    /// Largest deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> T {
        let mut d = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    /// Replaces the matrix by `(M + M*)/2`.
    pub fn symmetrize(&mut self) {
        let half = T::of(0.5);
        for i in 0..self.rows {
            for j in i..self.cols {
                let avg = (self[(i, j)] + self[(j, i)].conj()) * half;
                self[(i, j)] = avg;
                self[(j, i)] = avg.conj();
            }
        }
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Eigenvalues are returned in ascending order with the
    /// eigenvectors as the matching columns of the second result.
    pub fn hermitian_eigen(&self) -> Result<(Vec<T>, CMatrix<T>)> {
        if !self.is_square() {
            return Err(Error::domain("eigen-decomposition of a non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.clone();
        a.symmetrize();
        let mut v = Self::identity(n);
        let scale = a.frobenius();
        if scale.is_zero() || n == 1 {
            let vals = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok((vals, v));
        }
        let tol = T::epsilon() * scale * T::of(1e-2);
        let mut converged = false;
        for _sweep in 0..100 {
            let mut off = T::zero();
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= tol {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let g = apq.norm();
                    if g <= tol * T::of(1e-3) {
                        continue;
                    }
                    let phase = apq / g;
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let tau = (aqq - app) / (g + g);
                    let t = if tau >= T::zero() {
                        T::one() / (tau + (T::one() + tau * tau).sqrt())
                    } else {
                        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;
                    // G = diag(1, conj(phase)) * [[c, s], [-s, c]] in the (p, q) plane.
                    let gpp = real(c);
                    let gpq = real(s);
                    let gqp = phase.conj() * (-s);
                    let gqq = phase.conj() * c;
                    // A <- A G
                    for i in 0..n {
                        let aip = a[(i, p)];
                        let aiq = a[(i, q)];
                        a[(i, p)] = aip * gpp + aiq * gqp;
                        a[(i, q)] = aip * gpq + aiq * gqq;
                    }
                    // A <- G* A
                    for j in 0..n {
                        let apj = a[(p, j)];
                        let aqj = a[(q, j)];
                        a[(p, j)] = gpp.conj() * apj + gqp.conj() * aqj;
                        a[(q, j)] = gpq.conj() * apj + gqq.conj() * aqj;
                    }
                    a[(p, q)] = C::zero();
                    a[(q, p)] = C::zero();
                    a[(p, p)] = real(a[(p, p)].re);
                    a[(q, q)] = real(a[(q, q)].re);
                    for i in 0..n {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = vip * gpp + viq * gqp;
                        v[(i, q)] = vip * gpq + viq * gqq;
                    }
                }
            }
        }
        if !converged {
            return Err(Error::Convergence("Jacobi eigensolver exceeded 100 sweeps".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
        let vals = order.iter().map(|&i| a[(i, i)].re).collect();
        let vecs = Self::from_fn(n, n, |i, j| v[(i, order[j])]);
        Ok((vals, vecs))
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        Ok(self.hermitian_eigen()?.0[0])
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> Result<T> {
        Ok(self.top_singular()?.value)
    }

    /// Largest singular value with unit singular vectors: `A x = value * y`.
    pub fn top_singular(&self) -> Result<SingularTriplet<T>> {
        let gram = self.adjoint().matmul(self);
        let (vals, vecs) = gram.hermitian_eigen()?;
        let k = vals.len() - 1;
        let value = vals[k].max(T::zero()).sqrt();
        let x: Vec<C<T>> = (0..vecs.rows()).map(|i| vecs[(i, k)]).collect();
        let ax = self.matvec(&x);
        let norm = ax.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        let y = if norm > T::zero() {
            ax.iter().map(|&z| z / norm).collect()
        } else {
            let mut e = vec![C::zero(); self.rows];
            e[0] = C::one();
            e
        };
        Ok(SingularTriplet { value, x, y })
    }

    /// Solves `self * X = rhs` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, rhs: &CMatrix<T>) -> Result<CMatrix<T>> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(Error::domain("solve: shape mismatch"));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        let scale = a.max_abs();
        for col in 0..n {
            let (piv, best) = (col..n)
                .map(|i| (i, a[(i, col)].norm()))
                .fold((col, -T::one()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= scale * T::epsilon() {
                return Err(Error::domain("solve: matrix is numerically singular"));
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                }
                for j in 0..b.cols {
                    b.data.swap(col * b.cols + j, piv * b.cols + j);
                }
            }
            let d = a[(col, col)];
            for i in (col + 1)..n {
                let f = a[(i, col)] / d;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = a[(col, j)];
                    a[(i, j)] -= f * t;
                }
                for j in 0..b.cols {
                    let t = b[(col, j)];
                    b[(i, j)] -= f * t;
                }
            }
        }
        let mut x = CMatrix::zeros(n, b.cols);
        for j in 0..b.cols {
            for i in (0..n).rev() {
                let mut s = b[(i, j)];
                for k in (i + 1)..n {
                    s -= a[(i, k)] * x[(k, j)];
                }
                x[(i, j)] = s / a[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<CMatrix<T>> {
        self.solve(&Self::identity(self.rows))
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Debug, Clone)]
pub struct SingularTriplet<T> {
    pub value: T,
    pub x: Vec<C<T>>,
    pub y: Vec<C<T>>,
}

/// Euclidean norm of a complex vector.
pub fn vec_norm<T: Real>(v: &[C<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// `sum conj(a_i) b_i`.
pub fn vdot<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    a.iter().zip(b).fold(C::zero(), |acc, (x, y)| acc + x.conj() * *y)
}

pub(crate) fn max_abs_real<T: Real>(xs: impl IntoIterator<Item = T>) -> T {
    xs.into_iter().fold(T::zero(), |m, x| m.max(fabs(x)))
}
