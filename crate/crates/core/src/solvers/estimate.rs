use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::pick::{np_value, PickProblem};
use crate::analytic::{quadrature_size, CircleGrid, SpaceSpec, TaylorSeries};
use crate::blaschke::NodeSet;
use crate::bounds::{witness_big_psi, WitnessPower};
use crate::error::{Error, Result};
use crate::linalg::{vec_norm, CMatrix};
use crate::model_space::{gram_schmidt_kernels, KernelSpec, MalmquistBasis};
use crate::scalar::{cis, Real, C};

/// Random starts of the interpolation-constant search.
pub const ESTIMATE_STARTS: usize = 32;

/// Random starts of the Carleson-constant search.
pub const CARLESON_STARTS: usize = 64;

fn rng_for(seed: u64, start: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start as u64);
    rng
}

fn gaussian_vec<T: Real>(rng: &mut ChaCha8Rng, len: usize) -> Vec<C<T>> {
    (0..len)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C::new(T::of(re), T::of(im))
        })
        .collect()
}

fn normalized<T: Real>(v: Vec<C<T>>) -> Vec<C<T>> {
    let n = vec_norm(&v);
    if n > T::zero() {
        v.into_iter().map(|z| z / n).collect()
    } else {
        v
    }
}

/// Highest value wins; ties go to the lowest start index.
fn best_of<T: Real, R>(runs: Vec<(T, R)>) -> Option<(usize, T, R)> {
    let mut best: Option<(usize, T, R)> = None;
    for (i, (v, r)) in runs.into_iter().enumerate() {
        if best.as_ref().is_none_or(|(_, bv, _)| v > *bv) {
            best = Some((i, v, r));
        }
    }
    best
}

fn combination<T: Real>(mats: &[CMatrix<T>], u: &[C<T>]) -> CMatrix<T> {
    let n = mats[0].rows();
    let mut m = CMatrix::zeros(n, n);
    for (a, &ul) in mats.iter().zip(u) {
        m.axpy(ul, a);
    }
    m
}

/// Block-coordinate ascent of `Re y* (Σ u_l A_l) x` over unit `x`, `y`, `u`.
/// Every block update is an exact maximization, so the value never
/// decreases; the returned value is the exact norm at the final `u`.
fn ascend_linear_family<T: Real>(mats: &[CMatrix<T>], u0: Vec<C<T>>, sweeps: usize) -> Result<(T, Vec<C<T>>)> {
    let mut u = normalized(u0);
    let mut m = combination(mats, &u);
    let trip = m.top_singular()?;
    let (mut x, mut y) = (trip.x, trip.y);
    let mut value = trip.value;
    for _ in 0..sweeps {
        let a: Vec<C<T>> = mats.iter().map(|ml| crate::linalg::vdot(&y, &ml.matvec(&x))).collect();
        if vec_norm(&a) == T::zero() {
            break;
        }
        u = normalized(a.into_iter().map(|z| z.conj()).collect());
        m = combination(mats, &u);
        let mx_adj = m.adjoint().matvec(&y);
        x = normalized(mx_adj);
        let mx = m.matvec(&x);
        let next = vec_norm(&mx);
        y = normalized(mx);
        let done = next <= value * (T::one() + T::of(1e-14));
        value = value.max(next);
        if done {
            break;
        }
    }
    Ok((m.spectral_norm()?.max(value), u))
}

/// A lower estimate of the interpolation constant with its witness.
#[derive(Debug, Clone)]
pub struct CSigmaEstimate<T: Real> {
    pub value: T,
    /// Unit-norm element of the space whose quotient norm is `value`
    /// (for even `p`, the best direct-search polynomial).
    pub witness: TaylorSeries<T>,
    /// Index of the winning start.
    pub start: usize,
    /// For even `p > 2`: true when the value is the `H²` estimate raised to
    /// the power `2/p` rather than a direct-search value.
    pub transferred: bool,
}

/// Multi-start lower estimate of `sup_{‖f‖_X ≤ 1} ‖f‖_{H^∞/B_σ H^∞}`.
///
/// Hilbert spaces of the weighted scale search the unit sphere of the span
/// of the kernels at `sigma`; even `p > 2` searches polynomials of degree
/// `2n` and also uses `E_{H²}^{2/p}`. `budget` is the sweep count per start.
pub fn c_sigma_estimate<T: Real>(
    sigma: &NodeSet<T>,
    space: &SpaceSpec<T>,
    budget: usize,
    seed: u64,
) -> Result<CSigmaEstimate<T>> {
    if budget == 0 {
        return Err(Error::input("budget must be at least 1"));
    }
    if let Some(alpha) = space.hilbert_alpha() {
        return hilbert_estimate(sigma, alpha, budget, seed);
    }
    match space.hardy_exponent() {
        Some(p) if p.is_finite() && p > T::of(2.0) && (p / T::of(2.0)).fract() == T::zero() => {
            hardy_even_estimate(sigma, p, budget, seed)
        }
        _ => Err(Error::Unsupported(format!("interpolation-constant search in {space}"))),
    }
}

fn hilbert_estimate<T: Real>(sigma: &NodeSet<T>, alpha: T, budget: usize, seed: u64) -> Result<CSigmaEstimate<T>> {
    let basis = MalmquistBasis::new(sigma);
    let n = basis.len();
    let spec = KernelSpec::new(alpha)?;
    let g: Vec<TaylorSeries<T>> = if alpha == T::zero() {
        basis.elements().to_vec()
    } else {
        gram_schmidt_kernels(sigma, &spec, basis.degree_cap())?
    };
    let e_mats = basis.compressed_basis_elements()?;
    let mats: Vec<CMatrix<T>> = g
        .iter()
        .map(|gl| {
            let coords = basis.coefficients(gl);
            combination(&e_mats, &coords)
        })
        .collect();

    // Warm starts: the normalized kernel at each distinct node, whose
    // coordinates in an orthonormal basis are conj(g_l(λ)).
    let mut warm: Vec<Vec<C<T>>> = sigma
        .distinct()
        .iter()
        .map(|nd| g.iter().map(|gl| gl.evaluate(nd.lambda).map(|v| v.conj())).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let nodes = sigma.distinct();
    if nodes.len() == 1 && (alpha == T::zero() || alpha == T::of(-0.5)) {
        let power = if alpha == T::zero() { WitnessPower::One } else { WitnessPower::Two };
        let psi = witness_big_psi(&basis, power);
        warm.push(g.iter().map(|gl| spec.inner(&psi, gl)).collect());
    }

    let starts = ESTIMATE_STARTS.max(warm.len());
    let runs = (0..starts)
        .into_par_iter()
        .map(|s| {
            let u0 = if s < warm.len() { warm[s].clone() } else { gaussian_vec(&mut rng_for(seed, s), n) };
            ascend_linear_family(&mats, u0, budget)
        })
        .collect::<Result<Vec<_>>>()?;
    let (start, value, u) = best_of(runs).expect("at least one start");
    let mut witness = TaylorSeries::truncated(vec![C::zero(); g[0].degree_cap() + 1]);
    for (gl, &ul) in g.iter().zip(&u) {
        witness = witness.linear_combination(C::one(), gl, ul);
    }
    Ok(CSigmaEstimate { value, witness, start, transferred: false })
}

struct PolySearch<T: Real> {
    powers: Vec<CMatrix<T>>,
    /// `table[l][j] = e^{i j θ_l}`
    table: Vec<Vec<C<T>>>,
    p: T,
}

impl<T: Real> PolySearch<T> {
    fn new(basis: &MalmquistBasis<T>, degree: usize, p: T) -> Self {
        let t = basis.compressed_shift();
        let n = basis.len();
        let mut powers = vec![CMatrix::identity(n)];
        for j in 1..=degree {
            powers.push(powers[j - 1].matmul(&t));
        }
        let m = quadrature_size(degree);
        let grid = CircleGrid::<T>::new(m);
        let table = (0..m).map(|l| (0..=degree).map(|j| grid.point(l, T::one()).powu(j as u32)).collect()).collect();
        Self { powers, table, p }
    }

    fn values(&self, c: &[C<T>]) -> Vec<C<T>> {
        self.table.iter().map(|row| row.iter().zip(c).fold(C::zero(), |a, (e, ci)| a + *e * *ci)).collect()
    }

    fn lp_norm(&self, vals: &[C<T>]) -> T {
        let mean = vals.iter().map(|v| v.norm().powf(self.p)).sum::<T>() / T::of_usize(vals.len());
        mean.powf(self.p.recip())
    }

    fn ratio(&self, c: &[C<T>], vals: &[C<T>]) -> Result<T> {
        let den = self.lp_norm(vals);
        if den == T::zero() {
            return Ok(T::zero());
        }
        Ok(combination(&self.powers, c).spectral_norm()? / den)
    }

    fn ascend(&self, mut c: Vec<C<T>>, sweeps: usize) -> Result<(T, Vec<C<T>>)> {
        let mut vals = self.values(&c);
        let scale = self.lp_norm(&vals);
        if scale > T::zero() {
            c.iter_mut().for_each(|z| *z = *z / scale);
            vals.iter_mut().for_each(|z| *z = *z / scale);
        }
        let mut best = self.ratio(&c, &vals)?;
        let mut step = T::of(0.25);
        let dirs = [C::new(T::one(), T::zero()), C::new(-T::one(), T::zero()), C::new(T::zero(), T::one()), C::new(T::zero(), -T::one())];
        for _ in 0..sweeps {
            let mut improved = false;
            for j in 0..c.len() {
                for &d in &dirs {
                    let delta = d * step;
                    c[j] += delta;
                    let trial: Vec<C<T>> = vals.iter().zip(&self.table).map(|(v, row)| *v + row[j] * delta).collect();
                    let r = self.ratio(&c, &trial)?;
                    if r > best {
                        best = r;
                        vals = trial;
                        improved = true;
                        break;
                    }
                    c[j] -= delta;
                }
            }
            if !improved {
                step = step * T::of(0.5);
                if step < T::of(1e-6) {
                    break;
                }
            }
        }
        Ok((best, c))
    }
}

fn hardy_even_estimate<T: Real>(sigma: &NodeSet<T>, p: T, budget: usize, seed: u64) -> Result<CSigmaEstimate<T>> {
    let basis = MalmquistBasis::new(sigma);
    let degree = 2 * basis.len();
    let search = PolySearch::new(&basis, degree, p);
    let runs = (0..ESTIMATE_STARTS)
        .into_par_iter()
        .map(|s| {
            let c0 = if s == 0 {
                let mut c = vec![C::zero(); degree + 1];
                c[0] = C::one();
                c
            } else {
                gaussian_vec(&mut rng_for(seed, s), degree + 1)
            };
            search.ascend(c0, budget)
        })
        .collect::<Result<Vec<_>>>()?;
    let (start, direct, c) = best_of(runs).expect("at least one start");
    let h2 = hilbert_estimate(sigma, T::zero(), budget, seed)?;
    let transferred_value = h2.value.powf(T::of(2.0) / p);
    let witness = TaylorSeries::polynomial(c);
    if transferred_value > direct {
        Ok(CSigmaEstimate { value: transferred_value, witness, start, transferred: true })
    } else {
        Ok(CSigmaEstimate { value: direct, witness, start, transferred: false })
    }
}

/// Lower estimate of the Carleson interpolation constant.
#[derive(Debug, Clone)]
pub struct CarlesonEstimate<T> {
    pub value: T,
    /// The unimodular data attaining `value`.
    pub data: Vec<C<T>>,
    /// Pick-route value at the same data (cross-check).
    pub np_value: T,
    pub start: usize,
}

/// Maximizes the quotient norm of the minimal interpolant over unimodular
/// data `a_i = e^{iθ_i}` by coordinate ascent in the phases.
pub fn carleson_estimate<T: Real>(sigma: &NodeSet<T>, budget: usize, seed: u64) -> Result<CarlesonEstimate<T>> {
    if budget == 0 {
        return Err(Error::input("budget must be at least 1"));
    }
    if sigma.nodes().iter().any(|nd| nd.mult > 1) || !sigma.is_separated(T::of(1e-10)) {
        return Err(Error::domain("Carleson constant needs distinct nodes"));
    }
    let basis = MalmquistBasis::new(sigma);
    let n = basis.len();
    let e_mats = basis.compressed_basis_elements()?;
    let rows: Vec<Vec<C<T>>> = basis.nodes().iter().map(|&l| basis.eval_all(l)).collect::<Result<_>>()?;
    let coords = |a: &[C<T>]| -> Vec<C<T>> {
        let mut c: Vec<C<T>> = Vec::with_capacity(n);
        for i in 0..n {
            let partial = (0..i).fold(C::zero(), |acc, k| acc + rows[i][k] * c[k]);
            c.push((a[i] - partial) / rows[i][i]);
        }
        c
    };
    let objective = |theta: &[T]| -> Result<T> {
        let a: Vec<C<T>> = theta.iter().map(|&t| cis(t)).collect();
        combination(&e_mats, &coords(&a)).spectral_norm()
    };
    let runs = (0..CARLESON_STARTS)
        .into_par_iter()
        .map(|s| -> Result<(T, Vec<T>)> {
            let mut theta: Vec<T> = if s == 0 {
                vec![T::zero(); n]
            } else {
                let mut rng = rng_for(seed, s);
                (0..n).map(|_| T::of(rng.random::<f64>() * std::f64::consts::TAU)).collect()
            };
            let mut best = objective(&theta)?;
            let mut step = T::of(0.5);
            for _ in 0..budget {
                let mut improved = false;
                for i in 0..n {
                    for sign in [T::one(), -T::one()] {
                        let old = theta[i];
                        theta[i] = old + sign * step;
                        let v = objective(&theta)?;
                        if v > best {
                            best = v;
                            improved = true;
                            break;
                        }
                        theta[i] = old;
                    }
                }
                if !improved {
                    step = step * T::of(0.5);
                    if step < T::of(1e-8) {
                        break;
                    }
                }
            }
            Ok((best, theta))
        })
        .collect::<Result<Vec<_>>>()?;
    let (start, value, theta) = best_of(runs).expect("at least one start");
    let data: Vec<C<T>> = theta.iter().map(|&t| cis(t)).collect();
    let prob = PickProblem::new(basis.nodes().to_vec(), data.clone())?;
    let np = np_value(&prob, T::of(1e-10).max(T::epsilon() * T::of(64.0)))?;
    Ok(CarlesonEstimate { value, data, np_value: np, start })
}
