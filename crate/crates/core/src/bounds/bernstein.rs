use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::constants::{bernstein_alpha, bernstein_cap};
use crate::blaschke::NodeSet;
use crate::error::{Error, Result};
use crate::linalg::vec_norm;
use crate::model_space::MalmquistBasis;
use crate::scalar::{cis, cplx, Real, C};

/// Outcome of random trials of `‖f'‖₂ ≤ α ‖f‖₂` on model spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinTrials<T> {
    /// Largest observed `‖f'‖₂/‖f‖₂`.
    pub max_ratio: T,
    /// Largest exact supremum `λ_max(G)^{1/2}` over the drawn node sets.
    pub max_sup: T,
    pub alpha: T,
    pub cap: T,
    /// Trials whose ratio exceeds `alpha`.
    pub violations: usize,
}

/// Node set of size `n` with one node of modulus exactly `r` and the rest
/// uniform in modulus on `[0, r]`, arguments uniform.
pub fn random_nodes<T: Real>(n: usize, r: T, rng: &mut impl Rng) -> Result<NodeSet<T>> {
    let pts: Vec<C<T>> = (0..n)
        .map(|k| {
            let rho = if k == 0 { r } else { r * T::of(rng.random::<f64>()) };
            cis(T::of(rng.random::<f64>() * std::f64::consts::TAU)) * rho
        })
        .collect();
    NodeSet::from_points(&pts)
}

/// Runs `trials` independent draws of a node set and a unit element of its
/// model space. Trial `t` uses stream `t` of a generator keyed on `seed`.
pub fn bernstein_trials<T: Real>(n: usize, r: T, trials: usize, seed: u64) -> Result<BernsteinTrials<T>> {
    if n == 0 || trials == 0 {
        return Err(Error::input("n and trials must be at least 1"));
    }
    let alpha = bernstein_alpha(n, r)?.value;
    let cap = bernstein_cap(n, r)?;
    let per_trial: Vec<(T, T)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let sigma = random_nodes(n, r, &mut rng)?;
            let basis = MalmquistBasis::new(&sigma);
            let g = basis.derivative_gram();
            let c: Vec<C<T>> = (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    cplx(T::of(re), T::of(im))
                })
                .collect();
            let num = crate::linalg::vdot(&c, &g.matvec(&c)).re.max(T::zero()).sqrt();
            let ratio = num / vec_norm(&c);
            let sup = crate::linalg::max_abs_real(g.hermitian_eigen()?.0).sqrt();
            Ok((ratio, sup))
        })
        .collect::<Result<_>>()?;
    let mut out = BernsteinTrials { max_ratio: T::zero(), max_sup: T::zero(), alpha, cap, violations: 0 };
    for (ratio, sup) in per_trial {
        out.max_ratio = out.max_ratio.max(ratio);
        out.max_sup = out.max_sup.max(sup);
        if ratio > alpha {
            out.violations += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trials_stay_below_alpha() {
        for &r in &[0.0f64, 0.5, 0.9] {
            let t = bernstein_trials(4, r as f64, 50, 3).unwrap();
            assert_eq!(t.violations, 0);
            assert!(t.max_ratio <= t.max_sup + 1e-9);
            assert!(t.max_sup <= t.alpha && t.alpha <= t.cap);
        }
    }

    #[test]
    fn origin_nodes_give_polynomials() {
        // K_B = polynomials of degree < n, so the sup is n - 1
        let t = bernstein_trials(5, 0.0f64, 3, 0).unwrap();
        assert!((t.max_sup - 4.0).abs() < 1e-9);
    }
}
