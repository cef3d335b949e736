use num_traits::One;

use crate::analytic::TaylorSeries;
use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::scalar::{Real, C};

fn inside<T: Real>(z: C<T>) -> Result<()> {
    if z.norm() < T::one() {
        Ok(())
    } else {
        Err(Error::domain(format!("kernel point |z| = {} is not inside the unit disc", z.norm())))
    }
}

/// `k_z(ζ) = 1/(1 - conj(z) ζ)` truncated at `cap`.
pub fn szego_kernel<T: Real>(z: C<T>, cap: usize) -> Result<TaylorSeries<T>> {
    inside(z)?;
    Ok(TaylorSeries::constant(C::one()).div_one_minus(z.conj(), cap))
}

/// `(1 - conj(B(z)) B(ζ))/(1 - conj(z) ζ)`, the projection of `k_z` onto
/// `K_B`, truncated at `cap`.
pub fn projected_szego_closed_form<T: Real>(
    b: &BlaschkeProduct<T>,
    z: C<T>,
    cap: usize,
) -> Result<TaylorSeries<T>> {
    inside(z)?;
    let bz = b.eval(z)?;
    let one = TaylorSeries::constant(C::one());
    let num = one.linear_combination(C::one(), &b.series(cap), -bz.conj());
    Ok(num.div_one_minus(z.conj(), cap))
}

/// `((1 - |B(z)|²)/(1 - |z|²))^{1/2}`.
///
/// Evaluated as `(Σ_k |e_k(z)|²)^{1/2}` with
/// `|e_k(z)|² = (1-|λ_k|²)/|1-conj(λ_k)z|² · Π_{j<k} |b_j(z)|²`, which is the
/// same quantity without the cancellation in `1 - |B(z)|²` near the circle.
pub fn projected_szego_norm<T: Real>(b: &BlaschkeProduct<T>, z: C<T>) -> Result<T> {
    inside(z)?;
    Ok(diagonal_sum(b, z)?.sqrt())
}

/// `Σ_k |e_k(z)|²`, also meaningful on the unit circle where it equals
/// `Σ_k (1-|λ_k|²)/|z-λ_k|²`.
pub(crate) fn diagonal_sum<T: Real>(b: &BlaschkeProduct<T>, z: C<T>) -> Result<T> {
    let mut prefix = T::one();
    let mut sum = T::zero();
    for &nd in b.nodes() {
        let den = (C::<T>::one() - nd.conj() * z).norm_sqr();
        if den <= T::epsilon() {
            return Err(Error::domain(format!("z = {z} is a pole of the factor at {nd}")));
        }
        sum += prefix * (T::one() - nd.norm_sqr()) / den;
        prefix *= (nd - z).norm_sqr() / den;
    }
    Ok(sum)
}
