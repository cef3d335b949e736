//! Finite Blaschke products over node multisets.

use num_traits::{One, Zero};

use crate::analytic::TaylorSeries;
use crate::error::{Error, Result};
use crate::json::NodeRecord;
use crate::scalar::{real, Real, C};

/// A node `λ` with multiplicity `mult`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node<T> {
    pub lambda: C<T>,
    pub mult: usize,
}

/// Finite multiset of points in the open unit disc, in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet<T> {
    nodes: Vec<Node<T>>,
}

impl<T: Real> NodeSet<T> {
    pub fn new(nodes: Vec<Node<T>>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::input("node set is empty"));
        }
        for node in &nodes {
            if node.mult == 0 {
                return Err(Error::input("node multiplicity must be at least 1"));
            }
            if !(node.lambda.norm() < T::one()) {
                return Err(Error::input(format!("node {} is not inside the unit disc", node.lambda)));
            }
        }
        Ok(Self { nodes })
    }

    /// One node per entry, each with multiplicity one.
    pub fn from_points(points: &[C<T>]) -> Result<Self> {
        Self::new(points.iter().map(|&lambda| Node { lambda, mult: 1 }).collect())
    }

    /// `{λ}` repeated `n` times.
    pub fn repeated(lambda: C<T>, n: usize) -> Result<Self> {
        Self::new(vec![Node { lambda, mult: n }])
    }

    pub fn from_records(recs: &[NodeRecord]) -> Result<Self> {
        let nodes = recs
            .iter()
            .map(|r| {
                if !(r.re.is_finite() && r.im.is_finite()) {
                    return Err(Error::input(format!("non-finite node {r:?}")));
                }
                Ok(Node { lambda: C::new(T::of(r.re), T::of(r.im)), mult: r.mult })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(nodes)
    }

    /// Parses the `[{"re","im","mult"}]` schema.
    pub fn from_json(text: &str) -> Result<Self> {
        let recs: Vec<NodeRecord> =
            serde_json::from_str(text).map_err(|e| Error::input(format!("malformed node set: {e}")))?;
        Self::from_records(&recs)
    }

    pub fn to_records(&self) -> Vec<NodeRecord> {
        self.nodes
            .iter()
            .map(|nd| NodeRecord { re: nd.lambda.re.to_f64_lossy(), im: nd.lambda.im.to_f64_lossy(), mult: nd.mult })
            .collect()
    }

    pub fn nodes(&self) -> &[Node<T>] {
        &self.nodes
    }

    /// Total count with multiplicity.
    pub fn n(&self) -> usize {
        self.nodes.iter().map(|nd| nd.mult).sum()
    }

    /// Largest node modulus.
    pub fn r(&self) -> T {
        self.nodes.iter().fold(T::zero(), |acc, nd| acc.max(nd.lambda.norm()))
    }

    /// Flat list `λ_1, ..., λ_n` with repeats.
    pub fn flat(&self) -> Vec<C<T>> {
        self.nodes.iter().flat_map(|nd| std::iter::repeat_n(nd.lambda, nd.mult)).collect()
    }

    /// Equal points merged, in order of first appearance.
    pub fn distinct(&self) -> Vec<Node<T>> {
        let mut out: Vec<Node<T>> = Vec::new();
        for nd in &self.nodes {
            match out.iter_mut().find(|o| o.lambda == nd.lambda) {
                Some(o) => o.mult += nd.mult,
                None => out.push(*nd),
            }
        }
        out
    }

    /// True when every point has multiplicity one and the pairwise
    /// distances exceed `sep`.
    pub fn is_separated(&self, sep: T) -> bool {
        let flat = self.flat();
        flat.iter().enumerate().all(|(i, a)| flat[i + 1..].iter().all(|b| (*a - *b).norm() > sep))
    }

    /// The set rotated by the unimodular factor `u`.
    pub fn rotated(&self, u: C<T>) -> Self {
        let nodes = self.nodes.iter().map(|nd| Node { lambda: nd.lambda * u, mult: nd.mult }).collect();
        Self { nodes }
    }
}

fn pole_check<T: Real>(lambda: C<T>, z: C<T>) -> Result<C<T>> {
    let den = C::<T>::one() - lambda.conj() * z;
    if den.norm() <= T::epsilon() {
        return Err(Error::domain(format!("z = {z} is the pole of the factor at {lambda}")));
    }
    Ok(den)
}

/// `b_λ(z) = (λ - z)/(1 - conj(λ) z)`.
pub fn eval_factor<T: Real>(lambda: C<T>, z: C<T>) -> Result<C<T>> {
    let den = pole_check(lambda, z)?;
    Ok((lambda - z) / den)
}

/// `b_λ'(z) = -(1 - |λ|²)/(1 - conj(λ) z)²`.
pub fn factor_derivative<T: Real>(lambda: C<T>, z: C<T>) -> Result<C<T>> {
    let den = pole_check(lambda, z)?;
    Ok(-real(T::one() - lambda.norm_sqr()) / (den * den))
}

/// Returns `(|b_λ(z)|², 1 + (|z|²-1)(1-|λ|²)/|1-conj(λ)z|²)` for
/// `|z| < 1/|λ|`.
pub fn modulus_identity<T: Real>(lambda: C<T>, z: C<T>) -> Result<(T, T)> {
    if !(lambda.norm() < T::one()) {
        return Err(Error::domain("node must lie inside the unit disc"));
    }
    if !(z.norm() * lambda.norm() < T::one()) {
        return Err(Error::domain(format!("|z| = {} is not below 1/|λ|", z.norm())));
    }
    let lhs = eval_factor(lambda, z)?.norm_sqr();
    let den = (C::<T>::one() - lambda.conj() * z).norm_sqr();
    let rhs = T::one() + (z.norm_sqr() - T::one()) * (T::one() - lambda.norm_sqr()) / den;
    Ok((lhs, rhs))
}

/// `B_σ = Π b_{λ_j}` over the flat node list.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct<T> {
    sigma: NodeSet<T>,
    flat: Vec<C<T>>,
}

impl<T: Real> BlaschkeProduct<T> {
    pub fn new(sigma: NodeSet<T>) -> Self {
        let flat = sigma.flat();
        Self { sigma, flat }
    }

    pub fn sigma(&self) -> &NodeSet<T> {
        &self.sigma
    }

    /// Flat node list with repeats.
    pub fn nodes(&self) -> &[C<T>] {
        &self.flat
    }

    pub fn eval(&self, z: C<T>) -> Result<C<T>> {
        self.flat.iter().try_fold(C::one(), |acc, &l| Ok(acc * eval_factor(l, z)?))
    }

    /// `B'(z) = Σ_i b_i'(z) Π_{j≠i} b_j(z)`.
    pub fn derivative(&self, z: C<T>) -> Result<C<T>> {
        let vals = self.flat.iter().map(|&l| eval_factor(l, z)).collect::<Result<Vec<_>>>()?;
        let n = vals.len();
        // prefix[i] = Π_{j<i}, suffix[i] = Π_{j≥i}
        let mut prefix = vec![C::<T>::one(); n + 1];
        let mut suffix = vec![C::<T>::one(); n + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i] * vals[i];
            suffix[n - 1 - i] = suffix[n - i] * vals[n - 1 - i];
        }
        let mut acc = C::zero();
        for (i, &l) in self.flat.iter().enumerate() {
            acc += factor_derivative(l, z)? * prefix[i] * suffix[i + 1];
        }
        Ok(acc)
    }

    /// `B'(w)` at the unit-circle point `w/|w|`.
    pub fn boundary_derivative(&self, w: C<T>) -> Result<C<T>> {
        if w.is_zero() {
            return Err(Error::domain("boundary point must be nonzero"));
        }
        self.derivative(w / w.norm())
    }

    /// Taylor expansion of `B_σ` truncated at degree `cap`.
    pub fn series(&self, cap: usize) -> TaylorSeries<T> {
        partial_product_series(&self.flat, cap)
    }
}

/// Taylor series of `Π_{λ ∈ nodes} b_λ` to degree `cap`.
pub(crate) fn partial_product_series<T: Real>(nodes: &[C<T>], cap: usize) -> TaylorSeries<T> {
    let mut acc = TaylorSeries::constant(C::one()).with_cap(cap);
    for &l in nodes {
        acc = acc.mul_linear(l, -C::<T>::one(), cap).div_one_minus(l.conj(), cap);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn c(re: f64, im: f64) -> C<f64> {
        cplx(re, im)
    }

    #[test]
    fn factor_examples() {
        assert_eq!(eval_factor(c(0.0, 0.0), c(0.5, 0.0)).unwrap(), c(-0.5, 0.0));
        assert_eq!(eval_factor(c(0.5, 0.0), c(0.5, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((eval_factor(c(0.5, 0.0), c(1.0, 0.0)).unwrap().norm() - 1.0).abs() < 1e-15);
        assert!(matches!(eval_factor(c(0.5, 0.0), c(2.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn product_examples() {
        let b = BlaschkeProduct::new(NodeSet::repeated(c(0.0, 0.0), 2).unwrap());
        assert!((b.eval(c(0.3, 0.0)).unwrap() - c(0.09, 0.0)).norm() < 1e-16);
        let b = BlaschkeProduct::new(NodeSet::from_points(&[c(0.5, 0.0)]).unwrap());
        assert_eq!(b.eval(c(0.0, 0.0)).unwrap(), c(0.5, 0.0));
        let b = BlaschkeProduct::new(NodeSet::from_points(&[c(0.5, 0.1), c(-0.3, 0.4)]).unwrap());
        assert_eq!(b.eval(c(-0.3, 0.4)).unwrap().norm(), 0.0);
    }

    #[test]
    fn boundary_derivative_examples() {
        let b = BlaschkeProduct::new(NodeSet::repeated(c(0.0, 0.0), 1).unwrap());
        assert!((b.boundary_derivative(c(0.6, 0.8)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        let b = BlaschkeProduct::new(NodeSet::repeated(c(0.0, 0.0), 5).unwrap());
        assert!((b.boundary_derivative(c(0.0, 2.0)).unwrap().norm() - 5.0).abs() < 1e-14);
        let b = BlaschkeProduct::new(NodeSet::from_points(&[c(0.5, 0.0)]).unwrap());
        assert!((b.boundary_derivative(c(1.0, 0.0)).unwrap().norm() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn modulus_identity_examples() {
        let (l, r) = modulus_identity(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((l - 0.25).abs() < 1e-16 && (r - 0.25).abs() < 1e-16);
        let (_, r) = modulus_identity(c(0.3, 0.2), c(0.6, 0.8)).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
        let (l, r) = modulus_identity(c(0.3, 0.0), c(0.0, 0.8)).unwrap();
        assert!((l - r).abs() < 1e-12);
        assert!(modulus_identity(c(0.5, 0.0), c(2.5, 0.0)).is_err());
    }

    #[test]
    fn series_matches_evaluation() {
        let b = BlaschkeProduct::new(NodeSet::from_points(&[c(0.5, 0.1), c(-0.3, 0.4), c(0.2, -0.6)]).unwrap());
        let s = b.series(200);
        let z = c(0.3, -0.2);
        assert!((s.evaluate(z).unwrap() - b.eval(z).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn json_round_trip() {
        let s = NodeSet::<f64>::from_json(r#"[{"re":0.5,"im":0.0},{"re":0.0,"im":-0.25,"mult":3}]"#).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.r(), 0.5);
        assert_eq!(s.flat().len(), 4);
        assert!(NodeSet::<f64>::from_json(r#"[{"re":1.0,"im":0.0}]"#).is_err());
        assert!(NodeSet::<f64>::from_json(r#"[]"#).is_err());
        assert!(NodeSet::<f64>::from_json(r#"{"re":1.0}"#).is_err());
    }
}
