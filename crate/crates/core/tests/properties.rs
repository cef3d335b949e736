use blaschke_lab::analytic::{zero_free_power, SpaceSpec, TaylorSeries};
use blaschke_lab::blaschke::{eval_factor, modulus_identity, BlaschkeProduct, Node, NodeSet};
use blaschke_lab::bounds::{
    lower_witness, theorem_a_c1_factor, ub_bprime, ub_energy, ub_poisson, ub_simple, WitnessPower,
};
use blaschke_lab::model_space::{projected_szego_norm, MalmquistBasis};
use blaschke_lab::solvers::{quotient_norm, quotient_norm_in};
use num_complex::Complex;
use num_rational::Ratio;
use proptest::prelude::*;

type C64 = Complex<f64>;

fn cpx() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C64::new(a, b))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(cpx(), 1..=max_deg + 1)
}

fn disc_point(radius: f64) -> impl Strategy<Value = C64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn node_set(max_n: usize, radius: f64) -> impl Strategy<Value = NodeSet<f64>> {
    prop::collection::vec((disc_point(radius), 1..=2usize), 1..=max_n).prop_filter_map("nodes too close", |v| {
        let pts: Vec<C64> = v.iter().map(|p| p.0).collect();
        let separated = pts.iter().enumerate().all(|(i, a)| pts[..i].iter().all(|b| (a - b).norm() > 0.05));
        if !separated {
            return None;
        }
        NodeSet::new(v.into_iter().map(|(lambda, mult)| Node { lambda, mult }).collect()).ok()
    })
}

/// `e_k(z)` by its product formula, valid off the unit disc as well.
fn malmquist_at(nodes: &[C64], k: usize, z: C64) -> C64 {
    let head: C64 = nodes[..k].iter().map(|&l| (l - z) / (1.0 - l.conj() * z)).product();
    head * (1.0 - nodes[k].norm_sqr()).sqrt() / (1.0 - nodes[k].conj() * z)
}

fn max_malmquist_on_circle(nodes: &[C64], radius: f64) -> f64 {
    let mut best: f64 = 0.0;
    for l in 0..4096 {
        let z = C64::from_polar(radius, std::f64::consts::TAU * l as f64 / 4096.0);
        for k in 0..nodes.len() {
            best = best.max(malmquist_at(nodes, k, z).norm());
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parseval_and_weight_monotonicity(c in poly(12)) {
        let f = TaylorSeries::polynomial(c);
        let h2 = SpaceSpec::h2().norm(&f).unwrap();
        let w0 = SpaceSpec::weighted(0.0).unwrap().norm(&f).unwrap();
        prop_assert!((h2 - w0).abs() <= 1e-10 * (1.0 + h2));
        let mut prev = 0.0;
        for alpha in [-1.0, -0.75, -0.5, -0.25, 0.0] {
            let v = SpaceSpec::weighted(alpha).unwrap().norm(&f).unwrap();
            prop_assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn hardy_norms_increase_with_p(c in poly(8)) {
        let f = TaylorSeries::polynomial(c);
        let mut prev = 0.0;
        for space in ["h1", "h2", "hp:4", "hp:6", "hinf"] {
            let v = SpaceSpec::parse(space).unwrap().norm(&f).unwrap();
            prop_assert!(v >= prev - 1e-8 * (1.0 + v), "{space}: {v} < {prev}");
            prev = v;
        }
    }

    #[test]
    fn derivative_is_linear(a in cpx(), b in cpx(), f in poly(10), g in poly(10)) {
        let (f, g) = (TaylorSeries::polynomial(f), TaylorSeries::polynomial(g));
        let lhs = f.linear_combination(a, &g, b).derivative();
        let rhs = f.derivative().linear_combination(a, &g.derivative(), b);
        for k in 0..=lhs.degree().max(rhs.degree()) {
            prop_assert!((lhs.coeff(k) - rhs.coeff(k)).norm() <= 1e-12 * (1.0 + lhs.coeff(k).norm()));
        }
    }

    #[test]
    fn square_root_squares_back(roots in prop::collection::vec((1.3..3.0f64, 0.0..6.28f64), 0..4), lead in 0.5..2.0f64) {
        let mut f = TaylorSeries::polynomial(vec![C64::new(lead, 0.0)]);
        for (m, t) in roots {
            let a = C64::from_polar(m, t);
            f = f.mul_exact(&TaylorSeries::polynomial(vec![C64::new(1.0, 0.0), -a.inv()])).unwrap();
        }
        let cap = 256;
        let root = zero_free_power(&f, Ratio::new(1, 2), cap).unwrap();
        let back = root.mul_truncated(&root, cap);
        for k in 0..=cap - f.degree() {
            prop_assert!((back.coeff(k) - f.coeff(k)).norm() <= 1e-9);
        }
    }

    #[test]
    fn blaschke_products_are_unimodular(sigma in node_set(6, 0.95), t in 0.0..6.28f64) {
        let b = BlaschkeProduct::new(sigma);
        let w = C64::from_polar(1.0, t);
        prop_assert!((b.eval(w).unwrap().norm() - 1.0).abs() <= 1e-12);
        let h = 1e-5;
        let fd = (b.eval(C64::from_polar(1.0, t + h)).unwrap() - b.eval(C64::from_polar(1.0, t - h)).unwrap())
            / (2.0 * h);
        // d/dt B(e^{it}) = i e^{it} B'(e^{it})
        let exact = C64::i() * w * b.boundary_derivative(w).unwrap();
        prop_assert!((fd - exact).norm() <= 1e-6 * exact.norm().max(1.0));
    }

    #[test]
    fn modulus_identity_holds(l in disc_point(0.95), z in disc_point(1.0)) {
        let (lhs, rhs) = modulus_identity(l, z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn projection_interpolates_and_is_idempotent(sigma in node_set(4, 0.85), c in poly(6)) {
        let basis = MalmquistBasis::new(&sigma);
        let f = TaylorSeries::polynomial(c);
        let p = basis.project(&f);
        for nd in sigma.nodes() {
            let (mut a, mut b) = (f.clone(), p.clone());
            for _ in 0..nd.mult {
                prop_assert!((a.eval_at(nd.lambda) - b.eval_at(nd.lambda)).norm() <= 1e-8 * (1.0 + a.eval_at(nd.lambda).norm()));
                a = a.derivative();
                b = b.derivative();
            }
        }
        let pp = basis.project(&p);
        for k in 0..=basis.degree_cap() {
            prop_assert!((pp.coeff(k) - p.coeff(k)).norm() <= 1e-10);
        }
    }

    #[test]
    fn upper_bound_chain(sigma in node_set(6, 0.95)) {
        let b = BlaschkeProduct::new(sigma.clone());
        prop_assert!(ub_energy(&b).unwrap() <= ub_bprime(&b).unwrap() + 1e-9);
        prop_assert!(ub_poisson(&sigma).unwrap() <= ub_simple(&sigma) + 1e-12);
        let x = sigma.n() as f64 / (1.0 - sigma.r());
        prop_assert!(ub_simple(&sigma) <= 2f64.sqrt() * x.sqrt() * (1.0 + 1e-12));
    }

    #[test]
    fn quotient_norm_is_homogeneous_contractive_and_monotone(
        sigma in node_set(4, 0.8), extra in disc_point(0.8), c in poly(5), s in cpx()
    ) {
        let f = TaylorSeries::polynomial(c);
        let q = quotient_norm(&f, &sigma).unwrap();
        let qs = quotient_norm(&f.scale(s), &sigma).unwrap();
        prop_assert!((qs - s.norm() * q).abs() <= 1e-10 * (1.0 + qs));
        prop_assert!(q <= f.sup_on_circle(4096) + 1e-8);
        let mut bigger: Vec<Node<f64>> = sigma.nodes().to_vec();
        bigger.push(Node { lambda: extra, mult: 1 });
        if let Ok(bigger) = NodeSet::new(bigger) {
            prop_assert!(q <= quotient_norm(&f, &bigger).unwrap() + 1e-9);
        }
        let mut reversed: Vec<Node<f64>> = sigma.nodes().to_vec();
        reversed.reverse();
        let qr = quotient_norm(&f, &NodeSet::new(reversed).unwrap()).unwrap();
        prop_assert!((q - qr).abs() <= 1e-9 * (1.0 + q));
    }

    #[test]
    fn malmquist_functions_stay_below_the_c1_factor(n in 1..=5usize, r in 0.05..0.6f64, seed in 0..1000u64) {
        let nodes: Vec<C64> = (0..n)
            .map(|k| {
                let t = (seed as f64 * 0.7 + k as f64 * 2.3).sin() * 3.0;
                let m = if k == 0 { r } else { r * (0.5 + 0.5 * (seed as f64 + k as f64).cos().abs()) };
                C64::from_polar(m, t)
            })
            .collect();
        let rho = 2.0 / (1.0 + r);
        let c1 = theorem_a_c1_factor(n, r).unwrap().value;
        prop_assert!(max_malmquist_on_circle(&nodes, rho) <= c1);
    }
}

#[test]
fn c1_display_is_not_a_bound_for_aligned_nodes_near_the_circle() {
    // Each aligned factor peaks near 8.7 on the circle of radius 2/(1+r),
    // while the displayed per-factor term is about 5.27.
    let (n, r) = (8, 0.95);
    let nodes = vec![C64::new(r, 0.0); n];
    let observed = max_malmquist_on_circle(&nodes, 2.0 / (1.0 + r));
    let c1 = theorem_a_c1_factor(n, r).unwrap();
    assert!(!c1.limit_form);
    assert!(observed > c1.value, "observed {observed} vs factor {}", c1.value);
}

#[test]
fn projected_kernel_norm_circle_maxima_grow_outward() {
    // subharmonic, so its maximum over |z| = ρ is nondecreasing in ρ
    for &(lam, n) in &[(0.0, 3usize), (0.5, 2), (-0.8, 4)] {
        let b = BlaschkeProduct::new(NodeSet::repeated(C64::new(lam, 0.0), n).unwrap());
        let mut prev = 0.0;
        for j in 1..=20 {
            let rho = 1.0 - 2f64.powi(-j);
            let v = (0..512)
                .map(|l| projected_szego_norm(&b, C64::from_polar(rho, std::f64::consts::TAU * l as f64 / 512.0)).unwrap())
                .fold(0.0, f64::max);
            assert!(v >= prev - 1e-12, "lambda={lam} j={j}");
            prev = v;
        }
    }
}

#[test]
fn witness_quotient_is_mobius_invariant() {
    for n in 1..=6 {
        for &r in &[0.0, 0.4, 0.8] {
            let w = lower_witness(n, r, WitnessPower::One).unwrap();
            let zeros = NodeSet::repeated(C64::new(0.0, 0.0), n).unwrap();
            let direct = quotient_norm(&w.psi, &zeros).unwrap();
            let basis = MalmquistBasis::new(&NodeSet::repeated(C64::new(-r, 0.0), n).unwrap());
            let composed = quotient_norm_in(&w.big_psi, &basis).unwrap();
            assert!((direct - composed).abs() <= 1e-5, "n={n} r={r}: {direct} vs {composed}");
        }
    }
}

#[test]
fn repeated_nodes_are_zeros_of_matching_order() {
    let l = C64::new(0.3, -0.4);
    let b = BlaschkeProduct::new(NodeSet::new(vec![Node { lambda: l, mult: 3 }]).unwrap());
    let s = b.series(256);
    let mut d = s.clone();
    for _ in 0..3 {
        assert!(d.eval_at(l).norm() <= 1e-8);
        d = d.derivative();
    }
    assert!(d.eval_at(l).norm() > 1e-3);
    assert!((eval_factor(l, l).unwrap()).norm() == 0.0);
}

#[test]
fn single_precision_basis_is_orthonormal() {
    let sigma = blaschke_lab::NodeSet32::from_points(&[
        Complex::new(0.5f32, 0.1),
        Complex::new(-0.3, 0.6),
        Complex::new(0.0, -0.2),
    ])
    .unwrap();
    let basis = blaschke_lab::MalmquistBasis32::new(&sigma);
    let g = basis.gram();
    for j in 0..3 {
        for k in 0..3 {
            let target = if j == k { 1.0 } else { 0.0 };
            assert!((g[(j, k)] - Complex::new(target, 0.0)).norm() < 1e-5);
        }
    }
    let f = blaschke_lab::TaylorSeries32::polynomial(vec![Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)]);
    let zeros = blaschke_lab::NodeSet32::repeated(Complex::new(0.0, 0.0), 2).unwrap();
    let q = quotient_norm(&f, &zeros).unwrap();
    assert!((q - 1.618_034).abs() < 1e-5);
}
