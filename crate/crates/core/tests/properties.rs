use std::f64::consts::PI;

use dhym::hermitian::{jacobi_eigen, CMatrix, HermitianPair};
use dhym::phase::binomial;
use dhym::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn lambda4() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, 4)
}

fn tuple(v: &[f64]) -> EigenTuple {
    EigenTuple::new(v.to_vec()).unwrap()
}

fn close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()).max(1.0)
}

fn matrix(n: usize, re: &[f64], im: &[f64]) -> CMatrix {
    let rows =
        |v: &[f64]| -> Vec<Vec<f64>> { (0..n).map(|i| v[i * n..(i + 1) * n].to_vec()).collect() };
    CMatrix::from_rows(&rows(re), Some(&rows(im))).unwrap()
}

fn hermitian(n: usize, re: &[f64], im: &[f64]) -> CMatrix {
    let m = matrix(n, re, im);
    let mut h = m.clone();
    let adj = m.adjoint();
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] = (m[(i, j)] + adj[(i, j)]) * 0.5;
        }
    }
    h
}

fn positive_metric(n: usize, re: &[f64], im: &[f64]) -> CMatrix {
    let b = matrix(n, re, im);
    let mut g = b.mul(&b.adjoint());
    for i in 0..n {
        g[(i, i)] += Complex64::new(1.0, 0.0);
    }
    g
}

fn pair_strategy(
    max_dim: usize,
) -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>)> {
    (1..=max_dim).prop_flat_map(|n| {
        let v = move || prop::collection::vec(-1.0..1.0f64, n * n);
        (Just(n), v(), v(), v(), v())
    })
}

proptest! {
    #[test]
    fn vieta_expansion(l in lambda4(), x in -10.0..10.0f64) {
        let t = tuple(&l);
        let product: f64 = l.iter().map(|v| x + v).product();
        let expanded = t.sigmas().iter().fold(0.0, |acc, s| acc * x + s);
        let scale: f64 = l.iter().map(|v| x.abs() + v.abs()).product();
        prop_assert!((product - expanded).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn phase_components_are_the_complex_product(l in prop::collection::vec(-10.0..10.0f64, 1..7)) {
        let t = tuple(&l);
        let (re, im) = phase_components(&t);
        let z: Complex64 = l.iter().map(|&v| Complex64::new(1.0, v)).product();
        let scale = z.norm().max(1.0);
        prop_assert!((re - z.re).abs() <= 1e-12 * scale && (im - z.im).abs() <= 1e-12 * scale);
        // and the argument agrees with the phase modulo 2π
        let gap = (lagrangian_phase(&t) - z.arg()).rem_euclid(2.0 * PI);
        prop_assert!(gap.min(2.0 * PI - gap) < 1e-9);
    }

    #[test]
    fn factorization_identity_holds(l in lambda4()) {
        let (lhs, rhs) = factorization_identity(&tuple(&l)).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12));
    }

    #[test]
    fn newton_log_concavity(l in prop::collection::vec(-10.0..10.0f64, 2..7)) {
        let t = tuple(&l);
        let n = l.len();
        let s = t.sigmas();
        let e: Vec<f64> = (0..=n).map(|k| s[k] / binomial(n, k)).collect();
        for k in 1..n {
            let gap = e[k] * e[k] - e[k - 1] * e[k + 1];
            let scale = (e[k] * e[k]).abs() + (e[k - 1] * e[k + 1]).abs();
            prop_assert!(gap >= -1e-12 * scale.max(1e-300), "k={} gap={}", k, gap);
        }
    }

    #[test]
    fn phase_is_permutation_invariant(l in lambda4(), rot in 0usize..4) {
        let mut r = l.clone();
        r.rotate_left(rot);
        r.swap(0, 3);
        prop_assert_eq!(lagrangian_phase(&tuple(&l)), lagrangian_phase(&tuple(&r)));
        prop_assert_eq!(tuple(&l).sigmas(), tuple(&r).sigmas());
    }

    #[test]
    fn phase_is_monotone(l in lambda4(), i in 0usize..4, bump in 1e-3..5.0f64) {
        let mut up = l.clone();
        up[i] += bump;
        prop_assert!(lagrangian_phase(&tuple(&up)) > lagrangian_phase(&tuple(&l)));
    }

    #[test]
    fn sampler_hits_the_level_set(theta in (PI + 0.01)..(2.0 * PI - 0.01), seed in any::<u64>()) {
        for t in level_set_sample(theta, 5, seed).unwrap() {
            prop_assert!((lagrangian_phase(&t) - theta).abs() < 1e-12);
        }
    }

    #[test]
    fn winding_is_scale_invariant(l in prop::collection::vec(-5.0..5.0f64, 3..=4), c in 0.01..100.0f64) {
        let p = constant_model(&tuple(&l));
        let w = compute_winding(&p, 32).unwrap();
        prop_assume!(w.origin_hit.is_none());
        let ws = compute_winding(&p.scaled(c).unwrap(), 32).unwrap();
        prop_assert!((w.theta_alg - ws.theta_alg).abs() < 1e-12);
    }

    #[test]
    fn constant_model_path_is_the_product(l in prop::collection::vec(-5.0..5.0f64, 3..=4), t in 0.05..20.0f64) {
        let n = l.len();
        let z = z_of_t(&constant_model(&tuple(&l)), t).unwrap();
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        let prod = -l.iter().map(|&v| Complex64::new(v, -t)).product::<Complex64>() / fact;
        prop_assert!((z - prod).norm() <= 1e-12 * prod.norm().max(1.0));
    }

    #[test]
    fn constant_model_recovers_sigmas(l in prop::collection::vec(-5.0..5.0f64, 1..=6)) {
        let t = tuple(&l);
        let s = constant_model(&t).sigma_integrals();
        for (a, b) in s.iter().zip(t.sigmas()) {
            prop_assert!(close(*a, b, 1e-12));
        }
    }

    #[test]
    fn lift_is_refinement_stable_and_continuous(
        n in 3usize..=4,
        d in prop::collection::vec(-5.0..5.0f64, 5),
        d0 in 0.5..2.0f64,
    ) {
        let mut d = d[..=n].to_vec();
        d[0] = d0;
        let p = IntersectionProfile::new(n, d).unwrap();
        let coarse = compute_winding(&p, 64).unwrap();
        prop_assume!(coarse.origin_hit.is_none());
        let fine = compute_winding(&p, 128).unwrap();
        prop_assert!((coarse.theta_alg - fine.theta_alg).abs() < 1e-12);
        for w in fine.arg_lift.windows(2) {
            prop_assert!((w[1].arg_lift - w[0].arg_lift).abs() < PI / 2.0);
        }
        prop_assert!((fine.lift_at_one() - fine.reference_angle - fine.theta_alg).abs() < 1e-12);
    }

    #[test]
    fn profile_json_round_trip(n in 1usize..=6, d in prop::collection::vec(-1e6..1e6f64, 7), d0 in 1e-3..1e3f64) {
        let mut d = d[..=n].to_vec();
        d[0] = d0;
        let p = IntersectionProfile::new(n, d).unwrap();
        let json = dhym::format::to_json(&p).unwrap();
        let back: IntersectionProfile = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.d(), p.d());
        prop_assert_eq!(back.dim(), p.dim());
    }

    #[test]
    fn g17_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let s = dhym::format::g17(x);
        prop_assert_eq!(s.parse::<f64>().unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_diagonalizes((n, re, im, _, _) in pair_strategy(16)) {
        let h = hermitian(n, &re, &im);
        let (values, v) = jacobi_eigen(&h).unwrap();
        let scale = h.frobenius().max(1e-300);
        let vh = v.adjoint();
        let d = vh.mul(&h).mul(&v);
        prop_assert!(d.off_diagonal_norm() <= 1e-10 * scale);
        for (i, value) in values.iter().enumerate() {
            prop_assert!((d[(i, i)].re - value).abs() <= 1e-10 * scale);
        }
        let unit = vh.mul(&v);
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!((unit[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenpairs_solve_the_pencil((n, gr, gi, ar, ai) in pair_strategy(8)) {
        let g = positive_metric(n, &gr, &gi);
        let a = hermitian(n, &ar, &ai);
        let pair = HermitianPair::new(g.clone(), a.clone()).unwrap();
        for (value, v) in pair.eigenpairs().unwrap() {
            let av = a.mul_vec(&v);
            let gv = g.mul_vec(&v);
            let residual: f64 = av.iter().zip(&gv).map(|(x, y)| (x - y * value).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(residual <= 1e-9 * a.frobenius().max(1.0));
        }
    }

    #[test]
    fn phase_is_congruence_invariant(
        (n, gr, gi, ar, ai) in pair_strategy(6),
        pr in prop::collection::vec(-0.3..0.3f64, 36),
        pi in prop::collection::vec(-0.3..0.3f64, 36),
    ) {
        let pair = HermitianPair::new(positive_metric(n, &gr, &gi), hermitian(n, &ar, &ai)).unwrap();
        // P = I + small perturbation keeps cond(P) well below 1e3
        let mut p = matrix(n, &pr[..n * n], &pi[..n * n]);
        for i in 0..n {
            p[(i, i)] += Complex64::new(1.0 + n as f64 * 0.6, 0.0);
        }
        let moved = pair.congruent(&p).unwrap();
        prop_assert!((phase_of_pair(&pair).unwrap() - phase_of_pair(&moved).unwrap()).abs() < 1e-8);
    }
}
