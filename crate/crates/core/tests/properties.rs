use std::f64::consts::{PI, TAU};

use octonion_kernels::inner::{OctoFn, OctonionInnerProduct, WeightedProduct};
use octonion_kernels::monogenic::{bergman_kernel, szego_kernel, BergmanBallVariant, Domain};
use octonion_kernels::quadrature::{integrate_circle, integrate_disk, mc_sphere7, CircleRule, DiskRule, Sampler};
use octonion_kernels::series::{hardy_inner_coeff, para_linearity_residual};
use octonion_kernels::slice::{representation_formula, splitting_frame, SlicePoint};
use octonion_kernels::slice_kernels::{slice_szego_ball, slice_szego_halfspace, slice_szego_halfspace_dual};
use octonion_kernels::{decompose, euclid_inner, identity_residuals, ImaginaryUnit, Octonion, OctonionPowerSeries};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn octonion(scale: f64) -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-scale..scale).prop_map(Octonion)
}

fn unit() -> impl Strategy<Value = ImaginaryUnit> {
    any::<u64>().prop_map(|s| ImaginaryUnit::random(&mut ChaCha8Rng::seed_from_u64(s)))
}

fn series(max_degree: usize) -> impl Strategy<Value = OctonionPowerSeries> {
    prop::collection::vec(octonion(1.0), 1..=max_degree + 1).prop_map(OctonionPowerSeries::new)
}

fn ball(radius: f64) -> impl Strategy<Value = Octonion> {
    octonion(1.0).prop_map(move |x| x * (radius / x.norm().max(1.0) / 3.0_f64.sqrt()))
}

fn halfspace() -> impl Strategy<Value = Octonion> {
    (octonion(1.0), 0.05..3.0).prop_map(|(mut x, re)| {
        x.0[0] = re;
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_is_multiplicative(a in octonion(10.0), b in octonion(10.0)) {
        let ab = (a * b).norm();
        prop_assert!((ab - a.norm() * b.norm()).abs() <= 1e-12 * (a.norm() * b.norm()).max(1.0));
    }

    #[test]
    fn product_is_bilinear(a in octonion(5.0), b in octonion(5.0), c in octonion(5.0), s in -3.0..3.0f64, t in -3.0..3.0f64) {
        let lhs = (a * s + b * t) * c;
        let rhs = (a * c) * s + (b * c) * t;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (lhs.norm() + 1.0));
        let lhs = c * (a * s + b * t);
        let rhs = (c * a) * s + (c * b) * t;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (lhs.norm() + 1.0));
    }

    #[test]
    fn identities_hold(a in octonion(10.0), b in octonion(10.0), c in octonion(10.0)) {
        let r = identity_residuals(a, b, c).normalized(a, b, c);
        prop_assert!(r.max() <= 1e-12, "{r:?}");
    }

    #[test]
    fn left_multiplication_is_adjoint(a in octonion(5.0), b in octonion(5.0), c in octonion(5.0)) {
        let gap = euclid_inner(a * b, c) - euclid_inner(b, a.conj() * c);
        prop_assert!(gap.abs() <= 1e-12 * (a.norm() * b.norm() * c.norm() + 1.0));
    }

    #[test]
    fn unit_left_multiplication_preserves_inner(n in octonion(1.0), f in octonion(3.0), g in octonion(3.0)) {
        prop_assume!(n.norm() > 1e-3);
        let n = n / n.norm();
        prop_assert!((euclid_inner(n * f, n * g) - euclid_inner(f, g)).abs() <= 1e-12 * (f.norm() * g.norm() + 1.0));
    }

    #[test]
    fn literals_round_trip(a in octonion(1e6)) {
        prop_assert_eq!(a.to_string().parse::<Octonion>().unwrap(), a);
    }

    #[test]
    fn series_literals_round_trip(f in series(6)) {
        prop_assert_eq!(f.to_string().parse::<OctonionPowerSeries>().unwrap(), f);
    }

    #[test]
    fn compose_after_decompose(x in octonion(5.0)) {
        prop_assume!(x.im().norm() > 1e-6);
        prop_assert!((decompose(x).compose() - x).norm() <= 1e-12 * x.norm().max(1.0));
    }

    #[test]
    fn decompose_after_compose(u in -5.0..5.0f64, v in 1e-3..5.0f64, axis in unit()) {
        let p = decompose(SlicePoint { u, v, axis }.compose());
        prop_assert!((p.u - u).abs() <= 1e-12 * u.abs().max(1.0));
        prop_assert!((p.v - v).abs() <= 1e-12 * v.max(1.0));
        prop_assert!((p.axis.value() - axis.value()).norm() <= 1e-12 / v.min(1.0));
    }

    #[test]
    fn representation_formula_is_exact(f in series(12), u in -0.8..0.8f64, v in 0.0..0.8f64, i in unit(), j in unit()) {
        let got = representation_formula(f.evaluate(j.point(u, v)), f.evaluate(j.point(u, -v)), i, j);
        let want = f.evaluate(i.point(u, v));
        prop_assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0));
    }

    #[test]
    fn splitting_frame_is_orthonormal(i in unit(), seed in any::<u64>()) {
        let g = splitting_frame(i, seed).gram();
        for (r, row) in g.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                let want = if r == c { 1.0 } else { 0.0 };
                prop_assert!((x - want).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn coefficient_product_is_hermitian(f in series(10), g in series(10)) {
        let gap = hardy_inner_coeff(&f, &g).conj() - hardy_inner_coeff(&g, &f);
        prop_assert!(gap.norm() <= 1e-12);
    }

    #[test]
    fn coefficient_product_is_positive(f in series(10)) {
        let v = hardy_inner_coeff(&f, &f);
        prop_assert!(v.im().norm() <= 1e-12);
        prop_assert!(v.re() >= 0.0);
        prop_assert_eq!(v.re() == 0.0, f.is_zero());
    }

    #[test]
    fn coefficient_product_is_right_linear_on_the_diagonal(f in series(10), alpha in octonion(2.0)) {
        let gap = hardy_inner_coeff(&f.right_mul(alpha), &f) - hardy_inner_coeff(&f, &f) * alpha;
        prop_assert!(gap.norm() <= 1e-12 * (hardy_inner_coeff(&f, &f).norm() * alpha.norm() + 1.0));
    }

    #[test]
    fn coefficient_product_is_para_linear(f in series(10), g in series(10), alpha in octonion(2.0)) {
        prop_assert!(para_linearity_residual(&f, &g, alpha).residual <= 1e-12);
    }

    #[test]
    fn circle_rule_integrates_trig_polynomials(m in 1usize..80, k in 0usize..80, phase in 0.0..TAU) {
        prop_assume!(k < m);
        let rule = CircleRule::new(m).unwrap();
        let got = integrate_circle(&rule, |t| Octonion::real((k as f64 * t + phase).cos()));
        let want = if k == 0 { TAU * phase.cos() } else { 0.0 };
        prop_assert!((got.re() - want).abs() <= 1e-13 * TAU.max(m as f64));
    }

    #[test]
    fn disk_rule_reproduces_moments(order in 1usize..24, n in 0usize..24, m in 0usize..24) {
        prop_assume!(n + m < 2 * order);
        let rule = DiskRule::new(order, 2 * (n + m) + 1, true).unwrap();
        // z^n conj(z)^m on the normalized disk
        let got = integrate_disk(&rule, |r, t| Octonion::real(r.powi((n + m) as i32) * ((n as f64 - m as f64) * t).cos()));
        let want = if n == m { 1.0 / (n as f64 + 1.0) } else { 0.0 };
        prop_assert!((got.re() - want).abs() <= 1e-12);
    }

    #[test]
    fn monogenic_kernels_are_hermitian(x in ball(0.9), y in ball(0.9), hx in halfspace(), hy in halfspace()) {
        let close = |a: Octonion, b: Octonion| (a - b).norm() <= 1e-12 * b.norm().max(1.0);
        let dom = Domain::UnitBall;
        prop_assert!(close(szego_kernel(&dom, x, y).unwrap().conj(), szego_kernel(&dom, y, x).unwrap()));
        let v = BergmanBallVariant::default();
        prop_assert!(close(bergman_kernel(&dom, x, y, v).unwrap().conj(), bergman_kernel(&dom, y, x, v).unwrap()));
        let dom = Domain::RightHalfSpace;
        prop_assert!(close(szego_kernel(&dom, hx, hy).unwrap().conj(), szego_kernel(&dom, hy, hx).unwrap()));
        prop_assert!(close(bergman_kernel(&dom, hx, hy, v).unwrap().conj(), bergman_kernel(&dom, hy, hx, v).unwrap()));
    }

    #[test]
    fn weight_sign_is_immaterial(w in octonion(2.0), f in octonion(2.0), g in octonion(2.0)) {
        let a = (w * g).conj() * (w * f);
        let b = ((-w) * g).conj() * ((-w) * f);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn slice_szego_kernels_are_hermitian(x in ball(0.9), y in ball(0.9), hx in halfspace(), hy in halfspace()) {
        let close = |a: Octonion, b: Octonion| (a - b).norm() <= 1e-12 * b.norm().max(1.0);
        prop_assert!(close(slice_szego_ball(y, x).unwrap().conj(), slice_szego_ball(x, y).unwrap()));
        let k = slice_szego_halfspace(hx, hy).unwrap();
        prop_assert!(close(k.conj(), slice_szego_halfspace(hy, hx).unwrap()));
        prop_assert!(close(slice_szego_halfspace_dual(hx, hy).unwrap(), k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn disk_product_axioms_hold(f in series(8), g in series(8), h in series(8), alpha in octonion(2.0), r in -3.0..3.0f64, axis in unit()) {
        let ip = WeightedProduct::disk(axis, DiskRule::new(32, 64, true).unwrap());
        let [f, g, h] = [&f, &g, &h].map(OctoFn::from_series);
        let report = ip.axiom_suite(&f, &g, &h, alpha, r).unwrap();
        prop_assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn monte_carlo_is_reproducible(seed in any::<u64>(), stream in 0u64..8) {
        let s = Sampler::new(10_000, seed).with_stream(stream);
        let f = |x: Octonion| x * x.re() + Octonion::real(x.norm_sqr());
        let a = mc_sphere7(&s, f);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| mc_sphere7(&s, f));
        prop_assert_eq!(a, b);
    }
}

#[test]
fn monte_carlo_is_unbiased_on_known_integrals() {
    // mean of x0^2 on S^7 is 1/8; the constant 1 has total mass pi^4 / 3
    let s = Sampler::new(200_000, 11);
    let est = mc_sphere7(&s, |x| Octonion::real(x.re() * x.re()));
    let mean = est.value.re() / (PI.powi(4) / 3.0);
    let stderr = est.stderr / (PI.powi(4) / 3.0);
    assert!((mean - 0.125).abs() <= 4.0 * stderr, "{mean} {stderr}");
}
