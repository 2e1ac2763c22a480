use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ratquad::inequalities::m_p;
use ratquad::json::{self, QuadratureResultJson, RationalFunctionJson};
use ratquad::notches::{notches_axis, notches_circle};
use ratquad::quadrature::{quadrature, Mode};
use ratquad::verify::random_instance;
use ratquad::{BlaschkeProduct, Complex64, Pole, PoleSet, Region};

fn disc_poles(r: f64) -> impl Strategy<Value = Vec<(Complex64, u32)>> {
    prop::collection::vec((0.0..0.95f64, 0.0..TAU, 1..=3u32), 1..4).prop_map(move |v| {
        v.into_iter()
            .map(|(s, a, k)| (Complex64::from_polar(s * r, a), k))
            .collect()
    })
}

fn upper_poles() -> impl Strategy<Value = Vec<(Complex64, u32)>> {
    prop::collection::vec((-3.0..3.0f64, 0.05..3.0f64, 1..=3u32), 1..4).prop_map(|v| {
        v.into_iter()
            .map(|(x, y, k)| (Complex64::new(x, y), k))
            .collect()
    })
}

fn pole_set(v: &[(Complex64, u32)], region: Region) -> PoleSet {
    PoleSet::new(v.iter().map(|&(z, k)| Pole::new(z, k)), region).unwrap()
}

fn instance(seed: u64, kind: &str) -> ratquad::verify::Instance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), kind)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blaschke_is_unimodular_on_contours(poles in disc_poles(1.3), upper in upper_poles(), t in 0.0..TAU, x in -50.0..50.0f64) {
        let b = BlaschkeProduct::circle(pole_set(&poles, Region::Disc { radius: 1.3 })).unwrap();
        let v = b.eval(b.point(t), 2).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        let a = BlaschkeProduct::axis(pole_set(&upper, Region::UpperHalfPlane)).unwrap();
        prop_assert!((a.eval(Complex64::new(x, 0.0), 3).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mu_is_positive(poles in disc_poles(0.7), upper in upper_poles(), t in 0.0..TAU, x in -1e3..1e3f64) {
        let b = BlaschkeProduct::circle(pole_set(&poles, Region::Disc { radius: 0.7 })).unwrap();
        prop_assert!(b.mu_at(t) > 0.0);
        let a = BlaschkeProduct::axis(pole_set(&upper, Region::UpperHalfPlane)).unwrap();
        prop_assert!(a.mu_at(x) > 0.0);
    }

    #[test]
    fn phase_winds_once_per_node(poles in disc_poles(1.0), upper in upper_poles(), m in 1..4u32) {
        let disc = pole_set(&poles, Region::Disc { radius: 1.0 });
        let b = BlaschkeProduct::circle(disc.clone()).unwrap();
        let n = (m * disc.total() + 1) as f64;
        prop_assert!((b.phase(m, TAU) - b.phase(m, 0.0) - TAU * n).abs() < 1e-9);
        prop_assert_eq!(notches_circle(&disc, m, 0.4).unwrap().len() as f64, n);
        let half = pole_set(&upper, Region::UpperHalfPlane);
        let a = BlaschkeProduct::axis(half.clone()).unwrap();
        let total = (m * half.total()) as f64;
        prop_assert!((a.phase(m, 1e12) - a.phase(m, -1e12) - TAU * total).abs() < 1e-6);
        prop_assert_eq!(notches_axis(&half, m, 2.0).unwrap().len() as f64, total);
    }

    #[test]
    fn nodes_are_sorted_with_small_residuals(poles in upper_poles(), m in 1..4u32, phi in 0.0..TAU) {
        let set = notches_axis(&pole_set(&poles, Region::UpperHalfPlane), m, phi).unwrap();
        prop_assert!(set.max_residual() < 1e-10);
        prop_assert!(set.notches.windows(2).all(|w| w[0].param < w[1].param));
    }

    #[test]
    fn phi_invariance(seed in any::<u64>(), kind in prop::sample::select(vec!["circle", "axis", "semiaxis", "segment"]), a in 0.0..TAU, b in 0.0..TAU) {
        let inst = instance(seed, kind);
        for mode in [Mode::Integral, Mode::Norm] {
            let qa = quadrature(&inst.function, inst.domain, inst.m, a, mode).unwrap();
            let qb = quadrature(&inst.function, inst.domain, inst.m, b, mode).unwrap();
            let scale = qa.magnitude().max(qb.magnitude());
            prop_assert!((qa.value - qb.value).norm() <= 1e-9 * scale, "{:?}: {} vs {}", inst, qa.value, qb.value);
        }
    }

    #[test]
    fn norm_contributions_are_nonnegative(seed in any::<u64>(), kind in prop::sample::select(vec!["circle", "axis", "semiaxis", "segment"]), phi in 0.0..TAU) {
        let inst = instance(seed, kind);
        let q = quadrature(&inst.function, inst.domain, inst.m, phi, Mode::Norm).unwrap();
        prop_assert!(q.contributions.iter().all(|c| c.re >= 0.0 && c.im == 0.0));
        let max = q.contributions.iter().map(|c| c.re).fold(0.0, f64::max);
        prop_assert!(q.value.re >= max * (1.0 - 1e-15));
        prop_assert_eq!(q.notches.len(), inst.expected_nodes());
    }

    #[test]
    fn json_round_trips(seed in any::<u64>(), kind in prop::sample::select(vec!["circle", "axis", "semiaxis", "segment"])) {
        let inst = instance(seed, kind);
        let view = RationalFunctionJson::from(&inst.function);
        let back: RationalFunctionJson = json::from_str(&json::to_string(&view)).unwrap();
        prop_assert_eq!(back.to_function().unwrap(), inst.function.clone());
        let q = QuadratureResultJson::from(&quadrature(&inst.function, inst.domain, inst.m, 1.0, Mode::Norm).unwrap());
        let text = json::to_string(&q);
        prop_assert_eq!(json::to_string(&json::from_str::<QuadratureResultJson>(&text).unwrap()), text);
    }

    #[test]
    fn m_p_brackets_half_p(p in 0.01..200.0f64) {
        let m = m_p(p) as f64;
        prop_assert!(p / 2.0 <= m && m < 1.0 + p / 2.0);
    }

    #[test]
    fn circle_mean_value(r in 0.3..3.0f64, a in 0.0..TAU, s in 1.1..4.0f64) {
        // Poles outside the disc: the contour average equals the value at 0.
        let z = Complex64::from_polar(s * r, a);
        let f = ratquad::RationalFunction::from_poles(Complex64::new(1.0, 0.0), vec![Pole::new(z, 1)]).unwrap();
        let q = quadrature(&f, ratquad::Domain::Circle { radius: r }, 1, 0.3, Mode::Integral).unwrap();
        let want = -1.0 / z * (2.0 * PI * r);
        prop_assert!((q.value - want).norm() < 1e-12 * want.norm());
    }
}
