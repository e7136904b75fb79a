//! Property tests for the measure, branch, transform and quadrature
//! invariants.

use num::complex::Complex64;
use proptest::prelude::*;

use tauber::complexpath::{branch_pow, default_contour, integrate_polyline, EvaluationPoint};
use tauber::constants::Regime;
use tauber::measure::StepMeasure;
use tauber::transforms::{stieltjes, stieltjes_q};
use tauber::verify::{thm1_report, ReportOptions};

fn atom_pairs() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.1f64..100.0, 1e-3f64..10.0), 1..12)
}

proptest! {
    #[test]
    fn counting_is_nondecreasing(pairs in atom_pairs(), x in 0.01f64..200.0, y in 0.01f64..200.0) {
        let m = StepMeasure::new(pairs).unwrap();
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        prop_assert!(m.counting_value(lo) <= m.counting_value(hi));
    }

    #[test]
    fn riesz_mean_is_nondecreasing_in_lambda0(
        pairs in atom_pairs(),
        alpha in 0.05f64..5.0,
        x in 0.01f64..200.0,
        y in 0.01f64..200.0,
    ) {
        let m = StepMeasure::new(pairs).unwrap();
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        prop_assert!(m.riesz_mean(alpha, lo) <= m.riesz_mean(alpha, hi) + 1e-12);
    }

    #[test]
    fn riesz_mean_is_dominated_by_mass_below(
        pairs in atom_pairs(),
        alpha in 0.05f64..5.0,
        lambda0 in 0.01f64..200.0,
    ) {
        let m = StepMeasure::new(pairs).unwrap();
        prop_assert!(m.riesz_mean(alpha, lambda0) <= m.mass_below(lambda0) + 1e-12);
    }

    #[test]
    fn riesz_mean_small_order_limit(pairs in atom_pairs()) {
        // with every atom at most lambda0/2, order 1e-6 recovers the strict
        // mass below lambda0 within 1e-4 relative
        let m = StepMeasure::new(pairs).unwrap();
        let lambda0 = 2.0 * m.max_position();
        let mass = m.mass_below(lambda0);
        let limit = m.riesz_mean(1e-6, lambda0);
        prop_assert!((limit - mass).abs() <= 1e-4 * mass);
    }

    #[test]
    fn branch_pow_adds_exponents_off_the_cut(
        re in 0.05f64..10.0,
        im in -10.0f64..10.0,
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
    ) {
        // arguments in (-pi/2, pi/2): no cut crossing, exponents add
        let z = Complex64::new(re, im);
        let lhs = branch_pow(z, a) * branch_pow(z, b);
        let rhs = branch_pow(z, a + b);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn branch_pow_conjugates(
        re in -10.0f64..10.0,
        im in 0.01f64..10.0,
        a in -2.0f64..2.0,
    ) {
        // for Im z != 0 the principal branch commutes with conjugation
        let z = Complex64::new(re, im);
        let lhs = branch_pow(z.conj(), a);
        let rhs = branch_pow(z, a).conj();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1e-300));
    }

    #[test]
    fn stieltjes_conjugate_symmetry(
        pairs in atom_pairs(),
        q in 1u32..4,
        re in -50.0f64..150.0,
        im in 0.1f64..20.0,
    ) {
        let m = StepMeasure::new(pairs).unwrap();
        let z = Complex64::new(re, im);
        let a = stieltjes_q(&m, q, z.conj()).unwrap();
        let b = stieltjes_q(&m, q, z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-12 * b.norm());
    }

    #[test]
    fn stieltjes_is_herglotz(
        pairs in atom_pairs(),
        re in -50.0f64..150.0,
        im in 0.001f64..20.0,
    ) {
        let m = StepMeasure::new(pairs).unwrap();
        let s = stieltjes(&m, Complex64::new(re, im)).unwrap();
        prop_assert!(s.im > 0.0);
    }

    #[test]
    fn stieltjes_derivative_relation(
        pairs in atom_pairs(),
        q in 1u32..4,
        re in -20.0f64..-1.0,
        im in 0.5f64..5.0,
    ) {
        // q S_{q+1} = d/dzeta S_q, checked by central differences
        let m = StepMeasure::new(pairs).unwrap();
        let z = Complex64::new(re, im);
        let h = 1e-6;
        let diff = (stieltjes_q(&m, q, z + h).unwrap() - stieltjes_q(&m, q, z - h).unwrap())
            / (2.0 * h);
        let exact = stieltjes_q(&m, q + 1, z).unwrap() * q as f64;
        prop_assert!((diff - exact).norm() <= 1e-5 * exact.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quadrature_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let path = [
            Complex64::new(1.0, 1.0),
            Complex64::new(-1.0, 1.0),
            Complex64::new(-1.0, -1.0),
        ];
        let f = |z: Complex64| z * z;
        let g = |z: Complex64| 1.0 / (z - Complex64::new(5.0, 0.0));
        let combined = integrate_polyline(|z| f(z) * a + g(z) * b, &path, 1e-12).unwrap();
        let fa = integrate_polyline(f, &path, 1e-12).unwrap();
        let gb = integrate_polyline(g, &path, 1e-12).unwrap();
        let expected = fa.value * a + gb.value * b;
        let budget = 1e-10 + fa.error_estimate * a.abs() + gb.error_estimate * b.abs()
            + combined.error_estimate;
        prop_assert!((combined.value - expected).norm() <= budget);
    }

    #[test]
    fn quadrature_reverses_sign(re in -2.0f64..-0.5, im in 0.5f64..2.0) {
        let path = [
            Complex64::new(1.0, 2.0),
            Complex64::new(re, im),
            Complex64::new(-1.0, -2.0),
        ];
        let reversed: Vec<Complex64> = path.iter().rev().copied().collect();
        let f = |z: Complex64| (z * Complex64::new(0.3, 0.1)).exp();
        let fwd = integrate_polyline(f, &path, 1e-12).unwrap();
        let bwd = integrate_polyline(f, &reversed, 1e-12).unwrap();
        let budget = 1e-10 + fwd.error_estimate + bwd.error_estimate;
        prop_assert!((fwd.value + bwd.value).norm() <= budget);
    }

    #[test]
    fn riesz_bound_tolerates_jump_at_lambda0(
        pairs in atom_pairs(),
        weight in 0.01f64..10.0,
        alpha in 0.3f64..2.5,
    ) {
        // a jump exactly at lambda0 leaves the Riesz-mean report valid
        let m0 = StepMeasure::new(pairs).unwrap();
        let lambda0 = 1.5 * m0.max_position();
        let mut pairs: Vec<(f64, f64)> =
            m0.atoms().iter().map(|a| (a.position, a.weight)).collect();
        pairs.push((lambda0, weight));
        let m = StepMeasure::new(pairs).unwrap();
        let point = EvaluationPoint::new(lambda0, 0.3 * lambda0).unwrap();
        let contour = default_contour(&point);
        let opts = ReportOptions { allow_atom_at_lambda0: true, ..Default::default() };
        let report = thm1_report(&m, &point, &contour, alpha, Regime::General, &opts).unwrap();
        prop_assert!(report.holds, "margin {}", report.margin);
    }
}

#[test]
fn beta_identities_check_log_gamma() {
    use tauber::complexpath::beta;
    let pi = std::f64::consts::PI;
    for i in 1..=9 {
        let alpha = i as f64 / 10.0;
        let lhs = beta((alpha + 2.0) / 2.0, (2.0 - alpha) / 2.0);
        let closed = (pi * alpha / 2.0) / (pi * alpha / 2.0).sin();
        assert!((lhs - closed).abs() < 1e-10, "alpha={alpha}");
        let rhs = beta((alpha + 3.0) / 2.0, (1.0 - alpha) / 2.0);
        let closed2 = (pi * (alpha + 1.0) / 2.0) / (pi * alpha / 2.0).cos();
        assert!((rhs - closed2).abs() < 1e-10, "alpha={alpha}");
    }
}

#[test]
fn contour_independence_of_main_terms() {
    use tauber::verify::pleijel_report;
    let m = StepMeasure::new([(0.7, 1.0), (1.4, 0.5), (6.0, 2.0)]).unwrap();
    let point = EvaluationPoint::new(2.0, 1.0).unwrap();
    let contours = alternative_contours(&point);
    let opts = ReportOptions::default();
    let reports: Vec<_> = contours
        .iter()
        .map(|g| pleijel_report(&m, &point, g, &opts).unwrap())
        .collect();
    for r in &reports[1..] {
        let budget = 10.0 * (r.quadrature_error + reports[0].quadrature_error);
        assert!(
            (r.main_term - reports[0].main_term).norm() <= budget.max(1e-10),
            "main terms differ: {} vs {}",
            r.main_term,
            reports[0].main_term
        );
    }
}

/// Three distinct valid contours from `ζ₀` to its conjugate.
fn alternative_contours(point: &EvaluationPoint) -> Vec<tauber::complexpath::Contour> {
    use tauber::complexpath::Contour;
    let l = point.lambda0();
    let e = point.eta0();
    let r = l + e;
    vec![
        default_contour(point),
        Contour::new(vec![
            Complex64::new(l, e),
            Complex64::new(l, 3.0 * e),
            Complex64::new(-2.0 * l, 3.0 * e),
            Complex64::new(-2.0 * l, -3.0 * e),
            Complex64::new(l, -3.0 * e),
            Complex64::new(l, -e),
        ])
        .unwrap(),
        Contour::new(vec![
            Complex64::new(l, e),
            Complex64::new(0.0, r),
            Complex64::new(-r, 0.0),
            Complex64::new(0.0, -r),
            Complex64::new(l, -e),
        ])
        .unwrap(),
    ]
}
