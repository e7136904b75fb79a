//! Acceptance checklist: ten end-to-end checks covering the explicit
//! constants, the kernel algebra, the contour identities, and the randomized
//! inequality suites. Each check prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

use num::complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tauber::complexpath::{beta, default_contour, integrate_polyline, Contour, EvaluationPoint};
use tauber::constants::{
    pointwise_margin, thm1_constants, thm2_constants_with_grid, Regime, SUP_GRID_POINTS,
};
use tauber::kernels::{leading_coeff, solve_combination, t_eval, t_poly, KernelBasis};
use tauber::measure::StepMeasure;
use tauber::transforms::stieltjes;
use tauber::verify::{
    closed_contour_identity, pleijel_report, random_instance, random_instance_atom_at_lambda0,
    segment_remainder, thm1_report, thm2_report, thm3_report, ReportOptions,
};

const PI: f64 = std::f64::consts::PI;

fn check(name: &str, ok: bool, detail: &str) {
    if ok {
        println!("PASS {name}: {detail}");
    } else {
        println!("FAIL {name}: {detail}");
        panic!("{name} failed: {detail}");
    }
}

#[test]
fn a01_riesz_bound_constants() {
    let k1 = thm1_constants(1.0, Regime::General).unwrap();
    let exact =
        k1.c1.norm() <= 1e-12 && (k1.c2 - 2.0).abs() <= 1e-12 && (k1.c3 - 2.0).abs() <= 1e-12;

    // two-sided bound for c2/2 and the c3 caps, on 100 alpha samples
    let mut worst_sandwich = 0.0f64;
    let mut worst_cap = 0.0f64;
    for i in 0..100 {
        let alpha = 0.1 + 9.9 * i as f64 / 99.0;
        let k = thm1_constants(alpha, Regime::General).unwrap();
        let lo = k.a.abs() / alpha;
        let hi = (k.a.abs() * (alpha + 1.0) + 1.0) / (alpha * (alpha + 2.0));
        worst_sandwich = worst_sandwich.max(lo - k.c2 / 2.0).max(k.c2 / 2.0 - hi);
        worst_cap = worst_cap.max(k.c3 - 2.0 / alpha);
    }
    let lt1_cap = (4.0 + PI * PI).sqrt();
    for i in 1..100 {
        let alpha = i as f64 / 100.0;
        let k = thm1_constants(alpha, Regime::AlphaLt1).unwrap();
        worst_cap = worst_cap.max(k.c3 - lt1_cap);
    }
    let multiplier_identity =
        ((4.0 + PI * PI).sqrt() / (2.0 * PI) - (1.0 / (PI * PI) + 0.25).sqrt()).abs();

    check(
        "a01 riesz-bound constants",
        exact && worst_sandwich <= 1e-12 && worst_cap <= 1e-12 && multiplier_identity <= 1e-14,
        &format!(
            "alpha=1 triple exact: {exact}, sandwich slack {worst_sandwich:.2e}, \
             cap slack {worst_cap:.2e}, multiplier identity {multiplier_identity:.2e}"
        ),
    );
}

#[test]
fn a02_pointwise_margins() {
    let alphas = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0];
    let mut worst = f64::NEG_INFINITY;
    let mut count = 0;
    for &alpha in &alphas {
        let mut regimes = vec![Regime::General];
        if alpha < 1.0 {
            regimes.push(Regime::AlphaLt1);
        }
        for regime in regimes {
            let k = thm1_constants(alpha, regime).unwrap();
            for i in 0..25 {
                let u = 10f64.powf(-3.0 + 6.0 * i as f64 / 24.0);
                for s in [1.0, -1.0] {
                    worst = worst.max(pointwise_margin(&k, u, s).unwrap());
                    count += 1;
                }
            }
        }
    }
    check(
        "a02 pointwise margins",
        worst <= 1e-10,
        &format!("worst margin {worst:.3e} over {count} points"),
    );
}

#[test]
fn a03_beta_identities() {
    let mut worst = 0.0f64;
    for i in 1..=9 {
        let alpha = i as f64 / 10.0;
        let half = PI * alpha / 2.0;
        let b1 = beta((alpha + 2.0) / 2.0, (2.0 - alpha) / 2.0);
        let b2 = beta((alpha + 3.0) / 2.0, (1.0 - alpha) / 2.0);
        worst = worst.max((b1 - half / half.sin()).abs());
        worst = worst.max((b2 - (PI * (alpha + 1.0) / 2.0) / half.cos()).abs());
        // the two weighted sides agree
        worst = worst.max((half.sin() / alpha * b1 - half.cos() / (alpha + 1.0) * b2).abs());
    }
    check(
        "a03 beta identities",
        worst <= 1e-10,
        &format!("worst deviation {worst:.3e}"),
    );
}

fn t_quadrature_oracle(q: u32, m: u32, mu: f64) -> Complex64 {
    let muc = Complex64::new(mu, 0.0);
    let f = |tau: Complex64| tau.powu(m) * (muc - Complex64::i() * tau).powi(-(q as i32));
    integrate_polyline(
        f,
        &[
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ],
        1e-10,
    )
    .unwrap()
    .value
}

#[test]
fn a04_kernel_closed_forms() {
    // pinned closed forms
    let k20 = t_poly(2, 0).unwrap();
    let k30 = t_poly(3, 0).unwrap();
    let k31 = t_poly(3, 1).unwrap();
    let pinned = k20.numerator.complex_coeffs() == vec![Complex64::new(2.0, 0.0)]
        && k20.power == 1
        && k30.numerator.complex_coeffs()
            == vec![Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)]
        && k30.power == 2
        && k31.numerator.complex_coeffs() == vec![Complex64::new(0.0, 2.0)]
        && k31.power == 2;

    let grid = [0.1, 0.5, 1.0, 2.0, 10.0];
    let mut structure = true;
    let mut worst_parity = 0.0f64;
    let mut worst_quad = 0.0f64;
    for q in 2..=8u32 {
        let basis = KernelBasis::new(q).unwrap();
        structure &= basis.rank() == (q - 1) as usize;
        for m in 0..=q - 2 {
            let k = t_poly(q, m).unwrap();
            let deg = k.numerator.degree().unwrap() as u32;
            structure &= deg == if m % 2 == 0 { q - 2 } else { q - 3 };
            structure &= if (q - m) % 2 == 0 {
                k.numerator.is_even()
            } else {
                k.numerator.is_odd()
            };
        }
        for m in 0..=q - 1 {
            let sign = if (q - m) % 2 == 0 { 1.0 } else { -1.0 };
            for &mu in &grid {
                let v = t_eval(q, m, mu).unwrap();
                let reflected = t_eval(q, m, -mu).unwrap();
                worst_parity = worst_parity.max((reflected - v * sign).norm());
                worst_quad = worst_quad.max((v - t_quadrature_oracle(q, m, mu)).norm());
            }
        }
    }
    check(
        "a04 kernel closed forms",
        pinned && structure && worst_parity <= 1e-12 && worst_quad <= 1e-9,
        &format!(
            "pinned {pinned}, structure {structure}, parity {worst_parity:.2e}, \
             quadrature agreement {worst_quad:.2e}"
        ),
    );
}

#[test]
fn a05_asymptotic_coefficients() {
    let mu = 1e3;
    let mut worst = 0.0f64;
    for q in 2..=6u32 {
        for m in 0..=q - 1 {
            let b = leading_coeff(q, m).unwrap();
            let t = t_eval(q, m, mu).unwrap();
            let scaled = if m % 2 == 0 {
                t * mu.powi(q as i32)
            } else {
                t * mu.powi(q as i32 + 1)
            };
            worst = worst.max((scaled - b).norm() / b.norm());
        }
    }
    check(
        "a05 asymptotic coefficients",
        worst <= 1e-3,
        &format!("worst relative deviation {worst:.3e} at mu={mu:.0e}"),
    );
}

#[test]
fn a06_sup_constants() {
    let k2 = thm2_constants_with_grid(2, SUP_GRID_POINTS).unwrap();
    let q2 = (k2.c_m[0] - PI / 2.0).abs();

    let k3 = thm2_constants_with_grid(3, SUP_GRID_POINTS).unwrap();
    let q3_exact = k3.extra_ratio == 1.0 / 3.0;

    let mut parity_exact = true;
    for q in 2..=6u32 {
        let combo = solve_combination(q).unwrap();
        let k = thm2_constants_with_grid(q, SUP_GRID_POINTS).unwrap();
        for (m, coeff) in combo.iter().enumerate() {
            let excluded = (q as usize - m) % 2 == 1;
            if excluded {
                parity_exact &= coeff.is_zero();
                if !(q % 2 == 1 && m == 0) {
                    parity_exact &= k.c_m[m] == 0.0;
                }
            }
        }
    }

    let mut worst_drift = 0.0f64;
    for q in 2..=5u32 {
        let coarse = thm2_constants_with_grid(q, SUP_GRID_POINTS).unwrap();
        let fine = thm2_constants_with_grid(q, 10 * SUP_GRID_POINTS).unwrap();
        worst_drift = worst_drift.max((coarse.c_sup - fine.c_sup).abs() / fine.c_sup);
    }

    check(
        "a06 sup constants",
        q2 <= 1e-6 && q3_exact && parity_exact && worst_drift <= 1e-6,
        &format!(
            "q=2 deviates {q2:.2e} from pi/2, q=3 ratio exact {q3_exact}, \
             parity zeros exact {parity_exact}, refinement drift {worst_drift:.2e}"
        ),
    );
}

/// Three distinct valid contours from `ζ₀` to its conjugate: the default
/// rectangle, a wider and taller rectangle, and a diamond through `±i(λ₀+η₀)`.
fn three_contours(point: &EvaluationPoint) -> Vec<Contour> {
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
        .expect("tall rectangle is valid"),
        Contour::new(vec![
            Complex64::new(l, e),
            Complex64::new(0.0, r),
            Complex64::new(-r, 0.0),
            Complex64::new(0.0, -r),
            Complex64::new(l, -e),
        ])
        .expect("diamond is valid"),
    ]
}

#[test]
fn a07_contour_identities() {
    let opts = ReportOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7001);
    let alphas = [0.5, 1.0, 2.0];
    let mut worst_residual = 0.0f64;
    for i in 0..100 {
        let (measure, point) = random_instance(&mut rng);
        let contour = default_contour(&point);
        let alpha = alphas[i % alphas.len()];
        let r = closed_contour_identity(&measure, &point, &contour, alpha, &opts).unwrap();
        worst_residual = worst_residual.max(r);
    }

    let mut independent = true;
    let mut worst_gap = 0.0f64;
    for i in 0..25 {
        let (measure, point) = random_instance(&mut rng);
        let alpha = alphas[i % alphas.len()];
        let reports: Vec<_> = three_contours(&point)
            .iter()
            .map(|g| thm1_report(&measure, &point, g, alpha, Regime::General, &opts).unwrap())
            .collect();
        for r in &reports[1..] {
            let gap = (r.main_term - reports[0].main_term).norm();
            let budget = (10.0 * (r.quadrature_error + reports[0].quadrature_error)).max(1e-10);
            worst_gap = worst_gap.max(gap / budget);
            independent &= gap <= budget;
        }
    }

    check(
        "a07 contour identities",
        worst_residual <= 1e-8 && independent,
        &format!(
            "worst loop residual {worst_residual:.3e}, \
             main-term contour spread at {worst_gap:.2}x budget"
        ),
    );
}

#[test]
fn a08_inequality_suites() {
    let opts = ReportOptions::default();
    let mut total = 0u32;
    let mut violations = 0u32;
    let mut worst_normalized = f64::INFINITY;
    let mut track = |holds: bool, margin: f64, tolerance: f64| {
        total += 1;
        if !holds {
            violations += 1;
        }
        worst_normalized = worst_normalized.min(margin / tolerance.max(1e-300));
    };

    let mut rng = ChaCha8Rng::seed_from_u64(8001);
    for _ in 0..1000 {
        let (m, p) = random_instance(&mut rng);
        let g = default_contour(&p);
        let r = pleijel_report(&m, &p, &g, &opts).unwrap();
        track(r.holds, r.margin, r.tolerance);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8002);
    let thm1_params = [
        (0.5, Regime::General),
        (0.5, Regime::AlphaLt1),
        (1.0, Regime::General),
        (2.0, Regime::General),
    ];
    for i in 0..1000 {
        let (m, p) = random_instance(&mut rng);
        let g = default_contour(&p);
        let (alpha, regime) = thm1_params[i % thm1_params.len()];
        let r = thm1_report(&m, &p, &g, alpha, regime, &opts).unwrap();
        track(r.holds, r.margin, r.tolerance);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8003);
    let qs = [2u32, 3, 4, 5];
    for i in 0..1000 {
        let (m, p) = random_instance(&mut rng);
        let g = default_contour(&p);
        let r = thm2_report(&m, &p, &g, qs[i % qs.len()], &opts).unwrap();
        track(r.holds, r.margin, r.tolerance);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8004);
    let thm3_params = [(2u32, 0.5), (2, 1.0), (3, 0.5), (3, 1.0)];
    for i in 0..1000 {
        let (m, p) = random_instance(&mut rng);
        let g = default_contour(&p);
        let (q, alpha) = thm3_params[i % thm3_params.len()];
        let r = thm3_report(&m, &p, &g, q, alpha, &opts).unwrap();
        track(r.holds, r.margin, r.tolerance);
    }

    // jumps exactly at lambda0 keep the Riesz-mean bound valid
    let mut rng = ChaCha8Rng::seed_from_u64(8005);
    let jump_opts = ReportOptions {
        allow_atom_at_lambda0: true,
        ..opts
    };
    let alphas = [0.5, 1.0, 2.0];
    for i in 0..100 {
        let (m, p) = random_instance_atom_at_lambda0(&mut rng);
        let g = default_contour(&p);
        let r = thm1_report(
            &m,
            &p,
            &g,
            alphas[i % alphas.len()],
            Regime::General,
            &jump_opts,
        )
        .unwrap();
        track(r.holds, r.margin, r.tolerance);
    }

    check(
        "a08 inequality suites",
        violations == 0 && total == 4100,
        &format!(
            "{violations} violations in {total} trials, \
             worst margin at {worst_normalized:.2e}x tolerance"
        ),
    );
}

#[test]
fn a09_remainder_consistency() {
    let opts = ReportOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9001);
    let alphas = [0.5, 1.0, 2.0];
    let mut worst_identity = 0.0f64;
    let mut bound_ok = true;
    for i in 0..100 {
        let (measure, point) = random_instance(&mut rng);
        let contour = default_contour(&point);
        let alpha = alphas[i % alphas.len()];
        let report =
            thm1_report(&measure, &point, &contour, alpha, Regime::General, &opts).unwrap();
        let rem = segment_remainder(&measure, &point, alpha, &opts).unwrap();
        let budget = (10.0 * (report.quadrature_error + rem.error_estimate)).max(1e-12);
        worst_identity = worst_identity.max((report.lhs - rem.value.norm()).abs() / budget);

        let s0 = stieltjes(&measure, point.zeta()).unwrap().norm();
        let scale = (point.eta0() / point.lambda0()).powf(alpha) * point.eta0() / (2.0 * PI) * s0;
        let mut regimes = vec![Regime::General];
        if alpha < 1.0 {
            regimes.push(Regime::AlphaLt1);
        }
        for regime in regimes {
            let k = thm1_constants(alpha, regime).unwrap();
            bound_ok &= rem.value.norm() <= scale * k.c3 + 10.0 * rem.error_estimate + 1e-12;
        }
    }
    check(
        "a09 remainder consistency",
        worst_identity <= 1.0 && bound_ok,
        &format!("identity gap at {worst_identity:.2e}x budget, segment bound holds: {bound_ok}"),
    );
}

#[test]
fn a10_demo_trend() {
    let measure = StepMeasure::weyl(1, 10_000);
    let opts = ReportOptions {
        allow_atom_at_lambda0: true,
        ..Default::default()
    };
    let gap = |lambda0: f64| {
        let point = EvaluationPoint::new(lambda0, lambda0.sqrt()).unwrap();
        let contour = default_contour(&point);
        let report = thm1_report(&measure, &point, &contour, 1.0, Regime::General, &opts).unwrap();
        report.lhs / measure.riesz_mean(1.0, lambda0)
    };
    let g2 = gap(1e2);
    let g3 = gap(1e3);

    let weyl_ratio = |lambda0: f64| measure.riesz_mean(1.0, lambda0) / lambda0.sqrt();
    let r = [weyl_ratio(1e2), weyl_ratio(1e3), weyl_ratio(1e4)];
    let settling = (r[2] - r[1]).abs() < (r[1] - r[0]).abs();

    // planar growth: riesz_mean/lambda0 approaches 1/(alpha+1) = 1/2
    let planar = StepMeasure::weyl(2, 2000);
    let p = |lambda0: f64| planar.riesz_mean(1.0, lambda0) / lambda0;
    let planar_trend =
        (p(1500.0) - 0.5).abs() < (p(500.0) - 0.5).abs() && (p(1500.0) - 0.5).abs() < 0.01;

    check(
        "a10 demo trend",
        g3 < g2 && settling && planar_trend,
        &format!(
            "relative gap {g2:.2e} -> {g3:.2e}, riesz/sqrt ratios {:.4}, {:.4}, {:.4}, \
             planar ratio {:.4} -> {:.4}",
            r[0],
            r[1],
            r[2],
            p(500.0),
            p(1500.0)
        ),
    );
}
