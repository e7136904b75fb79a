//! Verification reports for the counting-function inequalities.
//!
//! Every report evaluates both sides of one inequality on a concrete
//! `(measure, ζ₀, Γ)` instance. Main terms are contour integrals of
//! transform data; all of them are instances of
//!
//! `main = −(1/2πi) ∫_Γ S_q(ζ) (λ₀−ζ)^{q−1} · (extra factor) dζ`,
//!
//! the sign fixed so that closing Γ with the vertical segment reproduces the
//! counting value exactly: the loop `Γ + [conj ζ₀, ζ₀]` winds `+1` around
//! the spectrum below `λ₀` while the residue of `S_q(ζ)(λ₀−ζ)^{q−1}` at an
//! atom is `−wⱼ`, so the negated loop integral over `2πi` is `N(λ₀)` (and
//! its Riesz-mean analogue once the branch factor is attached).

use num::complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexpath::{
    beta, branch_pow, default_contour, integrate_polyline, Contour, EvaluationPoint,
    QuadratureResult,
};
use crate::constants::{thm1_constants, thm2_constants_cached, thm3_constants_cached, Regime};
use crate::error::{Error, Result};
use crate::measure::StepMeasure;
use crate::transforms::{stieltjes_q, stieltjes_q_raw};

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Pleijel,
    Thm1,
    Thm2,
    Thm3,
}

/// Compact input echo carried by each report. The digest identifies the
/// contour geometry (FNV-1a over the vertex bit patterns).
#[derive(Debug, Clone, Serialize)]
pub struct InputSummary {
    pub lambda0: f64,
    pub eta0: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    pub contour_vertices: usize,
    pub contour_digest: String,
}

/// Both sides of one inequality instance. `holds` is
/// `margin ≥ −tolerance` with `tolerance = max(floor, 10·quadrature_error)`,
/// so quadrature noise can never produce a false violation.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub inputs: InputSummary,
    pub lhs: f64,
    #[serde(with = "crate::complexpath::complex_as_object")]
    pub main_term: Complex64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    pub quadrature_error: f64,
    pub tolerance: f64,
}

/// Report knobs: the atom-at-`λ₀` mode, the sharper computed multiplier for
/// the Riesz-mean bound, the per-integral quadrature tolerance, and the
/// floor of the verification tolerance.
#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub allow_atom_at_lambda0: bool,
    pub sharp_constant: bool,
    pub quad_tol: f64,
    pub tolerance_floor: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            allow_atom_at_lambda0: false,
            sharp_constant: false,
            quad_tol: 1e-10,
            tolerance_floor: 1e-9,
        }
    }
}

/// Relative separation required between `λ₀` and the atoms.
const ATOM_SEPARATION: f64 = 1e-6;

fn preflight(
    measure: &StepMeasure,
    point: &EvaluationPoint,
    contour: &Contour,
    opts: &ReportOptions,
) -> Result<()> {
    let z0 = point.zeta();
    if (z0 - contour.zeta0()).norm() > 1e-12 * (1.0 + z0.norm()) {
        return Err(Error::MismatchedEvaluationPoint {
            re: z0.re,
            im: z0.im,
        });
    }
    check_separation(measure, point.lambda0(), opts)
}

fn check_separation(measure: &StepMeasure, lambda0: f64, opts: &ReportOptions) -> Result<()> {
    if opts.allow_atom_at_lambda0 {
        return Ok(());
    }
    let d = measure.min_distance(lambda0);
    if d < ATOM_SEPARATION * lambda0 {
        return Err(Error::AtomTooClose {
            lambda0,
            distance: d,
        });
    }
    Ok(())
}

// -1/(2 pi i) = i/(2 pi)
fn neg_inv_two_pi_i() -> Complex64 {
    Complex64::new(0.0, 1.0 / (2.0 * PI))
}

/// The closing vertical segment `[conj ζ₀, ζ₀]`, split where it crosses the
/// real axis.
fn closing_segment(point: &EvaluationPoint) -> [Complex64; 3] {
    [
        point.zeta_conj(),
        Complex64::new(point.lambda0(), 0.0),
        point.zeta(),
    ]
}

fn contour_digest(contour: &Contour) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for v in contour.vertices() {
        for bits in [v.re.to_bits(), v.im.to_bits()] {
            for byte in bits.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
    }
    format!("{h:016x}")
}

fn summary(
    point: &EvaluationPoint,
    contour: &Contour,
    alpha: Option<f64>,
    q: Option<u32>,
) -> InputSummary {
    InputSummary {
        lambda0: point.lambda0(),
        eta0: point.eta0(),
        alpha,
        q,
        contour_vertices: contour.vertices().len(),
        contour_digest: contour_digest(contour),
    }
}

fn assemble(
    theorem: Theorem,
    inputs: InputSummary,
    lhs: f64,
    main_term: Complex64,
    rhs: f64,
    quadrature_error: f64,
    opts: &ReportOptions,
) -> VerificationReport {
    let tolerance = opts.tolerance_floor.max(10.0 * quadrature_error);
    let margin = rhs - lhs;
    VerificationReport {
        theorem,
        inputs,
        lhs,
        main_term,
        rhs,
        margin,
        holds: margin >= -tolerance,
        quadrature_error,
        tolerance,
    }
}

/// `|N(λ₀) − main| ≤ η₀·sqrt(1+π⁻²)·|S(ζ₀)|` with
/// `main = −(1/2πi)∫_Γ S(ζ) dζ`.
pub fn pleijel_report(
    measure: &StepMeasure,
    point: &EvaluationPoint,
    contour: &Contour,
    opts: &ReportOptions,
) -> Result<VerificationReport> {
    preflight(measure, point, contour, opts)?;
    let s0 = stieltjes_q(measure, 1, point.zeta())?;
    let integral = integrate_polyline(
        |z| stieltjes_q_raw(measure, 1, z),
        contour.vertices(),
        opts.quad_tol,
    )?;
    let main = integral.value * neg_inv_two_pi_i();
    let qerr = integral.error_estimate / (2.0 * PI);
    let n0 = measure.counting_value(point.lambda0());
    let lhs = (Complex64::new(n0, 0.0) - main).norm();
    let rhs = point.eta0() * (1.0 + 1.0 / (PI * PI)).sqrt() * s0.norm();
    Ok(assemble(
        Theorem::Pleijel,
        summary(point, contour, None, None),
        lhs,
        main,
        rhs,
        qerr,
        opts,
    ))
}

/// `|N^(α)(λ₀) − main| ≤ multiplier·(η₀/λ₀)^α·η₀·|S(ζ₀)|` with
/// `main = −(1/2πi)∫_Γ S(ζ)(1−ζ/λ₀)^α dζ`.
pub fn thm1_report(
    measure: &StepMeasure,
    point: &EvaluationPoint,
    contour: &Contour,
    alpha: f64,
    regime: Regime,
    opts: &ReportOptions,
) -> Result<VerificationReport> {
    preflight(measure, point, contour, opts)?;
    let constants = thm1_constants(alpha, regime)?;
    let lambda0 = point.lambda0();
    let s0 = stieltjes_q(measure, 1, point.zeta())?;
    let integral = integrate_polyline(
        |z| {
            stieltjes_q_raw(measure, 1, z)
                * branch_pow(Complex64::new(1.0, 0.0) - z / lambda0, alpha)
        },
        contour.vertices(),
        opts.quad_tol,
    )?;
    let main = integral.value * neg_inv_two_pi_i();
    let qerr = integral.error_estimate / (2.0 * PI);
    let riesz = measure.riesz_mean(alpha, lambda0);
    let lhs = (Complex64::new(riesz, 0.0) - main).norm();
    let multiplier = if opts.sharp_constant {
        constants.sharp_multiplier()
    } else {
        constants.multiplier()
    };
    let rhs = multiplier * (point.eta0() / lambda0).powf(alpha) * point.eta0() * s0.norm();
    Ok(assemble(
        Theorem::Thm1,
        summary(point, contour, Some(alpha), None),
        lhs,
        main,
        rhs,
        qerr,
        opts,
    ))
}

/// `|N(λ₀) − main| ≤ Σ_{m=0}^{q−2} C_m·η₀^{q−1−m}·|∫_Γ S_q(ζ)(λ₀−ζ)^m dζ|`
/// with `main = −(1/2πi)∫_Γ S_q(ζ)(λ₀−ζ)^{q−1} dζ`.
///
/// With the atom-at-`λ₀` mode enabled, the counting value is replaced by the
/// jump midpoint `(N(λ₀−0) + N(λ₀+0))/2`.
pub fn thm2_report(
    measure: &StepMeasure,
    point: &EvaluationPoint,
    contour: &Contour,
    q: u32,
    opts: &ReportOptions,
) -> Result<VerificationReport> {
    if q < 2 {
        return Err(Error::OutOfRange(format!(
            "thm2_report needs q >= 2, got {q}"
        )));
    }
    preflight(measure, point, contour, opts)?;
    let constants = thm2_constants_cached(q)?;
    let lambda0 = point.lambda0();
    let eta0 = point.eta0();
    let l0 = Complex64::new(lambda0, 0.0);
    let integral = integrate_polyline(
        |z| stieltjes_q_raw(measure, q, z) * (l0 - z).powi(q as i32 - 1),
        contour.vertices(),
        opts.quad_tol,
    )?;
    let main = integral.value * neg_inv_two_pi_i();
    let mut qerr = integral.error_estimate / (2.0 * PI);
    let mut rhs = 0.0;
    for (m, &cm) in constants.c_m.iter().enumerate() {
        if cm == 0.0 {
            continue;
        }
        let part = integrate_polyline(
            |z| stieltjes_q_raw(measure, q, z) * (l0 - z).powi(m as i32),
            contour.vertices(),
            opts.quad_tol,
        )?;
        let scale = cm * eta0.powi((q - 1) as i32 - m as i32);
        rhs += scale * part.value.norm();
        qerr += scale * part.error_estimate;
    }
    let n0 = if opts.allow_atom_at_lambda0 {
        0.5 * (measure.mass_below(lambda0) + measure.counting_value(lambda0))
    } else {
        measure.counting_value(lambda0)
    };
    let lhs = (Complex64::new(n0, 0.0) - main).norm();
    Ok(assemble(
        Theorem::Thm2,
        summary(point, contour, None, Some(q)),
        lhs,
        main,
        rhs,
        qerr,
        opts,
    ))
}

/// `|N^(α)(λ₀) − main| ≤ Σ C_m·(η₀/λ₀)^α·η₀^{q−1−m}·|∫_Γ S_q(ζ)(ζ−λ₀)^m dζ|`
/// with `main = −(αB(q,α)/2πi)∫_Γ S_q(ζ)(λ₀−ζ)^{q−1}(1−ζ/λ₀)^α dζ`.
pub fn thm3_report(
    measure: &StepMeasure,
    point: &EvaluationPoint,
    contour: &Contour,
    q: u32,
    alpha: f64,
    opts: &ReportOptions,
) -> Result<VerificationReport> {
    if q < 2 {
        return Err(Error::OutOfRange(format!(
            "thm3_report needs q >= 2, got {q}"
        )));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::OutOfRange(format!(
            "thm3_report needs alpha > 0, got {alpha}"
        )));
    }
    preflight(measure, point, contour, opts)?;
    let constants = thm3_constants_cached(q, alpha)?;
    let lambda0 = point.lambda0();
    let eta0 = point.eta0();
    let l0 = Complex64::new(lambda0, 0.0);
    let alpha_b = alpha * beta(q as f64, alpha);
    let integral = integrate_polyline(
        |z| {
            stieltjes_q_raw(measure, q, z)
                * (l0 - z).powi(q as i32 - 1)
                * branch_pow(Complex64::new(1.0, 0.0) - z / lambda0, alpha)
        },
        contour.vertices(),
        opts.quad_tol,
    )?;
    let main = integral.value * neg_inv_two_pi_i() * alpha_b;
    let mut qerr = integral.error_estimate * alpha_b / (2.0 * PI);
    let eta_ratio = (eta0 / lambda0).powf(alpha);
    let mut rhs = 0.0;
    for (m, &cm) in constants.c_m.iter().enumerate() {
        if cm == 0.0 {
            continue;
        }
        let part = integrate_polyline(
            |z| stieltjes_q_raw(measure, q, z) * (z - l0).powi(m as i32),
            contour.vertices(),
            opts.quad_tol,
        )?;
        let scale = cm * eta_ratio * eta0.powi((q - 1) as i32 - m as i32);
        rhs += scale * part.value.norm();
        qerr += scale * part.error_estimate;
    }
    let riesz = measure.riesz_mean(alpha, lambda0);
    let lhs = (Complex64::new(riesz, 0.0) - main).norm();
    Ok(assemble(
        Theorem::Thm3,
        summary(point, contour, Some(alpha), Some(q)),
        lhs,
        main,
        rhs,
        qerr,
        opts,
    ))
}

/// Residual of the closed-loop identity: with the loop `Γ + [conj ζ₀, ζ₀]`,
///
/// `| −(1/2πi) ∮ S(ζ)((λ₀−ζ)/λ₀)^α dζ − N^(α)(λ₀) |`
///
/// is zero in exact arithmetic; the return value is quadrature noise.
pub fn closed_contour_identity(
    measure: &StepMeasure,
    point: &EvaluationPoint,
    contour: &Contour,
    alpha: f64,
    opts: &ReportOptions,
) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::OutOfRange(format!(
            "closed_contour_identity needs alpha > 0, got {alpha}"
        )));
    }
    preflight(measure, point, contour, opts)?;
    let lambda0 = point.lambda0();
    let mut vertices = contour.vertices().to_vec();
    vertices.extend_from_slice(&closing_segment(point)[1..]);
    let loop_integral = integrate_polyline(
        |z| {
            stieltjes_q_raw(measure, 1, z)
                * branch_pow((Complex64::new(lambda0, 0.0) - z) / lambda0, alpha)
        },
        &vertices,
        opts.quad_tol,
    )?;
    let main = loop_integral.value * neg_inv_two_pi_i();
    let riesz = measure.riesz_mean(alpha, lambda0);
    Ok((main - Complex64::new(riesz, 0.0)).norm())
}

/// Remainder over the vertical segment:
/// `R_α(ζ₀) = (1/2πi)∫_{conj ζ₀}^{ζ₀} S(ζ)((λ₀−ζ)/λ₀)^α dζ`.
///
/// Its modulus is bounded by `(η₀/λ₀)^α·(η₀/2π)·c3·|S(ζ₀)|` and equals the
/// left side of the Riesz-mean report for the same inputs.
pub fn segment_remainder(
    measure: &StepMeasure,
    point: &EvaluationPoint,
    alpha: f64,
    opts: &ReportOptions,
) -> Result<QuadratureResult> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::OutOfRange(format!(
            "segment_remainder needs alpha > 0, got {alpha}"
        )));
    }
    check_separation(measure, point.lambda0(), opts)?;
    let lambda0 = point.lambda0();
    let path = closing_segment(point);
    let integral = integrate_polyline(
        |z| {
            stieltjes_q_raw(measure, 1, z)
                * branch_pow((Complex64::new(lambda0, 0.0) - z) / lambda0, alpha)
        },
        &path,
        opts.quad_tol,
    )?;
    // 1/(2 pi i) = -i/(2 pi)
    Ok(QuadratureResult {
        value: integral.value * Complex64::new(0.0, -1.0 / (2.0 * PI)),
        error_estimate: integral.error_estimate / (2.0 * PI),
        evaluations: integral.evaluations,
    })
}

/// Parameter set of one randomized verification suite.
#[derive(Debug, Clone, Copy)]
pub enum SuiteParams {
    Pleijel,
    Thm1 { alpha: f64, regime: Regime },
    Thm2 { q: u32 },
    Thm3 { q: u32, alpha: f64 },
}

/// Aggregate outcome of a randomized suite.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SuiteOutcome {
    pub trials: u32,
    pub violations: u32,
    pub worst_margin: f64,
}

/// Deterministic random instance: up to 20 atoms with positions in
/// `[0.1, 100]` and weights in `(0, 10]`, `λ₀` separated from every atom by
/// at least `1e-3·λ₀`, and `η₀` log-uniform in `[0.01, 10]·λ₀`.
pub fn random_instance(rng: &mut ChaCha8Rng) -> (StepMeasure, EvaluationPoint) {
    let n = rng.gen_range(1..=20usize);
    let measure =
        StepMeasure::new((0..n).map(|_| (rng.gen_range(0.1..100.0), rng.gen_range(0.005..10.0))))
            .expect("generated atoms are positive");
    let lambda0 = loop {
        let cand: f64 = rng.gen_range(0.1..100.0);
        if measure.min_distance(cand) >= 1e-3 * cand {
            break cand;
        }
    };
    let eta0 = lambda0 * 10f64.powf(rng.gen_range(-2.0..1.0));
    let point = EvaluationPoint::new(lambda0, eta0).expect("first quadrant");
    (measure, point)
}

/// As [`random_instance`], but with one extra atom placed exactly at `λ₀`.
pub fn random_instance_atom_at_lambda0(rng: &mut ChaCha8Rng) -> (StepMeasure, EvaluationPoint) {
    let (measure, point) = random_instance(rng);
    let mut pairs: Vec<(f64, f64)> = measure
        .atoms()
        .iter()
        .map(|a| (a.position, a.weight))
        .collect();
    pairs.push((point.lambda0(), rng.gen_range(0.005..10.0)));
    (StepMeasure::new(pairs).expect("positive atoms"), point)
}

/// Runs `trials` seeded random instances of one inequality over the default
/// contour and counts violations. Trials are evaluated in index order, so a
/// fixed seed reproduces the outcome exactly.
pub fn run_suite(
    params: SuiteParams,
    trials: u32,
    seed: u64,
    opts: &ReportOptions,
) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut worst_margin = f64::INFINITY;
    for _ in 0..trials {
        let (measure, point) = random_instance(&mut rng);
        let contour = default_contour(&point);
        let report = match params {
            SuiteParams::Pleijel => pleijel_report(&measure, &point, &contour, opts)?,
            SuiteParams::Thm1 { alpha, regime } => {
                thm1_report(&measure, &point, &contour, alpha, regime, opts)?
            }
            SuiteParams::Thm2 { q } => thm2_report(&measure, &point, &contour, q, opts)?,
            SuiteParams::Thm3 { q, alpha } => {
                thm3_report(&measure, &point, &contour, q, alpha, opts)?
            }
        };
        if !report.holds {
            violations += 1;
        }
        worst_margin = worst_margin.min(report.margin);
    }
    Ok(SuiteOutcome {
        trials,
        violations,
        worst_margin,
    })
}
