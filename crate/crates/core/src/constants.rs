//! Explicit constants of the remainder bounds.
//!
//! `thm1_constants` produces the triple `(c1, c2, c3)` controlling the
//! Riesz-mean remainder: `c1 = 2cos(πα/2)/(α+1)·e^{iπα/2}`, `c2` either the
//! discriminant-zero choice (general regime) or `2|sin(πα/2)|/α` (for
//! `α < 1`), and `c3 = sqrt(|c1|² + c2²)`. `thm2_constants` and
//! `thm3_constants` build the coefficient family `C_m` from the exact basis
//! combination and a supremum `C` of `|kernel|/H_q` over `μ > 0`, searched on
//! a log grid with golden-section refinement plus the analytic boundary
//! limits at `μ → 0⁺` and `μ → ∞`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::complex::Complex64;

use crate::complexpath::{beta, branch_pow, integrate_polyline};
use crate::error::{Error, Result};
use crate::kernels::{
    h_target, leading_coeff, solve_combination, t_eval, t_frac_eval, GaussianRational,
};

const PI: f64 = std::f64::consts::PI;

/// Which remainder constant `c2` to use: the discriminant-zero value valid
/// for every `α > 0`, or the sharper sine quotient available for `α < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    General,
    AlphaLt1,
}

/// Constants of the Riesz-mean remainder bound at a fixed order `alpha`.
#[derive(Debug, Clone, Copy)]
pub struct Thm1Constants {
    pub alpha: f64,
    pub regime: Regime,
    /// `sin(πα/2)`
    pub a: f64,
    /// `cos(πα/2)`
    pub b: f64,
    pub c1: Complex64,
    pub c2: f64,
    pub c3: f64,
}

impl Thm1Constants {
    /// Published multiplier of the bound `multiplier·(η₀/λ₀)^α·η₀·|S(ζ₀)|`:
    /// `1/(απ)` in the general regime, `sqrt(π⁻² + 1/4)` for `α < 1`.
    pub fn multiplier(&self) -> f64 {
        match self.regime {
            Regime::General => 1.0 / (self.alpha * PI),
            Regime::AlphaLt1 => (1.0 / (PI * PI) + 0.25).sqrt(),
        }
    }

    /// The sharper computed multiplier `c3/(2π)`.
    pub fn sharp_multiplier(&self) -> f64 {
        self.c3 / (2.0 * PI)
    }

    /// Leading coefficient and discriminant of the certificate quadratic
    /// `(c2·α − 2|a|)τ² − (4|b|/(α+1))τ + (c2·α − 2|a| + 2c2)`.
    ///
    /// In the general regime the discriminant is zero by construction and
    /// the leading coefficient is nonnegative, which certifies the pointwise
    /// remainder inequality.
    pub fn certificate_polynomial(&self) -> (f64, f64) {
        let lead = self.c2 * self.alpha - 2.0 * self.a.abs();
        let lin = 4.0 * self.b.abs() / (self.alpha + 1.0);
        let cst = lead + 2.0 * self.c2;
        (lead, lin * lin - 4.0 * lead * cst)
    }
}

/// Computes the remainder constants for order `alpha` in the given regime.
pub fn thm1_constants(alpha: f64, regime: Regime) -> Result<Thm1Constants> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::OutOfRange(format!(
            "thm1_constants needs alpha > 0, got {alpha}"
        )));
    }
    if regime == Regime::AlphaLt1 && alpha >= 1.0 {
        return Err(Error::RegimeMismatch(alpha));
    }
    let half = PI * alpha / 2.0;
    let a = half.sin();
    let b = half.cos();
    let c1 = Complex64::from_polar(1.0, half) * (2.0 * b / (alpha + 1.0));
    let c2 = match regime {
        Regime::General => {
            2.0 * (a.abs() * (alpha + 1.0).powi(2) + (a * a + alpha * (alpha + 2.0)).sqrt())
                / (alpha * (alpha + 1.0) * (alpha + 2.0))
        }
        Regime::AlphaLt1 => 2.0 * a.abs() / alpha,
    };
    let c3 = (c1.norm_sqr() + c2 * c2).sqrt();
    Ok(Thm1Constants {
        alpha,
        regime,
        a,
        b,
        c1,
        c2,
        c3,
    })
}

/// Margin of the pointwise remainder inequality at `(u, s)`:
///
/// `|u^{-α} ∫_{-u}^{u} τ^α (s+iτ)/(1+τ²) dτ − c1·su/(1+u²)| − c2·u²/(1+u²)`
///
/// computed with adaptive quadrature split at `τ = 0` (principal branch on
/// the negative half). A nonpositive return certifies the inequality at
/// this point.
pub fn pointwise_margin(constants: &Thm1Constants, u: f64, s: f64) -> Result<f64> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::OutOfRange(format!(
            "pointwise_margin needs u > 0, got {u}"
        )));
    }
    assert!(s == 1.0 || s == -1.0, "s must be +1 or -1");
    let alpha = constants.alpha;
    // tau^alpha * u^{-alpha} == (tau/u)^alpha exactly, and the scaled
    // integrand stays O(1) across the whole u range
    let f = move |tau: Complex64| {
        branch_pow(tau / u, alpha) * (s + Complex64::i() * tau) / (1.0 + tau * tau)
    };
    let path = [
        Complex64::new(-u, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(u, 0.0),
    ];
    let integral = integrate_polyline(f, &path, 1e-10)?.value;
    let lhs = (integral - constants.c1 * (s * u / (1.0 + u * u))).norm();
    let rhs = constants.c2 * u * u / (1.0 + u * u);
    Ok(lhs - rhs)
}

/// Coefficients of the generalized-transform bound for a fixed `q`:
/// the exact combination `combo` expressing `H_q` in the kernel basis, the
/// supremum `c_sup` of the critical ratio, the odd-`q` leading-coefficient
/// ratio `extra_ratio`, and the assembled `C_m = c_sup·|combo_m|`
/// (plus `extra_ratio` on `C_0` for odd `q`).
#[derive(Debug, Clone)]
pub struct Thm2Constants {
    pub q: u32,
    pub combo: Vec<GaussianRational>,
    pub c_sup: f64,
    pub extra_ratio: f64,
    pub c_m: Vec<f64>,
}

/// As [`Thm2Constants`], for the fractional kernel of order `q−1+α`, plus
/// the Beta normalization `B(q, α)`.
#[derive(Debug, Clone)]
pub struct Thm3Constants {
    pub q: u32,
    pub alpha: f64,
    pub combo: Vec<GaussianRational>,
    pub c_sup: f64,
    pub extra_ratio: f64,
    pub c_m: Vec<f64>,
    pub b_q_alpha: f64,
}

const SUP_LO: f64 = 1e-6;
const SUP_HI: f64 = 1e6;
/// Default log-grid resolution of the supremum search.
pub const SUP_GRID_POINTS: usize = 10_000;

fn golden_max<F: Fn(f64) -> Result<f64>>(f: &F, mut lo: f64, mut hi: f64) -> Result<f64> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(10f64.powf(c))?;
    let mut fd = f(10f64.powf(d))?;
    let mut best = fc.max(fd);
    for _ in 0..200 {
        if hi - lo < 1e-12 {
            break;
        }
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(10f64.powf(c))?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(10f64.powf(d))?;
        }
        best = best.max(fc).max(fd);
    }
    Ok(best)
}

/// Supremum of `ratio` over `μ ∈ (0, ∞)`: log grid over `[1e-6, 1e6]`,
/// golden-section refinement around the grid maximum, and the analytic
/// boundary limits as additional candidates. Errors out when the ratio is
/// still growing past its boundary limit at either grid end.
fn sup_search<F: Fn(f64) -> Result<f64>>(
    ratio: &F,
    limit_zero: f64,
    limit_inf: f64,
    grid_points: usize,
    q: u32,
) -> Result<f64> {
    assert!(grid_points >= 3);
    let log_lo = SUP_LO.log10();
    let log_hi = SUP_HI.log10();
    let step = (log_hi - log_lo) / (grid_points - 1) as f64;
    let mut vals = Vec::with_capacity(grid_points);
    for i in 0..grid_points {
        vals.push(ratio(10f64.powf(log_lo + step * i as f64))?);
    }
    let imax = vals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    if imax == 0 && vals[0] > limit_zero * 1.1 + 1e-6 {
        return Err(Error::UnboundedRatio { q });
    }
    if imax == grid_points - 1 && vals[imax] > limit_inf * 1.1 + 1e-6 {
        return Err(Error::UnboundedRatio { q });
    }
    let lo = log_lo + step * imax.saturating_sub(1) as f64;
    let hi = log_lo + step * (imax + 1).min(grid_points - 1) as f64;
    let refined = golden_max(ratio, lo, hi)?;
    Ok(refined.max(vals[imax]).max(limit_zero).max(limit_inf))
}

pub fn thm2_constants(q: u32) -> Result<Thm2Constants> {
    thm2_constants_with_grid(q, SUP_GRID_POINTS)
}

/// Grid-resolution control used by convergence checks.
pub fn thm2_constants_with_grid(q: u32, grid_points: usize) -> Result<Thm2Constants> {
    if q < 2 {
        return Err(Error::OutOfRange(format!(
            "thm2_constants needs q >= 2, got {q}"
        )));
    }
    let combo = solve_combination(q)?;
    let h = h_target(q);
    let h_zero = h.eval_f64(0.0).re;
    // |T_{q,q-1}(mu)| -> pi as mu -> 0+, for every q
    let limit_zero = PI / h_zero;
    let (c_sup, extra_ratio) = if q % 2 == 0 {
        let ratio =
            |mu: f64| -> Result<f64> { Ok(t_eval(q, q - 1, mu)?.norm() / h.eval_f64(mu).re) };
        (sup_search(&ratio, limit_zero, 0.0, grid_points, q)?, 0.0)
    } else {
        // For odd q the critical kernel decays like H only after removing
        // its mu^{-q} part: subtract (b_{q,q-1}/b_{q,0}) T_{q,0}.
        let r = leading_coeff(q, q - 1)?.re / leading_coeff(q, 0)?.re;
        let ratio = |mu: f64| -> Result<f64> {
            Ok((t_eval(q, q - 1, mu)? - t_eval(q, 0, mu)? * r).norm() / h.eval_f64(mu).re)
        };
        (sup_search(&ratio, limit_zero, 0.0, grid_points, q)?, r)
    };
    let mut c_m: Vec<f64> = combo.iter().map(|c| c_sup * c.abs()).collect();
    if q % 2 == 1 {
        c_m[0] += extra_ratio;
    }
    Ok(Thm2Constants {
        q,
        combo,
        c_sup,
        extra_ratio,
        c_m,
    })
}

pub fn thm3_constants(q: u32, alpha: f64) -> Result<Thm3Constants> {
    if q < 2 {
        return Err(Error::OutOfRange(format!(
            "thm3_constants needs q >= 2, got {q}"
        )));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::OutOfRange(format!(
            "thm3_constants needs alpha > 0, got {alpha}"
        )));
    }
    let combo = solve_combination(q)?;
    let h = h_target(q);
    let h_zero = h.eval_f64(0.0).re;
    // coefficient of the leading power of H_q at infinity (the numerator is
    // the constant 2 when its top degree is zero)
    let h_inf = if q <= 3 { 2.0 } else { 1.0 };
    let sin_half = (PI * alpha / 2.0).sin().abs();
    // |T_{q,q-1+alpha}(0+)| = 2|sin(pi alpha/2)|/alpha
    let limit_zero = 2.0 * sin_half / (alpha * h_zero);
    let qf = q as f64;
    let (c_sup, extra_ratio) = if q % 2 == 0 {
        let ratio =
            |mu: f64| -> Result<f64> { Ok(t_frac_eval(q, alpha, mu)?.norm() / h.eval_f64(mu).re) };
        let limit_inf = 2.0 * sin_half / ((qf + alpha) * h_inf);
        (
            sup_search(&ratio, limit_zero, limit_inf, SUP_GRID_POINTS, q)?,
            0.0,
        )
    } else {
        // Estimate the leading large-mu coefficient of T_{q,q-1+alpha} by
        // extrapolating mu^q T to mu -> infinity from three samples.
        let mus = [1e3, 3e3, 1e4];
        let xs: Vec<f64> = mus.iter().map(|m| 1.0 / m).collect();
        let mut b0 = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            let fi = t_frac_eval(q, alpha, mus[i])? * mus[i].powi(q as i32);
            let mut w = 1.0;
            for j in 0..3 {
                if j != i {
                    w *= (0.0 - xs[j]) / (xs[i] - xs[j]);
                }
            }
            b0 += fi * w;
        }
        let r_hat = b0 / leading_coeff(q, 0)?.re;
        let ratio = |mu: f64| -> Result<f64> {
            Ok((t_frac_eval(q, alpha, mu)? - t_eval(q, 0, mu)? * r_hat).norm() / h.eval_f64(mu).re)
        };
        let limit_inf = 2.0 * qf * sin_half / ((qf + 1.0 + alpha) * h_inf);
        (
            sup_search(&ratio, limit_zero, limit_inf, SUP_GRID_POINTS, q)?,
            r_hat.norm(),
        )
    };
    let mut c_m: Vec<f64> = combo.iter().map(|c| c_sup * c.abs()).collect();
    if q % 2 == 1 {
        c_m[0] += extra_ratio;
    }
    Ok(Thm3Constants {
        q,
        alpha,
        combo,
        c_sup,
        extra_ratio,
        c_m,
        b_q_alpha: beta(qf, alpha),
    })
}

/// Memoized [`thm2_constants`]; the supremum search is deterministic, so
/// concurrent duplicate computation is harmless.
pub fn thm2_constants_cached(q: u32) -> Result<Arc<Thm2Constants>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Thm2Constants>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&q) {
        return Ok(v.clone());
    }
    let v = Arc::new(thm2_constants(q)?);
    cache.lock().unwrap().insert(q, v.clone());
    Ok(v)
}

/// Memoized [`thm3_constants`], keyed by `(q, alpha)` bits.
pub fn thm3_constants_cached(q: u32, alpha: f64) -> Result<Arc<Thm3Constants>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u64), Arc<Thm3Constants>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (q, alpha.to_bits());
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(thm3_constants(q, alpha)?);
    cache.lock().unwrap().insert(key, v.clone());
    Ok(v)
}
