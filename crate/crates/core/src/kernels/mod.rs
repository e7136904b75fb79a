//! The kernel family `T_{q,m}(μ) = ∫_{-1}^{1} τ^m (μ − iτ)^{-q} dτ`.
//!
//! For `m ≤ q−2` the integral is a rational function
//! `P_{q,m}(μ) / (1+μ²)^{q−1}` whose numerator is computed exactly over the
//! Gaussian rationals: substituting `u = μ − iτ` turns the integrand into a
//! linear combination of powers `u^{k−q}` with `k ≤ m ≤ q−2`, so term-wise
//! antiderivatives exist without logarithms and evaluate at the endpoints
//! `μ ∓ i`. For `m = q−1` a closed form with an arctangent appears instead,
//! evaluated through an asymptotic series for large `|μ|` where the closed
//! form cancels catastrophically.
//!
//! The module also provides the comparison target `H_q`, the large-`μ`
//! leading coefficients `b_{q,m}`, the exact basis solve expressing `H_q`
//! in terms of `P_{q,m}`, and the fractional-exponent kernel
//! `T_{q,q−1+α}` by adaptive quadrature.

mod rational;

pub use rational::{GaussianRational, GaussianRationalPoly};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::complex::Complex64;
use num::{BigInt, BigRational};

use crate::complexpath::{branch_pow, integrate_polyline};
use crate::error::{Error, Result};

/// `numerator(μ) / (1+μ²)^power` with exact coefficients and a cached `f64`
/// copy of the numerator for fast evaluation.
#[derive(Debug, Clone)]
pub struct RationalKernel {
    pub numerator: GaussianRationalPoly,
    pub power: u32,
    coeffs_f64: Vec<Complex64>,
}

impl PartialEq for RationalKernel {
    fn eq(&self, other: &Self) -> bool {
        self.numerator == other.numerator && self.power == other.power
    }
}

impl RationalKernel {
    pub fn new(numerator: GaussianRationalPoly, power: u32) -> Self {
        let coeffs_f64 = numerator.complex_coeffs();
        Self {
            numerator,
            power,
            coeffs_f64,
        }
    }

    pub fn eval_f64(&self, mu: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs_f64.iter().rev() {
            acc = acc * mu + c;
        }
        acc / (1.0 + mu * mu).powi(self.power as i32)
    }

    /// Exact evaluation at a rational `μ`.
    pub fn eval_rational(&self, mu: &BigRational) -> GaussianRational {
        let num = self.numerator.eval_rational(mu);
        let one = BigRational::from_integer(BigInt::from(1));
        let denom_base = &one + &(mu * mu);
        let mut denom = one;
        for _ in 0..self.power {
            denom *= &denom_base;
        }
        num.scale(&denom.recip())
    }
}

fn binom_big(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::from(1);
    for i in 0..k.min(n - k) {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn binom_f64(n: u32, k: u32) -> f64 {
    let mut r = 1.0;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Exact rational closed form of `T_{q,m}` for `0 ≤ m ≤ q−2`:
/// numerator `P_{q,m}` over `(1+μ²)^{q−1}`.
pub fn t_poly(q: u32, m: u32) -> Result<RationalKernel> {
    if q < 2 {
        return Err(Error::OutOfRange(format!("t_poly needs q >= 2, got {q}")));
    }
    if m > q - 2 {
        return Err(Error::OutOfRange(format!(
            "t_poly needs m <= q-2, got m={m}, q={q}"
        )));
    }
    let one = GaussianRational::one();
    let i_unit = GaussianRational::i();
    // mu + i, mu - i, 1 + mu^2
    let mu_plus_i = GaussianRationalPoly::from_coeffs(vec![i_unit.clone(), one.clone()]);
    let mu_minus_i = GaussianRationalPoly::from_coeffs(vec![-&i_unit, one.clone()]);
    let w =
        GaussianRationalPoly::from_coeffs(vec![one.clone(), GaussianRational::zero(), one.clone()]);

    let max_pow = (q - 1) as usize;
    let mut mp_pows = Vec::with_capacity(max_pow + 1);
    let mut mm_pows = Vec::with_capacity(max_pow + 1);
    let mut w_pows = Vec::with_capacity(m as usize + 1);
    mp_pows.push(GaussianRationalPoly::constant(one.clone()));
    mm_pows.push(GaussianRationalPoly::constant(one.clone()));
    w_pows.push(GaussianRationalPoly::constant(one));
    for p in 1..=max_pow {
        mp_pows.push(mp_pows[p - 1].mul(&mu_plus_i));
        mm_pows.push(mm_pows[p - 1].mul(&mu_minus_i));
    }
    for p in 1..=(m as usize) {
        w_pows.push(w_pows[p - 1].mul(&w));
    }

    let mut numerator = GaussianRationalPoly::zero();
    for k in 0..=m {
        let mut scalar_num = binom_big(m, k);
        if (m - k) % 2 == 1 {
            scalar_num = -scalar_num;
        }
        let scalar = GaussianRational::new(
            BigRational::new(scalar_num, BigInt::from(k as i64 - q as i64 + 1)),
            BigRational::from_integer(BigInt::from(0)),
        );
        let diff = mp_pows[(q - 1 - k) as usize].sub(&mm_pows[(q - 1 - k) as usize]);
        let term = diff
            .mul(&w_pows[k as usize])
            .shift_up((m - k) as usize)
            .scale(&scalar);
        numerator = numerator.add(&term);
    }
    numerator = numerator.scale(&GaussianRational::i_pow(m + 1));
    Ok(RationalKernel::new(numerator, q - 1))
}

fn kernel_cached(q: u32, m: u32) -> Result<Arc<RationalKernel>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<RationalKernel>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap();
    if let Some(k) = guard.get(&(q, m)) {
        return Ok(k.clone());
    }
    let kernel = Arc::new(t_poly(q, m)?);
    guard.insert((q, m), kernel.clone());
    Ok(kernel)
}

// Closed form of T_{q,q-1} for 0 < mu < asymptotic switch:
// i^q [ sum_{k=0}^{q-2} C(q-1,k) (-mu)^{q-1-k} ((mu-i)^{k-q+1} - (mu+i)^{k-q+1})/(k-q+1)
//       - 2 i atan(1/mu) ]
fn t_last_closed(q: u32, mu: f64) -> Complex64 {
    debug_assert!(mu > 0.0);
    let zp = Complex64::new(mu, 1.0);
    let zm = Complex64::new(mu, -1.0);
    let mut sum = Complex64::new(0.0, -2.0 * (1.0 / mu).atan());
    for k in 0..=q - 2 {
        let e = k as i32 - q as i32 + 1;
        let diff = zm.powi(e) - zp.powi(e);
        let factor = binom_f64(q - 1, k) * (-mu).powi((q - 1 - k) as i32) / e as f64;
        sum += diff * factor;
    }
    sum * Complex64::i().powu(q)
}

// Large-|mu| expansion of T_{q,q-1}, six terms. Expanding (mu - i tau)^{-q}
// in powers of tau/mu and integrating term by term gives, for m = q-1:
//   q odd  (m even): 2   sum_j C(q-1+2j, 2j)   (-1)^j mu^{-(q+2j)}  /(m+2j+1)
//   q even (m odd):  2 i sum_j C(q+2j,   2j+1) (-1)^j mu^{-(q+2j+1)}/(m+2j+2)
fn t_last_series(q: u32, mu: f64) -> Complex64 {
    debug_assert!(mu > 0.0);
    let m = q - 1;
    let mut sum = 0.0;
    let mut sign = 1.0;
    if q % 2 == 1 {
        for j in 0..6u32 {
            sum += sign * binom_f64(q - 1 + 2 * j, 2 * j) * mu.powi(-((q + 2 * j) as i32))
                / (m + 2 * j + 1) as f64;
            sign = -sign;
        }
        Complex64::new(2.0 * sum, 0.0)
    } else {
        for j in 0..6u32 {
            sum += sign * binom_f64(q + 2 * j, 2 * j + 1) * mu.powi(-((q + 2 * j + 1) as i32))
                / (m + 2 * j + 2) as f64;
            sign = -sign;
        }
        Complex64::new(0.0, 2.0 * sum)
    }
}

/// Switch point between the closed form and the asymptotic series for
/// `T_{q,q-1}`.
const SERIES_SWITCH: f64 = 10.0;

/// `T_{q,m}(μ)` for `0 ≤ m ≤ q−1` and real `μ ≠ 0`.
///
/// For `m ≤ q−2` the exact rational form is evaluated in `f64`; for
/// `m = q−1` the arctangent closed form is used, switching to the asymptotic
/// series for `|μ| ≥ 10` where the closed form loses all significant digits.
pub fn t_eval(q: u32, m: u32, mu: f64) -> Result<Complex64> {
    if q < 2 {
        return Err(Error::OutOfRange(format!("t_eval needs q >= 2, got {q}")));
    }
    if m > q - 1 {
        return Err(Error::OutOfRange(format!(
            "t_eval needs m <= q-1, got m={m}, q={q}"
        )));
    }
    if mu == 0.0 || !mu.is_finite() {
        return Err(Error::SingularKernelArgument);
    }
    if m <= q - 2 {
        return Ok(kernel_cached(q, m)?.eval_f64(mu));
    }
    let x = mu.abs();
    let v = if x >= SERIES_SWITCH {
        t_last_series(q, x)
    } else {
        t_last_closed(q, x)
    };
    // T_{q,m}(-mu) = (-1)^{q-m} T_{q,m}(mu); here q - m = 1.
    Ok(if mu < 0.0 { -v } else { v })
}

/// `T_{q,q−1+α}(μ) = ∫_{-1}^{1} τ^{q−1+α} (μ − iτ)^{-q} dτ` by adaptive
/// quadrature, with the principal branch for `τ^{q−1+α}` on `τ < 0` and the
/// path split at `τ = 0`. Absolute tolerance `1e-10`; for `|μ| > 1` the
/// integrand is rescaled by `μ^q` so the tolerance is effectively relative.
pub fn t_frac_eval(q: u32, alpha: f64, mu: f64) -> Result<Complex64> {
    if q < 2 {
        return Err(Error::OutOfRange(format!(
            "t_frac_eval needs q >= 2, got {q}"
        )));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::OutOfRange(format!(
            "t_frac_eval needs alpha > 0, got {alpha}"
        )));
    }
    if mu == 0.0 || !mu.is_finite() {
        return Err(Error::SingularKernelArgument);
    }
    let exponent = (q - 1) as f64 + alpha;
    let path = [
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    ];
    const TOL: f64 = 1e-10;
    if mu.abs() <= 1.0 {
        let muc = Complex64::new(mu, 0.0);
        let f = |tau: Complex64| {
            branch_pow(tau, exponent) * (muc - Complex64::i() * tau).powi(-(q as i32))
        };
        Ok(integrate_polyline(f, &path, TOL)?.value)
    } else {
        let f = |tau: Complex64| {
            branch_pow(tau, exponent)
                * (Complex64::new(1.0, 0.0) - Complex64::i() * tau / mu).powi(-(q as i32))
        };
        Ok(integrate_polyline(f, &path, TOL)?.value * mu.powi(-(q as i32)))
    }
}

/// Leading coefficient `b_{q,m}` of the large-`μ` expansion of `T_{q,m}`:
/// `T ~ b μ^{-q}` with `b = 2/(m+1)` for even `m`, and `T ~ b μ^{-q-1}` with
/// `b = 2iq/(m+2)` for odd `m`.
pub fn leading_coeff(q: u32, m: u32) -> Result<Complex64> {
    if q < 2 || m > q - 1 {
        return Err(Error::OutOfRange(format!(
            "leading_coeff needs q >= 2 and m <= q-1, got q={q}, m={m}"
        )));
    }
    Ok(if m % 2 == 0 {
        Complex64::new(2.0 / (m + 1) as f64, 0.0)
    } else {
        Complex64::new(0.0, 2.0 * q as f64 / (m + 2) as f64)
    })
}

/// Comparison target `H_q(μ)`: numerator `1 + μ^{q−2}` (even `q`) or
/// `1 + μ^{q−3}` (odd `q`) over `(1+μ²)^{q−1}`.
pub fn h_target(q: u32) -> RationalKernel {
    assert!(q >= 2, "h_target needs q >= 2");
    let top = if q % 2 == 0 { q - 2 } else { q - 3 } as usize;
    let mut coeffs = vec![GaussianRational::zero(); top + 1];
    coeffs[0] = GaussianRational::one();
    coeffs[top] = &coeffs[top] + &GaussianRational::one();
    RationalKernel::new(GaussianRationalPoly::from_coeffs(coeffs), q - 1)
}

/// Exact coefficients `c_m` with `Σ_{m=0}^{q-2} c_m P_{q,m} = H_q` numerator.
/// Parity makes the coefficient of every `P_{q,m}` with odd `q−m` exactly
/// zero.
pub fn solve_combination(q: u32) -> Result<Vec<GaussianRational>> {
    assert!(q >= 2, "solve_combination needs q >= 2");
    let dim = (q - 1) as usize;
    let mut basis = Vec::with_capacity(dim);
    for m in 0..=q - 2 {
        basis.push(t_poly(q, m)?.numerator);
    }
    let h = h_target(q).numerator;
    let rows: Vec<Vec<GaussianRational>> = (0..dim)
        .map(|deg| (0..dim).map(|col| basis[col].coeff(deg)).collect())
        .collect();
    let rhs: Vec<GaussianRational> = (0..dim).map(|deg| h.coeff(deg)).collect();
    rational::solve_linear(rows, rhs).ok_or(Error::SingularSystem(q))
}

/// The polynomials `P_{q,m}`, `m = 0..q−2`, as a basis of the degree-`q−2`
/// polynomial space.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub q: u32,
    pub members: Vec<RationalKernel>,
}

impl KernelBasis {
    pub fn new(q: u32) -> Result<Self> {
        let members = (0..=q - 2)
            .map(|m| t_poly(q, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { q, members })
    }

    /// Exact rank of the numerator coefficient matrix.
    pub fn rank(&self) -> usize {
        let dim = (self.q - 1) as usize;
        let rows: Vec<Vec<GaussianRational>> = self
            .members
            .iter()
            .map(|k| (0..dim).map(|deg| k.numerator.coeff(deg)).collect())
            .collect();
        rational::matrix_rank(rows)
    }
}
