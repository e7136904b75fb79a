//! Complex-plane utilities: the principal power branch (negative reals carry
//! argument `+π`), polyline contours with validation, adaptive Gauss-Kronrod
//! quadrature along polylines, and log-gamma / Beta evaluation.

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PI: f64 = std::f64::consts::PI;
const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// serde helpers presenting complex values as `{"re": .., "im": ..}`.
pub(crate) mod complex_as_object {
    use num::complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    pub(crate) struct ReIm {
        pub re: f64,
        pub im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ReIm { re: z.re, im: z.im }.serialize(s)
    }

    #[allow(dead_code)]
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let v = ReIm::deserialize(d)?;
        Ok(Complex64::new(v.re, v.im))
    }
}

pub(crate) mod complex_vec_as_objects {
    use num::complex::Complex64;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::complex_as_object::ReIm;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for z in v {
            seq.serialize_element(&ReIm { re: z.re, im: z.im })?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let v = Vec::<ReIm>::deserialize(d)?;
        Ok(v.into_iter().map(|z| Complex64::new(z.re, z.im)).collect())
    }
}

/// `ζ₀ = λ₀ + iη₀` in the open first quadrant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationPoint {
    lambda0: f64,
    eta0: f64,
}

impl EvaluationPoint {
    pub fn new(lambda0: f64, eta0: f64) -> Result<Self> {
        if !(lambda0 > 0.0) || !(eta0 > 0.0) || !lambda0.is_finite() || !eta0.is_finite() {
            return Err(Error::BadEvaluationPoint {
                re: lambda0,
                im: eta0,
            });
        }
        Ok(Self { lambda0, eta0 })
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn zeta(&self) -> Complex64 {
        Complex64::new(self.lambda0, self.eta0)
    }

    pub fn zeta_conj(&self) -> Complex64 {
        Complex64::new(self.lambda0, -self.eta0)
    }
}

/// Principal power `z^α = exp(α ln z)` with `Im ln z ∈ (−π, π]`.
///
/// The cut along the negative reals is attached from above: negative real
/// arguments (including `im == -0.0`) get argument `+π`. At `z = 0` the
/// continuous limit `0` is returned for `α > 0`; other exponents have no
/// limit and yield NaN, which downstream quadrature rejects.
pub fn branch_pow(z: Complex64, alpha: f64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return if alpha > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::NAN, f64::NAN)
        };
    }
    let theta = if z.im == 0.0 && z.re < 0.0 {
        PI
    } else {
        z.im.atan2(z.re)
    };
    Complex64::from_polar(z.norm().powf(alpha), alpha * theta)
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let ap = p - a;
    let t = ((ap.re * ab.re + ap.im * ab.im) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Distance from the segment `[a, b]` to the closed ray `{x ≥ 0, y = 0}`.
fn segment_ray_distance(a: Complex64, b: Complex64) -> f64 {
    if (a.im > 0.0 && b.im < 0.0) || (a.im < 0.0 && b.im > 0.0) {
        let t = a.im / (a.im - b.im);
        let x = a.re + t * (b.re - a.re);
        if x >= 0.0 {
            return 0.0;
        }
    }
    let da = if a.re >= 0.0 { a.im.abs() } else { a.norm() };
    let db = if b.re >= 0.0 { b.im.abs() } else { b.norm() };
    let dorigin = point_segment_distance(Complex64::new(0.0, 0.0), a, b);
    da.min(db).min(dorigin)
}

/// Winding number of a closed polyline around `point`, by summed signed
/// angles. The polyline closes itself (last vertex connects back to the
/// first when they differ). The angle sum must land within `1e-6` turns of
/// an integer, and the point must stay `1e-9` away from the path.
pub fn winding_number(polyline: &[Complex64], point: Complex64) -> Result<i32> {
    if polyline.len() < 2 {
        return Err(Error::TooFewVertices);
    }
    let n = polyline.len();
    let mut total = 0.0_f64;
    for i in 0..n {
        let a = polyline[i];
        let b = polyline[(i + 1) % n];
        if (b - a).norm() == 0.0 {
            continue;
        }
        if point_segment_distance(point, a, b) < 1e-9 {
            return Err(Error::PointOnPath);
        }
        total += ((b - point) / (a - point)).arg();
    }
    let turns = total / TWO_PI;
    let nearest = turns.round();
    if (turns - nearest).abs() > 1e-6 {
        return Err(Error::AmbiguousWinding { turns });
    }
    Ok(nearest as i32)
}

/// Oriented polyline from `ζ₀` to `conj ζ₀` that avoids the open positive
/// real axis.
///
/// Validation requires, with `λ₀ = Re ζ₀`:
/// * the first vertex in the open first quadrant and the last vertex equal
///   to its conjugate,
/// * every segment at distance `≥ 1e-12·λ₀` from the positive real axis,
/// * closing the polyline with the vertical segment `[conj ζ₀, ζ₀]` winds
///   `+1` around `λ₀/2` and `0` around `2λ₀`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contour {
    #[serde(with = "complex_vec_as_objects")]
    vertices: Vec<Complex64>,
}

impl Contour {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::TooFewVertices);
        }
        let first = vertices[0];
        if !(first.re > 0.0) || !(first.im > 0.0) {
            return Err(Error::BadContourStart {
                re: first.re,
                im: first.im,
            });
        }
        let last = *vertices.last().unwrap();
        if (last - first.conj()).norm() > 1e-12 * (1.0 + first.norm()) {
            return Err(Error::BadContourEnd);
        }
        let lambda0 = first.re;
        let clearance = 1e-12 * lambda0;
        for (i, pair) in vertices.windows(2).enumerate() {
            let d = segment_ray_distance(pair[0], pair[1]);
            if d < clearance {
                return Err(Error::CrossesPositiveAxis {
                    index: i,
                    distance: d,
                });
            }
        }
        // winding_number closes last -> first, which is exactly the vertical
        // closing segment [conj z0, z0]
        for (probe, expected) in [(lambda0 / 2.0, 1), (2.0 * lambda0, 0)] {
            let got = winding_number(&vertices, Complex64::new(probe, 0.0))?;
            if got != expected {
                return Err(Error::BadWinding {
                    probe,
                    got,
                    expected,
                });
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// First vertex `ζ₀`.
    pub fn zeta0(&self) -> Complex64 {
        self.vertices[0]
    }
}

#[derive(Deserialize)]
struct RawContour {
    #[serde(with = "complex_vec_as_objects")]
    vertices: Vec<Complex64>,
}

impl<'de> Deserialize<'de> for Contour {
    fn deserialize<D>(deserializer: D) -> core::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawContour::deserialize(deserializer)?;
        Contour::new(raw.vertices).map_err(serde::de::Error::custom)
    }
}

/// Rectangle `ζ₀ → −λ₀+iη₀ → −λ₀−iη₀ → conj ζ₀` through the left half-plane.
pub fn default_contour(point: &EvaluationPoint) -> Contour {
    let l = point.lambda0();
    let e = point.eta0();
    Contour::new(vec![
        Complex64::new(l, e),
        Complex64::new(-l, e),
        Complex64::new(-l, -e),
        Complex64::new(l, -e),
    ])
    .expect("left rectangle avoids the positive axis")
}

/// Outcome of one adaptive quadrature: value, accumulated error estimate and
/// integrand evaluation count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    pub fn zero() -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            evaluations: 0,
        }
    }
}

/// Bisection depth limit of the adaptive scheme.
pub const MAX_BISECTIONS: u32 = 40;

// 15-point Kronrod extension of 7-point Gauss (nodes for x > 0, symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15<F: Fn(Complex64) -> Complex64>(
    f: &F,
    a: Complex64,
    b: Complex64,
) -> (Complex64, Complex64, f64) {
    let c = (a + b) * 0.5;
    let h = (b - a) * 0.5;
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    for j in 0..7 {
        let x = XGK[j];
        let f1 = f(c - h * x);
        let f2 = f(c + h * x);
        kronrod += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
        resabs += (f1.norm() + f2.norm()) * WGK[j];
    }
    (kronrod * h, gauss * h, resabs * h.norm())
}

struct Interval {
    a: Complex64,
    b: Complex64,
    depth: u32,
    value: Complex64,
    err: f64,
    resabs: f64,
}

// Globally adaptive scheme: always bisect the interval with the largest
// error estimate, stopping once the total estimate meets the budget or the
// worst interval is roundoff-limited.
fn integrate_segment_impl<F: Fn(Complex64) -> Complex64>(
    f: &F,
    a: Complex64,
    b: Complex64,
    tol: f64,
) -> Result<QuadratureResult> {
    if (b - a).norm() == 0.0 {
        return Ok(QuadratureResult::zero());
    }
    let mut evaluations = 0usize;
    let mut eval = |a: Complex64, b: Complex64| -> Result<Interval> {
        let (k, g, resabs) = gk15(f, a, b);
        evaluations += 15;
        if !k.is_finite() {
            return Err(Error::NonFiniteIntegrand);
        }
        Ok(Interval {
            a,
            b,
            depth: 0,
            value: k,
            err: (k - g).norm(),
            resabs,
        })
    };
    let mut intervals = vec![eval(a, b)?];
    // Node budget keeps pathological integrands from spinning forever.
    const MAX_INTERVALS: usize = 100_000;
    loop {
        let mut total_err = 0.0;
        let mut worst = 0;
        for (i, iv) in intervals.iter().enumerate() {
            total_err += iv.err;
            if iv.err > intervals[worst].err {
                worst = i;
            }
        }
        if total_err <= tol {
            break;
        }
        // Below ~50 eps of the local absolute mass there is nothing left to
        // gain from further bisection.
        let floor = 50.0 * f64::EPSILON * intervals[worst].resabs;
        if intervals[worst].err <= floor {
            break;
        }
        if intervals[worst].depth >= MAX_BISECTIONS || intervals.len() >= MAX_INTERVALS {
            let partial = QuadratureResult {
                value: intervals.iter().map(|iv| iv.value).sum(),
                error_estimate: total_err,
                evaluations,
            };
            return Err(Error::DepthLimit { partial });
        }
        let iv = intervals.swap_remove(worst);
        let mid = (iv.a + iv.b) * 0.5;
        let mut left = eval(iv.a, mid)?;
        let mut right = eval(mid, iv.b)?;
        left.depth = iv.depth + 1;
        right.depth = iv.depth + 1;
        intervals.push(left);
        intervals.push(right);
    }
    Ok(QuadratureResult {
        value: intervals.iter().map(|iv| iv.value).sum(),
        error_estimate: intervals.iter().map(|iv| iv.err).sum(),
        evaluations,
    })
}

/// Adaptive Gauss-Kronrod integration of `f` along one straight segment,
/// with absolute tolerance `tol`.
pub fn integrate_segment<F: Fn(Complex64) -> Complex64>(
    f: F,
    a: Complex64,
    b: Complex64,
    tol: f64,
) -> Result<QuadratureResult> {
    integrate_segment_impl(&f, a, b, tol)
}

/// Adaptive integration of `f` along the polyline through `vertices`. The
/// absolute tolerance is split across segments proportionally to their
/// length.
pub fn integrate_polyline<F: Fn(Complex64) -> Complex64>(
    f: F,
    vertices: &[Complex64],
    tol: f64,
) -> Result<QuadratureResult> {
    if vertices.len() < 2 {
        return Err(Error::TooFewVertices);
    }
    let total_len: f64 = vertices.windows(2).map(|p| (p[1] - p[0]).norm()).sum();
    let mut acc = QuadratureResult::zero();
    if total_len == 0.0 {
        return Ok(acc);
    }
    for pair in vertices.windows(2) {
        let share = (pair[1] - pair[0]).norm() / total_len;
        if share == 0.0 {
            continue;
        }
        let part = integrate_segment_impl(&f, pair[0], pair[1], tol * share)?;
        acc.value += part.value;
        acc.error_estimate += part.error_estimate;
        acc.evaluations += part.evaluations;
    }
    Ok(acc)
}

/// Adaptive integration of `f` along a validated contour.
pub fn integrate_contour<F: Fn(Complex64) -> Complex64>(
    f: F,
    contour: &Contour,
    tol: f64,
) -> Result<QuadratureResult> {
    integrate_polyline(f, contour.vertices(), tol)
}

// Lanczos expansion, g = 10.900511, 16 significant digits.
const GAMMA_R: f64 = 10.900511;
const GAMMA_DK: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];
const LN_PI: f64 = 1.1447298858494002;
const LN_2_SQRT_E_OVER_PI: f64 = 0.6207822376352452;

/// `ln Γ(x)` for `x > 0`, accurate to roughly machine precision.
pub fn log_gamma(x: f64) -> f64 {
    assert!(x > 0.0 && x.is_finite(), "log_gamma needs x > 0");
    if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, &d)| s + d / (i as f64 - x));
        LN_PI
            - (PI * x).sin().ln()
            - (s.ln()
                + LN_2_SQRT_E_OVER_PI
                + (0.5 - x) * ((0.5 - x + GAMMA_R) / std::f64::consts::E).ln())
    } else {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, &d)| s + d / (x + i as f64 - 1.0));
        s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + GAMMA_R) / std::f64::consts::E).ln()
    }
}

/// Euler Beta `B(x, y) = Γ(x)Γ(y)/Γ(x+y)` for `x, y > 0`.
pub fn beta(x: f64, y: f64) -> f64 {
    assert!(x > 0.0 && y > 0.0, "beta needs positive arguments");
    (log_gamma(x) + log_gamma(y) - log_gamma(x + y)).exp()
}
