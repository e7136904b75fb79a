use thiserror::Error;

use crate::complexpath::QuadratureResult;

/// Errors surfaced by measure construction, contour validation, quadrature,
/// transform evaluation, and the constant builders.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("measure needs at least one atom")]
    EmptyMeasure,
    #[error("atom position must be positive and finite, got {0}")]
    BadAtomPosition(f64),
    #[error("atom weight must be positive and finite, got {0}")]
    BadAtomWeight(f64),
    #[error("evaluation point must lie in the open first quadrant, got {re}+{im}i")]
    BadEvaluationPoint { re: f64, im: f64 },
    #[error("polyline needs at least two vertices")]
    TooFewVertices,
    #[error(
        "contour must start at a point with positive real and imaginary parts, got {re}+{im}i"
    )]
    BadContourStart { re: f64, im: f64 },
    #[error("contour must end at the conjugate of its first vertex")]
    BadContourEnd,
    #[error("contour segment {index} passes within {distance:e} of the positive real axis")]
    CrossesPositiveAxis { index: usize, distance: f64 },
    #[error("closed-up contour winds {got} times around {probe} (expected {expected})")]
    BadWinding { probe: f64, got: i32, expected: i32 },
    #[error("point lies within 1e-9 of the polyline; winding number is ambiguous")]
    PointOnPath,
    #[error("winding angle sum {turns} turns is not within 1e-6 of an integer")]
    AmbiguousWinding { turns: f64 },
    #[error(
        "quadrature did not converge within the bisection depth limit (partial error estimate {err:e})",
        err = .partial.error_estimate
    )]
    DepthLimit { partial: QuadratureResult },
    #[error("integrand returned a non-finite value on the path")]
    NonFiniteIntegrand,
    #[error("transform evaluated exactly at atom position {0}")]
    PoleAtAtom(f64),
    #[error("kernel argument mu must be nonzero")]
    SingularKernelArgument,
    #[error("{0}")]
    OutOfRange(String),
    #[error("regime `alpha_lt_1` requires alpha < 1, got {0}")]
    RegimeMismatch(f64),
    #[error(
        "ratio |T|/H keeps growing at the search boundary for q={q}; no finite supremum found"
    )]
    UnboundedRatio { q: u32 },
    #[error("kernel basis produced a singular linear system for q={0}")]
    SingularSystem(u32),
    #[error("lambda0={lambda0} is within {distance:e} of an atom; separate it or enable the atom-at-lambda0 mode")]
    AtomTooClose { lambda0: f64, distance: f64 },
    #[error("evaluation point {re}+{im}i does not match the contour start")]
    MismatchedEvaluationPoint { re: f64, im: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
