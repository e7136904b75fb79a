//! Verified Tauberian-type inequalities for spectral counting functions.
//!
//! The crate works with atomic counting measures `N(λ) = Σ wⱼ 𝟙{λⱼ ≤ λ}` and
//! provides:
//!
//! * exact Stieltjes transforms `S_q(ζ) = Σ wⱼ (λⱼ − ζ)^{-q}` ([`transforms`]),
//! * Riesz means and moments of the measure ([`measure`]),
//! * the principal power branch, contour validation and adaptive
//!   Gauss-Kronrod quadrature along polylines ([`complexpath`]),
//! * the kernel family `T_{q,m}(μ) = ∫_{-1}^{1} τ^m (μ − iτ)^{-q} dτ` with
//!   exact Gaussian-rational closed forms ([`kernels`]),
//! * every explicit constant of the remainder bounds ([`constants`]), and
//! * pass/fail verification reports for the Pleijel inequality and its
//!   Riesz-mean and generalized-transform extensions ([`verify`]).
//!
//! All values are immutable after construction and every operation is a pure
//! function, so the API is safe for unrestricted concurrent use.
//!
//! # Example
//!
//! ```
//! use tauber::complexpath::default_contour;
//! use tauber::verify::{pleijel_report, ReportOptions};
//! use tauber::{EvaluationPoint, StepMeasure};
//!
//! let measure = StepMeasure::new([(1.0, 1.0), (3.0, 2.0)])?;
//! let point = EvaluationPoint::new(2.0, 1.0)?;
//! let contour = default_contour(&point);
//! let report = pleijel_report(&measure, &point, &contour, &ReportOptions::default())?;
//! assert!(report.holds);
//! assert!(report.margin >= 0.0);
//! # Ok::<(), tauber::Error>(())
//! ```

// Guards written as `!(x > 0.0)` reject NaN along with the sign; the
// quadrature and gamma tables keep their published digit strings; indexed
// loops are the natural shape of the exact elimination code.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::manual_is_multiple_of)]
#![allow(clippy::type_complexity)]

pub mod complexpath;
pub mod constants;
pub mod error;
pub mod kernels;
pub mod measure;
pub mod transforms;
pub mod verify;

pub use complexpath::{Contour, EvaluationPoint, QuadratureResult};
pub use error::{Error, Result};
pub use measure::{Atom, StepMeasure};
pub use verify::VerificationReport;
