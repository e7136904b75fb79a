//! Exact Stieltjes transforms of step measures.
//!
//! Measures are atomic, so both transforms are finite sums and serve as
//! closed-form references for every contour integral in the crate.

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::StepMeasure;

/// `S(ζ) = Σ wⱼ / (λⱼ − ζ)` for `ζ` off the positive real axis.
pub fn stieltjes(measure: &StepMeasure, zeta: Complex64) -> Result<Complex64> {
    stieltjes_q(measure, 1, zeta)
}

/// `S_q(ζ) = Σ wⱼ / (λⱼ − ζ)^q`; coincides with [`stieltjes`] for `q = 1`.
///
/// Evaluation exactly at an atom is a pole and is rejected; evaluation
/// closer than `1e-9` to an atom logs a warning.
pub fn stieltjes_q(measure: &StepMeasure, q: u32, zeta: Complex64) -> Result<Complex64> {
    assert!(q >= 1, "stieltjes_q needs q >= 1");
    let mut min_distance = f64::INFINITY;
    for atom in measure.atoms() {
        let d = (Complex64::new(atom.position, 0.0) - zeta).norm();
        if d == 0.0 {
            return Err(Error::PoleAtAtom(atom.position));
        }
        min_distance = min_distance.min(d);
    }
    if min_distance < 1e-9 {
        log::warn!(
            "stieltjes transform evaluated only {min_distance:e} away from an atom; \
             expect loss of accuracy"
        );
    }
    Ok(stieltjes_q_raw(measure, q, zeta))
}

/// Plain summation without pole diagnostics, for integrands whose paths are
/// already known to avoid the atoms.
pub(crate) fn stieltjes_q_raw(measure: &StepMeasure, q: u32, zeta: Complex64) -> Complex64 {
    let qi = q as i32;
    measure
        .atoms()
        .iter()
        .map(|a| a.weight / (Complex64::new(a.position, 0.0) - zeta).powi(qi))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_atom_values() {
        let m = StepMeasure::new([(1.0, 1.0)]).unwrap();
        assert!((stieltjes(&m, c(0.0, 1.0)).unwrap() - c(0.5, 0.5)).norm() < 1e-15);
        assert!((stieltjes(&m, c(-1.0, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_atom_value() {
        let m = StepMeasure::new([(1.0, 1.0), (2.0, 2.0)]).unwrap();
        assert!((stieltjes(&m, c(1.0, 1.0)).unwrap() - c(1.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn higher_order_values() {
        let m = StepMeasure::new([(1.0, 1.0)]).unwrap();
        assert!((stieltjes_q(&m, 2, c(0.0, 1.0)).unwrap() - c(0.0, 0.5)).norm() < 1e-15);
        assert!((stieltjes_q(&m, 3, c(1.0, 1.0)).unwrap() - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn order_one_matches_stieltjes() {
        let m = StepMeasure::new([(0.5, 0.3), (2.0, 1.0), (7.0, 2.0)]).unwrap();
        for zeta in [c(0.3, 0.4), c(-2.0, 0.0), c(5.0, -1.0)] {
            let a = stieltjes(&m, zeta).unwrap();
            let b = stieltjes_q(&m, 1, zeta).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn pole_is_rejected() {
        let m = StepMeasure::new([(1.0, 1.0)]).unwrap();
        assert!(matches!(
            stieltjes(&m, c(1.0, 0.0)),
            Err(Error::PoleAtAtom(_))
        ));
    }
}
