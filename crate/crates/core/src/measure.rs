//! Atomic counting measures: nondecreasing step functions with finitely many
//! positive jumps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One jump of the counting function: `weight` mass at `position`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    #[serde(rename = "lambda")]
    pub position: f64,
    pub weight: f64,
}

/// `N(λ) = Σ_{λⱼ ≤ λ} wⱼ`, zero below the smallest atom.
///
/// Atoms are kept strictly increasing by position; construction sorts its
/// input and merges coincident positions by summing their weights. `N` is
/// right-continuous: an atom exactly at `λ` is counted by [`counting_value`]
/// but contributes zero to every Riesz mean there.
///
/// [`counting_value`]: StepMeasure::counting_value
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepMeasure {
    atoms: Vec<Atom>,
}

impl StepMeasure {
    /// Builds a measure from `(position, weight)` pairs.
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut raw: Vec<(f64, f64)> = Vec::new();
        for (p, w) in pairs {
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::BadAtomPosition(p));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::BadAtomWeight(w));
            }
            raw.push((p, w));
        }
        if raw.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        raw.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut atoms: Vec<Atom> = Vec::with_capacity(raw.len());
        for (p, w) in raw {
            match atoms.last_mut() {
                Some(last) if last.position == p => last.weight += w,
                _ => atoms.push(Atom {
                    position: p,
                    weight: w,
                }),
            }
        }
        Ok(Self { atoms })
    }

    /// Model eigenvalue-counting measure: unit atoms at `j^(2/dimension)`,
    /// `j = 1..=count`.
    pub fn weyl(dimension: u32, count: u32) -> Self {
        assert!(dimension >= 1 && count >= 1);
        Self::new((1..=count).map(|j| ((j as f64).powf(2.0 / dimension as f64), 1.0)))
            .expect("weyl atoms are positive")
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// `N(λ0)`: total weight at positions `≤ λ0` (right-continuous).
    pub fn counting_value(&self, lambda0: f64) -> f64 {
        self.atoms
            .iter()
            .take_while(|a| a.position <= lambda0)
            .map(|a| a.weight)
            .sum()
    }

    /// Left limit `N(λ0 − 0)`: total weight strictly below `λ0`.
    pub fn mass_below(&self, lambda0: f64) -> f64 {
        self.atoms
            .iter()
            .take_while(|a| a.position < lambda0)
            .map(|a| a.weight)
            .sum()
    }

    /// Riesz mean of order `alpha`:
    /// `N^(α)(λ0) = Σ_{λⱼ < λ0} wⱼ (1 − λⱼ/λ0)^α`.
    ///
    /// Atoms at `λ0` contribute zero, matching the vanishing kernel factor.
    pub fn riesz_mean(&self, alpha: f64, lambda0: f64) -> f64 {
        assert!(alpha > 0.0, "riesz_mean needs alpha > 0");
        assert!(lambda0 > 0.0, "riesz_mean needs lambda0 > 0");
        self.atoms
            .iter()
            .take_while(|a| a.position < lambda0)
            .map(|a| a.weight * (1.0 - a.position / lambda0).powf(alpha))
            .sum()
    }

    /// `Σ wⱼ λⱼ^{-q}`, always finite for a step measure.
    pub fn moment(&self, q: u32) -> f64 {
        assert!(q >= 1, "moment needs q >= 1");
        self.atoms
            .iter()
            .map(|a| a.weight * a.position.powi(-(q as i32)))
            .sum()
    }

    /// Distance from `lambda0` to the nearest atom.
    pub fn min_distance(&self, lambda0: f64) -> f64 {
        self.atoms
            .iter()
            .map(|a| (a.position - lambda0).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest atom position.
    pub fn max_position(&self) -> f64 {
        self.atoms.last().expect("measure is nonempty").position
    }
}

#[derive(Deserialize)]
struct RawMeasure {
    atoms: Vec<Atom>,
}

impl<'de> Deserialize<'de> for StepMeasure {
    fn deserialize<D>(deserializer: D) -> core::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawMeasure::deserialize(deserializer)?;
        StepMeasure::new(raw.atoms.into_iter().map(|a| (a.position, a.weight)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_sorts_and_merges() {
        let m = StepMeasure::new([(2.0, 0.5), (1.0, 1.0)]).unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert_eq!(m.atoms()[0].position, 1.0);
        assert_eq!(m.atoms()[1].position, 2.0);

        let merged = StepMeasure::new([(1.0, 1.0), (1.0, 2.0)]).unwrap();
        assert_eq!(merged.atoms().len(), 1);
        assert_eq!(merged.atoms()[0].weight, 3.0);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(StepMeasure::new([]), Err(Error::EmptyMeasure)));
        assert!(matches!(
            StepMeasure::new([(0.0, 1.0)]),
            Err(Error::BadAtomPosition(_))
        ));
        assert!(matches!(
            StepMeasure::new([(-1.0, 1.0)]),
            Err(Error::BadAtomPosition(_))
        ));
        assert!(matches!(
            StepMeasure::new([(1.0, 0.0)]),
            Err(Error::BadAtomWeight(_))
        ));
    }

    #[test]
    fn counting_is_right_continuous() {
        let m = StepMeasure::new([(1.0, 1.0)]).unwrap();
        assert_eq!(m.counting_value(0.5), 0.0);
        assert_eq!(m.counting_value(2.0), 1.0);

        let m2 = StepMeasure::new([(1.0, 1.0), (2.0, 0.5)]).unwrap();
        assert_eq!(m2.counting_value(2.0), 1.5);
        assert_eq!(m2.mass_below(2.0), 1.0);
    }

    #[test]
    fn riesz_mean_values() {
        let m = StepMeasure::new([(1.0, 1.0)]).unwrap();
        assert!((m.riesz_mean(1.0, 2.0) - 0.5).abs() < 1e-15);
        assert_eq!(m.riesz_mean(0.7, 1.0), 0.0);
        assert_eq!(m.riesz_mean(3.0, 1.0), 0.0);

        let m2 = StepMeasure::new([(1.0, 1.0), (3.0, 2.0)]).unwrap();
        assert!((m2.riesz_mean(2.0, 4.0) - 0.6875).abs() < 1e-15);
    }

    #[test]
    fn moment_values() {
        assert_eq!(StepMeasure::new([(1.0, 1.0)]).unwrap().moment(1), 1.0);
        assert_eq!(StepMeasure::new([(2.0, 4.0)]).unwrap().moment(2), 1.0);
        let m = StepMeasure::new([(1.0, 1.0), (2.0, 2.0)]).unwrap();
        assert!((m.moment(3) - 1.25).abs() < 1e-15);
    }

    #[test]
    fn weyl_positions() {
        let d1 = StepMeasure::weyl(1, 3);
        let pos: Vec<f64> = d1.atoms().iter().map(|a| a.position).collect();
        assert_eq!(pos, vec![1.0, 4.0, 9.0]);

        let d2 = StepMeasure::weyl(2, 3);
        let pos: Vec<f64> = d2.atoms().iter().map(|a| a.position).collect();
        assert_eq!(pos, vec![1.0, 2.0, 3.0]);

        let d4 = StepMeasure::weyl(4, 4);
        let pos: Vec<f64> = d4.atoms().iter().map(|a| a.position).collect();
        assert!((pos[0] - 1.0).abs() < 1e-15);
        assert!((pos[1] - 2f64.sqrt()).abs() < 1e-15);
        assert!((pos[2] - 3f64.sqrt()).abs() < 1e-15);
        assert!((pos[3] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let m = StepMeasure::new([(2.0, 0.5), (1.0, 1.0)]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"lambda\""));
        let back: StepMeasure = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);

        // unsorted input is accepted and normalized
        let parsed: StepMeasure =
            serde_json::from_str(r#"{"atoms":[{"lambda":2,"weight":1},{"lambda":1,"weight":1}]}"#)
                .unwrap();
        assert_eq!(parsed.atoms()[0].position, 1.0);

        let bad: core::result::Result<StepMeasure, _> =
            serde_json::from_str(r#"{"atoms":[{"lambda":-1,"weight":1}]}"#);
        assert!(bad.is_err());
    }
}
