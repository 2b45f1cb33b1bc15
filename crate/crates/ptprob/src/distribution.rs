//! Probability distributions over a [`Universe`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::universe::{check_same_universe, Universe};

/// Tolerance on total mass when validating a distribution.
pub const MASS_TOL: f64 = 1e-9;

/// A probability distribution over the points of a universe.
///
/// Mass entries are non-negative, finite, and sum to 1 within [`MASS_TOL`].
/// Instances are immutable; all operations return new values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    universe: Universe,
    mass: Vec<f64>,
}

impl Distribution {
    /// Validate and wrap a mass vector. The sum must already be within
    /// [`MASS_TOL`] of 1; no silent renormalization happens here.
    pub fn new(universe: Universe, mass: Vec<f64>) -> Result<Self> {
        if mass.len() != universe.len() {
            return Err(Error::LengthMismatch {
                what: "probability mass",
                expected: universe.len(),
                got: mass.len(),
            });
        }
        for (i, &m) in mass.iter().enumerate() {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "mass {m} at {:?}",
                    universe.id(i)
                )));
            }
        }
        let sum: f64 = mass.iter().sum();
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDistribution(format!("total mass {sum}, expected 1")));
        }
        Ok(Distribution { universe, mass })
    }

    /// Scale a non-negative weight vector to total mass 1. This is the
    /// explicit opt-in path for unnormalized input; `new` never rescales.
    pub fn renormalized(universe: Universe, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != universe.len() {
            return Err(Error::LengthMismatch {
                what: "weights",
                expected: universe.len(),
                got: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDistribution("negative or non-finite weight".into()));
        }
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidDistribution("all weights are zero".into()));
        }
        let mass = weights.into_iter().map(|w| w / sum).collect();
        Ok(Distribution { universe, mass })
    }

    pub fn uniform(universe: Universe) -> Self {
        let n = universe.len();
        Distribution { universe, mass: vec![1.0 / n as f64; n] }
    }

    /// All mass on the point at `index`.
    pub fn point_mass(universe: Universe, index: usize) -> Result<Self> {
        if index >= universe.len() {
            return Err(Error::InvalidArgument(format!(
                "point index {index} out of range 0..{}",
                universe.len()
            )));
        }
        let mut mass = vec![0.0; universe.len()];
        mass[index] = 1.0;
        Ok(Distribution { universe, mass })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn get(&self, i: usize) -> f64 {
        self.mass[i]
    }

    /// Mass of the point with the given id.
    pub fn get_by_id(&self, id: &str) -> Option<f64> {
        self.universe.index_of(id).map(|i| self.mass[i])
    }

    /// Indices of points carrying positive mass.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.mass[i] > 0.0).collect()
    }

    /// Expected value of a per-point quantity.
    pub fn expectation(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.len() {
            return Err(Error::LengthMismatch {
                what: "values",
                expected: self.len(),
                got: values.len(),
            });
        }
        Ok(self.mass.iter().zip(values).map(|(p, v)| p * v).sum())
    }

    pub fn same_universe(&self, other: &Distribution) -> Result<()> {
        check_same_universe(&self.universe, &other.universe, "distributions disagree")
    }
}

/// JSON shape: `{"universe": [...], "mass": [...]}` (validated on read).
impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            universe: Universe,
            mass: Vec<f64>,
        }
        let raw = Raw::deserialize(d)?;
        Distribution::new(raw.universe, raw.mass).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_bad_mass() {
        let u = Universe::labeled(&["a", "b"]).unwrap();
        assert!(Distribution::new(u.clone(), vec![0.5, 0.6]).is_err());
        assert!(Distribution::new(u.clone(), vec![-0.1, 1.1]).is_err());
        assert!(Distribution::new(u.clone(), vec![0.5]).is_err());
        assert!(Distribution::new(u, vec![0.5, 0.5]).is_ok());
    }

    #[test]
    fn renormalized_scales_weights() {
        let u = Universe::labeled(&["a", "b", "c"]).unwrap();
        let d = Distribution::renormalized(u, vec![2.0, 1.0, 1.0]).unwrap();
        assert_eq!(d.mass(), &[0.5, 0.25, 0.25]);
    }

    #[test]
    fn renormalized_rejects_zero_total() {
        let u = Universe::labeled(&["a", "b"]).unwrap();
        assert!(Distribution::renormalized(u, vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn json_roundtrip_validates() {
        let u = Universe::labeled(&["a", "b"]).unwrap();
        let d = Distribution::new(u, vec![0.25, 0.75]).unwrap();
        let js = serde_json::to_string(&d).unwrap();
        let back: Distribution = serde_json::from_str(&js).unwrap();
        assert_eq!(d, back);
        let bad = r#"{"universe":[{"id":"a"},{"id":"b"}],"mass":[0.9,0.9]}"#;
        assert!(serde_json::from_str::<Distribution>(bad).is_err());
    }
}
