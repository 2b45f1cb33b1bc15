//! Discrete memoryless channels: transition probability matrices from a
//! universe of instances to a finite label alphabet.

use serde::{Deserialize, Serialize};

use crate::distribution::{Distribution, MASS_TOL};
use crate::error::{Error, Result};
use crate::universe::{Point, Universe};

/// A stochastic matrix `P(y_j | x_i)`, stored row-per-label.
///
/// Each row j gives the probability of label j at every instance, so the
/// per-instance sums over labels (matrix columns, one per x) must be 1
/// within tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShannonChannel {
    universe: Universe,
    labels: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ShannonChannel {
    pub fn new<S: Into<String>>(universe: Universe, labels: Vec<S>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidChannel("no labels".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidChannel(format!("duplicate label {l:?}")));
            }
        }
        if rows.len() != labels.len() {
            return Err(Error::LengthMismatch {
                what: "channel rows",
                expected: labels.len(),
                got: rows.len(),
            });
        }
        for (j, row) in rows.iter().enumerate() {
            if row.len() != universe.len() {
                return Err(Error::LengthMismatch {
                    what: "channel row",
                    expected: universe.len(),
                    got: row.len(),
                });
            }
            for &v in row {
                if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidChannel(format!(
                        "value {v} in row {:?}",
                        labels[j]
                    )));
                }
            }
        }
        for i in 0..universe.len() {
            let col: f64 = rows.iter().map(|r| r[i]).sum();
            if (col - 1.0).abs() > MASS_TOL {
                return Err(Error::InvalidChannel(format!(
                    "label probabilities at {:?} sum to {col}",
                    universe.id(i)
                )));
            }
        }
        Ok(ShannonChannel { universe, labels, rows })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Transition probabilities of label `j` across all instances.
    pub fn row(&self, j: usize) -> &[f64] {
        &self.rows[j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, j: usize, i: usize) -> f64 {
        self.rows[j][i]
    }

    /// The universe whose points are this channel's labels.
    pub fn label_universe(&self) -> Universe {
        Universe::new(self.labels.iter().map(Point::symbolic).collect())
            .expect("labels are unique and non-empty")
    }

    /// Marginal label distribution `P(y_j) = sum_i P(x_i) P(y_j|x_i)`.
    pub fn label_marginal(&self, prior: &Distribution) -> Result<Distribution> {
        crate::universe::check_same_universe(&self.universe, prior.universe(), "channel vs prior")?;
        let weights: Vec<f64> = self
            .rows
            .iter()
            .map(|row| row.iter().zip(prior.mass()).map(|(t, p)| t * p).sum())
            .collect();
        Distribution::renormalized(self.label_universe(), weights)
    }

    /// Merge two label rows into one (their pointwise sum). Used to study
    /// coarse-graining; the result has one label fewer.
    pub fn merge_labels(&self, j: usize, k: usize, merged: impl Into<String>) -> Result<ShannonChannel> {
        if j == k || j >= self.n_labels() || k >= self.n_labels() {
            return Err(Error::InvalidArgument(format!("cannot merge rows {j} and {k}")));
        }
        let merged = merged.into();
        let mut labels = Vec::with_capacity(self.labels.len() - 1);
        let mut rows = Vec::with_capacity(self.rows.len() - 1);
        for idx in 0..self.labels.len() {
            if idx == k {
                continue;
            }
            if idx == j {
                labels.push(merged.clone());
                rows.push(
                    self.rows[j]
                        .iter()
                        .zip(&self.rows[k])
                        .map(|(a, b)| (a + b).min(1.0))
                        .collect(),
                );
                continue;
            }
            labels.push(self.labels[idx].clone());
            rows.push(self.rows[idx].clone());
        }
        ShannonChannel::new(self.universe.clone(), labels, rows)
    }
}

/// JSON shape: `{"universe": [...], "labels": [...], "rows": [[...], ...]}`.
impl<'de> Deserialize<'de> for ShannonChannel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            universe: Universe,
            labels: Vec<String>,
            rows: Vec<Vec<f64>>,
        }
        let raw = Raw::deserialize(d)?;
        ShannonChannel::new(raw.universe, raw.labels, raw.rows).map_err(serde::de::Error::custom)
    }
}

/// A transition matrix recovered from posteriors and a label prior.
///
/// Where the reconstructed input marginal is zero the transition
/// probability is genuinely undefined (0/0); those entries are held as
/// `None` rather than being filled with an arbitrary number.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredChannel {
    universe: Universe,
    labels: Vec<String>,
    values: Vec<Vec<Option<f64>>>,
}

impl RecoveredChannel {
    pub(crate) fn from_parts(universe: Universe, labels: Vec<String>, values: Vec<Vec<Option<f64>>>) -> Self {
        RecoveredChannel { universe, labels, values }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn row(&self, j: usize) -> &[Option<f64>] {
        &self.values[j]
    }

    pub fn get(&self, j: usize, i: usize) -> Option<f64> {
        self.values[j][i]
    }

    /// Indices of instances where the channel is undefined.
    pub fn undefined_points(&self) -> Vec<usize> {
        (0..self.universe.len())
            .filter(|&i| self.values.iter().any(|r| r[i].is_none()))
            .collect()
    }

    /// Convert to a plain channel; fails if any entry is undefined.
    pub fn into_channel(self) -> Result<ShannonChannel> {
        let rows: Vec<Vec<f64>> = self
            .values
            .iter()
            .map(|r| r.iter().copied().collect::<Option<Vec<f64>>>())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidChannel("channel undefined at zero-mass points".into()))?;
        ShannonChannel::new(self.universe, self.labels, rows)
    }

    /// Convert to a plain channel, filling each undefined instance with the
    /// uniform label distribution. The fill is an explicit caller choice;
    /// it only ever touches instances that carry no mass.
    pub fn filled_uniform(&self) -> Result<ShannonChannel> {
        let fill = 1.0 / self.labels.len() as f64;
        let rows = self
            .values
            .iter()
            .map(|r| r.iter().map(|v| v.unwrap_or(fill)).collect())
            .collect();
        ShannonChannel::new(self.universe.clone(), self.labels.clone(), rows)
    }
}
