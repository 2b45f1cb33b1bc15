//! Logical probabilities and the bridges between the statistical and
//! logical sides.
//!
//! The key objects: a truth function `T(theta|x)` over instances, its
//! logical probability `T(theta) = sum_i P(x_i) T(theta|x_i)` under a
//! prior, and the asymmetric Bayes pair connecting likelihoods with truth
//! functions:
//!
//! ```text
//! P(x|theta) = T(theta|x) P(x) / T(theta)                  (prediction)
//! T(theta|x) = [P(x|theta)/P(x)] / max_x [P(x|theta)/P(x)] (induction)
//! ```
//!
//! Prediction uses the horizontal normalizer `T(theta)` (a sum over x);
//! induction uses the longitudinal one (a maximum over x), which makes the
//! recovered truth function reach 1 somewhere and leaves the pair mutually
//! inverse.

use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::truth::TruthFunction;
use crate::universe::{check_same_universe, Universe};

/// Logical probability `T(theta) = sum_i P(x_i) T(theta|x_i)`: the
/// prior-weighted average truth value, i.e. the fuzzy event probability.
pub fn logical_probability(truth: &TruthFunction, prior: &Distribution) -> Result<f64> {
    truth.check_universe(prior)?;
    Ok(prior
        .mass()
        .iter()
        .enumerate()
        .map(|(i, p)| p * truth.value_at(i))
        .sum())
}

/// Outcome of the Bayes theorem between truth functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalBayes {
    /// `T(A) = T(A|B) T(B) + T(A|B^c) (1 - T(B))`.
    pub t_a: f64,
    /// `T(B|A) = T(A|B) T(B) / T(A)`.
    pub t_b_given_a: f64,
}

/// Bayes' rule stated purely between logical probabilities.
///
/// Inputs are the conditional truths of A given B and given not-B, plus
/// `T(B)`; all in `[0, 1]`. Fails when `T(A) = 0` (conditioning on an
/// impossible event).
pub fn bayes_theorem_logical(t_a_given_b: f64, t_a_given_not_b: f64, t_b: f64) -> Result<LogicalBayes> {
    for (name, v) in [
        ("T(A|B)", t_a_given_b),
        ("T(A|B^c)", t_a_given_not_b),
        ("T(B)", t_b),
    ] {
        if !v.is_finite() || !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidArgument(format!("{name} = {v} outside [0,1]")));
        }
    }
    let t_a = t_a_given_b * t_b + t_a_given_not_b * (1.0 - t_b);
    if t_a <= 0.0 {
        return Err(Error::ZeroProbabilityEvent { what: "A".into() });
    }
    Ok(LogicalBayes { t_a, t_b_given_a: (t_a_given_b * t_b / t_a).min(1.0) })
}

/// Semantic prediction: `P(x|theta) = P(x) T(theta|x) / T(theta)`.
///
/// Fails when the logical probability is zero (the label is falsified
/// everywhere the prior has mass).
pub fn semantic_bayes_predict(truth: &TruthFunction, prior: &Distribution) -> Result<Distribution> {
    truth.check_universe(prior)?;
    let weights: Vec<f64> = prior
        .mass()
        .iter()
        .enumerate()
        .map(|(i, p)| p * truth.value_at(i))
        .collect();
    if weights.iter().sum::<f64>() <= 0.0 {
        return Err(Error::ZeroProbabilityEvent { what: "label truth".into() });
    }
    Distribution::renormalized(prior.universe().clone(), weights)
}

/// Induction: recover the truth function of a label from its sampling
/// distribution (likelihood) and the prior.
///
/// Returns the truth function together with the logical probability it
/// gets under `prior`, which equals `1 / max_x [P(x|theta)/P(x)]`.
///
/// Requires the likelihood to vanish wherever the prior does: otherwise no
/// bounded truth function can reproduce it.
pub fn truth_from_likelihood(
    likelihood: &Distribution,
    prior: &Distribution,
) -> Result<(TruthFunction, f64)> {
    likelihood.same_universe(prior)?;
    let mut ratios = vec![0.0; prior.len()];
    let mut max_ratio = 0.0f64;
    for i in 0..prior.len() {
        let l = likelihood.get(i);
        let p = prior.get(i);
        if l > 0.0 && p == 0.0 {
            return Err(Error::SupportViolation { index: i });
        }
        if p > 0.0 {
            ratios[i] = l / p;
            max_ratio = max_ratio.max(ratios[i]);
        }
    }
    // max_ratio >= 1 always (the likelihood cannot be below the prior
    // everywhere), so this only guards degenerate zero likelihoods.
    if max_ratio <= 0.0 {
        return Err(Error::ZeroProbabilityEvent { what: "likelihood".into() });
    }
    let values: Vec<f64> = ratios.iter().map(|r| (r / max_ratio).min(1.0)).collect();
    let truth = TruthFunction::tabulated(prior.universe().clone(), values)?;
    Ok((truth, 1.0 / max_ratio))
}

/// Plausibility of `target` under a label prior: the total prior mass of
/// the labels still compatible with the evidence. `target` must be one of
/// the compatible labels.
pub fn plausibility<S: AsRef<str>>(
    label_prior: &Distribution,
    target: &str,
    compatible: &[S],
) -> Result<f64> {
    if compatible.is_empty() {
        return Err(Error::InvalidArgument("empty compatible set".into()));
    }
    if !compatible.iter().any(|s| s.as_ref() == target) {
        return Err(Error::InvalidArgument(format!(
            "target {target:?} not in the compatible set"
        )));
    }
    let mut seen = std::collections::HashSet::new();
    let mut total = 0.0;
    for s in compatible {
        let id = s.as_ref();
        if !seen.insert(id) {
            continue;
        }
        match label_prior.get_by_id(id) {
            Some(p) => total += p,
            None => {
                return Err(Error::InvalidArgument(format!("unknown label {id:?}")));
            }
        }
    }
    Ok(total.min(1.0))
}

/// A family of truth functions over one universe, one per label: the
/// semantic counterpart of a Shannon channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemanticChannel {
    labels: Vec<String>,
    truths: Vec<TruthFunction>,
}

impl SemanticChannel {
    pub fn new<S: Into<String>>(labels: Vec<S>, truths: Vec<TruthFunction>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidChannel("no labels".into()));
        }
        if labels.len() != truths.len() {
            return Err(Error::LengthMismatch {
                what: "semantic channel truths",
                expected: labels.len(),
                got: truths.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidChannel(format!("duplicate label {l:?}")));
            }
        }
        let universe = truths[0].universe().clone();
        for t in &truths[1..] {
            check_same_universe(&universe, t.universe(), "semantic channel truths disagree")?;
        }
        Ok(SemanticChannel { labels, truths })
    }

    pub fn universe(&self) -> &Universe {
        self.truths[0].universe()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn truth(&self, j: usize) -> &TruthFunction {
        &self.truths[j]
    }

    pub fn truths(&self) -> &[TruthFunction] {
        &self.truths
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Logical probability of every label under `prior`.
    pub fn logical_probabilities(&self, prior: &Distribution) -> Result<Vec<f64>> {
        self.truths
            .iter()
            .map(|t| logical_probability(t, prior))
            .collect()
    }
}

impl<'de> Deserialize<'de> for SemanticChannel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            labels: Vec<String>,
            truths: Vec<TruthFunction>,
        }
        let raw = Raw::deserialize(d)?;
        SemanticChannel::new(raw.labels, raw.truths).map_err(serde::de::Error::custom)
    }
}
