//! Bayesian reasoning forms: one dispatch table covering classical
//! conditionals, logical-probability Bayes, semantic prediction and
//! induction, and the two fuzzy syllogisms driven by confirmation degrees.
//!
//! The syllogisms generalize modus ponens. With a rule "if e1 then h1"
//! believed to degree `b1*`, observing e1 updates a prior over {h0, h1} via
//!
//! ```text
//! P(h1|θ_e1) = P(h1) / [P(h1) + (1 - b1*) P(h0)]
//! ```
//!
//! which is classical Barbara at `b1* = 1` and leaves the prior untouched
//! at `b1* = 0`. The prediction variant uses `c1*` and needs no prior:
//! `P(h1|θ_e1) = 1/(2 - c1*)`. Negative degrees mean the evidence supports
//! the opposite consequent, so they are routed to the mirrored syllogism
//! with degree negated (consequence symmetry) instead of leaving [0, 1].

use serde::{Deserialize, Serialize};

use crate::channel::ShannonChannel;
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::learn::match_truth_functions;
use crate::prob::bayes_posterior;
use crate::semantic::{
    bayes_theorem_logical, logical_probability, semantic_bayes_predict, truth_from_likelihood,
    LogicalBayes, SemanticChannel,
};
use crate::truth::TruthFunction;
use crate::universe::Universe;

/// The two-point universe {h0, h1} that syllogistic conclusions live on.
/// Index 0 is always the negative consequent h0.
pub fn hypothesis_universe() -> Universe {
    Universe::labeled(&["h0", "h1"]).expect("two distinct ids")
}

fn check_degree(degree: f64) -> Result<()> {
    if !degree.is_finite() || !(-1.0..=1.0).contains(&degree) {
        return Err(Error::InvalidArgument(format!(
            "confirmation degree {degree} outside [-1, 1]"
        )));
    }
    Ok(())
}

fn check_hypothesis_prior(prior: &Distribution) -> Result<()> {
    if prior.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "hypothesis prior must cover exactly two outcomes, got {}",
            prior.len()
        )));
    }
    Ok(())
}

/// Fuzzy syllogism with a channel confirmation degree `b1*`.
///
/// The rule carries truth values T(θ_e1|h1) = 1 and T(θ_e1|h0) = 1 - b1*,
/// so the denominator is the logical probability T(θ_e1) and the update is
/// a semantic Bayes prediction in disguise. A negative degree reasons
/// toward h0 with degree `-b1*` instead (consequence symmetry).
///
/// `prior` must cover exactly two hypotheses, index 0 playing h0. Fails
/// only when the rule is categorical (`|b1*| = 1`) and the prior already
/// rules the favored hypothesis out.
pub fn syllogism_channel(b1_star: f64, prior: &Distribution) -> Result<Distribution> {
    check_degree(b1_star)?;
    check_hypothesis_prior(prior)?;
    let (p0, p1) = (prior.get(0), prior.get(1));
    let weights = if b1_star >= 0.0 {
        vec![(1.0 - b1_star) * p0, p1]
    } else {
        vec![p0, (1.0 + b1_star) * p1]
    };
    if weights.iter().sum::<f64>() <= 0.0 {
        return Err(Error::ZeroProbabilityEvent {
            what: "syllogism consequent (categorical rule against a zero prior)".into(),
        });
    }
    Distribution::renormalized(prior.universe().clone(), weights)
}

/// Fuzzy syllogism with a prediction confirmation degree `c1*`.
///
/// Prior-free: the degree alone fixes the conclusion. For `c1* >= 0` the
/// distribution over {h0, h1} is ((1-c1*)/(2-c1*), 1/(2-c1*)); negative
/// degrees give the mirror image toward h0.
pub fn syllogism_prediction(c1_star: f64) -> Result<Distribution> {
    check_degree(c1_star)?;
    let d = c1_star.abs();
    let (favored, other) = (1.0 / (2.0 - d), (1.0 - d) / (2.0 - d));
    let mass = if c1_star >= 0.0 {
        vec![other, favored]
    } else {
        vec![favored, other]
    };
    Distribution::new(hypothesis_universe(), mass)
}

/// Which confirmation degree a syllogism consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SyllogismKind {
    /// Degree is `b1*`; needs a hypothesis prior.
    Channel,
    /// Degree is `c1*`; prior-free.
    Prediction,
}

/// A fuzzy syllogism: a rule "if e1 then h1" held with some confirmation
/// degree, ready to be applied to the observation e1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Syllogism {
    pub kind: SyllogismKind,
    /// Confirmation degree in [-1, 1]; negative values reason toward h0.
    pub degree: f64,
    /// Prior over {h0, h1}; required by the channel kind, ignored otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis_prior: Option<Distribution>,
}

impl Syllogism {
    pub fn channel(degree: f64, hypothesis_prior: Distribution) -> Self {
        Syllogism { kind: SyllogismKind::Channel, degree, hypothesis_prior: Some(hypothesis_prior) }
    }

    pub fn prediction(degree: f64) -> Self {
        Syllogism { kind: SyllogismKind::Prediction, degree, hypothesis_prior: None }
    }

    pub fn validate(&self) -> Result<()> {
        check_degree(self.degree)?;
        match (self.kind, &self.hypothesis_prior) {
            (SyllogismKind::Channel, None) => Err(Error::InvalidArgument(
                "channel syllogism needs a hypothesis prior".into(),
            )),
            (SyllogismKind::Channel, Some(p)) => check_hypothesis_prior(p),
            (SyllogismKind::Prediction, _) => Ok(()),
        }
    }

    /// Conclude from the observation e1: the posterior over {h0, h1}.
    pub fn conclude(&self) -> Result<Distribution> {
        self.validate()?;
        match self.kind {
            SyllogismKind::Channel => {
                syllogism_channel(self.degree, self.hypothesis_prior.as_ref().unwrap())
            }
            SyllogismKind::Prediction => syllogism_prediction(self.degree),
        }
    }
}

/// One row of the reasoning table: a major premise, a minor premise, and
/// the form of inference connecting them.
#[derive(Debug, Clone)]
pub enum ReasoningStep {
    /// Major: statistical channel. Minor: instance. Consequence: P(label|instance).
    StatisticalConditional { channel: ShannonChannel, label: String, instance: String },
    /// Major: channel + prior. Minor: observed label. Consequence: posterior
    /// over instances (classical Bayes).
    StatisticalBayes { channel: ShannonChannel, prior: Distribution, label: String },
    /// Major: conditional truth values of A given B and its complement.
    /// Minor: T(B). Consequence: T(A) and T(B|A) (Bayes between logical
    /// probabilities).
    LogicalBayesStep { t_a_given_b: f64, t_a_given_not_b: f64, t_b: f64 },
    /// Major: truth function. Minor: instance. Consequence: truth value.
    TruthValue { truth: TruthFunction, instance: String },
    /// Major: truth function. Minor: prior. Consequence: logical probability.
    LogicalProbabilityStep { truth: TruthFunction, prior: Distribution },
    /// Major: truth function + prior. Minor: the label is accepted.
    /// Consequence: semantic posterior over instances.
    SemanticPrediction { truth: TruthFunction, prior: Distribution },
    /// Major: a label's sampling distribution. Minor: instance.
    /// Consequence: likelihood P(instance|label).
    Likelihood { sampling: Distribution, instance: String },
    /// Major: sampling distribution + prior. Consequence: the truth
    /// function the label must have had (induction).
    Induction { likelihood: Distribution, prior: Distribution },
    /// Major: statistical channel. Consequence: the matched semantic
    /// channel (logical Bayesian inference).
    LogicalBayesianInference { channel: ShannonChannel },
    /// Major: rule with channel confirmation degree + prior over {h0, h1}.
    /// Minor: e1 observed. Consequence: posterior over hypotheses.
    ChannelSyllogism { degree: f64, prior: Distribution },
    /// Major: rule with prediction confirmation degree. Minor: e1 observed.
    /// Consequence: distribution over hypotheses.
    PredictionSyllogism { degree: f64 },
}

/// The consequence of a reasoning step.
#[derive(Debug, Clone, PartialEq)]
pub enum Consequence {
    Value(f64),
    Posterior(Distribution),
    Truth { truth: TruthFunction, logical_probability: f64 },
    Channel(SemanticChannel),
    Logical(LogicalBayes),
}

fn instance_index(universe: &Universe, id: &str) -> Result<usize> {
    universe
        .index_of(id)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown instance {id:?}")))
}

fn label_row<'c>(channel: &'c ShannonChannel, label: &str) -> Result<&'c [f64]> {
    let j = channel
        .label_index(label)
        .ok_or_else(|| Error::UnusedLabel { label: label.to_string() })?;
    Ok(channel.row(j))
}

/// Evaluate one reasoning form by dispatching to the module that owns it.
pub fn reasoning_table(step: &ReasoningStep) -> Result<Consequence> {
    match step {
        ReasoningStep::StatisticalConditional { channel, label, instance } => {
            let i = instance_index(channel.universe(), instance)?;
            Ok(Consequence::Value(label_row(channel, label)?[i]))
        }
        ReasoningStep::StatisticalBayes { channel, prior, label } => {
            crate::universe::check_same_universe(
                prior.universe(),
                channel.universe(),
                "prior vs channel",
            )?;
            let (_, posterior) = bayes_posterior(prior, label_row(channel, label)?)?;
            Ok(Consequence::Posterior(posterior))
        }
        ReasoningStep::LogicalBayesStep { t_a_given_b, t_a_given_not_b, t_b } => Ok(
            Consequence::Logical(bayes_theorem_logical(*t_a_given_b, *t_a_given_not_b, *t_b)?),
        ),
        ReasoningStep::TruthValue { truth, instance } => {
            let i = instance_index(truth.universe(), instance)?;
            Ok(Consequence::Value(truth.value_at(i)))
        }
        ReasoningStep::LogicalProbabilityStep { truth, prior } => {
            Ok(Consequence::Value(logical_probability(truth, prior)?))
        }
        ReasoningStep::SemanticPrediction { truth, prior } => {
            Ok(Consequence::Posterior(semantic_bayes_predict(truth, prior)?))
        }
        ReasoningStep::Likelihood { sampling, instance } => {
            let i = instance_index(sampling.universe(), instance)?;
            Ok(Consequence::Value(sampling.get(i)))
        }
        ReasoningStep::Induction { likelihood, prior } => {
            let (truth, t) = truth_from_likelihood(likelihood, prior)?;
            Ok(Consequence::Truth { truth, logical_probability: t })
        }
        ReasoningStep::LogicalBayesianInference { channel } => {
            Ok(Consequence::Channel(match_truth_functions(channel)?))
        }
        ReasoningStep::ChannelSyllogism { degree, prior } => {
            Ok(Consequence::Posterior(syllogism_channel(*degree, prior)?))
        }
        ReasoningStep::PredictionSyllogism { degree } => {
            Ok(Consequence::Posterior(syllogism_prediction(*degree)?))
        }
    }
}
