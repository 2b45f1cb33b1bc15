//! Confirmation measures over binary classification counts: the channel
//! measures (likelihood ratios, F, b*), the prediction measures (c*,
//! correct rates), their consequence-symmetry identities, and the
//! sensitivity analysis that addresses the raven paradox.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Counts of the four outcome/hypothesis combinations:
/// `a` positive examples (e1, h1), `b` misses (e0, h1),
/// `c` counterexamples (e1, h0), `d` negative examples (e0, h0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl ConfusionCounts {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        ConfusionCounts { a, b, c, d }
    }

    /// Counts for the rule with the opposite consequent (h1 and h0
    /// swapped): positive examples become counterexamples.
    pub fn swap_consequent(self) -> Self {
        ConfusionCounts { a: self.c, b: self.d, c: self.a, d: self.b }
    }

    /// `ad - bc` computed exactly.
    fn determinant(self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }
}

/// The four conditional probabilities P(e|h) of the classification
/// channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelTable {
    pub p_e1_h1: f64,
    pub p_e0_h1: f64,
    pub p_e1_h0: f64,
    pub p_e0_h0: f64,
}

pub fn channel_table(counts: ConfusionCounts) -> Result<ChannelTable> {
    let ConfusionCounts { a, b, c, d } = counts;
    if a + b == 0 {
        return Err(Error::InvalidArgument("no (h1) examples: a + b = 0".into()));
    }
    if c + d == 0 {
        return Err(Error::InvalidArgument("no (h0) examples: c + d = 0".into()));
    }
    Ok(ChannelTable {
        p_e1_h1: a as f64 / (a + b) as f64,
        p_e0_h1: b as f64 / (a + b) as f64,
        p_e1_h0: c as f64 / (c + d) as f64,
        p_e0_h0: d as f64 / (c + d) as f64,
    })
}

/// Positive and negative likelihood ratios. A ratio with a zero
/// denominator but positive numerator is infinite; 0/0 is undefined.
pub fn likelihood_ratios(counts: ConfusionCounts) -> Result<(f64, f64)> {
    let t = channel_table(counts)?;
    let lr_plus = ratio(t.p_e1_h1, t.p_e1_h0, "LR+")?;
    let lr_minus = ratio(t.p_e0_h0, t.p_e0_h1, "LR-")?;
    Ok((lr_plus, lr_minus))
}

fn ratio(num: f64, den: f64, measure: &'static str) -> Result<f64> {
    if den > 0.0 {
        Ok(num / den)
    } else if num > 0.0 {
        Ok(f64::INFINITY)
    } else {
        Err(Error::UndefinedMeasure { measure })
    }
}

/// Channel confirmation measures, the scaled distances of the likelihood
/// ratios from 1: `b1* = (ad - bc) / max(a(c+d), c(a+b))` and
/// `b0* = (ad - bc) / max(d(a+b), b(c+d))`.
pub fn b_star(counts: ConfusionCounts) -> Result<(f64, f64)> {
    let ConfusionCounts { a, b, c, d } = counts;
    let det = counts.determinant();
    let den1 = (a as u128 * (c + d) as u128).max(c as u128 * (a + b) as u128);
    let den0 = (d as u128 * (a + b) as u128).max(b as u128 * (c + d) as u128);
    if den1 == 0 {
        return Err(Error::UndefinedMeasure { measure: "b1*" });
    }
    if den0 == 0 {
        return Err(Error::UndefinedMeasure { measure: "b0*" });
    }
    Ok((det as f64 / den1 as f64, det as f64 / den0 as f64))
}

/// The Kemeny-Oppenheim style measure for the positive rule and its
/// converse: `F(e1 -> h1) = (ad - bc)/(ad + bc + 2ac)` and
/// `F(h0 -> e0) = (ad - bc)/(ad + bc + 2dc)`.
pub fn f_measure(counts: ConfusionCounts) -> Result<(f64, f64)> {
    let ConfusionCounts { a, b, c, d } = counts;
    let det = counts.determinant();
    let base = a as u128 * d as u128 + b as u128 * c as u128;
    let den1 = base + 2 * (a as u128 * c as u128);
    let den0 = base + 2 * (d as u128 * c as u128);
    if den1 == 0 {
        return Err(Error::UndefinedMeasure { measure: "F(e1 -> h1)" });
    }
    if den0 == 0 {
        return Err(Error::UndefinedMeasure { measure: "F(h0 -> e0)" });
    }
    Ok((det as f64 / den1 as f64, det as f64 / den0 as f64))
}

/// Prediction confirmation measures: `c1* = (a - c)/max(a, c)` and
/// `c0* = (d - b)/max(d, b)`. Unlike the channel measures these depend
/// only on the joint counts of their own consequent column.
pub fn c_star(counts: ConfusionCounts) -> Result<(f64, f64)> {
    let ConfusionCounts { a, b, c, d } = counts;
    let c1 = signed_contrast(a, c, "c1*")?;
    let c0 = signed_contrast(d, b, "c0*")?;
    Ok((c1, c0))
}

fn signed_contrast(pos: u64, neg: u64, measure: &'static str) -> Result<f64> {
    let max = pos.max(neg);
    if max == 0 {
        return Err(Error::UndefinedMeasure { measure });
    }
    Ok((pos as f64 - neg as f64) / max as f64)
}

/// Correct rate of a rule from its nonnegative prediction confirmation
/// degree: `CR = 1/(2 - c*)`. Negative degrees must first be turned
/// around with consequence symmetry.
pub fn correct_rate(c1_star: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c1_star) {
        return Err(Error::InvalidArgument(format!(
            "prediction confirmation degree {c1_star} outside [0, 1]; apply consequence symmetry to negative degrees"
        )));
    }
    Ok(1.0 / (2.0 - c1_star))
}

/// Residuals of the consequence-symmetry identities: the measure of the
/// opposite-consequent rule must be the exact negation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryReport {
    /// `b*(e1 -> h0) + b*(e1 -> h1)`.
    pub b_residual: f64,
    /// `c*(e1 -> h0) + c*(e1 -> h1)`.
    pub c_residual: f64,
    pub holds: bool,
}

pub fn symmetry_check(counts: ConfusionCounts) -> Result<SymmetryReport> {
    let (b_pos, _) = b_star(counts)?;
    let (b_neg, _) = b_star(counts.swap_consequent())?;
    let (c_pos, _) = c_star(counts)?;
    let (c_neg, _) = c_star(counts.swap_consequent())?;
    let b_residual = b_neg + b_pos;
    let c_residual = c_neg + c_pos;
    Ok(SymmetryReport {
        b_residual,
        c_residual,
        holds: b_residual.abs() < 1e-12 && c_residual.abs() < 1e-12,
    })
}

/// Measures covered by the raven-paradox sensitivity table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SensitivityMeasure {
    F,
    BStar,
    CStar,
    LrPlus,
}

impl SensitivityMeasure {
    fn name(self) -> &'static str {
        match self {
            SensitivityMeasure::F => "F",
            SensitivityMeasure::BStar => "b*",
            SensitivityMeasure::CStar => "c*",
            SensitivityMeasure::LrPlus => "LR+",
        }
    }

    fn eval(self, counts: ConfusionCounts) -> Result<f64> {
        match self {
            SensitivityMeasure::F => f_measure(counts).map(|(f1, _)| f1),
            SensitivityMeasure::BStar => b_star(counts).map(|(b1, _)| b1),
            SensitivityMeasure::CStar => c_star(counts).map(|(c1, _)| c1),
            SensitivityMeasure::LrPlus => likelihood_ratios(counts).map(|(lr, _)| lr),
        }
    }
}

/// One row of the sensitivity table: how much a new positive example
/// (a+1) and a new irrelevant negative example (d+1) move the measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensitivityRow {
    pub measure: &'static str,
    pub delta_a: f64,
    pub delta_d: f64,
    /// Whether the measure rewards the positive example more than the
    /// irrelevant one, as the Nicod criterion demands.
    pub favors_positive_example: bool,
}

/// Finite-difference sensitivity of the selected measures to one more
/// positive example versus one more irrelevant negative example. The
/// prediction measure ignores `d` identically; the channel measures do
/// not, which is exactly the raven-paradox disagreement.
pub fn raven_sensitivity(
    counts: ConfusionCounts,
    measures: &[SensitivityMeasure],
) -> Result<Vec<SensitivityRow>> {
    if measures.is_empty() {
        return Err(Error::InvalidArgument("no measures selected".into()));
    }
    let mut rows = Vec::with_capacity(measures.len());
    for &m in measures {
        let base = m.eval(counts)?;
        let bumped_a = m.eval(ConfusionCounts { a: counts.a + 1, ..counts })?;
        let bumped_d = m.eval(ConfusionCounts { d: counts.d + 1, ..counts })?;
        let delta_a = bumped_a - base;
        let delta_d = bumped_d - base;
        if m == SensitivityMeasure::CStar && delta_d != 0.0 {
            return Err(Error::IdentityViolation {
                what: "prediction-measure irrelevance",
                residual: delta_d,
            });
        }
        rows.push(SensitivityRow {
            measure: m.name(),
            delta_a,
            delta_d,
            favors_positive_example: delta_a > delta_d,
        });
    }
    Ok(rows)
}

/// Every confirmation measure of a counts table, with the undefined ones
/// listed instead of failing the whole report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfirmationReport {
    pub counts: ConfusionCounts,
    pub lr_plus: Option<f64>,
    pub lr_minus: Option<f64>,
    pub f1: Option<f64>,
    pub f0: Option<f64>,
    pub b1_star: Option<f64>,
    pub b0_star: Option<f64>,
    pub c1_star: Option<f64>,
    pub c0_star: Option<f64>,
    /// Correct rates; present only when the matching c* is nonnegative.
    pub cr1: Option<f64>,
    pub cr0: Option<f64>,
    pub undefined: Vec<String>,
}

pub fn confirmation_report(counts: ConfusionCounts) -> ConfirmationReport {
    let mut undefined = Vec::new();
    let mut note = |name: &str| undefined.push(name.to_string());

    let (lr_plus, lr_minus) = match likelihood_ratios(counts) {
        Ok((p, m)) => (Some(p), Some(m)),
        Err(_) => {
            note("LR");
            (None, None)
        }
    };
    let (f1, f0) = match f_measure(counts) {
        Ok((x, y)) => (Some(x), Some(y)),
        Err(_) => {
            note("F");
            (None, None)
        }
    };
    let (b1_star, b0_star) = match b_star(counts) {
        Ok((x, y)) => (Some(x), Some(y)),
        Err(_) => {
            note("b*");
            (None, None)
        }
    };
    let (c1_star, c0_star) = match c_star(counts) {
        Ok((x, y)) => (Some(x), Some(y)),
        Err(_) => {
            note("c*");
            (None, None)
        }
    };
    let cr1 = c1_star.and_then(|v| correct_rate(v).ok());
    let cr0 = c0_star.and_then(|v| correct_rate(v).ok());
    ConfirmationReport {
        counts,
        lr_plus,
        lr_minus,
        f1,
        f0,
        b1_star,
        b0_star,
        c1_star,
        c0_star,
        cr1,
        cr0,
        undefined,
    }
}
