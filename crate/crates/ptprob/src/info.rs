//! Semantic information measures.
//!
//! The information a label carries about an instance is the log-ratio of
//! its truth value to its logical probability:
//!
//! ```text
//! I(x; theta) = log2[ T(theta|x) / T(theta) ]
//! ```
//!
//! which by the asymmetric Bayes pair equals `log2[P(x|theta)/P(x)]`.
//! Unlikely instances that a label fits exactly carry a lot of
//! information; a falsified instance (`T(theta|x) = 0`) carries `-inf`.
//! Averaging over a sampling distribution and over labels yields the
//! average and mutual forms; Shannon mutual information is the upper limit
//! of the mutual form, attained when the truth functions match the channel.

use serde::Serialize;

use crate::channel::ShannonChannel;
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::semantic::{logical_probability, SemanticChannel};
use crate::truth::{TruthForm, TruthFunction};
use crate::universe::check_same_universe;

/// Information of one (instance, label) pair in bits; `-inf` when the
/// instance falsifies the label. Fails when the logical probability of the
/// label is zero (no information measure exists for an impossible label).
pub fn semantic_info_point(truth: &TruthFunction, prior: &Distribution, i: usize) -> Result<f64> {
    truth.check_universe(prior)?;
    if i >= prior.len() {
        return Err(Error::InvalidArgument(format!(
            "point index {i} out of range 0..{}",
            prior.len()
        )));
    }
    let t_theta = positive_lp(truth, prior)?;
    Ok(point_bits(truth.value_at(i), t_theta))
}

/// Average semantic information of a label over a sampling distribution,
/// in bits. `-inf` as soon as the sampling puts positive mass on a
/// falsified instance.
pub fn avg_semantic_info(
    truth: &TruthFunction,
    sampling: &Distribution,
    prior: &Distribution,
) -> Result<f64> {
    Ok(avg_semantic_info_report(truth, sampling, prior)?.bits)
}

/// Average semantic information with falsification diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AvgSemanticInfo {
    /// The average, `-inf` when any falsifying point carries mass.
    pub bits: f64,
    /// Number of sampled points with positive mass and zero truth value.
    pub falsifying_points: usize,
}

pub fn avg_semantic_info_report(
    truth: &TruthFunction,
    sampling: &Distribution,
    prior: &Distribution,
) -> Result<AvgSemanticInfo> {
    truth.check_universe(prior)?;
    sampling.same_universe(prior)?;
    let t_theta = positive_lp(truth, prior)?;
    let mut bits = 0.0;
    let mut falsifying = 0;
    for (i, &w) in sampling.mass().iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let t = truth.value_at(i);
        if t == 0.0 {
            falsifying += 1;
        } else {
            bits += w * (t / t_theta).log2();
        }
    }
    if falsifying > 0 {
        bits = f64::NEG_INFINITY;
    }
    Ok(AvgSemanticInfo { bits, falsifying_points: falsifying })
}

/// Full report of the semantic information in a labelling system: per-pair
/// amounts, per-label averages, the semantic mutual information, and the
/// Shannon mutual information of the same channel for comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemanticInfoReport {
    pub labels: Vec<String>,
    /// Always "bits" for this report.
    pub units: &'static str,
    /// Logical probability of each label under the prior.
    pub logical_probabilities: Vec<f64>,
    /// Statistical probability of each label under prior and channel.
    pub label_probabilities: Vec<f64>,
    /// `point_info[j][i]` = bits carried about instance i by label j.
    pub point_info: Vec<Vec<f64>>,
    /// Per-label average over that label's posterior; 0 for labels of zero
    /// probability (they contribute nothing to the mutual information).
    pub avg_info: Vec<f64>,
    /// Semantic mutual information in bits.
    pub mutual_info: f64,
    /// Shannon mutual information of (prior, channel) in bits.
    pub shannon_mutual_info: f64,
}

/// Semantic mutual information of truth functions evaluated against a
/// sampling channel:
/// `I(X;Theta) = sum_ij P(x_i) P(y_j|x_i) log2[T(theta_j|x_i)/T(theta_j)]`.
pub fn semantic_mutual_info(
    sc: &SemanticChannel,
    prior: &Distribution,
    channel: &ShannonChannel,
) -> Result<SemanticInfoReport> {
    check_same_universe(sc.universe(), prior.universe(), "truths vs prior")?;
    check_same_universe(channel.universe(), prior.universe(), "channel vs prior")?;
    if sc.labels() != channel.labels() {
        return Err(Error::InvalidChannel(
            "semantic and statistical channels carry different labels".into(),
        ));
    }
    let n = prior.len();
    let mut logical_probs = Vec::with_capacity(sc.n_labels());
    let mut point_info = Vec::with_capacity(sc.n_labels());
    for j in 0..sc.n_labels() {
        let t_theta = positive_lp(sc.truth(j), prior)?;
        logical_probs.push(t_theta);
        point_info.push(
            (0..n)
                .map(|i| point_bits(sc.truth(j).value_at(i), t_theta))
                .collect::<Vec<f64>>(),
        );
    }
    let marginal = channel.label_marginal(prior)?;
    let mut avg_info = vec![0.0; sc.n_labels()];
    let mut mutual = 0.0;
    for j in 0..sc.n_labels() {
        let py = marginal.get(j);
        if py == 0.0 {
            continue;
        }
        let mut avg = 0.0;
        for i in 0..n {
            let w = prior.get(i) * channel.get(j, i) / py;
            if w > 0.0 {
                avg += w * point_info[j][i];
            }
        }
        avg_info[j] = avg;
        mutual += py * avg;
    }
    Ok(SemanticInfoReport {
        labels: sc.labels().to_vec(),
        units: "bits",
        logical_probabilities: logical_probs,
        label_probabilities: marginal.mass().to_vec(),
        point_info,
        avg_info,
        mutual_info: mutual,
        shannon_mutual_info: crate::prob::shannon_mutual_info(prior, channel)?,
    })
}

/// Decomposition of the semantic mutual information for Gaussian truth
/// functions. Exact only in nats, where the Gaussian exponent and the
/// logarithm cancel:
///
/// ```text
/// I(X;Theta) = -sum_j P(y_j) ln T(theta_j)
///              -sum_ij P(x_i, y_j) (x_i - center_j)^2 / (2 sigma_j^2)
/// ```
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianDecomposition {
    pub units: &'static str,
    /// Semantic mutual information in nats, summed directly.
    pub mutual_info_nats: f64,
    /// `-sum_j P(y_j) ln T(theta_j)`: the semantic-entropy term.
    pub entropy_term: f64,
    /// Posterior-weighted mean relative squared error.
    pub squared_error_term: f64,
    /// `|mutual - (entropy_term - squared_error_term)|`.
    pub identity_residual: f64,
}

pub fn gaussian_decomposition(
    sc: &SemanticChannel,
    prior: &Distribution,
    channel: &ShannonChannel,
) -> Result<GaussianDecomposition> {
    check_same_universe(sc.universe(), prior.universe(), "truths vs prior")?;
    check_same_universe(channel.universe(), prior.universe(), "channel vs prior")?;
    if sc.labels() != channel.labels() {
        return Err(Error::InvalidChannel(
            "semantic and statistical channels carry different labels".into(),
        ));
    }
    let params: Vec<(f64, f64)> = sc
        .truths()
        .iter()
        .map(|t| match t.form() {
            TruthForm::Gaussian { center, sigma } => Ok((*center, *sigma)),
            other => Err(Error::InvalidTruthFunction(format!(
                "decomposition needs gaussian truths, found {other:?}"
            ))),
        })
        .collect::<Result<_>>()?;
    let universe = prior.universe();
    let marginal = channel.label_marginal(prior)?;

    let mut mutual = 0.0;
    let mut entropy_term = 0.0;
    let mut squared_error = 0.0;
    for (j, &(center, sigma)) in params.iter().enumerate() {
        let t_theta = positive_lp(sc.truth(j), prior)?;
        let py = marginal.get(j);
        entropy_term -= py * t_theta.ln();
        for i in 0..prior.len() {
            let w = prior.get(i) * channel.get(j, i);
            if w == 0.0 {
                continue;
            }
            let x = universe.scalar(i)?;
            let z = (x - center) / sigma;
            squared_error += w * 0.5 * z * z;
            mutual += w * (sc.truth(j).value_at(i) / t_theta).ln();
        }
    }
    Ok(GaussianDecomposition {
        units: "nats",
        mutual_info_nats: mutual,
        entropy_term,
        squared_error_term: squared_error,
        identity_residual: (mutual - (entropy_term - squared_error)).abs(),
    })
}

/// Effective control amount: how much of the intended population shift a
/// control actually delivered, `I_c = sum_i ideal_i log2[actual_i/prior_i]`.
///
/// Maximized (at `kl_divergence(ideal, prior)`) when the achieved
/// distribution equals the ideal one; may be negative when control moved
/// mass the wrong way. Ideal mass on a point the actual distribution
/// cannot reach gives `-inf`; ideal mass where the prior was zero but the
/// actual is positive gives `+inf`; if both occur the result is NaN.
pub fn effective_control_amount(
    ideal: &Distribution,
    actual: &Distribution,
    prior: &Distribution,
) -> Result<f64> {
    ideal.same_universe(actual)?;
    ideal.same_universe(prior)?;
    let mut sum = 0.0;
    let mut pos_inf = false;
    let mut neg_inf = false;
    for (i, &w) in ideal.mass().iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let a = actual.get(i);
        let p = prior.get(i);
        if a == 0.0 {
            neg_inf = true;
        } else if p == 0.0 {
            pos_inf = true;
        } else {
            sum += w * (a / p).log2();
        }
    }
    Ok(match (pos_inf, neg_inf) {
        (true, true) => f64::NAN,
        (true, false) => f64::INFINITY,
        (false, true) => f64::NEG_INFINITY,
        (false, false) => sum,
    })
}

fn point_bits(t: f64, t_theta: f64) -> f64 {
    if t == 0.0 {
        f64::NEG_INFINITY
    } else {
        (t / t_theta).log2()
    }
}

fn positive_lp(truth: &TruthFunction, prior: &Distribution) -> Result<f64> {
    let t_theta = logical_probability(truth, prior)?;
    if t_theta <= 0.0 {
        return Err(Error::ZeroProbabilityEvent { what: "label truth".into() });
    }
    Ok(t_theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::{bayes_posterior, kl_divergence, shannon_mutual_info};
    use crate::semantic::semantic_bayes_predict;
    use crate::universe::Universe;
    use approx::assert_relative_eq;

    fn u(n: usize) -> Universe {
        Universe::labeled(&(0..n).map(|i| format!("x{i}")).collect::<Vec<_>>()).unwrap()
    }

    /// Truth values (0.8, 0.2) under prior (0.25, 0.75) give a logical
    /// probability of exactly 0.8*0.25 + 0.2*0.75 = 0.35.
    fn point_eight_over_point_thirty_five() -> (TruthFunction, Distribution) {
        let t = TruthFunction::tabulated(u(2), vec![0.8, 0.2]).unwrap();
        let prior = Distribution::new(u(2), vec![0.25, 0.75]).unwrap();
        (t, prior)
    }

    #[test]
    fn point_info_log_ratio() {
        let (t, prior) = point_eight_over_point_thirty_five();
        let i = semantic_info_point(&t, &prior, 0).unwrap();
        assert_relative_eq!(i, (0.8f64 / 0.35).log2(), max_relative = 1e-12);
        assert!((i - 1.1926).abs() < 1e-4);
    }

    #[test]
    fn point_info_tautology_is_zero() {
        let prior = Distribution::new(u(3), vec![0.2, 0.5, 0.3]).unwrap();
        let t = TruthFunction::tautology(u(3));
        for i in 0..3 {
            assert_eq!(semantic_info_point(&t, &prior, i).unwrap(), 0.0);
        }
    }

    #[test]
    fn point_info_falsified_is_neg_inf() {
        let prior = Distribution::uniform(u(2));
        let t = TruthFunction::crisp(u(2), vec![true, false]).unwrap();
        assert_eq!(semantic_info_point(&t, &prior, 1).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn point_info_decreases_as_lp_grows() {
        // same truth value at x, wider sets -> less information
        let prior = Distribution::uniform(u(4));
        let narrow = TruthFunction::tabulated(u(4), vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let wide = TruthFunction::tabulated(u(4), vec![1.0, 1.0, 1.0, 0.0]).unwrap();
        let i_narrow = semantic_info_point(&narrow, &prior, 0).unwrap();
        let i_wide = semantic_info_point(&wide, &prior, 0).unwrap();
        assert!(i_narrow > i_wide);
    }

    #[test]
    fn point_info_decreases_with_gaussian_deviation() {
        let ages = Universe::scalar_grid(0.0, 60.0, 61).unwrap();
        let prior = Distribution::uniform(ages.clone());
        let t = TruthFunction::gaussian(ages, 30.0, 8.0).unwrap();
        let center = semantic_info_point(&t, &prior, 30).unwrap();
        let near = semantic_info_point(&t, &prior, 35).unwrap();
        let far = semantic_info_point(&t, &prior, 45).unwrap();
        assert!(center > near && near > far);
    }

    #[test]
    fn carnap_bar_hillel_reduction_at_full_truth() {
        let prior = Distribution::new(u(4), vec![0.4, 0.3, 0.2, 0.1]).unwrap();
        let t = TruthFunction::crisp(u(4), vec![true, true, false, false]).unwrap();
        let lp = logical_probability(&t, &prior).unwrap();
        let i = semantic_info_point(&t, &prior, 0).unwrap();
        assert_relative_eq!(i, (1.0 / lp).log2(), max_relative = 1e-12);
    }

    #[test]
    fn avg_info_matched_equals_kl() {
        let prior = Distribution::new(u(4), vec![0.1, 0.4, 0.3, 0.2]).unwrap();
        let t = TruthFunction::tabulated(u(4), vec![0.3, 1.0, 0.6, 0.1]).unwrap();
        let sampling = semantic_bayes_predict(&t, &prior).unwrap();
        let avg = avg_semantic_info(&t, &sampling, &prior).unwrap();
        let kl = kl_divergence(&sampling, &prior).unwrap();
        assert_relative_eq!(avg, kl, max_relative = 1e-12);
    }

    #[test]
    fn avg_info_matched_is_maximal() {
        // perturb the matched truth; the average must not increase
        let prior = Distribution::new(u(4), vec![0.1, 0.4, 0.3, 0.2]).unwrap();
        let matched = TruthFunction::tabulated(u(4), vec![0.3, 1.0, 0.6, 0.1]).unwrap();
        let sampling = semantic_bayes_predict(&matched, &prior).unwrap();
        let best = avg_semantic_info(&matched, &sampling, &prior).unwrap();
        let deltas = [-0.05, 0.05];
        for i in 0..4 {
            for d in deltas {
                let mut v = matched.values();
                v[i] = (v[i] + d).clamp(0.0, 1.0);
                let t = TruthFunction::tabulated(u(4), v).unwrap();
                let avg = avg_semantic_info(&t, &sampling, &prior).unwrap();
                assert!(
                    avg <= best + 1e-12,
                    "perturbation ({i},{d}) gave {avg} > {best}"
                );
            }
        }
    }

    #[test]
    fn avg_info_counterexample_falsifies() {
        let prior = Distribution::uniform(u(3));
        let universal = TruthFunction::crisp(u(3), vec![true, true, false]).unwrap();
        let sampling = Distribution::new(u(3), vec![0.5, 0.4, 0.1]).unwrap();
        let rep = avg_semantic_info_report(&universal, &sampling, &prior).unwrap();
        assert_eq!(rep.bits, f64::NEG_INFINITY);
        assert_eq!(rep.falsifying_points, 1);
    }

    #[test]
    fn avg_info_tautology_is_zero() {
        let prior = Distribution::uniform(u(3));
        let sampling = Distribution::new(u(3), vec![0.7, 0.2, 0.1]).unwrap();
        let t = TruthFunction::tautology(u(3));
        assert_eq!(avg_semantic_info(&t, &sampling, &prior).unwrap(), 0.0);
    }

    fn arbitrary_channel() -> (Distribution, ShannonChannel) {
        let prior = Distribution::new(u(3), vec![0.5, 0.3, 0.2]).unwrap();
        let ch = ShannonChannel::new(
            u(3),
            vec!["a", "b"],
            vec![vec![0.9, 0.3, 0.1], vec![0.1, 0.7, 0.9]],
        )
        .unwrap();
        (prior, ch)
    }

    #[test]
    fn matched_truths_reach_shannon_limit() {
        let (prior, ch) = arbitrary_channel();
        // matched truth: each row scaled to peak 1
        let truths: Vec<TruthFunction> = ch
            .rows()
            .iter()
            .map(|row| {
                let m = row.iter().cloned().fold(0.0, f64::max);
                TruthFunction::tabulated(u(3), row.iter().map(|v| v / m).collect()).unwrap()
            })
            .collect();
        let sc = SemanticChannel::new(vec!["a", "b"], truths).unwrap();
        let rep = semantic_mutual_info(&sc, &prior, &ch).unwrap();
        assert_relative_eq!(rep.mutual_info, rep.shannon_mutual_info, epsilon = 1e-9);
        // per-label consistency: mutual = sum_j P(y_j) avg_j
        let total: f64 = rep
            .label_probabilities
            .iter()
            .zip(&rep.avg_info)
            .map(|(p, a)| p * a)
            .sum();
        assert_relative_eq!(rep.mutual_info, total, max_relative = 1e-12);
    }

    #[test]
    fn tautologies_give_zero_mutual_info() {
        let (prior, ch) = arbitrary_channel();
        let sc = SemanticChannel::new(
            vec!["a", "b"],
            vec![TruthFunction::tautology(u(3)), TruthFunction::tautology(u(3))],
        )
        .unwrap();
        let rep = semantic_mutual_info(&sc, &prior, &ch).unwrap();
        assert_eq!(rep.mutual_info, 0.0);
        assert!(rep.shannon_mutual_info > 0.0);
    }

    #[test]
    fn mismatched_truths_stay_below_shannon() {
        let (prior, ch) = arbitrary_channel();
        for vals in [
            [vec![0.5, 1.0, 0.2], vec![1.0, 0.1, 0.6]],
            [vec![1.0, 0.9, 0.8], vec![0.2, 0.4, 1.0]],
            [vec![0.05, 0.3, 1.0], vec![1.0, 0.8, 0.3]],
        ] {
            let sc = SemanticChannel::new(
                vec!["a", "b"],
                vals.iter()
                    .map(|v| TruthFunction::tabulated(u(3), v.clone()).unwrap())
                    .collect(),
            )
            .unwrap();
            let rep = semantic_mutual_info(&sc, &prior, &ch).unwrap();
            assert!(rep.mutual_info <= rep.shannon_mutual_info + 1e-9);
        }
    }

    #[test]
    fn decomposition_zero_error_at_point_prior() {
        let ages = Universe::scalar_grid(0.0, 10.0, 11).unwrap();
        let prior = Distribution::point_mass(ages.clone(), 5).unwrap();
        let t = TruthFunction::gaussian(ages.clone(), 5.0, 2.0).unwrap();
        let sc = SemanticChannel::new(vec!["l"], vec![t]).unwrap();
        let ch = ShannonChannel::new(ages, vec!["l"], vec![vec![1.0; 11]]).unwrap();
        let d = gaussian_decomposition(&sc, &prior, &ch).unwrap();
        assert_eq!(d.squared_error_term, 0.0);
        assert!(d.identity_residual < 1e-9);
        assert_eq!(d.entropy_term, 0.0, "T(theta) = 1 at the point prior");
    }

    #[test]
    fn decomposition_identity_on_grid() {
        let grid = Universe::scalar_grid(0.0, 4.0, 5).unwrap();
        let prior = Distribution::new(grid.clone(), vec![0.1, 0.3, 0.2, 0.25, 0.15]).unwrap();
        let sc = SemanticChannel::new(
            vec!["low", "high"],
            vec![
                TruthFunction::gaussian(grid.clone(), 1.0, 0.8).unwrap(),
                TruthFunction::gaussian(grid.clone(), 3.2, 1.5).unwrap(),
            ],
        )
        .unwrap();
        let ch = ShannonChannel::new(
            grid,
            vec!["low", "high"],
            vec![
                vec![0.9, 0.7, 0.4, 0.2, 0.1],
                vec![0.1, 0.3, 0.6, 0.8, 0.9],
            ],
        )
        .unwrap();
        let d = gaussian_decomposition(&sc, &prior, &ch).unwrap();
        assert!(d.identity_residual < 1e-9, "residual {}", d.identity_residual);
        assert!(d.squared_error_term > 0.0);
        // nats here, bits in the generic report
        let rep = semantic_mutual_info(&sc, &prior, &ch).unwrap();
        assert_relative_eq!(d.mutual_info_nats, rep.mutual_info * crate::LN_2, max_relative = 1e-9);
    }

    #[test]
    fn decomposition_vanishes_for_huge_sigma() {
        let grid = Universe::scalar_grid(0.0, 4.0, 5).unwrap();
        let prior = Distribution::uniform(grid.clone());
        let sc = SemanticChannel::new(
            vec!["l", "r"],
            vec![
                TruthFunction::gaussian(grid.clone(), 1.0, 1e6).unwrap(),
                TruthFunction::gaussian(grid.clone(), 3.0, 1e6).unwrap(),
            ],
        )
        .unwrap();
        let ch = ShannonChannel::new(
            grid,
            vec!["l", "r"],
            vec![vec![0.5; 5], vec![0.5; 5]],
        )
        .unwrap();
        let d = gaussian_decomposition(&sc, &prior, &ch).unwrap();
        assert!(d.mutual_info_nats.abs() < 1e-9);
        assert!(d.entropy_term.abs() < 1e-9);
        assert!(d.squared_error_term.abs() < 1e-9);
    }

    #[test]
    fn decomposition_rejects_non_gaussian() {
        let grid = Universe::scalar_grid(0.0, 4.0, 5).unwrap();
        let prior = Distribution::uniform(grid.clone());
        let sc = SemanticChannel::new(vec!["l"], vec![TruthFunction::tautology(grid.clone())]).unwrap();
        let ch = ShannonChannel::new(grid, vec!["l"], vec![vec![1.0; 5]]).unwrap();
        assert!(matches!(
            gaussian_decomposition(&sc, &prior, &ch).unwrap_err(),
            Error::InvalidTruthFunction(_)
        ));
    }

    #[test]
    fn control_amount_examples() {
        let ideal = Distribution::new(u(2), vec![1.0, 0.0]).unwrap();
        let actual = Distribution::new(u(2), vec![0.4, 0.6]).unwrap();
        let prior = Distribution::new(u(2), vec![0.8, 0.2]).unwrap();
        assert_relative_eq!(
            effective_control_amount(&ideal, &actual, &prior).unwrap(),
            -1.0,
            max_relative = 1e-12
        );
        // no control
        assert_eq!(effective_control_amount(&ideal, &prior, &prior).unwrap(), 0.0);
        // perfect control
        let full = effective_control_amount(&ideal, &ideal, &prior).unwrap();
        assert_relative_eq!(full, kl_divergence(&ideal, &prior).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn control_amount_sentinels() {
        let ideal = Distribution::new(u(2), vec![1.0, 0.0]).unwrap();
        let blocked = Distribution::new(u(2), vec![0.0, 1.0]).unwrap();
        let prior = Distribution::new(u(2), vec![0.5, 0.5]).unwrap();
        assert_eq!(
            effective_control_amount(&ideal, &blocked, &prior).unwrap(),
            f64::NEG_INFINITY
        );
        let zero_prior = Distribution::new(u(2), vec![0.0, 1.0]).unwrap();
        assert_eq!(
            effective_control_amount(&ideal, &prior, &zero_prior).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn control_amount_maximized_by_ideal() {
        // brute force over a simplex mesh in 3 dimensions
        let ideal = Distribution::new(u(3), vec![0.5, 0.3, 0.2]).unwrap();
        let prior = Distribution::new(u(3), vec![0.2, 0.3, 0.5]).unwrap();
        let bound = kl_divergence(&ideal, &prior).unwrap();
        let steps = 20;
        for i in 0..=steps {
            for j in 0..=(steps - i) {
                let k = steps - i - j;
                let mass = vec![
                    i as f64 / steps as f64,
                    j as f64 / steps as f64,
                    k as f64 / steps as f64,
                ];
                let actual = Distribution::renormalized(u(3), mass).unwrap();
                let ic = effective_control_amount(&ideal, &actual, &prior).unwrap();
                assert!(ic <= bound + 1e-12, "I_c {ic} exceeds KL bound {bound}");
            }
        }
    }

    #[test]
    fn report_serializes_with_units() {
        let (prior, ch) = arbitrary_channel();
        let sc = SemanticChannel::new(
            vec!["a", "b"],
            vec![TruthFunction::tautology(u(3)), TruthFunction::tautology(u(3))],
        )
        .unwrap();
        let rep = semantic_mutual_info(&sc, &prior, &ch).unwrap();
        let js = serde_json::to_string(&rep).unwrap();
        assert!(js.contains("\"units\":\"bits\""));
    }

    #[test]
    fn labels_must_align() {
        let (prior, ch) = arbitrary_channel();
        let sc = SemanticChannel::new(
            vec!["a", "WRONG"],
            vec![TruthFunction::tautology(u(3)), TruthFunction::tautology(u(3))],
        )
        .unwrap();
        assert!(semantic_mutual_info(&sc, &prior, &ch).is_err());
    }

    #[test]
    fn semantic_posterior_weights_match_bayes_weights() {
        // the per-label average uses P(x|y_j); cross-check through
        // bayes_posterior on the same row
        let (prior, ch) = arbitrary_channel();
        let truths: Vec<TruthFunction> = ch
            .rows()
            .iter()
            .map(|row| {
                let m = row.iter().cloned().fold(0.0, f64::max);
                TruthFunction::tabulated(u(3), row.iter().map(|v| v / m).collect()).unwrap()
            })
            .collect();
        let sc = SemanticChannel::new(vec!["a", "b"], truths).unwrap();
        let rep = semantic_mutual_info(&sc, &prior, &ch).unwrap();
        for j in 0..2 {
            let (_, post) = bayes_posterior(&prior, ch.row(j)).unwrap();
            let direct = avg_semantic_info(sc.truth(j), &post, &prior).unwrap();
            assert_relative_eq!(rep.avg_info[j], direct, max_relative = 1e-12);
        }
        let _ = shannon_mutual_info(&prior, &ch).unwrap();
    }
}
