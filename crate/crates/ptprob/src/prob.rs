//! Statistical probability operations on distributions and channels.
//!
//! Conventions used throughout:
//! * information quantities are in bits (log base 2),
//! * `0 * log 0 = 0`,
//! * a divergence term with positive mass against zero reference yields
//!   `f64::INFINITY` rather than an error.

use crate::channel::{RecoveredChannel, ShannonChannel};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::universe::check_same_universe;

/// Prediction via Bayes' rule on one transition row:
/// `P(x|y_j) = P(y_j|x) P(x) / P(y_j)` with `P(y_j) = sum_i P(y_j|x_i) P(x_i)`.
///
/// Returns `(P(y_j), posterior)`. Fails if the label probability is zero,
/// i.e. the row never fires where the prior has mass.
pub fn bayes_posterior(prior: &Distribution, row: &[f64]) -> Result<(f64, Distribution)> {
    if row.len() != prior.len() {
        return Err(Error::LengthMismatch {
            what: "transition row",
            expected: prior.len(),
            got: row.len(),
        });
    }
    if row.iter().any(|v| !v.is_finite() || !(0.0..=1.0).contains(v)) {
        return Err(Error::InvalidChannel("transition probabilities must lie in [0,1]".into()));
    }
    let weights: Vec<f64> = row.iter().zip(prior.mass()).map(|(t, p)| t * p).collect();
    let label_prob: f64 = weights.iter().sum();
    if label_prob <= 0.0 {
        return Err(Error::ZeroProbabilityEvent { what: "label (zero row mass)".into() });
    }
    let posterior = Distribution::renormalized(prior.universe().clone(), weights)?;
    Ok((label_prob, posterior))
}

/// Result of [`bayes_inverse`]: the mixture marginal together with the
/// recovered transition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseBayes {
    /// `P(x) = sum_j P(y_j) P(x|y_j)`.
    pub mixture: Distribution,
    /// `P(y_j|x) = P(x|y_j) P(y_j) / P(x)`; undefined where `P(x) = 0`.
    pub channel: RecoveredChannel,
}

/// Recover the channel from per-label posteriors and a label prior:
/// the second form of Bayes' rule between statistical distributions.
///
/// `label_prior` lives on a universe whose point ids name the labels, in
/// the same order as `posteriors`.
pub fn bayes_inverse(posteriors: &[Distribution], label_prior: &Distribution) -> Result<InverseBayes> {
    if posteriors.is_empty() {
        return Err(Error::InvalidArgument("no posteriors".into()));
    }
    if posteriors.len() != label_prior.len() {
        return Err(Error::LengthMismatch {
            what: "posteriors",
            expected: label_prior.len(),
            got: posteriors.len(),
        });
    }
    let universe = posteriors[0].universe().clone();
    for p in &posteriors[1..] {
        check_same_universe(&universe, p.universe(), "posteriors disagree")?;
    }
    let n = universe.len();
    let mut mix = vec![0.0; n];
    for (post, &py) in posteriors.iter().zip(label_prior.mass()) {
        for (m, &px) in mix.iter_mut().zip(post.mass()) {
            *m += py * px;
        }
    }
    let mixture = Distribution::renormalized(universe.clone(), mix.clone())?;
    let values = posteriors
        .iter()
        .zip(label_prior.mass())
        .map(|(post, &py)| {
            (0..n)
                .map(|i| {
                    if mixture.get(i) > 0.0 {
                        Some((py * post.get(i) / mixture.get(i)).min(1.0))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    let labels = label_prior
        .universe()
        .points()
        .iter()
        .map(|p| p.id.clone())
        .collect();
    Ok(InverseBayes {
        mixture,
        channel: RecoveredChannel::from_parts(universe, labels, values),
    })
}

/// Shannon entropy of a distribution, in bits.
pub fn entropy(d: &Distribution) -> f64 {
    -d.mass()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Kullback-Leibler divergence `D(post || prior)` in bits.
///
/// Returns `f64::INFINITY` when `post` has mass outside the support of
/// `prior` (the sentinel, not an error: the quantity is well defined).
pub fn kl_divergence(post: &Distribution, prior: &Distribution) -> Result<f64> {
    post.same_universe(prior)?;
    let mut sum = 0.0;
    for (&q, &p) in post.mass().iter().zip(prior.mass()) {
        if q == 0.0 {
            continue;
        }
        if p == 0.0 {
            return Ok(f64::INFINITY);
        }
        sum += q * (q / p).log2();
    }
    Ok(sum)
}

/// Shannon mutual information `I(X;Y)` in bits for a prior and channel.
pub fn shannon_mutual_info(prior: &Distribution, channel: &ShannonChannel) -> Result<f64> {
    check_same_universe(prior.universe(), channel.universe(), "prior vs channel")?;
    let marginal = channel.label_marginal(prior)?;
    let mut info = 0.0;
    for (j, row) in channel.rows().iter().enumerate() {
        let py = marginal.get(j);
        if py == 0.0 {
            continue;
        }
        for (&t, &px) in row.iter().zip(prior.mass()) {
            let w = px * t;
            if w > 0.0 {
                info += w * (t / py).log2();
            }
        }
    }
    // Tiny negative values are floating-point noise around independence.
    Ok(if info < 0.0 && info > -1e-12 { 0.0 } else { info })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::Universe;
    use approx::assert_relative_eq;

    fn u(n: usize) -> Universe {
        Universe::labeled(&(0..n).map(|i| format!("x{i}")).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn posterior_of_deterministic_row_is_point_mass() {
        let prior = Distribution::uniform(u(2));
        let (py, post) = bayes_posterior(&prior, &[1.0, 0.0]).unwrap();
        assert_eq!(py, 0.5);
        assert_eq!(post.mass(), &[1.0, 0.0]);
    }

    #[test]
    fn posterior_of_constant_row_is_prior() {
        let prior = Distribution::new(u(2), vec![0.3, 0.7]).unwrap();
        let (py, post) = bayes_posterior(&prior, &[0.4, 0.4]).unwrap();
        assert_relative_eq!(py, 0.4, max_relative = 1e-15);
        assert_relative_eq!(post.get(0), 0.3, max_relative = 1e-15);
        assert_relative_eq!(post.get(1), 0.7, max_relative = 1e-15);
    }

    #[test]
    fn posterior_rejects_zero_mass_label() {
        let prior = Distribution::new(u(2), vec![1.0, 0.0]).unwrap();
        let err = bayes_posterior(&prior, &[0.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::ZeroProbabilityEvent { .. }));
    }

    #[test]
    fn inverse_of_single_label_is_constant_row() {
        let d = Distribution::new(u(3), vec![0.2, 0.5, 0.3]).unwrap();
        let lp = Distribution::new(Universe::labeled(&["only"]).unwrap(), vec![1.0]).unwrap();
        let inv = bayes_inverse(&[d.clone()], &lp).unwrap();
        assert_eq!(inv.mixture, d);
        assert_eq!(inv.channel.row(0), &[Some(1.0), Some(1.0), Some(1.0)]);
    }

    #[test]
    fn inverse_marks_zero_mass_points_undefined() {
        let post = Distribution::new(u(3), vec![0.5, 0.5, 0.0]).unwrap();
        let lp = Distribution::new(Universe::labeled(&["only"]).unwrap(), vec![1.0]).unwrap();
        let inv = bayes_inverse(&[post], &lp).unwrap();
        assert_eq!(inv.channel.get(0, 2), None);
        assert_eq!(inv.channel.undefined_points(), vec![2]);
        assert!(inv.channel.clone().into_channel().is_err());
        let filled = inv.channel.filled_uniform().unwrap();
        assert_eq!(filled.get(0, 2), 1.0);
    }

    #[test]
    fn roundtrip_posteriors_channel_posteriors() {
        let prior_y = Distribution::new(
            Universe::labeled(&["y0", "y1"]).unwrap(),
            vec![0.25, 0.75],
        )
        .unwrap();
        let p0 = Distribution::new(u(3), vec![0.6, 0.3, 0.1]).unwrap();
        let p1 = Distribution::new(u(3), vec![0.1, 0.2, 0.7]).unwrap();
        let inv = bayes_inverse(&[p0.clone(), p1.clone()], &prior_y).unwrap();
        let channel = inv.channel.into_channel().unwrap();
        for (j, (orig, &py)) in [p0, p1].iter().zip(prior_y.mass()).enumerate() {
            let (py_back, post) = bayes_posterior(&inv.mixture, channel.row(j)).unwrap();
            assert_relative_eq!(py_back, py, max_relative = 1e-12);
            for i in 0..3 {
                assert_relative_eq!(post.get(i), orig.get(i), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn entropy_of_uniform_is_log_n() {
        assert_relative_eq!(entropy(&Distribution::uniform(u(8))), 3.0, max_relative = 1e-12);
        let d = Distribution::new(u(2), vec![1.0, 0.0]).unwrap();
        assert_eq!(entropy(&d), 0.0);
    }

    #[test]
    fn kl_basics() {
        let p = Distribution::new(u(2), vec![0.5, 0.5]).unwrap();
        assert_eq!(kl_divergence(&p, &p).unwrap(), 0.0);
        let q = Distribution::new(u(2), vec![1.0, 0.0]).unwrap();
        assert_relative_eq!(kl_divergence(&q, &p).unwrap(), 1.0, max_relative = 1e-15);
        assert_eq!(kl_divergence(&p, &q).unwrap(), f64::INFINITY);
    }

    #[test]
    fn mutual_info_independent_channel_is_zero() {
        let prior = Distribution::new(u(2), vec![0.3, 0.7]).unwrap();
        let ch = ShannonChannel::new(u(2), vec!["a", "b"], vec![vec![0.4, 0.4], vec![0.6, 0.6]]).unwrap();
        assert!(shannon_mutual_info(&prior, &ch).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mutual_info_noiseless_binary_is_one_bit() {
        let prior = Distribution::uniform(u(2));
        let ch = ShannonChannel::new(u(2), vec!["a", "b"], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_relative_eq!(shannon_mutual_info(&prior, &ch).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn mutual_info_as_weighted_kl() {
        let prior = Distribution::new(u(3), vec![0.2, 0.5, 0.3]).unwrap();
        let ch = ShannonChannel::new(
            u(3),
            vec!["a", "b"],
            vec![vec![0.9, 0.4, 0.2], vec![0.1, 0.6, 0.8]],
        )
        .unwrap();
        let mi = shannon_mutual_info(&prior, &ch).unwrap();
        let mut acc = 0.0;
        for j in 0..2 {
            let (py, post) = bayes_posterior(&prior, ch.row(j)).unwrap();
            acc += py * kl_divergence(&post, &prior).unwrap();
        }
        assert_relative_eq!(mi, acc, max_relative = 1e-12);
    }

    #[test]
    fn merging_labels_cannot_increase_mutual_info() {
        let prior = Distribution::new(u(3), vec![0.2, 0.5, 0.3]).unwrap();
        let ch = ShannonChannel::new(
            u(3),
            vec!["a", "b", "c"],
            vec![
                vec![0.7, 0.1, 0.2],
                vec![0.2, 0.8, 0.3],
                vec![0.1, 0.1, 0.5],
            ],
        )
        .unwrap();
        let full = shannon_mutual_info(&prior, &ch).unwrap();
        let merged = ch.merge_labels(0, 2, "ac").unwrap();
        let coarse = shannon_mutual_info(&prior, &merged).unwrap();
        assert!(coarse <= full + 1e-12, "coarse {coarse} > full {full}");
    }
}
