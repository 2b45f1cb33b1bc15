//! Property tests for the invariants that hold across random inputs:
//! round trips between likelihoods and truth functions, information
//! inequalities, confirmation-measure symmetries, and fuzzy-logic laws.

use proptest::prelude::*;

use ptprob::confirm::{b_star, c_star, f_measure, symmetry_check, ConfusionCounts};
use ptprob::fuzzy::{fuzzy_and, fuzzy_not, fuzzy_or, implication_bound, CorrelationMode};
use ptprob::info::semantic_mutual_info;
use ptprob::learn::match_truth_functions;
use ptprob::prob::{bayes_posterior, entropy, kl_divergence, shannon_mutual_info};
use ptprob::reason::{syllogism_channel, syllogism_prediction, hypothesis_universe};
use ptprob::semantic::{logical_probability, semantic_bayes_predict, truth_from_likelihood, SemanticChannel};
use ptprob::{Distribution, ShannonChannel, TruthFunction, Universe};

const MODES: [CorrelationMode; 3] = [
    CorrelationMode::Positive,
    CorrelationMode::Independent,
    CorrelationMode::Negative,
];

fn universe(n: usize) -> Universe {
    let ids: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    Universe::labeled(&ids).unwrap()
}

fn distribution(weights: &[f64]) -> Distribution {
    Distribution::renormalized(universe(weights.len()), weights.to_vec()).unwrap()
}

/// A strictly positive channel from flat weights, one row of `n` weights
/// per label.
fn channel(n: usize, flat: &[f64]) -> ShannonChannel {
    let m = flat.len() / n;
    let mut columns = vec![0.0; n];
    for (idx, w) in flat.iter().enumerate() {
        columns[idx % n] += w;
    }
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|j| (0..n).map(|i| flat[j * n + i] / columns[i]).collect())
        .collect();
    ShannonChannel::new(universe(n), (0..m).map(|j| format!("y{j}")).collect::<Vec<_>>(), rows)
        .unwrap()
}

proptest! {
    #[test]
    fn logical_probability_is_a_weighted_truth_average(
        weights in prop::collection::vec(0.01..1.0f64, 2..12),
        values in prop::collection::vec(0.0..=1.0f64, 12),
    ) {
        let prior = distribution(&weights);
        let values = &values[..weights.len()];
        let truth =
            TruthFunction::tabulated(prior.universe().clone(), values.to_vec()).unwrap();
        let t = logical_probability(&truth, &prior).unwrap();
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(0.0f64, f64::max);
        prop_assert!(t >= lo - 1e-12 && t <= hi + 1e-12);
    }

    #[test]
    fn likelihood_truth_round_trip(
        weights in prop::collection::vec(0.05..1.0f64, 2..12),
        likes in prop::collection::vec(0.05..1.0f64, 12),
    ) {
        let prior = distribution(&weights);
        let likelihood = distribution(&likes[..weights.len()]);
        let (truth, t_theta) = truth_from_likelihood(&likelihood, &prior).unwrap();
        prop_assert!((truth.sup() - 1.0).abs() <= 1e-12);
        prop_assert!((logical_probability(&truth, &prior).unwrap() - t_theta).abs() <= 1e-12);
        let back = semantic_bayes_predict(&truth, &prior).unwrap();
        for i in 0..prior.len() {
            prop_assert!((back.get(i) - likelihood.get(i)).abs() <= 1e-9);
        }
    }

    #[test]
    fn truth_likelihood_round_trip_up_to_scale(
        weights in prop::collection::vec(0.05..1.0f64, 2..10),
        values in prop::collection::vec(0.05..=1.0f64, 10),
    ) {
        let prior = distribution(&weights);
        let values = &values[..weights.len()];
        let truth =
            TruthFunction::tabulated(prior.universe().clone(), values.to_vec()).unwrap();
        let predicted = semantic_bayes_predict(&truth, &prior).unwrap();
        let (recovered, _) = truth_from_likelihood(&predicted, &prior).unwrap();
        // Induction rescales so the supremum is 1; the shape is preserved.
        let sup = truth.sup();
        for i in 0..prior.len() {
            prop_assert!((recovered.value_at(i) - values[i] / sup).abs() <= 1e-9);
        }
    }

    #[test]
    fn matched_channel_reproduces_classical_bayes(
        weights in prop::collection::vec(0.05..1.0f64, 2..8),
        flat in prop::collection::vec(0.05..1.0f64, 24),
    ) {
        let n = weights.len();
        let prior = distribution(&weights);
        let m = flat.len() / n;
        prop_assume!(m >= 2);
        let ch = channel(n, &flat[..n * m]);
        let matched = match_truth_functions(&ch).unwrap();
        for j in 0..ch.n_labels() {
            let semantic = semantic_bayes_predict(matched.truth(j), &prior).unwrap();
            let (_, classical) = bayes_posterior(&prior, ch.row(j)).unwrap();
            for i in 0..n {
                prop_assert!((semantic.get(i) - classical.get(i)).abs() <= 1e-12);
            }
        }
        let report = semantic_mutual_info(&matched, &prior, &ch).unwrap();
        prop_assert!((report.mutual_info - report.shannon_mutual_info).abs() <= 1e-9);
    }

    #[test]
    fn semantic_information_never_beats_shannon(
        weights in prop::collection::vec(0.05..1.0f64, 2..6),
        flat in prop::collection::vec(0.05..1.0f64, 12),
        truth_flat in prop::collection::vec(0.05..=1.0f64, 12),
    ) {
        let n = weights.len();
        let prior = distribution(&weights);
        let m = flat.len() / n;
        prop_assume!(m >= 2);
        let ch = channel(n, &flat[..n * m]);
        let truths: Vec<TruthFunction> = (0..m)
            .map(|j| {
                TruthFunction::tabulated(
                    prior.universe().clone(),
                    truth_flat[j * n..(j + 1) * n].to_vec(),
                )
                .unwrap()
            })
            .collect();
        let labels: Vec<String> = ch.labels().to_vec();
        let sc = SemanticChannel::new(labels, truths).unwrap();
        let report = semantic_mutual_info(&sc, &prior, &ch).unwrap();
        prop_assert!(report.mutual_info <= report.shannon_mutual_info + 1e-9);
    }

    #[test]
    fn information_quantities_sign_conventions(
        weights in prop::collection::vec(0.05..1.0f64, 2..10),
        post_w in prop::collection::vec(0.05..1.0f64, 10),
    ) {
        let prior = distribution(&weights);
        let post = distribution(&post_w[..weights.len()]);
        prop_assert!(entropy(&prior) >= 0.0);
        prop_assert!(kl_divergence(&post, &prior).unwrap() >= -1e-12);
    }

    #[test]
    fn shannon_mutual_info_is_nonnegative(
        weights in prop::collection::vec(0.05..1.0f64, 2..6),
        flat in prop::collection::vec(0.05..1.0f64, 12),
    ) {
        let n = weights.len();
        let prior = distribution(&weights);
        let m = flat.len() / n;
        prop_assume!(m >= 2);
        let ch = channel(n, &flat[..n * m]);
        prop_assert!(shannon_mutual_info(&prior, &ch).unwrap() >= -1e-12);
    }

    #[test]
    fn fuzzy_connectives_are_dual_and_bounded(a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        for mode in MODES {
            let and = fuzzy_and(a, b, mode);
            let or = fuzzy_or(a, b, mode);
            prop_assert!((0.0..=1.0).contains(&and));
            prop_assert!((0.0..=1.0).contains(&or));
            prop_assert!(and <= a.min(b) + 1e-15);
            prop_assert!(or >= a.max(b) - 1e-15);
            prop_assert!((or - (a + b - and)).abs() <= 1e-15);
            let lhs = fuzzy_not(fuzzy_and(a, b, mode));
            let rhs = fuzzy_or(fuzzy_not(a), fuzzy_not(b), mode);
            prop_assert!((lhs - rhs).abs() <= 1e-12);
        }
    }

    #[test]
    fn implication_bound_never_violated(p_p in 1e-9..=1.0f64, frac in 0.0..=1.0f64) {
        let b = implication_bound(p_p, p_p * frac).unwrap();
        prop_assert!(b.bound_holds);
        prop_assert!(b.conditional <= b.material + 1e-12);
    }

    #[test]
    fn confirmation_symmetries_and_ranges(a in 0u64..400, b in 0u64..400, c in 0u64..400, d in 0u64..400) {
        let counts = ConfusionCounts::new(a, b, c, d);
        if let Ok((b1, b0)) = b_star(counts) {
            prop_assert!((-1.0..=1.0).contains(&b1));
            prop_assert!((-1.0..=1.0).contains(&b0));
        }
        if let Ok((c1, c0)) = c_star(counts) {
            prop_assert!((-1.0..=1.0).contains(&c1));
            prop_assert!((-1.0..=1.0).contains(&c0));
        }
        if let Ok((f1, f0)) = f_measure(counts) {
            prop_assert!((-1.0..=1.0).contains(&f1));
            prop_assert!((-1.0..=1.0).contains(&f0));
        }
        if let Ok(report) = symmetry_check(counts) {
            prop_assert_eq!(report.b_residual, 0.0);
            prop_assert_eq!(report.c_residual, 0.0);
            prop_assert!(report.holds);
        }
    }

    #[test]
    fn syllogisms_agree_with_empirical_rates(a in 0u64..60, b in 0u64..60, c in 0u64..60, d in 0u64..60) {
        let counts = ConfusionCounts::new(a, b, c, d);
        let n = (a + b + c + d) as f64;
        prop_assume!(a + c > 0);
        let empirical = a as f64 / (a + c) as f64;
        if let Ok((b1, _)) = b_star(counts) {
            let prior = Distribution::new(
                hypothesis_universe(),
                vec![(c + d) as f64 / n, (a + b) as f64 / n],
            )
            .unwrap();
            let post = syllogism_channel(b1, &prior).unwrap();
            prop_assert!((post.get(1) - empirical).abs() <= 1e-12);
        }
        if a >= c {
            if let Ok((c1, _)) = c_star(counts) {
                let post = syllogism_prediction(c1).unwrap();
                prop_assert!((post.get(1) - empirical).abs() <= 1e-12);
            }
        }
    }
}
