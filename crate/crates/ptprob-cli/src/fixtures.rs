//! Bundled reference fixtures: small end-to-end checks with known answers,
//! run via `ptprob --fixtures`. They double as a smoke test of the whole
//! pipeline; each prints one pass/fail line.

use ptprob::confirm::{c_star, ConfusionCounts};
use ptprob::fuzzy::{child_truth, compound_label_truth, implication_bound};
use ptprob::info::{semantic_info_point, semantic_mutual_info};
use ptprob::learn::match_truth_functions;
use ptprob::rate::{rd_point, DistortionMatrix};
use ptprob::reason::{syllogism_channel, syllogism_prediction, hypothesis_universe};
use ptprob::semantic::logical_probability;
use ptprob::thermo::{entropy_info_relation, Area, ThermoSystem};
use ptprob::{Distribution, ShannonChannel, TruthFunction, Universe};

type Check = fn() -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !($cond) {
            return Err(format!($($arg)+));
        }
    };
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Ages {5, 20, 40, 70} with 70% of the mass on 18-and-over, plus a strict
/// selection channel that names 10% of the population "adult": the logical
/// probability is exactly 0.7 and the statistical probability exactly 0.1.
fn exact_probabilities() -> Result<(), String> {
    let ages = Universe::from_scalars(&[5.0, 20.0, 40.0, 70.0]).map_err(fail)?;
    let prior = Distribution::new(ages.clone(), vec![0.3, 0.45, 0.15, 0.1]).map_err(fail)?;
    let adult = TruthFunction::crisp(ages.clone(), vec![false, true, true, true]).map_err(fail)?;
    let t = logical_probability(&adult, &prior).map_err(fail)?;
    ensure!(t == 0.7, "logical probability {t}, want exactly 0.7");
    let selection = ShannonChannel::new(
        ages,
        vec!["adult", "other"],
        vec![vec![0.0, 0.0, 0.0, 1.0], vec![1.0, 1.0, 1.0, 0.0]],
    )
    .map_err(fail)?;
    let p = selection
        .label_marginal(&prior)
        .map_err(fail)?
        .get_by_id("adult")
        .unwrap_or(f64::NAN);
    ensure!(p == 0.1, "statistical probability {p}, want exactly 0.1");
    Ok(())
}

/// Truth value 0.8 against logical probability 0.35 carries
/// log2(0.8/0.35) = 1.1926 bits.
fn point_information() -> Result<(), String> {
    let u = Universe::labeled(&["x0", "x1"]).map_err(fail)?;
    let truth = TruthFunction::tabulated(u.clone(), vec![0.8, 0.2]).map_err(fail)?;
    let prior = Distribution::new(u, vec![0.25, 0.75]).map_err(fail)?;
    let bits = semantic_info_point(&truth, &prior, 0).map_err(fail)?;
    ensure!((bits - 1.1926).abs() <= 1e-4, "point info {bits}, want 1.1926 +- 1e-4");
    Ok(())
}

/// Channel-matched truth functions close the semantic/Shannon gap.
fn matched_channel() -> Result<(), String> {
    let u = Universe::labeled(&["x0", "x1", "x2"]).map_err(fail)?;
    let channel = ShannonChannel::new(
        u.clone(),
        vec!["low", "high"],
        vec![vec![0.9, 0.5, 0.2], vec![0.1, 0.5, 0.8]],
    )
    .map_err(fail)?;
    let prior = Distribution::new(u, vec![0.5, 0.3, 0.2]).map_err(fail)?;
    let matched = match_truth_functions(&channel).map_err(fail)?;
    let report = semantic_mutual_info(&matched, &prior, &channel).map_err(fail)?;
    let gap = (report.mutual_info - report.shannon_mutual_info).abs();
    ensure!(gap <= 1e-9, "information gap {gap:.3e} bits, want <= 1e-9");
    Ok(())
}

/// The prediction confirmation degree of the (6, 2, 1, 11) table is 5/6.
fn confirmation_ratio() -> Result<(), String> {
    let (c1, _) = c_star(ConfusionCounts::new(6, 2, 1, 11)).map_err(fail)?;
    ensure!(c1 == 5.0 / 6.0, "c* = {c1}, want exactly 5/6");
    Ok(())
}

/// A certain rule (degree 1) forces the favored hypothesis outright.
fn certain_syllogism() -> Result<(), String> {
    let prior = Distribution::new(hypothesis_universe(), vec![0.5, 0.5]).map_err(fail)?;
    let post = syllogism_channel(1.0, &prior).map_err(fail)?;
    ensure!(
        post.get(0) == 0.0 && post.get(1) == 1.0,
        "posterior ({}, {}), want (0, 1)",
        post.get(0),
        post.get(1)
    );
    Ok(())
}

/// Confirmation degree 5/6 predicts the favored hypothesis with 6/7.
fn prediction_syllogism() -> Result<(), String> {
    let post = syllogism_prediction(5.0 / 6.0).map_err(fail)?;
    ensure!(
        (post.get(0) - 1.0 / 7.0).abs() <= 1e-12 && (post.get(1) - 6.0 / 7.0).abs() <= 1e-12,
        "posterior ({}, {}), want (1/7, 6/7)",
        post.get(0),
        post.get(1)
    );
    Ok(())
}

/// Binary uniform source, Hamming distortion: R(D) = 1 - H2(D).
fn binary_rate() -> Result<(), String> {
    let u = Universe::labeled(&["x0", "x1"]).map_err(fail)?;
    let prior = Distribution::uniform(u);
    let hamming = DistortionMatrix::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).map_err(fail)?;
    let pt = rd_point(&prior, &hamming, -1.0).map_err(fail)?;
    let d = pt.distortion;
    let closed = 1.0 + d * d.log2() + (1.0 - d) * (1.0 - d).log2();
    ensure!(
        (pt.rate_bits - closed).abs() <= 1e-6,
        "rate {} vs closed form {closed}",
        pt.rate_bits
    );
    Ok(())
}

/// Local-equilibrium toy system: the information form of the rate agrees
/// with ln G - S/(kN) to 1e-9 nats.
fn equilibrium_relation() -> Result<(), String> {
    let system = ThermoSystem::new(
        1.0,
        vec![0.0, 1.0, 2.0],
        vec![1.0, 2.0, 1.0],
        vec![
            Area { temperature: 1.0, particles: 10.0 },
            Area { temperature: 2.0, particles: 5.0 },
        ],
    )
    .map_err(fail)?;
    let relation = entropy_info_relation(&system).map_err(fail)?;
    ensure!(
        relation.residual.abs() < 1e-9,
        "residual {:.3e} nats, want < 1e-9",
        relation.residual
    );
    Ok(())
}

/// P(q|p) <= 1 - P(p) + P(p, q), with the worked values for (0.1, 0.02).
fn implication_values() -> Result<(), String> {
    let b = implication_bound(0.1, 0.02).map_err(fail)?;
    ensure!((b.conditional - 0.2).abs() <= 1e-15, "conditional {}", b.conditional);
    ensure!(b.material == 0.92, "material {}, want exactly 0.92", b.material);
    ensure!(b.bound_holds, "bound violated");
    Ok(())
}

/// "NOT (u OR a)" evaluates pointwise to 1 - max(u, a).
fn compound_negation() -> Result<(), String> {
    let grid = Universe::scalar_grid(0.0, 99.0, 100).map_err(fail)?;
    // A falling grade is outside the (rising) logistic family; tabulate it.
    let falling: Vec<f64> = (0..100)
        .map(|i| 1.0 / (1.0 + ((i as f64 - 25.0) * 0.4).exp()))
        .collect();
    let youth = TruthFunction::tabulated(grid.clone(), falling).map_err(fail)?;
    let adult = TruthFunction::logistic(grid.clone(), 0.5, 18.0).map_err(fail)?;
    let compound =
        compound_label_truth(&[("u", &youth), ("a", &adult)], "NOT (u OR a)").map_err(fail)?;
    let direct = child_truth(&youth, &adult).map_err(fail)?;
    for i in 0..100 {
        ensure!(
            compound.value_at(i) == direct.value_at(i),
            "mismatch at grid point {i}: {} vs {}",
            compound.value_at(i),
            direct.value_at(i)
        );
    }
    Ok(())
}

/// Run every fixture; the report and whether all of them passed.
pub fn run_all() -> (String, bool) {
    let checks: Vec<(&str, Check)> = vec![
        ("exact-probabilities", exact_probabilities),
        ("point-information", point_information),
        ("matched-channel", matched_channel),
        ("confirmation-ratio", confirmation_ratio),
        ("certain-syllogism", certain_syllogism),
        ("prediction-syllogism", prediction_syllogism),
        ("binary-rate", binary_rate),
        ("equilibrium-relation", equilibrium_relation),
        ("implication-bound", implication_values),
        ("compound-negation", compound_negation),
    ];
    let mut out = String::new();
    let mut all_pass = true;
    for (name, check) in checks {
        match check() {
            Ok(()) => out.push_str(&format!("fixture {name}: pass\n")),
            Err(msg) => {
                all_pass = false;
                out.push_str(&format!("fixture {name}: FAIL - {msg}\n"));
            }
        }
    }
    (out, all_pass)
}
