//! Induction: learning truth functions from samples and channels, fitting
//! parametric families by maximum average semantic information, and
//! classifying by maximum semantic information.

use serde::Serialize;

use crate::channel::ShannonChannel;
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::info::avg_semantic_info_report;
use crate::semantic::{logical_probability, SemanticChannel};
use crate::truth::TruthFunction;
use crate::universe::Universe;

/// A supervised sample: (instance, label) pairs over a universe.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    universe: Universe,
    labels: Vec<String>,
    /// (instance index, label index) per example.
    examples: Vec<(usize, usize)>,
}

impl LabeledSample {
    pub fn new(universe: Universe, labels: Vec<String>, examples: Vec<(usize, usize)>) -> Result<Self> {
        if examples.is_empty() {
            return Err(Error::InvalidSample("no examples".into()));
        }
        if labels.is_empty() {
            return Err(Error::InvalidSample("no labels".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidSample(format!("duplicate label {l:?}")));
            }
        }
        for &(i, j) in &examples {
            if i >= universe.len() {
                return Err(Error::InvalidSample(format!("instance index {i} out of range")));
            }
            if j >= labels.len() {
                return Err(Error::InvalidSample(format!("label index {j} out of range")));
            }
        }
        Ok(LabeledSample { universe, labels, examples })
    }

    /// Build from (instance id, label) pairs; the label set is collected in
    /// first-appearance order.
    pub fn from_pairs(universe: Universe, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut examples = Vec::with_capacity(pairs.len());
        for (id, label) in pairs {
            let i = universe
                .index_of(id)
                .ok_or_else(|| Error::InvalidSample(format!("unknown instance {id:?}")))?;
            let j = match labels.iter().position(|l| l == label) {
                Some(j) => j,
                None => {
                    labels.push(label.to_string());
                    labels.len() - 1
                }
            };
            examples.push((i, j));
        }
        Self::new(universe, labels, examples)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn examples(&self) -> &[(usize, usize)] {
        &self.examples
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }
}

/// Relative-frequency estimates from a labelled sample. All instance-side
/// distributions live on the sub-universe of instances that actually occur
/// (the conditional frequencies P(y|x) are undefined elsewhere).
#[derive(Debug, Clone, PartialEq)]
pub struct Empirical {
    /// P(x) over the observed sub-universe.
    pub prior: Distribution,
    /// P(y) over the label universe.
    pub label_prior: Distribution,
    /// P(x|y_j) per label, aligned with `label_prior`.
    pub posteriors: Vec<Distribution>,
    /// P(y_j|x) over the observed sub-universe.
    pub channel: ShannonChannel,
}

pub fn empirical_distributions(sample: &LabeledSample) -> Result<Empirical> {
    let n_points = sample.universe().len();
    let n_labels = sample.labels().len();
    let mut x_count = vec![0.0f64; n_points];
    let mut y_count = vec![0.0f64; n_labels];
    let mut joint = vec![vec![0.0f64; n_points]; n_labels];
    for &(i, j) in sample.examples() {
        x_count[i] += 1.0;
        y_count[j] += 1.0;
        joint[j][i] += 1.0;
    }
    let observed: Vec<usize> = (0..n_points).filter(|&i| x_count[i] > 0.0).collect();
    let sub = sample.universe().restrict(&observed)?;

    let prior = Distribution::renormalized(
        sub.clone(),
        observed.iter().map(|&i| x_count[i]).collect(),
    )?;
    let label_universe = Universe::labeled(sample.labels())?;
    let label_prior = Distribution::renormalized(label_universe, y_count.clone())?;
    let posteriors = (0..n_labels)
        .map(|j| {
            Distribution::renormalized(
                sub.clone(),
                observed.iter().map(|&i| joint[j][i]).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..n_labels)
        .map(|j| {
            observed
                .iter()
                .map(|&i| joint[j][i] / x_count[i])
                .collect::<Vec<f64>>()
        })
        .collect();
    let channel = ShannonChannel::new(sub, sample.labels().to_vec(), rows)?;
    Ok(Empirical { prior, label_prior, posteriors, channel })
}

/// Channel matching: scale every transition row to peak at 1, turning the
/// Shannon channel into the semantic channel that maximizes average
/// semantic information, `T*(theta_j|x) = P(y_j|x) / max_x P(y_j|x)`.
pub fn match_truth_functions(channel: &ShannonChannel) -> Result<SemanticChannel> {
    let truths = channel
        .labels()
        .iter()
        .zip(channel.rows())
        .map(|(label, row)| {
            let max = row.iter().cloned().fold(0.0, f64::max);
            if max <= 0.0 {
                return Err(Error::UnusedLabel { label: label.clone() });
            }
            TruthFunction::tabulated(
                channel.universe().clone(),
                row.iter().map(|v| (v / max).min(1.0)).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SemanticChannel::new(channel.labels().to_vec(), truths)
}

/// Optimized truth function of one label from its empirical posterior:
/// `T*(theta|x) = [P(x|y)/P(x)] / max_x [P(x|y)/P(x)]`.
pub fn truth_from_sampling(posterior: &Distribution, prior: &Distribution) -> Result<TruthFunction> {
    crate::semantic::truth_from_likelihood(posterior, prior).map(|(t, _)| t)
}

/// Two-parameter families for [`fit_parametric_truth`], with inclusive
/// parameter bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitFamily {
    Gaussian { center: (f64, f64), sigma: (f64, f64) },
    Logistic { slope: (f64, f64), threshold: (f64, f64) },
}

impl FitFamily {
    fn name(&self) -> &'static str {
        match self {
            FitFamily::Gaussian { .. } => "gaussian",
            FitFamily::Logistic { .. } => "logistic",
        }
    }

    fn bounds(&self) -> [(f64, f64); 2] {
        match *self {
            FitFamily::Gaussian { center, sigma } => [center, sigma],
            FitFamily::Logistic { slope, threshold } => [slope, threshold],
        }
    }

    fn param_names(&self) -> [&'static str; 2] {
        match self {
            FitFamily::Gaussian { .. } => ["center", "sigma"],
            FitFamily::Logistic { .. } => ["slope", "threshold"],
        }
    }

    fn build(&self, universe: &Universe, p: [f64; 2]) -> Result<TruthFunction> {
        match self {
            FitFamily::Gaussian { .. } => TruthFunction::gaussian(universe.clone(), p[0], p[1]),
            FitFamily::Logistic { .. } => TruthFunction::logistic(universe.clone(), p[0], p[1]),
        }
    }

    fn validate(&self) -> Result<()> {
        for ((lo, hi), name) in self.bounds().iter().zip(self.param_names()) {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(Error::InvalidArgument(format!(
                    "bad bounds [{lo}, {hi}] for {name}"
                )));
            }
        }
        match self {
            FitFamily::Gaussian { sigma: (lo, _), .. } if *lo <= 0.0 => Err(Error::InvalidArgument(
                "sigma lower bound must be positive".into(),
            )),
            FitFamily::Logistic { slope: (lo, _), .. } if *lo <= 0.0 => Err(Error::InvalidArgument(
                "slope lower bound must be positive".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Fitted parameters, tagged with their meaning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum FittedParams {
    Gaussian { center: f64, sigma: f64 },
    Logistic { slope: f64, threshold: f64 },
}

impl FittedParams {
    pub fn raw(&self) -> [f64; 2] {
        match *self {
            FittedParams::Gaussian { center, sigma } => [center, sigma],
            FittedParams::Logistic { slope, threshold } => [slope, threshold],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub family: &'static str,
    pub params: FittedParams,
    /// Average semantic information of the fitted truth function, bits.
    pub objective_bits: f64,
    /// Objective after the grid stage and after every refinement pass;
    /// nondecreasing.
    pub trace: Vec<f64>,
    /// Number of refinement passes performed.
    pub iterations: usize,
    /// Whether the prior was replaced by the uniform distribution.
    pub prior_assumed_uniform: bool,
    /// Set when a fitted parameter ended on a bound (the data wants a
    /// value outside the box, e.g. sigma -> 0 for a one-point sampling).
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Grid resolution per axis for the coarse stage.
    pub grid: usize,
    /// Replace the prior with the uniform distribution over the universe.
    pub assume_uniform_prior: bool,
    /// Refine with projected gradient ascent instead of golden-section.
    pub use_gradient: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { grid: 32, assume_uniform_prior: false, use_gradient: false }
    }
}

/// Objective of the fit: average semantic information of the candidate
/// truth function against the sampling distribution, with the logical
/// probability recomputed from the prior at every candidate.
pub fn fit_objective(
    family: &FitFamily,
    params: [f64; 2],
    sampling: &Distribution,
    prior: &Distribution,
) -> Result<f64> {
    let truth = family.build(prior.universe(), params)?;
    Ok(avg_semantic_info_report(&truth, sampling, prior)?.bits)
}

/// Analytic gradient of [`fit_objective`] with respect to the two family
/// parameters, in bits per parameter unit.
pub fn fit_objective_gradient(
    family: &FitFamily,
    params: [f64; 2],
    sampling: &Distribution,
    prior: &Distribution,
) -> Result<[f64; 2]> {
    sampling.same_universe(prior)?;
    let universe = prior.universe();
    universe.require_coords(1)?;
    let truth = family.build(universe, params)?;
    let t_theta = logical_probability(&truth, prior)?;
    if t_theta <= 0.0 {
        return Err(Error::ZeroProbabilityEvent { what: "label truth".into() });
    }
    // dO/dp = (1/ln2) [ sum_i s_i dT_i/dp / T_i - (sum_i prior_i dT_i/dp) / T(theta) ]
    let mut grad = [0.0f64; 2];
    let mut lp_grad = [0.0f64; 2];
    for i in 0..prior.len() {
        let x = universe.scalar(i)?;
        let t = truth.value_at(i);
        let dt: [f64; 2] = match *family {
            FitFamily::Gaussian { .. } => {
                let (c, s) = (params[0], params[1]);
                [t * (x - c) / (s * s), t * (x - c) * (x - c) / (s * s * s)]
            }
            FitFamily::Logistic { .. } => {
                let (u, v) = (params[0], params[1]);
                [t * (1.0 - t) * (x - v), -t * (1.0 - t) * u]
            }
        };
        let s_i = sampling.get(i);
        if s_i > 0.0 {
            if t == 0.0 {
                return Err(Error::ZeroProbabilityEvent { what: "truth value underflow".into() });
            }
            grad[0] += s_i * dt[0] / t;
            grad[1] += s_i * dt[1] / t;
        }
        lp_grad[0] += prior.get(i) * dt[0];
        lp_grad[1] += prior.get(i) * dt[1];
    }
    Ok([
        (grad[0] - lp_grad[0] / t_theta) / crate::LN_2,
        (grad[1] - lp_grad[1] / t_theta) / crate::LN_2,
    ])
}

/// Fit a two-parameter truth function by maximizing average semantic
/// information: a coarse grid over the bound box, then deterministic
/// coordinate-wise refinement (golden-section line searches, or projected
/// gradient ascent when `use_gradient` is set).
pub fn fit_parametric_truth(
    sampling: &Distribution,
    prior: &Distribution,
    family: FitFamily,
    options: FitOptions,
) -> Result<FitResult> {
    family.validate()?;
    sampling.same_universe(prior)?;
    prior.universe().require_coords(1)?;
    if options.grid < 2 {
        return Err(Error::InvalidArgument("grid must be at least 2".into()));
    }
    let uniform;
    let prior_used = if options.assume_uniform_prior {
        uniform = Distribution::uniform(prior.universe().clone());
        &uniform
    } else {
        prior
    };
    let score = |p: [f64; 2]| -> f64 {
        fit_objective(&family, p, sampling, prior_used).unwrap_or(f64::NEG_INFINITY)
    };

    let bounds = family.bounds();
    let g = options.grid;
    let axis = |b: (f64, f64), k: usize| b.0 + (b.1 - b.0) * k as f64 / (g - 1) as f64;

    // grid stage; ties keep the first (lowest-index) candidate
    let mut best_p = [bounds[0].0, bounds[1].0];
    let mut best = f64::NEG_INFINITY;
    for k0 in 0..g {
        for k1 in 0..g {
            let p = [axis(bounds[0], k0), axis(bounds[1], k1)];
            let v = score(p);
            if v > best {
                best = v;
                best_p = p;
            }
        }
    }
    if best == f64::NEG_INFINITY {
        return Err(Error::ZeroProbabilityEvent {
            what: "objective (-inf over the whole grid)".into(),
        });
    }
    let mut trace = vec![best];

    let cell = [
        (bounds[0].1 - bounds[0].0) / (g - 1) as f64,
        (bounds[1].1 - bounds[1].0) / (g - 1) as f64,
    ];
    let max_passes = 64;
    let mut passes = 0;
    for _ in 0..max_passes {
        passes += 1;
        let before = best;
        if options.use_gradient {
            (best_p, best) = gradient_pass(&score, |p| {
                fit_objective_gradient(&family, p, sampling, prior_used).unwrap_or([0.0, 0.0])
            }, best_p, best, bounds);
        } else {
            for c in 0..2 {
                if cell[c] == 0.0 {
                    continue;
                }
                let lo = (best_p[c] - cell[c]).max(bounds[c].0);
                let hi = (best_p[c] + cell[c]).min(bounds[c].1);
                let (x, v) = golden_section_max(
                    |x| {
                        let mut p = best_p;
                        p[c] = x;
                        score(p)
                    },
                    lo,
                    hi,
                );
                if v > best {
                    best = v;
                    best_p[c] = x;
                }
            }
        }
        trace.push(best);
        if best - before <= 1e-12 {
            break;
        }
    }

    let names = family.param_names();
    let mut warnings = Vec::new();
    for c in 0..2 {
        let span = (bounds[c].1 - bounds[c].0).max(f64::MIN_POSITIVE);
        if (best_p[c] - bounds[c].0).abs() <= 1e-6 * span {
            warnings.push(format!("{} at lower bound {}", names[c], bounds[c].0));
        } else if (bounds[c].1 - best_p[c]).abs() <= 1e-6 * span {
            warnings.push(format!("{} at upper bound {}", names[c], bounds[c].1));
        }
    }
    let params = match family {
        FitFamily::Gaussian { .. } => FittedParams::Gaussian { center: best_p[0], sigma: best_p[1] },
        FitFamily::Logistic { .. } => FittedParams::Logistic { slope: best_p[0], threshold: best_p[1] },
    };
    Ok(FitResult {
        family: family.name(),
        params,
        objective_bits: best,
        trace,
        iterations: passes,
        prior_assumed_uniform: options.assume_uniform_prior,
        warnings,
    })
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let tol = 1e-10 * (b - a).abs().max(1.0);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

fn gradient_pass(
    score: &impl Fn([f64; 2]) -> f64,
    grad: impl Fn([f64; 2]) -> [f64; 2],
    mut p: [f64; 2],
    mut best: f64,
    bounds: [(f64, f64); 2],
) -> ([f64; 2], f64) {
    // ascent direction scaled per coordinate by the squared box span, so
    // parameters with very different units make comparable progress
    let scale = [
        (bounds[0].1 - bounds[0].0).powi(2).max(f64::MIN_POSITIVE),
        (bounds[1].1 - bounds[1].0).powi(2).max(f64::MIN_POSITIVE),
    ];
    for _ in 0..200 {
        let g = grad(p);
        let d = [g[0] * scale[0], g[1] * scale[1]];
        if d[0] == 0.0 && d[1] == 0.0 {
            break;
        }
        // backtracking line search along the projected direction
        let mut step = 1.0;
        let mut improved = false;
        for _ in 0..60 {
            let q = [
                (p[0] + step * d[0]).clamp(bounds[0].0, bounds[0].1),
                (p[1] + step * d[1]).clamp(bounds[1].0, bounds[1].1),
            ];
            let v = score(q);
            if v > best {
                p = q;
                best = v;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (p, best)
}

/// Maximum-semantic-information classification of instance `x`:
/// `argmax_j log2[T(theta_j|x)/T(theta_j)]`, ties resolved to the lowest
/// label index.
pub fn classify(sc: &SemanticChannel, prior: &Distribution, x: usize) -> Result<usize> {
    crate::universe::check_same_universe(sc.universe(), prior.universe(), "truths vs prior")?;
    if x >= prior.len() {
        return Err(Error::InvalidArgument(format!("point index {x} out of range")));
    }
    let mut best: Option<(usize, f64)> = None;
    for j in 0..sc.n_labels() {
        let t_theta = logical_probability(sc.truth(j), prior)?;
        if t_theta <= 0.0 {
            return Err(Error::ZeroProbabilityEvent { what: format!("label {:?}", sc.labels()[j]) });
        }
        let t = sc.truth(j).value_at(x);
        if t == 0.0 {
            continue;
        }
        let bits = (t / t_theta).log2();
        match best {
            Some((_, b)) if bits <= b => {}
            _ => best = Some((j, bits)),
        }
    }
    best.map(|(j, _)| j).ok_or(Error::Unclassifiable { index: x })
}

/// Falling-shadow membership: the fraction of the given crisp subsets that
/// contain point `x`. Each subset is a bool-per-point row.
pub fn random_set_membership(sets: &[Vec<bool>], x: usize) -> Result<f64> {
    if sets.is_empty() {
        return Err(Error::InvalidArgument("no subsets".into()));
    }
    let n = sets[0].len();
    if x >= n {
        return Err(Error::InvalidArgument(format!("point index {x} out of range")));
    }
    for s in sets {
        if s.len() != n {
            return Err(Error::LengthMismatch { what: "subset", expected: n, got: s.len() });
        }
    }
    let hits = sets.iter().filter(|s| s[x]).count();
    Ok(hits as f64 / sets.len() as f64)
}
