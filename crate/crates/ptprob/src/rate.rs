//! Rate-distortion computation via the parametric formulas, its expression
//! as a semantic (truth-function) mutual information, and the minimum
//! mutual information under distribution constraint functions.

use serde::{Deserialize, Serialize};

use crate::channel::ShannonChannel;
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::prob::kl_divergence;
use crate::semantic::{semantic_bayes_predict, SemanticChannel};
use crate::universe::Universe;

/// Below this mass a reproduction letter is dropped from the support
/// during the fixed-point iteration.
const PRUNE_TOL: f64 = 1e-12;
/// Fixed-point stop: maximum relative change of the reproduction prior.
const CONVERGENCE_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100_000;

/// Distortion (loss) of representing source letter `i` by reproduction
/// letter `j`; all entries finite and nonnegative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DistortionMatrix {
    values: Vec<Vec<f64>>,
}

impl DistortionMatrix {
    pub fn new(values: Vec<Vec<f64>>) -> Result<Self> {
        if values.is_empty() || values[0].is_empty() {
            return Err(Error::InvalidArgument("empty distortion matrix".into()));
        }
        let width = values[0].len();
        for row in &values {
            if row.len() != width {
                return Err(Error::LengthMismatch {
                    what: "distortion row",
                    expected: width,
                    got: row.len(),
                });
            }
            for &v in row {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "distortion {v} is not finite and nonnegative"
                    )));
                }
            }
        }
        Ok(DistortionMatrix { values })
    }

    /// Squared-difference distortion between source coordinates and the
    /// given reproduction values.
    pub fn squared_error(universe: &Universe, reproductions: &[f64]) -> Result<Self> {
        universe.require_coords(1)?;
        let values = (0..universe.len())
            .map(|i| {
                let x = universe.scalar(i)?;
                Ok(reproductions.iter().map(|y| (x - y) * (x - y)).collect())
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        Self::new(values)
    }

    pub fn n_sources(&self) -> usize {
        self.values.len()
    }

    pub fn n_reproductions(&self) -> usize {
        self.values[0].len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }
}

/// One point of the rate-distortion curve, with the minimizing channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RdPoint {
    /// Curve parameter, the slope dR/dD; nonpositive.
    pub s: f64,
    /// Average distortion D(s).
    pub distortion: f64,
    /// Rate R(s) in bits.
    pub rate_bits: f64,
    /// Converged reproduction marginal P(y).
    pub reproduction_prior: Distribution,
    /// Minimizing transition matrix P(y_j|x_i).
    pub channel: ShannonChannel,
    /// Reproduction labels whose mass collapsed and was removed.
    pub pruned: Vec<String>,
    /// Fixed-point sweeps performed.
    pub sweeps: usize,
}

/// One point of the rate-distortion function by alternating fixed-point
/// iteration on the reproduction marginal, from a uniform start.
pub fn rd_point(prior: &Distribution, d: &DistortionMatrix, s: f64) -> Result<RdPoint> {
    if !(s <= 0.0) {
        return Err(Error::InvalidArgument(format!("s must be nonpositive, got {s}")));
    }
    if d.n_sources() != prior.len() {
        return Err(Error::LengthMismatch {
            what: "distortion rows",
            expected: prior.len(),
            got: d.n_sources(),
        });
    }
    let n = prior.len();
    let m = d.n_reproductions();
    let weight = |i: usize, j: usize| (s * d.get(i, j)).exp();

    let mut q = vec![1.0 / m as f64; m];
    let mut sweeps = 0;
    let mut residual = f64::INFINITY;
    let mut converged = false;
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let lambda: Vec<f64> = (0..n)
            .map(|i| (0..m).map(|j| q[j] * weight(i, j)).sum())
            .collect();
        let mut next: Vec<f64> = (0..m)
            .map(|j| q[j] * (0..n).map(|i| prior.get(i) * weight(i, j) / lambda[i]).sum::<f64>())
            .collect();
        for v in &mut next {
            if *v < PRUNE_TOL {
                *v = 0.0;
            }
        }
        let total: f64 = next.iter().sum();
        for v in &mut next {
            *v /= total;
        }
        residual = (0..m)
            .filter(|&j| q[j] > 0.0)
            .map(|j| (next[j] - q[j]).abs() / q[j])
            .fold(0.0, f64::max);
        q = next;
        if residual < CONVERGENCE_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps, residual });
    }

    let lambda: Vec<f64> = (0..n)
        .map(|i| (0..m).map(|j| q[j] * weight(i, j)).sum())
        .collect();
    let mut distortion = 0.0;
    for i in 0..n {
        for j in 0..m {
            distortion += d.get(i, j) * prior.get(i) * q[j] * weight(i, j) / lambda[i];
        }
    }
    let mut rate_nats = s * distortion;
    for i in 0..n {
        rate_nats -= prior.get(i) * lambda[i].ln();
    }
    let mut rate_bits = rate_nats / crate::LN_2;
    if rate_bits.abs() < 1e-12 {
        rate_bits = 0.0;
    }

    let labels: Vec<String> = (0..m).map(|j| format!("y{j}")).collect();
    let label_universe = Universe::labeled(&labels)?;
    let reproduction_prior = Distribution::new(label_universe, q.clone())?;
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|j| (0..n).map(|i| q[j] * weight(i, j) / lambda[i]).collect())
        .collect();
    let channel = ShannonChannel::new(prior.universe().clone(), labels.clone(), rows)?;
    let pruned = (0..m).filter(|&j| q[j] == 0.0).map(|j| labels[j].clone()).collect();
    Ok(RdPoint {
        s,
        distortion,
        rate_bits,
        reproduction_prior,
        channel,
        pruned,
        sweeps,
    })
}

/// Sweep of [`rd_point`] over a nonincreasing grid of nonpositive slopes.
/// Points are computed concurrently; the output order follows the grid.
pub fn rd_curve(prior: &Distribution, d: &DistortionMatrix, s_grid: &[f64]) -> Result<Vec<RdPoint>> {
    if s_grid.is_empty() {
        return Err(Error::InvalidArgument("empty slope grid".into()));
    }
    for w in s_grid.windows(2) {
        if w[1] > w[0] {
            return Err(Error::InvalidArgument(
                "slope grid must be sorted descending from 0".into(),
            ));
        }
    }
    let threads = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(s_grid.len());
    let chunk = s_grid.len().div_ceil(threads);
    let mut results: Vec<Option<Result<RdPoint>>> = vec![None; s_grid.len()];
    std::thread::scope(|scope| {
        for (out, ss) in results.chunks_mut(chunk).zip(s_grid.chunks(chunk)) {
            scope.spawn(move || {
                for (slot, &s) in out.iter_mut().zip(ss) {
                    *slot = Some(rd_point(prior, d, s));
                }
            });
        }
    });
    results
        .into_iter()
        .map(|r| r.expect("every grid point computed"))
        .collect()
}

/// The rate of an [`RdPoint`] evaluated through its truth-function form:
/// the source letters act as fuzzy sets over the reproduction alphabet
/// with truth values `exp(s d_ij)` and logical probabilities `lambda_i`,
/// and the semantic mutual information of that reading equals the rate.
pub fn r_theta_from_rd(rd: &RdPoint, prior: &Distribution, d: &DistortionMatrix) -> Result<f64> {
    crate::universe::check_same_universe(prior.universe(), rd.channel.universe(), "prior vs rate-distortion channel")?;
    if d.n_sources() != prior.len() || d.n_reproductions() != rd.reproduction_prior.len() {
        return Err(Error::LengthMismatch {
            what: "distortion matrix",
            expected: prior.len() * rd.reproduction_prior.len(),
            got: d.n_sources() * d.n_reproductions(),
        });
    }
    let n = prior.len();
    let m = rd.reproduction_prior.len();
    let mut bits = 0.0;
    for i in 0..n {
        let lambda_i: f64 = (0..m)
            .map(|j| rd.reproduction_prior.get(j) * (rd.s * d.get(i, j)).exp())
            .sum();
        for j in 0..m {
            let forward = rd.channel.row(j)[i];
            if forward > 0.0 {
                let truth = (rd.s * d.get(i, j)).exp();
                bits += prior.get(i) * forward * (truth / lambda_i).log2();
            }
        }
    }
    Ok(bits)
}

/// Result of the minimum-information principle for distribution
/// constraint functions: the per-label minimizing posteriors, their
/// information amounts, and the label-averaged total.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DcfMinimumInfo {
    /// Minimum mutual information in bits.
    pub bits: f64,
    /// Minimum KL information per label, bits.
    pub per_label_bits: Vec<f64>,
    /// The minimizing posterior P(x|theta_j) per label.
    pub posteriors: Vec<Distribution>,
}

/// Minimum mutual information compatible with the given constraint
/// functions: the minimizing posterior of each label is its semantic
/// Bayes prediction, and the total is the label-averaged KL information
/// of those posteriors against the prior.
pub fn dcf_minimum_info(
    dcfs: &SemanticChannel,
    prior: &Distribution,
    label_prior: &Distribution,
) -> Result<DcfMinimumInfo> {
    if label_prior.len() != dcfs.n_labels() {
        return Err(Error::LengthMismatch {
            what: "label prior",
            expected: dcfs.n_labels(),
            got: label_prior.len(),
        });
    }
    for (j, label) in dcfs.labels().iter().enumerate() {
        if label_prior.universe().id(j) != label {
            return Err(Error::UniverseMismatch(format!(
                "label prior id {:?} does not match constraint label {label:?}",
                label_prior.universe().id(j)
            )));
        }
    }
    let mut posteriors = Vec::with_capacity(dcfs.n_labels());
    let mut per_label_bits = Vec::with_capacity(dcfs.n_labels());
    let mut bits = 0.0;
    for j in 0..dcfs.n_labels() {
        let posterior = semantic_bayes_predict(dcfs.truth(j), prior)?;
        let info = kl_divergence(&posterior, prior)?;
        bits += label_prior.get(j) * info;
        per_label_bits.push(info);
        posteriors.push(posterior);
    }
    Ok(DcfMinimumInfo { bits, per_label_bits, posteriors })
}
