//! Toy statistical mechanics: the Boltzmann distribution as a semantic
//! Bayes prediction, and the identity tying minimum mutual information to
//! thermodynamic entropy for local equilibrium systems.

use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::info::avg_semantic_info;
use crate::semantic::semantic_bayes_predict;
use crate::truth::TruthFunction;
use crate::universe::Universe;

/// Boltzmann occupation probabilities over states with the given energies
/// and degeneracies: `P(x_i) ∝ G_i exp(-e_i / kT)`.
pub fn boltzmann(energies: &[f64], multiplicities: &[f64], k_t: f64) -> Result<Distribution> {
    if !(k_t > 0.0) || !k_t.is_finite() {
        return Err(Error::InvalidArgument(format!("kT must be positive, got {k_t}")));
    }
    validate_spectrum(energies, multiplicities)?;
    let universe = state_universe(energies.len())?;
    let weights = energies
        .iter()
        .zip(multiplicities)
        .map(|(&e, &g)| g * (-e / k_t).exp())
        .collect();
    Distribution::renormalized(universe, weights)
}

/// A system of areas in local equilibrium: every area sees the same state
/// spectrum (energies and multiplicities) but has its own temperature and
/// particle count. `k` is the Boltzmann constant; toy systems use 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermoSystem {
    #[serde(default = "default_k")]
    pub k: f64,
    pub energies: Vec<f64>,
    pub multiplicities: Vec<f64>,
    pub areas: Vec<Area>,
}

fn default_k() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Area {
    pub temperature: f64,
    pub particles: f64,
}

fn validate_spectrum(energies: &[f64], multiplicities: &[f64]) -> Result<()> {
    if energies.is_empty() {
        return Err(Error::InvalidArgument("no states".into()));
    }
    if energies.len() != multiplicities.len() {
        return Err(Error::LengthMismatch {
            what: "multiplicities",
            expected: energies.len(),
            got: multiplicities.len(),
        });
    }
    for &e in energies {
        if !e.is_finite() {
            return Err(Error::InvalidArgument(format!("energy {e} is not finite")));
        }
    }
    for &g in multiplicities {
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "multiplicity {g} must be positive and finite"
            )));
        }
    }
    Ok(())
}

fn state_universe(n: usize) -> Result<Universe> {
    Universe::labeled(&(0..n).map(|i| format!("s{i}")).collect::<Vec<_>>())
}

impl ThermoSystem {
    pub fn new(k: f64, energies: Vec<f64>, multiplicities: Vec<f64>, areas: Vec<Area>) -> Result<Self> {
        let sys = ThermoSystem { k, energies, multiplicities, areas };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0) || !self.k.is_finite() {
            return Err(Error::InvalidArgument(format!("k must be positive, got {}", self.k)));
        }
        validate_spectrum(&self.energies, &self.multiplicities)?;
        if self.areas.is_empty() {
            return Err(Error::InvalidArgument("no areas".into()));
        }
        for a in &self.areas {
            if !(a.temperature > 0.0) || !a.temperature.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "temperature {} must be positive",
                    a.temperature
                )));
            }
            if !(a.particles > 0.0) || !a.particles.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "particle count {} must be positive",
                    a.particles
                )));
            }
        }
        Ok(())
    }

    /// Total number of states, `G`.
    pub fn total_states(&self) -> f64 {
        self.multiplicities.iter().sum()
    }

    /// Partition function of one area, `Z_j = sum_i G_i exp(-e_i / kT_j)`.
    pub fn partition_function(&self, area: usize) -> f64 {
        let k_t = self.k * self.areas[area].temperature;
        self.energies
            .iter()
            .zip(&self.multiplicities)
            .map(|(&e, &g)| g * (-e / k_t).exp())
            .sum()
    }

    /// Average energy per particle in one area under its Boltzmann
    /// distribution.
    pub fn mean_energy(&self, area: usize) -> f64 {
        let k_t = self.k * self.areas[area].temperature;
        let z = self.partition_function(area);
        self.energies
            .iter()
            .zip(&self.multiplicities)
            .map(|(&e, &g)| e * g * (-e / k_t).exp() / z)
            .sum()
    }

    /// Thermodynamic entropy `S = sum_j E_j/T_j + k sum_j N_j ln Z_j`,
    /// from the free energy `F_j = -k N_j T_j ln Z_j` of each area.
    pub fn entropy(&self) -> f64 {
        self.areas
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let e_j = a.particles * self.mean_energy(j);
                e_j / a.temperature + self.k * a.particles * self.partition_function(j).ln()
            })
            .sum()
    }
}

/// Both sides of the entropy-information identity for a local equilibrium
/// system, in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyInfoRelation {
    /// Minimum mutual information computed through truth functions: areas
    /// act as fuzzy sets over states with truth values `exp(-e_i / kT_j)`.
    pub info_nats: f64,
    /// `ln G - S / (kN)` computed from the thermodynamic side.
    pub entropy_side_nats: f64,
    /// `info_nats - entropy_side_nats`.
    pub residual: f64,
    /// Thermodynamic entropy `S`.
    pub entropy: f64,
    /// Total particle count `N`.
    pub total_particles: f64,
    /// `ln G`.
    pub ln_total_states: f64,
}

/// Evaluates the minimum mutual information of a local equilibrium system
/// two ways: through the semantic information machinery (truth functions
/// built from the Boltzmann factors) and through `ln G - S/(kN)`. The two
/// must agree; a residual beyond 1e-9 nats is reported as an error.
pub fn entropy_info_relation(sys: &ThermoSystem) -> Result<EntropyInfoRelation> {
    sys.validate()?;
    let universe = state_universe(sys.energies.len())?;
    let g = sys.total_states();
    let prior = Distribution::renormalized(universe.clone(), sys.multiplicities.clone())?;
    let total_particles: f64 = sys.areas.iter().map(|a| a.particles).sum();

    // information side: per-area truth functions exp(-e/kT_j), shifted by
    // the minimum energy so values stay in [0, 1] (average semantic
    // information is invariant under that scaling)
    let e_min = sys.energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut info_nats = 0.0;
    for area in &sys.areas {
        let k_t = sys.k * area.temperature;
        let truth = TruthFunction::tabulated(
            universe.clone(),
            sys.energies.iter().map(|&e| (-(e - e_min) / k_t).exp()).collect(),
        )?;
        let occupancy = semantic_bayes_predict(&truth, &prior)?;
        let bits = avg_semantic_info(&truth, &occupancy, &prior)?;
        info_nats += (area.particles / total_particles) * bits * crate::LN_2;
    }

    // entropy side, from partition functions and mean energies
    let entropy = sys.entropy();
    let entropy_side_nats = g.ln() - entropy / (sys.k * total_particles);

    let residual = info_nats - entropy_side_nats;
    if !(residual.abs() < 1e-9) {
        return Err(Error::IdentityViolation { what: "entropy-information", residual });
    }
    Ok(EntropyInfoRelation {
        info_nats,
        entropy_side_nats,
        residual,
        entropy,
        total_particles,
        ln_total_states: g.ln(),
    })
}
