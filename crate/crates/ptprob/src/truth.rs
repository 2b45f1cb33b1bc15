//! Truth functions: fuzzy membership over a universe.
//!
//! A truth function `T(theta|x)` maps every universe point to a degree in
//! `[0, 1]`. It doubles as the membership function of a fuzzy set and as
//! the distribution-constraint of a label. Supported forms:
//!
//! * `tabulated` - one stored value per point;
//! * `gaussian`  - `exp(-(x - center)^2 / (2 sigma^2))` on scalar coordinates;
//! * `mvgaussian`- product of per-axis Gaussian factors on vector coordinates;
//! * `logistic`  - `1 / (1 + exp(-slope (x - threshold)))`, asymptotic to 1;
//! * `believable`- `disbelief + (1 - disbelief) * indicator(region)`;
//! * `crisp`     - plain indicator of a subset.

use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::universe::{check_same_universe, Universe};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", content = "params", rename_all = "lowercase")]
pub enum TruthForm {
    Tabulated {
        values: Vec<f64>,
    },
    Gaussian {
        center: f64,
        sigma: f64,
    },
    #[serde(rename = "mvgaussian")]
    MvGaussian {
        centers: Vec<f64>,
        sigmas: Vec<f64>,
    },
    Logistic {
        slope: f64,
        threshold: f64,
    },
    Believable {
        region: Vec<bool>,
        disbelief: f64,
    },
    Crisp {
        members: Vec<bool>,
    },
}

/// A truth function bound to its universe. Values are guaranteed to lie in
/// `[0, 1]`; parametric forms are checked against the universe's coordinate
/// system at construction so evaluation is infallible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruthFunction {
    universe: Universe,
    #[serde(flatten)]
    form: TruthForm,
}

impl TruthFunction {
    pub fn new(universe: Universe, form: TruthForm) -> Result<Self> {
        match &form {
            TruthForm::Tabulated { values } => {
                expect_len(&universe, "truth values", values.len())?;
                for &v in values {
                    if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                        return Err(Error::InvalidTruthFunction(format!("value {v} outside [0,1]")));
                    }
                }
            }
            TruthForm::Gaussian { center, sigma } => {
                universe.require_coords(1)?;
                if !center.is_finite() || !sigma.is_finite() || *sigma <= 0.0 {
                    return Err(Error::InvalidTruthFunction(format!(
                        "gaussian needs finite center and sigma > 0, got ({center}, {sigma})"
                    )));
                }
            }
            TruthForm::MvGaussian { centers, sigmas } => {
                if centers.len() != sigmas.len() || centers.is_empty() {
                    return Err(Error::InvalidTruthFunction(
                        "centers and sigmas must have equal, nonzero length".into(),
                    ));
                }
                universe.require_coords(centers.len())?;
                if centers.iter().any(|c| !c.is_finite())
                    || sigmas.iter().any(|s| !s.is_finite() || *s <= 0.0)
                {
                    return Err(Error::InvalidTruthFunction(
                        "mvgaussian needs finite centers and sigmas > 0".into(),
                    ));
                }
            }
            TruthForm::Logistic { slope, threshold } => {
                universe.require_coords(1)?;
                if !slope.is_finite() || !threshold.is_finite() || *slope <= 0.0 {
                    return Err(Error::InvalidTruthFunction(format!(
                        "logistic needs finite threshold and slope > 0, got ({slope}, {threshold})"
                    )));
                }
            }
            TruthForm::Believable { region, disbelief } => {
                expect_len(&universe, "believable region", region.len())?;
                if !disbelief.is_finite() || !(0.0..=1.0).contains(disbelief) {
                    return Err(Error::InvalidTruthFunction(format!(
                        "disbelief {disbelief} outside [0,1]"
                    )));
                }
            }
            TruthForm::Crisp { members } => {
                expect_len(&universe, "crisp members", members.len())?;
            }
        }
        Ok(TruthFunction { universe, form })
    }

    pub fn tabulated(universe: Universe, values: Vec<f64>) -> Result<Self> {
        Self::new(universe, TruthForm::Tabulated { values })
    }

    pub fn gaussian(universe: Universe, center: f64, sigma: f64) -> Result<Self> {
        Self::new(universe, TruthForm::Gaussian { center, sigma })
    }

    pub fn mv_gaussian(universe: Universe, centers: Vec<f64>, sigmas: Vec<f64>) -> Result<Self> {
        Self::new(universe, TruthForm::MvGaussian { centers, sigmas })
    }

    pub fn logistic(universe: Universe, slope: f64, threshold: f64) -> Result<Self> {
        Self::new(universe, TruthForm::Logistic { slope, threshold })
    }

    pub fn believable(universe: Universe, region: Vec<bool>, disbelief: f64) -> Result<Self> {
        Self::new(universe, TruthForm::Believable { region, disbelief })
    }

    pub fn crisp(universe: Universe, members: Vec<bool>) -> Result<Self> {
        Self::new(universe, TruthForm::Crisp { members })
    }

    /// Crisp set given by point ids.
    pub fn crisp_from_ids<S: AsRef<str>>(universe: Universe, ids: &[S]) -> Result<Self> {
        let mut members = vec![false; universe.len()];
        for id in ids {
            let i = universe
                .index_of(id.as_ref())
                .ok_or_else(|| Error::InvalidArgument(format!("unknown point {:?}", id.as_ref())))?;
            members[i] = true;
        }
        Self::crisp(universe, members)
    }

    /// The always-true tautology.
    pub fn tautology(universe: Universe) -> Self {
        let n = universe.len();
        TruthFunction { universe, form: TruthForm::Tabulated { values: vec![1.0; n] } }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn form(&self) -> &TruthForm {
        &self.form
    }

    /// Truth value at universe point `i`.
    pub fn value_at(&self, i: usize) -> f64 {
        match &self.form {
            TruthForm::Tabulated { values } => values[i],
            TruthForm::Gaussian { center, sigma } => {
                let x = self.universe.coord(i).expect("validated at construction")[0];
                let z = (x - center) / sigma;
                (-0.5 * z * z).exp()
            }
            TruthForm::MvGaussian { centers, sigmas } => {
                let x = self.universe.coord(i).expect("validated at construction");
                let mut q = 0.0;
                for ((xi, c), s) in x.iter().zip(centers).zip(sigmas) {
                    let z = (xi - c) / s;
                    q += z * z;
                }
                (-0.5 * q).exp()
            }
            TruthForm::Logistic { slope, threshold } => {
                let x = self.universe.coord(i).expect("validated at construction")[0];
                1.0 / (1.0 + (-slope * (x - threshold)).exp())
            }
            TruthForm::Believable { region, disbelief } => {
                if region[i] {
                    1.0
                } else {
                    *disbelief
                }
            }
            TruthForm::Crisp { members } => {
                if members[i] {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// All truth values, in universe order.
    pub fn values(&self) -> Vec<f64> {
        (0..self.universe.len()).map(|i| self.value_at(i)).collect()
    }

    /// Largest truth value over the universe.
    pub fn sup(&self) -> f64 {
        (0..self.universe.len())
            .map(|i| self.value_at(i))
            .fold(0.0, f64::max)
    }

    /// Pointwise rescaling by `factor` in (0, 1]; yields a tabulated form.
    pub fn scaled(&self, factor: f64) -> Result<TruthFunction> {
        if !(factor > 0.0 && factor <= 1.0) {
            return Err(Error::InvalidArgument(format!("scale factor {factor} outside (0,1]")));
        }
        let values = self.values().iter().map(|v| v * factor).collect();
        TruthFunction::tabulated(self.universe.clone(), values)
    }

    pub(crate) fn check_universe(&self, prior: &Distribution) -> Result<()> {
        check_same_universe(&self.universe, prior.universe(), "truth function vs distribution")
    }
}

/// JSON shape: `{"universe": [...], "form": "...", "params": {...}}`.
///
/// `region` (believable) and `members` (crisp) accept either a bool per
/// universe point or a list of point ids.
impl<'de> Deserialize<'de> for TruthFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;

        #[derive(Deserialize)]
        #[serde(rename_all = "lowercase")]
        enum FormTag {
            Tabulated,
            Gaussian,
            #[serde(rename = "mvgaussian")]
            MvGaussian,
            Logistic,
            Believable,
            Crisp,
        }

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum SetSpec {
            Bools(Vec<bool>),
            Ids(Vec<String>),
        }

        #[derive(Default, Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Params {
            values: Option<Vec<f64>>,
            center: Option<f64>,
            sigma: Option<f64>,
            centers: Option<Vec<f64>>,
            sigmas: Option<Vec<f64>>,
            slope: Option<f64>,
            threshold: Option<f64>,
            region: Option<SetSpec>,
            disbelief: Option<f64>,
            members: Option<SetSpec>,
        }

        #[derive(Deserialize)]
        struct Raw {
            universe: Universe,
            form: FormTag,
            #[serde(default)]
            params: Params,
        }

        fn need<T, E: DeError>(v: Option<T>, name: &str) -> std::result::Result<T, E> {
            v.ok_or_else(|| E::custom(format!("missing parameter {name:?}")))
        }

        fn resolve_set<E: DeError>(
            spec: SetSpec,
            universe: &Universe,
            name: &str,
        ) -> std::result::Result<Vec<bool>, E> {
            match spec {
                SetSpec::Bools(b) => Ok(b),
                SetSpec::Ids(ids) => {
                    let mut out = vec![false; universe.len()];
                    for id in ids {
                        let i = universe
                            .index_of(&id)
                            .ok_or_else(|| E::custom(format!("unknown point {id:?} in {name}")))?;
                        out[i] = true;
                    }
                    Ok(out)
                }
            }
        }

        let raw = Raw::deserialize(d)?;
        let p = raw.params;
        let form = match raw.form {
            FormTag::Tabulated => TruthForm::Tabulated { values: need(p.values, "values")? },
            FormTag::Gaussian => TruthForm::Gaussian {
                center: need(p.center, "center")?,
                sigma: need(p.sigma, "sigma")?,
            },
            FormTag::MvGaussian => TruthForm::MvGaussian {
                centers: need(p.centers, "centers")?,
                sigmas: need(p.sigmas, "sigmas")?,
            },
            FormTag::Logistic => TruthForm::Logistic {
                slope: need(p.slope, "slope")?,
                threshold: need(p.threshold, "threshold")?,
            },
            FormTag::Believable => TruthForm::Believable {
                region: resolve_set(need(p.region, "region")?, &raw.universe, "region")?,
                disbelief: need(p.disbelief, "disbelief")?,
            },
            FormTag::Crisp => TruthForm::Crisp {
                members: resolve_set(need(p.members, "members")?, &raw.universe, "members")?,
            },
        };
        TruthFunction::new(raw.universe, form).map_err(DeError::custom)
    }
}

fn expect_len(universe: &Universe, what: &'static str, got: usize) -> Result<()> {
    if got == universe.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch { what, expected: universe.len(), got })
    }
}
