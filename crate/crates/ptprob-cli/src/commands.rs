//! One function per subcommand. Each returns the fully rendered stdout
//! text, so nothing is printed until the whole computation has succeeded
//! (no partial writes on error).

use std::path::Path;

use serde_json::{json, Value};

use ptprob::confirm::{
    confirmation_report, raven_sensitivity, symmetry_check, ConfusionCounts, SensitivityMeasure,
};
use ptprob::fuzzy::compound_label_truth;
use ptprob::info::semantic_mutual_info;
use ptprob::learn::{
    empirical_distributions, fit_parametric_truth, truth_from_sampling, FitFamily, FitOptions,
    FitResult, FittedParams,
};
use ptprob::rate::{rd_curve, DistortionMatrix};
use ptprob::reason::{hypothesis_universe, Syllogism, SyllogismKind};
use ptprob::semantic::SemanticChannel;
use ptprob::thermo::entropy_info_relation;
use ptprob::{Distribution, TruthFunction, Universe};

use crate::load::{
    assemble_sample, load_channel, load_counts_csv, load_distribution, load_json,
    load_sample_csv, load_semantic_channel, load_thermo_system, load_universe, CliError,
    CliResult,
};
use crate::render::{
    fmt_num, json_output, num, num_list, opt_num, render_rows, OutputFormat, RunConfig,
};

fn universe_ids(u: &Universe) -> Vec<String> {
    u.points().iter().map(|p| p.id.clone()).collect()
}

fn universe_json(u: &Universe) -> Value {
    serde_json::to_value(u).expect("universe serialization cannot fail")
}

/// A column of point coordinates when the universe is a scalar grid.
fn coord_column(u: &Universe) -> Option<Vec<f64>> {
    if u.coord_dim() == Some(1) {
        Some((0..u.len()).map(|i| u.scalar(i).unwrap()).collect())
    } else {
        None
    }
}

// ---------------------------------------------------------------- info --

pub fn cmd_info(
    prior: &Path,
    truth: &Path,
    channel: Option<&Path>,
    cfg: &RunConfig,
) -> CliResult<String> {
    let prior = load_distribution(prior)?;
    let sc = load_semantic_channel(truth)?;
    match channel {
        Some(path) => {
            let channel = load_channel(path)?;
            let report = semantic_mutual_info(&sc, &prior, &channel)?;
            let ids = universe_ids(prior.universe());
            match cfg.format {
                OutputFormat::Json => Ok(json_output(json!({
                    "units": cfg.unit_name(),
                    "x_ids": ids,
                    "labels": report.labels,
                    "logical_probabilities": num_list(report.logical_probabilities),
                    "label_probabilities": num_list(report.label_probabilities),
                    "avg_info": num_list(report.avg_info.iter().map(|&v| cfg.from_bits(v))),
                    "point_info": report.point_info.iter()
                        .map(|row| num_list(row.iter().map(|&v| cfg.from_bits(v))))
                        .collect::<Vec<_>>(),
                    "mutual_info": num(cfg.from_bits(report.mutual_info)),
                    "shannon_mutual_info": num(cfg.from_bits(report.shannon_mutual_info)),
                }))),
                format => {
                    let comments = vec![
                        ("units".to_string(), cfg.unit_name().to_string()),
                        (
                            "mutual_info".to_string(),
                            fmt_num(cfg.from_bits(report.mutual_info)),
                        ),
                        (
                            "shannon_mutual_info".to_string(),
                            fmt_num(cfg.from_bits(report.shannon_mutual_info)),
                        ),
                    ];
                    let mut rows = Vec::new();
                    for (j, label) in report.labels.iter().enumerate() {
                        for (i, id) in ids.iter().enumerate() {
                            rows.push(vec![
                                label.clone(),
                                fmt_num(report.logical_probabilities[j]),
                                fmt_num(report.label_probabilities[j]),
                                fmt_num(cfg.from_bits(report.avg_info[j])),
                                id.clone(),
                                fmt_num(cfg.from_bits(report.point_info[j][i])),
                            ]);
                        }
                    }
                    let headers = [
                        "label",
                        "logical_probability",
                        "label_probability",
                        "avg_info",
                        "x_id",
                        "point_info",
                    ];
                    Ok(render_rows(format, &comments, &headers, &rows))
                }
            }
        }
        None => {
            // Without a sampling channel only the logical probabilities and
            // per-point information values are defined.
            let logical = sc.logical_probabilities(&prior)?;
            let ids = universe_ids(prior.universe());
            let point_info: Vec<Vec<f64>> = sc
                .truths()
                .iter()
                .map(|t| {
                    (0..ids.len())
                        .map(|i| ptprob::info::semantic_info_point(t, &prior, i))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            match cfg.format {
                OutputFormat::Json => Ok(json_output(json!({
                    "units": cfg.unit_name(),
                    "x_ids": ids,
                    "labels": sc.labels(),
                    "logical_probabilities": num_list(logical),
                    "point_info": point_info.iter()
                        .map(|row| num_list(row.iter().map(|&v| cfg.from_bits(v))))
                        .collect::<Vec<_>>(),
                }))),
                format => {
                    let comments =
                        vec![("units".to_string(), cfg.unit_name().to_string())];
                    let mut rows = Vec::new();
                    for (j, label) in sc.labels().iter().enumerate() {
                        for (i, id) in ids.iter().enumerate() {
                            rows.push(vec![
                                label.clone(),
                                fmt_num(logical[j]),
                                id.clone(),
                                fmt_num(cfg.from_bits(point_info[j][i])),
                            ]);
                        }
                    }
                    let headers = ["label", "logical_probability", "x_id", "point_info"];
                    Ok(render_rows(format, &comments, &headers, &rows))
                }
            }
        }
    }
}

// --------------------------------------------------------------- learn --

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyArg {
    Logistic,
    Gaussian,
}

pub struct LearnOpts<'a> {
    pub sample: &'a Path,
    pub universe: Option<&'a Path>,
    pub family: Option<FamilyArg>,
    pub bounds: Option<&'a str>,
    pub labels: Option<&'a str>,
    pub grid: Option<usize>,
    pub uniform_prior: bool,
    pub gradient: bool,
}

fn parse_bounds(text: &str) -> CliResult<[f64; 4]> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("bounds {text:?} must be four numbers lo1,hi1,lo2,hi2")))?;
    if parts.len() != 4 {
        return Err(CliError::Input(format!(
            "bounds {text:?}: expected four numbers, got {}",
            parts.len()
        )));
    }
    Ok([parts[0], parts[1], parts[2], parts[3]])
}

/// Default parameter boxes derived from the coordinate range: thresholds
/// and centers live inside the data, slopes get a generous fixed box, and
/// sigmas range from one grid step to the full span.
fn default_bounds(family: FamilyArg, universe: &Universe) -> CliResult<[f64; 4]> {
    universe.require_coords(1).map_err(|_| {
        CliError::Input(
            "parametric fitting needs scalar coordinates; pass --universe with coords".into(),
        )
    })?;
    let xs: Vec<f64> = (0..universe.len()).map(|i| universe.scalar(i).unwrap()).collect();
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    if !(span > 0.0) {
        return Err(CliError::Input(
            "coordinate span is zero; pass --bounds explicitly".into(),
        ));
    }
    Ok(match family {
        FamilyArg::Logistic => [0.01, 10.0, lo, hi],
        FamilyArg::Gaussian => [lo, hi, span / universe.len() as f64, span],
    })
}

fn build_family(family: FamilyArg, b: [f64; 4]) -> FitFamily {
    match family {
        FamilyArg::Logistic => FitFamily::Logistic { slope: (b[0], b[1]), threshold: (b[2], b[3]) },
        FamilyArg::Gaussian => FitFamily::Gaussian { center: (b[0], b[1]), sigma: (b[2], b[3]) },
    }
}

fn fit_json(fit: &FitResult, cfg: &RunConfig) -> Value {
    let params = match fit.params {
        FittedParams::Gaussian { center, sigma } => {
            json!({"center": num(center), "sigma": num(sigma)})
        }
        FittedParams::Logistic { slope, threshold } => {
            json!({"slope": num(slope), "threshold": num(threshold)})
        }
    };
    json!({
        "family": fit.family,
        "params": params,
        "objective": num(cfg.from_bits(fit.objective_bits)),
        "iterations": fit.iterations,
        "prior_assumed_uniform": fit.prior_assumed_uniform,
        "warnings": fit.warnings,
    })
}

fn fit_comment(label: &str, fit: &FitResult, cfg: &RunConfig) -> (String, String) {
    let [p0, p1] = fit.params.raw();
    let names = match fit.params {
        FittedParams::Gaussian { .. } => ("center", "sigma"),
        FittedParams::Logistic { .. } => ("slope", "threshold"),
    };
    (
        format!("fit {label}"),
        format!(
            "family={} {}={} {}={} objective={}",
            fit.family,
            names.0,
            fmt_num(p0),
            names.1,
            fmt_num(p1),
            fmt_num(cfg.from_bits(fit.objective_bits))
        ),
    )
}

pub fn cmd_learn(opts: &LearnOpts, cfg: &RunConfig) -> CliResult<String> {
    let rows = load_sample_csv(opts.sample)?;
    let universe = opts.universe.map(load_universe).transpose()?;
    let sample = assemble_sample(&rows, universe)?;
    let empirical = empirical_distributions(&sample)?;

    let requested: Vec<String> = match opts.labels {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => sample.labels().to_vec(),
    };
    for label in &requested {
        if !sample.labels().contains(label) {
            return Err(CliError::Input(format!("label {label:?} has no examples")));
        }
    }

    let family = match opts.family {
        Some(f) => {
            let bounds = match opts.bounds {
                Some(text) => parse_bounds(text)?,
                None => default_bounds(f, empirical.prior.universe())?,
            };
            Some(build_family(f, bounds))
        }
        None => {
            if opts.bounds.is_some() {
                return Err(CliError::Input("--bounds requires --family".into()));
            }
            None
        }
    };
    let mut options = FitOptions::default();
    if let Some(grid) = opts.grid {
        options.grid = grid;
    }
    options.assume_uniform_prior = opts.uniform_prior;
    options.use_gradient = opts.gradient;

    // One truth function per requested label: a parametric fit when a
    // family is given, otherwise the induced (tabulated) truth function.
    let mut fits: Vec<Option<FitResult>> = Vec::new();
    let mut truths: Vec<TruthFunction> = Vec::new();
    for label in &requested {
        let j = sample.labels().iter().position(|l| l == label).unwrap();
        let sampling = &empirical.posteriors[j];
        match &family {
            Some(fam) => {
                let fit = fit_parametric_truth(sampling, &empirical.prior, *fam, options)?;
                let u = empirical.prior.universe().clone();
                let truth = match fit.params {
                    FittedParams::Gaussian { center, sigma } => {
                        TruthFunction::gaussian(u, center, sigma)?
                    }
                    FittedParams::Logistic { slope, threshold } => {
                        TruthFunction::logistic(u, slope, threshold)?
                    }
                };
                truths.push(truth);
                fits.push(Some(fit));
            }
            None => {
                truths.push(truth_from_sampling(sampling, &empirical.prior)?);
                fits.push(None);
            }
        }
    }

    let sub = empirical.prior.universe();
    let ids = universe_ids(sub);
    let coords = coord_column(sub);
    match cfg.format {
        OutputFormat::Json => Ok(json_output(json!({
            "universe": universe_json(sub),
            "prior_mass": num_list(empirical.prior.mass().iter().copied()),
            "labels": requested,
            "fits": fits.iter()
                .map(|f| f.as_ref().map(|fit| fit_json(fit, cfg)).unwrap_or(Value::Null))
                .collect::<Vec<_>>(),
            "truth_values": truths.iter()
                .map(|t| num_list(t.values()))
                .collect::<Vec<_>>(),
        }))),
        format => {
            let mut comments = Vec::new();
            for (label, fit) in requested.iter().zip(&fits) {
                match fit {
                    Some(fit) => comments.push(fit_comment(label, fit, cfg)),
                    None => comments.push((format!("fit {label}"), "family=tabulated".into())),
                }
            }
            let mut headers: Vec<&str> = vec!["x_id"];
            if coords.is_some() {
                headers.push("coord");
            }
            for label in &requested {
                headers.push(label.as_str());
            }
            let mut table = Vec::new();
            for i in 0..ids.len() {
                let mut row = vec![ids[i].clone()];
                if let Some(cs) = &coords {
                    row.push(fmt_num(cs[i]));
                }
                for t in &truths {
                    row.push(fmt_num(t.value_at(i)));
                }
                table.push(row);
            }
            Ok(render_rows(format, &comments, &headers, &table))
        }
    }
}

// ------------------------------------------------------------- confirm --

pub fn resolve_counts(
    a: Option<u64>,
    b: Option<u64>,
    c: Option<u64>,
    d: Option<u64>,
    counts: Option<&Path>,
) -> CliResult<ConfusionCounts> {
    match (a, b, c, d, counts) {
        (None, None, None, None, Some(path)) => {
            let [a, b, c, d] = load_counts_csv(path)?;
            Ok(ConfusionCounts::new(a, b, c, d))
        }
        (Some(a), Some(b), Some(c), Some(d), None) => Ok(ConfusionCounts::new(a, b, c, d)),
        _ => Err(CliError::Input(
            "pass all of --a --b --c --d, or --counts FILE, but not both".into(),
        )),
    }
}

pub fn cmd_confirm(counts: ConfusionCounts, strict: bool, cfg: &RunConfig) -> CliResult<String> {
    let report = confirmation_report(counts);
    let symmetry = symmetry_check(counts).ok();
    let mut undefined = report.undefined.clone();
    if symmetry.is_none() {
        undefined.push("symmetry".to_string());
    }
    if strict && !undefined.is_empty() {
        return Err(CliError::Input(format!(
            "undefined measures for counts ({},{},{},{}): {}",
            counts.a,
            counts.b,
            counts.c,
            counts.d,
            undefined.join(", ")
        )));
    }

    match cfg.format {
        OutputFormat::Json => Ok(json_output(json!({
            "counts": {"a": counts.a, "b": counts.b, "c": counts.c, "d": counts.d},
            "lr_plus": opt_num(report.lr_plus),
            "lr_minus": opt_num(report.lr_minus),
            "f1": opt_num(report.f1),
            "f0": opt_num(report.f0),
            "b1_star": opt_num(report.b1_star),
            "b0_star": opt_num(report.b0_star),
            "c1_star": opt_num(report.c1_star),
            "c0_star": opt_num(report.c0_star),
            "cr1": opt_num(report.cr1),
            "cr0": opt_num(report.cr0),
            "symmetry": symmetry.map(|s| json!({
                "b_residual": num(s.b_residual),
                "c_residual": num(s.c_residual),
                "within_tolerance": s.b_residual.abs() <= cfg.tolerance
                    && s.c_residual.abs() <= cfg.tolerance,
            })).unwrap_or(Value::Null),
            "undefined": undefined,
        }))),
        format => {
            let cell = |v: Option<f64>| v.map(fmt_num).unwrap_or_else(|| "undefined".into());
            let mut rows = vec![
                vec!["lr_plus".into(), cell(report.lr_plus)],
                vec!["lr_minus".into(), cell(report.lr_minus)],
                vec!["f1".into(), cell(report.f1)],
                vec!["f0".into(), cell(report.f0)],
                vec!["b1_star".into(), cell(report.b1_star)],
                vec!["b0_star".into(), cell(report.b0_star)],
                vec!["c1_star".into(), cell(report.c1_star)],
                vec!["c0_star".into(), cell(report.c0_star)],
                vec!["cr1".into(), cell(report.cr1)],
                vec!["cr0".into(), cell(report.cr0)],
            ];
            match &symmetry {
                Some(s) => {
                    rows.push(vec!["b_symmetry_residual".into(), fmt_num(s.b_residual)]);
                    rows.push(vec!["c_symmetry_residual".into(), fmt_num(s.c_residual)]);
                }
                None => {
                    rows.push(vec!["b_symmetry_residual".into(), "undefined".into()]);
                    rows.push(vec!["c_symmetry_residual".into(), "undefined".into()]);
                }
            }
            let comments = vec![(
                "counts".to_string(),
                format!("a={} b={} c={} d={}", counts.a, counts.b, counts.c, counts.d),
            )];
            Ok(render_rows(format, &comments, &["measure", "value"], &rows))
        }
    }
}

// --------------------------------------------------------------- raven --

pub fn parse_measures(text: Option<&str>) -> CliResult<Vec<SensitivityMeasure>> {
    let all = [
        SensitivityMeasure::F,
        SensitivityMeasure::BStar,
        SensitivityMeasure::CStar,
        SensitivityMeasure::LrPlus,
    ];
    match text {
        None => Ok(all.to_vec()),
        Some(list) => list
            .split(',')
            .map(|raw| match raw.trim().to_ascii_lowercase().as_str() {
                "f" => Ok(SensitivityMeasure::F),
                "b" | "b*" | "bstar" => Ok(SensitivityMeasure::BStar),
                "c" | "c*" | "cstar" => Ok(SensitivityMeasure::CStar),
                "lr" | "lr+" | "lrplus" => Ok(SensitivityMeasure::LrPlus),
                other => Err(CliError::Input(format!(
                    "unknown measure {other:?}; choose from f, b, c, lr"
                ))),
            })
            .collect(),
    }
}

pub fn cmd_raven(
    counts: ConfusionCounts,
    measures: &[SensitivityMeasure],
    cfg: &RunConfig,
) -> CliResult<String> {
    let rows = raven_sensitivity(counts, measures)?;
    match cfg.format {
        OutputFormat::Json => Ok(json_output(Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "measure": r.measure,
                        "delta_a": num(r.delta_a),
                        "delta_d": num(r.delta_d),
                        "ignores_d": r.delta_d == 0.0,
                        "favors_positive_example": r.favors_positive_example,
                    })
                })
                .collect(),
        ))),
        format => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.measure.to_string(),
                        fmt_num(r.delta_a),
                        fmt_num(r.delta_d),
                        (r.delta_d == 0.0).to_string(),
                        r.favors_positive_example.to_string(),
                    ]
                })
                .collect();
            let comments = vec![(
                "counts".to_string(),
                format!("a={} b={} c={} d={}", counts.a, counts.b, counts.c, counts.d),
            )];
            let headers =
                ["measure", "delta_a", "delta_d", "ignores_d", "favors_positive_example"];
            Ok(render_rows(format, &comments, &headers, &table))
        }
    }
}

// ---------------------------------------------------------------- rate --

pub fn parse_s_grid(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("s value {:?} is not a number", s.trim())))
        })
        .collect()
}

pub fn cmd_rate(
    prior: &Path,
    distortion: &Path,
    s_grid: &str,
    cfg: &RunConfig,
) -> CliResult<String> {
    let prior = load_distribution(prior)?;
    let d: DistortionMatrix = load_json(distortion, "distortion")?;
    let s = parse_s_grid(s_grid)?;
    let curve = rd_curve(&prior, &d, &s)?;
    match cfg.format {
        OutputFormat::Json => Ok(json_output(json!({
            "units": cfg.unit_name(),
            "points": curve.iter().map(|pt| json!({
                "s": num(pt.s),
                "distortion": num(pt.distortion),
                "rate": num(cfg.from_bits(pt.rate_bits)),
                "sweeps": pt.sweeps,
                "pruned": pt.pruned,
                "reproduction_labels": universe_ids(pt.reproduction_prior.universe()),
                "reproduction_prior": num_list(pt.reproduction_prior.mass().iter().copied()),
            })).collect::<Vec<_>>(),
        }))),
        format => {
            let comments = vec![("units".to_string(), cfg.unit_name().to_string())];
            let rows: Vec<Vec<String>> = curve
                .iter()
                .map(|pt| {
                    vec![
                        fmt_num(pt.s),
                        fmt_num(pt.distortion),
                        fmt_num(cfg.from_bits(pt.rate_bits)),
                        pt.sweeps.to_string(),
                        pt.pruned.join(";"),
                    ]
                })
                .collect();
            Ok(render_rows(format, &comments, &["s", "distortion", "rate", "sweeps", "pruned"], &rows))
        }
    }
}

// -------------------------------------------------------------- thermo --

pub fn cmd_thermo(system: &Path, cfg: &RunConfig) -> CliResult<String> {
    let system = load_thermo_system(system)?;
    let relation = entropy_info_relation(&system)?;
    match cfg.format {
        OutputFormat::Json => Ok(json_output(json!({
            "units": cfg.unit_name(),
            "info": num(cfg.from_nats(relation.info_nats)),
            "entropy_side": num(cfg.from_nats(relation.entropy_side_nats)),
            "residual": num(cfg.from_nats(relation.residual)),
            "entropy": num(relation.entropy),
            "total_particles": num(relation.total_particles),
            "log_total_states": num(cfg.from_nats(relation.ln_total_states)),
        }))),
        format => {
            let rows = vec![
                vec!["info".into(), fmt_num(cfg.from_nats(relation.info_nats))],
                vec!["entropy_side".into(), fmt_num(cfg.from_nats(relation.entropy_side_nats))],
                vec!["residual".into(), fmt_num(cfg.from_nats(relation.residual))],
                vec!["entropy".into(), fmt_num(relation.entropy)],
                vec!["total_particles".into(), fmt_num(relation.total_particles)],
                vec!["log_total_states".into(), fmt_num(cfg.from_nats(relation.ln_total_states))],
            ];
            let comments = vec![("units".to_string(), cfg.unit_name().to_string())];
            Ok(render_rows(format, &comments, &["quantity", "value"], &rows))
        }
    }
}

// -------------------------------------------------------------- reason --

pub struct ReasonOpts<'a> {
    pub spec: Option<&'a Path>,
    pub kind: Option<SyllogismKindArg>,
    pub degree: Option<f64>,
    pub hypothesis_prior: Option<&'a str>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SyllogismKindArg {
    Channel,
    Prediction,
}

fn parse_hypothesis_prior(text: &str) -> CliResult<Distribution> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            CliError::Input(format!("hypothesis prior {text:?} must be two numbers p0,p1"))
        })?;
    if parts.len() != 2 {
        return Err(CliError::Input(format!(
            "hypothesis prior {text:?}: expected two numbers, got {}",
            parts.len()
        )));
    }
    Ok(Distribution::new(hypothesis_universe(), parts)?)
}

pub fn cmd_reason(opts: &ReasonOpts, cfg: &RunConfig) -> CliResult<String> {
    let syllogism: Syllogism = match (opts.spec, opts.kind, opts.degree) {
        (Some(path), None, None) => load_json(path, "syllogism spec")?,
        (None, Some(kind), Some(degree)) => {
            let kind = match kind {
                SyllogismKindArg::Channel => SyllogismKind::Channel,
                SyllogismKindArg::Prediction => SyllogismKind::Prediction,
            };
            let hypothesis_prior =
                opts.hypothesis_prior.map(parse_hypothesis_prior).transpose()?;
            Syllogism { kind, degree, hypothesis_prior }
        }
        _ => {
            return Err(CliError::Input(
                "pass --spec FILE, or both --kind and --degree".into(),
            ))
        }
    };
    let consequence = syllogism.conclude()?;
    let ids = universe_ids(consequence.universe());
    match cfg.format {
        OutputFormat::Json => Ok(json_output(json!({
            "kind": match syllogism.kind {
                SyllogismKind::Channel => "channel",
                SyllogismKind::Prediction => "prediction",
            },
            "degree": num(syllogism.degree),
            "hypotheses": ids,
            "consequence": num_list(consequence.mass().iter().copied()),
        }))),
        format => {
            let comments = vec![(
                "syllogism".to_string(),
                format!(
                    "kind={} degree={}",
                    match syllogism.kind {
                        SyllogismKind::Channel => "channel",
                        SyllogismKind::Prediction => "prediction",
                    },
                    fmt_num(syllogism.degree)
                ),
            )];
            let rows: Vec<Vec<String>> = ids
                .iter()
                .enumerate()
                .map(|(i, id)| vec![id.clone(), fmt_num(consequence.get(i))])
                .collect();
            Ok(render_rows(format, &comments, &["hypothesis", "probability"], &rows))
        }
    }
}

// --------------------------------------------------------------- fuzzy --

pub fn cmd_fuzzy(expression: &str, atomics: &Path, cfg: &RunConfig) -> CliResult<String> {
    let sc: SemanticChannel = load_semantic_channel(atomics)?;
    let pairs: Vec<(&str, &TruthFunction)> = sc
        .labels()
        .iter()
        .map(|l| l.as_str())
        .zip(sc.truths())
        .collect();
    let truth = compound_label_truth(&pairs, expression)?;
    let ids = universe_ids(truth.universe());
    let coords = coord_column(truth.universe());
    match cfg.format {
        OutputFormat::Json => Ok(json_output(json!({
            "expression": expression,
            "x_ids": ids,
            "values": num_list(truth.values()),
        }))),
        format => {
            let comments = vec![("expression".to_string(), expression.to_string())];
            let mut headers = vec!["x_id"];
            if coords.is_some() {
                headers.push("coord");
            }
            headers.push("truth");
            let rows: Vec<Vec<String>> = (0..ids.len())
                .map(|i| {
                    let mut row = vec![ids[i].clone()];
                    if let Some(cs) = &coords {
                        row.push(fmt_num(cs[i]));
                    }
                    row.push(fmt_num(truth.value_at(i)));
                    row
                })
                .collect();
            Ok(render_rows(format, &comments, &headers, &rows))
        }
    }
}
