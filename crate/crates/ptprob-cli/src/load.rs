//! File ingestion. Every loader validates fully before returning, and
//! error messages name the file and the offending field so that exit-code-2
//! failures are actionable.

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use ptprob::learn::LabeledSample;
use ptprob::semantic::SemanticChannel;
use ptprob::thermo::ThermoSystem;
use ptprob::{Distribution, ShannonChannel, TruthFunction, Universe};

/// CLI-level error carrying the exit code: input problems exit 2,
/// numerical failures (non-convergence, identity violations) exit 3.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Numerical(m) => write!(f, "{m}"),
        }
    }
}

impl From<ptprob::Error> for CliError {
    fn from(e: ptprob::Error) -> Self {
        match e {
            ptprob::Error::NoConvergence { .. } | ptprob::Error::IdentityViolation { .. } => {
                CliError::Numerical(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: DeserializeOwned>(path: &Path, what: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("{what} file {}: {e}", path.display())))
}

pub fn load_json<T: DeserializeOwned>(path: &Path, what: &str) -> CliResult<T> {
    parse_json(path, what, &read_file(path)?)
}

pub fn load_distribution(path: &Path) -> CliResult<Distribution> {
    load_json(path, "distribution")
}

pub fn load_universe(path: &Path) -> CliResult<Universe> {
    load_json(path, "universe")
}

pub fn load_channel(path: &Path) -> CliResult<ShannonChannel> {
    load_json(path, "channel")
}

pub fn load_thermo_system(path: &Path) -> CliResult<ThermoSystem> {
    let system: ThermoSystem = load_json(path, "system")?;
    system
        .validate()
        .map_err(|e| CliError::Input(format!("system file {}: {e}", path.display())))?;
    Ok(system)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SemanticChannelFile {
    labels: Vec<String>,
    truths: Vec<TruthFunction>,
}

/// A truth file holds either `{"labels": [...], "truths": [...]}` or a
/// single truth function object; a single truth gets the label "truth".
pub fn load_semantic_channel(path: &Path) -> CliResult<SemanticChannel> {
    let text = read_file(path)?;
    if let Ok(file) = serde_json::from_str::<SemanticChannelFile>(&text) {
        return SemanticChannel::new(file.labels, file.truths)
            .map_err(|e| CliError::Input(format!("truth file {}: {e}", path.display())));
    }
    let single: TruthFunction = parse_json(path, "truth", &text)?;
    SemanticChannel::new(vec!["truth"], vec![single])
        .map_err(|e| CliError::Input(format!("truth file {}: {e}", path.display())))
}

/// A 2x2 counts CSV: two rows of two nonnegative integers, `a,b` then
/// `c,d`, no header.
pub fn load_counts_csv(path: &Path) -> CliResult<[u64; 4]> {
    let text = read_file(path)?;
    let mut cells = Vec::new();
    for (line_no, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        for field in line.split(',') {
            let v: u64 = field.trim().parse().map_err(|_| {
                CliError::Input(format!(
                    "counts file {}, line {}: {:?} is not a nonnegative integer",
                    path.display(),
                    line_no + 1,
                    field.trim()
                ))
            })?;
            cells.push(v);
        }
    }
    if cells.len() != 4 {
        return Err(CliError::Input(format!(
            "counts file {}: expected a 2x2 table, found {} values",
            path.display(),
            cells.len()
        )));
    }
    Ok([cells[0], cells[1], cells[2], cells[3]])
}

/// One parsed sample row: instance id, label, multiplicity.
#[derive(Debug)]
pub struct SampleRow {
    pub x_id: String,
    pub label: String,
    pub count: u64,
}

/// Samples arrive as CSV with header `x_id,label` and an optional third
/// `count` column (default 1) for pre-aggregated data.
pub fn load_sample_csv(path: &Path) -> CliResult<Vec<SampleRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("sample file {}: {e}", path.display())))?
        .clone();
    let cols: Vec<&str> = headers.iter().collect();
    let with_count = match cols.as_slice() {
        ["x_id", "label"] => false,
        ["x_id", "label", "count"] => true,
        other => {
            return Err(CliError::Input(format!(
                "sample file {}: header must be x_id,label[,count], got {:?}",
                path.display(),
                other.join(",")
            )))
        }
    };
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record =
            record.map_err(|e| CliError::Input(format!("sample file {}: {e}", path.display())))?;
        let line = i + 2;
        let x_id = record
            .get(0)
            .filter(|s| !s.is_empty())
            .ok_or_else(|| {
                CliError::Input(format!(
                    "sample file {}, line {line}: empty x_id",
                    path.display()
                ))
            })?
            .to_string();
        let label = record
            .get(1)
            .filter(|s| !s.is_empty())
            .ok_or_else(|| {
                CliError::Input(format!(
                    "sample file {}, line {line}: empty label",
                    path.display()
                ))
            })?
            .to_string();
        let count = if with_count {
            record
                .get(2)
                .and_then(|s| s.parse::<u64>().ok())
                .ok_or_else(|| {
                    CliError::Input(format!(
                        "sample file {}, line {line}: count must be a nonnegative integer",
                        path.display()
                    ))
                })?
        } else {
            1
        };
        rows.push(SampleRow { x_id, label, count });
    }
    Ok(rows)
}

/// Guard against accidental memory blowups from huge `count` columns.
const MAX_EXAMPLES: u64 = 10_000_000;

/// Assemble a labelled sample: the universe is either the provided one or
/// a symbolic universe over the distinct ids in first-appearance order;
/// the label set is the distinct labels with at least one example, also in
/// first-appearance order.
pub fn assemble_sample(
    rows: &[SampleRow],
    universe: Option<Universe>,
) -> CliResult<LabeledSample> {
    let universe = match universe {
        Some(u) => u,
        None => {
            let mut ids: Vec<&str> = Vec::new();
            for row in rows {
                if !ids.contains(&row.x_id.as_str()) {
                    ids.push(&row.x_id);
                }
            }
            Universe::labeled(&ids)?
        }
    };
    let mut labels: Vec<String> = Vec::new();
    for row in rows {
        if row.count > 0 && !labels.contains(&row.label) {
            labels.push(row.label.clone());
        }
    }
    let total: u64 = rows.iter().map(|r| r.count).sum();
    if total > MAX_EXAMPLES {
        return Err(CliError::Input(format!(
            "sample has {total} examples after expanding counts; the limit is {MAX_EXAMPLES}"
        )));
    }
    let mut examples = Vec::with_capacity(total as usize);
    for row in rows {
        if row.count == 0 {
            continue;
        }
        let i = universe.index_of(&row.x_id).ok_or_else(|| {
            CliError::Input(format!("sample id {:?} is not in the universe", row.x_id))
        })?;
        let j = labels.iter().position(|l| l == &row.label).unwrap();
        examples.extend(std::iter::repeat((i, j)).take(row.count as usize));
    }
    Ok(LabeledSample::new(universe, labels, examples)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn temp_file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn counts_csv_happy_path() {
        let f = temp_file("6,2\n1,11\n");
        assert_eq!(load_counts_csv(f.path()).unwrap(), [6, 2, 1, 11]);
    }

    #[test]
    fn counts_csv_rejects_garbage() {
        let f = temp_file("6,2\n1,-11\n");
        assert!(matches!(load_counts_csv(f.path()), Err(CliError::Input(_))));
        let f = temp_file("6,2,3\n1,11\n");
        assert!(load_counts_csv(f.path()).is_err());
    }

    #[test]
    fn sample_csv_with_and_without_count() {
        let f = temp_file("x_id,label\np0,young\np1,old\np0,young\n");
        let rows = load_sample_csv(f.path()).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].count, 1);

        let f = temp_file("x_id,label,count\np0,young,5\np1,old,2\n");
        let rows = load_sample_csv(f.path()).unwrap();
        assert_eq!(rows[0].count, 5);
        let sample = assemble_sample(&rows, None).unwrap();
        assert_eq!(sample.len(), 7);
        assert_eq!(sample.labels(), ["young".to_string(), "old".to_string()]);
    }

    #[test]
    fn sample_csv_rejects_bad_header() {
        let f = temp_file("id,tag\np0,young\n");
        let err = load_sample_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("x_id,label"));
    }

    #[test]
    fn zero_count_labels_are_dropped() {
        let f = temp_file("x_id,label,count\np0,young,3\np1,ghost,0\n");
        let rows = load_sample_csv(f.path()).unwrap();
        let sample = assemble_sample(&rows, None).unwrap();
        assert_eq!(sample.labels(), ["young".to_string()]);
    }

    #[test]
    fn semantic_channel_file_accepts_single_truth() {
        let u = Universe::labeled(&["a", "b"]).unwrap();
        let t = TruthFunction::tabulated(u, vec![0.8, 0.2]).unwrap();
        let f = temp_file(&serde_json::to_string(&t).unwrap());
        let sc = load_semantic_channel(f.path()).unwrap();
        assert_eq!(sc.labels(), ["truth".to_string()]);
        assert_eq!(sc.truth(0).value_at(0), 0.8);
    }
}
