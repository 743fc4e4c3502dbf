//! Input payloads: CSV samples, JSON count tables and JSON joint distributions.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use miconf::{CountTable, JointDistribution};

use crate::CliError;

#[derive(Debug, Deserialize)]
struct CountsFile {
    mx: usize,
    my: usize,
    counts: Vec<Vec<u64>>,
}

#[derive(Debug, Deserialize)]
struct JointFile {
    mx: usize,
    my: usize,
    probs: Vec<Vec<f64>>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn check_matrix<T>(rows: &[Vec<T>], mx: usize, my: usize, path: &Path) -> Result<(), CliError> {
    if rows.len() != mx {
        return Err(CliError::Input(format!(
            "{}: declared mx = {mx} but matrix has {} rows",
            path.display(),
            rows.len()
        )));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != my) {
        return Err(CliError::Input(format!(
            "{}: declared my = {my} but row {} has {} entries",
            path.display(),
            i + 1,
            row.len()
        )));
    }
    Ok(())
}

/// `{"mx": .., "my": .., "counts": [[..], ..]}`, row-major.
pub fn read_counts(path: &Path) -> Result<CountTable, CliError> {
    let file: CountsFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: malformed counts JSON: {e}", path.display())))?;
    check_matrix(&file.counts, file.mx, file.my, path)?;
    CountTable::new(file.mx, file.my, file.counts.concat()).map_err(CliError::from)
}

/// `{"mx": .., "my": .., "probs": [[..], ..]}`, row-major.
pub fn read_joint(path: &Path) -> Result<JointDistribution, CliError> {
    let file: JointFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: malformed joint JSON: {e}", path.display())))?;
    check_matrix(&file.probs, file.mx, file.my, path)?;
    JointDistribution::new(file.mx, file.my, file.probs.concat()).map_err(CliError::from)
}

/// Two comma-separated columns of 1-based labels; a non-numeric first row is a header.
pub fn read_samples(path: &Path, mx: usize, my: usize) -> Result<CountTable, CliError> {
    let text = read(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut pairs = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record =
            record.map_err(|e| CliError::Input(format!("{}: row {}: {e}", path.display(), row + 1)))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed = (record.len() == 2)
            .then(|| Some((record[0].parse::<usize>().ok()?, record[1].parse::<usize>().ok()?)))
            .flatten();
        match parsed {
            Some(pair) => pairs.push(pair),
            None if row == 0 => continue,
            None => {
                return Err(CliError::Input(format!(
                    "{}: row {}: expected two positive integer labels, got {:?}",
                    path.display(),
                    row + 1,
                    record.iter().collect::<Vec<_>>()
                )))
            }
        }
    }
    CountTable::from_samples(&pairs, mx, my).map_err(CliError::from)
}
