//! CSV ingestion: one numeric value column plus one group-label column,
//! labels dense-mapped in first-appearance order.

use crate::column::MAX_GROUPS;
use crate::error::{Error, Result};
use std::io::Read;
use std::path::Path;

/// Rows plus the label dictionary (index = dense group id).
#[derive(Clone, Debug)]
pub struct CsvColumn {
    pub rows: Vec<(f64, u8)>,
    pub labels: Vec<String>,
}

/// Reads a headered, comma-separated, UTF-8 file.
pub fn read_csv(path: &Path, value_col: &str, group_col: &str) -> Result<CsvColumn> {
    let file = std::fs::File::open(path)?;
    read_csv_from(file, value_col, group_col, None)
}

/// As [`read_csv`], with an optional preset label list; labels outside it
/// are rejected, and preset labels that never appear are an error.
pub fn read_csv_from(
    reader: impl Read,
    value_col: &str,
    group_col: &str,
    preset_labels: Option<&[String]>,
) -> Result<CsvColumn> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let find = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn { name: name.into() })
    };
    let value_idx = find(value_col)?;
    let group_idx = find(group_col)?;

    let mut labels: Vec<String> = preset_labels.map(|l| l.to_vec()).unwrap_or_default();
    let preset = preset_labels.is_some();
    let mut seen = vec![false; labels.len()];
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let row = i + 2; // 1-based, counting the header line
        let raw_value = record.get(value_idx).unwrap_or("");
        let value: f64 = raw_value.trim().parse().map_err(|_| Error::ParseError {
            row,
            column: value_col.into(),
            message: format!("`{raw_value}` is not a number"),
        })?;
        if !value.is_finite() {
            return Err(Error::ParseError {
                row,
                column: value_col.into(),
                message: format!("`{raw_value}` is not finite"),
            });
        }
        let label = record.get(group_idx).unwrap_or("").trim().to_string();
        let id = match labels.iter().position(|l| *l == label) {
            Some(id) => id,
            None if preset => {
                return Err(Error::ParseError {
                    row,
                    column: group_col.into(),
                    message: format!("unknown group label `{label}`"),
                })
            }
            None => {
                if labels.len() == MAX_GROUPS {
                    return Err(Error::TooManyGroups {
                        ell: labels.len() + 1,
                        max: MAX_GROUPS,
                    });
                }
                labels.push(label);
                seen.push(false);
                labels.len() - 1
            }
        };
        seen[id] = true;
        rows.push((value, id as u8));
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(id) = seen.iter().position(|&s| !s) {
        return Err(Error::EmptyGroup {
            group: labels[id].clone(),
        });
    }
    Ok(CsvColumn { rows, labels })
}
