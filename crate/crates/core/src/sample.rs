use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A collection of positive lifetimes with a cached sorted copy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    values: Vec<f64>,
    sorted: Vec<f64>,
    label: String,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_label(values, String::new())
    }

    pub fn with_label(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, &v)| !(v > 0.0 && v.is_finite()))
        {
            return Err(Error::NonPositiveObservation { index, value });
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(Self {
            values,
            sorted,
            label: label.into(),
        })
    }

    /// Reads a CSV with a header row and a single column `t`.
    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_csv_str(&text, path.display().to_string())
    }

    pub fn from_csv_str(text: &str, label: impl Into<String>) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| Error::Parse(e.to_string()))?
            .clone();
        let column = headers
            .iter()
            .position(|h| h == "t")
            .ok_or_else(|| Error::Parse("missing header column `t`".into()))?;
        let mut values = Vec::new();
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            let field = record
                .get(column)
                .ok_or_else(|| Error::Parse(format!("row {}: missing field", row + 2)))?;
            let v: f64 = field
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: `{field}` is not a number", row + 2)))?;
            values.push(v);
        }
        Self::with_label(values, label)
    }

    /// Writes the values (in original order) as a one-column CSV.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("t\n");
        for v in &self.values {
            out.push_str(&format!("{v}\n"));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Nondecreasing copy of the values.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.sorted.len() - 1]
    }

    pub fn median(&self) -> f64 {
        let n = self.sorted.len();
        if n % 2 == 1 {
            self.sorted[n / 2]
        } else {
            0.5 * (self.sorted[n / 2 - 1] + self.sorted[n / 2])
        }
    }

    /// Every value multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::with_label(self.values.iter().map(|v| v * c).collect(), self.label.clone())
    }

    /// Concatenation of several samples, in order.
    pub fn pooled<'a>(parts: impl IntoIterator<Item = &'a Sample>) -> Result<Self> {
        let values: Vec<f64> = parts.into_iter().flat_map(|s| s.values.iter().copied()).collect();
        Self::with_label(values, "pooled")
    }
}
