//! Flat, serializable run records.
//!
//! Every run produces one [`Report`]. Counts are decimal strings, exact
//! fractions are `"p/q"` strings, absent fields are `null` in JSON and empty
//! in CSV. The field set and order are fixed so CSV logs stay appendable.

use std::fs::OpenOptions;
use std::path::Path;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::counting::{BoundReport, Census, SampleEstimate};
use crate::error::{Error, Result};

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub operation: String,
    pub d: Option<u32>,
    pub n: Option<u64>,
    pub seed: Option<u64>,
    pub kind: Option<String>,
    pub directed_count: Option<String>,
    pub total_simplices: Option<String>,
    pub sign_bits: Option<String>,
    pub fraction: Option<String>,
    pub samples: Option<u64>,
    pub estimate: Option<String>,
    pub standard_error: Option<f64>,
    pub s_d: Option<u64>,
    pub exact_upper: Option<String>,
    pub random_lower_fraction: Option<String>,
    pub product_limit_fraction: Option<String>,
    pub asymptotic_upper_fraction: Option<String>,
    pub series_fraction: Option<String>,
    pub compatible_pairs: Option<String>,
    pub max_count: Option<u64>,
    pub assignments_explored: Option<u64>,
    pub complete: Option<bool>,
    pub status: Option<String>,
    pub detail: Option<String>,
    pub output: Option<String>,
    pub wall_time_ms: Option<f64>,
}

impl Report {
    pub fn new(operation: impl Into<String>) -> Self {
        Self { operation: operation.into(), ..Default::default() }
    }

    pub fn shape(mut self, d: usize, n: usize) -> Self {
        self.d = Some(d as u32);
        self.n = Some(n as u64);
        self
    }

    pub fn census(mut self, c: &Census) -> Self {
        self = self.shape(c.d, c.n);
        self.directed_count = Some(c.directed.to_string());
        self.total_simplices = Some(c.total.to_string());
        self.fraction = Some(rational_string(&c.fraction()));
        self
    }

    pub fn sample(mut self, s: &SampleEstimate) -> Self {
        self.seed = Some(s.seed.0);
        self.samples = Some(s.samples);
        self.directed_count = Some(s.hits.to_string());
        self.estimate = Some(rational_string(&s.estimate()));
        self.standard_error = Some(s.standard_error());
        self
    }

    pub fn bounds(mut self, b: &BoundReport) -> Self {
        self = self.shape(b.d, b.n);
        self.s_d = Some(b.s_d);
        self.exact_upper = Some(b.exact_upper.to_string());
        self.total_simplices = Some(b.total_simplices.to_string());
        self.random_lower_fraction = Some(rational_string(&b.random_lower_fraction));
        self.product_limit_fraction = Some(rational_string(&b.product_limit_fraction));
        self.asymptotic_upper_fraction = Some(rational_string(&b.asymptotic_upper_fraction));
        self
    }

    pub fn big(value: &BigUint) -> Option<String> {
        Some(value.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Format(format!("report JSON: {e}")))
    }

    /// One CSV data row (no header).
    pub fn to_csv_row(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.serialize(self).map_err(csv_err)?;
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("utf-8"))
    }

    /// Appends a row to `path`, writing the header first if the file is new
    /// or empty.
    pub fn append_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let empty = file.metadata()?.len() == 0;
        let mut w = csv::WriterBuilder::new().has_headers(empty).from_writer(file);
        w.serialize(self).map_err(csv_err)?;
        w.flush()?;
        Ok(())
    }

    /// `key: value` lines for every present field.
    pub fn to_table(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                let s = match v {
                    serde_json::Value::Null => continue,
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                };
                out.push_str(&format!("{k:<26} {s}\n"));
            }
        }
        out
    }
}

/// Column names of the CSV form, in order.
pub fn csv_header() -> Vec<String> {
    let value = serde_json::to_value(Report::default()).expect("report serializes");
    match value {
        serde_json::Value::Object(map) => map.keys().cloned().collect(),
        _ => unreachable!(),
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Format(format!("csv: {e}"))
}
