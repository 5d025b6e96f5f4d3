//! Comparison reports and their text, JSON and CSV renderings.
//!
//! Every number is written in its shortest round-trip form (the same digits
//! `serde_json` emits), so each format parses back to the same bits and all
//! three carry the same digits.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::engine::BranchPrescription;

/// Shortest decimal that parses back to `x`, in exponent form outside
/// `[1e-5, 1e16)`.
pub fn number(x: f64) -> String {
    format!("{x:?}")
}

/// A complex number as `{"re": …, "im": …}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl std::fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{} - {}i", number(self.re), number(-self.im))
        } else {
            write!(f, "{} + {}i", number(self.re), number(self.im))
        }
    }
}

/// Milliseconds spent in each method.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WallTimes {
    pub ndim: Option<f64>,
    pub residue: Option<f64>,
    pub quadrature: Option<f64>,
}

/// The three evaluations of one integral. Methods that were not run are
/// `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub integrand: String,
    pub r: u32,
    pub s: i32,
    pub a: f64,
    pub sigma: f64,
    pub branch: BranchPrescription,
    pub ndim_value: Option<ComplexValue>,
    pub ndim_exact_form: Option<String>,
    pub residue_value: Option<ComplexValue>,
    pub quadrature_value: Option<ComplexValue>,
    pub quadrature_error_estimate: Option<f64>,
    pub max_pairwise_deviation: Option<f64>,
    pub wall_times_ms: WallTimes,
}

impl ComparisonReport {
    pub fn values(&self) -> Vec<Complex64> {
        [self.ndim_value, self.residue_value, self.quadrature_value]
            .into_iter()
            .flatten()
            .map(Complex64::from)
            .collect()
    }

    /// Largest `|v_i − v_j|` over the values present; `None` with fewer than two.
    pub fn pairwise_deviation(&self) -> Option<f64> {
        let v = self.values();
        if v.len() < 2 {
            return None;
        }
        let mut worst: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                worst = worst.max((v[i] - v[j]).norm());
            }
        }
        Some(worst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn opt(v: Option<f64>) -> String {
    v.map(number).unwrap_or_default()
}

pub const CSV_HEADER: [&str; 18] = [
    "integrand",
    "branch",
    "r",
    "s",
    "a",
    "sigma",
    "ndim_value_re",
    "ndim_value_im",
    "ndim_exact_form",
    "residue_value_re",
    "residue_value_im",
    "quadrature_value_re",
    "quadrature_value_im",
    "quadrature_error_estimate",
    "max_pairwise_deviation",
    "ndim_ms",
    "residue_ms",
    "quadrature_ms",
];

impl ComparisonReport {
    fn csv_record(&self) -> Vec<String> {
        let re = |v: &Option<ComplexValue>| opt(v.map(|z| z.re));
        let im = |v: &Option<ComplexValue>| opt(v.map(|z| z.im));
        vec![
            self.integrand.clone(),
            self.branch.to_string(),
            self.r.to_string(),
            self.s.to_string(),
            number(self.a),
            number(self.sigma),
            re(&self.ndim_value),
            im(&self.ndim_value),
            self.ndim_exact_form.clone().unwrap_or_default(),
            re(&self.residue_value),
            im(&self.residue_value),
            re(&self.quadrature_value),
            im(&self.quadrature_value),
            opt(self.quadrature_error_estimate),
            opt(self.max_pairwise_deviation),
            opt(self.wall_times_ms.ndim),
            opt(self.wall_times_ms.residue),
            opt(self.wall_times_ms.quadrature),
        ]
    }

    fn text(&self) -> String {
        let mut lines = vec![
            format!("integrand: {}", self.integrand),
            format!("branch: {}", self.branch),
        ];
        let ms = |t: Option<f64>| t.map(|t| format!("  [{} ms]", number(t))).unwrap_or_default();
        let form = self.ndim_exact_form.as_deref().unwrap_or_default();
        if let Some(v) = self.ndim_value {
            lines.push(format!("ndim: {v} ({form}){}", ms(self.wall_times_ms.ndim)));
        }
        if let Some(v) = self.residue_value {
            lines.push(format!("residue: {v}{}", ms(self.wall_times_ms.residue)));
        }
        if let Some(v) = self.quadrature_value {
            lines.push(format!(
                "quadrature: {v} (±{}){}",
                opt(self.quadrature_error_estimate),
                ms(self.wall_times_ms.quadrature)
            ));
        }
        if let Some(d) = self.max_pairwise_deviation {
            lines.push(format!("max_pairwise_deviation: {}", number(d)));
        }
        lines.join("\n") + "\n"
    }

    /// The single-method line printed by `eval`.
    pub fn single_line(&self) -> String {
        if let Some(v) = self.ndim_value {
            format!("{v} ({})\n", self.ndim_exact_form.as_deref().unwrap_or_default())
        } else if let Some(v) = self.residue_value {
            format!("{v}\n")
        } else if let Some(v) = self.quadrature_value {
            format!("{v} (±{})\n", opt(self.quadrature_error_estimate))
        } else {
            "\n".to_string()
        }
    }

    pub fn write(&self, format: Format, single: bool, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Text if single => out.write_all(self.single_line().as_bytes()),
            Format::Text => out.write_all(self.text().as_bytes()),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(CSV_HEADER)?;
                w.write_record(self.csv_record())?;
                w.flush()
            }
        }
    }
}

/// One partial sum of the exponential series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub n: usize,
    pub value: ComplexValue,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub a: f64,
    pub sigma: f64,
    pub branch: BranchPrescription,
    pub closed_form: ComplexValue,
    pub rows: Vec<SeriesRow>,
}

impl SeriesTable {
    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Text => {
                writeln!(out, "closed form: {}", self.closed_form)?;
                writeln!(out, "{:>4}  {:<45}  error", "N", "partial sum")?;
                for row in &self.rows {
                    writeln!(out, "{:>4}  {:<45}  {}", row.n, row.value.to_string(), number(row.error))?;
                }
                Ok(())
            }
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["n", "value_re", "value_im", "error"])?;
                for row in &self.rows {
                    w.write_record([
                        row.n.to_string(),
                        number(row.value.re),
                        number(row.value.im),
                        number(row.error),
                    ])?;
                }
                w.flush()
            }
        }
    }
}
