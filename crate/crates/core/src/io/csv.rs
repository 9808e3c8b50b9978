use std::fmt::Write as _;
use std::path::Path;

use crate::codec::SweepReport;
use crate::metrics::{ComplexityRow, MetricReport};
use crate::{Error, Result};

/// Six decimals; non-finite values as `inf`, `-inf` or `nan`.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.6}")
    }
}

/// A rectangular table with a header row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvReport {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvReport {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        CsvReport {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::invalid(format!(
                "row has {} fields, header has {}",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.render()).map_err(|e| Error::io(path, e))
    }
}

pub fn complexity_csv(rows: &[ComplexityRow]) -> CsvReport {
    let mut csv = CsvReport::new(["transform", "multiplications", "additions", "bit_shifts", "total"]);
    for r in rows {
        csv.push(vec![
            r.name.clone(),
            r.multiplications.to_string(),
            r.additions.to_string(),
            r.bit_shifts.to_string(),
            r.total.to_string(),
        ])
        .expect("fixed width");
    }
    csv
}

pub fn performance_csv(reports: &[MetricReport]) -> CsvReport {
    let mut csv = CsvReport::new(["transform", "d2", "epsilon", "mse", "coding_gain_db", "efficiency_pct"]);
    for r in reports {
        csv.push(vec![
            r.name.clone(),
            format_number(r.d2),
            format_number(r.epsilon),
            format_number(r.mse),
            format_number(r.coding_gain_db),
            format_number(r.efficiency_pct),
        ])
        .expect("fixed width");
    }
    csv
}

pub fn sweep_csv(report: &SweepReport) -> CsvReport {
    let mut csv = CsvReport::new([
        "transform",
        "r",
        "images",
        "mean_psnr_db",
        "mean_ssim",
        "psnr_per_add",
        "ssim_per_add",
    ]);
    for r in &report.rows {
        csv.push(vec![
            r.transform.clone(),
            r.r.to_string(),
            r.images.to_string(),
            format_number(r.mean_psnr_db),
            format_number(r.mean_ssim),
            format_number(r.psnr_per_add),
            format_number(r.ssim_per_add),
        ])
        .expect("fixed width");
    }
    csv
}
