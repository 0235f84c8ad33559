//! Rendering of command results as aligned text, CSV or JSON.

use std::io::Write;

use aimnu::algebra::{to_f64, Rational};
use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// One command result. `rows` feed table and CSV output; `json` is the
/// machine-readable form and may carry more structure than the rows.
pub struct Report {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Free text printed after the table, table format only.
    pub notes: Vec<String>,
    /// Extra column (header, one value per row) written in CSV only.
    pub csv_extra: Option<(String, Vec<String>)>,
    pub json: Value,
}

impl Report {
    pub fn new(headers: &[&str], json: Value) -> Self {
        Report {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
            csv_extra: None,
            json,
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Table => self.write_table(out),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                match &self.csv_extra {
                    None => {
                        w.write_record(&self.headers)?;
                        for r in &self.rows {
                            w.write_record(r)?;
                        }
                    }
                    Some((name, values)) => {
                        w.write_record(self.headers.iter().chain([name]))?;
                        for (r, v) in self.rows.iter().zip(values) {
                            w.write_record(r.iter().chain([v]))?;
                        }
                    }
                }
                w.flush()
            }
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)
            }
        }
    }

    fn write_table(&self, out: &mut impl Write) -> std::io::Result<()> {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(&self.headers))?;
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        writeln!(out, "{}", line(&rule))?;
        for r in &self.rows {
            writeln!(out, "{}", line(r))?;
        }
        for n in &self.notes {
            writeln!(out, "{n}")?;
        }
        Ok(())
    }
}

/// Decimal rendering with 12 significant digits.
pub fn decimal(q: &Rational) -> String {
    let x = to_f64(q);
    if x == 0.0 {
        return "0".into();
    }
    // Round through scientific notation, then print the shortest form of the rounded value.
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}
