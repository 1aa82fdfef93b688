//! Table rows with provenance, rendered as CSV.
//!
//! Output format: one `#`-prefixed provenance line (seed, threads, and the
//! knobs of the run), a fixed header row, then data rows with `.` decimal
//! separators. Every command is deterministic given its flags, so emitted
//! files are stable byte-for-byte.

use crate::fmt::fmt_value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Analytic,
    Empirical,
}

/// One table row: named value columns plus the bookkeeping that makes an
/// empirical number reproducible. Empirical rows must carry the seed and
/// the sample count behind them.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub table: &'static str,
    pub n: usize,
    pub family: String,
    pub columns: Vec<(&'static str, f64)>,
    pub provenance: Provenance,
    pub samples_used: Option<u64>,
    pub seed: Option<u64>,
}

impl ReportRow {
    pub fn analytic(table: &'static str, n: usize, family: &str, columns: Vec<(&'static str, f64)>) -> Self {
        Self {
            table,
            n,
            family: family.to_string(),
            columns,
            provenance: Provenance::Analytic,
            samples_used: None,
            seed: None,
        }
    }

    pub fn empirical(
        table: &'static str,
        n: usize,
        family: &str,
        columns: Vec<(&'static str, f64)>,
        samples_used: u64,
        seed: u64,
    ) -> Self {
        Self {
            table,
            n,
            family: family.to_string(),
            columns,
            provenance: Provenance::Empirical,
            samples_used: Some(samples_used),
            seed: Some(seed),
        }
    }

    pub fn value(&self, name: &str) -> f64 {
        self.columns
            .iter()
            .find(|(c, _)| *c == name)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("row has no column {name}"))
    }

    /// Diagnostic line on stderr; the empirical bookkeeping travels with
    /// the row.
    pub fn log(&self) {
        let values: Vec<String> = self
            .columns
            .iter()
            .map(|(name, v)| format!("{name}={v:.6}"))
            .collect();
        match self.provenance {
            Provenance::Analytic => {
                eprintln!("{} n={} {}: {}", self.table, self.n, self.family, values.join(" "));
            }
            Provenance::Empirical => {
                eprintln!(
                    "{} n={} {}: {} samples={} seed={}",
                    self.table,
                    self.n,
                    self.family,
                    values.join(" "),
                    self.samples_used.expect("empirical rows record samples"),
                    self.seed.expect("empirical rows record the seed"),
                );
            }
        }
    }
}

pub struct CsvWriter {
    full_precision: bool,
    out: String,
}

impl CsvWriter {
    pub fn new(full_precision: bool) -> Self {
        Self {
            full_precision,
            out: String::new(),
        }
    }

    pub fn comment(&mut self, text: &str) {
        self.out.push_str("# ");
        self.out.push_str(text);
        self.out.push('\n');
    }

    pub fn header(&mut self, names: &[&str]) {
        self.out.push_str(&names.join(","));
        self.out.push('\n');
    }

    pub fn row(&mut self, cells: &[Cell]) {
        let rendered: Vec<String> = cells
            .iter()
            .map(|c| match c {
                Cell::Int(i) => i.to_string(),
                Cell::Real(v) => fmt_value(*v, self.full_precision),
                Cell::Flag(b) => b.to_string(),
            })
            .collect();
        self.out.push_str(&rendered.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub enum Cell {
    Int(u64),
    Real(f64),
    Flag(bool),
}
