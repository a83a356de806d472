//! Output tables: an ordered metadata block plus named columns of rows,
//! rendered as CSV or JSON with fixed formatting so identical runs produce
//! identical bytes.

use std::io::Write;
use std::path::PathBuf;

use semidens::{Error, Result};
use serde::{Deserialize, Serialize};

/// One table entry. Integers and reals render differently in CSV (reals
/// carry 17 significant digits) and keep their JSON number shapes, so the
/// distinction survives a round trip.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

/// Everything one command produces: presentation-ordered metadata,
/// column names, and rows of cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// `# key = value` comment lines, a header row, then one line per row.
    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => format!("{i}"),
                    Cell::Real(x) => format!("{x:.16e}"),
                })
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// The same payload as a JSON document; numbers serialize in shortest
    /// round-trip form, so parsing the output reproduces the table exactly.
    pub fn render_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| Error::config(format!("cannot serialize table: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => Ok(self.render_csv()),
            Format::Json => self.render_json(),
        }
    }
}

/// Write to `path`, or to standard output when no path was given.
pub fn write_out(path: &Option<PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::config(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| Error::config(format!("cannot write to stdout: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["j", "e"]);
        t.meta("potential", "harmonic(k=1)");
        t.meta("n", 2);
        t.row(vec![Cell::Int(0), Cell::Real(0.5)]);
        t.row(vec![Cell::Int(1), Cell::Real(1.5)]);
        t
    }

    #[test]
    fn csv_carries_comments_header_and_17_digit_reals() {
        let text = sample().render_csv();
        assert_eq!(
            text,
            "# potential = harmonic(k=1)\n# n = 2\nj,e\n0,5.0000000000000000e-1\n1,1.5000000000000000e0\n"
        );
    }

    #[test]
    fn json_round_trips() {
        let t = sample();
        let text = t.render_json().unwrap();
        let back: Table = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn json_round_trips_awkward_reals() {
        let mut t = Table::new(&["x"]);
        for x in [1.0, -0.1, 2f64.powi(-40), 1.0 / 3.0, 6.02e23, f64::MIN_POSITIVE] {
            t.row(vec![Cell::Real(x)]);
        }
        t.row(vec![Cell::Int(i64::MAX)]);
        let back: Table = serde_json::from_str(&t.render_json().unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn csv_reals_parse_back_to_the_same_bits() {
        let x = std::f64::consts::PI * 1e-5;
        let printed = format!("{x:.16e}");
        assert_eq!(printed.parse::<f64>().unwrap(), x);
    }
}
