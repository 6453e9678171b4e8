use std::io::Write;

use serde_json::Value;

use crate::args::Format;

/// Rendered result of a command: one table for `table`/`csv` and a JSON
/// document for `json`.
#[derive(Debug, Clone)]
pub struct Report {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Lines printed after the table in `table` format only.
    pub notes: Vec<String>,
    pub json: Value,
}

impl Report {
    pub fn new(headers: &[&str], json: Value) -> Self {
        Report { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new(), notes: Vec::new(), json }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.table(),
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("report JSON is serializable");
                s.push('\n');
                s
            }
        }
    }

    fn table(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.headers);
        out.push('\n');
        out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        for note in &self.notes {
            out.push_str(note);
            out.push('\n');
        }
        out
    }

    fn csv(&self) -> String {
        let escape = |c: &String| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        };
        let mut out = self.headers.iter().map(escape).collect::<Vec<_>>().join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(escape).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

pub fn emit(text: &str, out: Option<&std::path::Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()
        }
    }
}

/// Shortest round-trip decimal.
pub fn float(v: f64) -> String {
    format!("{v:?}")
}

pub fn opt_float(v: Option<f64>) -> String {
    v.map(float).unwrap_or_default()
}
