use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

pub const SCHEMA: &str = "# bosonlaw-schema v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// CSV text with the schema line, optional comment lines and a column header.
pub struct Csv {
    columns: usize,
    text: String,
}

impl Csv {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        let text = format!("{SCHEMA}\n# command: {command}\n{}\n", columns.join(","));
        Self { columns: columns.len(), text }
    }

    pub fn row(&mut self, fields: &[&dyn Display]) {
        assert_eq!(fields.len(), self.columns, "CSV row width");
        let cells: Vec<String> = fields.iter().map(|f| quote(&f.to_string())).collect();
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| format!("cannot serialize output: {e}"))
}

/// Write to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                // a closed pipe (`bosonlaw ... | head`) is not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(|e| format!("cannot write stdout: {e}")),
            }
        }
    }
}
