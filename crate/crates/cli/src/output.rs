//! Deterministic output assembly: one envelope, three renderings.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Table => "table",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.headers.len(), "row width must match headers");
        self.rows.push(row);
    }
}

#[derive(Serialize)]
pub struct Envelope<'a> {
    pub schema_version: &'static str,
    pub command: &'a str,
    pub engine_version: &'static str,
    pub input_digest: &'a str,
    pub format: &'static str,
    pub payload: &'a Table,
}

/// Digest of the semantic input: the canonical command echo plus, when a
/// surface is involved, its resolved descriptor — so the same surface given
/// as a built-in name or as a file hashes identically.
pub fn input_digest(echo: &str, surface_json: Option<&str>) -> String {
    let mut hasher = Sha256::new();
    hasher.update(echo.as_bytes());
    if let Some(json) = surface_json {
        hasher.update(b"\n");
        hasher.update(json.as_bytes());
    }
    format!("sha256:{:x}", hasher.finalize())
}

pub fn render(format: Format, envelope: &Envelope<'_>) -> String {
    match format {
        Format::Table => render_table(envelope),
        Format::Json => {
            let mut out = serde_json::to_string_pretty(envelope).expect("plain data serializes");
            out.push('\n');
            out
        }
        Format::Csv => render_csv(envelope.payload),
    }
}

fn render_table(envelope: &Envelope<'_>) -> String {
    let table = envelope.payload;
    let mut out = String::new();
    out.push_str(&format!("# schema_version: {}\n", envelope.schema_version));
    out.push_str(&format!("# command: {}\n", envelope.command));
    out.push_str(&format!("# engine_version: {}\n", envelope.engine_version));
    out.push_str(&format!("# input_digest: {}\n", envelope.input_digest));
    out.push_str(&format!("# format: {}\n", envelope.format));

    let columns = table.headers.len();
    let mut widths: Vec<usize> = table.headers.iter().map(|h| h.chars().count()).collect();
    for row in &table.rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let emit_row = |cells: &[String], out: &mut String| {
        for (i, cell) in cells.iter().enumerate() {
            out.push_str(cell);
            if i + 1 < columns {
                for _ in cell.chars().count()..widths[i] + 2 {
                    out.push(' ');
                }
            }
        }
        out.push('\n');
    };
    emit_row(&table.headers, &mut out);
    for row in &table.rows {
        emit_row(row, &mut out);
    }
    out
}

fn render_csv(table: &Table) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&table.headers).expect("in-memory write");
    for row in &table.rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}
