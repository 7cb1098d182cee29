use std::fmt::Write as _;
use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A command result rendered lazily in whichever format was requested.
pub struct Rendered {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub table: String,
    /// Extra line written to standard error in CSV mode, where standard
    /// output must stay a clean table.
    pub csv_note: Option<String>,
}

impl Rendered {
    pub fn emit(&self, format: Format, out: &mut impl Write, err: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut writer = csv::Writer::from_writer(&mut *out);
                writer.write_record(&self.header)?;
                for row in &self.rows {
                    writer.write_record(row)?;
                }
                writer.flush()?;
                if let Some(note) = &self.csv_note {
                    writeln!(err, "{note}")?;
                }
                Ok(())
            }
            Format::Table => out.write_all(self.table.as_bytes()),
        }
    }
}

/// Left-aligned text table with a header row.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut text = String::new();
        for (cell, w) in cells.zip(&widths) {
            let pad = w - cell.chars().count();
            write!(text, "{cell}{}  ", " ".repeat(pad)).unwrap();
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}
