//! Tabular output: versioned CSV or one flat JSON object per line.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

pub const CSV_VERSION_LINE: &str = "# sepsym-table v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct TableWriter<W: Write> {
    out: W,
    format: Format,
    columns: &'static [&'static str],
    header_written: bool,
}

impl<W: Write> TableWriter<W> {
    pub fn new(out: W, format: Format, columns: &'static [&'static str]) -> Self {
        TableWriter {
            out,
            format,
            columns,
            header_written: false,
        }
    }

    fn header(&mut self) -> io::Result<()> {
        if !self.header_written && self.format == Format::Csv {
            writeln!(self.out, "{CSV_VERSION_LINE}")?;
            writeln!(self.out, "{}", self.columns.join(","))?;
        }
        self.header_written = true;
        Ok(())
    }

    pub fn row(&mut self, values: Vec<Value>) -> io::Result<()> {
        assert_eq!(values.len(), self.columns.len(), "row width");
        self.header()?;
        match self.format {
            Format::Csv => {
                let cells: Vec<String> = values.iter().map(csv_cell).collect();
                writeln!(self.out, "{}", cells.join(","))
            }
            Format::Json => {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(values)
                    .collect();
                writeln!(self.out, "{}", Value::Object(obj))
            }
        }
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.header()?;
        self.out.flush()?;
        Ok(self.out)
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

/// Big integers become JSON numbers when they fit in `u64`, strings otherwise.
pub fn big(n: &sepsym::Nat) -> Value {
    match u64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}
