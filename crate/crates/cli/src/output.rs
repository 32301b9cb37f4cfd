use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use crate::args::OutputFormat;

/// Largest magnitude emitted as a native JSON number.
const JSON_SAFE: i64 = 1 << 53;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(BigInt),
    Text(String),
    Bool(bool),
    List(Vec<BigInt>),
    Null,
}

impl Cell {
    pub fn int(v: impl Into<BigInt>) -> Self {
        Cell::Int(v.into())
    }

    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::List(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json_int(v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::List(vs) => Value::Array(vs.iter().map(json_int).collect()),
            Cell::Null => Value::Null,
        }
    }
}

fn json_int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if x.abs() <= JSON_SAFE => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}

/// Everything one invocation prints, independent of format.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub pass: Option<bool>,
    /// Closing line for plain output.
    pub summary: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, params: Vec<(&'static str, String)>) -> Self {
        Report {
            command,
            params,
            columns: Vec::new(),
            rows: Vec::new(),
            pass: None,
            summary: None,
        }
    }

    /// Appends a row given as (column, value) pairs. The first row fixes the columns.
    pub fn push(&mut self, row: Vec<(&'static str, Cell)>) {
        let (names, cells): (Vec<_>, Vec<_>) = row.into_iter().unzip();
        if self.columns.is_empty() {
            self.columns = names;
        } else {
            debug_assert_eq!(self.columns, names);
        }
        self.rows.push(cells);
    }

    pub fn render(&self, format: OutputFormat, quiet: bool) -> String {
        match format {
            OutputFormat::Plain => self.plain(quiet),
            OutputFormat::Csv => self.csv(),
            OutputFormat::Json => self.json(),
        }
    }

    pub fn write(&self, format: OutputFormat, quiet: bool) -> io::Result<()> {
        let mut out = io::stdout().lock();
        out.write_all(self.render(format, quiet).as_bytes())?;
        out.flush()
    }

    fn plain(&self, quiet: bool) -> String {
        let mut out = String::new();
        if !quiet {
            let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("# hdepth {} {}\n", self.command, params.join(" ")));
        }
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| match c {
                        Cell::Null => "-".to_string(),
                        c => c.text(),
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, name)| body.iter().map(|r| r[i].len()).chain([name.len()]).max().unwrap())
            .collect();
        let mut line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            out.push_str(padded.join("  ").trim_end());
            out.push('\n');
        };
        if !self.columns.is_empty() {
            line(self.columns.clone());
            for row in &body {
                line(row.iter().map(String::as_str).collect());
            }
        }
        if let Some(summary) = &self.summary {
            out.push_str(summary);
            out.push('\n');
        }
        out
    }

    fn csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.columns).expect("write to memory");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::text))
                .expect("write to memory");
        }
        String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }

    fn json(&self) -> String {
        let mut doc = Map::new();
        doc.insert("command".into(), Value::String(self.command.into()));
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
            .collect();
        doc.insert("params".into(), Value::Object(params));
        let rows = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(k, c)| (k.to_string(), c.json()))
                        .collect(),
                )
            })
            .collect();
        doc.insert("results".into(), Value::Array(rows));
        if let Some(pass) = self.pass {
            doc.insert("pass".into(), Value::Bool(pass));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("json value");
        text.push('\n');
        text
    }
}
