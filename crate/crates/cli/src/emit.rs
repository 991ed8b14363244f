//! Deterministic text emission: fixed-precision numbers, ordered JSON and CSV.

use std::io::Write;

use serde_json::{Map, Value};

use crate::error::CliResult;

/// Significant digits of every emitted number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` at 12 significant digits, positional for moderate magnitudes and
/// scientific otherwise. `-0` is written as `0`.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..12).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// An output record: ordered keys with scalar or list values.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Field)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Nums(Vec<f64>),
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn num(mut self, key: &str, v: f64) -> Self {
        self.fields.push((key.into(), Field::Num(v)));
        self
    }

    pub fn int(mut self, key: &str, v: i64) -> Self {
        self.fields.push((key.into(), Field::Int(v)));
        self
    }

    pub fn flag(mut self, key: &str, v: bool) -> Self {
        self.fields.push((key.into(), Field::Bool(v)));
        self
    }

    pub fn text(mut self, key: &str, v: impl Into<String>) -> Self {
        self.fields.push((key.into(), Field::Text(v.into())));
        self
    }

    pub fn nums(mut self, key: &str, v: Vec<f64>) -> Self {
        self.fields.push((key.into(), Field::Nums(v)));
        self
    }

    pub fn push(&mut self, key: &str, field: Field) {
        self.fields.push((key.into(), field));
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, f)| f)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|(k, _)| k.as_str())
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, f) in &self.fields {
            map.insert(k.clone(), f.to_json());
        }
        Value::Object(map)
    }

    fn csv_cells(&self) -> Vec<String> {
        self.fields.iter().map(|(_, f)| f.to_cell()).collect()
    }
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Num(x) => Value::String(num(*x)),
            Field::Int(i) => Value::from(*i),
            Field::Bool(b) => Value::Bool(*b),
            Field::Text(s) => Value::String(s.clone()),
            Field::Nums(xs) => Value::Array(xs.iter().map(|x| Value::String(num(*x))).collect()),
        }
    }

    fn to_cell(&self) -> String {
        match self {
            Field::Num(x) => num(*x),
            Field::Int(i) => i.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
            Field::Nums(xs) => xs.iter().map(|x| num(*x)).collect::<Vec<_>>().join(" "),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A single record, or a header record followed by a table of rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub header: Record,
    pub rows: Option<Vec<Record>>,
}

impl Document {
    pub fn record(header: Record) -> Self {
        Document { header, rows: None }
    }

    pub fn table(header: Record, rows: Vec<Record>) -> Self {
        Document {
            header,
            rows: Some(rows),
        }
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => Ok(self.render_json()),
            Format::Csv => match &self.rows {
                None => csv_text(std::slice::from_ref(&self.header)),
                Some(rows) => csv_text(rows),
            },
        }
    }

    fn render_json(&self) -> String {
        let mut value = self.header.to_json();
        if let Some(rows) = &self.rows {
            value.as_object_mut().expect("records are objects").insert(
                "rows".into(),
                Value::Array(rows.iter().map(Record::to_json).collect()),
            );
        }
        let mut text = serde_json::to_string_pretty(&value).expect("serialisable");
        text.push('\n');
        text
    }
}

/// Rows sharing the first row's keys, written as CSV with a header line.
pub fn csv_text(rows: &[Record]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        w.write_record(first.keys())?;
    }
    for r in rows {
        w.write_record(r.csv_cells())?;
    }
    w.flush()?;
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_text(path: Option<&std::path::Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
