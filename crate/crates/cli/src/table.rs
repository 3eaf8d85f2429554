//! One rendering layer for every emitted table.
//!
//! Numbers carry the text they were formatted with, so re-reading an
//! emitted table and rendering it again gives the same bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use qaran_core::published::{Precision, Printed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            _ => Err(format!("unknown format '{s}' (expected csv, json or table)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    Text(String),
    Num { value: f64, text: String },
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn int(n: impl Into<i128>) -> Self {
        let n = n.into();
        Cell::Num {
            value: n as f64,
            text: n.to_string(),
        }
    }

    /// Shortest text that parses back to exactly `x`.
    pub fn float(x: f64) -> Self {
        if !x.is_finite() {
            return Cell::Empty;
        }
        Cell::Num {
            value: x,
            text: format!("{x}"),
        }
    }

    pub fn fixed(x: f64, decimals: usize) -> Self {
        if !x.is_finite() {
            return Cell::Empty;
        }
        let text = format!("{x:.decimals$}");
        Cell::Num {
            value: text.parse().unwrap_or(x),
            text,
        }
    }

    /// `x` formatted at the precision `like` was printed with.
    pub fn printed_like(x: f64, like: &Printed) -> Self {
        match like.precision {
            Precision::Decimals(d) => Cell::fixed(x, d as usize),
            Precision::Significant(_) => Cell::float(like.round_like(x)),
            Precision::Relative(_) => Cell::float(x),
        }
    }

    pub fn opt_float(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::float)
    }

    pub fn bool(b: bool) -> Self {
        Cell::Text(b.to_string())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            Cell::Empty => "",
            Cell::Text(s) => s,
            Cell::Num { text, .. } => text,
        }
    }

    /// Cell from a CSV field or text-table entry.
    fn parse(field: &str) -> Self {
        if field.is_empty() {
            return Cell::Empty;
        }
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() && looks_numeric(field) => Cell::Num {
                value: v,
                text: field.to_string(),
            },
            _ => Cell::Text(field.to_string()),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Empty => Value::Null,
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Num { value, text } => match text.parse::<i64>() {
                Ok(i) => json!(i),
                Err(_) => json!(value),
            },
        }
    }

    fn from_json(v: &Value) -> Result<Self, ReadError> {
        match v {
            Value::Null => Ok(Cell::Empty),
            Value::String(s) => Ok(Cell::Text(s.clone())),
            Value::Number(n) => Ok(Cell::Num {
                value: n.as_f64().ok_or_else(|| ReadError::Shape(format!("number {n} out of range")))?,
                text: n.to_string(),
            }),
            other => Err(ReadError::Shape(format!("unexpected cell {other}"))),
        }
    }
}

/// Rejects words f64 accepts but a table would not print, e.g. "inf" or "NaN".
fn looks_numeric(s: &str) -> bool {
    s.chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed table: {0}")]
    Shape(String),
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in '{}'", self.title);
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Table => self.to_text(),
        }
    }

    pub fn read(format: Format, input: &str) -> Result<Table, ReadError> {
        match format {
            Format::Csv => Self::from_csv(input),
            Format::Json => Self::from_json(input),
            Format::Table => Self::from_text(input),
        }
    }

    fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::as_str)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    fn from_csv(input: &str) -> Result<Table, ReadError> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input.as_bytes());
        let columns = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| Ok(rec?.iter().map(Cell::parse).collect()))
            .collect::<Result<_, ReadError>>()?;
        Ok(Table {
            title: String::new(),
            columns,
            rows,
        })
    }

    fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        let doc = json!({ "title": self.title, "columns": self.columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
        s.push('\n');
        s
    }

    fn from_json(input: &str) -> Result<Table, ReadError> {
        #[derive(Deserialize)]
        struct Doc {
            title: String,
            columns: Vec<String>,
            rows: Vec<Vec<Value>>,
        }
        let doc: Doc = serde_json::from_str(input)?;
        let rows = doc
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::from_json).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        Ok(Table {
            title: doc.title,
            columns: doc.columns,
            rows,
        })
    }

    /// Pipe table with a `# title` line and padded columns.
    fn to_text(&self) -> String {
        let escape = |s: &str| s.replace('|', "\\|");
        let header: Vec<String> = self.columns.iter().map(|c| escape(c)).collect();
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| escape(c.as_str())).collect())
            .collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count().max(3)).collect();
        for row in &body {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::from("|");
            for (c, w) in cells.iter().zip(&widths) {
                let _ = write!(s, " {c:<w$} |");
            }
            s.push('\n');
            s
        };
        let mut out = format!("# {}\n", self.title);
        out += &line(&header);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out += &line(&rule);
        for row in &body {
            out += &line(row);
        }
        out
    }

    fn from_text(input: &str) -> Result<Table, ReadError> {
        let mut lines = input.lines();
        let title = lines
            .next()
            .and_then(|l| l.strip_prefix("# "))
            .ok_or_else(|| ReadError::Shape("missing '# title' line".into()))?
            .to_string();
        let split = |l: &str| -> Result<Vec<String>, ReadError> {
            let inner = l
                .trim()
                .strip_prefix('|')
                .and_then(|s| s.strip_suffix('|'))
                .ok_or_else(|| ReadError::Shape(format!("not a table row: {l}")))?;
            let mut cells = Vec::new();
            let mut cur = String::new();
            let mut chars = inner.chars().peekable();
            while let Some(c) = chars.next() {
                match c {
                    '\\' if chars.peek() == Some(&'|') => {
                        cur.push('|');
                        chars.next();
                    }
                    '|' => cells.push(std::mem::take(&mut cur).trim().to_string()),
                    _ => cur.push(c),
                }
            }
            cells.push(cur.trim().to_string());
            Ok(cells)
        };
        let columns = split(lines.next().ok_or_else(|| ReadError::Shape("missing header".into()))?)?;
        lines.next().ok_or_else(|| ReadError::Shape("missing rule".into()))?;
        let rows = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let cells = split(l)?;
                if cells.len() != columns.len() {
                    return Err(ReadError::Shape(format!("row width {} != {}", cells.len(), columns.len())));
                }
                Ok(cells.iter().map(|c| Cell::parse(c)).collect())
            })
            .collect::<Result<_, _>>()?;
        Ok(Table { title, columns, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", &["name", "value", "note"]);
        t.push(vec![Cell::text("a|b"), Cell::fixed(0.16, 3), Cell::Empty]);
        t.push(vec![Cell::text("2011"), Cell::int(5436u32), Cell::float(1.0 / 3.0)]);
        t
    }

    #[test]
    fn round_trip_each_format() {
        let t = sample();
        for f in [Format::Csv, Format::Json, Format::Table] {
            let once = t.render(f);
            let again = Table::read(f, &once).unwrap().render(f);
            assert_eq!(once, again, "{f:?}");
        }
    }

    #[test]
    fn csv_keeps_printed_digits() {
        let csv = sample().render(Format::Csv);
        assert!(csv.contains("0.160"));
        let back = Table::read(Format::Csv, &csv).unwrap();
        assert_eq!(back.rows[0][1].as_f64(), Some(0.16));
    }

    #[test]
    fn non_finite_is_empty() {
        assert_eq!(Cell::float(f64::NAN), Cell::Empty);
        assert_eq!(Cell::parse("inf"), Cell::Text("inf".into()));
    }
}
