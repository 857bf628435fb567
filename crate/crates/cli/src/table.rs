use serde_json::{json, Map, Number, Value};

use crate::Format;

/// One output value with its fixed textual form.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Six decimals.
    Energy(f64),
    Fixed(f64, usize),
    /// Scientific notation with ten fractional digits.
    Sci(f64),
    Int(i64),
    Bool(bool),
    /// Printed as "none" in CSV and null in JSON.
    Missing,
}

impl Cell {
    pub fn text(&self) -> String {
        match self {
            Cell::Energy(v) => unsigned_zero(format!("{v:.6}")),
            Cell::Fixed(v, d) => unsigned_zero(format!("{:.*}", d, v)),
            Cell::Sci(v) => unsigned_zero(format!("{v:.10e}")),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Missing => "none".into(),
        }
    }

    fn value(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Missing => Value::Null,
            _ => {
                let parsed: f64 = self.text().parse().expect("formatted number parses");
                Number::from_f64(parsed).map_or(Value::Null, Value::Number)
            }
        }
    }
}

// "-0.000000" becomes "0.000000".
fn unsigned_zero(s: String) -> String {
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| matches!(c, '0' | '.' | 'e')) => rest.to_string(),
        _ => s,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Table {
            command,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.columns.join(",");
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::text).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = Map::new();
                        for (name, cell) in self.columns.iter().zip(row) {
                            obj.insert((*name).to_string(), cell.value());
                        }
                        Value::Object(obj)
                    })
                    .collect();
                let doc = json!({
                    "command": self.command,
                    "columns": self.columns,
                    "rows": rows,
                });
                format!("{doc}\n")
            }
        }
    }
}
