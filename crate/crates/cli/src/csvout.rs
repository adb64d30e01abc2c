//! Minimal CSV document builder: header row, comma separators, `.` decimals,
//! LF line endings. Floats use Rust's shortest round-trip formatting, so a
//! value parses back to the exact double that was written.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum CsvValue {
    Float(f64),
    Int(usize),
    Bool(bool),
    Str(String),
}

impl From<f64> for CsvValue {
    fn from(v: f64) -> Self {
        CsvValue::Float(v)
    }
}

impl From<usize> for CsvValue {
    fn from(v: usize) -> Self {
        CsvValue::Int(v)
    }
}

impl From<bool> for CsvValue {
    fn from(v: bool) -> Self {
        CsvValue::Bool(v)
    }
}

impl From<&str> for CsvValue {
    fn from(v: &str) -> Self {
        CsvValue::Str(v.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct CsvDocument {
    columns: Vec<&'static str>,
    rows: Vec<Vec<CsvValue>>,
}

impl CsvDocument {
    pub fn new(columns: &[&'static str]) -> Self {
        CsvDocument {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<CsvValue>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match cell {
                    CsvValue::Float(v) => {
                        let _ = write!(out, "{v}");
                    }
                    CsvValue::Int(v) => {
                        let _ = write!(out, "{v}");
                    }
                    CsvValue::Bool(v) => {
                        let _ = write!(out, "{v}");
                    }
                    CsvValue::Str(v) => {
                        let _ = write!(out, "{v}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}
