//! Rendering of command output as CSV or JSON.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt::Write as _;

use crate::units::{format_sig, Extended};

pub const SCHEMA_VERSION: &str = "aeromacs-toolkit/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Inf,
    Empty,
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_sig(*v, 6),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Inf => "inf".into(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Extended> for Cell {
    fn from(v: Extended) -> Self {
        match v {
            Extended::Finite(x) => Cell::Num(x),
            Extended::Infinite => Cell::Inf,
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// A header plus rows, written without trailing commas.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// `quantity,value,unit` table used by the report commands.
#[derive(Debug, Clone)]
pub struct KeyValues(Table);

impl KeyValues {
    pub fn new() -> Self {
        KeyValues(Table::new(vec!["quantity", "value", "unit"]))
    }

    /// `unit` must be non-empty so no row ends in a comma.
    pub fn add(&mut self, quantity: impl Into<String>, value: impl Into<Cell>, unit: &str) -> &mut Self {
        debug_assert!(!unit.is_empty());
        self.0.push(vec![
            Cell::Text(quantity.into()),
            value.into(),
            Cell::Text(unit.to_string()),
        ]);
        self
    }

    pub fn into_table(self) -> Table {
        self.0
    }
}

impl Default for KeyValues {
    fn default() -> Self {
        Self::new()
    }
}

/// A command's output in both renderings.
#[derive(Debug, Clone)]
pub struct Report {
    pub table: Table,
    pub json: Value,
}

impl Report {
    pub fn new(command: &str, table: Table, mut json: Value) -> Self {
        if let Value::Object(map) = &mut json {
            map.insert("schema".into(), Value::String(SCHEMA_VERSION.into()));
            map.insert("command".into(), Value::String(command.into()));
        }
        Report { table, json }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.table.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// `"16-QAM 3/4"` → `"16qam_3_4"`.
pub fn slug(name: &str) -> String {
    let mut out = String::new();
    for ch in name.chars() {
        match ch {
            'A'..='Z' | 'a'..='z' | '0'..='9' => out.push(ch.to_ascii_lowercase()),
            ' ' | '/' if !out.ends_with('_') => out.push('_'),
            _ => {}
        }
    }
    out
}
