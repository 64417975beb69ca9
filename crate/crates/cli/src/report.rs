//! Machine-readable report model shared by all subcommands.
//!
//! One `Report` renders to JSON (schema-versioned, keys sorted), CSV
//! (scalars as `#` comment lines, fixed column order), or an aligned text
//! table. Rendering is deterministic: identical inputs give identical bytes.

use latpoly_core::numeric::to_f64;
use latpoly_core::Rational;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone)]
pub enum Scalar {
    UInt(u64),
    Float(f64),
    Text(String),
    Bool(bool),
    /// An exact rational with its decimal rendering.
    Exact(Rational),
}

impl Scalar {
    pub fn exact(r: &Rational) -> Self {
        Scalar::Exact(r.clone())
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub scalars: Vec<(&'static str, Scalar)>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            scalars: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn scalar(&mut self, key: &'static str, value: Scalar) -> &mut Self {
        self.scalars.push((key, value));
        self
    }

    pub fn table(&mut self, table: Table) -> &mut Self {
        self.tables.push(table);
        self
    }

    pub fn render(&self, format: Format, digits: usize) -> String {
        match format {
            Format::Json => self.to_json(digits),
            Format::Csv => self.to_csv(digits),
            Format::Table => self.to_table(digits),
        }
    }

    fn scalar_json(s: &Scalar, digits: usize) -> Value {
        match s {
            Scalar::UInt(v) => json!(v),
            Scalar::Float(v) => json!(v),
            Scalar::Text(v) => json!(v),
            Scalar::Bool(v) => json!(v),
            Scalar::Exact(r) => {
                let mut m = Map::new();
                m.insert("exact".into(), json!(format!("{r}")));
                m.insert("decimal".into(), json!(format_sig(to_f64(r), digits)));
                Value::Object(m)
            }
        }
    }

    fn to_json(&self, digits: usize) -> String {
        let mut scalars = Map::new();
        for (k, v) in &self.scalars {
            scalars.insert((*k).into(), Self::scalar_json(v, digits));
        }
        let mut tables = Map::new();
        for t in &self.tables {
            tables.insert(
                t.name.into(),
                json!({
                    "columns": t.columns,
                    "rows": t.rows,
                }),
            );
        }
        let root = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "scalars": Value::Object(scalars),
            "tables": Value::Object(tables),
        });
        let mut out = serde_json::to_string_pretty(&root).expect("serializable");
        out.push('\n');
        out
    }

    fn scalar_text(s: &Scalar, digits: usize) -> String {
        match s {
            Scalar::UInt(v) => v.to_string(),
            Scalar::Float(v) => format_sig(*v, digits),
            Scalar::Text(v) => v.clone(),
            Scalar::Bool(v) => v.to_string(),
            Scalar::Exact(r) => format!("{r} = {}", format_sig(to_f64(r), digits)),
        }
    }

    fn to_csv(&self, digits: usize) -> String {
        let mut out = String::new();
        out.push_str(&format!("# schema_version,{SCHEMA_VERSION}\n"));
        out.push_str(&format!("# command,{}\n", self.command));
        for (k, v) in &self.scalars {
            out.push_str(&format!("# {k},{}\n", Self::scalar_text(v, digits)));
        }
        for t in &self.tables {
            out.push_str(&format!("# table,{}\n", t.name));
            out.push_str(&t.columns.join(","));
            out.push('\n');
            for row in &t.rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        out
    }

    fn to_table(&self, digits: usize) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", self.command));
        let width = self.scalars.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.scalars {
            out.push_str(&format!(
                "  {k:<width$}  {}\n",
                Self::scalar_text(v, digits)
            ));
        }
        for t in &self.tables {
            out.push('\n');
            out.push_str(&format!("[{}]\n", t.name));
            // column widths from header and cells; very long cells (exact
            // rationals with hundreds of digits) overflow instead of
            // stretching the whole column
            const PAD_CAP: usize = 40;
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.len()).collect();
            for row in &t.rows {
                for (i, cell) in row.iter().enumerate() {
                    if i < widths.len() {
                        widths[i] = widths[i].max(cell.len().min(PAD_CAP));
                    }
                }
            }
            let header: Vec<String> = t
                .columns
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            out.push_str(&format!("  {}\n", header.join("  ")));
            for row in &t.rows {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                out.push_str(&format!("  {}\n", cells.join("  ")));
            }
        }
        out
    }
}

/// Output format of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Scientific-notation rendering with a fixed number of significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
}

/// Cell helpers for table rows.
pub fn cell_exact(r: &Rational) -> String {
    format!("{r}")
}

pub fn cell_sig(x: f64, digits: usize) -> String {
    format_sig(x, digits)
}
