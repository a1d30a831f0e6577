//! Table and CSV rendering.

use std::fmt::Write as _;

use actionvar_core::SchemeTag;

/// Significant digits in CSV cells.
pub const CSV_DIGITS: usize = 12;

/// Significant digits in the aligned text table.
pub const TABLE_DIGITS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Flag(bool),
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: &'static str,
    pub unit: &'static str,
    pub scheme: Option<SchemeTag>,
}

impl Column {
    pub fn new(name: &'static str, unit: &'static str) -> Self {
        Self { name, unit, scheme: None }
    }

    pub fn scheme(name: &'static str, unit: &'static str, scheme: SchemeTag) -> Self {
        Self {
            name,
            unit,
            scheme: Some(scheme),
        }
    }

    fn header(&self) -> String {
        if self.unit.is_empty() {
            self.name.to_string()
        } else {
            format!("{} [{}]", self.name, self.unit)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

/// `%g`-style formatting with `digits` significant digits. Trailing zeros are
/// removed when `trim` is set.
pub fn fmt_sig(x: f64, digits: usize, trim: bool) -> String {
    if x == 0.0 {
        return if trim || digits <= 1 {
            "0".to_string()
        } else {
            format!("{:.*}", digits - 1, 0.0)
        };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = if trim { trim_zeros(mantissa) } else { mantissa.to_string() };
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if trim {
            trim_zeros(&fixed)
        } else {
            fixed
        }
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn render_cell(cell: &Cell, digits: usize, trim: bool) -> String {
    match cell {
        Cell::Num(x) => fmt_sig(*x, digits, trim),
        Cell::Int(n) => n.to_string(),
        Cell::Flag(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().map(Column::header).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| render_cell(c, CSV_DIGITS, true)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let header: Vec<String> = self.columns.iter().map(Column::header).collect();
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|c| render_cell(c, TABLE_DIGITS, false)).collect())
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|j| {
                body.iter()
                    .map(|r| r[j].chars().count())
                    .chain(std::iter::once(header[j].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |cells: &[String], out: &mut String| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            out.push_str(parts.join("  ").trim_end());
            out.push('\n');
        };
        line(&header, &mut out);
        for row in &body {
            line(row, &mut out);
        }
        out
    }

    /// One line per column naming the scheme tag and its formula.
    pub fn scheme_legend(&self) -> String {
        let mut out = String::new();
        for col in &self.columns {
            if let Some(tag) = col.scheme {
                let _ = writeln!(out, "# {}: {}  {}", col.name, tag.name(), tag.formula());
            }
        }
        out
    }
}
