//! Text formats: headered CSV for sequences, series and decompositions, plus
//! a small table/document model rendered as CSV or JSON.
//!
//! Sequences are `n,value` rows, 1-indexed; missing rows read as zero.
//! Series are `degree,numerator,denominator` rows. Decompositions are three
//! sequence sections introduced by `# surviving`, `# glued`, `# halving`.
//! Big integers are always written as decimal strings.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::arith::CountSequence;
use crate::combinatorics::BehaviorDecomposition;
use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// Data lines with their 1-based line numbers, skipping blanks.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn split_row(line_no: usize, line: &str, width: usize) -> Result<Vec<&str>> {
    let cells: Vec<&str> = line.split(',').map(str::trim).collect();
    if cells.len() != width {
        return Err(Error::parse(line_no, format!("expected {width} columns")));
    }
    Ok(cells)
}

fn parse_rows<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Option<CountSequence>> {
    let mut entries: BTreeMap<usize, BigUint> = BTreeMap::new();
    let mut header_seen = false;
    for (no, line) in lines {
        if !header_seen {
            if line.replace(' ', "") != "n,value" {
                return Err(Error::parse(no, "expected header 'n,value'"));
            }
            header_seen = true;
            continue;
        }
        let cells = split_row(no, line, 2)?;
        let n: usize = cells[0]
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::parse(no, "n must be a positive integer"))?;
        let v: BigUint = cells[1]
            .parse()
            .map_err(|_| Error::parse(no, "value must be a non-negative integer"))?;
        if entries.insert(n, v).is_some() {
            return Err(Error::parse(no, format!("duplicate row for n={n}")));
        }
    }
    if !header_seen {
        return Err(Error::parse(0, "missing header 'n,value'"));
    }
    let Some(&horizon) = entries.keys().next_back() else {
        return Ok(None);
    };
    Ok(Some(CountSequence::from_fn(horizon, |n| {
        entries.get(&n).cloned().unwrap_or_default()
    })))
}

pub fn parse_sequence_csv(text: &str) -> Result<CountSequence> {
    parse_rows(data_lines(text))?.ok_or(Error::EmptySequence)
}

pub fn sequence_csv(seq: &CountSequence) -> String {
    let mut s = String::from("n,value\n");
    for (n, v) in seq.iter() {
        s.push_str(&format!("{n},{v}\n"));
    }
    s
}

pub fn parse_decomposition_csv(text: &str) -> Result<BehaviorDecomposition> {
    let mut sections: BTreeMap<&str, Vec<(usize, &str)>> = BTreeMap::new();
    let mut current: Option<&str> = None;
    for (no, line) in data_lines(text) {
        if let Some(name) = line.strip_prefix('#') {
            let name = name.trim();
            if !["surviving", "glued", "halving"].contains(&name) {
                return Err(Error::parse(no, format!("unknown section '{name}'")));
            }
            if sections.insert(name, Vec::new()).is_some() {
                return Err(Error::parse(no, format!("section '{name}' repeated")));
            }
            current = Some(name);
            continue;
        }
        let name = current.ok_or_else(|| Error::parse(no, "data before the first section"))?;
        sections.get_mut(name).expect("section exists").push((no, line));
    }
    let mut parsed = Vec::new();
    for name in ["surviving", "glued", "halving"] {
        let lines = sections
            .remove(name)
            .ok_or_else(|| Error::parse(0, format!("missing section '# {name}'")))?;
        parsed.push(parse_rows(lines.into_iter())?);
    }
    let horizon = parsed
        .iter()
        .flatten()
        .map(CountSequence::horizon)
        .max()
        .ok_or(Error::EmptySequence)?;
    let pad = |s: &Option<CountSequence>| match s {
        Some(s) => s.with_horizon(horizon),
        None => CountSequence::zeros(horizon),
    };
    BehaviorDecomposition::new(pad(&parsed[0]), pad(&parsed[1]), pad(&parsed[2]))
}

pub fn decomposition_csv(dec: &BehaviorDecomposition) -> String {
    let mut s = String::new();
    for (name, seq) in [
        ("surviving", dec.surviving()),
        ("glued", dec.glued_pairs()),
        ("halving", dec.halving()),
    ] {
        s.push_str(&format!("# {name}\n"));
        s.push_str(&sequence_csv(seq));
    }
    s
}

pub fn parse_series_csv(text: &str) -> Result<PowerSeries> {
    let mut lines = data_lines(text);
    match lines.next() {
        Some((_, h)) if h.replace(' ', "") == "degree,numerator,denominator" => {}
        Some((no, _)) => {
            return Err(Error::parse(no, "expected header 'degree,numerator,denominator'"))
        }
        None => return Err(Error::parse(0, "empty series file")),
    }
    let mut entries: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (no, line) in lines {
        let cells = split_row(no, line, 3)?;
        let degree: usize = cells[0]
            .parse()
            .map_err(|_| Error::parse(no, "degree must be a non-negative integer"))?;
        let num: BigInt = cells[1]
            .parse()
            .map_err(|_| Error::parse(no, "numerator must be an integer"))?;
        let den: BigInt = cells[2]
            .parse()
            .map_err(|_| Error::parse(no, "denominator must be an integer"))?;
        if den.is_zero() {
            return Err(Error::parse(no, "zero denominator"));
        }
        if entries.insert(degree, BigRational::new(num, den)).is_some() {
            return Err(Error::parse(no, format!("duplicate degree {degree}")));
        }
    }
    let Some(&degree) = entries.keys().next_back() else {
        return Err(Error::parse(0, "series has no coefficients"));
    };
    Ok(PowerSeries::new(
        (0..=degree)
            .map(|d| entries.get(&d).cloned().unwrap_or_else(BigRational::zero))
            .collect(),
    ))
}

pub fn series_csv(series: &PowerSeries) -> String {
    let mut s = String::from("degree,numerator,denominator\n");
    for (d, c) in series.coeffs().iter().enumerate() {
        s.push_str(&format!("{d},{},{}\n", c.numer(), c.denom()));
    }
    s
}

/// A titled table of string cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn sequences(headers: &[&str], columns: &[&CountSequence]) -> Self {
        let horizon = columns.iter().map(|c| c.horizon()).max().unwrap_or(0);
        let mut t = Self::new(headers);
        for n in 1..=horizon {
            let mut row = vec![n.to_string()];
            row.extend(columns.iter().map(|c| match c.get(n) {
                Some(v) => v.to_string(),
                None => String::new(),
            }));
            t.push(row);
        }
        t
    }

    pub fn series(headers: &[&str], columns: &[&PowerSeries]) -> Self {
        let degree = columns.iter().map(|c| c.degree()).max().unwrap_or(0);
        let mut t = Self::new(headers);
        for d in 0..=degree {
            let mut row = vec![d.to_string()];
            row.extend(columns.iter().map(|c| {
                if d <= c.degree() {
                    c.coeff(d).to_string()
                } else {
                    String::new()
                }
            }));
            t.push(row);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Section {
    Table(Table),
    Text(String),
}

/// Ordered collection of named sections; rendering is deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    sections: Vec<(String, Section)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&mut self, title: &str, table: Table) -> &mut Self {
        self.sections.push((title.to_string(), Section::Table(table)));
        self
    }

    pub fn text(&mut self, title: &str, text: impl Into<String>) -> &mut Self {
        self.sections.push((title.to_string(), Section::Text(text.into())));
        self
    }

    /// Adds a `key,value` table of checks or scalar results.
    pub fn facts(&mut self, title: &str, facts: &[(String, String)]) -> &mut Self {
        let mut t = Table::new(&["key", "value"]);
        for (k, v) in facts {
            t.push(vec![k.clone(), v.clone()]);
        }
        self.table(title, t)
    }

    pub fn sections(&self) -> &[(String, Section)] {
        &self.sections
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, (title, section)) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("# {title}\n"));
            match section {
                Section::Table(t) => {
                    out.push_str(&t.headers.join(","));
                    out.push('\n');
                    for row in &t.rows {
                        out.push_str(&row.join(","));
                        out.push('\n');
                    }
                }
                Section::Text(text) => {
                    out.push_str(text);
                    if !text.ends_with('\n') {
                        out.push('\n');
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        for (title, section) in &self.sections {
            let value = match section {
                Section::Table(t) => Value::Array(
                    t.rows
                        .iter()
                        .map(|row| {
                            let mut r = Map::new();
                            for (h, cell) in t.headers.iter().zip(row) {
                                r.insert(h.clone(), json!(cell));
                            }
                            Value::Object(r)
                        })
                        .collect(),
                ),
                Section::Text(text) => json!(text),
            };
            obj.insert(title.clone(), value);
        }
        Value::Object(obj)
    }
}
