//! Writing feature tables as CSV or JSON Lines.

use std::io::Write;

use serde_json::{json, Map, Value};

use super::normalize::{column_stats, ColumnStats};
use crate::error::{Error, Result};
use crate::graph::LabelAlphabet;
use crate::hom::FeatureMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalize {
    None,
    LogZ,
}

impl std::str::FromStr for Normalize {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Normalize::None),
            "log-z" => Ok(Normalize::LogZ),
            other => Err(Error::InvalidArgument(format!("unknown normalization {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

pub const OVERFLOW_CELL: &str = "overflow";

enum Cell {
    Raw(u128),
    Z(f64),
    Overflow,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Raw(c) => c.to_string(),
            // Display for f64 is the shortest string that parses back to the same value
            Cell::Z(z) => z.to_string(),
            Cell::Overflow => OVERFLOW_CELL.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // counts can exceed what JSON numbers carry exactly
            Cell::Raw(c) if *c <= (1u128 << 53) => json!(*c as u64),
            Cell::Raw(c) => json!(c.to_string()),
            Cell::Z(z) => json!(z),
            Cell::Overflow => json!(OVERFLOW_CELL),
        }
    }
}

fn cells(m: &FeatureMatrix, stats: Option<&[ColumnStats]>) -> Vec<(String, usize, u32, bool, Vec<Cell>)> {
    let mut rows = Vec::with_capacity(m.rows());
    for g in &m.graphs {
        for v in 0..g.n() {
            let row = match g.row(v) {
                None => (0..m.pattern_ids.len()).map(|_| Cell::Overflow).collect(),
                Some(counts) => counts
                    .into_iter()
                    .enumerate()
                    .map(|(j, c)| match stats {
                        Some(s) => Cell::Z(s[j].transform(c)),
                        None => Cell::Raw(c),
                    })
                    .collect(),
            };
            rows.push((g.graph_id.clone(), v, g.labels[v], g.overflow, row));
        }
    }
    rows
}

/// Header comment lines describing the transform, one per column.
pub fn stats_comment(names: &[String], stats: &[ColumnStats]) -> String {
    let mut out = String::from("# transform: z-score of log(1+count), sample std, dataset-global\n");
    for (name, s) in names.iter().zip(stats) {
        out.push_str(&format!(
            "# stats {name} mean={} std={} constant={}\n",
            s.mean, s.std, s.constant
        ));
    }
    out
}

/// Parses the comment block written by [`stats_comment`].
pub fn parse_stats_comment(text: &str) -> Result<Vec<(String, ColumnStats)>> {
    let bad = |line: &str| Error::Malformed {
        field: "stats",
        message: format!("cannot parse {line:?}"),
    };
    let mut out = Vec::new();
    for line in text.lines().filter_map(|l| l.strip_prefix("# stats ")) {
        let parts: Vec<&str> = line.split(' ').collect();
        if parts.len() != 4 {
            return Err(bad(line));
        }
        let field = |i: usize, key: &str| -> Result<&str> { parts[i].strip_prefix(key).ok_or_else(|| bad(line)) };
        out.push((
            parts[0].to_string(),
            ColumnStats {
                mean: field(1, "mean=")?.parse().map_err(|_| bad(line))?,
                std: field(2, "std=")?.parse().map_err(|_| bad(line))?,
                constant: field(3, "constant=")?.parse().map_err(|_| bad(line))?,
            },
        ));
    }
    Ok(out)
}

/// Writes `m` as a table. With `Normalize::LogZ` the statistics come from `stats` when given
/// (e.g. computed on a training split), otherwise from `m` itself.
pub fn write_features<W: Write>(
    out: W,
    m: &FeatureMatrix,
    alphabet: &LabelAlphabet,
    normalize: Normalize,
    format: Format,
    stats: Option<Vec<ColumnStats>>,
) -> Result<()> {
    let stats = match normalize {
        Normalize::None => None,
        Normalize::LogZ => Some(stats.unwrap_or_else(|| column_stats(m))),
    };
    if let Some(s) = &stats {
        if s.len() != m.pattern_ids.len() {
            return Err(Error::InvalidArgument(format!(
                "{} column statistics for {} patterns",
                s.len(),
                m.pattern_ids.len()
            )));
        }
    }
    let names = m.column_names();
    let label_name = |l: u32| alphabet.name(l).map_or_else(|| l.to_string(), str::to_string);
    let rows = cells(m, stats.as_deref());
    let mut out = std::io::BufWriter::new(out);
    match format {
        Format::Csv => {
            if let Some(s) = &stats {
                out.write_all(stats_comment(&names, s).as_bytes())?;
            }
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut out);
            let mut header = vec!["graph_id".to_string(), "vertex_id".to_string(), "label".to_string()];
            header.extend(names.iter().cloned());
            w.write_record(&header).map_err(csv_err)?;
            for (gid, v, label, _, row) in &rows {
                let mut rec = vec![gid.clone(), v.to_string(), label_name(*label)];
                rec.extend(row.iter().map(Cell::text));
                w.write_record(&rec).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            if let Some(s) = &stats {
                let st: Map<String, Value> = names
                    .iter()
                    .zip(s)
                    .map(|(n, c)| (n.clone(), serde_json::to_value(c).unwrap()))
                    .collect();
                writeln!(out, "{}", json!({"transform": "log1p-zscore", "stats": st}))?;
            }
            for (gid, v, label, overflow, row) in &rows {
                let feats: Map<String, Value> = names.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                let mut rec = json!({"graph_id": gid, "vertex_id": v, "label": label_name(*label), "features": feats});
                if *overflow {
                    rec["overflow"] = json!(true);
                }
                writeln!(out, "{rec}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}
