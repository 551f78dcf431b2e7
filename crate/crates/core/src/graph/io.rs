//! JSON interchange: one graph per line, `{"id","n","labels"?,"edges","root"?,"meta"?}`.

use std::io::BufRead;

use serde::Serialize;
use serde_json::{Map, Value};

use super::{Graph, LabelAlphabet, RootedPattern};
use crate::error::{Error, Result};

fn malformed(field: &'static str, message: impl Into<String>) -> Error {
    Error::Malformed {
        field,
        message: message.into(),
    }
}

fn label_key(v: &Value) -> Result<String> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(malformed("labels", format!("unsupported label {other}"))),
    }
}

fn graph_from_object(obj: &Map<String, Value>, alphabet: &mut LabelAlphabet) -> Result<Graph> {
    let id = match obj.get("id") {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        Some(_) => return Err(malformed("id", "expected a string")),
        None => return Err(malformed("id", "missing")),
    };
    let n = obj
        .get("n")
        .ok_or_else(|| malformed("n", "missing"))?
        .as_u64()
        .ok_or_else(|| malformed("n", "expected a non-negative integer"))?;
    if n > i32::MAX as u64 {
        return Err(malformed("n", "more than 2^31 vertices"));
    }
    let n = n as usize;
    let labels = match obj.get("labels") {
        None | Some(Value::Null) => vec![0; n],
        Some(Value::Array(items)) => {
            if items.len() != n {
                return Err(Error::LabelCount {
                    expected: n,
                    found: items.len(),
                });
            }
            items
                .iter()
                .map(|v| label_key(v).map(|k| alphabet.intern(&k)))
                .collect::<Result<Vec<_>>>()?
        }
        Some(_) => return Err(malformed("labels", "expected an array")),
    };
    let raw_edges = obj
        .get("edges")
        .ok_or_else(|| malformed("edges", "missing"))?
        .as_array()
        .ok_or_else(|| malformed("edges", "expected an array"))?;
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (index, e) in raw_edges.iter().enumerate() {
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| malformed("edges", format!("edges[{index}] is not a pair")))?;
        let mut ends = [0usize; 2];
        for (slot, x) in pair.iter().enumerate() {
            let x = x
                .as_i64()
                .ok_or_else(|| malformed("edges", format!("edges[{index}] has a non-integer endpoint")))?;
            if x < 0 || x as usize >= n {
                return Err(Error::EndpointOutOfRange { index, endpoint: x, n });
            }
            ends[slot] = x as usize;
        }
        edges.push((ends[0], ends[1]));
    }
    let mut g = Graph::with_labels(id, labels, &edges)?;
    if let Some(meta) = obj.get("meta") {
        if !meta.is_null() {
            g = g.with_meta(meta.clone());
        }
    }
    Ok(g)
}

fn pattern_from_object(obj: &Map<String, Value>, alphabet: &mut LabelAlphabet) -> Result<RootedPattern> {
    let g = graph_from_object(obj, alphabet)?;
    let root = match obj.get("root") {
        None | Some(Value::Null) => return Err(Error::MissingRoot),
        Some(v) => v.as_i64().ok_or_else(|| malformed("root", "expected an integer"))?,
    };
    if root < 0 || root as usize >= g.n() {
        return Err(Error::RootOutOfRange { root, n: g.n() });
    }
    RootedPattern::new(g, root as usize)
}

fn parse_object(line: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(line) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(malformed("record", "expected a JSON object")),
        Err(e) => Err(malformed("record", e.to_string())),
    }
}

/// Parses one graph record.
pub fn parse_graph(line: &str, alphabet: &mut LabelAlphabet) -> Result<Graph> {
    graph_from_object(&parse_object(line)?, alphabet)
}

/// Parses one pattern record (a graph record with `root`).
pub fn parse_pattern(line: &str, alphabet: &mut LabelAlphabet) -> Result<RootedPattern> {
    pattern_from_object(&parse_object(line)?, alphabet)
}

/// Parses a pattern-set document: a JSON array of pattern records, a single record, or one
/// record per line.
pub fn parse_pattern_set(text: &str, alphabet: &mut LabelAlphabet) -> Result<Vec<RootedPattern>> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, item)| {
                let obj = item
                    .as_object()
                    .ok_or_else(|| malformed("record", format!("pattern {i} is not an object")))?;
                pattern_from_object(obj, alphabet).map_err(|e| e.at_line(i + 1))
            })
            .collect(),
        Ok(Value::Object(obj)) => Ok(vec![pattern_from_object(&obj, alphabet)?]),
        Ok(_) => Err(malformed("record", "expected an array of patterns")),
        // one record per line is accepted too
        Err(e) if e.is_data() || e.is_syntax() && text.trim_start().starts_with('{') => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| parse_pattern(l, alphabet).map_err(|e| e.at_line(i + 1)))
            .collect(),
        Err(e) => Err(malformed("record", e.to_string())),
    }
}

/// Reads a JSON Lines graph stream. Blank lines are skipped; errors carry 1-based line numbers.
pub fn read_graphs<R: BufRead>(reader: R, alphabet: &mut LabelAlphabet) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_graph(&line, alphabet).map_err(|e| e.at_line(i + 1))?);
    }
    Ok(out)
}

/// Reads a JSON Lines graph file from disk.
pub fn read_graph_file(path: &std::path::Path, alphabet: &mut LabelAlphabet) -> Result<Vec<Graph>> {
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_graphs(std::io::BufReader::new(file), alphabet)
}

/// Reads a pattern-set file from disk.
pub fn read_pattern_file(path: &std::path::Path, alphabet: &mut LabelAlphabet) -> Result<Vec<RootedPattern>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_pattern_set(&text, alphabet)
}

#[derive(Serialize)]
struct Record<'a> {
    id: &'a str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Value>>,
    edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    root: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<&'a Value>,
}

fn record<'a>(g: &'a Graph, alphabet: &LabelAlphabet, root: Option<usize>) -> Record<'a> {
    let labels = if g.labels().iter().all(|&l| l == 0) {
        None
    } else {
        Some(
            g.labels()
                .iter()
                .map(|&l| {
                    let name = alphabet.name(l).map(str::to_string).unwrap_or_else(|| l.to_string());
                    match name.parse::<i64>() {
                        Ok(x) => Value::from(x),
                        Err(_) => Value::String(name),
                    }
                })
                .collect(),
        )
    };
    Record {
        id: g.id(),
        n: g.n(),
        labels,
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        root,
        meta: g.meta(),
    }
}

/// One JSON line (no trailing newline).
pub fn serialize_graph(g: &Graph, alphabet: &LabelAlphabet) -> String {
    serde_json::to_string(&record(g, alphabet, None)).expect("graph record serializes")
}

pub fn serialize_pattern(p: &RootedPattern, alphabet: &LabelAlphabet) -> String {
    serde_json::to_string(&record(p.graph(), alphabet, Some(p.root()))).expect("pattern record serializes")
}
