//! Plain-text formats and DOT export.
//!
//! Graph files start with a line `n m` followed by `m` lines `u v`, one arc
//! each. Coloring files hold `v c` per line and interval files `v l_v` per
//! line. In every format `#` starts a comment and blank lines are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::chordal::{ChordalError, UnitIntervalRepresentation, ENDPOINT_SCALE};
use crate::coloring::{ColoringError, Dicoloring};
use crate::digraph::{Digraph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("expected {expected} arcs, found {found}")]
    ArcCount { expected: usize, found: usize },
    #[error("vertex {vertex} assigned twice")]
    Duplicate { vertex: usize },
    #[error("vertex {vertex} outside 0..{n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Chordal(#[from] ChordalError),
}

/// Non-comment lines with their 1-based line numbers, split into fields.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn field<T: std::str::FromStr>(line: usize, fields: &[&str], i: usize, what: &str) -> Result<T, IoError> {
    fields
        .get(i)
        .ok_or_else(|| IoError::Parse { line, msg: format!("missing {what}") })?
        .parse()
        .map_err(|_| IoError::Parse { line, msg: format!("invalid {what} {:?}", fields[i]) })
}

fn pair<A: std::str::FromStr, B: std::str::FromStr>(
    line: usize,
    fields: &[&str],
    what: (&str, &str),
) -> Result<(A, B), IoError> {
    if fields.len() != 2 {
        return Err(IoError::Parse { line, msg: format!("expected 2 fields, found {}", fields.len()) });
    }
    Ok((field(line, fields, 0, what.0)?, field(line, fields, 1, what.1)?))
}

pub fn read_graph(text: &str) -> Result<Digraph, IoError> {
    let mut recs = records(text);
    let (line, header) = recs.next().ok_or(IoError::Parse { line: 1, msg: "missing header `n m`".into() })?;
    let (n, m): (usize, usize) = pair(line, &header, ("vertex count", "arc count"))?;
    let mut arcs = Vec::with_capacity(m);
    for (line, fields) in recs {
        arcs.push(pair::<usize, usize>(line, &fields, ("tail", "head"))?);
    }
    if arcs.len() != m {
        return Err(IoError::ArcCount { expected: m, found: arcs.len() });
    }
    Ok(Digraph::new(n, &arcs)?)
}

pub fn write_graph(d: &Digraph) -> String {
    let mut s = format!("{} {}\n", d.n(), d.arc_count());
    for (u, v) in d.arcs() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

/// Reads a coloring of an `n`-vertex digraph. The palette is one more than
/// the largest color used.
pub fn read_coloring(text: &str, n: usize) -> Result<Dicoloring, IoError> {
    let mut colors = vec![usize::MAX; n];
    for (line, fields) in records(text) {
        let (v, c): (usize, usize) = pair(line, &fields, ("vertex", "color"))?;
        if v >= n {
            return Err(IoError::OutOfRange { vertex: v, n });
        }
        if colors[v] != usize::MAX {
            return Err(IoError::Duplicate { vertex: v });
        }
        colors[v] = c;
    }
    let got = colors.iter().filter(|&&c| c != usize::MAX).count();
    if got < n {
        return Err(ColoringError::PartialColoring { expected: n, got }.into());
    }
    let palette = colors.iter().max().map_or(0, |&c| c + 1);
    Ok(Dicoloring::new(colors, palette)?)
}

pub fn write_coloring(c: &Dicoloring) -> String {
    let mut s = String::new();
    for (v, col) in c.colors().iter().enumerate() {
        writeln!(s, "{v} {col}").unwrap();
    }
    s
}

/// Reads left endpoints of unit intervals for an `n`-vertex digraph.
pub fn read_unit_intervals(text: &str, n: usize) -> Result<UnitIntervalRepresentation, IoError> {
    let mut left = vec![None; n];
    for (line, fields) in records(text) {
        let (v, l): (usize, f64) = pair(line, &fields, ("vertex", "left endpoint"))?;
        if v >= n {
            return Err(IoError::OutOfRange { vertex: v, n });
        }
        if left[v].replace(l).is_some() {
            return Err(IoError::Duplicate { vertex: v });
        }
    }
    let left: Vec<f64> = left
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or(IoError::Parse { line: 0, msg: format!("vertex {v} has no interval") }))
        .collect::<Result<_, _>>()?;
    Ok(UnitIntervalRepresentation::from_left_endpoints(&left)?)
}

/// Exact decimal rendering of a fixed-point endpoint.
fn ticks_to_decimal(t: i64) -> String {
    let sign = if t < 0 { "-" } else { "" };
    let a = t.unsigned_abs();
    let scale = ENDPOINT_SCALE as u64;
    let frac = format!("{:09}", a % scale);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{sign}{}", a / scale)
    } else {
        format!("{sign}{}.{frac}", a / scale)
    }
}

pub fn write_unit_intervals(rep: &UnitIntervalRepresentation) -> String {
    let mut s = String::new();
    for (v, &t) in rep.left_ticks().iter().enumerate() {
        writeln!(s, "{v} {}", ticks_to_decimal(t)).unwrap();
    }
    s
}

const DOT_PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf", "#999999",
    "#66c2a5", "#fc8d62", "#8da0cb",
];

/// Graphviz DOT. Vertices are filled by color class when a coloring is
/// given and grouped into clusters when `parts` assigns each vertex a part.
pub fn to_dot(d: &Digraph, coloring: Option<&Dicoloring>, parts: Option<&[usize]>) -> String {
    let mut s = String::from("digraph G {\n  node [shape=circle, style=filled, fillcolor=white];\n");
    let node = |s: &mut String, v: usize, indent: &str| {
        match coloring {
            Some(c) => {
                let col = c.color(v);
                writeln!(
                    s,
                    "{indent}{v} [label=\"{v}:{col}\", fillcolor=\"{}\"];",
                    DOT_PALETTE[col % DOT_PALETTE.len()]
                )
            }
            None => writeln!(s, "{indent}{v};"),
        }
        .unwrap()
    };
    match parts {
        Some(p) => {
            let count = p.iter().max().map_or(0, |&m| m + 1);
            for part in 0..count {
                writeln!(s, "  subgraph cluster_{part} {{\n    label=\"part {part}\";").unwrap();
                for v in (0..d.n()).filter(|&v| p.get(v) == Some(&part)) {
                    node(&mut s, v, "    ");
                }
                s.push_str("  }\n");
            }
            for v in (0..d.n()).filter(|&v| v >= p.len()) {
                node(&mut s, v, "  ");
            }
        }
        None => (0..d.n()).for_each(|v| node(&mut s, v, "  ")),
    }
    for (u, v) in d.arcs() {
        writeln!(s, "  {u} -> {v};").unwrap();
    }
    s.push_str("}\n");
    s
}
