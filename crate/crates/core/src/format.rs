//! Whitespace-delimited text formats. Every writer's output parses back to an
//! equal value, and writing that value again reproduces the same bytes.
//!
//! Graph / instance file:
//!
//! ```text
//! p da <n> <m>
//! e <u> <v>            m lines, u < v, sorted
//! t <v> <Role[:p]>     only for non-default tags
//! k <budget>           optional
//! f <v>                optional, forbidden vertices
//! ```
//!
//! Lines starting with `c` and blank lines are ignored by the parsers.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::circle::ChordDiagram;
use crate::graph::{Graph, RoleTag, VertexId};
use crate::reductions::{GadgetMap, MrssInstance, RbdsInstance};
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: id {id} out of range (limit {limit})")]
    OutOfRange { line: usize, id: u64, limit: usize },
    #[error("line {line}: duplicate {what}")]
    Duplicate { line: usize, what: String },
    #[error("invalid instance: {0}")]
    Invalid(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Content lines with 1-based line numbers, comments and blanks dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

fn number<T: std::str::FromStr>(line: usize, field: &str) -> Result<T, ParseError> {
    field
        .parse()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, got `{field}`")))
}

fn arity(line: usize, fields: &[&str], want: usize) -> Result<(), ParseError> {
    if fields.len() != want {
        return Err(syntax(
            line,
            format!("`{}` expects {} fields, got {}", fields[0], want - 1, fields.len() - 1),
        ));
    }
    Ok(())
}

fn vertex(line: usize, field: &str, n: usize) -> Result<VertexId, ParseError> {
    let id: u64 = number(line, field)?;
    if id >= n as u64 {
        return Err(ParseError::OutOfRange { line, id, limit: n });
    }
    Ok(VertexId::from(id as usize))
}

/// A parsed graph file, optionally carrying a budget and a forbidden set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub budget: Option<usize>,
    pub forbidden: Vec<VertexId>,
}

impl GraphFile {
    pub fn forbidden_set(&self) -> VertexSet {
        self.graph.set_of(self.forbidden.iter().copied())
    }
}

pub fn write_graph(g: &Graph) -> String {
    write_instance(g, None, &[])
}

pub fn write_instance(g: &Graph, budget: Option<usize>, forbidden: &[VertexId]) -> String {
    let mut out = String::new();
    writeln!(out, "p da {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for v in g.vertices() {
        let tag = g.tag(v);
        if !tag.is_default() {
            writeln!(out, "t {v} {tag}").unwrap();
        }
    }
    if let Some(k) = budget {
        writeln!(out, "k {k}").unwrap();
    }
    let mut f = forbidden.to_vec();
    f.sort_unstable();
    for v in f {
        writeln!(out, "f {v}").unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "da" {
        return Err(syntax(line, "expected header `p da <n> <m>`"));
    }
    let n: usize = number(line, header[2])?;
    let m: usize = number(line, header[3])?;
    let mut g = Graph::with_vertices(n);
    let mut tagged = BTreeSet::new();
    let mut budget = None;
    let mut forbidden = BTreeSet::new();
    for (line, fields) in lines {
        match fields[0] {
            "e" => {
                arity(line, &fields, 3)?;
                let u = vertex(line, fields[1], n)?;
                let v = vertex(line, fields[2], n)?;
                if u == v {
                    return Err(syntax(line, format!("self-loop on {u}")));
                }
                if g.has_edge(u, v) {
                    return Err(ParseError::Duplicate {
                        line,
                        what: format!("edge ({u}, {v})"),
                    });
                }
                g.add_edge(u, v).expect("checked above");
            }
            "t" => {
                arity(line, &fields, 3)?;
                let v = vertex(line, fields[1], n)?;
                let tag: RoleTag = fields[2].parse().map_err(|e| syntax(line, format!("{e}")))?;
                if !tagged.insert(v) {
                    return Err(ParseError::Duplicate {
                        line,
                        what: format!("tag for {v}"),
                    });
                }
                g.set_tag(v, tag).expect("checked above");
            }
            "k" => {
                arity(line, &fields, 2)?;
                if budget.replace(number(line, fields[1])?).is_some() {
                    return Err(ParseError::Duplicate {
                        line,
                        what: "budget".into(),
                    });
                }
            }
            "f" => {
                arity(line, &fields, 2)?;
                let v = vertex(line, fields[1], n)?;
                if !forbidden.insert(v) {
                    return Err(ParseError::Duplicate {
                        line,
                        what: format!("forbidden vertex {v}"),
                    });
                }
            }
            other => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
    }
    if g.edge_count() != m {
        return Err(syntax(
            line,
            format!("header declares {m} edges, found {}", g.edge_count()),
        ));
    }
    Ok(GraphFile {
        graph: g,
        budget,
        forbidden: forbidden.into_iter().collect(),
    })
}

pub fn write_mrss(inst: &MrssInstance) -> String {
    let mut out = String::new();
    writeln!(out, "mrss {} {} {}", inst.dims, inst.vectors.len(), inst.max_picks).unwrap();
    let row = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    writeln!(out, "{}", row(&inst.target)).unwrap();
    for v in &inst.vectors {
        writeln!(out, "{}", row(v)).unwrap();
    }
    out
}

pub fn parse_mrss(text: &str) -> Result<MrssInstance, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
    if header.len() != 4 || header[0] != "mrss" {
        return Err(syntax(line, "expected header `mrss <k> <n> <k'>`"));
    }
    let dims: usize = number(line, header[1])?;
    let n: usize = number(line, header[2])?;
    let picks: usize = number(line, header[3])?;
    let mut rows = Vec::with_capacity(n + 1);
    for (line, fields) in lines {
        if fields.len() != dims {
            return Err(syntax(line, format!("expected {dims} entries, got {}", fields.len())));
        }
        let row = fields
            .iter()
            .map(|f| number::<u64>(line, f))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != n + 1 {
        return Err(syntax(
            line,
            format!("expected a target and {n} vectors, got {} rows", rows.len()),
        ));
    }
    let target = rows.remove(0);
    MrssInstance::new(rows, target, picks).map_err(|e| ParseError::Invalid(e.to_string()))
}

pub fn write_rbds(inst: &RbdsInstance) -> String {
    let mut out = String::new();
    writeln!(out, "rbds {} {} {}", inst.terminals, inst.sources, inst.budget).unwrap();
    for (t, s) in &inst.edges {
        writeln!(out, "e {t} {s}").unwrap();
    }
    out
}

pub fn parse_rbds(text: &str) -> Result<RbdsInstance, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
    if header.len() != 4 || header[0] != "rbds" {
        return Err(syntax(line, "expected header `rbds <|T|> <|S|> <k>`"));
    }
    let terminals: usize = number(line, header[1])?;
    let sources: usize = number(line, header[2])?;
    let budget: usize = number(line, header[3])?;
    let mut edges = BTreeSet::new();
    for (line, fields) in lines {
        if fields[0] != "e" {
            return Err(syntax(line, format!("unknown line type `{}`", fields[0])));
        }
        arity(line, &fields, 3)?;
        let t = vertex(line, fields[1], terminals)?.index();
        let s = vertex(line, fields[2], sources)?.index();
        if !edges.insert((t, s)) {
            return Err(ParseError::Duplicate {
                line,
                what: format!("edge ({t}, {s})"),
            });
        }
    }
    RbdsInstance::new(terminals, sources, edges.into_iter().collect(), budget)
        .map_err(|e| ParseError::Invalid(e.to_string()))
}

/// `d <tokens>` and an optional `k <budget>` line.
pub fn write_diagram(d: &ChordDiagram, budget: Option<usize>) -> String {
    let mut out = String::from("d");
    for t in d.tokens() {
        out.push(' ');
        out.push_str(t);
    }
    out.push('\n');
    if let Some(k) = budget {
        writeln!(out, "k {k}").unwrap();
    }
    out
}

pub fn parse_diagram(text: &str) -> Result<(ChordDiagram, Option<usize>), ParseError> {
    let mut lines = content_lines(text);
    let (line, fields) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
    if fields[0] != "d" {
        return Err(syntax(line, "expected `d <tokens>`"));
    }
    let diagram =
        ChordDiagram::from_tokens(&fields[1..]).map_err(|e| syntax(line, e.to_string()))?;
    let mut budget = None;
    for (line, fields) in lines {
        if fields[0] != "k" || budget.is_some() {
            return Err(syntax(line, "only a single `k <budget>` line may follow the diagram"));
        }
        arity(line, &fields, 2)?;
        budget = Some(number(line, fields[1])?);
    }
    Ok((diagram, budget))
}

/// One line per family: the name, then the member ids.
pub fn write_gadget_map(map: &dyn GadgetMap) -> String {
    let mut out = String::new();
    for family in map.families() {
        out.push_str(&family.name);
        for v in &family.members {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Space-separated vertex ids.
pub fn write_set(s: &VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses ids separated by whitespace or commas; rejects duplicates and ids
/// outside `0..n`.
pub fn parse_set(text: &str, n: usize) -> Result<VertexSet, ParseError> {
    let mut set = VertexSet::empty(n);
    for field in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty()) {
        let v = vertex(1, field, n)?;
        if !set.insert(v) {
            return Err(ParseError::Duplicate {
                line: 1,
                what: format!("vertex {v}"),
            });
        }
    }
    Ok(set)
}
