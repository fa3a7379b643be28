//! Plain-text formats. Output is canonical with LF line endings; input is
//! read leniently (blank lines and `#` comments skipped, extra whitespace
//! ignored).
//!
//! Building set: `n <int>`, then one set per line as space-separated labels.
//! Graph: `n <int>`, then one edge `u v` per line.
//! Ordering: `n <int>`, `D:` with one set per line, `order:` likewise.
//! Complex: `vertices <k>` with one label per line, then `edges <m>` with
//! 1-based index pairs.

use std::fmt::{self, Write as _};
use std::hash::Hash;

use thiserror::Error;

use crate::gammacomplex::{ComplexError, FlagComplex};
use crate::ordering::{FlagOrdering, OrderingError};
use crate::setcore::{
    make_building_set, BuildingSet, Decomposition, ElementSet, SetError, SimpleGraph,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header `{0}`")]
    MissingHeader(&'static str),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Ordering(#[from] OrderingError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: Option<(usize, &str)>) -> Result<usize, FormatError> {
    let (no, l) = line.ok_or(FormatError::MissingHeader("n"))?;
    let mut parts = l.split_whitespace();
    if parts.next() != Some("n") {
        return Err(FormatError::MissingHeader("n"));
    }
    let value = parts
        .next()
        .ok_or_else(|| syntax(no, "expected `n <int>`"))?;
    if parts.next().is_some() {
        return Err(syntax(no, "trailing text after `n <int>`"));
    }
    value
        .parse()
        .map_err(|_| syntax(no, format!("bad size {value:?}")))
}

fn parse_labels(no: usize, l: &str) -> Result<Vec<usize>, FormatError> {
    l.split(|c: char| c.is_whitespace() || c == ',' || c == '{' || c == '}')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| syntax(no, format!("bad label {t:?}")))
        })
        .collect()
}

fn parse_set(no: usize, l: &str) -> Result<ElementSet, FormatError> {
    let labels = parse_labels(no, l)?;
    if labels.is_empty() {
        return Err(syntax(no, "empty set"));
    }
    Ok(ElementSet::try_from_elements(labels)?)
}

fn set_line(s: ElementSet) -> String {
    s.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_building_set(text: &str) -> Result<BuildingSet, FormatError> {
    let mut lines = content_lines(text);
    let n = parse_header(lines.next())?;
    let family = lines
        .map(|(no, l)| parse_set(no, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(make_building_set(n, &family)?)
}

pub fn write_building_set(b: &BuildingSet) -> String {
    let mut s = format!("n {}\n", b.n());
    for &m in b.members() {
        let _ = writeln!(s, "{}", set_line(m));
    }
    s
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph, FormatError> {
    let mut lines = content_lines(text);
    let n = parse_header(lines.next())?;
    let mut g = SimpleGraph::new(n)?;
    for (no, l) in lines {
        match parse_labels(no, l)?[..] {
            [u, v] => g.add_edge(u, v)?,
            _ => return Err(syntax(no, "expected an edge `u v`")),
        }
    }
    Ok(g)
}

pub fn write_graph(g: &SimpleGraph) -> String {
    let mut s = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_ordering(text: &str) -> Result<FlagOrdering, FormatError> {
    let mut lines = content_lines(text);
    let n = parse_header(lines.next())?;
    let mut decomposition = Vec::new();
    let mut order = Vec::new();
    let mut section = None;
    for (no, l) in lines {
        let lower = l.to_ascii_lowercase();
        match lower.trim_end_matches(':').trim() {
            "d" => section = Some(false),
            "order" => section = Some(true),
            _ => match section {
                Some(false) => decomposition.push(parse_set(no, l)?),
                Some(true) => order.push(parse_set(no, l)?),
                None => return Err(FormatError::MissingHeader("D:")),
            },
        }
    }
    if section.is_none() {
        return Err(FormatError::MissingHeader("D:"));
    }
    let family: Vec<ElementSet> = decomposition.iter().chain(&order).copied().collect();
    let bset = make_building_set(n, &family)?;
    let decomposition = Decomposition::new(bset.ground(), decomposition)?;
    Ok(FlagOrdering::new(bset, decomposition, order)?)
}

pub fn write_ordering(o: &FlagOrdering) -> String {
    let mut s = format!("n {}\nD:\n", o.building_set().n());
    for &d in o.decomposition().members() {
        let _ = writeln!(s, "{}", set_line(d));
    }
    s.push_str("order:\n");
    for &b in o.order() {
        let _ = writeln!(s, "{}", set_line(b));
    }
    s
}

pub fn write_complex<L>(g: &FlagComplex<L>) -> String
where
    L: Clone + Eq + Hash + fmt::Debug + fmt::Display,
{
    let mut s = format!("vertices {}\n", g.num_vertices());
    for l in g.labels() {
        let _ = writeln!(s, "{l}");
    }
    let edges = g.edges();
    let _ = writeln!(s, "edges {}", edges.len());
    for (i, j) in edges {
        let _ = writeln!(s, "{} {}", i + 1, j + 1);
    }
    s
}

fn counted_header(line: Option<(usize, &str)>, key: &'static str) -> Result<usize, FormatError> {
    let (no, l) = line.ok_or(FormatError::MissingHeader(key))?;
    match l.split_whitespace().collect::<Vec<_>>()[..] {
        [k, count] if k == key => count
            .parse()
            .map_err(|_| syntax(no, format!("bad count {count:?}"))),
        _ => Err(FormatError::MissingHeader(key)),
    }
}

/// Labels are kept as their text.
pub fn parse_complex(text: &str) -> Result<FlagComplex<String>, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let k = counted_header(lines.next(), "vertices")?;
    let mut labels = Vec::with_capacity(k);
    for _ in 0..k {
        let (_, l) = lines
            .next()
            .ok_or_else(|| syntax(0, "fewer labels than declared"))?;
        labels.push(l.to_string());
    }
    let m = counted_header(lines.next(), "edges")?;
    let mut g = FlagComplex::new(labels)?;
    for _ in 0..m {
        let (no, l) = lines
            .next()
            .ok_or_else(|| syntax(0, "fewer edges than declared"))?;
        match parse_labels(no, l)?[..] {
            [i, j] if i >= 1 && j >= 1 => g.add_edge(i - 1, j - 1)?,
            _ => return Err(syntax(no, "expected a 1-based pair `i j`")),
        }
    }
    if let Some((no, _)) = lines.next() {
        return Err(syntax(no, "more edges than declared"));
    }
    Ok(g)
}

pub fn to_dot<L>(g: &FlagComplex<L>) -> String
where
    L: Clone + Eq + Hash + fmt::Debug + fmt::Display,
{
    let mut s = String::from("graph G {\n");
    for (i, l) in g.labels().iter().enumerate() {
        let label = l.to_string().replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(s, "  v{} [label=\"{label}\"];", i + 1);
    }
    for (i, j) in g.edges() {
        let _ = writeln!(s, "  v{} -- v{};", i + 1, j + 1);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eset;
    use crate::gammacomplex::build_gamma_complex;
    use crate::ordering::ordering_pathn;
    use crate::setcore::graphical_building_set;

    #[test]
    fn building_set_round_trip() {
        let b = graphical_building_set(&SimpleGraph::cycle(4).unwrap());
        let text = write_building_set(&b);
        assert!(text.starts_with("n 4\n1\n2\n3\n4\n1 2\n"));
        assert_eq!(parse_building_set(&text).unwrap(), b);
        let lenient = "# comment\n\n  n   3 \n 1  2\n\n2 3\n1 2 3\n";
        assert_eq!(parse_building_set(lenient).unwrap().len(), 6);
    }

    #[test]
    fn building_set_errors() {
        assert!(matches!(
            parse_building_set("1 2\n"),
            Err(FormatError::MissingHeader("n"))
        ));
        assert!(matches!(
            parse_building_set("n 3\n1 2\n2 3\n"),
            Err(FormatError::Set(SetError::UnionAxiomViolation { .. }))
        ));
        assert!(matches!(
            parse_building_set("n 3\n1 x\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(parse_building_set("n 3\n1 4\n").is_err());
    }

    #[test]
    fn graph_round_trip() {
        let g = SimpleGraph::cycle(5).unwrap();
        let text = write_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert!(parse_graph("n 3\n1 1\n").is_err());
        assert!(parse_graph("n 3\n1 2 3\n").is_err());
    }

    #[test]
    fn ordering_round_trip() {
        let o = ordering_pathn(5).unwrap();
        let text = write_ordering(&o);
        assert!(text.contains("D:\n") && text.contains("order:\n2 3\n2 3 4\n"));
        assert_eq!(parse_ordering(&text).unwrap(), o);
        let bad = "n 3\nD:\n1\n2\n3\n1 2\n1 2 3\norder:\n2 3\n2 3\n";
        assert!(parse_ordering(bad).is_err());
    }

    #[test]
    fn complex_round_trip_and_dot() {
        let g = build_gamma_complex(&ordering_pathn(5).unwrap());
        let text = write_complex(&g);
        assert!(text.starts_with("vertices 6\n{2,3}\n"));
        let parsed = parse_complex(&text).unwrap();
        assert_eq!(parsed.edges(), g.edges());
        assert_eq!(write_complex(&parsed), text);
        let dot = to_dot(&g);
        assert!(dot.starts_with("graph G {\n  v1 [label=\"{2,3}\"];\n"));
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert!(parse_complex("vertices 1\na\nedges 1\n1 1\n").is_err());
        assert!(parse_complex("vertices 2\na\nb\nedges 0\n1 2\n").is_err());
        assert_eq!(eset![2, 3].to_string(), "{2,3}");
    }
}
