//! The line-oriented `.stg` text format.
//!
//! ```text
//! # comment
//! stargraph <n_vertices> <n_edges>
//! vertex <id> <degree>
//! edge <id> <v>.<slot> <v>.<slot>
//! ```

use std::fmt::{self, Write};

use super::{HalfEdgeRef, StarGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .or_else(|_| err(line, format!("expected {what}, found `{token}`")))
}

fn half_edge(line: usize, token: &str) -> Result<HalfEdgeRef, ParseError> {
    let Some((v, s)) = token.split_once('.') else {
        return err(line, format!("expected <vertex>.<slot>, found `{token}`"));
    };
    Ok(HalfEdgeRef::new(
        number(line, v, "vertex id")?,
        number(line, s, "slot")?,
    ))
}

/// Parses `.stg` text. Structural problems that are representable (bad
/// degrees, uncovered slots) are left for [`super::validate`].
pub fn parse_stg(text: &str) -> Result<StarGraph, ParseError> {
    let mut g = StarGraph::new();
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edge_lines = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match (tokens[0], header.is_some()) {
            ("stargraph", false) => {
                if tokens.len() != 3 {
                    return err(line, "expected `stargraph <n_vertices> <n_edges>`");
                }
                let n = number(line, tokens[1], "vertex count")?;
                let m = number(line, tokens[2], "edge count")?;
                header = Some((line, n, m));
            }
            ("stargraph", true) => return err(line, "duplicate `stargraph` header"),
            (_, false) => return err(line, "expected `stargraph` header first"),
            ("vertex", true) => {
                if tokens.len() != 3 {
                    return err(line, "expected `vertex <id> <degree>`");
                }
                let id = number(line, tokens[1], "vertex id")?;
                let degree = number(line, tokens[2], "degree")?;
                if !g.insert_vertex(id, degree) {
                    return err(line, format!("duplicate vertex id {id}"));
                }
            }
            ("edge", true) => {
                if tokens.len() != 4 {
                    return err(line, "expected `edge <id> <v>.<slot> <v>.<slot>`");
                }
                let id = number(line, tokens[1], "edge id")?;
                let a = half_edge(line, tokens[2])?;
                let b = half_edge(line, tokens[3])?;
                if !g.insert_edge(id, a, b) {
                    return err(line, format!("duplicate edge id {id}"));
                }
                edge_lines.push((line, a, b));
            }
            (other, true) => return err(line, format!("unknown directive `{other}`")),
        }
    }

    let Some((hline, n, m)) = header else {
        return err(text.lines().count().max(1), "missing `stargraph` header");
    };
    for (line, a, b) in edge_lines {
        for h in [a, b] {
            if g.degree(h.vertex).is_none() {
                return err(
                    line,
                    format!("edge references undeclared vertex {}", h.vertex),
                );
            }
        }
    }
    if g.vertex_count() != n {
        return err(
            hline,
            format!("header declares {n} vertices, found {}", g.vertex_count()),
        );
    }
    if g.edge_count() != m {
        return err(
            hline,
            format!("header declares {m} edges, found {}", g.edge_count()),
        );
    }
    Ok(g)
}

/// Serializes vertices then edges in ascending id order.
pub fn to_stg(g: &StarGraph) -> String {
    let mut out = String::new();
    writeln!(out, "stargraph {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (v, d) in g.vertices() {
        writeln!(out, "vertex {v} {d}").unwrap();
    }
    for (e, [a, b]) in g.edges() {
        writeln!(out, "edge {e} {a} {b}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const G8: &str = "stargraph 1 2\nvertex 0 4\nedge 0 0.0 0.1\nedge 1 0.2 0.3\n";

    #[test]
    fn g8_text_round_trips() {
        let g = parse_stg(G8).unwrap();
        assert_eq!(g, fixtures::g8());
        assert_eq!(to_stg(&g), G8);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# a figure eight\n\nstargraph 1 2\n  # indented\nvertex 0 4\nedge 1 0.2 0.3\nedge 0 0.0 0.1\n";
        assert_eq!(parse_stg(text).unwrap(), fixtures::g8());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_stg("stargraph 1 1\nvertex 0 4\nedge 0 0.0 0x1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_stg("vertex 0 4\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_stg("stargraph 2 0\nvertex 0 4\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_stg("stargraph 1 1\nvertex 0 4\nedge 0 0.0 5.1\n").unwrap_err();
        assert_eq!(
            (e.line, e.message.as_str()),
            (3, "edge references undeclared vertex 5")
        );
        let e = parse_stg("stargraph 1 0\nvertex 0 4\nvertex 0 6\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_stg("stargraph 1 0\nvertx 0 4\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: unknown directive `vertx`");
    }

    #[test]
    fn arbitrary_ids_survive() {
        let text = "stargraph 1 2\nvertex 90000000000 4\nedge 3 90000000000.2 90000000000.3\nedge 17 90000000000.0 90000000000.1\n";
        let g = parse_stg(text).unwrap();
        assert_eq!(to_stg(&g), text);
    }
}
