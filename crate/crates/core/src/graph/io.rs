//! Plain-text graph format.
//!
//! ```text
//! # comment
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```
//!
//! Vertices without edges are implied by `n`.

use std::fmt::Write as _;

use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn two_numbers(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(ParseError::new(
            line_no,
            format!("expected two integers, found {} fields", fields.len()),
        ));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| ParseError::new(line_no, format!("`{s}` is not a non-negative integer")))
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `n m` header"))?;
    let (n, m) = two_numbers(header_line, header)?;
    let mut g = Graph::empty(n);
    let mut last_line = header_line;
    for _ in 0..m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| ParseError::new(last_line + 1, format!("expected {m} edge lines")))?;
        last_line = line_no;
        let (u, v) = two_numbers(line_no, line)?;
        if u >= v || v >= n {
            return Err(ParseError::new(
                line_no,
                format!("edge `{u} {v}` must satisfy 0 <= u < v < {n}"),
            ));
        }
        if g.has_edge(u, v) {
            return Err(ParseError::new(line_no, format!("duplicate edge `{u} {v}`")));
        }
        g.link(u, v);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(ParseError::new(line_no, "unexpected content after edge list"));
    }
    Ok(g)
}

/// Writes `g` re-indexed densely in ascending id order; edges sorted.
pub fn write_graph(g: &Graph) -> String {
    let dense = if g.max_vertex().map_or(0, |m| m + 1) == g.vertex_count() {
        g.clone()
    } else {
        g.induced(&g.vertex_set().clone())
            .expect("vertex set is a subset of itself")
    };
    let mut out = format!("{} {}\n", dense.vertex_count(), dense.edge_count());
    for (u, v) in dense.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write() {
        let g = parse_graph("# path\n4 3\n0 1\n1 2 # middle\n2 3\n").unwrap();
        assert_eq!(g, Graph::path(4));
        assert_eq!(write_graph(&g), "4 3\n0 1\n1 2\n2 3\n");
        let g = parse_graph("3 0\n").unwrap();
        assert_eq!(g, Graph::empty(3));
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert_eq!(parse_graph("").unwrap_err().line, 1);
        assert_eq!(parse_graph("3 1\n\n2 1\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("3 1\n0 x\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("3 2\n0 1\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("3 1\n0 1\n1 2\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("3 2\n0 1\n0 1\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("2 1\n0 2\n").unwrap_err().line, 2);
    }

    #[test]
    fn writer_compacts_gaps() {
        let g = Graph::path(4).without_vertex(0);
        assert_eq!(write_graph(&g), "3 2\n0 1\n1 2\n");
    }
}
