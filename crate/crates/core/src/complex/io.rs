//! Plain-text complex format: one facet per line, whitespace-separated
//! vertex tokens, `#` comments.
//!
//! When every token is a non-negative integer the tokens are the vertex ids.
//! Otherwise ids follow the sorted order of the distinct tokens and the
//! tokens are kept as labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::{Simplex, SimplicialComplex};
use crate::graph::io::{content_lines, ParseError};
use crate::graph::Vertex;

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let distinct: BTreeSet<&str> = tokens.iter().copied().collect();
        if distinct.len() != tokens.len() {
            return Err(ParseError::new(line, "repeated vertex in a facet"));
        }
        rows.push((line, tokens));
    }
    let numeric = rows
        .iter()
        .flat_map(|(_, t)| t)
        .all(|t| t.parse::<Vertex>().is_ok());
    if numeric {
        let facets: Vec<Simplex> = rows
            .iter()
            .map(|(_, t)| t.iter().map(|s| s.parse().expect("checked numeric")).collect())
            .collect();
        return Ok(SimplicialComplex::from_facets(facets));
    }
    let ids: BTreeMap<&str, Vertex> = rows
        .iter()
        .flat_map(|(_, t)| t.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    let facets: Vec<Simplex> = rows
        .iter()
        .map(|(_, t)| t.iter().map(|s| ids[s]).collect())
        .collect();
    let labels = ids.iter().map(|(t, &v)| (v, t.to_string())).collect();
    Ok(SimplicialComplex::from_facets(facets).with_labels(labels))
}

/// Facets in sorted order, vertices as tokens.
pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    for facet in k.facets() {
        let tokens: Vec<String> = facet.iter().map(|&v| k.token(v)).collect();
        writeln!(out, "{}", tokens.join(" ")).expect("writing to a string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_round_trip() {
        let k = parse_complex("# torus piece\n0 1 2\n2 3\n\n4 # lone vertex\n").unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2], vec![2, 3], vec![4]]);
        assert_eq!(write_complex(&k), "0 1 2\n2 3\n4\n");
        assert_eq!(parse_complex(&write_complex(&k)).unwrap(), k);
    }

    #[test]
    fn labelled_tokens() {
        let k = parse_complex("a b c\nc d\n").unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(k.token(3), "d");
        let bd = SimplicialComplex::simplex(1).barycentric(100).unwrap();
        assert_eq!(parse_complex(&write_complex(&bd)).unwrap(), bd);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_complex("0 1\n1 1\n").unwrap_err().line, 2);
        assert!(parse_complex("").unwrap().is_empty());
    }
}
