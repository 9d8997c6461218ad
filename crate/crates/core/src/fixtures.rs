//! The shipped fixture corpus: small graphs and complexes with their
//! expected integral homology (of the clique complex, for graphs).

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::HomologyProfile;
use crate::complex::io::parse_complex;
use crate::complex::SimplicialComplex;
use crate::graph::io::{parse_graph, ParseError};
use crate::graph::Graph;

const MANIFEST: &str = include_str!("../fixtures/manifest.json");

const FILES: &[(&str, &str)] = &[
    ("k1.graph", include_str!("../fixtures/k1.graph")),
    ("path2.graph", include_str!("../fixtures/path2.graph")),
    ("path3.graph", include_str!("../fixtures/path3.graph")),
    ("path4.graph", include_str!("../fixtures/path4.graph")),
    ("path5.graph", include_str!("../fixtures/path5.graph")),
    ("cycle4.graph", include_str!("../fixtures/cycle4.graph")),
    ("cycle5.graph", include_str!("../fixtures/cycle5.graph")),
    ("cycle6.graph", include_str!("../fixtures/cycle6.graph")),
    ("cycle7.graph", include_str!("../fixtures/cycle7.graph")),
    ("cycle8.graph", include_str!("../fixtures/cycle8.graph")),
    ("wheel5.graph", include_str!("../fixtures/wheel5.graph")),
    ("wheel6.graph", include_str!("../fixtures/wheel6.graph")),
    ("octahedron.graph", include_str!("../fixtures/octahedron.graph")),
    ("point.complex", include_str!("../fixtures/point.complex")),
    ("edge.complex", include_str!("../fixtures/edge.complex")),
    ("triangle.complex", include_str!("../fixtures/triangle.complex")),
    ("hollow_triangle.complex", include_str!("../fixtures/hollow_triangle.complex")),
    ("tetrahedron_boundary.complex", include_str!("../fixtures/tetrahedron_boundary.complex")),
    ("simplex0.complex", include_str!("../fixtures/simplex0.complex")),
    ("simplex1.complex", include_str!("../fixtures/simplex1.complex")),
    ("simplex2.complex", include_str!("../fixtures/simplex2.complex")),
    ("simplex3.complex", include_str!("../fixtures/simplex3.complex")),
    ("simplex4.complex", include_str!("../fixtures/simplex4.complex")),
    ("simplex5.complex", include_str!("../fixtures/simplex5.complex")),
    ("path3_complex.complex", include_str!("../fixtures/path3_complex.complex")),
    ("path4_complex.complex", include_str!("../fixtures/path4_complex.complex")),
    ("torus7.complex", include_str!("../fixtures/torus7.complex")),
    ("rp2_6.complex", include_str!("../fixtures/rp2_6.complex")),
    ("dunce_hat8.complex", include_str!("../fixtures/dunce_hat8.complex")),
];

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Graph(Graph),
    Complex(SimplicialComplex),
}

impl Payload {
    /// The complex whose homology is recorded: `C(G)` for graphs.
    pub fn complex(&self) -> SimplicialComplex {
        match self {
            Payload::Graph(g) => SimplicialComplex::clique_complex(g),
            Payload::Complex(k) => k.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub payload: Payload,
    pub expected: HomologyProfile,
    pub notes: String,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("no fixture named `{0}`")]
    Unknown(String),
    #[error("fixture `{name}`: {source}")]
    Parse { name: String, source: ParseError },
    #[error("fixture `{0}` is a graph, not a complex")]
    NotAComplex(String),
    #[error("fixture `{0}` is a complex, not a graph")]
    NotAGraph(String),
}

#[derive(Deserialize)]
struct Entry {
    name: String,
    kind: String,
    file: String,
    expected: HomologyProfile,
    notes: String,
}

fn entries() -> Vec<Entry> {
    serde_json::from_str(MANIFEST).expect("manifest is valid JSON")
}

fn load(e: Entry) -> Result<Fixture, FixtureError> {
    let text = FILES
        .iter()
        .find(|(f, _)| *f == e.file)
        .map(|(_, t)| *t)
        .ok_or_else(|| FixtureError::Unknown(e.file.clone()))?;
    let parse_err = |source| FixtureError::Parse {
        name: e.name.clone(),
        source,
    };
    let payload = match e.kind.as_str() {
        "graph" => Payload::Graph(parse_graph(text).map_err(parse_err)?),
        _ => Payload::Complex(parse_complex(text).map_err(parse_err)?),
    };
    Ok(Fixture {
        name: e.name,
        payload,
        expected: e.expected,
        notes: e.notes,
    })
}

pub fn names() -> Vec<String> {
    entries().into_iter().map(|e| e.name).collect()
}

/// Every fixture, in manifest order.
pub fn all() -> Vec<Fixture> {
    entries().into_iter().map(|e| load(e).expect("shipped fixtures parse")).collect()
}

pub fn get(name: &str) -> Result<Fixture, FixtureError> {
    let e = entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| FixtureError::Unknown(name.to_string()))?;
    load(e)
}

pub fn graph(name: &str) -> Result<Graph, FixtureError> {
    match get(name)?.payload {
        Payload::Graph(g) => Ok(g),
        Payload::Complex(_) => Err(FixtureError::NotAGraph(name.to_string())),
    }
}

pub fn complex(name: &str) -> Result<SimplicialComplex, FixtureError> {
    match get(name)?.payload {
        Payload::Complex(k) => Ok(k),
        Payload::Graph(_) => Err(FixtureError::NotAComplex(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        let all = all();
        assert_eq!(all.len(), FILES.len());
        assert_eq!(graph("octahedron").unwrap(), Graph::octahedron());
        assert_eq!(graph("wheel5").unwrap(), Graph::wheel(5));
        assert_eq!(graph("cycle6").unwrap(), Graph::cycle(6));
        assert_eq!(complex("simplex3").unwrap(), SimplicialComplex::simplex(3));
        assert_eq!(complex("dunce_hat8").unwrap().facets().len(), 17);
        assert!(matches!(complex("k1"), Err(FixtureError::NotAComplex(_))));
        assert!(matches!(get("nope"), Err(FixtureError::Unknown(_))));
    }
}
