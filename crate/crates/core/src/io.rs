//! JSON and DOT formats. Mutation directions are 1-based in every external
//! format and 0-based in the library.

use std::fmt::Write;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exchange::{
    canonical_key, validate_fixed_data, AcyclicityCertificate, Edge, ExchangeError, FixedData, GraphStatus,
    OrientedExchangeGraph, TropicalSeed, Vertex,
};
use crate::group::PositiveVector;
use crate::matrix::{int_serde, IntMatrix};
use crate::rational::Rational;
use crate::scattering::{Crossing, CrossingSequence};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
    #[error("invalid document: {0}")]
    Invalid(String),
}

impl IoError {
    pub fn code(&self) -> &'static str {
        match self {
            IoError::Json(_) => "InvalidJson",
            IoError::Exchange(e) => e.code(),
            IoError::Invalid(_) => "InvalidInput",
        }
    }
}

/// `{"B": [[...]], "delta": [...], "D": [...]}` with `D` optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedDataJson {
    #[serde(rename = "B")]
    pub b: IntMatrix,
    #[serde(serialize_with = "int_serde::serialize_vec", deserialize_with = "int_serde::deserialize_vec")]
    pub delta: Vec<BigInt>,
    #[serde(
        rename = "D",
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_vec",
        deserialize_with = "deserialize_opt_vec"
    )]
    pub d: Option<Vec<BigInt>>,
}

fn serialize_opt_vec<S: serde::Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => int_serde::serialize_vec(v, s),
        None => s.serialize_none(),
    }
}

fn deserialize_opt_vec<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
    int_serde::deserialize_vec(d).map(Some)
}

impl FixedDataJson {
    pub fn from_data(fd: &FixedData) -> Self {
        FixedDataJson { b: fd.b().clone(), delta: fd.delta().to_vec(), d: Some(fd.symmetrizer().to_vec()) }
    }

    pub fn validate(&self) -> Result<FixedData, ExchangeError> {
        let fd = validate_fixed_data(self.b.clone(), self.delta.clone())?;
        match &self.d {
            Some(d) => fd.with_symmetrizer(d.clone()),
            None => Ok(fd),
        }
    }
}

pub fn parse_fixed_data(text: &str) -> Result<FixedData, IoError> {
    let json: FixedDataJson = serde_json::from_str(text)?;
    Ok(json.validate()?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: usize,
    pub depth: usize,
    /// Mutation path from the root, 1-based.
    pub path: Vec<usize>,
    /// Sorted g-vectors, the first half of the unlabeled-seed key.
    pub label: String,
    #[serde(rename = "B")]
    pub b: IntMatrix,
    #[serde(rename = "C")]
    pub c: IntMatrix,
    #[serde(rename = "G")]
    pub g: IntMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub source: usize,
    pub target: usize,
    /// 1-based, relative to the source representative.
    pub direction: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub rank: usize,
    pub root: usize,
    /// `"complete"` or `"truncated"`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<FixedDataJson>,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub topological_order: Option<Vec<usize>>,
}

pub fn graph_to_json(
    g: &OrientedExchangeGraph,
    fd: Option<&FixedData>,
    certificate: Option<&AcyclicityCertificate>,
) -> GraphJson {
    let (status, truncated_depth) = match g.status() {
        GraphStatus::Complete => ("complete".to_string(), None),
        GraphStatus::Truncated { depth } => ("truncated".to_string(), Some(depth)),
    };
    GraphJson {
        rank: g.rank(),
        root: g.root(),
        status,
        truncated_depth,
        data: fd.map(FixedDataJson::from_data),
        vertices: g
            .vertices()
            .iter()
            .enumerate()
            .map(|(id, v)| VertexJson {
                id,
                depth: v.depth,
                path: v.seed.path.iter().map(|k| k + 1).collect(),
                label: v.key.label(),
                b: v.seed.b.clone(),
                c: v.seed.c.clone(),
                g: v.seed.g.clone(),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeJson { source: e.source, target: e.target, direction: e.direction + 1 })
            .collect(),
        topological_order: certificate.map(|c| c.order.clone()),
    }
}

/// Rebuilds the graph; keys are recomputed from the stored matrices.
pub fn graph_from_json(json: &GraphJson) -> Result<OrientedExchangeGraph, IoError> {
    let r = json.rank;
    let mut vertices = Vec::with_capacity(json.vertices.len());
    for (i, v) in json.vertices.iter().enumerate() {
        if v.id != i {
            return Err(IoError::Invalid(format!("vertex {i} has id {}", v.id)));
        }
        if [&v.b, &v.c, &v.g].iter().any(|m| m.size() != r) {
            return Err(IoError::Invalid(format!("vertex {i}: matrix size differs from rank {r}")));
        }
        if v.path.iter().any(|&k| k == 0 || k > r) {
            return Err(IoError::Invalid(format!("vertex {i}: path direction out of range")));
        }
        let seed = TropicalSeed {
            b: v.b.clone(),
            c: v.c.clone(),
            g: v.g.clone(),
            path: v.path.iter().map(|k| k - 1).collect(),
        };
        vertices.push(Vertex { key: canonical_key(&seed), seed, depth: v.depth });
    }
    let mut edges = Vec::with_capacity(json.edges.len());
    for e in &json.edges {
        if e.direction == 0 || e.direction > r {
            return Err(IoError::Invalid(format!("edge {e:?}: direction out of range")));
        }
        edges.push(Edge { source: e.source, target: e.target, direction: e.direction - 1 });
    }
    let status = match (json.status.as_str(), json.truncated_depth) {
        ("complete", None) => GraphStatus::Complete,
        ("truncated", Some(depth)) => GraphStatus::Truncated { depth },
        _ => return Err(IoError::Invalid(format!("bad status {:?}", json.status))),
    };
    if json.root != 0 {
        return Err(IoError::Invalid("root must be vertex 0".into()));
    }
    Ok(OrientedExchangeGraph::from_parts(r, vertices, edges, status)?)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph; vertices labeled by sorted g-vectors, green arrows solid.
pub fn graph_to_dot(g: &OrientedExchangeGraph) -> String {
    let mut out = String::from("digraph exchange {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let extra = if i == g.root() { ", penwidth=2" } else { "" };
        let _ = writeln!(out, "  v{i} [label=\"{}\"{extra}];", escape(&v.key.label()));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  v{} -> v{} [label=\"{}\", color=\"darkgreen\", style=solid];",
            e.source,
            e.target,
            e.direction + 1
        );
    }
    out.push_str("}\n");
    out
}

/// One crossing as given to `obstruct`; the exponent defaults to `δ(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingJson {
    pub normal: PositiveVector,
    pub sign: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingSequenceJson {
    /// `Δ`; all ones when omitted.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_vec",
        deserialize_with = "deserialize_opt_vec"
    )]
    pub delta: Option<Vec<BigInt>>,
    pub crossings: Vec<CrossingJson>,
}

impl CrossingSequenceJson {
    pub fn from_sequence(seq: &CrossingSequence, delta: &[BigInt]) -> Self {
        CrossingSequenceJson {
            delta: Some(delta.to_vec()),
            crossings: seq
                .crossings
                .iter()
                .map(|c| CrossingJson { normal: c.normal.clone(), sign: c.sign, exponent: Some(c.exponent.clone()) })
                .collect(),
        }
    }

    /// The rank, `Δ` and the sequence with every exponent filled in.
    pub fn resolve(&self) -> Result<(usize, Vec<BigInt>, CrossingSequence), IoError> {
        let rank = match (&self.delta, self.crossings.first()) {
            (Some(d), _) => d.len(),
            (None, Some(c)) => c.normal.rank(),
            (None, None) => return Err(IoError::Invalid("empty crossing sequence without delta".into())),
        };
        let delta = self.delta.clone().unwrap_or_else(|| vec![BigInt::from(1); rank]);
        if rank == 0 || delta.iter().any(|d| *d <= BigInt::from(0)) {
            return Err(IoError::Invalid("delta entries must be positive".into()));
        }
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for (i, c) in self.crossings.iter().enumerate() {
            if c.normal.rank() != rank {
                return Err(IoError::Invalid(format!("crossing {i}: normal has wrong rank")));
            }
            if !c.normal.is_primitive() {
                return Err(IoError::Invalid(format!("crossing {i}: normal is not primitive")));
            }
            if c.sign != 1 && c.sign != -1 {
                return Err(IoError::Invalid(format!("crossing {i}: sign must be 1 or -1")));
            }
            let exponent = c.exponent.clone().unwrap_or_else(|| crate::group::delta_exponent(&c.normal, &delta));
            crossings.push(Crossing { normal: c.normal.clone(), sign: c.sign, exponent });
        }
        Ok((rank, delta, CrossingSequence { crossings, directions: Vec::new() }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::{certify_acyclic, enumerate_graph};

    #[test]
    fn input_document() {
        let fd = parse_fixed_data(r#"{"B": [[0, 1], [-2, 0]], "delta": [1, 2]}"#).unwrap();
        assert_eq!(fd.symmetrizer(), &[BigInt::from(2), BigInt::from(1)]);
        let with_d = parse_fixed_data(r#"{"B": [[0, 1], [-2, 0]], "delta": [1, 2], "D": [4, 2]}"#).unwrap();
        assert_eq!(with_d.symmetrizer(), &[BigInt::from(4), BigInt::from(2)]);
        assert!(parse_fixed_data(r#"{"B": [[0, 1], [-2, 0]], "delta": [1, 2], "D": [1, 1]}"#).is_err());
        assert!(parse_fixed_data(r#"{"B": [[0, 1], [-2, 0]]}"#).is_err());
        assert!(parse_fixed_data(r#"{"B": [[0, 1], [-2, 0]], "delta": [1, 2], "x": 1}"#).is_err());
    }

    #[test]
    fn graph_roundtrip() {
        let fd = parse_fixed_data(r#"{"B": [[0, 1], [-1, 0]], "delta": [1, 1]}"#).unwrap();
        let g = enumerate_graph(&fd, 100, 10).unwrap();
        let cert = certify_acyclic(&g).unwrap();
        let json = graph_to_json(&g, Some(&fd), Some(&cert));
        let text = serde_json::to_string(&json).unwrap();
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
        assert_eq!(graph_from_json(&back).unwrap(), g);
        let dot = graph_to_dot(&g);
        assert!(dot.starts_with("digraph exchange {"));
        assert_eq!(dot.matches(" -> ").count(), 5);
    }
}
