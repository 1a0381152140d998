use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::cone::Cone;
use super::{pairing, positive_part, to_bigints, ScatteringError};
use crate::exchange::{FixedData, OrientedExchangeGraph, TropicalSeed};
use crate::group::{delta_of, ElementJson, GroupElement, PositiveVector, StructureAlgebra};
use crate::matrix::int_serde;
use crate::rational::Rational;

/// A codimension-one cone `support ⊂ n^⊥` decorated with an element of the
/// parallel subgroup `G_n^{∥}`.
#[derive(Clone)]
pub struct Wall {
    /// Primitive positive normal.
    pub normal: PositiveVector,
    pub support: Cone,
    pub element: GroupElement,
    pub initial: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagramOrigin {
    /// Facets of the cluster chambers of an exchange graph.
    ClusterFan,
    /// Initial walls plus the walls added by rank-2 completion.
    Rank2Completion,
}

#[derive(Clone)]
pub struct ScatteringDiagram {
    pub level: u32,
    pub origin: DiagramOrigin,
    pub walls: Vec<Wall>,
}

impl ScatteringDiagram {
    pub fn non_initial(&self) -> impl Iterator<Item = &Wall> {
        self.walls.iter().filter(|w| !w.initial)
    }
}

/// The wall on the facet of `C_s` opposite the `k`-th g-vector: normal
/// `±c_k`, element `Ψ[n]^{δ(n)}` at the given level.
pub fn facet_wall(
    fd: &FixedData,
    alg: &StructureAlgebra,
    s: &TropicalSeed,
    k: usize,
    level: u32,
) -> Result<Wall, ScatteringError> {
    if k >= s.rank() {
        return Err(crate::exchange::ExchangeError::DirectionOutOfRange { direction: k, rank: s.rank() }.into());
    }
    let (normal, _) = positive_part(&s.c_vector(k)).ok_or(ScatteringError::SignIncoherent { direction: k })?;
    let rays: Vec<Vec<BigInt>> = (0..s.rank()).filter(|&j| j != k).map(|j| s.g_vector(j)).collect();
    let n = to_bigints(&normal);
    if rays.iter().any(|g| !pairing(&n, g, fd.delta()).is_zero()) {
        return Err(ScatteringError::NotOrthogonal { direction: k });
    }
    let element = alg.dilog(&normal, &delta_of(&normal, fd), level)?;
    Ok(Wall { normal, support: Cone::new(rays), element, initial: false })
}

/// One wall per edge of the graph, i.e. per facet shared by two cluster
/// chambers. Walls through the root chamber's facets are marked initial.
pub fn cluster_fan_diagram(
    fd: &FixedData,
    alg: &StructureAlgebra,
    g: &OrientedExchangeGraph,
    level: u32,
) -> Result<ScatteringDiagram, ScatteringError> {
    let mut walls = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let mut w = facet_wall(fd, alg, &g.vertices()[e.source].seed, e.direction, level)?;
        w.initial = e.source == g.root();
        walls.push(w);
    }
    Ok(ScatteringDiagram { level, origin: DiagramOrigin::ClusterFan, walls })
}

/// A factor `Ψ[vector]^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilogFactor {
    pub vector: PositiveVector,
    pub exponent: Rational,
}

/// Writes `log` of a parallel wall element as a product of dilogarithm
/// powers `Ψ[t n]^{c_t}`, lowest multiple first.
pub fn factorize_wall(alg: &StructureAlgebra, wall: &Wall) -> Result<Vec<DilogFactor>, ScatteringError> {
    let level = wall.element.level();
    let mut rest = alg.log(&wall.element)?;
    let mut out = Vec::new();
    let mut t = 1u32;
    while t * wall.normal.degree() <= level {
        let v = wall.normal.scaled(t);
        let c = rest.coefficient(&[alg.letter(&v)?]);
        if !c.is_zero() {
            rest = rest.sub(&alg.dilog_log(&v, &c, level)?)?;
            out.push(DilogFactor { vector: v, exponent: c });
        }
        t += 1;
    }
    if !rest.is_zero() {
        return Err(ScatteringError::Malformed("wall element is not parallel to its normal".into()));
    }
    Ok(out)
}

/// `Psi[e1+e2]^1·Psi[2e1+2e2]^-2`, or `None` unless every exponent is an
/// integer.
pub(crate) fn factored_label(factors: &[DilogFactor]) -> Option<String> {
    if factors.is_empty() || factors.iter().any(|f| !f.exponent.is_integer()) {
        return None;
    }
    Some(factors.iter().map(|f| format!("Psi[{}]^{}", f.vector, f.exponent)).collect::<Vec<_>>().join("·"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallJson {
    pub normal: PositiveVector,
    #[serde(serialize_with = "int_serde::serialize_nested", deserialize_with = "int_serde::deserialize_nested")]
    pub rays: Vec<Vec<BigInt>>,
    pub element: ElementJson,
    pub factored: Option<String>,
    #[serde(default)]
    pub initial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub level: u32,
    pub origin: DiagramOrigin,
    pub walls: Vec<WallJson>,
}

impl ScatteringDiagram {
    pub fn to_json(&self, alg: &StructureAlgebra) -> Result<DiagramJson, ScatteringError> {
        let walls = self
            .walls
            .iter()
            .map(|w| {
                Ok(WallJson {
                    normal: w.normal.clone(),
                    rays: w.support.rays().to_vec(),
                    element: alg.to_json(w.element.as_element()),
                    factored: factored_label(&factorize_wall(alg, w)?),
                    initial: w.initial,
                })
            })
            .collect::<Result<_, ScatteringError>>()?;
        Ok(DiagramJson { level: self.level, origin: self.origin, walls })
    }

    /// Rebuilds a diagram, checking that each element is grouplike and
    /// parallel to its primitive normal and that each ray is orthogonal to
    /// the normal.
    pub fn from_json(alg: &StructureAlgebra, delta: &[BigInt], json: &DiagramJson) -> Result<Self, ScatteringError> {
        let mut walls = Vec::with_capacity(json.walls.len());
        for (i, w) in json.walls.iter().enumerate() {
            if !w.normal.is_primitive() || w.normal.rank() != alg.rank() {
                return Err(ScatteringError::Malformed(format!("wall {i}: bad normal")));
            }
            if w.element.level != json.level {
                return Err(ScatteringError::Malformed(format!("wall {i}: level mismatch")));
            }
            let n = to_bigints(&w.normal);
            if w.rays.iter().any(|r| r.len() != alg.rank() || !pairing(&n, r, delta).is_zero()) {
                return Err(ScatteringError::Malformed(format!("wall {i}: ray not in the normal hyperplane")));
            }
            let element = alg.group_element(alg.from_json(&w.element)?)?;
            if !alg.is_parallel(&element, &w.normal)? {
                return Err(ScatteringError::Malformed(format!("wall {i}: element not parallel to the normal")));
            }
            walls.push(Wall { normal: w.normal.clone(), support: Cone::new(w.rays.clone()), element, initial: w.initial });
        }
        Ok(ScatteringDiagram { level: json.level, origin: json.origin, walls })
    }
}
