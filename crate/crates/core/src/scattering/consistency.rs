use std::collections::VecDeque;

use serde::Serialize;

use super::crossing::{crossing_sequence_along, path_ordered_product};
use super::ScatteringError;
use crate::exchange::{canonical_key, mutate_seed, FixedData, OrientedExchangeGraph};
use crate::group::StructureAlgebra;

/// Fundamental cycles of a breadth-first spanning tree rooted at the root
/// vertex, one per non-tree edge. Each cycle is a closed vertex walk
/// starting and ending at the lowest common ancestor of the edge's ends.
pub fn cycle_basis(g: &OrientedExchangeGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let adj = g.neighbors();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let root = g.root();
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }

    let mut cycles = Vec::new();
    for e in g.edges() {
        let (a, b) = (e.source, e.target);
        if parent[a] == usize::MAX || parent[b] == usize::MAX || parent[a] == b || parent[b] == a {
            continue;
        }
        let (mut x, mut y) = (a, b);
        let mut left = vec![x];
        let mut right = vec![y];
        while x != y {
            if depth[x] >= depth[y] {
                x = parent[x];
                left.push(x);
            } else {
                y = parent[y];
                right.push(y);
            }
        }
        // left: a .. lca, right: b .. lca
        let mut cycle: Vec<usize> = left.into_iter().rev().collect();
        right.pop();
        cycle.extend(right);
        cycle.push(cycle[0]);
        cycles.push(cycle);
    }
    cycles
}

/// Mutation directions realizing a closed vertex walk, starting from the
/// representative seed of its first vertex.
pub fn loop_walk(fd: &FixedData, g: &OrientedExchangeGraph, cycle: &[usize]) -> Result<Vec<usize>, ScatteringError> {
    let Some(&first) = cycle.first() else {
        return Ok(Vec::new());
    };
    let mut s = g.vertices()[first].seed.clone();
    let mut dirs = Vec::with_capacity(cycle.len());
    for (step, &next) in cycle.iter().enumerate().skip(1) {
        let target = &g.vertices()[next].key;
        let mut found = None;
        for k in 0..s.rank() {
            let t = mutate_seed(fd, &s, k)?;
            if canonical_key(&t) == *target {
                found = Some((k, t));
                break;
            }
        }
        let (k, t) = found.ok_or(ScatteringError::InvalidWalk { step })?;
        dirs.push(k);
        s = t;
    }
    Ok(dirs)
}

#[derive(Debug, Clone, Serialize)]
pub struct LoopReport {
    pub vertices: Vec<usize>,
    pub directions: Vec<usize>,
    pub crossings: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    /// Every loop was checked in `G^{≤k}` for all `k ≤ max_degree`.
    pub max_degree: u32,
    pub graph_complete: bool,
    pub loops: Vec<LoopReport>,
}

/// Checks that the path-ordered product around every fundamental cycle of
/// the graph is the identity in `G^{≤level}` (and hence in every lower
/// truncation). Cycles of a truncated graph are still genuine loops.
pub fn verify_loop_consistency(
    fd: &FixedData,
    alg: &StructureAlgebra,
    g: &OrientedExchangeGraph,
    level: u32,
) -> Result<ConsistencyReport, ScatteringError> {
    let mut loops = Vec::new();
    for (loop_index, cycle) in cycle_basis(g).into_iter().enumerate() {
        let directions = loop_walk(fd, g, &cycle)?;
        let start = &g.vertices()[cycle[0]].seed;
        let (seq, _) = crossing_sequence_along(fd, start, &directions)?;
        let product = path_ordered_product(alg, &seq, level)?;
        if !product.is_identity() {
            return Err(ScatteringError::InconsistencyFound {
                loop_index,
                directions,
                element: alg.display(product.as_element()),
            });
        }
        loops.push(LoopReport { vertices: cycle, directions, crossings: seq.len() });
    }
    Ok(ConsistencyReport { max_degree: level, graph_complete: g.is_complete(), loops })
}
