use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};

use super::seed::{canonical_key, is_green, mutate_seed, SeedKey, TropicalSeed};
use super::{ExchangeError, FixedData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub key: SeedKey,
    /// Representative labeled seed, the first one reached by the search.
    pub seed: TropicalSeed,
    pub depth: usize,
}

/// A green arrow `source → target`; `direction` is labeled with respect to
/// the source representative, whose `direction`-th c-vector is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub direction: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphStatus {
    Complete,
    Truncated { depth: usize },
}

/// Unlabeled seeds with green mutations as arrows. Vertex `0` is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedExchangeGraph {
    rank: usize,
    vertices: Vec<Vertex>,
    index: HashMap<SeedKey, usize>,
    edges: Vec<Edge>,
    status: GraphStatus,
}

impl OrientedExchangeGraph {
    /// Assembles a graph from parts. Keys must be distinct and edge
    /// endpoints in range; no mutation-theoretic checks are made.
    pub fn from_parts(
        rank: usize,
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        status: GraphStatus,
    ) -> Result<Self, ExchangeError> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.key.clone(), i).is_some() {
                return Err(ExchangeError::InvalidInput(format!("duplicate vertex key at {i}")));
            }
        }
        if let Some(e) = edges.iter().find(|e| e.source >= vertices.len() || e.target >= vertices.len()) {
            return Err(ExchangeError::InvalidInput(format!("edge {e:?} out of range")));
        }
        Ok(OrientedExchangeGraph { rank, vertices, index, edges, status })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn status(&self) -> GraphStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == GraphStatus::Complete
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn find(&self, key: &SeedKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.source == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.target == v).count()
    }

    /// Undirected adjacency lists, neighbors in edge order.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
        adj
    }
}

/// Breadth-first closure of all mutations from the root, deduplicated by
/// [`canonical_key`]. New vertices are admitted while their depth is at most
/// `max_depth` and fewer than `max_vertices` are known; if anything is
/// refused the partial graph comes back inside
/// [`ExchangeError::BudgetExceeded`].
pub fn enumerate_graph(
    fd: &FixedData,
    max_vertices: usize,
    max_depth: usize,
) -> Result<OrientedExchangeGraph, ExchangeError> {
    if max_vertices == 0 {
        return Err(ExchangeError::InvalidInput("max_vertices must be positive".into()));
    }
    let r = fd.rank();
    let root = fd.root_seed();
    let root_key = canonical_key(&root);
    let mut vertices = vec![Vertex { key: root_key.clone(), seed: root, depth: 0 }];
    let mut index = HashMap::from([(root_key, 0usize)]);
    let mut edges = Vec::new();
    let mut seen_pairs = HashSet::new();
    let mut truncated = false;
    let mut queue = VecDeque::from([0usize]);

    while let Some(v) = queue.pop_front() {
        for k in 0..r {
            let rep = &vertices[v].seed;
            let next = mutate_seed(fd, rep, k)?;
            let key = canonical_key(&next);
            let u = match index.get(&key) {
                Some(&u) => u,
                None => {
                    let depth = vertices[v].depth + 1;
                    if depth > max_depth || vertices.len() >= max_vertices {
                        truncated = true;
                        continue;
                    }
                    let u = vertices.len();
                    index.insert(key.clone(), u);
                    vertices.push(Vertex { key, seed: next.clone(), depth });
                    queue.push_back(u);
                    u
                }
            };
            if !seen_pairs.insert((v.min(u), v.max(u))) {
                continue;
            }
            let edge = if is_green(&vertices[v].seed, k)? {
                Edge { source: v, target: u, direction: k }
            } else {
                let g = next.g_vector(k);
                let direction = vertices[u].seed.label_of_g_vector(&g).ok_or_else(|| {
                    ExchangeError::InvalidInput(format!("representative of vertex {u} lacks g-vector {g:?}"))
                })?;
                Edge { source: u, target: v, direction }
            };
            edges.push(edge);
        }
    }

    let status = if truncated {
        GraphStatus::Truncated { depth: vertices.iter().map(|v| v.depth).max().unwrap_or(0) }
    } else {
        GraphStatus::Complete
    };
    let graph = OrientedExchangeGraph { rank: r, vertices, index, edges, status };
    if truncated {
        Err(ExchangeError::BudgetExceeded(Box::new(graph)))
    } else {
        Ok(graph)
    }
}

/// A topological order of the discovered vertices, root first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcyclicityCertificate {
    pub order: Vec<usize>,
    /// Vertices with no incoming green edge.
    pub sources: Vec<usize>,
}

/// Kahn's algorithm with smallest-index tie-breaking. On failure returns a
/// directed cycle (as keys, in arrow order) found among the leftover
/// vertices. Also requires the root to be a source.
pub fn certify_acyclic(g: &OrientedExchangeGraph) -> Result<AcyclicityCertificate, ExchangeError> {
    let n = g.vertex_count();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        indeg[e.target] += 1;
        out[e.source].push(e.target);
    }
    let sources: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut heap: BinaryHeap<Reverse<usize>> = sources.iter().map(|&v| Reverse(v)).collect();
    let mut remaining = indeg.clone();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in &out[v] {
            remaining[w] -= 1;
            if remaining[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    if order.len() < n {
        // Every leftover vertex has a leftover predecessor; walk backwards
        // until a vertex repeats.
        let mut pred = vec![None; n];
        for e in g.edges() {
            if remaining[e.source] > 0 && remaining[e.target] > 0 {
                pred[e.target] = Some(e.source);
            }
        }
        let start = (0..n).find(|&v| remaining[v] > 0).expect("leftover vertex");
        let mut pos = HashMap::new();
        let mut walk = vec![start];
        let mut v = start;
        loop {
            pos.insert(v, walk.len() - 1);
            v = pred[v].expect("leftover vertex has a leftover predecessor");
            if let Some(&i) = pos.get(&v) {
                let mut cycle: Vec<usize> = walk[i..].to_vec();
                cycle.reverse();
                return Err(ExchangeError::CycleFound(
                    cycle.into_iter().map(|v| g.vertices[v].key.clone()).collect(),
                ));
            }
            walk.push(v);
        }
    }
    if n > 0 && indeg[g.root()] != 0 {
        return Err(ExchangeError::RootNotSource);
    }
    Ok(AcyclicityCertificate { order, sources })
}
