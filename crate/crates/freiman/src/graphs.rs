//! Undirected graphs on generator sets. Vertices are positional; labels are
//! the generators in canonical order. Adjacency lives in a packed
//! triangular bitset, since pair queries are the hot operation.

use serde::Serialize;
use thiserror::Error;

use crate::ideals::GeneratorSet;
use crate::monomial::{is_sorted, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("loop at vertex {0}")]
    LoopEdge(usize),
    #[error("labels must be distinct and in canonical order")]
    UnsortedLabels,
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("repeated vertex {0} in cycle")]
    RepeatedVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<Monomial>,
    bits: Vec<u64>,
    n: usize,
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

impl Graph {
    pub fn new(labels: Vec<Monomial>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        for pair in labels.windows(2) {
            if pair[0] >= pair[1] {
                return Err(GraphError::UnsortedLabels);
            }
        }
        let n = labels.len();
        let mut graph = Graph {
            labels,
            bits: vec![0; (n * n.saturating_sub(1) / 2).div_ceil(64)],
            n,
        };
        for &(a, b) in edges {
            graph.add_edge(a, b)?;
        }
        Ok(graph)
    }

    /// Graph with placeholder labels (descending powers of `x1`), for use
    /// where only the adjacency structure matters.
    pub fn anonymous(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let labels = (0..n)
            .map(|i| Monomial::from_exponents_unchecked(vec![(n - i) as u32]))
            .collect();
        Graph::new(labels, edges)
    }

    fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        if a >= self.n {
            return Err(GraphError::VertexOutOfRange {
                index: a,
                n: self.n,
            });
        }
        if b >= self.n {
            return Err(GraphError::VertexOutOfRange {
                index: b,
                n: self.n,
            });
        }
        if a == b {
            return Err(GraphError::LoopEdge(a));
        }
        let idx = pair_index(a.min(b), a.max(b));
        self.bits[idx / 64] |= 1 << (idx % 64);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn label(&self, v: usize) -> &Monomial {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Monomial] {
        &self.labels
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b || a >= self.n || b >= self.n {
            return false;
        }
        let idx = pair_index(a.min(b), a.max(b));
        self.bits[idx / 64] & (1 << (idx % 64)) != 0
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_edge(v, u)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(v, u)).count()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if !self.has_edge(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(self.labels.clone(), &edges).expect("labels already validated")
    }

    /// Subgraph induced on `vertices`, which must be strictly increasing.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        for pair in vertices.windows(2) {
            if pair[0] >= pair[1] {
                return Err(GraphError::RepeatedVertex(pair[1]));
            }
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange {
                index: v,
                n: self.n,
            });
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for (a, &va) in vertices.iter().enumerate() {
            for (b, &vb) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(va, vb) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(labels, &edges)
    }

    /// Whether the vertex sequence is a chordless cycle: consecutive
    /// vertices (cyclically) adjacent, all other pairs non-adjacent.
    pub fn is_induced_cycle(&self, cycle: &[usize]) -> Result<bool, GraphError> {
        let t = cycle.len();
        if t < 3 {
            return Err(GraphError::CycleTooShort(t));
        }
        let mut seen = vec![false; self.n];
        for &v in cycle {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    index: v,
                    n: self.n,
                });
            }
            if seen[v] {
                return Err(GraphError::RepeatedVertex(v));
            }
            seen[v] = true;
        }
        for a in 0..t {
            for b in (a + 1)..t {
                let consecutive = b == a + 1 || (a == 0 && b == t - 1);
                if self.has_edge(cycle[a], cycle[b]) != consecutive {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Deterministic DOT rendering: vertices in canonical order, edges in
    /// lexicographic index order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(&format!("  {i} [label=\"{label}\"];\n"));
        }
        for (i, j) in self.edges() {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Deterministic JSON adjacency: `{n, labels, edges}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }
}

#[derive(Serialize)]
pub(crate) struct GraphJson {
    pub n: usize,
    pub labels: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.vertex_count(),
            labels: g.labels.iter().map(|l| l.to_string()).collect(),
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

/// Graph on the generators with an edge for every sorted distinct pair.
pub fn sorted_graph(set: &GeneratorSet) -> Graph {
    let gens = set.gens();
    let mut edges = Vec::new();
    for (i, u) in gens.iter().enumerate() {
        for (j, v) in gens.iter().enumerate().skip(i + 1) {
            if is_sorted(u, v).expect("generators share degree and ambient") {
                edges.push((i, j));
            }
        }
    }
    Graph::new(gens.to_vec(), &edges).expect("canonical generator order")
}

/// Complement of the sorted graph on the same vertices: the unsorted
/// distinct pairs. Together the two edge sets partition all pairs.
pub fn unsorted_graph(set: &GeneratorSet) -> Graph {
    sorted_graph(set).complement()
}
