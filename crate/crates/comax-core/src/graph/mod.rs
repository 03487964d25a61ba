//! Simple undirected graphs with labeled vertices and bit-set adjacency
//! rows, plus the ring-graph builders.

mod build;
mod export;

pub use build::{
    build_gamma, build_gamma_r, build_omega, collapse_false_twins, collapse_false_twins_by_rows,
    decompose_omega, gamma_r_signatures, gamma_signatures, quotient_retract_check,
    retraction_gamma_to_gamma_r, sequential_sum, CollapseError, Retraction, RetractionReport,
    TwinCollapse,
};
pub use export::{to_dot, to_json, ExportFormat};

use crate::bits::BitSet;
use crate::ring::Elem;
use std::fmt;

/// A vertex label. Labels are unique within a graph and the vertex order
/// is their sort order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexLabel {
    /// A ring element, by canonical index.
    RingElem(Elem),
    /// A principal ideal, by sorted member set.
    IdealVertex(Vec<Elem>),
    /// A plain vertex of an abstract graph.
    Abstract(u32),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::RingElem(e) => write!(f, "{e}"),
            VertexLabel::IdealVertex(members) => {
                write!(f, "{{")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "}}")
            }
            VertexLabel::Abstract(id) => write!(f, "a{id}"),
        }
    }
}

/// A simple undirected graph: no loops, symmetric bit-set adjacency,
/// vertices sorted by label. Immutable once built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            for v in self.adj[u].iter_ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.binary_search_by(|l| l.cmp(label)).ok()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].test(v)
    }

    pub fn neighbors(&self, u: usize) -> &BitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    /// Induced subgraph on the given vertices; labels carry over.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.iter().map(|&v| self.labels[v].clone()).collect());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j);
                }
            }
        }
        b.finish()
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<usize> {
        let n = self.vertex_count();
        (0..n).filter(|&v| self.degree(v) == n - 1).collect()
    }

    pub fn complete(n: usize) -> Graph {
        let mut b = GraphBuilder::abstract_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v);
            }
        }
        b.finish()
    }

    pub fn discrete(n: usize) -> Graph {
        GraphBuilder::abstract_vertices(n).finish()
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Graph {
        let mut b = GraphBuilder::abstract_vertices(m + n);
        for u in 0..m {
            for v in m..m + n {
                b.add_edge(u, v);
            }
        }
        b.finish()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::complete_bipartite(1, leaves)
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut b = GraphBuilder::abstract_vertices(n);
        for u in 0..n {
            b.add_edge(u, (u + 1) % n);
        }
        b.finish()
    }

    pub fn path(n: usize) -> Graph {
        let mut b = GraphBuilder::abstract_vertices(n);
        for u in 0..n.saturating_sub(1) {
            b.add_edge(u, u + 1);
        }
        b.finish()
    }

    /// A triangle with one pendant vertex attached to each corner.
    pub fn triangle_with_pendants() -> Graph {
        let mut b = GraphBuilder::abstract_vertices(6);
        b.add_edge(0, 1);
        b.add_edge(1, 2);
        b.add_edge(0, 2);
        b.add_edge(0, 3);
        b.add_edge(1, 4);
        b.add_edge(2, 5);
        b.finish()
    }
}

/// Accumulates edges against the construction-order vertex list, then
/// sorts vertices by label on `finish`.
pub struct GraphBuilder {
    labels: Vec<VertexLabel>,
    edges: Vec<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new(labels: Vec<VertexLabel>) -> GraphBuilder {
        GraphBuilder {
            labels,
            edges: Vec::new(),
        }
    }

    pub fn abstract_vertices(n: usize) -> GraphBuilder {
        GraphBuilder::new((0..n as u32).map(VertexLabel::Abstract).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Adds an edge by construction-order index.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loops are not allowed");
        assert!(u < self.labels.len() && v < self.labels.len());
        self.edges.push((u, v));
    }

    pub fn finish(self) -> Graph {
        let n = self.labels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        let mut position = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let labels: Vec<VertexLabel> = order.iter().map(|&o| self.labels[o].clone()).collect();
        for w in labels.windows(2) {
            assert!(w[0] != w[1], "duplicate vertex label {}", w[0]);
        }
        let mut adj = vec![BitSet::new(n); n];
        for (u, v) in self.edges {
            let (u, v) = (position[u], position[v]);
            adj[u].set(v);
            adj[v].set(u);
        }
        Graph { labels, adj }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_sorts_by_label() {
        let mut b = GraphBuilder::new(vec![
            VertexLabel::Abstract(2),
            VertexLabel::Abstract(0),
            VertexLabel::Abstract(1),
        ]);
        b.add_edge(0, 1); // labels a2 -- a0
        let g = b.finish();
        assert_eq!(g.label(0).to_string(), "a0");
        assert!(g.has_edge(0, 2));
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    #[should_panic(expected = "duplicate vertex label")]
    fn builder_rejects_duplicates() {
        GraphBuilder::new(vec![VertexLabel::Abstract(0), VertexLabel::Abstract(0)]).finish();
    }

    #[test]
    fn standard_graphs() {
        assert_eq!(Graph::complete(5).edge_count(), 10);
        assert_eq!(Graph::discrete(4).edge_count(), 0);
        assert_eq!(Graph::complete_bipartite(4, 2).edge_count(), 8);
        assert_eq!(Graph::star(4).degree(0), 4);
        assert_eq!(Graph::cycle(5).edge_count(), 5);
        let h = Graph::triangle_with_pendants();
        assert_eq!(h.vertex_count(), 6);
        assert_eq!(h.edge_count(), 6);
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::complete_bipartite(2, 2);
        let sub = g.induced(&[0, 2]);
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.edge_count(), 1);
    }
}
