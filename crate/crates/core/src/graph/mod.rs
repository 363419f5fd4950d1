//! Simple undirected graphs with stable `0..n` vertex identifiers.
//!
//! A [`Graph`] is an explicit adjacency structure, optionally extended by a
//! layer of [`HungTrees`]: identical depth-2 trees hanging below chosen root
//! vertices. The hung layer is never materialized; its vertices, degrees and
//! neighbours are computed from the layout, so graphs with billions of
//! gadget vertices stay cheap to hold and to query.

mod chord;
mod io;
mod structure;

use std::collections::{BTreeSet, HashMap};
use std::ops::Range;

pub use chord::{chord_diagram_to_graph, ChordDiagram};
pub use io::{parse_edge_list, write_edge_list, GraphSpec};
pub use structure::{
    forest_height_after_deletion, is_bipartite, is_connected, is_split, Bipartition, SplitPartition,
};

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// Largest vertex count `materialize` will expand hung trees into.
pub const MATERIALIZE_CAP: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge {index}: endpoint {vertex} out of range for {n} vertices")]
    OutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index}: self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has no vertices")]
    Empty,
    #[error("chord {chord} appears {count} times (expected 2)")]
    MalformedDiagram { chord: usize, count: usize },
    #[error("graph with {order} vertices exceeds the cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("graph already carries hung trees")]
    AlreadyHung,
    #[error("hung-tree root {0} is not an explicit vertex")]
    BadRoot(usize),
}

/// Identical trees of height 2 hung below root vertices: each root gets
/// `fanout` children and each child gets `fanout` leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HungTrees {
    roots: Vec<Vertex>,
    fanout: usize,
    root_slot: HashMap<Vertex, usize>,
}

/// Where an implicit vertex sits inside the hung layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HungPosition {
    Child { root: Vertex, child: usize },
    Leaf { root: Vertex, child: usize, leaf: usize },
}

impl HungTrees {
    pub fn roots(&self) -> &[Vertex] {
        &self.roots
    }

    pub fn fanout(&self) -> usize {
        self.fanout
    }

    /// Vertices per hung tree, root excluded.
    pub fn block(&self) -> usize {
        self.fanout + self.fanout * self.fanout
    }

    pub fn vertex_count(&self) -> usize {
        self.roots.len() * self.block()
    }

    fn slot(&self, root: Vertex) -> Option<usize> {
        self.root_slot.get(&root).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "GraphSpec", into = "GraphSpec")]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    hung: Option<HungTrees>,
    duplicates: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are collapsed and
    /// counted; out-of-range endpoints and self-loops are rejected with the
    /// index of the offending edge.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::with_vertices(n);
        for (index, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { index, vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, vertex: u });
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Self {
        GraphBuilder::with_vertices(n).build()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::with_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v);
            }
        }
        b.build()
    }

    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::with_vertices(n);
        for u in 1..n {
            b.add_edge(u - 1, u);
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Self {
        let mut b = GraphBuilder::with_vertices(n);
        for u in 0..n {
            b.add_edge(u, (u + 1) % n);
        }
        b.build()
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let mut b = GraphBuilder::with_vertices(leaves + 1);
        for v in 1..=leaves {
            b.add_edge(0, v);
        }
        b.build()
    }

    /// Total number of vertices, hung layer included.
    pub fn order(&self) -> usize {
        self.adj.len() + self.hung.as_ref().map_or(0, HungTrees::vertex_count)
    }

    /// Number of explicitly stored vertices.
    pub fn explicit_order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        let explicit: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        explicit + self.hung.as_ref().map_or(0, HungTrees::vertex_count)
    }

    /// Number of duplicate edges dropped while building.
    pub fn duplicates_collapsed(&self) -> usize {
        self.duplicates
    }

    pub fn hung(&self) -> Option<&HungTrees> {
        self.hung.as_ref()
    }

    pub fn is_explicit(&self) -> bool {
        self.hung.is_none()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.order()
    }

    pub fn hung_position(&self, v: Vertex) -> Option<HungPosition> {
        let h = self.hung.as_ref()?;
        let base = self.adj.len();
        if v < base || v >= self.order() || h.fanout == 0 {
            return None;
        }
        let off = v - base;
        let root = h.roots[off / h.block()];
        let within = off % h.block();
        Some(if within < h.fanout {
            HungPosition::Child { root, child: within }
        } else {
            let l = within - h.fanout;
            HungPosition::Leaf { root, child: l / h.fanout, leaf: l % h.fanout }
        })
    }

    fn hung_block_start(&self, slot: usize) -> usize {
        let h = self.hung.as_ref().expect("hung layer");
        self.adj.len() + slot * h.block()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        if v < self.adj.len() {
            let extra = self
                .hung
                .as_ref()
                .and_then(|h| h.slot(v).map(|_| h.fanout))
                .unwrap_or(0);
            return self.adj[v].len() + extra;
        }
        let fanout = self.hung.as_ref().map_or(0, HungTrees::fanout);
        match self.hung_position(v) {
            Some(HungPosition::Child { .. }) => 1 + fanout,
            Some(HungPosition::Leaf { .. }) => 1,
            None => panic!("vertex {v} out of range"),
        }
    }

    pub fn neighbors(&self, v: Vertex) -> Neighbors<'_> {
        if v < self.adj.len() {
            let range = match self.hung.as_ref().and_then(|h| h.slot(v)) {
                Some(slot) => {
                    let start = self.hung_block_start(slot);
                    start..start + self.hung.as_ref().unwrap().fanout
                }
                None => 0..0,
            };
            return Neighbors { explicit: self.adj[v].iter(), single: None, range };
        }
        let h = self.hung.as_ref().expect("vertex out of range");
        match self.hung_position(v).expect("vertex out of range") {
            HungPosition::Child { root, child } => {
                let start = self.hung_block_start(h.slot(root).unwrap());
                let first_leaf = start + h.fanout + child * h.fanout;
                Neighbors {
                    explicit: [].iter(),
                    single: Some(root),
                    range: first_leaf..first_leaf + h.fanout,
                }
            }
            HungPosition::Leaf { root, child, .. } => {
                let start = self.hung_block_start(h.slot(root).unwrap());
                Neighbors { explicit: [].iter(), single: Some(start + child), range: 0..0 }
            }
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u < self.adj.len() && v < self.adj.len() {
            return self.adj[u].binary_search(&v).is_ok();
        }
        self.neighbors(u).any(|w| w == v)
    }

    /// Explicit neighbour list (sorted); hung children are not included.
    pub fn explicit_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Every edge `(u, v)` with `u < v`, in increasing order of `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.order()).flat_map(move |u| {
            let mut nb: Vec<Vertex> = self.neighbors(u).filter(|&w| w > u).collect();
            nb.sort_unstable();
            nb.into_iter().map(move |w| (u, w))
        })
    }

    pub fn min_degree(&self) -> Result<usize, GraphError> {
        self.degree_extremes().map(|(lo, _)| lo)
    }

    pub fn max_degree(&self) -> Result<usize, GraphError> {
        self.degree_extremes().map(|(_, hi)| hi)
    }

    fn degree_extremes(&self) -> Result<(usize, usize), GraphError> {
        if self.order() == 0 {
            return Err(GraphError::Empty);
        }
        let mut lo = usize::MAX;
        let mut hi = 0;
        for v in 0..self.adj.len() {
            let d = self.degree(v);
            lo = lo.min(d);
            hi = hi.max(d);
        }
        if let Some(h) = &self.hung {
            if h.vertex_count() > 0 {
                lo = lo.min(1);
                hi = hi.max(1 + h.fanout);
            }
        }
        Ok((lo, hi))
    }

    /// Returns a copy with a depth-2 tree of the given fanout hung below
    /// every root. Roots must be explicit vertices and the graph must not
    /// already carry hung trees.
    pub fn with_hung_trees(&self, roots: &[Vertex], fanout: usize) -> Result<Self, GraphError> {
        if self.hung.is_some() {
            return Err(GraphError::AlreadyHung);
        }
        let mut root_slot = HashMap::with_capacity(roots.len());
        let mut ordered = Vec::with_capacity(roots.len());
        for &r in roots {
            if r >= self.adj.len() {
                return Err(GraphError::BadRoot(r));
            }
            if root_slot.insert(r, ordered.len()).is_none() {
                ordered.push(r);
            }
        }
        Ok(Self {
            adj: self.adj.clone(),
            hung: Some(HungTrees { roots: ordered, fanout, root_slot }),
            duplicates: self.duplicates,
        })
    }

    /// Expands the hung layer into explicit vertices and edges.
    pub fn materialize(&self) -> Result<Self, GraphError> {
        if self.hung.is_none() {
            return Ok(self.clone());
        }
        if self.order() > MATERIALIZE_CAP {
            return Err(GraphError::TooLarge { order: self.order(), cap: MATERIALIZE_CAP });
        }
        let mut b = GraphBuilder::with_vertices(self.order());
        for (u, v) in self.edges() {
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    /// Explicit graph in which every hung tree is replaced by one with
    /// `min(fanout, 2)` children of `min(fanout, 2)` leaves. Returns the
    /// compressed graph; explicit vertex ids are unchanged.
    pub fn compress_hung_trees(&self) -> Self {
        let Some(h) = &self.hung else {
            return self.clone();
        };
        let f = h.fanout.min(2);
        let mut b = GraphBuilder::with_vertices(self.adj.len());
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if u < v {
                    b.add_edge(u, v);
                }
            }
        }
        for &root in &h.roots {
            for _ in 0..f {
                let child = b.add_vertex();
                b.add_edge(root, child);
                for _ in 0..f {
                    let leaf = b.add_vertex();
                    b.add_edge(child, leaf);
                }
            }
        }
        b.build()
    }

    /// Subgraph induced by `keep`, relabelled `0..keep.len()` in increasing
    /// order. Returns the subgraph and the old id of each new vertex.
    pub fn induced(&self, keep: &VertexSet) -> (Self, Vec<Vertex>) {
        let old: Vec<Vertex> = keep.iter().copied().collect();
        let new_id: HashMap<Vertex, usize> = old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut b = GraphBuilder::with_vertices(old.len());
        for (i, &u) in old.iter().enumerate() {
            for w in self.neighbors(u) {
                if let Some(&j) = new_id.get(&w) {
                    if i < j {
                        b.add_edge(i, j);
                    }
                }
            }
        }
        (b.build(), old)
    }
}

impl TryFrom<GraphSpec> for Graph {
    type Error = GraphError;

    fn try_from(spec: GraphSpec) -> Result<Self, GraphError> {
        spec.build()
    }
}

impl From<Graph> for GraphSpec {
    fn from(g: Graph) -> Self {
        GraphSpec::from_graph(&g)
    }
}

/// Iterator over the neighbours of one vertex.
#[derive(Debug, Clone)]
pub struct Neighbors<'a> {
    explicit: std::slice::Iter<'a, Vertex>,
    single: Option<Vertex>,
    range: Range<Vertex>,
}

impl Iterator for Neighbors<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if let Some(&v) = self.explicit.next() {
            return Some(v);
        }
        if let Some(v) = self.single.take() {
            return Some(v);
        }
        self.range.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.explicit.len() + usize::from(self.single.is_some()) + self.range.len();
        (n, Some(n))
    }
}

impl ExactSizeIterator for Neighbors<'_> {}

/// Incremental constructor used by the reductions. Vertices are numbered in
/// the order they are added.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    adj: Vec<Vec<Vertex>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_vertices(&mut self, count: usize) -> Range<Vertex> {
        let start = self.adj.len();
        self.adj.resize_with(start + count, Vec::new);
        start..start + count
    }

    /// # Panics
    /// On a self-loop or an endpoint that has not been added.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert!(u != v, "self-loop at {u}");
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    pub fn add_clique(&mut self, vertices: &[Vertex]) {
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                self.add_edge(u, v);
            }
        }
    }

    pub fn connect_all(&mut self, from: Vertex, to: impl IntoIterator<Item = Vertex>) {
        for v in to {
            self.add_edge(from, v);
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        assert!(g.is_explicit(), "cannot extend a graph with hung trees");
        Self { adj: g.adj.clone() }
    }

    pub fn build(mut self) -> Graph {
        let mut duplicates = 0;
        for list in &mut self.adj {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            duplicates += before - list.len();
        }
        Graph { adj: self.adj, hung: None, duplicates: duplicates / 2 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_constructions() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(p3.neighbors(1).collect::<Vec<_>>(), vec![0, 2]);

        let k1 = Graph::from_edges(1, &[]).unwrap();
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));

        let all: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let k4 = Graph::from_edges(4, &all).unwrap();
        assert!((0..4).all(|v| k4.degree(v) == 3));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 3)]),
            Err(GraphError::OutOfRange { index: 1, vertex: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(2, 2)]),
            Err(GraphError::SelfLoop { index: 0, vertex: 2 })
        );
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.duplicates_collapsed(), 2);
    }

    #[test]
    fn degree_extremes() {
        assert_eq!(Graph::complete(4).min_degree(), Ok(3));
        assert_eq!(Graph::complete(4).max_degree(), Ok(3));
        assert_eq!(Graph::path(3).min_degree(), Ok(1));
        assert_eq!(Graph::path(3).max_degree(), Ok(2));
        assert_eq!(Graph::cycle(5).min_degree(), Ok(2));
        assert_eq!(Graph::cycle(5).max_degree(), Ok(2));
        assert_eq!(Graph::empty(0).min_degree(), Err(GraphError::Empty));
    }

    #[test]
    fn hung_layer_matches_materialized_graph() {
        let g = Graph::path(3).with_hung_trees(&[0, 2], 3).unwrap();
        assert_eq!(g.order(), 3 + 2 * 12);
        let m = g.materialize().unwrap();
        assert_eq!(m.order(), g.order());
        assert_eq!(m.edge_count(), g.edge_count());
        for v in 0..g.order() {
            let mut a: Vec<_> = g.neighbors(v).collect();
            a.sort_unstable();
            assert_eq!(a, m.neighbors(v).collect::<Vec<_>>(), "vertex {v}");
            assert_eq!(g.degree(v), m.degree(v));
        }
        assert_eq!(g.min_degree(), Ok(1));
        assert_eq!(g.max_degree(), Ok(4));
        assert_eq!(
            g.hung_position(3 + 12 + 3 + 2 * 3 + 1),
            Some(HungPosition::Leaf { root: 2, child: 2, leaf: 1 })
        );
    }

    #[test]
    fn hung_layer_rejects_nesting_and_bad_roots() {
        let g = Graph::path(2);
        assert_eq!(g.with_hung_trees(&[5], 1), Err(GraphError::BadRoot(5)));
        let h = g.with_hung_trees(&[0], 1).unwrap();
        assert_eq!(h.with_hung_trees(&[0], 1), Err(GraphError::AlreadyHung));
    }

    #[test]
    fn induced_relabels() {
        let (sub, old) = Graph::cycle(5).induced(&[0, 1, 3].into_iter().collect());
        assert_eq!(old, vec![0, 1, 3]);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }
}
