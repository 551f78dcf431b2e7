//! Vertex-labelled undirected graphs and rooted patterns.
//!
//! Vertices are dense `0..n` indices. Labels are dense ids handed out by a
//! [`LabelAlphabet`]; id `0` is the uniform label used for unlabelled data.

mod canon;
mod io;
mod iso;

pub use canon::{canonical_code, rooted_canonical_code, CanonicalCode};
pub use io::{
    parse_graph, parse_pattern, parse_pattern_set, read_graph_file, read_graphs, read_pattern_file, serialize_graph,
    serialize_pattern,
};
pub use iso::{count_isomorphisms, is_isomorphic, is_rooted_isomorphic};

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

pub type Label = u32;

/// Maps external label spellings to dense ids. The spelling `"0"` is always id 0.
#[derive(Clone, Debug)]
pub struct LabelAlphabet {
    ids: HashMap<String, Label>,
    names: Vec<String>,
}

impl Default for LabelAlphabet {
    fn default() -> Self {
        Self::new()
    }
}

impl LabelAlphabet {
    pub fn new() -> Self {
        let mut a = LabelAlphabet {
            ids: HashMap::new(),
            names: Vec::new(),
        };
        a.intern("0");
        a
    }

    pub fn intern(&mut self, name: &str) -> Label {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = self.names.len() as Label;
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<Label> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: Label) -> Option<&str> {
        self.names.get(id as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// An undirected, vertex-labelled simple graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    id: String,
    labels: Vec<Label>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    meta: Option<serde_json::Value>,
}

impl Graph {
    /// Uniformly labelled graph.
    pub fn new(id: impl Into<String>, n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Graph::with_labels(id, vec![0; n], edges)
    }

    pub fn with_labels(
        id: impl Into<String>,
        labels: Vec<Label>,
        edges: &[(usize, usize)],
    ) -> Result<Graph> {
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        let mut norm = Vec::with_capacity(edges.len());
        for (index, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::EndpointOutOfRange {
                        index,
                        endpoint: x as i64,
                        n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { index, vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
            norm.push((u.min(v), u.max(v)));
        }
        let mut sorted = norm.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            let (u, v) = w[0];
            let index = norm.iter().rposition(|&e| e == (u, v)).unwrap_or(0);
            return Err(Error::DuplicateEdge { index, u, v });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            id: id.into(),
            labels,
            edges: sorted,
            adj,
            meta: None,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Graph {
        self.id = id.into();
        self
    }

    pub fn meta(&self) -> Option<&serde_json::Value> {
        self.meta.as_ref()
    }

    pub fn with_meta(mut self, meta: serde_json::Value) -> Graph {
        self.meta = Some(meta);
        self
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|(u, v)| pos[*u] != usize::MAX && pos[*v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect();
        let labels = vertices.iter().map(|&v| self.labels[v]).collect();
        Graph::with_labels(self.id.clone(), labels, &edges).expect("induced subgraph of a valid graph")
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut labels = vec![0; self.n()];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v];
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let mut g = Graph::with_labels(self.id.clone(), labels, &edges).expect("permutation of a valid graph");
        g.meta = self.meta.clone();
        g
    }

    /// Disjoint union; vertices of `parts[i]` follow those of `parts[i - 1]`.
    pub fn disjoint_union(id: impl Into<String>, parts: &[&Graph]) -> Graph {
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        for g in parts {
            let off = labels.len();
            labels.extend_from_slice(&g.labels);
            edges.extend(g.edges.iter().map(|&(u, v)| (u + off, v + off)));
        }
        Graph::with_labels(id, labels, &edges).expect("union of valid graphs")
    }

    pub(crate) fn adjacency_bits(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "bit adjacency needs n <= 64");
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &w| m | (1u64 << w)))
            .collect()
    }

    // Small named graphs used throughout tests, examples and the advisor.

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(format!("P{n}"), n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(format!("C{n}"), n, &edges).unwrap()
    }

    pub fn clique(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(format!("K{n}"), n, &edges).unwrap()
    }
}

/// A connected graph with a distinguished root vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct RootedPattern {
    graph: Graph,
    root: usize,
}

impl RootedPattern {
    pub fn new(graph: Graph, root: usize) -> Result<RootedPattern> {
        if root >= graph.n() {
            return Err(Error::RootOutOfRange {
                root: root as i64,
                n: graph.n(),
            });
        }
        if !graph.is_connected() {
            return Err(Error::DisconnectedPattern);
        }
        Ok(RootedPattern { graph, root })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_label(&self) -> Label {
        self.graph.label(self.root)
    }

    pub fn id(&self) -> &str {
        self.graph.id()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn with_id(self, id: impl Into<String>) -> RootedPattern {
        RootedPattern {
            graph: self.graph.with_id(id),
            root: self.root,
        }
    }

    /// Single vertex carrying `label`; the identity element of join.
    pub fn single_vertex(label: Label) -> RootedPattern {
        RootedPattern {
            graph: Graph::with_labels("K1", vec![label], &[]).unwrap(),
            root: 0,
        }
    }

    /// The rooted edge `L1`; its rooted count is the vertex degree.
    pub fn edge() -> RootedPattern {
        RootedPattern::new(Graph::path(2).with_id("L1"), 0).unwrap()
    }

    /// Rooted path with `len` edges, rooted at an end.
    pub fn path(len: usize) -> RootedPattern {
        RootedPattern::new(Graph::path(len + 1).with_id(format!("L{len}")), 0).unwrap()
    }

    pub fn cycle(n: usize) -> RootedPattern {
        RootedPattern::new(Graph::cycle(n), 0).unwrap()
    }

    pub fn clique(n: usize) -> RootedPattern {
        RootedPattern::new(Graph::clique(n), 0).unwrap()
    }
}
