//! Backtracking isomorphism search with label/degree pruning.
//!
//! Kept independent of the canonical labelling in `canon.rs` so each can be
//! used to check the other.

use std::collections::VecDeque;

use super::{Graph, RootedPattern};

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    anchor_parent: Vec<Option<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
    found: u64,
    limit: u64,
}

impl Matcher<'_> {
    fn search(&mut self, i: usize) {
        if self.found >= self.limit {
            return;
        }
        if i == self.order.len() {
            self.found += 1;
            return;
        }
        let u = self.order[i];
        if self.map[u] != usize::MAX {
            // pre-fixed vertex (rooted search)
            if self.consistent(i, u, self.map[u]) {
                self.search(i + 1);
            }
            return;
        }
        let candidates: Vec<usize> = match self.anchor_parent[i] {
            Some(p) => self.h.neighbors(self.map[p]).to_vec(),
            None => (0..self.h.n()).collect(),
        };
        for x in candidates {
            if self.used[x] || !self.consistent(i, u, x) {
                continue;
            }
            self.map[u] = x;
            self.used[x] = true;
            self.search(i + 1);
            self.used[x] = false;
            self.map[u] = usize::MAX;
            if self.found >= self.limit {
                return;
            }
        }
    }

    fn consistent(&self, i: usize, u: usize, x: usize) -> bool {
        if self.g.label(u) != self.h.label(x) || self.g.degree(u) != self.h.degree(x) {
            return false;
        }
        self.order[..i]
            .iter()
            .all(|&w| self.g.has_edge(u, w) == self.h.has_edge(x, self.map[w]))
    }
}

fn signature(g: &Graph) -> Vec<(u32, usize)> {
    let mut s: Vec<_> = (0..g.n()).map(|v| (g.label(v), g.degree(v))).collect();
    s.sort_unstable();
    s
}

/// Counts label- and edge-preserving bijections `g -> h`, optionally forcing `fixed.0 -> fixed.1`.
/// Stops once `limit` is reached.
pub fn count_isomorphisms(g: &Graph, h: &Graph, fixed: Option<(usize, usize)>, limit: u64) -> u64 {
    if g.n() != h.n() || g.edge_count() != h.edge_count() || signature(g) != signature(h) {
        return 0;
    }
    let n = g.n();
    // BFS order so that most vertices have an already-placed neighbour.
    let mut order = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    if let Some((a, _)) = fixed {
        starts.insert(0, a);
    }
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([(s, None)]);
        while let Some((u, p)) = queue.pop_front() {
            order.push(u);
            parent.push(p);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back((w, Some(u)));
                }
            }
        }
    }
    let mut m = Matcher {
        g,
        h,
        order,
        anchor_parent: parent,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        found: 0,
        limit,
    };
    if let Some((a, b)) = fixed {
        m.map[a] = b;
        m.used[b] = true;
    }
    m.search(0);
    m.found
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    count_isomorphisms(g, h, None, 1) > 0
}

/// Isomorphism that additionally maps root to root.
pub fn is_rooted_isomorphic(p: &RootedPattern, q: &RootedPattern) -> bool {
    count_isomorphisms(p.graph(), q.graph(), Some((p.root(), q.root())), 1) > 0
}
