//! Canonical codes by individualisation-refinement.
//!
//! The search tree is built from an ordered equitable partition that only
//! depends on labels and adjacency, so the minimum leaf code is an invariant.
//! Automorphisms found at equal leaves prune sibling branches in the same
//! orbit of the current point stabiliser.

use std::fmt;

use super::{Graph, RootedPattern};

/// Byte string equal for two graphs iff they are isomorphic.
/// Codes sort by vertex count first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

type Cells = Vec<Vec<usize>>;

struct Search<'a> {
    g: &'a Graph,
    adj: Vec<bool>,
    rooted: bool,
    best: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.g.n() + v]
    }

    fn refine(&self, mut cells: Cells) -> Cells {
        let n = self.g.n();
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let k = cells.len();
            let mut next: Cells = Vec::with_capacity(k);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut counts = vec![0u32; k];
                        for &w in self.g.neighbors(v) {
                            counts[cell_of[w]] += 1;
                        }
                        (counts, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == k {
                return next;
            }
            cells = next;
        }
    }

    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let n = order.len();
        let mut out = Vec::with_capacity(5 + 4 * n + n * n / 16 + 1);
        out.extend_from_slice(&(n as u32).to_be_bytes());
        out.push(self.rooted as u8);
        for &v in order {
            out.extend_from_slice(&self.g.label(v).to_be_bytes());
        }
        let mut byte = 0u8;
        let mut bits = 0;
        for i in 0..n {
            for j in i + 1..n {
                byte = (byte << 1) | self.adjacent(order[i], order[j]) as u8;
                bits += 1;
                if bits == 8 {
                    out.push(byte);
                    byte = 0;
                    bits = 0;
                }
            }
        }
        if bits > 0 {
            out.push(byte << (8 - bits));
        }
        out
    }

    fn leaf(&mut self, cells: &Cells) {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = self.encode(&order);
        match &self.best {
            None => self.best = Some((code, order)),
            Some((best, best_order)) => match code.cmp(best) {
                std::cmp::Ordering::Less => self.best = Some((code, order)),
                std::cmp::Ordering::Equal => {
                    let mut gamma = vec![0; order.len()];
                    for (a, b) in best_order.iter().zip(&order) {
                        gamma[*a] = *b;
                    }
                    self.autos.push(gamma);
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// True if `v` lies in the orbit of some explored vertex under automorphisms fixing `path`.
    fn pruned(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        if explored.is_empty() || self.autos.is_empty() {
            return false;
        }
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for gamma in &self.autos {
            if path.iter().any(|&x| gamma[x] != x) {
                continue;
            }
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn run(&mut self, cells: Cells, path: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut explored = Vec::new();
        for &v in &cells[target] {
            if self.pruned(path, &explored, v) {
                continue;
            }
            let mut next: Cells = Vec::with_capacity(cells.len() + 1);
            next.extend(cells[..target].iter().cloned());
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&x| x != v).collect());
            next.extend(cells[target + 1..].iter().cloned());
            let next = self.refine(next);
            path.push(v);
            self.run(next, path);
            path.pop();
            explored.push(v);
        }
    }
}

fn canonical(g: &Graph, root: Option<usize>) -> CanonicalCode {
    let n = g.n();
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let mut s = Search {
        g,
        adj,
        rooted: root.is_some(),
        best: None,
        autos: Vec::new(),
    };
    if n == 0 {
        return CanonicalCode(s.encode(&[]));
    }
    let mut keyed: Vec<((bool, u32), usize)> = (0..n).map(|v| ((Some(v) != root, g.label(v)), v)).collect();
    keyed.sort();
    let mut cells: Cells = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || keyed[i].0 != keyed[start].0 {
            cells.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
            start = i;
        }
    }
    let cells = s.refine(cells);
    s.run(cells, &mut Vec::new());
    CanonicalCode(s.best.expect("search reaches a leaf").0)
}

/// Canonical code of an unrooted graph.
pub fn canonical_code(g: &Graph) -> CanonicalCode {
    canonical(g, None)
}

/// Canonical code up to root-preserving isomorphism.
pub fn rooted_canonical_code(p: &RootedPattern) -> CanonicalCode {
    canonical(p.graph(), Some(p.root()))
}
