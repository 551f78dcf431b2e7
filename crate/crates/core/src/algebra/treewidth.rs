//! Exact treewidth over elimination orderings and nice tree decompositions.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest pattern accepted by the exact subset DP.
pub const TREEWIDTH_GUARD: usize = 14;

/// Bags over pattern vertices, connected by an undirected tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Max bag size minus one; `-1` for the empty decomposition.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    /// A single bag holding every vertex.
    pub fn trivial(g: &Graph) -> TreeDecomposition {
        TreeDecomposition {
            bags: vec![(0..g.n()).collect()],
            tree: vec![],
        }
    }

    /// Checks every decomposition invariant against `g`, naming the first one that fails.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let k = self.bags.len();
        if g.n() > 0 && k == 0 {
            return Err("no bags".into());
        }
        if k > 0 && self.tree.len() != k - 1 {
            return Err(format!("{} tree edges for {} nodes", self.tree.len(), k));
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &self.tree {
            if a >= k || b >= k || a == b {
                return Err(format!("bad tree edge ({a}, {b})"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if k > 0 && reachable(&adj, 0, |_| true).iter().filter(|&&s| s).count() != k {
            return Err("tree is disconnected".into());
        }
        for bag in &self.bags {
            if let Some(&v) = bag.iter().find(|&&v| v >= g.n()) {
                return Err(format!("bag vertex {v} out of range"));
            }
        }
        for v in 0..g.n() {
            let holds: Vec<bool> = self.bags.iter().map(|b| b.contains(&v)).collect();
            let Some(start) = holds.iter().position(|&h| h) else {
                return Err(format!("vertex {v} is in no bag"));
            };
            let seen = reachable(&adj, start, |t| holds[t]);
            if (0..k).any(|t| holds[t] && !seen[t]) {
                return Err(format!("bags containing vertex {v} are not connected"));
            }
        }
        for &(u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(format!("edge ({u}, {v}) is in no bag"));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut q = VecDeque::from([start]);
    while let Some(t) = q.pop_front() {
        for &s in &adj[t] {
            if !seen[s] && allowed(s) {
                seen[s] = true;
                q.push_back(s);
            }
        }
    }
    seen
}

/// Vertices outside `set ∪ {v}` reachable from `v` through `set`.
fn q_size(adj: &[u64], set: u64, v: usize) -> u32 {
    let mut visited = 1u64 << v;
    let mut frontier = 1u64 << v;
    let mut outside = 0u64;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[u];
        }
        next &= !visited;
        visited |= next;
        outside |= next & !set;
        frontier = next & set;
    }
    outside.count_ones()
}

/// Elimination ordering from the subset DP: `tw(S) = min_v max(tw(S \ v), |Q(S \ v, v)|)`.
fn optimal_ordering(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let adj = g.adjacency_bits();
    let full = (1usize << n) - 1;
    let mut tw = vec![u32::MAX; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cost = tw[prev].max(q_size(&adj, prev as u64, v));
            if cost < tw[s] {
                tw[s] = cost;
                choice[s] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    order
}

/// Greedy min-fill ordering; valid but not necessarily optimal.
pub fn min_fill_ordering(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| {
                let nb: Vec<usize> = adj[v].iter().copied().collect();
                let mut fill = 0;
                for i in 0..nb.len() {
                    for j in i + 1..nb.len() {
                        if !adj[nb[i]].contains(&nb[j]) {
                            fill += 1;
                        }
                    }
                }
                (fill, nb.len(), v)
            })
            .unwrap();
        let nb: Vec<usize> = adj[best].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&best);
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        alive[best] = false;
        order.push(best);
    }
    order
}

/// Decomposition induced by eliminating vertices in `order`.
pub fn decomposition_from_ordering(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { bags: vec![vec![]], tree: vec![] };
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut tree = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        match later.iter().min_by_key(|&&w| pos[w]) {
            Some(&w) => tree.push((i, pos[w])),
            None => roots.push(i),
        }
    }
    // one tree per component; chain them
    for pair in roots.windows(2) {
        tree.push((pair[0], pair[1]));
    }
    TreeDecomposition { bags, tree }
}

/// Exact treewidth with a witnessing decomposition.
pub fn treewidth(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    if g.n() > TREEWIDTH_GUARD {
        return Err(Error::Guard {
            what: "treewidth pattern",
            size: g.n(),
            limit: TREEWIDTH_GUARD,
        });
    }
    if g.n() == 0 {
        return Ok((0, TreeDecomposition { bags: vec![vec![]], tree: vec![] }));
    }
    let td = decomposition_from_ordering(g, &optimal_ordering(g));
    Ok((td.width().max(0) as usize, td))
}

/// Exact decomposition when the guard allows it, min-fill otherwise.
pub fn good_decomposition(g: &Graph) -> TreeDecomposition {
    match treewidth(g) {
        Ok((_, td)) => td,
        Err(_) => decomposition_from_ordering(g, &min_fill_ordering(g)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted binary decomposition where each node changes its child's bag by one vertex.
/// Children always precede their parent in `nodes`, so a forward scan is a post-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> isize {
        self.nodes.iter().map(|n| n.bag.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Checks node typing and that the underlying bags form a decomposition of `g`.
    pub fn validate(&self, g: &Graph, root_bag: &[usize]) -> std::result::Result<(), String> {
        for (i, node) in self.nodes.iter().enumerate() {
            if node.children.iter().any(|&c| c >= i) {
                return Err(format!("node {i} has a child that is not earlier"));
            }
            let child_bag = |k: usize| &self.nodes[node.children[k]].bag;
            let ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    node.children.len() == 1 && !child_bag(0).contains(&v) && with(child_bag(0), v) == node.bag
                }
                NiceKind::Forget(v) => {
                    node.children.len() == 1 && child_bag(0).contains(&v) && with(&node.bag, v) == *child_bag(0)
                }
                NiceKind::Join => {
                    node.children.len() == 2 && *child_bag(0) == node.bag && *child_bag(1) == node.bag
                }
            };
            if !ok {
                return Err(format!("node {i} ({:?}) does not match its children", node.kind));
            }
        }
        if self.nodes[self.root].bag != root_bag {
            return Err("unexpected root bag".into());
        }
        let td = TreeDecomposition {
            bags: self.nodes.iter().map(|n| n.bag.clone()).collect(),
            tree: self
                .nodes
                .iter()
                .enumerate()
                .flat_map(|(i, n)| n.children.iter().map(move |&c| (c, i)))
                .collect(),
        };
        td.validate(g)
    }
}

fn with(bag: &[usize], v: usize) -> Vec<usize> {
    let mut b = bag.to_vec();
    b.push(v);
    b.sort_unstable();
    b
}

fn without(bag: &[usize], v: usize) -> Vec<usize> {
    bag.iter().copied().filter(|&x| x != v).collect()
}

struct Builder<'a> {
    td: &'a TreeDecomposition,
    adj: Vec<Vec<usize>>,
    nodes: Vec<NiceNode>,
}

impl Builder<'_> {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Walks from `node`'s bag to `target` by forgets then introduces.
    fn morph(&mut self, mut node: usize, target: &[usize]) -> usize {
        let current = self.nodes[node].bag.clone();
        for &v in current.iter().filter(|v| !target.contains(v)) {
            let bag = without(&self.nodes[node].bag, v);
            node = self.push(NiceKind::Forget(v), bag, vec![node]);
        }
        for &v in target.iter().filter(|v| !current.contains(v)) {
            let bag = with(&self.nodes[node].bag, v);
            node = self.push(NiceKind::Introduce(v), bag, vec![node]);
        }
        node
    }

    /// Nice subtree whose top bag equals bag `t`. Iterative post-order so deep trees are fine.
    fn build(&mut self, t: usize, parent: Option<usize>) -> usize {
        enum Step {
            Enter(usize, Option<usize>),
            Exit(usize, Option<usize>),
        }
        let mut stack = vec![Step::Enter(t, parent)];
        let mut results: Vec<Vec<usize>> = vec![Vec::new(); self.td.bags.len()];
        let mut top = 0;
        while let Some(step) = stack.pop() {
            match step {
                Step::Enter(t, p) => {
                    stack.push(Step::Exit(t, p));
                    for &c in self.adj[t].iter().rev() {
                        if Some(c) != p {
                            stack.push(Step::Enter(c, Some(t)));
                        }
                    }
                }
                Step::Exit(t, p) => {
                    let mut target = self.td.bags[t].clone();
                    target.sort_unstable();
                    let subs = std::mem::take(&mut results[t]);
                    let mut acc: Option<usize> = None;
                    for sub in subs {
                        let morphed = self.morph(sub, &target);
                        acc = Some(match acc {
                            None => morphed,
                            Some(a) => self.push(NiceKind::Join, target.clone(), vec![a, morphed]),
                        });
                    }
                    let node = match acc {
                        Some(a) => a,
                        None => {
                            let leaf = self.push(NiceKind::Leaf, vec![], vec![]);
                            self.morph(leaf, &target)
                        }
                    };
                    match p {
                        Some(p) => results[p].push(node),
                        None => top = node,
                    }
                }
            }
        }
        top
    }
}

fn nice_with_root(td: &TreeDecomposition, start: usize, root_bag: &[usize]) -> NiceTreeDecomposition {
    let mut adj = vec![Vec::new(); td.bags.len()];
    for &(a, b) in &td.tree {
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut b = Builder {
        td,
        adj,
        nodes: Vec::new(),
    };
    let top = b.build(start, None);
    let root = b.morph(top, root_bag);
    NiceTreeDecomposition { nodes: b.nodes, root }
}

/// Nice decomposition with an empty root bag.
pub fn nice_decomposition(td: &TreeDecomposition) -> NiceTreeDecomposition {
    nice_with_root(td, 0, &[])
}

/// Nice decomposition whose root bag is exactly `{keep}`, so the DP table at the root is
/// indexed by the image of `keep`.
pub fn nice_decomposition_retaining(td: &TreeDecomposition, keep: usize) -> NiceTreeDecomposition {
    let start = td
        .bags
        .iter()
        .position(|b| b.contains(&keep))
        .expect("kept vertex is covered");
    nice_with_root(td, start, &[keep])
}
