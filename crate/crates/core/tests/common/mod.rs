#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hompat::algebra::TreeDecomposition;
use hompat::graph::Label;
use hompat::{Graph, RootedPattern};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, id: &str, n: usize, p: f64, labels: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let ls: Vec<Label> = (0..n).map(|_| rng.gen_range(0..labels)).collect();
    Graph::with_labels(id, ls, &edges).unwrap()
}

/// Random connected graph: a random spanning tree plus extra edges with probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, id: &str, n: usize, p: f64, labels: u32) -> Graph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let ls: Vec<Label> = (0..n).map(|_| rng.gen_range(0..labels)).collect();
    Graph::with_labels(id, ls, &edges).unwrap()
}

pub fn random_pattern(rng: &mut ChaCha8Rng, id: &str, max_n: usize, p: f64, labels: u32) -> RootedPattern {
    let n = rng.gen_range(1..=max_n);
    let g = random_connected(rng, id, n, p, labels);
    let root = rng.gen_range(0..n);
    RootedPattern::new(g, root).unwrap()
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Every map from `p` to `g` (optionally injective, optionally rooted), checked edge by edge
/// once complete. Calls `visit` with each valid map.
pub fn each_map(p: &Graph, g: &Graph, anchor: Option<(usize, usize)>, injective: bool, visit: &mut dyn FnMut(&[usize])) {
    let (pa, ga) = (adjacency(p), adjacency(g));
    let mut map = vec![usize::MAX; p.n()];
    fn rec(
        i: usize,
        p: &Graph,
        g: &Graph,
        pa: &[Vec<bool>],
        ga: &[Vec<bool>],
        anchor: Option<(usize, usize)>,
        injective: bool,
        map: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if i == p.n() {
            visit(map);
            return;
        }
        for x in 0..g.n() {
            if let Some((r, v)) = anchor {
                if i == r && x != v {
                    continue;
                }
            }
            if p.label(i) != g.label(x) || (injective && map[..i].contains(&x)) {
                continue;
            }
            if (0..i).any(|j| pa[i][j] && !ga[x][map[j]]) {
                continue;
            }
            map[i] = x;
            rec(i + 1, p, g, pa, ga, anchor, injective, map, visit);
        }
        map[i] = usize::MAX;
    }
    rec(0, p, g, &pa, &ga, anchor, injective, &mut map, visit);
}

pub fn oracle_hom(p: &Graph, g: &Graph, anchor: Option<(usize, usize)>) -> u128 {
    let mut c = 0u128;
    each_map(p, g, anchor, false, &mut |_| c += 1);
    c
}

/// Distinct rooted copies of `p` in `g` with the root at `v`: images of injective maps,
/// identified by their vertex set and edge set.
pub fn oracle_sub(p: &RootedPattern, g: &Graph, v: usize) -> u128 {
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let pg = p.graph();
    each_map(pg, g, Some((p.root(), v)), true, &mut |m| {
        let mut key: Vec<(usize, usize)> = pg
            .edges()
            .iter()
            .map(|&(a, b)| (m[a].min(m[b]), m[a].max(m[b])))
            .collect();
        key.sort_unstable();
        let mut verts: Vec<usize> = m.to_vec();
        verts.sort_unstable();
        key.extend(verts.into_iter().map(|x| (x, usize::MAX)));
        seen.insert(key);
    });
    seen.len() as u128
}

/// Checks the decomposition invariants without using the library's validator.
pub fn check_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<(), String> {
    let k = td.bags.len();
    if g.n() > 0 && k == 0 {
        return Err("no bags".into());
    }
    if k > 0 && td.tree.len() != k - 1 {
        return Err(format!("{} tree edges for {k} bags", td.tree.len()));
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.tree {
        if a >= k || b >= k {
            return Err("tree edge out of range".into());
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let reach = |allowed: &dyn Fn(usize) -> bool, start: usize| -> usize {
        let mut seen = vec![false; k];
        let mut q = VecDeque::from([start]);
        seen[start] = true;
        let mut count = 1;
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if !seen[y] && allowed(y) {
                    seen[y] = true;
                    count += 1;
                    q.push_back(y);
                }
            }
        }
        count
    };
    if k > 0 && reach(&|_| true, 0) != k {
        return Err("bags not connected".into());
    }
    for v in 0..g.n() {
        let holders: Vec<usize> = (0..k).filter(|&b| td.bags[b].contains(&v)).collect();
        if holders.is_empty() {
            return Err(format!("vertex {v} uncovered"));
        }
        if reach(&|b| td.bags[b].contains(&v), holders[0]) != holders.len() {
            return Err(format!("bags holding {v} not connected"));
        }
    }
    for &(u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Err(format!("edge ({u}, {v}) uncovered"));
        }
    }
    Ok(())
}

/// Treewidth by trying every elimination order (small graphs only).
pub fn oracle_treewidth(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let adj = adjacency(g);
    let mut best = usize::MAX;
    let mut order: Vec<usize> = (0..n).collect();
    permute(&mut order, 0, &mut |ord| {
        let mut a = adj.clone();
        let mut gone = vec![false; n];
        let mut width = 0;
        for &v in ord {
            let nb: Vec<usize> = (0..n).filter(|&u| !gone[u] && u != v && a[v][u]).collect();
            width = width.max(nb.len());
            for &x in &nb {
                for &y in &nb {
                    if x != y {
                        a[x][y] = true;
                    }
                }
            }
            gone[v] = true;
        }
        best = best.min(width);
    });
    best
}

fn permute(xs: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == xs.len() {
        f(xs);
        return;
    }
    for j in i..xs.len() {
        xs.swap(i, j);
        permute(xs, i + 1, f);
        xs.swap(i, j);
    }
}

/// Sample mean and sample standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn dataset_jsonl(graphs: &[Graph]) -> String {
    let alphabet = hompat::LabelAlphabet::new();
    graphs
        .iter()
        .map(|g| hompat::graph::serialize_graph(g, &alphabet) + "\n")
        .collect()
}

/// Every connected rooted pattern on at most `max_n` unlabeled vertices, one per rooted
/// isomorphism class.
pub fn connected_rooted_patterns(max_n: usize) -> Vec<RootedPattern> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for n in 1..=max_n {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << slots.len() {
            let edges: Vec<_> = (0..slots.len()).filter(|&i| mask >> i & 1 == 1).map(|i| slots[i]).collect();
            let g = Graph::new(format!("p{n}_{mask}"), n, &edges).unwrap();
            if !g.is_connected() {
                continue;
            }
            for r in 0..n {
                let p = RootedPattern::new(g.clone(), r).unwrap().with_id(format!("p{n}_{mask}_r{r}"));
                if seen.insert(hompat::graph::rooted_canonical_code(&p)) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Disjoint cycles covering `n` vertices with random lengths of at least 3.
pub fn random_two_regular(rng: &mut ChaCha8Rng, id: &str, n: usize) -> Graph {
    let mut lens = Vec::new();
    let mut left = n;
    while left > 0 {
        let len = if left < 6 { left } else { rng.gen_range(3..=left - 3) };
        lens.push(len);
        left -= len;
    }
    let cycles: Vec<Graph> = lens.iter().map(|&l| Graph::cycle(l)).collect();
    let refs: Vec<&Graph> = cycles.iter().collect();
    Graph::disjoint_union(id, &refs)
}

pub fn shuffled(rng: &mut ChaCha8Rng, g: &Graph, id: &str) -> Graph {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.permuted(&perm).with_id(id)
}
