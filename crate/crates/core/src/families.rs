//! Graph pairs that separate the refinement tests: the two small fixtures, unions of cycles,
//! and the parity construction over a core pattern.

use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedPattern};

fn with_vertex(g: Graph, family: &str, v: usize) -> Graph {
    g.with_meta(json!({"family": family, "distinguished_vertex": v}))
}

/// Two graphs on six vertices that 1-WL cannot tell apart but triangle counts can.
/// Vertex 0 is the marked vertex in both.
pub fn fig1_pair() -> (Graph, Graph) {
    let g = Graph::new("G1", 6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap();
    let h = Graph::new("H1", 6, &[(0, 1), (0, 2), (1, 3), (2, 4), (2, 3), (3, 5), (4, 5)]).unwrap();
    (with_vertex(g, "fig1", 0), with_vertex(h, "fig1", 0))
}

/// Two graphs on nine vertices with equal rooted triangle counts everywhere, separated after
/// one round of refinement. Vertex 4 is the marked vertex in both.
pub fn fig2_pair() -> (Graph, Graph) {
    let g = Graph::new(
        "G2",
        9,
        &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 5), (3, 4), (3, 6), (4, 5), (5, 7), (6, 7), (6, 8), (7, 8)],
    )
    .unwrap();
    let h = Graph::new(
        "H2",
        9,
        &[(0, 1), (0, 2), (0, 4), (1, 2), (1, 3), (2, 5), (3, 6), (5, 8), (6, 8), (6, 7), (8, 7), (7, 4)],
    )
    .unwrap();
    (with_vertex(g, "fig2", 4), with_vertex(h, "fig2", 4))
}

fn cycles(id: String, copies: usize, len: usize) -> Graph {
    let c = Graph::cycle(len);
    let parts: Vec<&Graph> = std::iter::repeat_n(&c, copies).collect();
    Graph::disjoint_union(id, &parts)
}

/// `m + 2` copies of `C_{m+1}` against `m + 1` copies of `C_{m+2}`.
pub fn cycle_union_pair(m: usize) -> Result<(Graph, Graph)> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("cycle-union needs m >= 3, got {m}")));
    }
    let meta = json!({"family": "cycle-union", "m": m});
    Ok((
        cycles(format!("{}xC{}", m + 2, m + 1), m + 2, m + 1).with_meta(meta.clone()),
        cycles(format!("{}xC{}", m + 1, m + 2), m + 1, m + 2).with_meta(meta),
    ))
}

/// `k` copies of `C_{k+1}` against `k + 1` copies of `C_k`.
pub fn cycle_hierarchy_pair(k: usize) -> Result<(Graph, Graph)> {
    if k < 4 {
        return Err(Error::InvalidArgument(format!("cycle-hierarchy needs k >= 4, got {k}")));
    }
    let meta = json!({"family": "cycle-hierarchy", "k": k});
    Ok((
        cycles(format!("{k}xC{}", k + 1), k, k + 1).with_meta(meta.clone()),
        cycles(format!("{}xC{k}", k + 1), k + 1, k).with_meta(meta),
    ))
}

/// Vertices `(v, f)` of the parity construction, in output order: by base vertex, then by
/// `f` read as a bit string over `v`'s incident edges (sorted by other endpoint).
pub fn cfi_vertices(p: &Graph, odd_at: Option<usize>) -> Vec<(usize, Vec<bool>)> {
    let mut out = Vec::new();
    for v in 0..p.n() {
        let deg = p.degree(v);
        let want = odd_at == Some(v);
        for value in 0u64..1 << deg {
            let f: Vec<bool> = (0..deg).map(|i| value >> (deg - 1 - i) & 1 == 1).collect();
            if (f.iter().filter(|&&b| b).count() % 2 == 1) == want {
                out.push((v, f));
            }
        }
    }
    out
}

fn cfi_graph(p: &Graph, odd_at: Option<usize>, id: String) -> Graph {
    let verts = cfi_vertices(p, odd_at);
    let slot = |v: usize, u: usize| p.neighbors(v).binary_search(&u).unwrap();
    let mut edges = Vec::new();
    for (i, (v, f)) in verts.iter().enumerate() {
        for (j, (u, g)) in verts.iter().enumerate().skip(i + 1) {
            if v != u && p.has_edge(*v, *u) && f[slot(*v, *u)] == g[slot(*u, *v)] {
                edges.push((i, j));
            }
        }
    }
    Graph::new(id, verts.len(), &edges).expect("parity graph is simple")
}

/// Twisted and untwisted parity graphs over `p`. The twist sits at `v1`, which defaults to
/// the root and must have at least two neighbours.
pub fn cfi_pair(p: &RootedPattern, v1: Option<usize>) -> Result<(Graph, Graph)> {
    let v1 = v1.unwrap_or(p.root());
    let g = p.graph();
    if v1 >= g.n() {
        return Err(Error::InvalidArgument(format!("v1 = {v1} is not a pattern vertex")));
    }
    if g.degree(v1) < 2 {
        return Err(Error::InvalidArgument(format!(
            "v1 = {v1} has degree {}, the construction needs at least 2",
            g.degree(v1)
        )));
    }
    if g.n() > 30 || (0..g.n()).any(|v| g.degree(v) > 20) {
        return Err(Error::Guard {
            what: "parity construction pattern",
            size: g.n(),
            limit: 30,
        });
    }
    let meta = |twisted: bool| json!({"family": "cfi", "pattern": p.id(), "v1": v1, "twisted": twisted});
    let twisted = cfi_graph(g, Some(v1), format!("cfi({})-twisted", p.id())).with_meta(meta(true));
    let untwisted = cfi_graph(g, None, format!("cfi({})-untwisted", p.id())).with_meta(meta(false));
    Ok((twisted, untwisted))
}
