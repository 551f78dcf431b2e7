//! Structural operations on rooted patterns.

mod partition;
mod treewidth;

pub use partition::{quotient, Partition, SetPartitions};
pub use treewidth::{
    decomposition_from_ordering, good_decomposition, min_fill_ordering, nice_decomposition,
    nice_decomposition_retaining, treewidth, NiceKind, NiceNode, NiceTreeDecomposition, TreeDecomposition,
    TREEWIDTH_GUARD,
};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{count_isomorphisms, rooted_canonical_code, CanonicalCode, Graph, RootedPattern};
use crate::hom::hom_exists;

/// Largest pattern whose set partitions are enumerated (Bell(10) = 115975).
pub const SPASM_GUARD: usize = 10;

/// Disjoint union of `p` and `q` with the roots identified. The result's root is `p`'s root;
/// `q`'s other vertices follow `p`'s in their original order.
pub fn join(p: &RootedPattern, q: &RootedPattern) -> Result<RootedPattern> {
    if p.root_label() != q.root_label() {
        return Err(Error::RootLabelMismatch {
            left: p.root_label(),
            right: q.root_label(),
        });
    }
    let (pg, qg) = (p.graph(), q.graph());
    let mut map = vec![0; qg.n()];
    let mut labels = pg.labels().to_vec();
    for (v, slot) in map.iter_mut().enumerate() {
        if v == q.root() {
            *slot = p.root();
        } else {
            *slot = labels.len();
            labels.push(qg.label(v));
        }
    }
    let mut edges: Vec<(usize, usize)> = pg.edges().to_vec();
    edges.extend(qg.edges().iter().map(|&(u, v)| (map[u], map[v])));
    let g = Graph::with_labels(format!("{}*{}", p.id(), q.id()), labels, &edges)?;
    RootedPattern::new(g, p.root())
}

/// Join of a list of patterns; `None` for an empty list.
pub fn join_all(parts: &[RootedPattern]) -> Result<Option<RootedPattern>> {
    let mut iter = parts.iter();
    let Some(first) = iter.next() else {
        return Ok(None);
    };
    let mut acc = first.clone();
    for q in iter {
        acc = join(&acc, q)?;
    }
    Ok(Some(acc))
}

fn rooted_induced(p: &RootedPattern, vertices: &[usize]) -> RootedPattern {
    let root = vertices.iter().position(|&v| v == p.root()).expect("root kept");
    RootedPattern::new(p.graph().induced_subgraph(vertices), root).expect("root component is connected")
}

/// Splits `p` at its root into one factor per component of `p - root`, root kept in each.
/// A pattern that does not split yields itself.
pub fn join_factors(p: &RootedPattern) -> Vec<RootedPattern> {
    let r = p.root();
    let rest: Vec<usize> = (0..p.n()).filter(|&v| v != r).collect();
    let without = p.graph().induced_subgraph(&rest);
    let comps = without.components();
    if comps.len() <= 1 {
        return vec![p.clone()];
    }
    comps
        .iter()
        .enumerate()
        .map(|(i, comp)| {
            let mut vs: Vec<usize> = comp.iter().map(|&k| rest[k]).collect();
            vs.push(r);
            vs.sort_unstable();
            rooted_induced(p, &vs).with_id(format!("{}[{i}]", p.id()))
        })
        .collect()
}

/// If removing the root disconnects `p`, the pair (first root component, everything else).
pub fn is_join_decomposable(p: &RootedPattern) -> Option<(RootedPattern, RootedPattern)> {
    let factors = join_factors(p);
    if factors.len() < 2 {
        return None;
    }
    let first = factors[0].clone();
    let first_vertices: Vec<usize> = {
        let r = p.root();
        let rest: Vec<usize> = (0..p.n()).filter(|&v| v != r).collect();
        let comps = p.graph().induced_subgraph(&rest).components();
        comps[0].iter().map(|&k| rest[k]).collect()
    };
    let others: Vec<usize> = (0..p.n()).filter(|v| !first_vertices.contains(v)).collect();
    let second = rooted_induced(p, &others).with_id(format!("{}[rest]", p.id()));
    Some((first, second))
}

/// Root-preserving automorphisms of `p`.
pub fn automorphism_count(p: &RootedPattern) -> u64 {
    count_isomorphisms(p.graph(), p.graph(), Some((p.root(), p.root())), u64::MAX)
}

/// Automorphisms of the underlying graph.
pub fn graph_automorphism_count(g: &Graph) -> u64 {
    count_isomorphisms(g, g, None, u64::MAX)
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n)
        .filter(move |m| m.count_ones() as usize == k)
        .map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

/// Smallest induced subgraph that `p` maps onto homomorphically (its core). The root goes to
/// whichever reachable image gives the smallest rooted canonical code.
pub fn core_of(p: &RootedPattern) -> RootedPattern {
    let g = p.graph();
    let n = g.n();
    let lower = if g.edge_count() > 0 { 2 } else { 1 };
    for k in lower..n {
        let mut best: Option<(CanonicalCode, RootedPattern)> = None;
        for s in subsets_of_size(n, k) {
            let h = g.induced_subgraph(&s);
            if !h.is_connected() || !hom_exists(g, &h, None) {
                continue;
            }
            for x in 0..k {
                if h.label(x) != p.root_label() || !hom_exists(g, &h, Some((p.root(), x))) {
                    continue;
                }
                let cand = RootedPattern::new(h.clone(), x).expect("connected");
                let code = rooted_canonical_code(&cand);
                if best.as_ref().is_none_or(|(c, _)| code < *c) {
                    best = Some((code, cand));
                }
            }
        }
        if let Some((_, core)) = best {
            return core.with_id(format!("core({})", p.id()));
        }
    }
    p.clone()
}

/// Whether every endomorphism of `p` is injective.
pub fn is_core(g: &Graph) -> bool {
    let n = g.n();
    let lower = if g.edge_count() > 0 { 2 } else { 1 };
    !(lower..n).any(|k| {
        subsets_of_size(n, k).any(|s| hom_exists(g, &g.induced_subgraph(&s), None))
    })
}

/// One member of the spasm together with the summed partition-lattice weight of every
/// partition whose quotient lands in its rooted isomorphism class.
#[derive(Clone, Debug)]
pub struct SpasmTerm {
    pub pattern: RootedPattern,
    pub coefficient: i128,
}

/// All loop-free quotients of `p` up to rooted isomorphism, with Möbius coefficients,
/// sorted by rooted canonical code.
pub fn spasm_expansion(p: &RootedPattern) -> Result<Vec<SpasmTerm>> {
    if p.n() > SPASM_GUARD {
        return Err(Error::Guard {
            what: "spasm pattern",
            size: p.n(),
            limit: SPASM_GUARD,
        });
    }
    let mut classes: BTreeMap<CanonicalCode, SpasmTerm> = BTreeMap::new();
    for part in SetPartitions::new(p.n()) {
        let Some(q) = quotient(p.graph(), &part) else {
            continue;
        };
        let rq = RootedPattern::new(q, part.block_of(p.root())).expect("quotient of connected is connected");
        let weight = part
            .mobius_from_bottom()
            .ok_or_else(|| Error::overflow("partition weight"))?;
        let code = rooted_canonical_code(&rq);
        let term = classes.entry(code).or_insert(SpasmTerm {
            pattern: rq,
            coefficient: 0,
        });
        term.coefficient = term
            .coefficient
            .checked_add(weight)
            .ok_or_else(|| Error::overflow("spasm coefficient"))?;
    }
    Ok(classes
        .into_values()
        .enumerate()
        .map(|(i, mut t)| {
            t.pattern = t.pattern.with_id(format!("{}/q{i}", p.id()));
            t
        })
        .collect())
}

/// The spasm of `p`: loop-free, label-consistent quotients up to rooted isomorphism.
pub fn spasm(p: &RootedPattern) -> Result<Vec<RootedPattern>> {
    Ok(spasm_expansion(p)?.into_iter().map(|t| t.pattern).collect())
}
