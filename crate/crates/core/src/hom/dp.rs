//! Homomorphism counting by dynamic programming over a nice tree decomposition of the pattern.
//!
//! Each table is a sorted list of (bag assignment, count) pairs. The assignment lists the
//! images of the bag's vertices in bag order.

use crate::algebra::{good_decomposition, nice_decomposition, nice_decomposition_retaining, NiceKind, NiceTreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedPattern};

type Table = Vec<(Vec<u32>, u128)>;

/// A pattern with its decomposition, reusable across target graphs.
#[derive(Clone, Debug)]
pub struct HomPlan {
    pattern: Graph,
    root: Option<usize>,
    nice: NiceTreeDecomposition,
}

impl HomPlan {
    /// Plan producing `hom(p^r, G^v)` for every `v` in one pass.
    pub fn rooted(p: &RootedPattern) -> HomPlan {
        let td = good_decomposition(p.graph());
        HomPlan {
            pattern: p.graph().clone(),
            root: Some(p.root()),
            nice: nice_decomposition_retaining(&td, p.root()),
        }
    }

    /// Plan producing the scalar `hom(P, G)`.
    pub fn unrooted(p: &Graph) -> HomPlan {
        let td = good_decomposition(p);
        HomPlan {
            pattern: p.clone(),
            root: None,
            nice: nice_decomposition(&td),
        }
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn is_rooted(&self) -> bool {
        self.root.is_some()
    }

    pub fn width(&self) -> isize {
        self.nice.width()
    }

    /// Per-vertex counts (rooted) or a single-element vector (unrooted).
    pub fn run(&self, g: &Graph) -> Result<Vec<u128>> {
        let overflow = || Error::overflow(format!("hom({}, {})", self.pattern.id(), g.id()));
        let p = &self.pattern;
        let mut tables: Vec<Option<Table>> = vec![None; self.nice.nodes.len()];
        for (i, node) in self.nice.nodes.iter().enumerate() {
            let table = match node.kind {
                NiceKind::Leaf => vec![(Vec::new(), 1)],
                NiceKind::Introduce(v) => {
                    let child = tables[node.children[0]].take().expect("child computed");
                    let child_bag = &self.nice.nodes[node.children[0]].bag;
                    let at = node.bag.iter().position(|&x| x == v).unwrap();
                    // positions (in the child key) of v's pattern neighbours
                    let nb: Vec<usize> = child_bag
                        .iter()
                        .enumerate()
                        .filter(|(_, &u)| p.has_edge(u, v))
                        .map(|(k, _)| k)
                        .collect();
                    let label = p.label(v);
                    let mut out = Vec::new();
                    for (key, count) in child {
                        let mut push = |x: usize| {
                            if g.label(x) != label {
                                return;
                            }
                            if nb[1.min(nb.len())..].iter().any(|&k| !g.has_edge(x, key[k] as usize)) {
                                return;
                            }
                            let mut k2 = Vec::with_capacity(key.len() + 1);
                            k2.extend_from_slice(&key[..at]);
                            k2.push(x as u32);
                            k2.extend_from_slice(&key[at..]);
                            out.push((k2, count));
                        };
                        match nb.first() {
                            Some(&k) => g.neighbors(key[k] as usize).iter().for_each(|&x| push(x)),
                            None => (0..g.n()).for_each(&mut push),
                        }
                    }
                    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
                    out
                }
                NiceKind::Forget(v) => {
                    let child = tables[node.children[0]].take().expect("child computed");
                    let child_bag = &self.nice.nodes[node.children[0]].bag;
                    let at = child_bag.iter().position(|&x| x == v).unwrap();
                    let mut dropped: Table = child
                        .into_iter()
                        .map(|(mut key, c)| {
                            key.remove(at);
                            (key, c)
                        })
                        .collect();
                    dropped.sort_by(|a, b| a.0.cmp(&b.0));
                    let mut out: Table = Vec::with_capacity(dropped.len());
                    for (key, c) in dropped {
                        match out.last_mut() {
                            Some((k, total)) if *k == key => *total = total.checked_add(c).ok_or_else(overflow)?,
                            _ => out.push((key, c)),
                        }
                    }
                    out
                }
                NiceKind::Join => {
                    let mut a = tables[node.children[0]].take().expect("child computed");
                    let b = tables[node.children[1]].take().expect("child computed");
                    let mut out = Vec::with_capacity(a.len().min(b.len()));
                    let (mut i, mut j) = (0, 0);
                    while i < a.len() && j < b.len() {
                        match a[i].0.cmp(&b[j].0) {
                            std::cmp::Ordering::Less => i += 1,
                            std::cmp::Ordering::Greater => j += 1,
                            std::cmp::Ordering::Equal => {
                                let c = a[i].1.checked_mul(b[j].1).ok_or_else(overflow)?;
                                out.push((std::mem::take(&mut a[i].0), c));
                                i += 1;
                                j += 1;
                            }
                        }
                    }
                    out
                }
            };
            tables[i] = Some(table);
        }
        let root = tables[self.nice.root].take().expect("root computed");
        Ok(match self.root {
            Some(_) => {
                let mut counts = vec![0u128; g.n()];
                for (key, c) in root {
                    counts[key[0] as usize] = c;
                }
                counts
            }
            None => vec![root.first().map_or(0, |(_, c)| *c)],
        })
    }
}
