//! Budgeted enumeration of pattern trees, one per rooted isomorphism class of the flattening.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::PatternTree;
use crate::error::Result;
use crate::graph::{rooted_canonical_code, CanonicalCode, Label, RootedPattern};

/// Hard cap on the number of trees produced.
pub const DEFAULT_TREE_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    /// Maximum backbone depth.
    pub max_depth: usize,
    /// Maximum backbone vertices.
    pub max_vertices: usize,
    /// Maximum total attachment multiplicity per backbone vertex.
    pub max_multiplicity: u32,
    pub cap: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_depth: 2,
            max_vertices: 4,
            max_multiplicity: 2,
            cap: DEFAULT_TREE_CAP,
        }
    }
}

impl EnumerationBudget {
    pub fn new(max_depth: usize, max_vertices: usize, max_multiplicity: u32) -> EnumerationBudget {
        EnumerationBudget {
            max_depth,
            max_vertices,
            max_multiplicity,
            ..Default::default()
        }
    }
}

/// Trees in canonical order plus whether the cap cut the stream short.
#[derive(Clone, Debug)]
pub struct TreeStream {
    pub trees: Vec<PatternTree>,
    pub codes: Vec<CanonicalCode>,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Shape {
    deco: usize,
    size: usize,
    children: Vec<Shape>,
}

fn decorations(labels: &[Label], patterns: &[RootedPattern], m: u32) -> Vec<(Label, Vec<u32>)> {
    fn vectors(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur.push(x);
            vectors(k, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for &label in labels {
        let mut vs = Vec::new();
        vectors(patterns.len(), m, &mut Vec::new(), &mut vs);
        for v in vs {
            let fits = v
                .iter()
                .zip(patterns)
                .all(|(&k, p)| k == 0 || p.root_label() == label);
            if fits {
                out.push((label, v));
            }
        }
    }
    out
}

/// Non-decreasing index sequences into `pool` with total size at most `room`.
fn child_multisets(pool: &[Shape], room: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) {
    out.push(cur.clone());
    if out.len() > cap {
        return;
    }
    for i in from..pool.len() {
        if pool[i].size <= room {
            cur.push(i);
            child_multisets(pool, room - pool[i].size, i, cur, out, cap);
            cur.pop();
            if out.len() > cap {
                return;
            }
        }
    }
}

fn to_tree(shape: &Shape, decos: &[(Label, Vec<u32>)]) -> PatternTree {
    let mut labels = Vec::new();
    let mut parent = Vec::new();
    let mut attachments = Vec::new();
    let mut stack = vec![(shape, None)];
    while let Some((s, p)) = stack.pop() {
        let me = labels.len();
        labels.push(decos[s.deco].0);
        attachments.push(decos[s.deco].1.clone());
        parent.push(p);
        for c in s.children.iter().rev() {
            stack.push((c, Some(me)));
        }
    }
    PatternTree {
        labels,
        parent,
        attachments,
    }
}

/// Every pattern tree within `budget` whose backbone labels come from `labels`, one per
/// rooted isomorphism class of the flattened graph, ordered by that graph's canonical code
/// (so smaller flattenings come first).
pub fn enumerate_pattern_trees(patterns: &[RootedPattern], labels: &[Label], budget: &EnumerationBudget) -> Result<TreeStream> {
    let mut labels = labels.to_vec();
    labels.sort_unstable();
    labels.dedup();
    let decos = decorations(&labels, patterns, budget.max_multiplicity);
    let mut truncated = false;
    let mut pool: Vec<Shape> = Vec::new();
    if budget.max_vertices > 0 {
        for depth in 0..=budget.max_depth {
            let mut next = Vec::new();
            for d in 0..decos.len() {
                let mut sets = Vec::new();
                if depth == 0 {
                    sets.push(vec![]);
                } else {
                    child_multisets(&pool, budget.max_vertices - 1, 0, &mut Vec::new(), &mut sets, budget.cap);
                }
                for set in sets {
                    let children: Vec<Shape> = set.iter().map(|&i| pool[i].clone()).collect();
                    let size = 1 + children.iter().map(|c| c.size).sum::<usize>();
                    next.push(Shape { deco: d, size, children });
                }
                if next.len() > budget.cap {
                    truncated = true;
                    break;
                }
            }
            pool = next;
            if truncated {
                break;
            }
        }
    }
    let mut by_code: BTreeMap<CanonicalCode, PatternTree> = BTreeMap::new();
    for shape in &pool {
        let tree = to_tree(shape, &decos);
        let code = rooted_canonical_code(&tree.flatten(patterns)?);
        by_code.entry(code).or_insert(tree);
    }
    if by_code.len() > budget.cap {
        truncated = true;
    }
    let (codes, trees): (Vec<_>, Vec<_>) = by_code.into_iter().take(budget.cap).unzip();
    Ok(TreeStream {
        trees,
        codes,
        truncated,
    })
}
