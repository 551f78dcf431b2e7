//! Empirical check of the correspondence between F-WL colours and pattern tree counts.

use serde_json::{json, Value};

use super::{enumerate_pattern_trees, EnumerationBudget, PatternTree, TreeEvaluator};
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedPattern};
use crate::hom::HomPlan;
use crate::wl::{f_wl_with_plans, Verdict};

/// Two vertices with equal colour at the checked round but different counts of some tree.
#[derive(Clone, Debug)]
pub struct ForwardViolation {
    pub tree: PatternTree,
    /// `(side, vertex, count)` for both vertices; side 0 is the left graph.
    pub a: (usize, usize, u128),
    pub b: (usize, usize, u128),
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub tree: PatternTree,
    pub left: u128,
    pub right: u128,
    /// Position in the enumerated stream.
    pub index: usize,
}

#[derive(Clone, Debug)]
pub enum WitnessSearch {
    /// The pair was not distinguished, so nothing was searched.
    NotSought,
    Found(Witness),
    BudgetExhausted { trees_tried: usize },
}

#[derive(Clone, Debug)]
pub struct Theorem1Report {
    /// Graph-level verdict, or the vertex verdict when an anchor pair was given.
    pub verdict: Verdict,
    pub depth: usize,
    pub trees_checked: usize,
    pub truncated: bool,
    pub forward_violations: Vec<ForwardViolation>,
    pub witness: WitnessSearch,
}

impl Theorem1Report {
    pub fn forward_ok(&self) -> bool {
        self.forward_violations.is_empty()
    }

    pub fn to_json(&self, patterns: &[RootedPattern]) -> Value {
        let witness = match &self.witness {
            WitnessSearch::NotSought => json!({"status": "not-sought"}),
            WitnessSearch::Found(w) => json!({
                "status": "found",
                "tree": w.tree.to_json(patterns),
                "counts": [w.left.to_string(), w.right.to_string()],
                "index": w.index,
            }),
            WitnessSearch::BudgetExhausted { trees_tried } => {
                json!({"status": "budget-exhausted", "trees_tried": trees_tried})
            }
        };
        json!({
            "distinguished": self.verdict.distinguished,
            "round": self.verdict.at_round,
            "depth": self.depth,
            "trees_checked": self.trees_checked,
            "truncated": self.truncated,
            "forward_ok": self.forward_ok(),
            "forward_violations": self.forward_violations.len(),
            "witness": witness,
        })
    }
}

fn total(counts: &[u128]) -> Result<u128> {
    counts
        .iter()
        .try_fold(0u128, |a, &c| a.checked_add(c))
        .ok_or_else(|| Error::overflow("pattern tree total"))
}

/// Runs F-WL on `(g, h)` and checks it against pattern tree counts.
///
/// Forward: within every colour class at round `d` (over both graphs), all trees of depth
/// at most `d` in the budgeted stream must have equal rooted counts.
/// Witness: if the pair is distinguished, the first tree in the stream whose counts differ,
/// rooted at `anchor = (v, w)` when given and summed over all vertices otherwise.
pub fn theorem1_check(
    g: &Graph,
    h: &Graph,
    patterns: &[RootedPattern],
    d: usize,
    budget: &EnumerationBudget,
    anchor: Option<(usize, usize)>,
) -> Result<Theorem1Report> {
    let plans: Vec<HomPlan> = patterns.iter().map(HomPlan::rooted).collect();
    let refinement = f_wl_with_plans(g, h, &plans, None)?;
    let verdict = match anchor {
        Some((v, w)) => refinement.vertex_verdict(v, w),
        None => refinement.verdict.clone(),
    };
    let mut labels: Vec<u32> = g.labels().iter().chain(h.labels()).copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let stream = enumerate_pattern_trees(patterns, &labels, budget)?;
    let eg = TreeEvaluator::with_plans(g, &plans)?;
    let eh = TreeEvaluator::with_plans(h, &plans)?;
    let colors = [refinement.left.at(d), refinement.right.at(d)];

    let mut violations = Vec::new();
    let mut witness = None;
    let mut checked = 0;
    // witness search prefers shallow trees, then the rest of the stream
    let mut deeper = Vec::new();
    for (index, tree) in stream.trees.iter().enumerate() {
        let counts = [eg.eval(tree)?, eh.eval(tree)?];
        if tree.depth() <= d {
            checked += 1;
            let mut first: std::collections::HashMap<u32, (usize, usize, u128)> = Default::default();
            for side in 0..2 {
                for (v, &c) in colors[side].iter().enumerate() {
                    let seen = *first.entry(c).or_insert((side, v, counts[side][v]));
                    if seen.2 != counts[side][v] {
                        violations.push(ForwardViolation {
                            tree: tree.clone(),
                            a: seen,
                            b: (side, v, counts[side][v]),
                        });
                    }
                }
            }
        }
        if verdict.distinguished && witness.is_none() {
            let (l, r) = match anchor {
                Some((v, w)) => (counts[0][v], counts[1][w]),
                None => (total(&counts[0])?, total(&counts[1])?),
            };
            if l != r {
                let w = Witness {
                    tree: tree.clone(),
                    left: l,
                    right: r,
                    index,
                };
                if tree.depth() <= d {
                    witness = Some(w);
                } else if deeper.is_empty() {
                    deeper.push(w);
                }
            }
        }
    }
    let witness = if !verdict.distinguished {
        WitnessSearch::NotSought
    } else {
        match witness.or_else(|| deeper.pop()) {
            Some(w) => WitnessSearch::Found(w),
            None => WitnessSearch::BudgetExhausted {
                trees_tried: stream.trees.len(),
            },
        }
    };
    Ok(Theorem1Report {
        verdict,
        depth: d,
        trees_checked: checked,
        truncated: stream.truncated,
        forward_violations: violations,
        witness,
    })
}
