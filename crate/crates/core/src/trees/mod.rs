//! Pattern trees: rooted trees with copies of patterns from a fixed set joined at their
//! vertices.

mod check;
mod enumerate;

pub use check::{theorem1_check, ForwardViolation, Theorem1Report, Witness, WitnessSearch};
pub use enumerate::{enumerate_pattern_trees, EnumerationBudget, TreeStream, DEFAULT_TREE_CAP};

use serde_json::{json, Value};

use crate::algebra::join;
use crate::error::{Error, Result};
use crate::graph::{Graph, Label, RootedPattern};
use crate::hom::HomPlan;

/// Backbone vertex 0 is the root; `parent[i] < i` for every other vertex.
/// `attachments[s][i]` is the number of copies of the `i`-th pattern joined at `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternTree {
    labels: Vec<Label>,
    parent: Vec<Option<usize>>,
    attachments: Vec<Vec<u32>>,
}

impl PatternTree {
    pub fn new(labels: Vec<Label>, parent: Vec<Option<usize>>, attachments: Vec<Vec<u32>>) -> Result<PatternTree> {
        let n = labels.len();
        if n == 0 || parent.len() != n || attachments.len() != n {
            return Err(Error::InvalidArgument("pattern tree needs matching nonempty arrays".into()));
        }
        if parent[0].is_some() {
            return Err(Error::InvalidArgument("backbone vertex 0 must be the root".into()));
        }
        if let Some(i) = (1..n).find(|&i| !matches!(parent[i], Some(p) if p < i)) {
            return Err(Error::InvalidArgument(format!("backbone vertex {i} needs an earlier parent")));
        }
        let width = attachments[0].len();
        if attachments.iter().any(|a| a.len() != width) {
            return Err(Error::InvalidArgument("attachment vectors differ in length".into()));
        }
        Ok(PatternTree {
            labels,
            parent,
            attachments,
        })
    }

    /// A bare backbone vertex.
    pub fn single(label: Label, patterns: usize) -> PatternTree {
        PatternTree {
            labels: vec![label],
            parent: vec![None],
            attachments: vec![vec![0; patterns]],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn parent(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn attachments(&self) -> &[Vec<u32>] {
        &self.attachments
    }

    pub fn children(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (s + 1..self.len()).filter(move |&c| self.parent[c] == Some(s))
    }

    pub fn depth(&self) -> usize {
        let mut depth = vec![0; self.len()];
        for i in 1..self.len() {
            depth[i] = depth[self.parent[i].unwrap()] + 1;
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Checks that each attached pattern's root label matches its backbone vertex.
    pub fn check_labels(&self, patterns: &[RootedPattern]) -> Result<()> {
        if self.attachments[0].len() != patterns.len() {
            return Err(Error::InvalidArgument(format!(
                "tree expects {} patterns, got {}",
                self.attachments[0].len(),
                patterns.len()
            )));
        }
        for (s, att) in self.attachments.iter().enumerate() {
            for (i, &k) in att.iter().enumerate() {
                if k > 0 && patterns[i].root_label() != self.labels[s] {
                    return Err(Error::RootLabelMismatch {
                        left: self.labels[s],
                        right: patterns[i].root_label(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The explicit rooted graph with every join carried out. Backbone vertex `s` keeps index `s`.
    pub fn flatten(&self, patterns: &[RootedPattern]) -> Result<RootedPattern> {
        self.check_labels(patterns)?;
        let edges: Vec<(usize, usize)> = (1..self.len()).map(|i| (self.parent[i].unwrap(), i)).collect();
        let backbone = Graph::with_labels("tree", self.labels.clone(), &edges)?;
        let mut acc = RootedPattern::new(backbone, 0)?;
        for (s, att) in self.attachments.iter().enumerate() {
            for (i, &k) in att.iter().enumerate() {
                for _ in 0..k {
                    // join at backbone vertex s: re-root, join, restore root 0
                    let here = RootedPattern::new(acc.graph().clone(), s)?;
                    let joined = join(&here, &patterns[i])?;
                    acc = RootedPattern::new(joined.into_graph(), 0)?;
                }
            }
        }
        Ok(acc.with_id("tree"))
    }

    /// Nested JSON: backbone parents, labels and per-vertex attachment multiplicities by pattern id.
    pub fn to_json(&self, patterns: &[RootedPattern]) -> Value {
        let attachments: Vec<Value> = self
            .attachments
            .iter()
            .map(|att| {
                let map: serde_json::Map<String, Value> = att
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| (patterns[i].id().to_string(), json!(k)))
                    .collect();
                Value::Object(map)
            })
            .collect();
        json!({
            "labels": self.labels,
            "parent": self.parent,
            "attachments": attachments,
            "depth": self.depth(),
        })
    }
}

/// Rooted pattern counts of a fixed pattern set in one graph, reused across many trees.
#[derive(Clone, Debug)]
pub struct TreeEvaluator<'g> {
    g: &'g Graph,
    pattern_counts: Vec<Vec<u128>>,
}

impl<'g> TreeEvaluator<'g> {
    pub fn new(g: &'g Graph, patterns: &[RootedPattern]) -> Result<TreeEvaluator<'g>> {
        let plans: Vec<HomPlan> = patterns.iter().map(HomPlan::rooted).collect();
        Self::with_plans(g, &plans)
    }

    pub fn with_plans(g: &'g Graph, plans: &[HomPlan]) -> Result<TreeEvaluator<'g>> {
        let pattern_counts = plans.iter().map(|p| p.run(g)).collect::<Result<_>>()?;
        Ok(TreeEvaluator { g, pattern_counts })
    }

    /// `hom(T^r, G^v)` for every `v`, bottom-up over the backbone.
    pub fn eval(&self, t: &PatternTree) -> Result<Vec<u128>> {
        let g = self.g;
        let overflow = || Error::overflow(format!("pattern tree count in {}", g.id()));
        let mut vals: Vec<Vec<u128>> = vec![Vec::new(); t.len()];
        for s in (0..t.len()).rev() {
            let mut row = vec![0u128; g.n()];
            let children: Vec<usize> = t.children(s).collect();
            for (x, slot) in row.iter_mut().enumerate() {
                if g.label(x) != t.labels[s] {
                    continue;
                }
                let mut acc: u128 = 1;
                for (i, &k) in t.attachments[s].iter().enumerate() {
                    for _ in 0..k {
                        acc = acc.checked_mul(self.pattern_counts[i][x]).ok_or_else(overflow)?;
                    }
                }
                for &c in &children {
                    if acc == 0 {
                        break;
                    }
                    let mut sum: u128 = 0;
                    for &y in g.neighbors(x) {
                        sum = sum.checked_add(vals[c][y]).ok_or_else(overflow)?;
                    }
                    acc = acc.checked_mul(sum).ok_or_else(overflow)?;
                }
                *slot = acc;
            }
            vals[s] = row;
        }
        Ok(vals.swap_remove(0))
    }
}

/// Rooted counts of a pattern tree at every vertex of `g`.
pub fn hom_pattern_tree(t: &PatternTree, patterns: &[RootedPattern], g: &Graph) -> Result<Vec<u128>> {
    t.check_labels(patterns)?;
    TreeEvaluator::new(g, patterns)?.eval(t)
}
