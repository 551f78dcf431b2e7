//! Per-vertex feature rows: one column per pattern, homomorphism or subgraph counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label, RootedPattern};

use super::dp::HomPlan;
use super::inj::SubgraphPlan;
use super::CountVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    Hom,
    Sub,
}

impl CountMode {
    /// Column name prefix.
    pub fn prefix(self) -> &'static str {
        match self {
            CountMode::Hom => "hom",
            CountMode::Sub => "sub",
        }
    }
}

impl std::str::FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hom" => Ok(CountMode::Hom),
            "sub" => Ok(CountMode::Sub),
            other => Err(Error::InvalidArgument(format!("unknown count mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
enum Column {
    Hom(HomPlan),
    Sub(SubgraphPlan),
}

/// Counts for every vertex of one graph. If any column overflowed, `overflow` is set and
/// that column's counts are empty.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphFeatures {
    pub graph_id: String,
    pub labels: Vec<Label>,
    pub columns: Vec<CountVector>,
    pub overflow: bool,
}

impl GraphFeatures {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Row of `v` across columns; `None` when the graph overflowed.
    pub fn row(&self, v: usize) -> Option<Vec<u128>> {
        if self.overflow {
            return None;
        }
        Some(self.columns.iter().map(|c| c.counts[v]).collect())
    }
}

/// Feature blocks for a whole dataset, in input order.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix {
    pub pattern_ids: Vec<String>,
    pub mode: CountMode,
    pub graphs: Vec<GraphFeatures>,
}

impl FeatureMatrix {
    pub fn column_names(&self) -> Vec<String> {
        self.pattern_ids
            .iter()
            .map(|id| format!("{}_{id}", self.mode.prefix()))
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.graphs.iter().map(|g| g.n()).sum()
    }
}

/// Patterns compiled once for repeated evaluation.
#[derive(Clone, Debug)]
pub struct FeaturePlan {
    pattern_ids: Vec<String>,
    mode: CountMode,
    columns: Vec<Column>,
}

impl FeaturePlan {
    pub fn new(patterns: &[RootedPattern], mode: CountMode) -> Result<FeaturePlan> {
        let columns = patterns
            .iter()
            .map(|p| match mode {
                CountMode::Hom => Ok(Column::Hom(HomPlan::rooted(p))),
                CountMode::Sub => SubgraphPlan::new(p).map(Column::Sub),
            })
            .collect::<Result<_>>()?;
        Ok(FeaturePlan {
            pattern_ids: patterns.iter().map(|p| p.id().to_string()).collect(),
            mode,
            columns,
        })
    }

    pub fn mode(&self) -> CountMode {
        self.mode
    }

    pub fn pattern_ids(&self) -> &[String] {
        &self.pattern_ids
    }

    /// Features of a single graph. Overflow is recorded, not returned as an error.
    pub fn graph_features(&self, g: &Graph) -> Result<GraphFeatures> {
        let mut columns = Vec::with_capacity(self.columns.len());
        let mut overflow = false;
        for (col, id) in self.columns.iter().zip(&self.pattern_ids) {
            let counts = match col {
                Column::Hom(plan) => plan.run(g),
                Column::Sub(plan) => plan.sub_all(g),
            };
            let mut cv = CountVector {
                graph_id: g.id().to_string(),
                pattern_id: id.clone(),
                rooted: true,
                counts: Vec::new(),
                overflow: false,
            };
            match counts {
                Ok(c) => cv.counts = c,
                Err(Error::Overflow { .. }) => {
                    cv.overflow = true;
                    overflow = true;
                }
                Err(e) => return Err(e),
            }
            columns.push(cv);
        }
        Ok(GraphFeatures {
            graph_id: g.id().to_string(),
            labels: g.labels().to_vec(),
            columns,
            overflow,
        })
    }

    /// Features for every graph, computed in parallel on the current rayon pool and
    /// returned in input order.
    pub fn matrix(&self, graphs: &[Graph]) -> Result<FeatureMatrix> {
        let blocks = graphs
            .par_iter()
            .map(|g| self.graph_features(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(FeatureMatrix {
            pattern_ids: self.pattern_ids.clone(),
            mode: self.mode,
            graphs: blocks,
        })
    }
}

/// Features of `g` for `patterns` in the given mode.
pub fn hom_vector(patterns: &[RootedPattern], g: &Graph, mode: CountMode) -> Result<GraphFeatures> {
    FeaturePlan::new(patterns, mode)?.graph_features(g)
}
