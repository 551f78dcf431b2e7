//! Counting kernels.

mod brute;
mod dp;
mod inj;
mod vector;

pub use brute::{hom_count_brute, hom_count_brute_rooted, hom_exists};
pub use dp::HomPlan;
pub use inj::{inj_count, sub_count, SubgraphPlan};
pub use vector::{hom_vector, CountMode, FeatureMatrix, FeaturePlan, GraphFeatures};

use serde::Serialize;

use crate::error::Error;
use crate::graph::{Graph, RootedPattern};

/// Counts of one pattern in one graph: per vertex when rooted, a single entry otherwise.
/// When `overflow` is set the counts are invalid and left empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountVector {
    pub graph_id: String,
    pub pattern_id: String,
    pub rooted: bool,
    pub counts: Vec<u128>,
    pub overflow: bool,
}

/// Either kind of pattern a count can be taken of.
#[derive(Clone, Copy, Debug)]
pub enum PatternRef<'a> {
    Rooted(&'a RootedPattern),
    Unrooted(&'a Graph),
}

impl<'a> From<&'a RootedPattern> for PatternRef<'a> {
    fn from(p: &'a RootedPattern) -> Self {
        PatternRef::Rooted(p)
    }
}

impl<'a> From<&'a Graph> for PatternRef<'a> {
    fn from(p: &'a Graph) -> Self {
        PatternRef::Unrooted(p)
    }
}

/// Homomorphism counts by tree-decomposition DP: all anchors at once for a rooted pattern,
/// the scalar `hom(P, G)` otherwise.
pub fn hom_count_dp<'a>(p: impl Into<PatternRef<'a>>, g: &Graph) -> CountVector {
    let (plan, id, rooted) = match p.into() {
        PatternRef::Rooted(p) => (HomPlan::rooted(p), p.id(), true),
        PatternRef::Unrooted(p) => (HomPlan::unrooted(p), p.id(), false),
    };
    let (counts, overflow) = match plan.run(g) {
        Ok(c) => (c, false),
        Err(Error::Overflow { .. }) => (Vec::new(), true),
        Err(e) => unreachable!("DP only fails on overflow: {e}"),
    };
    CountVector {
        graph_id: g.id().to_string(),
        pattern_id: id.to_string(),
        rooted,
        counts,
        overflow,
    }
}

/// Scalar `hom(P, G)` by DP.
pub fn hom_count(p: &Graph, g: &Graph) -> crate::error::Result<u128> {
    Ok(HomPlan::unrooted(p).run(g)?[0])
}
