//! Pattern selection advice: which candidates add nothing over a given set, which provably
//! add distinguishing power, and the resulting k-WL upper bound.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{core_of, join_factors, treewidth};
use crate::error::Result;
use crate::graph::{is_rooted_isomorphic, RootedPattern};
use crate::hom::hom_exists;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GainRule {
    /// Every pattern in the set has smaller treewidth than the candidate's core.
    Treewidth,
    /// At least one pattern needed the second condition: it does not map into the candidate.
    NoHomToQ,
}

/// Evidence about one pattern of the existing set against a candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternEvidence {
    pub pattern: String,
    pub treewidth: usize,
    pub maps_into_candidate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdviceVerdict {
    /// Join of members of the set; ids of the matching members, one per factor.
    Redundant { factors: Vec<String> },
    GuaranteedGain { rule: GainRule },
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateAdvice {
    pub candidate: String,
    pub verdict: AdviceVerdict,
    pub candidate_treewidth: usize,
    pub core_treewidth: usize,
    pub evidence: Vec<PatternEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdvisorReport {
    pub candidates: Vec<CandidateAdvice>,
    /// Largest treewidth over the set and every non-redundant candidate (at least 1).
    pub wl_bound: usize,
}

impl AdvisorReport {
    pub fn to_json(&self) -> Value {
        let cands: Vec<Value> = self
            .candidates
            .iter()
            .map(|c| {
                let verdict = match &c.verdict {
                    AdviceVerdict::Redundant { factors } => json!({"verdict": "REDUNDANT", "factors": factors}),
                    AdviceVerdict::GuaranteedGain { rule } => json!({"verdict": "GUARANTEED_GAIN", "rule": rule}),
                    AdviceVerdict::Unknown { reason } => json!({"verdict": "UNKNOWN", "reason": reason}),
                };
                let mut v = verdict;
                v["candidate"] = json!(c.candidate);
                v["treewidth"] = json!(c.candidate_treewidth);
                v["core_treewidth"] = json!(c.core_treewidth);
                v["evidence"] = serde_json::to_value(&c.evidence).unwrap();
                v
            })
            .collect();
        json!({"candidates": cands, "wl_bound": self.wl_bound})
    }
}

fn member_matching<'a>(f: &'a [RootedPattern], q: &RootedPattern) -> Option<&'a RootedPattern> {
    f.iter().find(|p| is_rooted_isomorphic(p, q))
}

/// Advice for each candidate against the pattern set `f`.
pub fn advise(f: &[RootedPattern], candidates: &[RootedPattern]) -> Result<AdvisorReport> {
    let f_tw = f
        .iter()
        .map(|p| treewidth(p.graph()).map(|(w, _)| w))
        .collect::<Result<Vec<_>>>()?;
    let mut bound = f_tw.iter().copied().max().unwrap_or(1).max(1);
    let mut out = Vec::with_capacity(candidates.len());
    for q in candidates {
        let (q_tw, _) = treewidth(q.graph())?;
        let core = core_of(q);
        let (k, _) = treewidth(core.graph())?;
        let evidence: Vec<PatternEvidence> = f
            .iter()
            .zip(&f_tw)
            .map(|(p, &tw)| PatternEvidence {
                pattern: p.id().to_string(),
                treewidth: tw,
                maps_into_candidate: hom_exists(p.graph(), q.graph(), None),
            })
            .collect();

        let factors = join_factors(q);
        let matched: Option<Vec<String>> = if factors.len() >= 2 {
            factors
                .iter()
                .map(|fac| member_matching(f, fac).map(|p| p.id().to_string()))
                .collect()
        } else {
            None
        };
        let verdict = if let Some(ids) = matched {
            AdviceVerdict::Redundant { factors: ids }
        } else if k <= 1 {
            AdviceVerdict::Unknown {
                reason: format!("core treewidth {k} is below 2"),
            }
        } else if evidence.iter().all(|e| e.treewidth < k || !e.maps_into_candidate) {
            let rule = if evidence.iter().all(|e| e.treewidth < k) {
                GainRule::Treewidth
            } else {
                GainRule::NoHomToQ
            };
            AdviceVerdict::GuaranteedGain { rule }
        } else {
            let blocking: Vec<&str> = evidence
                .iter()
                .filter(|e| e.treewidth >= k && e.maps_into_candidate)
                .map(|e| e.pattern.as_str())
                .collect();
            AdviceVerdict::Unknown {
                reason: format!("patterns {blocking:?} have treewidth >= {k} and map into the candidate"),
            }
        };
        if !matches!(verdict, AdviceVerdict::Redundant { .. }) {
            bound = bound.max(q_tw);
        }
        out.push(CandidateAdvice {
            candidate: q.id().to_string(),
            verdict,
            candidate_treewidth: q_tw,
            core_treewidth: k,
            evidence,
        });
    }
    Ok(AdvisorReport {
        candidates: out,
        wl_bound: bound,
    })
}
