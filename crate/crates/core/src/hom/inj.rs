//! Injective and subgraph counts from homomorphism counts over the spasm.

use crate::algebra::{automorphism_count, spasm_expansion};
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedPattern};

use super::brute::hom_count_brute_rooted;
use super::dp::HomPlan;

fn signed(c: u128, ctx: &str) -> Result<i128> {
    i128::try_from(c).map_err(|_| Error::overflow(ctx.to_string()))
}

fn accumulate(acc: i128, coefficient: i128, hom: u128, ctx: &str) -> Result<i128> {
    coefficient
        .checked_mul(signed(hom, ctx)?)
        .and_then(|t| acc.checked_add(t))
        .ok_or_else(|| Error::overflow(ctx.to_string()))
}

fn unsigned(total: i128, ctx: &str) -> Result<u128> {
    u128::try_from(total).map_err(|_| Error::Internal(format!("{ctx}: negative injective count {total}")))
}

/// Injective homomorphisms `p -> g` sending the root to `anchor`.
pub fn inj_count(p: &RootedPattern, g: &Graph, anchor: usize) -> Result<u128> {
    let ctx = format!("inj({}, {}^{anchor})", p.id(), g.id());
    let mut total = 0i128;
    for term in spasm_expansion(p)? {
        if term.coefficient == 0 {
            continue;
        }
        let hom = hom_count_brute_rooted(&term.pattern, g, anchor)?;
        total = accumulate(total, term.coefficient, hom, &ctx)?;
    }
    unsigned(total, &ctx)
}

fn exact_div(inj: u128, aut: u64, ctx: &str) -> Result<u128> {
    let aut = aut as u128;
    if !inj.is_multiple_of(aut) {
        return Err(Error::Internal(format!(
            "{ctx}: injective count {inj} not divisible by {aut} automorphisms"
        )));
    }
    Ok(inj / aut)
}

/// Subgraphs of `g` containing `anchor` that are isomorphic to `p` with the root at `anchor`.
pub fn sub_count(p: &RootedPattern, g: &Graph, anchor: usize) -> Result<u128> {
    let inj = inj_count(p, g, anchor)?;
    exact_div(inj, automorphism_count(p), &format!("sub({}, {}^{anchor})", p.id(), g.id()))
}

/// Precomputed spasm expansion for all-vertex injective and subgraph counts.
#[derive(Clone, Debug)]
pub struct SubgraphPlan {
    pattern: RootedPattern,
    terms: Vec<(HomPlan, i128)>,
    automorphisms: u64,
}

impl SubgraphPlan {
    pub fn new(p: &RootedPattern) -> Result<SubgraphPlan> {
        let terms = spasm_expansion(p)?
            .into_iter()
            .filter(|t| t.coefficient != 0)
            .map(|t| (HomPlan::rooted(&t.pattern), t.coefficient))
            .collect();
        Ok(SubgraphPlan {
            pattern: p.clone(),
            terms,
            automorphisms: automorphism_count(p),
        })
    }

    pub fn automorphisms(&self) -> u64 {
        self.automorphisms
    }

    /// Number of spasm members with a nonzero coefficient.
    pub fn terms(&self) -> usize {
        self.terms.len()
    }

    pub fn inj_all(&self, g: &Graph) -> Result<Vec<u128>> {
        let ctx = format!("inj({}, {})", self.pattern.id(), g.id());
        let mut totals = vec![0i128; g.n()];
        for (plan, coefficient) in &self.terms {
            let homs = plan.run(g)?;
            for (t, h) in totals.iter_mut().zip(homs) {
                *t = accumulate(*t, *coefficient, h, &ctx)?;
            }
        }
        totals.into_iter().map(|t| unsigned(t, &ctx)).collect()
    }

    pub fn sub_all(&self, g: &Graph) -> Result<Vec<u128>> {
        let ctx = format!("sub({}, {})", self.pattern.id(), g.id());
        self.inj_all(g)?
            .into_iter()
            .map(|i| exact_div(i, self.automorphisms, &ctx))
            .collect()
    }
}
