//! Rooted subgraph counts from homomorphism counts over the spasm.

use hompat::hom::{inj_count, SubgraphPlan};
use hompat::{Graph, RootedPattern};

fn main() -> hompat::Result<()> {
    let g = Graph::clique(5);
    for p in [RootedPattern::path(2), RootedPattern::cycle(4), RootedPattern::clique(3)] {
        let plan = SubgraphPlan::new(&p)?;
        println!(
            "{}: {} terms, aut {}, inj at 0 = {}, sub = {:?}",
            p.id(),
            plan.terms(),
            plan.automorphisms(),
            inj_count(&p, &g, 0)?,
            plan.sub_all(&g)?
        );
    }
    Ok(())
}
