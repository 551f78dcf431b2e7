//! Joins, cores, spasms and treewidth of small rooted patterns.

use hompat::algebra::{automorphism_count, core_of, join, join_factors, spasm_expansion, treewidth};
use hompat::graph::Graph;
use hompat::RootedPattern;

fn main() -> hompat::Result<()> {
    let k3 = RootedPattern::clique(3);
    let bowtie = join(&k3, &k3)?;
    println!("{}: n={} edges={:?}", bowtie.id(), bowtie.n(), bowtie.graph().edges());
    let ids: Vec<String> = join_factors(&bowtie).iter().map(|p| p.id().to_string()).collect();
    println!("factors {ids:?}");

    let c6 = RootedPattern::cycle(6);
    let core = core_of(&c6);
    println!("core of C6 has {} vertices", core.n());

    for g in [Graph::cycle(5), Graph::clique(4), bowtie.graph().clone()] {
        let (w, td) = treewidth(&g)?;
        println!("tw({}) = {w} with {} bags", g.id(), td.bags.len());
    }

    let c4 = RootedPattern::cycle(4);
    println!("aut(C4 rooted) = {}", automorphism_count(&c4));
    for t in spasm_expansion(&c4)? {
        println!("  {:+} x hom({} vertices)", t.coefficient, t.pattern.n());
    }
    Ok(())
}
