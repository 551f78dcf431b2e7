//! Searching the pattern-tree stream for a tree whose counts separate a pair.

use hompat::families::fig2_pair;
use hompat::trees::{enumerate_pattern_trees, theorem1_check, EnumerationBudget};
use hompat::RootedPattern;

fn main() -> hompat::Result<()> {
    let f = vec![RootedPattern::clique(3)];
    let budget = EnumerationBudget::default();
    let stream = enumerate_pattern_trees(&f, &[0], &budget)?;
    println!("{} trees (truncated: {})", stream.trees.len(), stream.truncated);

    let (g, h) = fig2_pair();
    for d in 0..=2 {
        let report = theorem1_check(&g, &h, &f, d, &budget, Some((4, 4)))?;
        println!("depth {d}: {}", report.to_json(&f));
    }
    Ok(())
}
