//! Equal triangle counts everywhere, separated after one round by a pattern tree.

use hompat::families::fig2_pair;
use hompat::trees::{hom_pattern_tree, PatternTree};
use hompat::wl::f_wl;
use hompat::RootedPattern;

fn main() -> hompat::Result<()> {
    let (g, h) = fig2_pair();
    let f = [RootedPattern::clique(3)];
    let r = f_wl(&g, &h, &f, None)?;
    for d in 0..=r.left.round() {
        println!("round {d}: {:?} | {:?}", r.left.at(d), r.right.at(d));
    }
    println!("verdict {:?}", r.verdict);
    println!("vertex 4 vs 4: {:?}", r.vertex_verdict(4, 4));

    // a root with one child that carries a triangle
    let t = PatternTree::new(vec![0, 0], vec![None, Some(0)], vec![vec![0], vec![1]])?;
    println!("tree counts at 4: {} vs {}", hom_pattern_tree(&t, &f, &g)?[4], hom_pattern_tree(&t, &f, &h)?[4]);
    Ok(())
}
