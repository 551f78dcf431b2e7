//! Which candidate patterns add distinguishing power over an existing set.

use hompat::algebra::join;
use hompat::features::advise;
use hompat::RootedPattern;

fn main() -> hompat::Result<()> {
    let k3 = RootedPattern::clique(3);
    let f = vec![k3.clone(), RootedPattern::cycle(4)];
    let candidates = vec![
        join(&k3, &k3)?,
        RootedPattern::clique(4),
        RootedPattern::cycle(5),
        RootedPattern::cycle(6),
    ];
    let report = advise(&f, &candidates)?;
    println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
    Ok(())
}
