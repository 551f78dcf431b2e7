//! Unions of cycles: invisible to small patterns, visible to longer cycles and to 2-WL.

use hompat::families::{cycle_hierarchy_pair, cycle_union_pair};
use hompat::wl::{f_wl, k_wl};
use hompat::RootedPattern;

fn main() -> hompat::Result<()> {
    for m in [3, 4] {
        let (g, h) = cycle_union_pair(m)?;
        let small: Vec<RootedPattern> = (3..=m).map(RootedPattern::cycle).collect();
        println!(
            "{} vs {}: C3..C{m} {:?}, 2-WL {:?}",
            g.id(),
            h.id(),
            f_wl(&g, &h, &small, None)?.verdict.distinguished,
            k_wl(&g, &h, 2, None)?.distinguished
        );
    }
    for k in [4, 5, 6] {
        let (g, h) = cycle_hierarchy_pair(k)?;
        let short: Vec<RootedPattern> = (3..k).map(RootedPattern::cycle).collect();
        let long: Vec<RootedPattern> = (3..=k).map(RootedPattern::cycle).collect();
        println!(
            "{} vs {}: up to C{} {:?}, up to C{k} {:?}",
            g.id(),
            h.id(),
            k - 1,
            f_wl(&g, &h, &short, None)?.verdict,
            f_wl(&g, &h, &long, None)?.verdict
        );
    }
    Ok(())
}
