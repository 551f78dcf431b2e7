//! Twisted and untwisted parity graphs over K3 and K4.

use hompat::families::cfi_pair;
use hompat::hom::hom_count;
use hompat::wl::{k_wl, wl1};
use hompat::RootedPattern;

fn main() -> hompat::Result<()> {
    for p in [RootedPattern::clique(3), RootedPattern::clique(4)] {
        let (t, u) = cfi_pair(&p, None)?;
        println!("{}: {} + {} vertices", p.id(), t.n(), u.n());
        println!("  hom({0}, twisted) = {1}, hom({0}, untwisted) = {2}", p.id(), hom_count(p.graph(), &t)?, hom_count(p.graph(), &u)?);
        println!("  1-WL {:?}", wl1(&t, &u, None).verdict.distinguished);
        println!("  2-WL {:?}", k_wl(&t, &u, 2, None)?.distinguished);
    }
    Ok(())
}
