//! Rooted triangle counts separate two graphs that colour refinement cannot.

use hompat::families::fig1_pair;
use hompat::hom::hom_count_dp;
use hompat::wl::{f_wl, wl1};
use hompat::RootedPattern;

fn main() -> hompat::Result<()> {
    let (g, h) = fig1_pair();
    let k3 = RootedPattern::clique(3);
    println!("hom(K3, {}^v) = {:?}", g.id(), hom_count_dp(&k3, &g).counts);
    println!("hom(K3, {}^v) = {:?}", h.id(), hom_count_dp(&k3, &h).counts);
    println!("1-WL:    {:?}", wl1(&g, &h, None).verdict);
    println!("{{K3}}-WL: {:?}", f_wl(&g, &h, &[k3], None)?.verdict);
    Ok(())
}
