//! Folklore k-WL over k-tuples, k in 1..=3.

use rayon::prelude::*;

use super::{assign_ids, multiset_difference, Verdict};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Soft limit on `n^k` tuples per graph.
pub const KWL_GUARD: usize = 10_000_000;

fn decode(mut idx: usize, n: usize, k: usize) -> [usize; 3] {
    let mut t = [0; 3];
    for slot in t.iter_mut().take(k).rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

fn encode(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

/// Isomorphism type of a tuple: labels, equalities and adjacencies.
fn isotp(g: &Graph, t: &[usize]) -> Vec<u32> {
    let mut key: Vec<u32> = t.iter().map(|&v| g.label(v)).collect();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            key.push(if t[i] == t[j] { 2 } else { g.has_edge(t[i], t[j]) as u32 });
        }
    }
    key
}

fn initial(g: &Graph, k: usize) -> Vec<Vec<u32>> {
    let n = g.n();
    (0..n.pow(k as u32))
        .into_par_iter()
        .map(|i| isotp(g, &decode(i, n, k)[..k]))
        .collect()
}

fn signatures(g: &Graph, k: usize, colors: &[u32]) -> Vec<(u32, Vec<u128>)> {
    let n = g.n();
    (0..colors.len())
        .into_par_iter()
        .map(|i| {
            let t = decode(i, n, k);
            let mut entries: Vec<u128> = (0..n)
                .map(|w| {
                    if k == 1 {
                        let iso = if t[0] == w { 2 } else { g.has_edge(t[0], w) as u128 };
                        (iso << 64) | ((g.label(w) as u128) << 32) | colors[w] as u128
                    } else {
                        // replace position k-1 first, then down to 0
                        let mut packed = 0u128;
                        for pos in (0..k).rev() {
                            let mut s = t;
                            s[pos] = w;
                            packed = (packed << 32) | colors[encode(&s[..k], n)] as u128;
                        }
                        packed
                    }
                })
                .collect();
            entries.sort_unstable();
            (colors[i], entries)
        })
        .collect()
}

/// Joint folklore k-WL verdict for `g` and `h`.
pub fn k_wl(g: &Graph, h: &Graph, k: usize, max_rounds: Option<usize>) -> Result<Verdict> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidArgument(format!("k-WL needs k in 1..=3, got {k}")));
    }
    for x in [g, h] {
        let tuples = x.n().checked_pow(k as u32).unwrap_or(usize::MAX);
        if tuples > KWL_GUARD {
            return Err(Error::Guard {
                what: "k-WL tuple table",
                size: tuples,
                limit: KWL_GUARD,
            });
        }
    }
    let max_rounds = max_rounds.unwrap_or(g.n().pow(k as u32) + h.n().pow(k as u32));
    let (mut l, mut r, mut classes) = assign_ids(&initial(g, k), &initial(h, k));
    for d in 0..=max_rounds {
        if let Some(w) = multiset_difference(&l, &r) {
            return Ok(Verdict {
                distinguished: true,
                at_round: Some(d),
                witness: Some(w),
            });
        }
        if d == max_rounds {
            break;
        }
        let (nl, nr, next) = assign_ids(&signatures(g, k, &l), &signatures(h, k, &r));
        if next == classes {
            break;
        }
        (l, r, classes) = (nl, nr, next);
    }
    Ok(Verdict::same())
}
