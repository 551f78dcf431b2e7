//! Backtracking homomorphism enumeration. Exponential in the pattern size;
//! this is the reference every other counting path is tested against.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedPattern};

struct Plan {
    order: Vec<usize>,
    /// Placed neighbour used to generate candidates, if any.
    via: Vec<Option<usize>>,
    /// Earlier-placed pattern neighbours whose images must be adjacent.
    back: Vec<Vec<usize>>,
}

fn plan(p: &Graph, start: Option<usize>) -> Plan {
    let n = p.n();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let starts = start.into_iter().chain(0..n);
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &w in p.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &u) in order.iter().enumerate() {
        pos[u] = i;
    }
    let back: Vec<Vec<usize>> = order
        .iter()
        .map(|&u| p.neighbors(u).iter().copied().filter(|&w| pos[w] < pos[u]).collect())
        .collect();
    let via = back.iter().map(|b| b.first().copied()).collect();
    Plan { order, via, back }
}

struct Walker<'a> {
    p: &'a Graph,
    g: &'a Graph,
    plan: Plan,
    map: Vec<usize>,
    fixed: Option<(usize, usize)>,
}

enum Cands<'a> {
    Slice(&'a [usize]),
    All(usize),
    One(usize),
}

impl Cands<'_> {
    fn len(&self) -> usize {
        match self {
            Cands::Slice(s) => s.len(),
            Cands::All(n) => *n,
            Cands::One(_) => 1,
        }
    }

    fn get(&self, k: usize) -> usize {
        match self {
            Cands::Slice(s) => s[k],
            Cands::All(_) => k,
            Cands::One(x) => *x,
        }
    }
}

impl<'a> Walker<'a> {
    fn candidates(&self, i: usize) -> Cands<'a> {
        let u = self.plan.order[i];
        if let Some((pu, gv)) = self.fixed {
            if pu == u {
                return Cands::One(gv);
            }
        }
        let g: &'a Graph = self.g;
        match self.plan.via[i] {
            Some(w) => Cands::Slice(g.neighbors(self.map[w])),
            None => Cands::All(g.n()),
        }
    }

    fn ok(&self, i: usize, x: usize) -> bool {
        let u = self.plan.order[i];
        self.p.label(u) == self.g.label(x) && self.plan.back[i].iter().all(|&w| self.g.has_edge(x, self.map[w]))
    }

    fn count(&mut self, i: usize) -> Option<u128> {
        if i == self.plan.order.len() {
            return Some(1);
        }
        let last = i + 1 == self.plan.order.len();
        let cands = self.candidates(i);
        let mut total: u128 = 0;
        for k in 0..cands.len() {
            let x = cands.get(k);
            if !self.ok(i, x) {
                continue;
            }
            let sub = if last {
                1
            } else {
                self.map[self.plan.order[i]] = x;
                self.count(i + 1)?
            };
            total = total.checked_add(sub)?;
        }
        Some(total)
    }

    fn exists(&mut self, i: usize) -> bool {
        if i == self.plan.order.len() {
            return true;
        }
        let cands = self.candidates(i);
        for k in 0..cands.len() {
            let x = cands.get(k);
            if self.ok(i, x) {
                self.map[self.plan.order[i]] = x;
                if self.exists(i + 1) {
                    return true;
                }
            }
        }
        false
    }
}

fn walker<'a>(p: &'a Graph, g: &'a Graph, anchor: Option<(usize, usize)>) -> Walker<'a> {
    Walker {
        p,
        g,
        plan: plan(p, anchor.map(|a| a.0)),
        map: vec![usize::MAX; p.n()],
        fixed: anchor,
    }
}

/// Number of homomorphisms `p -> g`; with `anchor = Some((r, v))` only those sending `r` to `v`.
pub fn hom_count_brute(p: &Graph, g: &Graph, anchor: Option<(usize, usize)>) -> Result<u128> {
    walker(p, g, anchor)
        .count(0)
        .ok_or_else(|| Error::overflow(format!("hom({}, {})", p.id(), g.id())))
}

/// Rooted count `hom(p^r, g^v)`.
pub fn hom_count_brute_rooted(p: &RootedPattern, g: &Graph, v: usize) -> Result<u128> {
    hom_count_brute(p.graph(), g, Some((p.root(), v)))
}

/// Whether any homomorphism `p -> g` exists (respecting `anchor`).
pub fn hom_exists(p: &Graph, g: &Graph, anchor: Option<(usize, usize)>) -> bool {
    walker(p, g, anchor).exists(0)
}
