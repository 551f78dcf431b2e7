//! Set partitions of pattern vertices and the quotient graphs they induce.

use crate::graph::Graph;

/// Block assignment per vertex. Blocks are numbered in order of first occurrence
/// (restricted growth form), so equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Normalises an arbitrary block labelling.
    pub fn from_assignment(raw: &[usize]) -> Partition {
        let mut remap = std::collections::HashMap::new();
        let block_of: Vec<usize> = raw
            .iter()
            .map(|b| {
                let next = remap.len();
                *remap.entry(*b).or_insert(next)
            })
            .collect();
        Partition {
            blocks: remap.len(),
            block_of,
        }
    }

    pub fn discrete(n: usize) -> Partition {
        Partition {
            block_of: (0..n).collect(),
            blocks: n,
        }
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.blocks];
        for &b in &self.block_of {
            sizes[b] += 1;
        }
        sizes
    }

    /// Möbius function of the partition lattice between the discrete partition and `self`:
    /// the product over blocks of `(-1)^(|B|-1) (|B|-1)!`.
    pub fn mobius_from_bottom(&self) -> Option<i128> {
        self.block_sizes().into_iter().try_fold(1i128, |acc, size| {
            let fact = (1..size as i128).try_fold(1i128, |f, k| f.checked_mul(k))?;
            let signed = if size % 2 == 1 { fact } else { -fact };
            acc.checked_mul(signed)
        })
    }
}

/// Iterates every set partition of `{0..n}` once, in restricted-growth order.
pub struct SetPartitions {
    rgs: Vec<usize>,
    max_prefix: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> SetPartitions {
        SetPartitions {
            rgs: vec![0; n],
            max_prefix: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let n = self.rgs.len();
        let current = Partition {
            blocks: if n == 0 { 0 } else { self.rgs.iter().max().unwrap() + 1 },
            block_of: self.rgs.clone(),
        };
        // advance: rightmost position that can still grow
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            // max_prefix[i] = max of rgs[0..i]
            if self.rgs[i] <= self.max_prefix[i] {
                self.rgs[i] += 1;
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.max_prefix[j] = self.max_prefix[j - 1].max(self.rgs[j - 1]);
                }
                break;
            }
        }
        Some(current)
    }
}

/// Quotient of `g` by `part`: one vertex per block, adjacent iff some edge crosses the two blocks.
/// Absent when an edge falls inside a block or a block mixes labels.
pub fn quotient(g: &Graph, part: &Partition) -> Option<Graph> {
    assert_eq!(part.len(), g.n(), "partition size must match the graph");
    let mut labels = vec![None; part.num_blocks()];
    for v in 0..g.n() {
        let b = part.block_of(v);
        match labels[b] {
            None => labels[b] = Some(g.label(v)),
            Some(l) if l != g.label(v) => return None,
            Some(_) => {}
        }
    }
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        let (a, b) = (part.block_of(u), part.block_of(v));
        if a == b {
            return None;
        }
        edges.push((a.min(b), a.max(b)));
    }
    edges.sort_unstable();
    edges.dedup();
    let labels = labels.into_iter().map(|l| l.expect("blocks are nonempty")).collect();
    Some(Graph::with_labels(format!("{}/~", g.id()), labels, &edges).expect("quotient edges are simple"))
}
