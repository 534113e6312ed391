//! Partitions, bipartitions and the block data derived from a bipartition.
//!
//! Indices are 0-based internally. Anything user-facing (display, error
//! messages, serialised `J` sets) is 1-based.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

/// A partition: non-increasing positive parts, trailing zeros dropped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates `parts` (zeros at the tail are dropped).
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `λ_i` for a 0-based index, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `n(λ) = Σ (i-1) λ_i` with 1-based `i`.
    pub fn n_invariant(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width).map(|c| self.parts.iter().filter(|&&p| p >= c).count()).collect();
        Partition { parts }
    }

    /// Componentwise sum, padding the shorter with zeros.
    pub fn add(&self, other: &Partition) -> Partition {
        let len = self.length().max(other.length());
        Partition { parts: (0..len).map(|i| self.part(i) + other.part(i)).collect() }
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.length() + other.length());
        let (mut a, mut b) = (self.parts.iter().peekable(), other.parts.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x >= y {
                        parts.push(x);
                        a.next();
                    } else {
                        parts.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    parts.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    parts.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Partition { parts }
    }

    /// Exponent form `(l_h, n_{l_h})`, `l_h` strictly decreasing.
    pub fn exponent_form(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((l, m)) if *l == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Halves every multiplicity; `None` unless all multiplicities are even.
    pub fn halve_multiplicities(&self) -> Option<Partition> {
        let mut parts = Vec::new();
        for (l, m) in self.exponent_form() {
            if m % 2 != 0 {
                return None;
            }
            parts.extend(std::iter::repeat_n(l, m / 2));
        }
        Some(Partition { parts })
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub weight: usize,
    pub length: usize,
    pub n_invariant: usize,
}

pub fn partition_stats(p: &Partition) -> PartitionStats {
    PartitionStats { weight: p.weight(), length: p.length(), n_invariant: p.n_invariant() }
}

pub fn exponent_form(p: &Partition) -> Vec<(usize, usize)> {
    p.exponent_form()
}

pub fn partition_union(a: &Partition, b: &Partition) -> Partition {
    a.union(b)
}

/// All partitions of `n`, in decreasing lexicographic order (`(n)` first).
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A pair of partitions `(μ;ν)`; it belongs to `Q_n` for `n = |μ|+|ν|`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    pub mu: Partition,
    pub nu: Partition,
}

impl Bipartition {
    pub fn new(mu: Partition, nu: Partition) -> Self {
        Bipartition { mu, nu }
    }

    pub fn from_parts(mu: &[usize], nu: &[usize]) -> Result<Self> {
        Ok(Bipartition { mu: Partition::new(mu.to_vec())?, nu: Partition::new(nu.to_vec())? })
    }

    pub fn size(&self) -> usize {
        self.mu.weight() + self.nu.weight()
    }

    pub fn lambda(&self) -> Partition {
        self.mu.add(&self.nu)
    }

    /// `(μ∪μ; ν∪ν)`.
    pub fn doubled(&self) -> Bipartition {
        Bipartition { mu: self.mu.union(&self.mu), nu: self.nu.union(&self.nu) }
    }
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.mu, self.nu)
    }
}

/// All of `Q_n`: for `|μ| = n, n-1, .., 0`, every `μ ⊢ |μ|` then every `ν ⊢ n-|μ|`.
pub fn enumerate_bipartitions(n: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        let nus = enumerate_partitions(n - a);
        for mu in enumerate_partitions(a) {
            for nu in &nus {
                out.push(Bipartition { mu: mu.clone(), nu: nu.clone() });
            }
        }
    }
    out
}

/// `b(μ;ν) = |ν| + 2n(μ) + 2n(ν)`.
pub fn b_invariant(bp: &Bipartition) -> usize {
    let b = bp.nu.weight() + 2 * bp.mu.n_invariant() + 2 * bp.nu.n_invariant();
    let lambda = bp.lambda();
    debug_assert_eq!(b, lambda.weight() + 2 * lambda.n_invariant() - bp.mu.weight());
    b
}

/// `|λ| + 2n(λ) - |μ|`, the second route to `b(μ;ν)`.
pub fn b_invariant_via_lambda(bp: &Bipartition) -> usize {
    let lambda = bp.lambda();
    lambda.weight() + 2 * lambda.n_invariant() - bp.mu.weight()
}

/// `k_{h}` with the `k_0 = ∞` sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum KValue {
    Finite(usize),
    Infinite,
}

/// One block `h` of equal parts of `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// `l_h`
    pub part: usize,
    /// `n_{l_h}`
    pub mult: usize,
    /// `I_h` (0-based row indices into `λ`).
    pub rows: Range<usize>,
    /// `j_h`, the common value of `μ` on `I_h`.
    pub mu_part: usize,
    /// `k_h`, the common value of `ν` on `I_h`.
    pub nu_part: usize,
}

impl Block {
    /// `i(h)`, the smallest index of `I_h`.
    pub fn first(&self) -> usize {
        self.rows.start
    }
}

/// Which rule of the Levi section applies to a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeviCase {
    /// `h ∈ R_t`, `j_h ≠ 0`: the correction column is `i(h+t)`.
    RightRun { t: usize },
    /// `j_h ≠ j_{h+1}`, `h ∈ L_t`: the correction column is `i(h-t)`.
    LeftRun { t: usize },
    /// `h ∈ J`.
    Distinguished,
    /// `j_h = 0`.
    ZeroMu,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeData {
    pub lambda: Partition,
    pub blocks: Vec<Block>,
    /// `J`, as 0-based block indices in increasing order.
    pub j_set: Vec<usize>,
    /// `t` with `j_h = .. = j_{h+t} ≠ j_{h+t+1}` (0 when `j_h ≠ j_{h+1}`).
    pub right_runs: Vec<usize>,
    /// `t` with `k_h = .. = k_{h-t} ≠ k_{h-t-1}` (0 when `k_h ≠ k_{h-1}`).
    pub left_runs: Vec<usize>,
}

impl ShapeData {
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn in_j(&self, h: usize) -> bool {
        self.j_set.binary_search(&h).is_ok()
    }

    /// `j_h`, zero past the last block.
    pub fn mu_at(&self, h: usize) -> usize {
        self.blocks.get(h).map_or(0, |b| b.mu_part)
    }

    /// `k_h` for a 1-based `h`, so that `k_value(0)` is the sentinel.
    pub fn k_value(&self, h1: usize) -> KValue {
        if h1 == 0 {
            KValue::Infinite
        } else {
            KValue::Finite(self.blocks[h1 - 1].nu_part)
        }
    }

    pub fn levi_case(&self, h: usize) -> LeviCase {
        let b = &self.blocks[h];
        if b.mu_part == 0 {
            LeviCase::ZeroMu
        } else if self.in_j(h) {
            LeviCase::Distinguished
        } else if b.mu_part == self.mu_at(h + 1) {
            LeviCase::RightRun { t: self.right_runs[h] }
        } else {
            LeviCase::LeftRun { t: self.left_runs[h] }
        }
    }

    /// Rank of each Levi factor: `n_{l_h} - 1` on `J`, else `n_{l_h}`.
    pub fn levi_ranks(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(h, b)| if self.in_j(h) { b.mult - 1 } else { b.mult })
            .collect()
    }

    /// `J` as 1-based block labels.
    pub fn j_labels(&self) -> Vec<usize> {
        self.j_set.iter().map(|h| h + 1).collect()
    }

    /// Rebuilds `(μ;ν)` from the per-block values.
    pub fn reconstruct(&self) -> Bipartition {
        let mut mu = Vec::new();
        let mut nu = Vec::new();
        for b in &self.blocks {
            mu.extend(std::iter::repeat_n(b.mu_part, b.mult));
            nu.extend(std::iter::repeat_n(b.nu_part, b.mult));
        }
        Bipartition {
            mu: Partition::new(mu).expect("block values are non-increasing"),
            nu: Partition::new(nu).expect("block values are non-increasing"),
        }
    }
}

pub fn shape_data(bp: &Bipartition) -> ShapeData {
    let lambda = bp.lambda();
    let mut blocks = Vec::new();
    let mut start = 0;
    for (part, mult) in lambda.exponent_form() {
        let rows = start..start + mult;
        // μ and ν are constant on I_h because both are partitions summing to λ.
        let mu_part = bp.mu.part(start);
        let nu_part = bp.nu.part(start);
        debug_assert!(rows.clone().all(|i| bp.mu.part(i) == mu_part && bp.nu.part(i) == nu_part));
        blocks.push(Block { part, mult, rows, mu_part, nu_part });
        start += mult;
    }
    let m = blocks.len();
    let mu_at = |h: usize| blocks.get(h).map_or(0, |b: &Block| b.mu_part);
    let k_at = |h1: usize| if h1 == 0 { KValue::Infinite } else { KValue::Finite(blocks[h1 - 1].nu_part) };

    let j_set = (0..m)
        .filter(|&h| mu_at(h) > mu_at(h + 1) && k_at(h + 1) < k_at(h))
        .collect();

    let mut right_runs = vec![0; m];
    for h in (0..m).rev() {
        if h + 1 < m && blocks[h + 1].mu_part == blocks[h].mu_part {
            right_runs[h] = right_runs[h + 1] + 1;
        }
    }
    let mut left_runs = vec![0; m];
    for h in 1..m {
        if blocks[h - 1].nu_part == blocks[h].nu_part {
            left_runs[h] = left_runs[h - 1] + 1;
        }
    }
    ShapeData { lambda, blocks, j_set, right_runs, left_runs }
}
