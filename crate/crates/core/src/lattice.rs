//! Weights, the positive cone, generator labels and admissible total orders.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest rank supported by the packed coefficient representation.
pub const MAX_N: usize = 8;

/// Integer vector of coefficients of `ε_1 .. ε_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// `ε_i − ε_j` with 1-based indices.
    pub fn root(n: usize, i: usize, j: usize) -> Self {
        let mut w = vec![0; n];
        w[i - 1] += 1;
        w[j - 1] -= 1;
        Weight(w)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    /// Membership in the cone spanned by the simple roots: all prefix sums
    /// are nonnegative and the total is zero.
    pub fn in_positive_cone(&self) -> bool {
        let mut s = 0i64;
        for &c in &self.0 {
            s += c as i64;
            if s < 0 {
                return false;
            }
        }
        s == 0
    }

    /// The invariant form `(λ, λ) = Σ λ_k²`.
    pub fn norm2(&self) -> i64 {
        self.0.iter().map(|&c| (c as i64) * (c as i64)).sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of comparing two weights in the partial order `a < b ⇔ b − a ∈ Q_+ \ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

pub fn cone_compare(a: &Weight, b: &Weight) -> Result<ConeOrdering> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    let d = b.sub(a);
    Ok(if d.is_zero() {
        ConeOrdering::Equal
    } else if d.in_positive_cone() {
        ConeOrdering::Less
    } else if d.neg().in_positive_cone() {
        ConeOrdering::Greater
    } else {
        ConeOrdering::Incomparable
    })
}

/// Label of a weight generator: `z_ij` for `row != col`, `t_i` for `row == col`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub row: u8,
    pub col: u8,
}

impl GeneratorId {
    pub fn new(row: usize, col: usize) -> Self {
        GeneratorId { row: row as u8, col: col as u8 }
    }

    pub fn z(i: usize, j: usize) -> Self {
        debug_assert_ne!(i, j);
        Self::new(i, j)
    }

    pub fn t(i: usize) -> Self {
        Self::new(i, i)
    }

    pub fn i(&self) -> usize {
        self.row as usize
    }

    pub fn j(&self) -> usize {
        self.col as usize
    }

    pub fn is_diagonal(&self) -> bool {
        self.row == self.col
    }

    pub fn valid_for(&self, n: usize) -> bool {
        (1..=n).contains(&self.i()) && (1..=n).contains(&self.j())
    }

    /// Index into an `n × n` table.
    pub fn slot(&self, n: usize) -> usize {
        (self.i() - 1) * n + (self.j() - 1)
    }

    pub fn from_slot(n: usize, s: usize) -> Self {
        Self::new(s / n + 1, s % n + 1)
    }

    pub fn all(n: usize) -> impl Iterator<Item = GeneratorId> {
        (0..n * n).map(move |s| GeneratorId::from_slot(n, s))
    }

    /// `i − j` as a signed height.
    pub fn height(&self) -> i32 {
        self.row as i32 - self.col as i32
    }

    /// Shift both indices by `k` (used by block embeddings).
    pub fn shifted(&self, k: usize) -> Self {
        Self::new(self.i() + k, self.j() + k)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_diagonal() {
            write!(f, "t[{}]", self.row)
        } else {
            write!(f, "z[{},{}]", self.row, self.col)
        }
    }
}

pub fn weight_of(n: usize, g: GeneratorId) -> Weight {
    Weight::root(n, g.i(), g.j())
}

/// The default order: `E_ij ≺ E_kl` iff `i − j > k − l`, or `i − j = k − l` and `i > k`.
pub fn default_order_cmp(g1: GeneratorId, g2: GeneratorId) -> Ordering {
    g2.height()
        .cmp(&g1.height())
        .then_with(|| g2.row.cmp(&g1.row))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Default,
    /// The order used for the published `sl_3` table (`n = 3` only).
    Stord,
    /// Cross-block lowering first, block-internal default order, cross-block raising last.
    Block { split: usize },
    Custom,
}

/// A strict total order on the `n²` generators, stored as a rank table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TotalOrder {
    n: usize,
    kind: OrderKind,
    rank: Vec<u16>,
}

impl TotalOrder {
    pub fn default_for(n: usize) -> Self {
        let mut seq: Vec<GeneratorId> = GeneratorId::all(n).collect();
        seq.sort_by(|a, b| default_order_cmp(*a, *b));
        Self::build(n, OrderKind::Default, &seq)
    }

    /// `z_31, z_21, z_32, t_1, t_2, t_3, z_23, z_12, z_13`, earliest first.
    pub fn stord() -> Self {
        let z = GeneratorId::z;
        let t = GeneratorId::t;
        let seq = [z(3, 1), z(2, 1), z(3, 2), t(1), t(2), t(3), z(2, 3), z(1, 2), z(1, 3)];
        Self::build(3, OrderKind::Stord, &seq)
    }

    /// Block-adapted order for the split `(split, n − split)`.
    pub fn block_adapted(n: usize, split: usize) -> Result<Self> {
        if split == 0 || split >= n {
            return Err(Error::InvalidArgument(format!(
                "block split {split} must lie strictly inside 1..{n}"
            )));
        }
        let cross_low = |g: &GeneratorId| g.i() > split && g.j() <= split;
        let cross_high = |g: &GeneratorId| g.i() <= split && g.j() > split;
        let mut low: Vec<GeneratorId> = GeneratorId::all(n).filter(cross_low).collect();
        let mut mid: Vec<GeneratorId> = GeneratorId::all(n)
            .filter(|g| !cross_low(g) && !cross_high(g))
            .collect();
        let mut high: Vec<GeneratorId> = GeneratorId::all(n).filter(cross_high).collect();
        // Within the cross-block groups a default-compatible sort keeps the
        // order cone-compatible; the groups themselves are separated.
        low.sort_by(|a, b| default_order_cmp(*a, *b));
        mid.sort_by(|a, b| default_order_cmp(*a, *b));
        high.sort_by(|a, b| default_order_cmp(*a, *b));
        let seq: Vec<GeneratorId> = low.into_iter().chain(mid).chain(high).collect();
        let ord = Self::build(n, OrderKind::Block { split }, &seq);
        ord.check_compatible()?;
        Ok(ord)
    }

    /// A custom order given earliest-first; validated for completeness and
    /// compatibility with the cone order.
    pub fn from_sequence(n: usize, seq: &[GeneratorId]) -> Result<Self> {
        if seq.len() != n * n {
            return Err(Error::InvalidOrder(format!(
                "expected {} generators, got {}",
                n * n,
                seq.len()
            )));
        }
        let mut seen = vec![false; n * n];
        for g in seq {
            if !g.valid_for(n) {
                return Err(Error::InvalidOrder(format!("{g} out of range for n = {n}")));
            }
            if std::mem::replace(&mut seen[g.slot(n)], true) {
                return Err(Error::InvalidOrder(format!("{g} listed twice")));
            }
        }
        let ord = Self::build(n, OrderKind::Custom, seq);
        ord.check_compatible()?;
        Ok(ord)
    }

    /// Parse an order file: one `z[i,j]` or `t[i]` per line, earliest first.
    /// Entries on one line may also be separated by `<`, as `drz order`
    /// prints them. Blank lines and lines starting with `#` are ignored.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut seq = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let s: String = line.chars().filter(|c| !c.is_whitespace()).collect();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            for s in s.split('<') {
                let bad = || Error::InvalidOrder(format!("line {}: cannot read `{s}`", lineno + 1));
                let inner = |p: &str| -> Option<Vec<usize>> {
                    let body = s.strip_prefix(p)?.strip_prefix('[')?.strip_suffix(']')?;
                    body.split(',').map(|x| x.parse().ok()).collect()
                };
                if let Some(ix) = inner("z") {
                    if ix.len() != 2 || ix[0] == ix[1] {
                        return Err(bad());
                    }
                    seq.push(GeneratorId::z(ix[0], ix[1]));
                } else if let Some(ix) = inner("t") {
                    if ix.len() != 1 {
                        return Err(bad());
                    }
                    seq.push(GeneratorId::t(ix[0]));
                } else {
                    return Err(bad());
                }
            }
        }
        Self::from_sequence(n, &seq)
    }

    fn build(n: usize, kind: OrderKind, seq: &[GeneratorId]) -> Self {
        let mut rank = vec![0u16; n * n];
        for (r, g) in seq.iter().enumerate() {
            rank[g.slot(n)] = r as u16;
        }
        TotalOrder { n, kind, rank }
    }

    fn check_compatible(&self) -> Result<()> {
        for a in GeneratorId::all(self.n) {
            for b in GeneratorId::all(self.n) {
                let c = cone_compare(&weight_of(self.n, a), &weight_of(self.n, b))?;
                if c == ConeOrdering::Less && self.rank_of(a) > self.rank_of(b) {
                    return Err(Error::InvalidOrder(format!(
                        "{a} has smaller weight than {b} but is placed after it"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn rank_of(&self, g: GeneratorId) -> u16 {
        self.rank[g.slot(self.n)]
    }

    pub fn cmp(&self, a: GeneratorId, b: GeneratorId) -> Ordering {
        self.rank_of(a).cmp(&self.rank_of(b))
    }

    /// Generators earliest first.
    pub fn sequence(&self) -> Vec<GeneratorId> {
        let mut seq: Vec<GeneratorId> = GeneratorId::all(self.n).collect();
        seq.sort_by_key(|g| self.rank_of(*g));
        seq
    }

    pub fn is_sorted(&self, mono: &[GeneratorId]) -> bool {
        mono.windows(2).all(|w| self.rank_of(w[0]) <= self.rank_of(w[1]))
    }

    pub fn sort(&self, mono: &mut [GeneratorId]) {
        mono.sort_by_key(|g| self.rank_of(*g));
    }
}

/// Weights of all products of `d` generators.
pub fn product_weights(n: usize, d: usize) -> std::collections::HashSet<Weight> {
    let mut cur: std::collections::HashSet<Weight> = [Weight::zero(n)].into_iter().collect();
    let gens: Vec<Weight> = GeneratorId::all(n).map(|g| weight_of(n, g)).collect();
    for _ in 0..d {
        let mut next = std::collections::HashSet::new();
        for w in &cur {
            for g in &gens {
                next.insert(w.add(g));
            }
        }
        cur = next;
    }
    cur
}
