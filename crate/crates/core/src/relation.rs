//! Binary relations on `{0..n-1}` stored as a dense bit matrix.
//!
//! Row `a` is a `u64` whose bit `b` is set iff `(a, b)` is in the relation,
//! so `n` is capped at 64. Closure, containment and restriction all work a
//! word at a time.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_SIZE: usize = 64;

#[inline]
pub(crate) fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    rows: Vec<u64>,
}

impl Relation {
    /// The empty relation on `n` elements.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_SIZE {
            return Err(Error::TooLarge(n));
        }
        Ok(Self { n, rows: vec![0; n] })
    }

    /// The diagonal `{(a, a)}`, i.e. the antichain order.
    pub fn diagonal(n: usize) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for a in 0..n {
            r.rows[a] = 1 << a;
        }
        Ok(r)
    }

    /// The natural chain `0 < 1 < ... < n-1`, reflexive.
    pub fn chain(n: usize) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for a in 0..n {
            r.rows[a] = mask_below(n) & !mask_below(a);
        }
        Ok(r)
    }

    /// The linear order listing `sequence` from bottom to top.
    pub fn from_sequence(sequence: &[usize]) -> Result<Self> {
        let n = sequence.len();
        let mut r = Self::empty(n)?;
        let mut seen = 0u64;
        for (pos, &a) in sequence.iter().enumerate() {
            if a >= n {
                return Err(Error::OutOfRange { index: a, size: n });
            }
            if seen & (1 << a) != 0 {
                return Err(Error::Parse(format!("element {a} repeated in sequence")));
            }
            seen |= 1 << a;
            for &b in &sequence[pos..] {
                r.rows[a] |= 1 << b;
            }
        }
        Ok(r)
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = Self::empty(n)?;
        for (a, b) in pairs {
            r.insert(a, b)?;
        }
        Ok(r)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.rows[a] >> b & 1 == 1
    }

    /// Row `a` as a bit set of successors.
    #[inline]
    pub fn row(&self, a: usize) -> u64 {
        self.rows[a]
    }

    /// Column `b` as a bit set of predecessors.
    pub fn column(&self, b: usize) -> u64 {
        let mut col = 0;
        for a in 0..self.n {
            col |= (self.rows[a] >> b & 1) << a;
        }
        col
    }

    pub fn insert(&mut self, a: usize, b: usize) -> Result<()> {
        for x in [a, b] {
            if x >= self.n {
                return Err(Error::OutOfRange { index: x, size: self.n });
            }
        }
        self.rows[a] |= 1 << b;
        Ok(())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| {
            let row = self.rows[a];
            (0..self.n).filter(move |&b| row >> b & 1 == 1).map(move |b| (a, b))
        })
    }

    /// Pairs with `a != b`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs().filter(|(a, b)| a != b)
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&w| w == 0)
    }

    /// Smallest transitive superset (Warshall, one word per row).
    pub fn transitive_closure(&self) -> Relation {
        let mut rows = self.rows.clone();
        for k in 0..self.n {
            let rk = rows[k];
            for row in rows.iter_mut() {
                if *row >> k & 1 == 1 {
                    *row |= rk;
                }
            }
        }
        Relation { n: self.n, rows }
    }

    pub fn reflexive_closure(&self) -> Relation {
        let mut r = self.clone();
        for a in 0..self.n {
            r.rows[a] |= 1 << a;
        }
        r
    }

    pub fn reflexive_transitive_closure(&self) -> Relation {
        self.transitive_closure().reflexive_closure()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|a| self.rows[a] >> a & 1 == 1)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|a| {
            let above = self.rows[a] & !(1 << a);
            (0..self.n).all(|b| above >> b & 1 == 0 || self.rows[b] >> a & 1 == 0)
        })
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|a| {
            let row = self.rows[a];
            (0..self.n).all(|b| row >> b & 1 == 0 || self.rows[b] & !row == 0)
        })
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }

    pub fn is_total(&self) -> bool {
        let full = mask_below(self.n);
        (0..self.n).all(|a| self.rows[a] | self.column(a) == full)
    }

    pub fn is_linear_order(&self) -> bool {
        // an antisymmetric reflexive relation is total iff it has n(n+1)/2 pairs
        self.is_partial_order() && self.len() == self.n * (self.n + 1) / 2
    }

    /// `self ⊆ outer`.
    pub fn is_subset_of(&self, outer: &Relation) -> Result<bool> {
        if self.n != outer.n {
            return Err(Error::SizeMismatch { left: self.n, right: outer.n });
        }
        Ok(self.rows.iter().zip(&outer.rows).all(|(i, o)| i & !o == 0))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect();
        Ok(Relation { n: self.n, rows })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a & b).collect();
        Ok(Relation { n: self.n, rows })
    }

    /// Keeps only pairs with both coordinates in `subset` (a bit set).
    /// The ground set is unchanged.
    pub fn restrict_to_mask(&self, subset: u64) -> Relation {
        let rows = (0..self.n)
            .map(|a| if subset >> a & 1 == 1 { self.rows[a] & subset } else { 0 })
            .collect();
        Relation { n: self.n, rows }
    }

    /// Relation induced on `elements`, relabeled so `elements[i]` becomes `i`.
    pub fn induced(&self, elements: &[usize]) -> Result<Relation> {
        let mut r = Relation::empty(elements.len())?;
        for (i, &a) in elements.iter().enumerate() {
            if a >= self.n {
                return Err(Error::OutOfRange { index: a, size: self.n });
            }
            for (j, &b) in elements.iter().enumerate() {
                if self.rows[a] >> b & 1 == 1 {
                    r.rows[i] |= 1 << j;
                }
            }
        }
        Ok(r)
    }

    /// Image under the bijection `sigma` (`sigma[old] = new`).
    pub fn permuted(&self, sigma: &[usize]) -> Relation {
        debug_assert_eq!(sigma.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for a in 0..self.n {
            let mut row = self.rows[a];
            while row != 0 {
                let b = row.trailing_zeros() as usize;
                row &= row - 1;
                rows[sigma[a]] |= 1 << sigma[b];
            }
        }
        Relation { n: self.n, rows }
    }

    /// Deterministic linear extension: Kahn's algorithm that always removes
    /// the smallest-id element among the current minimal ones.
    pub fn linear_extension_fixed(&self) -> Result<Relation> {
        if !self.is_partial_order() {
            return Err(Error::NotPartialOrder(format!("{self:?}")));
        }
        let mut remaining = mask_below(self.n);
        let mut sequence = Vec::with_capacity(self.n);
        while remaining != 0 {
            let minimal = (0..self.n)
                .find(|&a| remaining >> a & 1 == 1 && self.column(a) & remaining & !(1 << a) == 0)
                .ok_or_else(|| Error::Invariant("no minimal element in a partial order".into()))?;
            sequence.push(minimal);
            remaining &= !(1 << minimal);
        }
        Relation::from_sequence(&sequence)
    }

    /// For a linear order, the elements listed from bottom to top.
    pub fn linear_sequence(&self) -> Option<Vec<usize>> {
        if !self.is_linear_order() {
            return None;
        }
        // rank = number of elements strictly below
        let mut seq = vec![0; self.n];
        for b in 0..self.n {
            let below = self.column(b).count_ones() as usize - 1;
            seq[below] = b;
        }
        Some(seq)
    }
}

/// `inner ⊆ outer`; errors on a size mismatch.
pub fn extends(inner: &Relation, outer: &Relation) -> Result<bool> {
    inner.is_subset_of(outer)
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({}; ", self.n)?;
        f.debug_set().entries(self.strict_pairs()).finish()?;
        write!(f, ")")
    }
}

/// Every partial order on `{0..n-1}` contained in `within` (or all of them),
/// built one element at a time: the new element picks a down-closed set of
/// predecessors and an up-closed set of successors.
pub fn partial_orders(n: usize, within: Option<&Relation>) -> Result<Vec<Relation>> {
    if n > MAX_SIZE {
        return Err(Error::TooLarge(n));
    }
    if let Some(w) = within {
        if w.n != n {
            return Err(Error::SizeMismatch { left: n, right: w.n });
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![0u64; n];
    extend_orders(0, n, within, &mut rows, &mut out);
    Ok(out)
}

fn extend_orders(k: usize, n: usize, within: Option<&Relation>, rows: &mut Vec<u64>, out: &mut Vec<Relation>) {
    if k == n {
        out.push(Relation { n, rows: rows.clone() });
        return;
    }
    let earlier = mask_below(k);
    let (down_allowed, up_allowed) = match within {
        Some(w) => (w.column(k) & earlier, w.rows[k] & earlier),
        None => (earlier, earlier),
    };
    let column = |rows: &[u64], b: usize| -> u64 {
        (0..k).fold(0, |acc, a| acc | (rows[a] >> b & 1) << a)
    };
    // predecessors of each earlier element, restricted to {0..k-1}
    let below: Vec<u64> = (0..k).map(|b| column(rows, b)).collect();

    for down in submasks(down_allowed) {
        if !bits(down).all(|d| below[d] & !down == 0) {
            continue;
        }
        let up_candidates = up_allowed & !down;
        for up in submasks(up_candidates) {
            if !bits(up).all(|u| rows[u] & earlier & !up == 0) {
                continue;
            }
            if !bits(down).all(|d| rows[d] & up == up) {
                continue;
            }
            for d in bits(down) {
                rows[d] |= 1 << k;
            }
            rows[k] = up | 1 << k;
            extend_orders(k + 1, n, within, rows, out);
            for d in bits(down) {
                rows[d] &= !(1 << k);
            }
            rows[k] = 0;
        }
    }
}

/// All submasks of `mask`, ascending.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
        Some(cur)
    })
}

pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(b)
        }
    })
}

/// All linear orders on `{0..n-1}`, listed by their bottom-to-top sequence in
/// lexicographic order.
pub fn linear_orders(n: usize) -> Result<Vec<Relation>> {
    if n > MAX_SIZE {
        return Err(Error::TooLarge(n));
    }
    let mut out = Vec::new();
    let mut seq: Vec<usize> = (0..n).collect();
    loop {
        out.push(Relation::from_sequence(&seq)?);
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| seq[i - 1] < seq[i]) else { break };
        let j = (i..n).rev().find(|&j| seq[j] > seq[i - 1]).expect("pivot successor");
        seq.swap(i - 1, j);
        seq[i..].reverse();
    }
    Ok(out)
}
