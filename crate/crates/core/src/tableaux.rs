//! Plethystic tableaux, box partitions, and the bijection between them.
//!
//! A tableau of column length `n` is a strictly increasing sequence
//! `a_n < a_{n-1} < ... < a_1` of nonnegative integers, stored smallest-first.
//! It lies in `B_r(n)` when `a_1 <= r`. Through `psi` these columns are in
//! bijection with partitions fitting in an `n x m` box, `m = r + 1 - n`.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

pub type Entries = SmallVec<[u32; 6]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("expected {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("entry {value} at position {index} is negative")]
    NegativeEntry { index: usize, value: i64 },
    #[error("entry {value} is repeated at position {index}")]
    RepeatedEntry { index: usize, value: i64 },
    #[error("entries are not increasing at position {index}")]
    NotIncreasing { index: usize },
    #[error("largest entry {largest} exceeds r = {r}")]
    NotInRange { largest: u32, r: u32 },
    #[error("cannot remove first and last entry from a column of length {0}")]
    Underflow(usize),
    #[error("partition {parts:?} does not fit in a {n} x {m} box")]
    OutsideBox { parts: Vec<u32>, n: u32, m: u32 },
    #[error("partition parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<u32>),
}

/// A column `⟨a_n, ..., a_1⟩` of strictly increasing nonnegative entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    entries: Entries,
}

impl Tableau {
    /// Validated construction; `entries` are listed smallest-first.
    pub fn new(entries: &[u32]) -> Result<Self, TableauError> {
        for (i, w) in entries.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(TableauError::RepeatedEntry { index: i + 1, value: w[1] as i64 });
            }
            if w[0] > w[1] {
                return Err(TableauError::NotIncreasing { index: i + 1 });
            }
        }
        Ok(Self { entries: Entries::from_slice(entries) })
    }

    /// The empty column, the single element of `B(0)`.
    pub fn empty() -> Self {
        Self { entries: Entries::new() }
    }

    /// `⟨0, 1, ..., n-1⟩`, the unique element of `B_{n-1}(n)`.
    pub fn minimal(n: usize) -> Self {
        Self { entries: (0..n as u32).collect() }
    }

    /// Caller guarantees strict increase.
    pub(crate) fn from_entries_unchecked(entries: Entries) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] < w[1]));
        Self { entries }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Entries `a_n, ..., a_1` smallest-first.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `a_1`, the largest entry.
    pub fn largest(&self) -> Option<u32> {
        self.entries.last().copied()
    }

    /// `a_n`, the smallest entry.
    pub fn smallest(&self) -> Option<u32> {
        self.entries.first().copied()
    }

    /// The entry `a_i` for `1 <= i <= n`.
    pub fn a(&self, i: usize) -> u32 {
        self.entries[self.n() - i]
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().map(|&e| e as u64).sum()
    }

    /// Membership in `B_r(n)`.
    pub fn in_range(&self, r: u32) -> bool {
        self.largest().is_none_or(|a1| a1 <= r)
    }

    /// Entrywise sum with a nonnegative vector (smallest-first order).
    /// Returns `None` if the result is not strictly increasing.
    pub fn shifted(&self, shift: &[u32]) -> Option<Self> {
        assert_eq!(shift.len(), self.n(), "shift length must match column length");
        let entries: Entries = self.entries.iter().zip(shift).map(|(a, s)| a + s).collect();
        entries.windows(2).all(|w| w[0] < w[1]).then_some(Self { entries })
    }

    /// Adds one to the entry at stored position `pos`, if the result is a tableau.
    pub fn incremented(&self, pos: usize) -> Option<Self> {
        let mut entries = self.entries.clone();
        entries[pos] += 1;
        if pos + 1 < entries.len() && entries[pos] >= entries[pos + 1] {
            return None;
        }
        Some(Self { entries })
    }

    /// Subtracts one from the entry at stored position `pos`, if the result is a tableau.
    pub fn decremented(&self, pos: usize) -> Option<Self> {
        let mut entries = self.entries.clone();
        entries[pos] = entries[pos].checked_sub(1)?;
        if pos > 0 && entries[pos - 1] >= entries[pos] {
            return None;
        }
        Some(Self { entries })
    }

    /// Adds `offset` to every entry.
    pub fn translated(&self, offset: u32) -> Self {
        Self { entries: self.entries.iter().map(|e| e + offset).collect() }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "⟩")
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Tableau", 2)?;
        s.serialize_field("n", &self.n())?;
        s.serialize_field("entries", self.entries.as_slice())?;
        s.end()
    }
}

/// Validates a column given as signed integers, smallest first.
pub fn make_tableau(n: usize, entries: &[i64]) -> Result<Tableau, TableauError> {
    if entries.len() != n {
        return Err(TableauError::WrongLength { expected: n, got: entries.len() });
    }
    for (i, &e) in entries.iter().enumerate() {
        if e < 0 {
            return Err(TableauError::NegativeEntry { index: i, value: e });
        }
        if i > 0 && entries[i - 1] == e {
            return Err(TableauError::RepeatedEntry { index: i, value: e });
        }
        if i > 0 && entries[i - 1] > e {
            return Err(TableauError::NotIncreasing { index: i });
        }
    }
    let entries: Entries = entries
        .iter()
        .map(|&e| u32::try_from(e).expect("entry exceeds u32"))
        .collect();
    Ok(Tableau { entries })
}

/// An exact half-integer, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_doubled(twice: i64) -> Self {
        Self(twice)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0 % 2 == 0 {
            serializer.serialize_i64(self.0 / 2)
        } else {
            serializer.serialize_f64(self.as_f64())
        }
    }
}

/// `2 wt_r(t) = n r - 2 (a_n + ... + a_1)`, without the range check.
pub fn twice_wt(t: &Tableau, r: u32) -> i64 {
    t.n() as i64 * r as i64 - 2 * t.sum() as i64
}

/// The weight `wt_r(t)`.
pub fn wt(t: &Tableau, r: u32) -> Result<HalfInt, TableauError> {
    match t.largest() {
        Some(a1) if a1 > r => Err(TableauError::NotInRange { largest: a1, r }),
        _ => Ok(HalfInt(twice_wt(t, r))),
    }
}

/// A partition inside an `n x m` box: `λ_1 <= n` and at most `m` parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxPartition {
    parts: Vec<u32>,
    n: u32,
    m: u32,
}

impl BoxPartition {
    pub fn new(parts: Vec<u32>, n: u32, m: u32) -> Result<Self, TableauError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError::NotAPartition(parts));
        }
        if parts.first().is_some_and(|&p| p > n) || parts.len() > m as usize {
            return Err(TableauError::OutsideBox { parts, n, m });
        }
        Ok(Self { parts, n, m })
    }

    pub fn empty(n: u32, m: u32) -> Self {
        Self { parts: Vec::new(), n, m }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn box_width(&self) -> u32 {
        self.n
    }

    pub fn box_height(&self) -> u32 {
        self.m
    }

    /// The rank in `L(n, m)`: the number of boxes.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }
}

impl fmt::Display for BoxPartition {
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

impl Serialize for BoxPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BoxPartition", 2)?;
        s.serialize_field("parts", &self.parts)?;
        s.serialize_field("box", &[self.n, self.m])?;
        s.end()
    }
}

/// `⟨a_n, ..., a_1⟩ ↦ (n^{a_n} ... i^{a_i - a_{i+1} - 1} ... 1^{a_1 - a_2 - 1})`
/// as an element of `L(n, r + 1 - n)`.
pub fn psi(t: &Tableau, r: u32) -> Result<BoxPartition, TableauError> {
    let n = t.n();
    if let Some(a1) = t.largest() {
        if a1 > r {
            return Err(TableauError::NotInRange { largest: a1, r });
        }
    }
    let m = r + 1 - n as u32;
    let mut parts = Vec::new();
    for i in (1..=n).rev() {
        let mult = if i == n { t.a(n) } else { t.a(i) - t.a(i + 1) - 1 };
        parts.extend(std::iter::repeat_n(i as u32, mult as usize));
    }
    Ok(BoxPartition { parts, n: n as u32, m })
}

/// Two-sided inverse of [`psi`]; returns the tableau together with its `r`.
pub fn psi_inv(lambda: &BoxPartition) -> (Tableau, u32) {
    let n = lambda.n as usize;
    let mut entries: Entries = SmallVec::from_elem(0, n);
    for i in (1..=n).rev() {
        let mult = lambda.multiplicity(i as u32);
        let pos = n - i;
        entries[pos] = if i == n { mult } else { entries[pos - 1] + 1 + mult };
    }
    let r = lambda.m + lambda.n - 1;
    (Tableau { entries }, r)
}

/// Drops `a_n` and `a_1` and renormalises by `a_n + 1`, giving a column of
/// length `n - 2`.
pub fn t_down(t: &Tableau) -> Result<Tableau, TableauError> {
    let n = t.n();
    if n < 2 {
        return Err(TableauError::Underflow(n));
    }
    let base = t.entries[0] + 1;
    Ok(Tableau { entries: t.entries[1..n - 1].iter().map(|e| e - base).collect() })
}

/// Whether `lambda` is obtained from `mu` by adding exactly one box.
pub fn covers(lambda: &BoxPartition, mu: &BoxPartition) -> bool {
    if lambda.size() != mu.size() + 1 || mu.parts.len() > lambda.parts.len() {
        return false;
    }
    mu.parts.iter().zip(&lambda.parts).all(|(m, l)| m <= l)
}

/// Iterator over `B_r(n)` in lexicographic order of the stored entries.
#[derive(Clone, Debug)]
pub struct TableauIter {
    current: Option<Entries>,
    r: u32,
}

impl Iterator for TableauIter {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        let cur = self.current.take()?;
        let out = Tableau { entries: cur.clone() };
        let n = cur.len();
        let mut next = cur;
        // rightmost position that can still move up
        let mut pos = n;
        while pos > 0 {
            let i = pos - 1;
            if next[i] < self.r + 1 - (n - i) as u32 {
                next[i] += 1;
                for j in i + 1..n {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
            pos -= 1;
        }
        Some(out)
    }
}

/// Lazily enumerates `B_r(n)` in canonical order.
pub fn tableaux(n: usize, r: u32) -> TableauIter {
    let current = if n as u64 > r as u64 + 1 { None } else { Some((0..n as u32).collect()) };
    TableauIter { current, r }
}

/// All `C(r+1, n)` tableaux of `B_r(n)` in canonical order.
pub fn enumerate(n: usize, r: u32) -> Vec<Tableau> {
    tableaux(n, r).collect()
}

/// Ranks tableaux of `B_r(n)` by their position in the canonical order.
#[derive(Clone, Debug)]
pub struct TableauIndex {
    n: usize,
    r: u32,
    // binom[a][b] = C(a, b) for a <= r + 1, b <= n
    binom: Vec<Vec<u64>>,
}

impl TableauIndex {
    pub fn new(n: usize, r: u32) -> Self {
        let rows = r as usize + 2;
        let mut binom = vec![vec![0u64; n + 2]; rows];
        for a in 0..rows {
            binom[a][0] = 1;
            for b in 1..=(n + 1).min(a) {
                binom[a][b] = binom[a - 1][b - 1]
                    .checked_add(if b < a { binom[a - 1][b] } else { 0 })
                    .expect("binomial overflow");
            }
        }
        Self { n, r, binom }
    }

    fn c(&self, a: usize, b: usize) -> u64 {
        if b > a {
            0
        } else {
            self.binom[a][b]
        }
    }

    /// `C(r + 1, n)`.
    pub fn len(&self) -> usize {
        self.c(self.r as usize + 1, self.n) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position of `entries` in [`enumerate`]`(n, r)`, or `None` outside `B_r(n)`.
    pub fn rank(&self, entries: &[u32]) -> Option<usize> {
        if entries.len() != self.n || entries.last().is_some_and(|&a| a > self.r) {
            return None;
        }
        let total = self.r as usize + 1;
        let k = self.n;
        let mut rank = 0u64;
        let mut lo = 0usize;
        for (i, &c) in entries.iter().enumerate() {
            let c = c as usize;
            let j = k - 1 - i;
            // combinations whose i-th entry lies in lo..c
            rank += self.c(total - lo, j + 1) - self.c(total - c, j + 1);
            lo = c + 1;
        }
        Some(rank as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(entries: &[u32]) -> Tableau {
        Tableau::new(entries).unwrap()
    }

    fn binomial(a: u64, b: u64) -> u64 {
        if b > a {
            return 0;
        }
        (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
    }

    #[test]
    fn make_tableau_validates() {
        assert_eq!(make_tableau(2, &[0, 3]).unwrap(), t(&[0, 3]));
        assert_eq!(make_tableau(3, &[0, 1, 2]).unwrap(), Tableau::minimal(3));
        assert!(matches!(make_tableau(2, &[3, 3]), Err(TableauError::RepeatedEntry { .. })));
        assert!(matches!(make_tableau(2, &[4, 3]), Err(TableauError::NotIncreasing { .. })));
        assert!(matches!(make_tableau(2, &[-1, 3]), Err(TableauError::NegativeEntry { .. })));
        assert!(matches!(make_tableau(3, &[0, 3]), Err(TableauError::WrongLength { .. })));
    }

    #[test]
    fn weights() {
        assert_eq!(wt(&t(&[0, 3]), 4).unwrap(), HalfInt::from_doubled(2));
        assert_eq!(wt(&t(&[0, 3, 5]), 6).unwrap(), HalfInt::from_doubled(2));
        for n in 1..5usize {
            let r = 9;
            let m = r + 1 - n as u32;
            assert_eq!(wt(&Tableau::minimal(n), r).unwrap().doubled(), (n as u32 * m) as i64);
        }
        assert!(matches!(wt(&t(&[0, 5]), 4), Err(TableauError::NotInRange { .. })));
        assert_eq!(HalfInt::from_doubled(-3).to_string(), "-3/2");
        assert_eq!(HalfInt::from_doubled(4).to_string(), "2");
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&t(&[0, 3, 5]), 6).unwrap().parts(), &[2, 2, 1]);
        assert!(psi(&Tableau::minimal(4), 7).unwrap().parts().is_empty());
        let lam = psi(&t(&[1, 3]), 4).unwrap();
        assert_eq!(lam.parts(), &[2, 1]);
        assert_eq!(psi_inv(&lam), (t(&[1, 3]), 4));
    }

    #[test]
    fn t_down_examples() {
        assert_eq!(t_down(&t(&[1, 4, 5, 8])).unwrap(), t(&[2, 3]));
        assert_eq!(t_down(&t(&[2, 7])).unwrap(), Tableau::empty());
        assert_eq!(t_down(&t(&[0, 1, 4])).unwrap(), t(&[0]));
        assert_eq!(t_down(&t(&[3])), Err(TableauError::Underflow(1)));
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate(2, 4).len(), 10);
        assert_eq!(enumerate(3, 2), vec![t(&[0, 1, 2])]);
        assert!(enumerate(3, 1).is_empty());
        assert_eq!(enumerate(0, 3), vec![Tableau::empty()]);
        assert_eq!(tableaux(4, 100).count(), 4_082_925);
        let all = enumerate(3, 7);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn covering_relation() {
        let p = |parts: Vec<u32>| BoxPartition::new(parts, 3, 3).unwrap();
        assert!(covers(&p(vec![1]), &p(vec![])));
        assert!(covers(&p(vec![2, 2]), &p(vec![2, 1])));
        assert!(!covers(&p(vec![2, 2]), &p(vec![2])));
        assert!(!covers(&p(vec![3]), &p(vec![1, 1])));
    }

    #[test]
    fn box_partition_validation() {
        assert!(BoxPartition::new(vec![3, 1], 2, 4).is_err());
        assert!(BoxPartition::new(vec![1, 1, 1], 2, 2).is_err());
        assert!(BoxPartition::new(vec![1, 2], 2, 2).is_err());
        let json = serde_json::to_string(&BoxPartition::new(vec![2, 1], 2, 3).unwrap()).unwrap();
        assert_eq!(json, r#"{"parts":[2,1],"box":[2,3]}"#);
        let json = serde_json::to_string(&t(&[0, 3, 5])).unwrap();
        assert_eq!(json, r#"{"n":3,"entries":[0,3,5]}"#);
    }

    #[test]
    fn psi_roundtrip_exhaustive() {
        for n in 0..=4usize {
            for r in (n as u32).saturating_sub(1)..=30 {
                let m = r + 1 - n as u32;
                let mut seen = std::collections::HashSet::new();
                for tab in tableaux(n, r) {
                    let lam = psi(&tab, r).unwrap();
                    assert_eq!(lam.box_height(), m);
                    assert!(BoxPartition::new(lam.parts().to_vec(), n as u32, m).is_ok());
                    // size constant n(n-1)/2, not (n-1)(n-2)/2
                    assert_eq!(lam.size() as u64 + (n * n.saturating_sub(1) / 2) as u64, tab.sum());
                    assert_eq!(psi_inv(&lam), (tab.clone(), r));
                    assert!(seen.insert(lam));
                }
                assert_eq!(seen.len() as u64, binomial(r as u64 + 1, n as u64));
            }
        }
    }

    #[test]
    fn rank_matches_enumeration() {
        for n in 0..=4usize {
            for r in 0..=12u32 {
                let index = TableauIndex::new(n, r);
                let all = enumerate(n, r);
                assert_eq!(index.len(), all.len());
                for (i, tab) in all.iter().enumerate() {
                    assert_eq!(index.rank(tab.entries()), Some(i));
                }
            }
        }
        let index = TableauIndex::new(2, 4);
        assert_eq!(index.rank(&[0, 5]), None);
    }

    proptest! {
        #[test]
        fn weight_fibres_match_gaussian_coefficients(n in 0usize..5, r in 0u32..16) {
            use crate::qchar::{q_binom, CenteredPoly};
            prop_assume!(r + 1 >= n as u32);
            let mut poly = CenteredPoly::zero();
            for tab in tableaux(n, r) {
                poly.add_term(twice_wt(&tab, r), 1).unwrap();
            }
            prop_assert_eq!(poly, q_binom(r as u64 + 1, n as u64).unwrap());
        }
    }
}
