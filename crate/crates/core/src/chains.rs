//! Seeds, residue-class classification, lattice paths and the bottom operator.
//!
//! A seed partitions `B(n)` into classes given by congruence predicates on the
//! entries. Each class carries the offset vector of the path *restarted at the
//! classified tableau*: if `t` sits at step `k` of the path
//! `t_j = t_0 + floor((v + j) / n)`, its class offset is `(v + k) mod n`. The
//! bottom operator therefore increments the entry whose class offset is `n - 1`,
//! and the predecessor on the path decrements the entry whose offset is `0`.
//! Initial tableaux are those at step `0`, so their class offset is `v` itself.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::report::Report;
use crate::tableaux::{enumerate, Entries, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("no builtin seed for n = {0}")]
    NoBuiltinSeed(usize),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("seed classes do not partition B(n): {tableau} matches {matches:?}")]
    SeedNotPartition { tableau: Tableau, matches: Vec<String> },
    #[error("{0} is not an initial tableau of the seed")]
    NotInitial(Tableau),
    #[error("bottom step from {0} leaves the set of tableaux")]
    InvalidStep(Tableau),
    #[error("{0} is not initial but has no predecessor on its path")]
    MissingPredecessor(Tableau),
    #[error("tableau {tableau} has length {got}, seed expects {expected}")]
    WrongLength { tableau: Tableau, expected: usize, got: usize },
}

/// A linear expression in the entries. Indices are 1-based with `e1 = a_1`
/// the largest entry and `en = a_n` the smallest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Entry(usize),
    Diff(usize, usize),
}

impl Term {
    fn eval(self, entries: &[u32]) -> i64 {
        let n = entries.len();
        let at = |i: usize| entries[n - i] as i64;
        match self {
            Term::Entry(i) => at(i),
            Term::Diff(i, j) => at(i) - at(j),
        }
    }

    fn max_index(self) -> usize {
        match self {
            Term::Entry(i) => i,
            Term::Diff(i, j) => i.max(j),
        }
    }

    fn min_index(self) -> usize {
        match self {
            Term::Entry(i) => i,
            Term::Diff(i, j) => i.min(j),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Entry(i) => write!(f, "e{i}"),
            Term::Diff(i, j) => write!(f, "e{i} - e{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Test {
    Equals(i64),
    Congruent { residue: i64, modulus: i64 },
    NotCongruent { residue: i64, modulus: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub term: Term,
    pub test: Test,
}

impl Atom {
    pub fn equals(term: Term, value: i64) -> Self {
        Self { term, test: Test::Equals(value) }
    }

    pub fn congruent(term: Term, residue: i64, modulus: i64) -> Self {
        Self { term, test: Test::Congruent { residue, modulus } }
    }

    pub fn not_congruent(term: Term, residue: i64, modulus: i64) -> Self {
        Self { term, test: Test::NotCongruent { residue, modulus } }
    }

    pub fn eval(&self, entries: &[u32]) -> bool {
        let x = self.term.eval(entries);
        match self.test {
            Test::Equals(v) => x == v,
            Test::Congruent { residue, modulus } => (x - residue).rem_euclid(modulus) == 0,
            Test::NotCongruent { residue, modulus } => (x - residue).rem_euclid(modulus) != 0,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.test {
            Test::Equals(v) => write!(f, "{} == {v}", self.term),
            Test::Congruent { residue, modulus } => write!(f, "{} ≡ {residue} mod {modulus}", self.term),
            Test::NotCongruent { residue, modulus } => write!(f, "{} !≡ {residue} mod {modulus}", self.term),
        }
    }
}

/// A conjunction of atoms; the empty conjunction is always true.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Predicate {
    pub atoms: Vec<Atom>,
}

impl Predicate {
    pub fn new(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    pub fn eval(&self, entries: &[u32]) -> bool {
        self.atoms.iter().all(|a| a.eval(entries))
    }

    fn validate(&self, n: usize) -> Result<(), String> {
        for atom in &self.atoms {
            if atom.term.min_index() < 1 || atom.term.max_index() > n {
                return Err(format!("atom `{atom}` refers to an entry outside e1..e{n}"));
            }
            if let Test::Congruent { modulus, .. } | Test::NotCongruent { modulus, .. } = atom.test {
                if modulus < 1 {
                    return Err(format!("atom `{atom}` has modulus below 1"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, " && ")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

/// One residue class of a seed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeedClass {
    pub name: String,
    pub predicate: Predicate,
    /// Offset in stored order `(a_n, ..., a_1)`; a permutation of `0..n`.
    pub offset: Vec<u32>,
}

/// A compiled seed for column length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedSpec {
    n: usize,
    initial: Predicate,
    classes: Vec<SeedClass>,
    // stored position incremented by the bottom step, per class
    bump: Vec<usize>,
    // stored position decremented by the inverse step, per class
    back: Vec<usize>,
}

impl SeedSpec {
    pub fn new(n: usize, initial: Predicate, classes: Vec<SeedClass>) -> Result<Self, ChainError> {
        if n == 0 {
            return Err(ChainError::InvalidSeed("seeds need n >= 1".into()));
        }
        if classes.is_empty() {
            return Err(ChainError::InvalidSeed("a seed needs at least one class".into()));
        }
        initial.validate(n).map_err(ChainError::InvalidSeed)?;
        let mut bump = Vec::with_capacity(classes.len());
        let mut back = Vec::with_capacity(classes.len());
        for class in &classes {
            class
                .predicate
                .validate(n)
                .map_err(|e| ChainError::InvalidSeed(format!("class {}: {e}", class.name)))?;
            let mut sorted = class.offset.clone();
            sorted.sort_unstable();
            if sorted != (0..n as u32).collect::<Vec<_>>() {
                return Err(ChainError::InvalidSeed(format!(
                    "class {}: offset {:?} is not a permutation of 0..{}",
                    class.name,
                    class.offset,
                    n - 1
                )));
            }
            bump.push(class.offset.iter().position(|&o| o == n as u32 - 1).unwrap());
            back.push(class.offset.iter().position(|&o| o == 0).unwrap());
        }
        Ok(Self { n, initial, classes, bump, back })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn initial(&self) -> &Predicate {
        &self.initial
    }

    pub fn classes(&self) -> &[SeedClass] {
        &self.classes
    }

    fn check_len(&self, t: &Tableau) -> Result<(), ChainError> {
        if t.n() != self.n {
            return Err(ChainError::WrongLength { tableau: t.clone(), expected: self.n, got: t.n() });
        }
        Ok(())
    }

    pub fn is_initial(&self, t: &Tableau) -> bool {
        self.initial.eval(t.entries())
    }

    /// Index of the unique class containing `t`.
    pub fn classify(&self, t: &Tableau) -> Result<usize, ChainError> {
        self.check_len(t)?;
        let mut found = None;
        for (i, class) in self.classes.iter().enumerate() {
            if class.predicate.eval(t.entries()) {
                if found.is_some() {
                    return Err(self.not_partition(t));
                }
                found = Some(i);
            }
        }
        found.ok_or_else(|| self.not_partition(t))
    }

    fn not_partition(&self, t: &Tableau) -> ChainError {
        let matches = self
            .classes
            .iter()
            .filter(|c| c.predicate.eval(t.entries()))
            .map(|c| c.name.clone())
            .collect();
        ChainError::SeedNotPartition { tableau: t.clone(), matches }
    }

    /// The successor of `t` on its path.
    pub fn f_bot(&self, t: &Tableau) -> Result<Tableau, ChainError> {
        let class = self.classify(t)?;
        t.incremented(self.bump[class]).ok_or_else(|| ChainError::InvalidStep(t.clone()))
    }

    /// The predecessor of `t` on its path; `None` exactly at initial tableaux.
    pub fn e_bot(&self, t: &Tableau) -> Result<Option<Tableau>, ChainError> {
        self.check_len(t)?;
        if self.is_initial(t) {
            return Ok(None);
        }
        let class = self.classify(t)?;
        let prev = t
            .decremented(self.back[class])
            .ok_or_else(|| ChainError::MissingPredecessor(t.clone()))?;
        if self.f_bot(&prev)? != *t {
            return Err(ChainError::MissingPredecessor(t.clone()));
        }
        Ok(Some(prev))
    }

    /// Number of bottom steps from `t` before the step that increments `a_1`.
    /// Always in `0..n`.
    pub fn phi_bot_local(&self, t: &Tableau) -> Result<u32, ChainError> {
        let mut cur = t.clone();
        for k in 0..self.n as u32 {
            let next = self.f_bot(&cur)?;
            if next.largest() > cur.largest() {
                return Ok(k);
            }
            cur = next;
        }
        Err(ChainError::InvalidSeed(format!(
            "largest entry of {t} is not incremented within {} bottom steps",
            self.n
        )))
    }

    /// `phi_bot_r(t) = n (r - a_1) + phi_bot_local(t)`, the number of bottom
    /// steps that stay inside `B_r(n)`.
    pub fn phi_bot(&self, t: &Tableau, r: u32) -> Result<u64, ChainError> {
        let a1 = t.largest().unwrap_or(0);
        assert!(a1 <= r, "{t} is not in B_{r}");
        Ok(self.n as u64 * (r - a1) as u64 + self.phi_bot_local(t)? as u64)
    }

    /// The path `t_k = t0 + floor((v + k) / n)` up to largest entry `r_cap`,
    /// evaluated from the closed formula.
    pub fn path(&self, t0: &Tableau, r_cap: u32) -> Result<Vec<PathPoint>, ChainError> {
        self.check_len(t0)?;
        if !self.is_initial(t0) {
            return Err(ChainError::NotInitial(t0.clone()));
        }
        let offset = &self.classes[self.classify(t0)?].offset;
        let mut points = Vec::new();
        for k in 0u64.. {
            let t = path_point(t0, offset, k);
            if t.largest().is_some_and(|a1| a1 > r_cap) {
                break;
            }
            points.push(PathPoint { tableau: t, k, initial: t0.clone() });
        }
        Ok(points)
    }
}

/// `t0 + floor((offset + k) / n)` entrywise.
pub fn path_point(t0: &Tableau, offset: &[u32], k: u64) -> Tableau {
    let n = t0.n() as u64;
    let entries: Entries = t0
        .entries()
        .iter()
        .zip(offset)
        .map(|(&a, &v)| a + ((v as u64 + k) / n) as u32)
        .collect();
    Tableau::new(&entries).expect("path formula with a permutation offset keeps entries increasing")
}

/// A tableau together with its position on the path starting at `initial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPoint {
    pub tableau: Tableau,
    pub k: u64,
    pub initial: Tableau,
}

fn atom(term: Term, residue: i64, modulus: i64) -> Atom {
    Atom::congruent(term, residue, modulus)
}

fn class(name: &str, atoms: Vec<Atom>, offset: &[u32]) -> SeedClass {
    SeedClass { name: name.into(), predicate: Predicate::new(atoms), offset: offset.to_vec() }
}

/// The seeds for `n = 2, 3, 4`, with classes in the order (i), (ii), ...
pub fn builtin_seed(n: usize) -> Result<SeedSpec, ChainError> {
    use Term::{Diff, Entry};
    let seed = match n {
        2 => SeedSpec::new(
            2,
            Predicate::new(vec![Atom::equals(Entry(2), 0), atom(Entry(1), 1, 2)]),
            vec![
                class("i", vec![atom(Diff(1, 2), 0, 2)], &[1, 0]),
                class("ii", vec![atom(Diff(1, 2), 1, 2)], &[0, 1]),
            ],
        ),
        3 => {
            // b - c = e2 - e3, a - b = e1 - e2
            let bc = |r| atom(Diff(2, 3), r, 2);
            let ab = |r| atom(Diff(1, 2), r, 3);
            SeedSpec::new(
                3,
                Predicate::new(vec![
                    Atom::equals(Entry(3), 0),
                    atom(Entry(2), 1, 2),
                    Atom::not_congruent(Diff(1, 2), 2, 3),
                ]),
                vec![
                    class("i", vec![bc(1), ab(1)], &[0, 1, 2]),
                    class("ii", vec![bc(1), ab(2)], &[1, 2, 0]),
                    class("iii", vec![bc(0), ab(1)], &[2, 0, 1]),
                    class("iv", vec![bc(1), ab(0)], &[0, 2, 1]),
                    class("v", vec![bc(0), ab(2)], &[1, 0, 2]),
                    class("vi", vec![bc(0), ab(0)], &[2, 1, 0]),
                ],
            )
        }
        4 => {
            // c - d, b - c, a - b parities
            let par = |cd, bc, ab| {
                vec![atom(Diff(3, 4), cd, 2), atom(Diff(2, 3), bc, 2), atom(Diff(1, 2), ab, 2)]
            };
            SeedSpec::new(
                4,
                Predicate::new(vec![
                    Atom::equals(Entry(4), 0),
                    atom(Entry(3), 1, 2),
                    atom(Entry(1), 1, 2),
                ]),
                vec![
                    class("i", par(1, 1, 1), &[0, 1, 2, 3]),
                    class("ii", par(1, 1, 0), &[1, 2, 3, 0]),
                    class("iii", par(1, 0, 1), &[2, 3, 0, 1]),
                    class("iv", par(0, 1, 1), &[3, 0, 1, 2]),
                    class("v", par(1, 0, 0), &[0, 3, 2, 1]),
                    class("vi", par(0, 1, 0), &[1, 0, 3, 2]),
                    class("vii", par(0, 0, 1), &[2, 1, 0, 3]),
                    class("viii", par(0, 0, 0), &[3, 2, 1, 0]),
                ],
            )
        }
        _ => return Err(ChainError::NoBuiltinSeed(n)),
    };
    Ok(seed.expect("builtin seeds are well formed"))
}

/// Checks exhaustively on `B_{r_max}(n)` that the classes partition the
/// tableaux and that the paths partition them too: every tableau is in exactly
/// one class, has at most one bottom preimage (none iff initial), walks back to
/// an initial tableau, and is reproduced by the path formula from there.
pub fn verify_problem1(seed: &SeedSpec, r_max: u32) -> Report {
    let mut report = Report::new(format!("problem1 n={} r_max={r_max}", seed.n()));
    let nodes = enumerate(seed.n(), r_max);
    report.checked = nodes.len() as u64;
    let failures: Vec<Vec<String>> = nodes.par_iter().map(|t| problem1_at(seed, t)).collect();
    report.absorb(failures.into_iter().flatten());
    report
}

fn problem1_at(seed: &SeedSpec, t: &Tableau) -> Vec<String> {
    let mut out = Vec::new();
    if let Err(e) = seed.classify(t) {
        out.push(e.to_string());
        return out;
    }
    let preimages = (0..t.n())
        .filter_map(|pos| t.decremented(pos))
        .filter(|p| seed.f_bot(p).is_ok_and(|q| q == *t))
        .count();
    let initial = seed.is_initial(t);
    if initial && preimages != 0 {
        out.push(format!("initial tableau {t} has a bottom preimage"));
    }
    if !initial && preimages != 1 {
        out.push(format!("{t} has {preimages} bottom preimages"));
    }
    if !out.is_empty() {
        return out;
    }
    let mut cur = t.clone();
    let mut k = 0u64;
    while !seed.is_initial(&cur) {
        match seed.e_bot(&cur) {
            Ok(Some(prev)) => cur = prev,
            Ok(None) => unreachable!("e_bot is None only at initial tableaux"),
            Err(e) => {
                out.push(format!("walking back from {t}: {e}"));
                return out;
            }
        }
        k += 1;
    }
    match seed.classify(&cur) {
        Ok(c) => {
            let expected = path_point(&cur, &seed.classes()[c].offset, k);
            if expected != *t {
                out.push(format!("{t} is step {k} from {cur} but the path formula gives {expected}"));
            }
        }
        Err(e) => out.push(e.to_string()),
    }
    out
}
