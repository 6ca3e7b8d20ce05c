//! The glued crystal operator on `B(n)`, its restrictions to `B_r(n)`, and
//! checks of the crystal axioms and of the gluing conditions.
//!
//! `B(n)` is built recursively: `B(0)` is a point, `B(1)` is a single path, and
//! for `n >= 2` the operator is the bottom operator of a seed, except where the
//! gauge `A(t)` is negative; there the top operator acts, which runs the
//! `B(n-2)` operator on the middle entries.

use std::fmt::Write as _;
use std::time::Instant;

use dashmap::DashMap;
use rayon::prelude::*;
use serde_json::json;

use crate::chains::{builtin_seed, ChainError, SeedSpec};
use crate::qchar::{peel, q_binom, CenteredPoly, QCharError, QIntCombo};
use crate::report::Report;
use crate::tableaux::{enumerate, t_down, tableaux, Entries, HalfInt, Tableau, TableauIndex};

const NONE: u32 = u32::MAX;

enum Level {
    Point,
    Line,
    Glued {
        seed: SeedSpec,
        sub: Box<Crystal>,
        // phi of the sub-crystal restricted to B_b(n-2), keyed by (tableau, b)
        phi_memo: DashMap<(Tableau, u32), u32>,
    },
}

/// The unrestricted operator on `B(n)`. Memoised values are shared across all
/// `r`, so one engine can build many restrictions.
pub struct Crystal {
    n: usize,
    level: Level,
}

impl Crystal {
    /// The crystal on `B(n)` from the builtin seeds.
    pub fn new(n: usize) -> Result<Self, ChainError> {
        match n {
            0 => Ok(Self { n, level: Level::Point }),
            1 => Ok(Self { n, level: Level::Line }),
            _ => Self::with_seed(builtin_seed(n)?),
        }
    }

    /// The crystal on `B(n)` whose bottom operator comes from `seed`; the
    /// lower levels use the builtin seeds.
    pub fn with_seed(seed: SeedSpec) -> Result<Self, ChainError> {
        let n = seed.n();
        if n < 2 {
            return Self::new(n);
        }
        let sub = Box::new(Self::new(n - 2)?);
        Ok(Self { n, level: Level::Glued { seed, sub, phi_memo: DashMap::new() } })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The seed driving the bottom operator, for `n >= 2`.
    pub fn seed(&self) -> Option<&SeedSpec> {
        match &self.level {
            Level::Glued { seed, .. } => Some(seed),
            _ => None,
        }
    }

    fn check(&self, t: &Tableau) -> Result<(), ChainError> {
        if t.n() != self.n {
            return Err(ChainError::WrongLength { tableau: t.clone(), expected: self.n, got: t.n() });
        }
        Ok(())
    }

    /// The bottom operator; the `B(1)` step for `n = 1`, nothing for `n = 0`.
    pub fn f_bot(&self, t: &Tableau) -> Result<Option<Tableau>, ChainError> {
        self.check(t)?;
        match &self.level {
            Level::Point => Ok(None),
            Level::Line => Ok(Some(t.translated(1))),
            Level::Glued { seed, .. } => seed.f_bot(t).map(Some),
        }
    }

    /// The top operator: apply the `B(n-2)` operator to `t_down(t)` and put
    /// `a_n` and `a_1` back. Always `None` for `n <= 2`.
    pub fn f_top(&self, t: &Tableau) -> Result<Option<Tableau>, ChainError> {
        self.check(t)?;
        let Level::Glued { sub, .. } = &self.level else {
            return Ok(None);
        };
        if self.n <= 2 {
            return Ok(None);
        }
        let down = t_down(t).expect("n >= 3");
        let Some(moved) = sub.f(&down)? else {
            return Ok(None);
        };
        Ok(reinsert(t, &moved))
    }

    /// The gauge `A(t) = phi_bot_{a_1}(t) - phi_{a_1 - a_n - 2}(t_down) + n a_n`,
    /// independent of `r`. Defined for `n >= 2`.
    pub fn gauge(&self, t: &Tableau) -> Result<i64, ChainError> {
        self.check(t)?;
        let Level::Glued { seed, sub, .. } = &self.level else {
            panic!("the gauge is only defined for n >= 2");
        };
        let local = seed.phi_bot_local(t)? as i64;
        let an = t.smallest().unwrap() as i64;
        let a1 = t.largest().unwrap() as i64;
        let bound = a1 - an - 2;
        let sub_phi = if bound < 0 {
            0
        } else {
            self.sub_phi(sub, &t_down(t).expect("n >= 2"), bound as u32)? as i64
        };
        Ok(local - sub_phi + self.n as i64 * an)
    }

    fn sub_phi(&self, sub: &Crystal, s: &Tableau, bound: u32) -> Result<u32, ChainError> {
        let Level::Glued { phi_memo, .. } = &self.level else { unreachable!() };
        sub.phi_cached(s, bound, phi_memo)
    }

    /// `phi_b(t)`: how many times the operator can be applied to `t` while
    /// staying in `B_b(n)`.
    pub fn phi(&self, t: &Tableau, b: u32) -> Result<u32, ChainError> {
        let memo = DashMap::new();
        self.phi_cached(t, b, &memo)
    }

    fn phi_cached(
        &self,
        t: &Tableau,
        b: u32,
        memo: &DashMap<(Tableau, u32), u32>,
    ) -> Result<u32, ChainError> {
        self.check(t)?;
        if !t.in_range(b) {
            return Ok(0);
        }
        match self.level {
            Level::Point => return Ok(0),
            Level::Line => return Ok(b - t.a(1)),
            Level::Glued { .. } => {}
        }
        let key = (t.clone(), b);
        if let Some(v) = memo.get(&key).map(|v| *v) {
            return Ok(v);
        }
        // walk forward until the chain leaves B_b or hits a known value
        let mut chain = vec![t.clone()];
        let mut tail = 0u32;
        loop {
            let cur = chain.last().unwrap();
            let Some(next) = self.f(cur)? else { break };
            if !next.in_range(b) {
                break;
            }
            if let Some(v) = memo.get(&(next.clone(), b)).map(|v| *v) {
                tail = v + 1;
                break;
            }
            chain.push(next);
        }
        let len = chain.len() as u32;
        for (i, s) in chain.into_iter().enumerate() {
            memo.insert((s, b), tail + len - 1 - i as u32);
        }
        Ok(tail + len - 1)
    }

    /// The glued operator on `B(n)`.
    pub fn f(&self, t: &Tableau) -> Result<Option<Tableau>, ChainError> {
        self.check(t)?;
        match &self.level {
            Level::Point => Ok(None),
            Level::Line => Ok(Some(t.translated(1))),
            Level::Glued { seed, .. } => {
                if self.gauge(t)? < 0 {
                    self.f_top(t)
                } else {
                    seed.f_bot(t).map(Some)
                }
            }
        }
    }

    /// The partial inverse of [`Crystal::f`]. Every step raises a single entry
    /// by one, so the candidates are the single-entry decrements of `t`.
    pub fn e(&self, t: &Tableau) -> Result<Option<Tableau>, ChainError> {
        self.check(t)?;
        for pos in 0..t.n() {
            if let Some(p) = t.decremented(pos) {
                if self.f(&p)?.as_ref() == Some(t) {
                    return Ok(Some(p));
                }
            }
        }
        Ok(None)
    }

    /// Applies `f` restricted to `B_r(n)`.
    pub fn f_r(&self, t: &Tableau, r: u32) -> Result<Option<Tableau>, ChainError> {
        Ok(self.f(t)?.filter(|s| s.in_range(r)))
    }

    /// The crystal graph on `B_r(n)`.
    pub fn build(&self, r: u32) -> Result<CrystalGraph, ChainError> {
        let n = self.n;
        let index = TableauIndex::new(n, r);
        let len = index.len();
        let mut entries = Vec::with_capacity(len * n);
        for t in tableaux(n, r) {
            entries.extend_from_slice(t.entries());
        }
        let node = |i: usize| Tableau::from_entries_unchecked(Entries::from_slice(&entries[i * n..(i + 1) * n]));
        let succ = (0..len)
            .into_par_iter()
            .map(|i| {
                let next = self.f_r(&node(i), r)?;
                Ok(next.map_or(NONE, |s| index.rank(s.entries()).expect("f_r stays in B_r") as u32))
            })
            .collect::<Result<Vec<u32>, ChainError>>()?;
        Ok(CrystalGraph::from_parts(n, r, len, entries, succ))
    }
}

/// Puts `a_n` and `a_1` of `t` around a moved copy of `t_down(t)`; `None` if
/// the column stops being strict.
fn reinsert(t: &Tableau, moved: &Tableau) -> Option<Tableau> {
    let an = t.smallest().unwrap();
    let a1 = t.largest().unwrap();
    let mut entries = Entries::new();
    entries.push(an);
    entries.extend(moved.entries().iter().map(|e| e + an + 1));
    if entries.last().is_some_and(|&b| b >= a1) {
        return None;
    }
    entries.push(a1);
    Some(Tableau::from_entries_unchecked(entries))
}

/// The restriction of the crystal to `B_r(n)`, with nodes in canonical order.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    n: usize,
    r: u32,
    len: usize,
    entries: Vec<u32>,
    succ: Vec<u32>,
    pred: Vec<u32>,
    component: Vec<u32>,
    hw: Vec<u32>,
}

impl CrystalGraph {
    fn from_parts(n: usize, r: u32, len: usize, entries: Vec<u32>, succ: Vec<u32>) -> Self {
        let mut g = Self { n, r, len, entries, succ, pred: vec![], component: vec![], hw: vec![] };
        g.derive();
        g
    }

    fn derive(&mut self) {
        let mut pred = vec![NONE; self.len];
        for (i, &s) in self.succ.iter().enumerate() {
            if s != NONE && pred[s as usize] == NONE {
                pred[s as usize] = i as u32;
            }
        }
        let mut component = vec![NONE; self.len];
        let mut hw = Vec::new();
        for (i, &p) in pred.iter().enumerate() {
            if p != NONE {
                continue;
            }
            let id = hw.len() as u32;
            hw.push(i as u32);
            let mut cur = i as u32;
            while cur != NONE && component[cur as usize] == NONE {
                component[cur as usize] = id;
                cur = self.succ[cur as usize];
            }
        }
        self.pred = pred;
        self.component = component;
        self.hw = hw;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn node(&self, i: usize) -> Tableau {
        Tableau::from_entries_unchecked(Entries::from_slice(&self.entries[i * self.n..(i + 1) * self.n]))
    }

    pub fn nodes(&self) -> impl Iterator<Item = Tableau> + '_ {
        (0..self.len).map(|i| self.node(i))
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        TableauIndex::new(self.n, self.r).rank(t.entries())
    }

    pub fn succ(&self, i: usize) -> Option<usize> {
        (self.succ[i] != NONE).then_some(self.succ[i] as usize)
    }

    pub fn pred(&self, i: usize) -> Option<usize> {
        (self.pred[i] != NONE).then_some(self.pred[i] as usize)
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().filter(|&&s| s != NONE).count()
    }

    /// Twice the weight `wt_r`.
    pub fn twice_wt(&self, i: usize) -> i64 {
        let sum: i64 = self.entries[i * self.n..(i + 1) * self.n].iter().map(|&e| e as i64).sum();
        self.n as i64 * self.r as i64 - 2 * sum
    }

    pub fn wt(&self, i: usize) -> HalfInt {
        HalfInt::from_doubled(self.twice_wt(i))
    }

    pub fn component(&self, i: usize) -> Option<usize> {
        (self.component[i] != NONE).then_some(self.component[i] as usize)
    }

    /// Highest weight: no predecessor.
    pub fn is_hw(&self, i: usize) -> bool {
        self.pred[i] == NONE
    }

    /// Highest-weight nodes in canonical order, one per component.
    pub fn hw_nodes(&self) -> Vec<usize> {
        self.hw.iter().map(|&h| h as usize).collect()
    }

    /// Each component as its path of node indices, starting at the highest
    /// weight node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.hw
            .iter()
            .enumerate()
            .map(|(id, &h)| {
                let mut path = Vec::new();
                let mut cur = h;
                while cur != NONE && self.component[cur as usize] == id as u32 {
                    path.push(cur as usize);
                    cur = self.succ[cur as usize];
                }
                path
            })
            .collect()
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.hw.len()];
        for &c in &self.component {
            if c != NONE {
                sizes[c as usize] += 1;
            }
        }
        sizes
    }

    /// `sum over nodes of q^wt`.
    pub fn weight_polynomial(&self) -> Result<CenteredPoly, QCharError> {
        let mut counts = std::collections::BTreeMap::<i64, u64>::new();
        for i in 0..self.len {
            *counts.entry(self.twice_wt(i)).or_default() += 1;
        }
        CenteredPoly::from_terms(counts)
    }

    /// One q-integer `[2 wt + 1]` per highest-weight node.
    pub fn character(&self) -> QIntCombo {
        QIntCombo::from_lengths(self.hw.iter().map(|&h| (self.twice_wt(h as usize) + 1) as u64))
    }

    /// Drops the arc leaving node `i`; used to exercise the axiom checks.
    pub fn remove_arc(&mut self, i: usize) {
        self.succ[i] = NONE;
        self.derive();
    }

    /// Graphviz rendering. Nodes are labelled `⟨a_n,...,a_1⟩\nwt=w`; with
    /// `group` each component becomes a cluster.
    pub fn to_dot(&self, group: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph crystal_n{}_r{} {{", self.n, self.r);
        let _ = writeln!(out, "  node [shape=box];");
        let line = |out: &mut String, i: usize, indent: &str| {
            let _ = writeln!(out, "{indent}n{i} [label=\"{}\\nwt={}\"];", self.node(i), self.wt(i));
        };
        if group {
            for (id, path) in self.components().iter().enumerate() {
                let _ = writeln!(out, "  subgraph cluster_{id} {{");
                let _ = writeln!(out, "    color=\"/set19/{}\";", id % 9 + 1);
                for &i in path {
                    line(&mut out, i, "    ");
                }
                let _ = writeln!(out, "  }}");
            }
            for i in (0..self.len).filter(|&i| self.component[i] == NONE) {
                line(&mut out, i, "  ");
            }
        } else {
            for i in 0..self.len {
                line(&mut out, i, "  ");
            }
        }
        for i in 0..self.len {
            if let Some(s) = self.succ(i) {
                let _ = writeln!(out, "  n{i} -> n{s};");
            }
        }
        out.push_str("}\n");
        out
    }

    /// `{n, r, nodes: [{entries, wt, succ_index, component, is_hw}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<_> = (0..self.len)
            .map(|i| {
                json!({
                    "entries": &self.entries[i * self.n..(i + 1) * self.n],
                    "wt": self.wt(i),
                    "succ_index": self.succ(i),
                    "component": self.component(i),
                    "is_hw": self.is_hw(i),
                })
            })
            .collect();
        json!({ "n": self.n, "r": self.r, "nodes": nodes })
    }
}

/// Chain lengths along `next`: `out[i]` is the number of steps from `i`
/// before the chain ends. Nodes on a cycle are reported and get 0.
fn chain_lengths(next: &[u32], cycles: &mut Vec<usize>) -> Vec<u32> {
    let len = next.len();
    let mut out = vec![NONE; len];
    let mut on_stack = vec![false; len];
    for start in 0..len {
        if out[start] != NONE {
            continue;
        }
        let mut stack = Vec::new();
        let mut cur = start as u32;
        let mut base;
        loop {
            if cur == NONE {
                base = 0;
                break;
            }
            let c = cur as usize;
            if out[c] != NONE {
                base = out[c] + 1;
                break;
            }
            if on_stack[c] {
                cycles.push(c);
                for &s in &stack {
                    out[s] = 0;
                    on_stack[s] = false;
                }
                stack.clear();
                base = 0;
                break;
            }
            on_stack[c] = true;
            stack.push(c);
            cur = next[c];
        }
        // base is the value of the node on top of the stack
        while let Some(s) = stack.pop() {
            on_stack[s] = false;
            out[s] = base;
            base += 1;
        }
    }
    out
}

/// Checks (C0) injectivity of the arcs, (C2) the weight drop along arcs and
/// (C1) `phi = eps + 2 wt` at every node, plus that every node lies on a path
/// from a highest-weight node.
pub fn verify_axioms(g: &CrystalGraph) -> Report {
    let mut report = Report::new(format!("axioms n={} r={}", g.n, g.r));
    report.checked = g.len as u64;
    let mut preds = vec![NONE; g.len];
    let mut c0 = 0u64;
    for (i, &s) in g.succ.iter().enumerate() {
        if s == NONE {
            continue;
        }
        let s = s as usize;
        if preds[s] != NONE {
            c0 += 1;
            report.fail(format!(
                "C0: {} and {} both map to {}",
                g.node(preds[s] as usize),
                g.node(i),
                g.node(s)
            ));
        } else {
            preds[s] = i as u32;
        }
        if g.twice_wt(s) != g.twice_wt(i) - 2 {
            report.fail(format!(
                "C2: wt({}) = {} but wt({}) = {}",
                g.node(i),
                g.wt(i),
                g.node(s),
                g.wt(s)
            ));
        }
    }
    let mut cycles = Vec::new();
    let phi = chain_lengths(&g.succ, &mut cycles);
    let eps = chain_lengths(&preds, &mut cycles);
    for c in cycles {
        report.fail(format!("{} lies on a cycle", g.node(c)));
    }
    for i in 0..g.len {
        if phi[i] as i64 != eps[i] as i64 + g.twice_wt(i) {
            report.fail(format!(
                "C1: at {} phi = {} but eps + 2wt = {} + {}",
                g.node(i),
                phi[i],
                eps[i],
                g.twice_wt(i)
            ));
        }
    }
    if c0 > 0 {
        report.note("eps is measured along the first predecessor where C0 fails");
    }
    report
}

fn glued_seed(crystal: &Crystal, check: &str) -> Result<(), Report> {
    if crystal.seed().is_none() {
        let mut rep = Report::new(check);
        rep.fail(format!("no gauge on B({})", crystal.n()));
        return Err(rep);
    }
    Ok(())
}

fn step_err(rep: &mut Report, e: ChainError) {
    rep.fail(e.to_string());
}

/// Every highest-weight tableau of `B_{r_max}(n)`, i.e. every tableau on which
/// `e` is undefined, has `A(t) <= 0`. This covers in particular those
/// tableaux on which the bottom predecessor is undefined as well.
pub fn verify_problem2(crystal: &Crystal, r_max: u32) -> Report {
    let check = format!("problem2 n={} r_max={r_max}", crystal.n());
    if let Err(rep) = glued_seed(crystal, &check) {
        return rep;
    }
    let nodes = enumerate(crystal.n(), r_max);
    let failures: Vec<Vec<String>> = nodes
        .par_iter()
        .map(|t| {
            let mut out = Vec::new();
            match crystal.e(t).and_then(|p| Ok((p, crystal.gauge(t)?))) {
                Ok((None, a)) if a > 0 => out.push(format!("e({t}) is undefined but A = {a} > 0")),
                Ok(_) => {}
                Err(e) => out.push(e.to_string()),
            }
            out
        })
        .collect();
    let mut rep = Report::new(check);
    rep.checked = nodes.len() as u64;
    rep.absorb(failures.into_iter().flatten());
    rep
}

/// For every `t` with `A(t) < 0 <= A(f t)`: `A(f t) = 0` and `A(f^k t) > 0`
/// for `k >= 2`, following the chain until it leaves `B_{r_max}(n)`.
pub fn verify_problem3(crystal: &Crystal, r_max: u32) -> Report {
    let check = format!("problem3 n={} r_max={r_max}", crystal.n());
    if let Err(rep) = glued_seed(crystal, &check) {
        return rep;
    }
    let nodes = enumerate(crystal.n(), r_max);
    let results: Vec<Result<(bool, Vec<String>), ChainError>> = nodes
        .par_iter()
        .map(|t| {
            let mut out = Vec::new();
            if crystal.gauge(t)? >= 0 {
                return Ok((false, out));
            }
            let Some(ft) = crystal.f_r(t, r_max)? else { return Ok((false, out)) };
            let a1 = crystal.gauge(&ft)?;
            if a1 < 0 {
                return Ok((false, out));
            }
            if a1 != 0 {
                out.push(format!("A({t}) < 0 but A(f t) = A({ft}) = {a1}"));
            }
            let mut cur = ft;
            let mut k = 1;
            while let Some(next) = crystal.f_r(&cur, r_max)? {
                k += 1;
                let a = crystal.gauge(&next)?;
                if a <= 0 {
                    out.push(format!("A(f^{k} {t}) = A({next}) = {a} is not positive"));
                    break;
                }
                cur = next;
            }
            Ok((true, out))
        })
        .collect();
    let mut rep = Report::new(check);
    rep.checked = nodes.len() as u64;
    let mut sign_changes = 0u64;
    for res in results {
        match res {
            Ok((hit, fails)) => {
                sign_changes += hit as u64;
                rep.absorb(fails);
            }
            Err(e) => step_err(&mut rep, e),
        }
    }
    if sign_changes == 0 {
        rep.note("vacuous: the gauge never changes from negative to nonnegative");
    }
    rep.note(format!("chains followed up to largest entry {r_max}"));
    rep
}

/// `f(t + s) = f(t) + s` and `A(t + s) = A(t)` for every `t` in
/// `B_{r_max}(n)`, where `s` is listed smallest entry first.
pub fn verify_shift(crystal: &Crystal, shift: &[u32], r_max: u32) -> Report {
    let check = format!("shift {shift:?} n={} r_max={r_max}", crystal.n());
    if let Err(rep) = glued_seed(crystal, &check) {
        return rep;
    }
    if shift.len() != crystal.n() || shift.windows(2).any(|w| w[0] > w[1]) {
        let mut rep = Report::new(check);
        rep.fail("shift must have length n and be weakly increasing");
        return rep;
    }
    let nodes = enumerate(crystal.n(), r_max);
    let failures: Vec<Vec<String>> = nodes
        .par_iter()
        .map(|t| {
            let run = || -> Result<Vec<String>, ChainError> {
                let mut out = Vec::new();
                let moved = t.shifted(shift).expect("weakly increasing shifts keep columns strict");
                let lhs = crystal.f(&moved)?;
                let rhs = crystal.f(t)?.map(|s| s.shifted(shift).expect("strict"));
                if lhs != rhs {
                    out.push(format!("f({moved}) = {lhs:?} but f({t}) + s = {rhs:?}"));
                }
                let (a, b) = (crystal.gauge(&moved)?, crystal.gauge(t)?);
                if a != b {
                    out.push(format!("A({moved}) = {a} but A({t}) = {b}"));
                }
                Ok(out)
            };
            run().unwrap_or_else(|e| vec![e.to_string()])
        })
        .collect();
    let mut rep = Report::new(check);
    rep.checked = nodes.len() as u64;
    rep.absorb(failures.into_iter().flatten());
    rep
}

/// Timings and outcome of building one crystal and checking it.
#[derive(Clone, Debug, serde::Serialize)]
pub struct BenchReport {
    pub n: usize,
    pub r: u32,
    pub nodes: usize,
    pub components: usize,
    pub build_secs: f64,
    pub verify_secs: f64,
    pub character_secs: f64,
    pub axioms: Report,
    pub character_matches: bool,
}

impl BenchReport {
    pub fn passed(&self) -> bool {
        self.axioms.passed() && self.character_matches
    }

    pub fn total_secs(&self) -> f64 {
        self.build_secs + self.verify_secs + self.character_secs
    }
}

/// Builds the crystal on `B_r(n)`, checks the axioms, and compares its
/// component sizes with the peel decomposition of `[r+1 over n]`.
pub fn bench(n: usize, r: u32) -> Result<BenchReport, ChainError> {
    let start = Instant::now();
    let g = Crystal::new(n)?.build(r)?;
    let build_secs = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let axioms = verify_axioms(&g);
    let verify_secs = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let sizes = QIntCombo::from_lengths(g.component_sizes().into_iter().map(|s| s as u64));
    let character_matches = q_binom(r as u64 + 1, n as u64)
        .and_then(|q| peel(&q))
        .is_ok_and(|expected| expected == sizes && expected == g.character());
    let character_secs = start.elapsed().as_secs_f64();
    Ok(BenchReport {
        n,
        r,
        nodes: g.len(),
        components: g.hw_nodes().len(),
        build_secs,
        verify_secs,
        character_secs,
        axioms,
        character_matches,
    })
}
