//! Highest-weight sets, plethystic coefficients, characters, constituent
//! counts, and the symmetric chain decompositions of `L(n, m)` read off from
//! the crystals.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::chains::ChainError;
use crate::closed_form;
use crate::crystal::{Crystal, CrystalGraph};
use crate::oracle::{box_partitions, middle_rank_count, OracleError};
use crate::qchar::{peel, q_binom, QCharError, QIntCombo};
use crate::report::Report;
use crate::tableaux::{covers, enumerate, psi, BoxPartition, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlethysmError {
    #[error("no closed form for n = {0}")]
    Unsupported(usize),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    QChar(#[from] QCharError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// The explicit description of the highest-weight tableaux for one `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HwDescriptor {
    pub n: usize,
}

impl HwDescriptor {
    pub fn new(n: usize) -> Result<Self, PlethysmError> {
        match n {
            2..=4 => Ok(Self { n }),
            _ => Err(PlethysmError::Unsupported(n)),
        }
    }

    pub fn contains(&self, t: &Tableau) -> bool {
        t.n() == self.n && closed_form::is_highest_weight(t).unwrap_or(false)
    }

    /// Human-readable form of the predicate, entries named `a > b > c > d`.
    pub fn describe(&self) -> &'static str {
        match self.n {
            2 => "b = 0, a odd",
            3 => "b = c + 1, a >= 4c + 2, a != 4c + 3",
            _ => "c = d + 1, b - c odd, a >= b + 2d + 1, a != b + 2d + 2",
        }
    }
}

/// Tableaux of `B_r(n)` matching the explicit highest-weight description, in
/// canonical order.
pub fn hw_closed_form(n: usize, r: u32) -> Result<Vec<Tableau>, PlethysmError> {
    let desc = HwDescriptor::new(n)?;
    Ok(enumerate(n, r).into_iter().filter(|t| desc.contains(t)).collect())
}

/// Highest-weight tableaux of a built crystal, in canonical order.
pub fn highest_weight(g: &CrystalGraph) -> Vec<Tableau> {
    g.hw_nodes().into_iter().map(|i| g.node(i)).collect()
}

/// `k -> multiplicity of Sym^k` with `k = 2 wt` of each highest-weight node.
pub fn coefficients(g: &CrystalGraph) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for i in g.hw_nodes() {
        *out.entry(g.twice_wt(i) as u64).or_default() += 1;
    }
    out
}

/// Multiplicity of `Sym^k C^2` in `Λ^n Sym^r C^2`.
pub fn coefficient(n: usize, r: u32, k: u64) -> Result<u64, PlethysmError> {
    let g = Crystal::new(n)?.build(r)?;
    Ok(coefficients(&g).get(&k).copied().unwrap_or(0))
}

/// The character `sum over highest weights of [2 wt + 1]`.
pub fn character(n: usize, r: u32) -> Result<QIntCombo, PlethysmError> {
    Ok(Crystal::new(n)?.build(r)?.character())
}

/// `n,r,k,coefficient` rows for the given graphs.
pub fn coefficient_csv(graphs: &[CrystalGraph]) -> String {
    let mut out = String::from("n,r,k,coefficient\n");
    for g in graphs {
        for (k, c) in coefficients(g) {
            out.push_str(&format!("{},{},{k},{c}\n", g.n(), g.r()));
        }
    }
    out
}

/// Number of components of the crystal on `B_r(n)` together with the
/// available closed forms and oracle counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstituentReport {
    pub n: usize,
    pub r: u32,
    pub count: u64,
    pub middle_rank: u64,
    /// `floor((r+1)/2)` for n = 2, `floor((2r^3 - 3r^2 + 6r + 27)/72)` for n = 4.
    pub exact_formula: Option<u64>,
    /// `floor((r+1)^2/8)` for n = 3.
    pub floor_formula: Option<u64>,
    /// The n = 3 count as a sum over the character recursion.
    pub recursion_sum: Option<u64>,
    /// The same sum in closed form with ceilings.
    pub recursion_closed: Option<u64>,
}

impl ConstituentReport {
    /// Hard disagreements: the crystal against the oracle, the exact
    /// formulas and the n = 3 sums.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.count != self.middle_rank {
            out.push(format!(
                "n={} r={}: {} components but {} partitions in the middle rank",
                self.n, self.r, self.count, self.middle_rank
            ));
        }
        let named = [
            ("closed formula", self.exact_formula),
            ("recursion sum", self.recursion_sum),
            ("recursion closed form", self.recursion_closed),
        ];
        for (name, value) in named {
            if let Some(v) = value.filter(|&v| v != self.count) {
                out.push(format!("n={} r={}: {name} gives {v}, crystal gives {}", self.n, self.r, self.count));
            }
        }
        out
    }

    /// Known disagreement of `floor((r+1)^2/8)` for n = 3.
    pub fn floor_mismatch(&self) -> Option<String> {
        self.floor_formula.filter(|&v| v != self.count).map(|v| {
            format!("n=3 r={}: floor((r+1)^2/8) = {v} but there are {} constituents", self.r, self.count)
        })
    }
}

fn binom(a: i64, b: i64) -> i64 {
    if b < 0 || a < b {
        return 0;
    }
    (0..b).fold(1i64, |acc, i| acc * (a - i) / (i + 1))
}

/// `(1/3)(C(r+2,3) - sum_{k>=0, 4k < r - 2δ} (r - 4k) - C(r+1,3))`, δ = [r even].
pub fn n3_recursion_sum(r: u32) -> u64 {
    let r = r as i64;
    let bound = r - 2 * (r % 2 == 0) as i64;
    let tail: i64 = (0..).take_while(|&k| 4 * k < bound).map(|k| r - 4 * k).sum();
    let three_x = binom(r + 2, 3) - tail - binom(r + 1, 3);
    assert_eq!(three_x % 3, 0, "not divisible by 3 at r={r}");
    (three_x / 3) as u64
}

/// `r(r+1)/6 - (1/3) c (r + 2 - 2c)` with `c = ceil((r - 2δ)/4)`.
pub fn n3_recursion_closed(r: u32) -> u64 {
    let r = r as i64;
    let x = r - 2 * (r % 2 == 0) as i64;
    let c = x.div_euclid(4) + (x.rem_euclid(4) != 0) as i64;
    // six times the value
    let six = r * (r + 1) - 2 * c * (r + 2 - 2 * c);
    assert_eq!(six % 6, 0, "not an integer at r={r}");
    (six / 6) as u64
}

pub fn n2_constituents_formula(r: u32) -> u64 {
    (r as u64).div_ceil(2)
}

pub fn n3_floor_formula(r: u32) -> u64 {
    (r as u64 + 1).pow(2) / 8
}

pub fn n4_constituents_formula(r: u32) -> u64 {
    let r = r as i64;
    ((2 * r * r * r - 3 * r * r + 6 * r + 27).div_euclid(72)) as u64
}

/// Constituent count of the crystal on `B_r(n)`, `n <= 4`.
pub fn constituents(n: usize, r: u32) -> Result<ConstituentReport, PlethysmError> {
    let g = Crystal::new(n)?.build(r)?;
    constituents_of(&g)
}

pub fn constituents_of(g: &CrystalGraph) -> Result<ConstituentReport, PlethysmError> {
    let (n, r) = (g.n(), g.r());
    let m = (r + 1).checked_sub(n as u32);
    let middle_rank = match m {
        Some(m) => middle_rank_count(n as u32, m)?,
        None => 0,
    };
    let in_range = m.is_some();
    Ok(ConstituentReport {
        n,
        r,
        count: g.hw_nodes().len() as u64,
        middle_rank,
        exact_formula: match n {
            2 => Some(n2_constituents_formula(r)),
            4 if in_range => Some(n4_constituents_formula(r)),
            _ => None,
        },
        floor_formula: (n == 3 && in_range).then(|| n3_floor_formula(r)),
        recursion_sum: (n == 3).then(|| n3_recursion_sum(r)),
        recursion_closed: (n == 3).then(|| n3_recursion_closed(r)),
    })
}

/// A family of chains of partitions in `L(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFamily {
    pub n: u32,
    pub m: u32,
    pub chains: Vec<Vec<BoxPartition>>,
}

impl ChainFamily {
    /// `{n, m, chains: [[[parts...]...]...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let chains: Vec<Vec<&[u32]>> =
            self.chains.iter().map(|c| c.iter().map(|p| p.parts()).collect()).collect();
        json!({ "n": self.n, "m": self.m, "chains": chains })
    }

    /// One chain per line, partitions separated by ` < `.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for chain in &self.chains {
            let line: Vec<String> = chain.iter().map(|p| p.to_string()).collect();
            out.push_str(&line.join(" < "));
            out.push('\n');
        }
        out
    }

    /// `chain,position,rank,partition` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("chain,position,rank,partition\n");
        for (c, chain) in self.chains.iter().enumerate() {
            for (i, p) in chain.iter().enumerate() {
                out.push_str(&format!("{c},{i},{},\"{p}\"\n", p.size()));
            }
        }
        out
    }
}

/// The symmetric chain decomposition of `L(n, m)`: the components of the
/// crystal on `B_{n+m-1}(n)` mapped through `psi`, each listed from its
/// highest-weight node.
pub fn scd(n: usize, m: u32) -> Result<ChainFamily, PlethysmError> {
    scd_with(&Crystal::new(n)?, m)
}

pub fn scd_with(crystal: &Crystal, m: u32) -> Result<ChainFamily, PlethysmError> {
    let n = crystal.n();
    if n + m as usize == 0 {
        return Ok(ChainFamily { n: 0, m: 0, chains: vec![vec![BoxPartition::empty(0, 0)]] });
    }
    let r = n as u32 + m - 1;
    let g = crystal.build(r)?;
    Ok(chains_of(&g))
}

pub fn chains_of(g: &CrystalGraph) -> ChainFamily {
    let (n, r) = (g.n(), g.r());
    let chains = g
        .components()
        .into_iter()
        .map(|path| path.into_iter().map(|i| psi(&g.node(i), r).expect("node in B_r")).collect())
        .collect();
    ChainFamily { n: n as u32, m: r + 1 - n as u32, chains }
}

/// Checks that the chains partition `L(n, m)`, that consecutive elements
/// differ by one box, and that each chain's ranks are symmetric about `nm/2`.
pub fn verify_scd(fam: &ChainFamily) -> Report {
    let (n, m) = (fam.n, fam.m);
    let mut rep = Report::new(format!("scd n={n} m={m}"));
    let all = box_partitions(n, m);
    rep.checked = all.len() as u64;
    let mut seen: HashMap<&[u32], usize> = HashMap::new();
    for (c, chain) in fam.chains.iter().enumerate() {
        if chain.is_empty() {
            rep.fail(format!("chain {c} is empty"));
            continue;
        }
        for p in chain {
            if p.box_width() != n || p.box_height() != m {
                rep.fail(format!("{p} in chain {c} is not an element of L({n},{m})"));
            }
            if let Some(prev) = seen.insert(p.parts(), c) {
                rep.fail(format!("{p} lies in chains {prev} and {c}"));
            }
        }
        for w in chain.windows(2) {
            if !covers(&w[1], &w[0]) {
                rep.fail(format!("chain {c}: {} does not cover {}", w[1], w[0]));
            }
        }
        let lo = chain.first().unwrap().size();
        let hi = chain.last().unwrap().size();
        if lo + hi != n * m {
            rep.fail(format!("chain {c} runs over ranks {lo}..{hi}, not symmetric about {n}*{m}/2"));
        }
    }
    for p in &all {
        if !seen.contains_key(p.parts()) {
            rep.fail(format!("{p} lies in no chain"));
        }
    }
    rep
}

/// Differences between the computed highest-weight set of `g` and the
/// explicit description.
pub fn hw_mismatches(g: &CrystalGraph) -> Result<Vec<String>, PlethysmError> {
    let computed: BTreeSet<Tableau> = highest_weight(g).into_iter().collect();
    let printed: BTreeSet<Tableau> = hw_closed_form(g.n(), g.r())?.into_iter().collect();
    let r = g.r();
    let mut out = Vec::new();
    for t in computed.difference(&printed) {
        out.push(format!("r={r}: {t} is highest weight but not in the closed form"));
    }
    for t in printed.difference(&computed) {
        out.push(format!("r={r}: {t} is in the closed form but not highest weight"));
    }
    Ok(out)
}

/// The linear form the printed coefficient formulas attach to a
/// highest-weight tableau (`a + 2b`, `3a + 2b + c`, `4a + 3b + 2c + d`).
pub fn printed_linear_form(t: &Tableau) -> Option<u64> {
    let w: &[u64] = match t.n() {
        2 => &[1, 2],
        3 => &[3, 2, 1],
        4 => &[4, 3, 2, 1],
        _ => return None,
    };
    Some((1..=t.n()).map(|i| w[i - 1] * t.a(i) as u64).sum())
}

/// Compares the coefficients (indexed by `2 wt`) with the counts given by
/// the printed side conditions; returns one line per mismatching `(r, k)`.
pub fn side_condition_mismatches(g: &CrystalGraph) -> Vec<String> {
    let (n, r) = (g.n(), g.r());
    let ours = coefficients(g);
    let mut printed: BTreeMap<u64, u64> = BTreeMap::new();
    for t in highest_weight(g) {
        if let Some(k) = printed_linear_form(&t) {
            *printed.entry(k).or_default() += 1;
        }
    }
    let keys: BTreeSet<u64> = ours.keys().chain(printed.keys()).copied().collect();
    let mut out = Vec::new();
    for k in keys {
        let (a, b) = (ours.get(&k).copied().unwrap_or(0), printed.get(&k).copied().unwrap_or(0));
        if a != b {
            out.push(format!("n={n} r={r} k={k}: multiplicity {a}, side condition counts {b}"));
        }
    }
    if n == 2 {
        // the printed value delta(k odd) delta(k <= r) k
        for k in 0..=2 * r as u64 {
            let value = if k % 2 == 1 && k <= r as u64 { k } else { 0 };
            let a = ours.get(&k).copied().unwrap_or(0);
            if value != a {
                out.push(format!("n=2 r={r} k={k}: multiplicity {a}, printed value {value}"));
            }
        }
    }
    out
}

/// Every claim about characters, highest weights and constituents for one
/// `n` and all `r <= r_max`. Mismatches with the explicit formulas that are
/// known to be misprinted come out as warnings, everything else as failures.
pub fn verify_claims(n: usize, r_max: u32) -> Result<Report, PlethysmError> {
    let crystal = Crystal::new(n)?;
    let mut rep = Report::new(format!("claims n={n} r_max={r_max}"));
    let mut floor_misses = Vec::new();
    let mut side_misses = Vec::new();
    for r in n.saturating_sub(1) as u32..=r_max {
        let g = crystal.build(r)?;
        rep.checked += g.len() as u64;
        let q = q_binom(r as u64 + 1, n as u64)?;
        if g.weight_polynomial()? != q {
            rep.fail(format!("r={r}: weights of the crystal differ from the q-binomial"));
        }
        let expected = peel(&q)?;
        if g.character() != expected {
            rep.fail(format!("r={r}: character {} but the q-binomial peels to {expected}", g.character()));
        }
        let cons = constituents_of(&g)?;
        rep.absorb(cons.failures());
        floor_misses.extend(cons.floor_mismatch());
        if (2..=4).contains(&n) {
            rep.absorb(hw_mismatches(&g)?);
            side_misses.extend(side_condition_mismatches(&g));
        }
    }
    if !floor_misses.is_empty() {
        rep.warn(format!(
            "floor((r+1)^2/8) disagrees with the constituent count at {} value(s) of r; first: {}",
            floor_misses.len(),
            floor_misses[0]
        ));
    }
    if !side_misses.is_empty() {
        rep.warn(format!(
            "printed coefficient side conditions disagree with k = 2 wt in {} case(s); first: {}",
            side_misses.len(),
            side_misses[0]
        ));
    }
    Ok(rep)
}
