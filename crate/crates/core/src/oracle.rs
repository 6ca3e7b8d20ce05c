//! Brute-force ground truth for the Young lattice `L(n, m)`: rank counts by
//! dynamic programming over partitions in a box and explicit enumeration.
//! The counts never go through the q-character or crystal code; only
//! [`cross_check_character`] compares them with those.

use serde::Serialize;
use thiserror::Error;

use crate::plethysm::character;
use crate::qchar::{peel, q_binom, CenteredPoly};
use crate::report::Report;
use crate::tableaux::BoxPartition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("partition count overflows 64 bits for the {0} x {1} box")]
    Overflow(u32, u32),
}

/// `counts[s]` is the number of partitions of `s` fitting in the box with
/// parts at most `n` and at most `m` parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub n: u32,
    pub m: u32,
    pub counts: Vec<u64>,
}

impl RankProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.counts.iter().eq(self.counts.iter().rev())
    }

    pub fn is_unimodal(&self) -> bool {
        let peak = (0..self.counts.len()).max_by_key(|&i| (self.counts[i], usize::MAX - i)).unwrap_or(0);
        self.counts[..=peak].windows(2).all(|w| w[0] <= w[1])
            && self.counts[peak..].windows(2).all(|w| w[0] >= w[1])
    }

    /// `(h, count)` with `h = 2s - nm`, the rank recentred at the middle and
    /// doubled.
    pub fn centred(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        let nm = self.n as i64 * self.m as i64;
        self.counts.iter().enumerate().map(move |(s, &c)| (2 * s as i64 - nm, c))
    }
}

/// Rank counts of `L(n, m)` from `p(i, j, s) = p(i - 1, j, s) + p(i, j - 1, s - i)`,
/// splitting on whether a part of the maximal size `i` occurs.
pub fn rank_profile(n: u32, m: u32) -> Result<RankProfile, OracleError> {
    let (n_us, m_us) = (n as usize, m as usize);
    // table[j] = counts for the current part bound i and at most j parts
    let mut table: Vec<Vec<u64>> = vec![vec![1]; m_us + 1];
    for i in 1..=n_us {
        let mut next: Vec<Vec<u64>> = Vec::with_capacity(m_us + 1);
        next.push(vec![1]);
        for j in 1..=m_us {
            let mut row = vec![0u64; i * j + 1];
            for (s, &c) in table[j].iter().enumerate() {
                row[s] = c;
            }
            for (s, &c) in next[j - 1].iter().enumerate() {
                row[s + i] = row[s + i].checked_add(c).ok_or(OracleError::Overflow(n, m))?;
            }
            next.push(row);
        }
        table = next;
    }
    Ok(RankProfile { n, m, counts: table.swap_remove(m_us) })
}

/// Number of partitions of `floor(nm / 2)` in the box.
pub fn middle_rank_count(n: u32, m: u32) -> Result<u64, OracleError> {
    let profile = rank_profile(n, m)?;
    Ok(profile.counts[(n as usize * m as usize) / 2])
}

/// Every partition of `L(n, m)`, by recursion on the next part.
pub fn box_partitions(n: u32, m: u32) -> Vec<BoxPartition> {
    fn go(max_part: u32, slots: u32, prefix: &mut Vec<u32>, n: u32, m: u32, out: &mut Vec<BoxPartition>) {
        out.push(BoxPartition::new(prefix.clone(), n, m).expect("fits by construction"));
        if slots == 0 {
            return;
        }
        for part in 1..=max_part {
            prefix.push(part);
            go(part, slots - 1, prefix, n, m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, m, &mut Vec::new(), n, m, &mut out);
    out
}

/// Compares the rank polynomial of `L(n, r + 1 - n)`, recentred, with the
/// q-binomial `[r+1 over n]`, and its peel decomposition with the character
/// read off the crystal on `B_r(n)`.
pub fn cross_check_character(n: usize, r: u32) -> Report {
    let mut rep = Report::new(format!("character cross-check n={n} r={r}"));
    let Some(m) = (r + 1).checked_sub(n as u32) else {
        rep.note("B_r(n) is empty");
        return rep;
    };
    let result = (|| -> Result<(), String> {
        let profile = rank_profile(n as u32, m).map_err(|e| e.to_string())?;
        rep.checked = profile.total();
        let ranks = CenteredPoly::from_terms(profile.centred()).map_err(|e| e.to_string())?;
        let q = q_binom(r as u64 + 1, n as u64).map_err(|e| e.to_string())?;
        if ranks != q {
            rep.fail(format!("rank polynomial of L({n},{m}) differs from the q-binomial"));
        }
        let peeled = peel(&ranks).map_err(|e| e.to_string())?;
        let ours = character(n, r).map_err(|e| e.to_string())?;
        if peeled != ours {
            rep.fail(format!("rank polynomial peels to {peeled}, crystal character is {ours}"));
        }
        Ok(())
    })();
    if let Err(e) = result {
        rep.fail(e);
    }
    rep
}
