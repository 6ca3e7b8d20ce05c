//! Centred q-integers, q-binomials and their decompositions into q-integers.
//!
//! Every character here is a Laurent polynomial in `q^(1/2)`. Exponents are
//! stored in half-steps: the key `h` stands for `q^(h/2)`. The centred
//! q-integer `[k]` is `q^(-(k-1)/2) + q^(-(k-3)/2) + ... + q^((k-1)/2)` and the
//! centred q-binomial is `[a][a-1]...[a-b+1] / [b][b-1]...[1]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QCharError {
    #[error("q-integer length must be nonnegative, got {0}")]
    NegativeLength(i64),
    #[error("coefficient overflow in 64-bit arithmetic")]
    Overflow,
    #[error("polynomial is not symmetric: coefficients of q^({0}/2) and q^(-{0}/2) differ")]
    NotSymmetric(i64),
    #[error("not a nonnegative combination of q-integers: coefficient of q^({exponent}/2) went negative")]
    NotUnimodal { exponent: i64 },
}

/// A Laurent polynomial in `q^(1/2)` with nonnegative integer coefficients.
///
/// No zero coefficients are stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CenteredPoly {
    coeffs: BTreeMap<i64, u64>,
}

impl CenteredPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * q^(h/2)`.
    pub fn monomial(h: i64, c: u64) -> Self {
        let mut p = Self::zero();
        if c != 0 {
            p.coeffs.insert(h, c);
        }
        p
    }

    /// The centred q-integer `[len]`; `[0]` is the zero polynomial.
    pub fn q_integer(len: u64) -> Self {
        let len = len as i64;
        let coeffs = (0..len).map(|i| (2 * i - (len - 1), 1)).collect();
        Self { coeffs }
    }

    /// Builds a polynomial from `(h, c)` pairs, summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, u64)>>(terms: I) -> Result<Self, QCharError> {
        let mut p = Self::zero();
        for (h, c) in terms {
            p.add_term(h, c)?;
        }
        Ok(p)
    }

    pub fn coeff(&self, h: i64) -> u64 {
        self.coeffs.get(&h).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.coeffs.iter().map(|(&h, &c)| (h, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, h: i64, c: u64) -> Result<(), QCharError> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.coeffs.entry(h).or_insert(0);
        *slot = slot.checked_add(c).ok_or(QCharError::Overflow)?;
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, QCharError> {
        let mut out = self.clone();
        for (h, c) in other.terms() {
            out.add_term(h, c)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, QCharError> {
        let mut out = Self::zero();
        for (h1, c1) in self.terms() {
            for (h2, c2) in other.terms() {
                let c = c1.checked_mul(c2).ok_or(QCharError::Overflow)?;
                out.add_term(h1 + h2, c)?;
            }
        }
        Ok(out)
    }

    /// Specialisation at `q = 1`: the dimension of the representation.
    pub fn at_one(&self) -> Result<u64, QCharError> {
        self.coeffs
            .values()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or(QCharError::Overflow)
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&h, &c)| self.coeff(-h) == c)
    }

    /// All exponents with nonzero coefficient share one parity.
    pub fn is_parity_pure(&self) -> bool {
        let mut parities = self.coeffs.keys().map(|h| h.rem_euclid(2));
        match parities.next() {
            None => true,
            Some(first) => parities.all(|p| p == first),
        }
    }

    /// Coefficients from the lowest to the highest exponent, including the
    /// zero entries between them (step 2 in half-exponents).
    pub fn coefficient_row(&self) -> Vec<u64> {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo..=hi).step_by(2).map(|h| self.coeff(h)).collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for CenteredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (h, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let exp = if h % 2 == 0 { format!("{}", h / 2) } else { format!("{h}/2") };
            if c == 1 {
                write!(f, "q^({exp})")?;
            } else {
                write!(f, "{c}q^({exp})")?;
            }
        }
        Ok(())
    }
}

/// A multiset of q-integer lengths: the decomposition `sum_i d_i [i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QIntCombo {
    parts: BTreeMap<u64, u64>,
}

impl QIntCombo {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a combination from lengths, one copy per occurrence.
    pub fn from_lengths<I: IntoIterator<Item = u64>>(lengths: I) -> Self {
        let mut combo = Self::new();
        for len in lengths {
            combo.add_part(len, 1);
        }
        combo
    }

    /// Adds `mult` copies of `[len]`. Zero lengths or multiplicities are ignored,
    /// since `[0]` is the zero character.
    pub fn add_part(&mut self, len: u64, mult: u64) {
        if len == 0 || mult == 0 {
            return;
        }
        *self.parts.entry(len).or_insert(0) += mult;
    }

    pub fn multiplicity(&self, len: u64) -> u64 {
        self.parts.get(&len).copied().unwrap_or(0)
    }

    /// `(length, multiplicity)` pairs in increasing length order.
    pub fn parts(&self) -> impl DoubleEndedIterator<Item = (u64, u64)> + '_ {
        self.parts.iter().map(|(&l, &d)| (l, d))
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of constituents, counted with multiplicity.
    pub fn total_multiplicity(&self) -> u64 {
        self.parts.values().sum()
    }

    /// The shifted combination `sum_i d_i [i + j]`.
    pub fn plus(&self, j: u64) -> Self {
        Self {
            parts: self.parts.iter().map(|(&l, &d)| (l + j, d)).collect(),
        }
    }

    pub fn expand(&self) -> Result<CenteredPoly, QCharError> {
        let mut out = CenteredPoly::zero();
        for (len, mult) in self.parts() {
            let width = len as i64;
            for i in 0..width {
                out.add_term(2 * i - (width - 1), mult)?;
            }
        }
        Ok(out)
    }

    /// Dimension `sum_i d_i * i`.
    pub fn at_one(&self) -> Result<u64, QCharError> {
        self.parts()
            .try_fold(0u64, |acc, (l, d)| acc.checked_add(l.checked_mul(d)?))
            .ok_or(QCharError::Overflow)
    }
}

impl Add for &QIntCombo {
    type Output = QIntCombo;

    fn add(self, rhs: &QIntCombo) -> QIntCombo {
        let mut out = self.clone();
        for (l, d) in rhs.parts() {
            out.add_part(l, d);
        }
        out
    }
}

impl fmt::Display for QIntCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (len, mult) in self.parts().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mult == 1 {
                write!(f, "[{len}]")?;
            } else {
                write!(f, "{mult}·[{len}]")?;
            }
        }
        Ok(())
    }
}

/// The centred q-integer `[k]`. Negative lengths are rejected.
pub fn q_int(k: i64) -> Result<CenteredPoly, QCharError> {
    if k < 0 {
        return Err(QCharError::NegativeLength(k));
    }
    Ok(CenteredPoly::q_integer(k as u64))
}

/// The centred Gaussian binomial `[top over bottom]`.
///
/// Returns `1` when `bottom = 0` and the zero polynomial when `top < bottom`.
/// Built row by row from the q-Pascal rule
/// `G(i, k) = G(i-1, k-1) + q^k G(i-1, k)` in ordinary (uncentred) form, so
/// every intermediate coefficient is a coefficient of a smaller binomial.
pub fn q_binom(top: u64, bottom: u64) -> Result<CenteredPoly, QCharError> {
    if top < bottom {
        return Ok(CenteredPoly::zero());
    }
    let b = bottom.min(top - bottom) as usize;
    // rows[k] holds G(i, k) for the current i
    let mut rows: Vec<Vec<u64>> = vec![vec![1]];
    for i in 1..=top as usize {
        let kmax = b.min(i);
        let mut next = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let deg = k * (i - k);
            let mut poly = vec![0u64; deg + 1];
            if k >= 1 {
                for (e, &c) in rows[k - 1].iter().enumerate() {
                    poly[e] = c;
                }
            }
            if k < rows.len() && k < i {
                for (e, &c) in rows[k].iter().enumerate() {
                    let slot = &mut poly[e + k];
                    *slot = slot.checked_add(c).ok_or(QCharError::Overflow)?;
                }
            }
            next.push(poly);
        }
        rows = next;
    }
    let poly = &rows[b];
    let degree = (b * (top as usize - b)) as i64;
    let mut out = CenteredPoly::zero();
    for (e, &c) in poly.iter().enumerate() {
        out.add_term(2 * e as i64 - degree, c)?;
    }
    Ok(out)
}

/// Decomposes a symmetric character into q-integers by repeatedly removing the
/// widest q-integer spanning the remaining support.
pub fn peel(p: &CenteredPoly) -> Result<QIntCombo, QCharError> {
    if let Some((h, _)) = p.terms().find(|&(h, c)| p.coeff(-h) != c) {
        return Err(QCharError::NotSymmetric(h.abs()));
    }
    let mut rest = p.coeffs.clone();
    let mut combo = QIntCombo::new();
    while let Some((&top, &mult)) = rest.iter().next_back() {
        let len = (top + 1) as u64;
        for h in (-top..=top).step_by(2) {
            let c = rest.get(&h).copied().unwrap_or(0);
            if c < mult {
                return Err(QCharError::NotUnimodal { exponent: h });
            }
            if c == mult {
                rest.remove(&h);
            } else {
                rest.insert(h, c - mult);
            }
        }
        combo.add_part(len, mult);
    }
    Ok(combo)
}

/// The plus operator `f_{+j}`.
pub fn plus(f: &QIntCombo, j: u64) -> QIntCombo {
    f.plus(j)
}

/// Outcome of evaluating one of the character recursions at a given `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    pub n: u32,
    pub r: u64,
    pub lhs: CenteredPoly,
    pub rhs: CenteredPoly,
    pub equal: bool,
    pub lhs_peel: QIntCombo,
    pub rhs_peel: QIntCombo,
}

impl RecursionReport {
    fn new(n: u32, r: u64, lhs: CenteredPoly, rhs: CenteredPoly) -> Result<Self, QCharError> {
        let lhs_peel = peel(&lhs)?;
        let rhs_peel = peel(&rhs)?;
        Ok(Self {
            n,
            r,
            equal: lhs == rhs,
            lhs,
            rhs,
            lhs_peel,
            rhs_peel,
        })
    }
}

/// `[r+1 over 2] = ([r over 2])_{+2} + δ_{r odd}·[1]`.
pub fn check_recursion_n2(r: u64) -> Result<RecursionReport, QCharError> {
    let lhs = q_binom(r + 1, 2)?;
    let mut rhs = peel(&q_binom(r, 2)?)?.plus(2);
    if r % 2 == 1 {
        rhs.add_part(1, 1);
    }
    RecursionReport::new(2, r, lhs, rhs.expand()?)
}

/// `[r+1 over 3] = ([r over 3])_{+3} + sum [r-4k-1]` over `k >= 0` with
/// `4k < r - 1 - 2δ_{r odd}`.
pub fn check_recursion_n3(r: u64) -> Result<RecursionReport, QCharError> {
    let lhs = q_binom(r + 1, 3)?;
    let mut rhs = peel(&q_binom(r, 3)?)?.plus(3);
    let bound = r as i64 - 1 - if r % 2 == 1 { 2 } else { 0 };
    let mut k = 0i64;
    while 4 * k < bound {
        rhs.add_part((r as i64 - 4 * k - 1) as u64, 1);
        k += 1;
    }
    RecursionReport::new(3, r, lhs, rhs.expand()?)
}

/// `[r+1 over 4] = ([r over 4])_{+4} + sum_k [r-6k-1-3δ_{r even} over 2]
///   + sum_k ([r-6k-4-3δ_{r odd} over 2])_{+6}`.
///
/// Terms whose top is below 2 vanish.
pub fn check_recursion_n4(r: u64) -> Result<RecursionReport, QCharError> {
    let lhs = q_binom(r + 1, 4)?;
    let even = r.is_multiple_of(2);
    let mut rhs = peel(&q_binom(r, 4)?)?.plus(4).expand()?;
    let first = r as i64 - 1 - if even { 3 } else { 0 };
    let second = r as i64 - 4 - if even { 0 } else { 3 };
    let mut k = 0i64;
    while first - 6 * k >= 2 {
        rhs = rhs.checked_add(&q_binom((first - 6 * k) as u64, 2)?)?;
        k += 1;
    }
    k = 0;
    while second - 6 * k >= 2 {
        let shifted = peel(&q_binom((second - 6 * k) as u64, 2)?)?.plus(6);
        rhs = rhs.checked_add(&shifted.expand()?)?;
        k += 1;
    }
    RecursionReport::new(4, r, lhs, rhs)
}

/// Dispatches to the recursion for `n` in `{2, 3, 4}`.
pub fn check_recursion(n: u32, r: u64) -> Option<Result<RecursionReport, QCharError>> {
    match n {
        2 => Some(check_recursion_n2(r)),
        3 => Some(check_recursion_n3(r)),
        4 => Some(check_recursion_n4(r)),
        _ => None,
    }
}

/// CSV with one row per report: `n,r,equal,lhs,rhs` where the last two
/// columns are the peel decompositions of each side.
pub fn recursion_csv(reports: &[RecursionReport]) -> String {
    let mut out = String::from("n,r,equal,lhs,rhs\n");
    for rep in reports {
        out.push_str(&format!(
            "{},{},{},\"{}\",\"{}\"\n",
            rep.n, rep.r, rep.equal, rep.lhs_peel, rep.rhs_peel
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binomial(a: u64, b: u64) -> u64 {
        if b > a {
            return 0;
        }
        (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
    }

    #[test]
    fn q_int_small_cases() {
        assert_eq!(q_int(1).unwrap(), CenteredPoly::one());
        assert_eq!(
            q_int(2).unwrap(),
            CenteredPoly::from_terms([(-1, 1), (1, 1)]).unwrap()
        );
        let seven = q_int(7).unwrap();
        assert_eq!(seven.terms().map(|(h, _)| h).collect::<Vec<_>>(), vec![-6, -4, -2, 0, 2, 4, 6]);
        assert_eq!(seven.at_one().unwrap(), 7);
        assert!(q_int(0).unwrap().is_zero());
        assert_eq!(q_int(-3), Err(QCharError::NegativeLength(-3)));
    }

    #[test]
    fn q_binom_matches_known_decompositions() {
        let expected = QIntCombo::from_lengths([3, 7]).expand().unwrap();
        assert_eq!(q_binom(5, 2).unwrap(), expected);
        let expected = QIntCombo::from_lengths([1, 5]).expand().unwrap();
        assert_eq!(q_binom(4, 2).unwrap(), expected);
        assert_eq!(q_binom(4, 2).unwrap().at_one().unwrap(), 6);
        for n in 0..8 {
            assert_eq!(q_binom(n, n).unwrap(), CenteredPoly::one());
        }
        assert!(q_binom(2, 3).unwrap().is_zero());
        assert_eq!(q_binom(0, 0).unwrap(), CenteredPoly::one());
    }

    #[test]
    fn q_binom_against_box_enumeration() {
        // rank polynomial of partitions in a 2x2 box: sizes 0,1,2,2,3,4
        let sizes = [0i64, 1, 2, 2, 3, 4];
        let centred = CenteredPoly::from_terms(sizes.iter().map(|s| (2 * s - 4, 1))).unwrap();
        assert_eq!(q_binom(4, 2).unwrap(), centred);
    }

    #[test]
    fn q_binom_overflow_is_reported() {
        assert_eq!(q_binom(200, 100), Err(QCharError::Overflow));
    }

    #[test]
    fn peel_examples() {
        assert_eq!(peel(&q_binom(5, 2).unwrap()).unwrap(), QIntCombo::from_lengths([3, 7]));
        assert_eq!(peel(&q_int(9).unwrap()).unwrap(), QIntCombo::from_lengths([9]));
        let seven_three = peel(&q_binom(7, 3).unwrap()).unwrap();
        assert_eq!(seven_three, QIntCombo::from_lengths([1, 5, 7, 9, 13]));
        assert_eq!(seven_three.at_one().unwrap(), 35);
        assert!(peel(&CenteredPoly::zero()).unwrap().is_empty());
    }

    #[test]
    fn peel_rejects_invalid_characters() {
        let lopsided = CenteredPoly::monomial(1, 1);
        assert_eq!(peel(&lopsided), Err(QCharError::NotSymmetric(1)));
        // q^-2 + q^2 : symmetric but has a hole at q^0
        let hollow = CenteredPoly::from_terms([(-2, 1), (2, 1)]).unwrap();
        assert!(matches!(peel(&hollow), Err(QCharError::NotUnimodal { .. })));
    }

    #[test]
    fn plus_examples() {
        let f = QIntCombo::from_lengths([3, 7]);
        assert_eq!(plus(&f, 2), QIntCombo::from_lengths([5, 9]));
        assert_eq!(plus(&QIntCombo::from_lengths([5]), 4), QIntCombo::from_lengths([9]));
        assert_eq!(plus(&f, 0), f);
    }

    #[test]
    fn display_sorts_by_decreasing_length() {
        let combo = QIntCombo::from_lengths([1, 13, 5, 9, 7]);
        assert_eq!(combo.to_string(), "[13] + [9] + [7] + [5] + [1]");
        let mut doubled = QIntCombo::from_lengths([3]);
        doubled.add_part(3, 1);
        assert_eq!(doubled.to_string(), "2·[3]");
        assert_eq!(QIntCombo::new().to_string(), "0");
    }

    #[test]
    fn recursion_examples() {
        let rep = check_recursion_n2(5).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.rhs_peel, QIntCombo::from_lengths([9, 5, 1]));

        let rep = check_recursion_n3(6).unwrap();
        assert!(rep.equal);
        let mut expected = peel(&q_binom(6, 3).unwrap()).unwrap().plus(3);
        expected.add_part(5, 1);
        expected.add_part(1, 1);
        assert_eq!(rep.rhs_peel, expected);

        let rep = check_recursion_n4(4).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.lhs_peel, QIntCombo::from_lengths([5]));
    }

    #[test]
    fn recursions_hold_up_to_one_hundred() {
        for n in 2..=4u32 {
            for r in n as u64..=100 {
                let rep = check_recursion(n, r).unwrap().unwrap();
                assert!(rep.equal, "n={n} r={r}: {} vs {}", rep.lhs_peel, rep.rhs_peel);
            }
        }
    }

    #[test]
    fn csv_has_one_row_per_report() {
        let reps: Vec<_> = (2..5).map(|r| check_recursion_n2(r).unwrap()).collect();
        let csv = recursion_csv(&reps);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().nth(1).unwrap().starts_with("2,2,true,"));
    }

    proptest! {
        #[test]
        fn peel_expands_back(a in 0u64..40, b in 0u64..6) {
            let p = q_binom(a, b).unwrap();
            prop_assert!(p.is_symmetric());
            prop_assert!(p.is_parity_pure());
            prop_assert_eq!(peel(&p).unwrap().expand().unwrap(), p);
        }

        #[test]
        fn q_binom_is_symmetric_in_bottom(a in 0u64..40, b in 0u64..40) {
            prop_assume!(b <= a);
            prop_assert_eq!(q_binom(a, b).unwrap(), q_binom(a, a - b).unwrap());
        }

        #[test]
        fn q_binom_at_one_is_binomial(a in 0u64..45, b in 0u64..7) {
            prop_assert_eq!(q_binom(a, b).unwrap().at_one().unwrap(), binomial(a, b));
        }

        #[test]
        fn plus_at_one_adds_j_per_constituent(lengths in proptest::collection::vec(1u64..30, 0..8), j in 0u64..10) {
            let f = QIntCombo::from_lengths(lengths);
            let shifted = plus(&f, j).at_one().unwrap();
            prop_assert_eq!(shifted, f.at_one().unwrap() + j * f.total_multiplicity());
            prop_assert_eq!(peel(&f.expand().unwrap()).unwrap(), f);
        }
    }
}
