//! Explicit formulas for the bottom operator, `phi_bot` and the gauge when
//! `n = 2, 3, 4`. These are written out case by case and share no code with
//! the seed machinery, so they serve as an independent cross-check.

use crate::tableaux::Tableau;

fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

fn same_parity(x: u32, y: u32) -> bool {
    (x + y).is_multiple_of(2)
}

fn delta(b: bool) -> i64 {
    b as i64
}

/// Entries listed `a_1, a_2, ...` (largest first) as signed integers.
fn abcd(t: &Tableau) -> Vec<i64> {
    t.entries().iter().rev().map(|&e| e as i64).collect()
}

fn bump(t: &Tableau, i: usize) -> Tableau {
    // i is 1-based from the largest entry
    t.incremented(t.n() - i).expect("closed-form bottom step keeps the column strict")
}

/// The bottom operator, or `None` for unsupported `n`.
pub fn f_bot(t: &Tableau) -> Option<Tableau> {
    match t.n() {
        2 => {
            let (a, b) = (t.a(1), t.a(2));
            Some(if same_parity(a, b) { bump(t, 2) } else { bump(t, 1) })
        }
        3 => {
            let v = abcd(t);
            let (a, b, c) = (v[0], v[1], v[2]);
            let ab = (a - b).rem_euclid(3);
            Some(if !odd(b - c) && ab != 2 {
                bump(t, 3)
            } else if odd(b - c) && ab != 1 {
                bump(t, 2)
            } else {
                bump(t, 1)
            })
        }
        4 => {
            let (a, b, c, d) = (t.a(1), t.a(2), t.a(3), t.a(4));
            let p = |x: u32, y: u32| same_parity(x, y);
            Some(if p(a, c) && p(c, d) {
                bump(t, 4)
            } else if p(b, c) && !p(c, d) {
                bump(t, 3)
            } else if p(a, b) && !p(b, c) {
                bump(t, 2)
            } else {
                debug_assert!(!p(a, b) && p(b, d));
                bump(t, 1)
            })
        }
        _ => None,
    }
}

/// `phi_bot_{a_1}(t)`, the number of bottom steps before `a_1` moves.
pub fn phi_bot_local(t: &Tableau) -> Option<i64> {
    match t.n() {
        2 => Some(delta(same_parity(t.a(1), t.a(2)))),
        3 => {
            let v = abcd(t);
            let (a, b, c) = (v[0], v[1], v[2]);
            Some((2 - delta(odd(b - c)) - (a - b).rem_euclid(3)).rem_euclid(3))
        }
        4 => {
            let v = abcd(t);
            let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
            let changes = [odd(a - b), odd(b - c), odd(c - d)];
            let many_changes = changes.iter().filter(|&&x| x).count() >= 2;
            Some(
                (delta(changes[0]) + 2 * delta(changes[1]) - delta(changes[2]) - 1 - delta(many_changes))
                    .rem_euclid(4),
            )
        }
        _ => None,
    }
}

/// The gauge `A(t)`.
pub fn gauge(t: &Tableau) -> Option<i64> {
    let phi = phi_bot_local(t)?;
    let v = abcd(t);
    match t.n() {
        2 => Some(2 * v[1] + phi),
        3 => Some(phi - (v[0] - v[1] - 1) + 3 * v[2]),
        4 => Some(phi - 2 * (v[0] - v[1] - 1) - delta(!odd(v[1] - v[2])) + 4 * v[3]),
        _ => None,
    }
}

/// Whether `t` is a highest-weight tableau, by the explicit description of
/// these sets.
pub fn is_highest_weight(t: &Tableau) -> Option<bool> {
    let v = abcd(t);
    match t.n() {
        2 => Some(v[1] == 0 && odd(v[0])),
        3 => {
            let (a, b, c) = (v[0], v[1], v[2]);
            Some(b == c + 1 && a >= 4 * c + 2 && a != 4 * c + 3)
        }
        4 => {
            let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
            Some(c == d + 1 && odd(b - c) && a > b + 2 * d && a != b + 2 * d + 2)
        }
        _ => None,
    }
}
