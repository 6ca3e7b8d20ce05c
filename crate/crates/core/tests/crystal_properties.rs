use proptest::prelude::*;

use scd_core::closed_form;
use scd_core::crystal::{verify_axioms, Crystal};
use scd_core::oracle::{box_partitions, rank_profile};
use scd_core::plethysm::{coefficients, scd, side_condition_mismatches};
use scd_core::qchar::q_binom;
use scd_core::tableaux::{enumerate, psi, psi_inv, twice_wt, Tableau};

fn column(n: usize) -> impl Strategy<Value = Tableau> {
    proptest::collection::btree_set(0u32..60, n).prop_map(|s| {
        let v: Vec<u32> = s.into_iter().collect();
        Tableau::new(&v).unwrap()
    })
}

#[test]
fn gauge_and_bottom_step_match_closed_forms_on_b30() {
    for n in 2..=4 {
        let c = Crystal::new(n).unwrap();
        for t in enumerate(n, 30) {
            assert_eq!(Some(c.gauge(&t).unwrap()), closed_form::gauge(&t), "{t}");
            assert_eq!(c.f_bot(&t).unwrap(), closed_form::f_bot(&t), "{t}");
            let seed = c.seed().unwrap();
            assert_eq!(Some(seed.phi_bot_local(&t).unwrap() as i64), closed_form::phi_bot_local(&t));
        }
    }
}

#[test]
fn one_engine_builds_many_ranges() {
    // one engine, many restrictions, memo shared between them
    let c = Crystal::new(4).unwrap();
    for r in [30, 10, 25, 3] {
        assert!(verify_axioms(&c.build(r).unwrap()).passed());
    }
}

#[test]
fn coefficients_have_the_right_parity_and_dimension() {
    for n in 1..=4usize {
        let c = Crystal::new(n).unwrap();
        for r in n as u32..=30 {
            let g = c.build(r).unwrap();
            let m = r as u64 + 1 - n as u64;
            let coeffs = coefficients(&g);
            let dim: u64 = coeffs.iter().map(|(k, c)| (k + 1) * c).sum();
            assert_eq!(dim, q_binom(r as u64 + 1, n as u64).unwrap().at_one().unwrap());
            for &k in coeffs.keys() {
                assert_eq!(k % 2, (n as u64 * m) % 2, "n={n} r={r} k={k}");
            }
        }
    }
}

#[test]
fn side_conditions_are_compared_not_used() {
    let g = Crystal::new(3).unwrap().build(6).unwrap();
    assert!(!side_condition_mismatches(&g).is_empty());
}

#[test]
fn chain_count_equals_middle_rank() {
    for n in 0..=4u32 {
        for m in 0..=10u32 {
            let fam = scd(n as usize, m).unwrap();
            let prof = rank_profile(n, m).unwrap();
            assert_eq!(fam.chains.len() as u64, prof.counts[(n * m / 2) as usize]);
            let total: usize = fam.chains.iter().map(Vec::len).sum();
            assert_eq!(total, box_partitions(n, m).len());
        }
    }
}

proptest! {
    #[test]
    fn e_inverts_f(n in 1usize..=4, seed_col in any::<u64>()) {
        let c = Crystal::new(n).unwrap();
        let cols = enumerate(n, 20);
        let t = &cols[(seed_col % cols.len() as u64) as usize];
        if let Some(s) = c.f(t).unwrap() {
            prop_assert_eq!(c.e(&s).unwrap(), Some(t.clone()));
            prop_assert_eq!(twice_wt(&s, 40), twice_wt(t, 40) - 2);
        }
        if let Some(p) = c.e(t).unwrap() {
            prop_assert_eq!(c.f(&p).unwrap(), Some(t.clone()));
        }
    }

    #[test]
    fn f_changes_one_entry_by_one(t in (2usize..=4).prop_flat_map(column)) {
        let c = Crystal::new(t.n()).unwrap();
        if let Some(s) = c.f(&t).unwrap() {
            let diffs: Vec<i64> = s.entries().iter().zip(t.entries()).map(|(a, b)| *a as i64 - *b as i64).collect();
            prop_assert_eq!(diffs.iter().sum::<i64>(), 1);
            prop_assert!(diffs.iter().all(|&d| d == 0 || d == 1));
        }
    }

    #[test]
    fn psi_round_trips(t in (0usize..=5).prop_flat_map(column), extra in 0u32..5) {
        let r = t.largest().unwrap_or(0) + extra;
        let lambda = psi(&t, r).unwrap();
        prop_assert_eq!(psi_inv(&lambda), (t.clone(), r));
        prop_assert_eq!(lambda.size() as i64, t.sum() as i64 - (t.n() * t.n().saturating_sub(1) / 2) as i64);
    }
}
