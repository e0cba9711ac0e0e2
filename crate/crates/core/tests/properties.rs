use num_bigint::BigInt;
use proptest::prelude::*;

use tameroot::arith::{gcd, mult_order};
use tameroot::corpus::{evaluate, CurveRecord, ResultRecord};
use tameroot::curve::{global_root_number, GlobalOptions, HyperellipticCurve};
use tameroot::galois_rep::{analyze, LocalAnalysis};
use tameroot::padic::{splitting_data, FrobeniusLift, SplitOptions};
use tameroot::poly::{from_i64, mul};
use tameroot::repcalc::irreducibles;
use tameroot::rootnum::{jacobi, local_root_number, tilde_phi, w_qe, Sign};
use tameroot::twist::{quadratic_twist_data, twist_exponent, twisted_local, TwistKind};

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// lead * prod (x - r_i) with roots clustered p-adically.
fn clustered_poly() -> impl Strategy<Value = (Vec<BigInt>, u64)> {
    (
        0..PRIMES.len(),
        3usize..=6,
        prop::collection::vec((0i64..3, 0u32..3, -2i64..=2), 6),
        -2i64..=2,
    )
        .prop_map(|(pi, n, roots, lead_pow)| {
            let p = PRIMES[pi];
            let mut f = from_i64(&[if lead_pow > 0 {
                (p as i64).pow(lead_pow as u32)
            } else {
                1
            }]);
            let mut used = Vec::new();
            for &(a, k, b) in roots.iter().take(n) {
                let mut r = a + (p as i64).pow(k) * b;
                while used.contains(&r) {
                    r += (p as i64).pow(3);
                }
                used.push(r);
                f = mul(&f, &from_i64(&[-r, 1]));
            }
            (f, p)
        })
}

fn dense_poly() -> impl Strategy<Value = (Vec<BigInt>, u64)> {
    (
        0..PRIMES.len(),
        prop::collection::vec(-6i64..=6, 4..=6),
        1i64..=3,
    )
        .prop_map(|(pi, mut c, lead)| {
            c.push(lead);
            (from_i64(&c), PRIMES[pi])
        })
}

fn any_poly() -> impl Strategy<Value = (Vec<BigInt>, u64)> {
    prop_oneof![clustered_poly(), dense_poly()]
}

fn local(f: &[BigInt], p: u64, opts: SplitOptions) -> Option<LocalAnalysis> {
    analyze(f, p, opts).ok()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn jacobi_is_multiplicative(a in -500i64..500, b in -500i64..500, m in 0u64..200, n in 0u64..200) {
        let (m, n) = (2 * m + 1, 2 * n + 1);
        prop_assert_eq!(jacobi(a * b, n), jacobi(a, n) * jacobi(b, n));
        prop_assert_eq!(jacobi(a, m * n), jacobi(a, m) * jacobi(a, n));
    }

    #[test]
    fn w_qe_is_periodic(q in 1u64..400, e in 1u64..40, k in 1u64..5) {
        let q = 2 * q + 1;
        prop_assume!(gcd(q, e) == 1);
        prop_assert_eq!(w_qe(q, e), w_qe(q + 8 * e * k, e));
    }

    #[test]
    fn irreducible_dimensions_fill_the_group(e in 1u64..13, q in 1u64..13, k in 1u64..3) {
        prop_assume!(gcd(q, e) == 1);
        let n = mult_order(q % e.max(1), e) * k;
        let total: u64 = irreducibles(e, n, q).iter().map(|r| (r.dim() * r.dim()) as u64).sum();
        prop_assert_eq!(total, e * n);
    }

    #[test]
    fn valuations_are_ultrametric_and_galois_stable((f, p) in any_poly()) {
        let Ok(rs) = splitting_data(&f, p, SplitOptions::default()) else { return Ok(()) };
        let n = rs.degree();
        for i in 0..n {
            for j in 0..n {
                if i == j { continue; }
                prop_assert_eq!(rs.val(i, j), rs.val(j, i));
                prop_assert_eq!(rs.val(rs.iota_perm[i], rs.iota_perm[j]), rs.val(i, j));
                prop_assert_eq!(rs.val(rs.frob_perm[i], rs.frob_perm[j]), rs.val(i, j));
                for k in 0..n {
                    if k == i || k == j { continue; }
                    prop_assert!(rs.val(i, k) >= rs.val(i, j).min(rs.val(j, k)));
                }
            }
        }
    }

    #[test]
    fn extra_precision_changes_nothing((f, p) in any_poly()) {
        let Some(a) = local(&f, p, SplitOptions::default()) else { return Ok(()) };
        let b = local(&f, p, SplitOptions { precision: Some(a.precision + 4), ..Default::default() }).unwrap();
        prop_assert_eq!(&a.rep, &b.rep);
        prop_assert_eq!(a.picture.depths(), b.picture.depths());
    }

    #[test]
    fn frobenius_lift_changes_nothing((f, p) in any_poly()) {
        let Some(a) = local(&f, p, SplitOptions::default()) else { return Ok(()) };
        let b = local(&f, p, SplitOptions { lift: FrobeniusLift::ShiftPi, ..Default::default() }).unwrap();
        prop_assert_eq!(a.rep, b.rep);
    }

    #[test]
    fn local_structure((f, p) in any_poly()) {
        let Some(a) = local(&f, p, SplitOptions::default()) else { return Ok(()) };
        let d = &a.rep;
        prop_assert_eq!(d.h1_dimension(), 2 * d.g);
        prop_assert_eq!(d.m_t % 2, (d.n3 + d.n4) % 2);
        prop_assert_eq!(d.t1, d.n1);
        prop_assert_eq!(d.n1 + d.n2 + d.n3 + d.n4, d.dim_t);
        let w = local_root_number(d);
        prop_assert_eq!(w.value, w.breakdown.iter().map(|(_, s)| *s).product::<Sign>());
    }

    #[test]
    fn trivial_twist_preserves_local_root_number((f, p) in any_poly()) {
        let Some(a) = local(&f, p, SplitOptions::default()) else { return Ok(()) };
        let t = quadratic_twist_data(TwistKind::Trivial, &a.rep).unwrap();
        let w = local_root_number(&a.rep).value;
        prop_assert_eq!(twisted_local(&a.rep, a.rep.g, &t, w), w);
    }

    #[test]
    fn even_dual_blocks_do_not_contribute((f, p) in any_poly()) {
        let Some(a) = local(&f, p, SplitOptions::default()) else { return Ok(()) };
        let d = &a.rep;
        for kind in [TwistKind::Unramified, TwistKind::Ramified1, TwistKind::Ramified2] {
            let t = quadratic_twist_data(kind, d).unwrap();
            let mut reduced = d.clone();
            for &e in d.m.keys() {
                let f = mult_order(d.q % e.max(1), e);
                if e > 2 && (tilde_phi(e) / f) % 2 == 0 && t.ip_ef.get(&e).copied().unwrap_or(0) % 2 == 0 {
                    reduced.m.remove(&e);
                }
            }
            prop_assert_eq!(twist_exponent(d, &t) % 2, twist_exponent(&reduced, &t) % 2);
        }
    }
}

fn odd_curve() -> impl Strategy<Value = HyperellipticCurve> {
    prop::collection::vec(-4i64..=4, 5..=6)
        .prop_map(|mut c| {
            c.push(1);
            c
        })
        .prop_filter_map("squarefree", |c| HyperellipticCurve::from_i64(&c).ok())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn global_root_number_is_shift_invariant(c in odd_curve(), a in -2i64..=2) {
        let opts = GlobalOptions { good_at_2: true, ..Default::default() };
        let Ok(base) = global_root_number(&c, &opts) else { return Ok(()) };
        let shifted = global_root_number(&c.shifted(a), &opts).unwrap();
        prop_assert_eq!(base.value, shifted.value);
    }

    #[test]
    fn result_records_round_trip_through_json(c in odd_curve()) {
        let rec = CurveRecord { coeffs: c.coeffs.clone(), label: None, conductor: None, expected: None };
        let r = evaluate(&rec, &GlobalOptions { good_at_2: true, ..Default::default() });
        let text = serde_json::to_string(&r).unwrap();
        let back: ResultRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r);
    }
}
