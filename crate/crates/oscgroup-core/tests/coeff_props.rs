use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use oscgroup_core::coeff::{parse_rational, Assignment, Coeff, Rat, Ring};
use oscgroup_core::rmatrix::Family;
use proptest::prelude::*;

const VARS: [&str; 5] = ["x", "z", "s", "p", "q"];

fn ring() -> Arc<Ring> {
    Family::A.ring()
}

fn coeff() -> impl Strategy<Value = Coeff> {
    prop::collection::vec((prop::array::uniform5(0u8..3), -6i64..7, 1i64..5), 0..5).prop_map(|terms| {
        let ring = ring();
        let mut acc = Coeff::zero();
        for (e, n, d) in terms {
            let f: Vec<(&str, u8)> = VARS.iter().copied().zip(e).collect();
            let m = ring.monomial(&f).unwrap();
            acc.add_assign_ref(&m.scale(&Rat::new(n.into(), d.into())));
        }
        acc
    })
}

/// x = 2, z = 8, s = 4 keeps `s^2 = xz` exact.
fn exact_point() -> BTreeMap<String, Rat> {
    let r = |n: i64, d: i64| Rat::new(BigInt::from(n), BigInt::from(d));
    [("x", r(2, 1)), ("z", r(8, 1)), ("s", r(4, 1)), ("p", r(-3, 7)), ("q", r(5, 2))]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

fn float_point() -> Assignment {
    let (x, z) = (0.7, 1.9);
    [("x", x), ("z", z), ("s", f64::sqrt(x * z)), ("p", -0.4), ("q", 1.3)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn exact_evaluation_is_a_ring_homomorphism(a in coeff(), b in coeff()) {
        let ring = ring();
        let pt = exact_point();
        let ev = |c: &Coeff| ring.eval_exact(c, &pt).unwrap();
        prop_assert_eq!(ev(&ring.mul(&a, &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
        prop_assert_eq!(ev(&-&a), -ev(&a));
    }

    #[test]
    fn float_evaluation_is_a_ring_homomorphism(a in coeff(), b in coeff()) {
        let ring = ring();
        let pt = float_point();
        let ev = |c: &Coeff| ring.eval(c, &pt).unwrap();
        prop_assert!(close(ev(&ring.mul(&a, &b)), ev(&a) * ev(&b)));
        prop_assert!(close(ev(&(&a - &b)), ev(&a) - ev(&b)));
    }

    #[test]
    fn normalize_is_idempotent(a in coeff(), b in coeff()) {
        let ring = ring();
        let prod = ring.mul(&a, &b);
        prop_assert_eq!(ring.normalize(&prod), prod.clone());
        prop_assert_eq!(ring.normalize(&ring.normalize(&a)), ring.normalize(&a));
    }

    #[test]
    fn difference_with_itself_is_empty(a in coeff()) {
        let d = &a - &a;
        prop_assert!(d.is_zero());
        prop_assert_eq!(d.num_terms(), 0);
    }

    #[test]
    fn root_exponent_stays_below_two(a in coeff(), b in coeff(), k in 1u32..4) {
        let ring = ring();
        let si = ring.index("s").unwrap();
        prop_assert!(ring.mul(&a, &b).degree_in(si) <= 1);
        prop_assert!(ring.pow(&a, k).degree_in(si) <= 1);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in coeff(), b in coeff(), c in coeff()) {
        let ring = ring();
        prop_assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
        prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
    }

    #[test]
    fn rational_literals_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let r = Rat::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&format!("{n}/{d}")), Some(r));
        prop_assert_eq!(parse_rational(&format!("{n}")), Some(Rat::from_integer(n.into())));
    }
}

#[test]
fn decimal_literals_are_exact() {
    let r = |n: i64, d: i64| Rat::new(BigInt::from(n), BigInt::from(d));
    assert_eq!(parse_rational("0.1"), Some(r(1, 10)));
    assert_eq!(parse_rational("-1.25e-3"), Some(r(-1, 800)));
    assert_eq!(parse_rational("3e2"), Some(r(300, 1)));
    assert_eq!(parse_rational("1/0"), None);
    assert_eq!(parse_rational("abc"), None);
}

#[test]
fn square_root_reduction() {
    let ring = ring();
    let s = ring.var("s").unwrap();
    let xz = ring.mul(&ring.var("x").unwrap(), &ring.var("z").unwrap());
    assert_eq!(ring.mul(&s, &s), xz);
    assert_eq!(ring.pow(&s, 3), ring.mul(&xz, &s));
}

#[test]
fn inconsistent_root_assignment_is_rejected() {
    let ring = ring();
    let mut pt = float_point();
    pt.insert("s".into(), 5.0);
    assert!(ring.eval(&ring.var("s").unwrap(), &pt).is_err());
}

#[test]
fn derived_quotients_reduce() {
    let ring = Family::D.ring();
    let v = |n: &str| ring.var(n).unwrap();
    assert_eq!(ring.mul(&v("u1"), &v("q")), ring.mul(&v("rho"), &v("sigma")));
    assert_eq!(ring.mul(&v("u2"), &v("p")), ring.mul(&v("tau"), &v("sigma")));
}
