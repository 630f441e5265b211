mod common;

use std::collections::BTreeSet;

use lagrange3_core::arith::{big, is_prime_u64};
use lagrange3_core::curve::Curve;
use lagrange3_core::descent::{
    epsilon_ladder, legendre, quartic_solvable, squarefree_part, torsor_survey, TorsorKind, TorsorSpec, LADDER_DELTAS,
};
use lagrange3_core::padic::{brute_force_rational, solvable_at, Place};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn survey_survivors() {
    let c = Curve::standard();
    let s = torsor_survey(&c, 2).unwrap();
    let expect_c: BTreeSet<_> = [1, 2, 143, 286].into_iter().map(big).collect();
    let expect_cp: BTreeSet<_> = [1, -14351].into_iter().map(big).collect();
    assert_eq!(s.survivors_c, expect_c);
    assert_eq!(s.survivors_c_prime, expect_cp);
    assert_eq!(s.mordell_weil_mod_2(), 4);
    assert_eq!(s.rank(), 1);
}

#[test]
fn ladders_obstruct_every_epsilon() {
    let c = Curve::standard();
    for d in LADDER_DELTAS {
        let cert = epsilon_ladder(&c, &big(d), 2).unwrap();
        assert!(!cert.obstructions.is_empty());
        assert!(cert.all_obstructed(), "delta = {d}");
    }
}

#[test]
fn survivors_are_closed_under_products_mod_squares() {
    let c = Curve::standard();
    let s = torsor_survey(&c, 2).unwrap();
    let primes = [2u64, 5, 11, 13, 443];
    for a in &s.survivors_c {
        for b in &s.survivors_c {
            assert!(s.survivors_c.contains(&squarefree_part(&(a * b), &primes)), "{a} * {b}");
        }
    }
}

#[test]
fn survivors_are_solvable_at_every_prime_up_to_500() {
    let c = Curve::standard();
    let places = std::iter::once(Place::Real).chain((2..=500).filter(|&p| is_prime_u64(p)).map(Place::Prime));
    let places: Vec<Place> = places.collect();
    for d in [1, 2, 143, 286] {
        let spec = TorsorSpec::new(&c, TorsorKind::C, big(d)).unwrap();
        for &pl in &places {
            let r = quartic_solvable(&spec, pl, 2).unwrap();
            assert!(r.solvable, "delta = {d} fails at {pl}");
        }
    }
    for d in [1, -14351] {
        let spec = TorsorSpec::new(&c, TorsorKind::CPrime, big(d)).unwrap();
        for &pl in &places {
            assert!(quartic_solvable(&spec, pl, 2).unwrap().solvable, "C' delta = {d} fails at {pl}");
        }
    }
}

#[test]
fn verdicts_stable_under_extra_precision() {
    let c = Curve::standard();
    let base = torsor_survey(&c, 2).unwrap();
    let deeper = torsor_survey(&c, 4).unwrap();
    assert_eq!(base.locally_solvable_c, deeper.locally_solvable_c);
    assert_eq!(base.locally_solvable_c_prime, deeper.locally_solvable_c_prime);
}

#[test]
fn rational_points_imply_local_solvability() {
    let mut rng = common::rng(21);
    let places = [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7)];
    let mut found = 0;
    for _ in 0..300 {
        let cons = common::random_constraints(&mut rng);
        if brute_force_rational(&cons, 40).is_some() {
            found += 1;
            for pl in places {
                assert!(solvable_at(&cons, pl, 2).unwrap().solvable, "{pl}: {:?}", cons[0].form.coeffs());
            }
        }
    }
    assert!(found > 10, "only {found} forms with rational points");
}

#[test]
fn solver_matches_exhaustive_search() {
    let n = common::padic_oracle(22, 60).unwrap();
    assert!(n > 100, "only {n} conclusive comparisons");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn legendre_is_multiplicative(m in -10_000i64..10_000, n in -10_000i64..10_000, idx in 0usize..8) {
        let p = [3u64, 7, 11, 13, 113, 127, 443, 9973][idx];
        let lm = legendre(&BigInt::from(m), p).unwrap();
        let ln = legendre(&BigInt::from(n), p).unwrap();
        prop_assert_eq!(legendre(&(BigInt::from(m) * n), p).unwrap(), lm * ln);
    }
}
