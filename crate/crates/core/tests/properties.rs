//! Randomized invariants on small ideals (at most 4 variables).

mod common;

use mmlab::parse::{parse_polynomial_list, render_ideal};
use mmlab::{parse_polynomial, FieldSpec, Ideal, MonomialOrder, Polynomial, Ring, VarSet, BaseOrder};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Terms = Vec<(Vec<u16>, i64)>;

fn terms(nvars: usize, max_terms: usize, max_exp: u16) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -4i64..=4), 1..=max_terms)
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::prime(7).unwrap()), Just(FieldSpec::prime(32003).unwrap())]
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::GrevLex),
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::Block {
            eliminate: VarSet::from_indices([0]),
            inner: BaseOrder::GrevLex
        }),
    ]
}

fn build(ring: &Ring, t: &Terms) -> Polynomial {
    common::poly_from(ring, t)
}

/// Nonzero generators; all-zero draws fall back to `x`.
fn ideal(ring: &Ring, gens: &[Terms]) -> Ideal {
    let mut ps: Vec<Polynomial> = gens.iter().map(|t| build(ring, t)).filter(|p| !p.is_zero()).collect();
    if ps.is_empty() {
        ps.push(ring.var("x").unwrap());
    }
    Ideal::new(ring, ps).unwrap()
}

/// Terms of total degree at most `deg`, as lists of variable indices.
fn low_degree(max_terms: usize, deg: usize) -> impl Strategy<Value = Terms> {
    let term = (prop::collection::vec(0..4usize, 0..=deg), -4i64..=4).prop_map(|(vars, c)| {
        let mut e = vec![0u16; 4];
        for v in vars {
            e[v] += 1;
        }
        (e, c)
    });
    prop::collection::vec(term, 1..=max_terms)
}

fn gens(n: usize) -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(low_degree(3, 3), 1..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_laws(f in field(), a in terms(4, 4, 3), b in terms(4, 4, 3), c in terms(4, 4, 3)) {
        let ring = common::small_ring(f);
        let (a, b, c) = (build(&ring, &a), build(&ring, &b), build(&ring, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.pow(3), &(&a * &a) * &a);
    }

    #[test]
    fn parse_render_round_trip(f in field(), ts in prop::collection::vec(terms(4, 5, 4), 1..4)) {
        let ring = common::small_ring(f);
        let ps: Vec<Polynomial> = ts.iter().map(|t| build(&ring, t)).collect();
        for p in &ps {
            let back = parse_polynomial(&p.render(), &ring).unwrap();
            prop_assert_eq!(&back, p);
        }
        prop_assert_eq!(parse_polynomial_list(&render_ideal(&ps), &ring).unwrap(), ps);
    }

    #[test]
    fn division_reexpands(f in field(), ord in order(), g in terms(4, 6, 4), ds in gens(3)) {
        let ring = common::small_ring(f);
        let divisors: Vec<Polynomial> = ds.iter().map(|t| build(&ring, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!divisors.is_empty());
        common::division_identity(&build(&ring, &g), &divisors, ord).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn bases_satisfy_criterion_and_are_canonical(f in field(), ord in order(), gs in gens(3), seed in any::<u64>()) {
        let ring = common::small_ring(f);
        let i = ideal(&ring, &gs);
        let gb = i.groebner(ord).unwrap();
        common::s_criterion(&gb).map_err(TestCaseError::fail)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::canonical(&mut rng, i.gens(), ord).map_err(TestCaseError::fail)?;
        for g in i.gens() {
            prop_assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn dimension_is_order_independent(f in field(), gs in gens(3)) {
        let ring = common::small_ring(f);
        common::dimension_agrees(&ideal(&ring, &gs)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn radical_membership_is_consistent(f in field(), gs in gens(2), p in low_degree(2, 2), k in 1u32..4) {
        let ring = common::small_ring(f);
        let p = build(&ring, &p);
        prop_assume!(!p.is_zero());
        let i = ideal(&ring, &gs);
        common::rabinowitsch(&i, &p).map_err(TestCaseError::fail)?;
        // p^k is a member of (p^k, ...), so p lies in its radical
        let mut with_power = i.gens().to_vec();
        with_power.push(p.pow(k));
        let j = Ideal::new(&ring, with_power).unwrap();
        prop_assert!(common::rabinowitsch(&j, &p).map_err(TestCaseError::fail)? >= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // each case checks 100 sampled polynomials
    #[test]
    fn intersection_and_colon_memberships(f in field(), a in gens(2), b in gens(2), p in low_degree(2, 2), seed in any::<u64>()) {
        let ring = common::small_ring(f);
        let (a, b) = (ideal(&ring, &a), ideal(&ring, &b));
        let p = build(&ring, &p);
        prop_assume!(!p.is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = common::samples(&mut rng, &a, &b, 100);
        common::intersect_colon(&a, &b, &p, &samples).map_err(TestCaseError::fail)?;
    }
}
