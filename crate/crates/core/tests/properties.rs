use std::sync::Arc;

use proptest::prelude::*;

use rdpd_core::catalog::Catalog;
use rdpd_core::criteria::{invertible_summand, length_formula, theta_free, Status};
use rdpd_core::ideals::{
    bracket_ideal_power, contains_with, jacobian_ideal, local_length_with, HypersurfaceGerm,
    IdealPresentation,
};
use rdpd_core::{
    complete_basis_with, parse_poly, EngineConfig, Length, Monomial, MonomialOrder, Polynomial,
    PrimeChar, Ring,
};

type Terms = Vec<([u32; 3], i64)>;

fn ring(p: u32, order: MonomialOrder) -> Arc<Ring> {
    Ring::xyz(PrimeChar::new(p).unwrap(), order)
}

fn build(ring: &Arc<Ring>, terms: &Terms) -> Polynomial {
    Polynomial::from_terms(
        ring,
        terms
            .iter()
            .map(|(e, c)| (Monomial::from_exponents(e).unwrap(), *c)),
    )
}

fn terms(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        ([0..=max_exp, 0..=max_exp, 0..=max_exp], -20i64..20),
        0..=max_terms,
    )
}

/// Terms of total degree exactly `d`, for homogeneous generators.
fn homogeneous(d: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(((0..=d, 0..=d), 1i64..20), 1..=max_terms).prop_map(move |v| {
        v.into_iter()
            .map(|((a, b), c)| {
                let a = a.min(d);
                let b = b.min(d - a);
                ([a, b, d - a - b], c)
            })
            .collect()
    })
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop::sample::select(vec![
        MonomialOrder::GlobalDegRevLex,
        MonomialOrder::LocalNegDegRevLex,
    ])
}

fn cfg() -> EngineConfig {
    EngineConfig {
        step_cap: 100_000,
        term_cap: 5_000_000,
        ..EngineConfig::default()
    }
}

/// Random generators; local ideals usually get pure powers appended.
fn generators() -> impl Strategy<Value = (u32, MonomialOrder, Vec<Terms>, Option<[u16; 3]>)> {
    (
        prime(),
        order(),
        prop::collection::vec(terms(4, 3), 1..=3),
        prop::option::weighted(0.75, [2u16..=6, 2..=6, 2..=6]),
    )
}

fn build_ideal(
    p: u32,
    ord: MonomialOrder,
    gens: &[Terms],
    powers: Option<[u16; 3]>,
) -> (Arc<Ring>, Vec<Polynomial>) {
    let r = ring(p, ord);
    let mut out: Vec<Polynomial> = gens.iter().map(|g| build(&r, g)).collect();
    if let (true, Some(powers)) = (ord.is_local(), powers) {
        for (i, &e) in powers.iter().enumerate() {
            out.push(Polynomial::monomial(&r, Monomial::var(i, e), 1));
        }
    }
    (r, out)
}

/// A germ with `f(0) = 0`, built from terms of degree at least two.
fn germ_terms() -> impl Strategy<Value = Terms> {
    terms(5, 4).prop_map(|v| {
        v.into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() >= 2)
            .collect()
    })
}

fn germ(p: u32, t: &Terms) -> Option<HypersurfaceGerm> {
    let f = build(&ring(p, MonomialOrder::GlobalDegRevLex), t);
    HypersurfaceGerm::new(f).ok()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn s_pairs_reduce_to_zero((p, ord, gens, powers) in generators()) {
        let (_, gens) = build_ideal(p, ord, &gens, powers);
        let cfg = cfg();
        let residues = complete_basis_with(&gens, ord, &cfg).and_then(|b| b.s_pair_residues_with(&cfg));
        match residues {
            Ok(residues) => {
                for r in residues {
                    prop_assert!(r.is_zero(), "residue {}", r);
                }
            }
            Err(e) => prop_assert!(e.is_engine_limit(), "{}", e),
        }
    }

    #[test]
    fn normal_form_is_idempotent((p, ord, gens, powers) in generators(), f in terms(6, 4)) {
        let (r, gens) = build_ideal(p, ord, &gens, powers);
        let cfg = cfg();
        let Ok(basis) = complete_basis_with(&gens, ord, &cfg) else { return Ok(()) };
        let f = build(&r, &f);
        let twice = basis
            .normal_form_with(&f, &cfg)
            .and_then(|once| Ok((basis.normal_form_with(&once, &cfg)?, once)));
        match twice {
            Ok((twice, once)) => prop_assert_eq!(once, twice),
            Err(e) => prop_assert!(e.is_engine_limit(), "{}", e),
        }
    }

    #[test]
    fn traced_reduction_is_exact((p, ord, gens, powers) in generators(), f in terms(6, 4)) {
        let (r, gens) = build_ideal(p, ord, &gens, powers);
        let Ok(basis) = complete_basis_with(&gens, ord, &cfg()) else { return Ok(()) };
        let f = build(&r, &f);
        let Ok(red) = basis.reduce_with_trace(&f) else { return Ok(()) };
        let mut lhs = red.unit.mul(&f).unwrap();
        for (q, g) in red.quotients.iter().zip(basis.generators()) {
            lhs = lhs.sub(&q.mul(g).unwrap()).unwrap();
        }
        prop_assert_eq!(lhs, red.remainder.clone());
        prop_assert_eq!(red.unit.constant_term().is_zero(), false);
        if let Some(lm) = red.remainder.leading_monomial() {
            prop_assert!(!basis.leading_ideal().contains(&lm));
        }
    }

    #[test]
    fn pair_criteria_do_not_change_the_result((p, ord, gens, powers) in generators()) {
        let (_, gens) = build_ideal(p, ord, &gens, powers);
        let on = complete_basis_with(&gens, ord, &cfg());
        let off = complete_basis_with(&gens, ord, &EngineConfig { use_criteria: false, ..cfg() });
        if let (Ok(on), Ok(off)) = (on, off) {
            prop_assert_eq!(on.leading_ideal().monomials(), off.leading_ideal().monomials());
        }
    }

    #[test]
    fn global_and_local_counts_agree_for_graded_primary_ideals(
        p in prime(),
        g1 in homogeneous(2, 3),
        g2 in homogeneous(3, 3),
        powers in [2u16..=5, 2..=5, 2..=5],
    ) {
        let mut counts = Vec::new();
        for ord in [MonomialOrder::GlobalDegRevLex, MonomialOrder::LocalNegDegRevLex] {
            let r = ring(p, ord);
            let mut gens = vec![build(&r, &g1), build(&r, &g2)];
            for (i, &e) in powers.iter().enumerate() {
                gens.push(Polynomial::monomial(&r, Monomial::var(i, e), 1));
            }
            counts.push(complete_basis_with(&gens, ord, &cfg()).unwrap().standard_monomial_count());
        }
        prop_assert_eq!(counts[0], counts[1]);
    }

    #[test]
    fn leibniz_rule(p in prime(), f in terms(5, 4), g in terms(5, 4), i in 0usize..3) {
        let r = ring(p, MonomialOrder::GlobalDegRevLex);
        let (f, g) = (build(&r, &f), build(&r, &g));
        let lhs = f.mul(&g).unwrap().derivative(i).unwrap();
        let rhs = f.derivative(i).unwrap().mul(&g).unwrap()
            .add(&f.mul(&g.derivative(i).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_of_pth_power_vanishes(p in prime(), f in terms(4, 3), i in 0usize..3) {
        let r = ring(p, MonomialOrder::GlobalDegRevLex);
        let fp = build(&r, &f).pow(p).unwrap();
        prop_assert!(fp.derivative(i).unwrap().is_zero());
    }

    #[test]
    fn frobenius_matches_pth_power(p in prime(), f in terms(4, 3)) {
        let r = ring(p, MonomialOrder::LocalNegDegRevLex);
        let f = build(&r, &f);
        prop_assert_eq!(f.frobenius_power(1).unwrap(), f.pow(p).unwrap());
    }

    #[test]
    fn parse_render_round_trip(p in prime(), ord in order(), f in terms(8, 6)) {
        let r = ring(p, ord);
        let f = build(&r, &f);
        prop_assert_eq!(parse_poly(&f.to_string(), &r).unwrap(), f);
    }

    #[test]
    fn bracket_power_lies_in_the_ideal(p in prime(), t in germ_terms()) {
        let Some(g) = germ(p, &t) else { return Ok(()) };
        let j = jacobian_ideal(&g);
        let jp = match bracket_ideal_power(&j, &g, 1, &cfg()) {
            Ok(jp) => jp,
            Err(e) => {
                prop_assert!(e.is_engine_limit(), "{}", e);
                return Ok(());
            }
        };
        for h in jp.gens() {
            match contains_with(&j, h, &cfg()) {
                Ok(inside) => prop_assert!(inside, "{} not in J", h),
                Err(e) => prop_assert!(e.is_engine_limit(), "{}", e),
            }
        }
    }

    #[test]
    fn theta_free_agrees_with_length_formula(p in prime(), t in germ_terms()) {
        let Some(g) = germ(p, &t) else { return Ok(()) };
        let a = length_formula(&g, &cfg()).unwrap();
        let b = theta_free(&g, &cfg()).unwrap();
        prop_assert_eq!(a.status, b.status);
    }

    #[test]
    fn local_length_is_permutation_invariant(
        p in prime(),
        t in germ_terms(),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let Some(g) = germ(p, &t) else { return Ok(()) };
        let j = jacobian_ideal(&g);
        let a = local_length_with(&j, &cfg());
        let b = local_length_with(&j.renamed(&perm).unwrap(), &cfg());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a, b);
        }
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[test]
fn invertible_summand_is_permutation_invariant_on_the_catalog() {
    let cfg = EngineConfig::default();
    for p in [2, 3, 5] {
        for rec in Catalog::builtin().e_records(PrimeChar::new(p).unwrap()) {
            let base = invertible_summand(&rec.germ(), &cfg).unwrap().status;
            for perm in PERMUTATIONS {
                let f = rec.equation.substitute_rename(&perm).unwrap();
                let g = HypersurfaceGerm::new(f).unwrap();
                let status = invertible_summand(&g, &cfg).unwrap().status;
                assert_eq!(status, base, "char {p} {} under {perm:?}", rec.name());
            }
        }
    }
}

#[test]
fn summand_ideals_of_smooth_and_non_isolated_germs_are_not_applicable() {
    let r = ring(2, MonomialOrder::GlobalDegRevLex);
    let smooth = HypersurfaceGerm::new(parse_poly("x+y^2", &r).unwrap()).unwrap();
    let line = HypersurfaceGerm::new(parse_poly("x*y", &r).unwrap()).unwrap();
    for g in [smooth, line] {
        let report = invertible_summand(&g, &cfg()).unwrap();
        assert_eq!(report.status, Status::NotApplicable);
    }
}

#[test]
fn monomial_ideal_lengths_match_a_direct_count() {
    let r = ring(3, MonomialOrder::LocalNegDegRevLex);
    let gens = parse_poly_list_or_panic("x^3, y^4, z^2, x*y*z, x^2*y^2", &r);
    let ideal = IdealPresentation::new(gens.clone()).unwrap();
    let mut count = 0;
    for a in 0..3u32 {
        for b in 0..4u32 {
            for c in 0..2u32 {
                let m = Monomial::from_exponents(&[a, b, c]).unwrap();
                if !gens
                    .iter()
                    .any(|g| g.leading_monomial().unwrap().divides(&m))
                {
                    count += 1;
                }
            }
        }
    }
    assert_eq!(
        local_length_with(&ideal, &cfg()).unwrap(),
        Length::Finite(count)
    );
}

fn parse_poly_list_or_panic(src: &str, r: &Arc<Ring>) -> Vec<Polynomial> {
    rdpd_core::parse_poly_list(src, r).unwrap()
}
