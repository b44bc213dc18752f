use proptest::prelude::*;

use rdpd_core::ideals::{local_length, truncation_length_oracle, IdealPresentation, OracleOutcome};
use rdpd_core::{Length, Monomial, MonomialOrder, Polynomial, PrimeChar, Ring};

fn exps() -> impl Strategy<Value = [u32; 3]> {
    [0u32..=4, 0..=4, 0..=4]
}

/// Monomials `x^a y^b z^c` with `a < pa`, `b < pb`, `c < pc` divisible by none of `gens`.
fn brute_force_count(powers: [u32; 3], gens: &[[u32; 3]]) -> u64 {
    let mut count = 0;
    for a in 0..powers[0] {
        for b in 0..powers[1] {
            for c in 0..powers[2] {
                let m = [a, b, c];
                if !gens.iter().any(|g| (0..3).all(|i| g[i] <= m[i])) {
                    count += 1;
                }
            }
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn monomial_ideals_match_a_direct_count(
        powers in [1u32..=6, 1..=6, 1..=6],
        gens in prop::collection::vec(exps(), 0..4),
        scale in 1i64..7,
    ) {
        let r = Ring::xyz(PrimeChar::new(7).unwrap(), MonomialOrder::LocalNegDegRevLex);
        let mut polys: Vec<Polynomial> = gens
            .iter()
            .map(|e| Polynomial::monomial(&r, Monomial::from_exponents(e).unwrap(), scale))
            .collect();
        for (i, &e) in powers.iter().enumerate() {
            polys.push(Polynomial::monomial(&r, Monomial::var(i, e as u16), 1));
        }
        let ideal = IdealPresentation::new(polys).unwrap();
        let want = brute_force_count(powers, &gens);
        prop_assert_eq!(truncation_length_oracle(&ideal, 64).length(), Some(want));
        prop_assert_eq!(local_length(&ideal).unwrap(), Length::Finite(want));
    }

    #[test]
    fn oracle_agrees_with_the_engine_on_primary_ideals(
        p in prop::sample::select(vec![2u32, 3, 5, 7]),
        gens in prop::collection::vec(prop::collection::vec((exps(), -9i64..9), 1..4), 1..3),
        powers in [2u16..=5, 2..=5, 2..=5],
    ) {
        let r = Ring::xyz(PrimeChar::new(p).unwrap(), MonomialOrder::LocalNegDegRevLex);
        let mut polys: Vec<Polynomial> = gens
            .iter()
            .map(|t| {
                Polynomial::from_terms(
                    &r,
                    t.iter().map(|(e, c)| (Monomial::from_exponents(e).unwrap(), *c)),
                )
            })
            .collect();
        for (i, &e) in powers.iter().enumerate() {
            polys.push(Polynomial::monomial(&r, Monomial::var(i, e), 1));
        }
        let ideal = IdealPresentation::new(polys).unwrap();
        let engine = local_length(&ideal).unwrap();
        let oracle = truncation_length_oracle(&ideal, 64);
        prop_assert_eq!(engine.finite(), oracle.length());
    }
}

#[test]
fn positive_dimensional_ideals_do_not_stabilize() {
    let r = Ring::xyz(PrimeChar::new(2).unwrap(), MonomialOrder::LocalNegDegRevLex);
    let gens = rdpd_core::parse_poly_list("x*y, z^2", &r).unwrap();
    let ideal = IdealPresentation::new(gens).unwrap();
    assert_eq!(local_length(&ideal).unwrap(), Length::Infinite);
    assert_eq!(
        truncation_length_oracle(&ideal, 32),
        OracleOutcome::Unstable { cap: 32 }
    );
}
