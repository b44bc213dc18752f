use rdpd_core::catalog::{Catalog, Dynkin};
use rdpd_core::criteria::{evaluate, EvalOptions};
use rdpd_core::ideals::{bracket_ideal, jacobian_ideal, local_length};
use rdpd_core::{parse_poly, Length, PrimeChar};

fn char_(p: u32) -> PrimeChar {
    PrimeChar::new(p).unwrap()
}

#[test]
fn every_record_gets_its_reference_verdict() {
    for p in [2, 3, 5, 7, 11] {
        for rec in Catalog::builtin().all_records(char_(p), 12) {
            let eval = evaluate(&rec.germ(), Some(&rec.facts()), &EvalOptions::default()).unwrap();
            assert_eq!(
                eval.verdict.outcome,
                rec.reference_verdict,
                "char {p} {}",
                rec.name()
            );
        }
    }
}

#[test]
fn stored_lengths_are_recomputed_exactly() {
    let mut rows = 0;
    for p in [2, 3, 5] {
        for rec in Catalog::builtin().e_records(char_(p)) {
            let germ = rec.germ();
            let j = jacobian_ideal(&germ);
            let jp = bracket_ideal(&j, &germ).unwrap();
            assert_eq!(
                local_length(&j).unwrap().finite(),
                rec.table_len_j,
                "{}",
                rec.name()
            );
            assert_eq!(
                local_length(&jp).unwrap().finite(),
                rec.table_len_jp,
                "{}",
                rec.name()
            );
            rows += 1;
        }
    }
    assert_eq!(rows, 22);
}

#[test]
fn equations_reparse_to_themselves() {
    for p in [2, 3, 5, 7] {
        for rec in Catalog::builtin().all_records(char_(p), 12) {
            let f = &rec.equation;
            assert_eq!(&parse_poly(&f.to_string(), f.ring()).unwrap(), f);
            assert_eq!(&parse_poly(&rec.display_equation(), f.ring()).unwrap(), f);
        }
    }
}

#[test]
fn catalog_file_round_trips() {
    let cat = Catalog::builtin();
    let again = Catalog::parse(&cat.render()).unwrap();
    assert_eq!(again.rows(), cat.rows());
}

#[test]
fn instantiation_examples() {
    let cat = Catalog::builtin();
    let cases = [
        (Dynkin::D, 6, Some(0), 2, "z^2+x^2*y+x*y^3"),
        (Dynkin::E, 8, Some(1), 2, "z^2+x^3+y^5+x*y^3*z"),
        (Dynkin::A, 3, None, 5, "z^4-x*y"),
        (Dynkin::D, 7, None, 3, "z^2+x^2*y+y^6"),
    ];
    for (d, n, r, p, want) in cases {
        let rec = cat.instantiate(d, n, r, char_(p)).unwrap();
        let want = parse_poly(want, rec.equation.ring()).unwrap();
        assert_eq!(rec.equation, want);
    }
}

#[test]
fn out_of_range_parameters_are_usage_errors() {
    let cat = Catalog::builtin();
    assert!(cat.instantiate(Dynkin::D, 6, Some(3), char_(2)).is_err());
    assert!(cat.instantiate(Dynkin::E, 9, Some(0), char_(2)).is_err());
    assert!(cat.instantiate(Dynkin::E, 8, Some(1), char_(7)).is_err());
    assert!(cat.instantiate(Dynkin::A, 0, None, char_(3)).is_err());
}

#[test]
fn e_row_counts_per_characteristic() {
    let cat = Catalog::builtin();
    let counts: Vec<usize> = [2, 3, 5, 7]
        .iter()
        .map(|&p| cat.e_records(char_(p)).len())
        .collect();
    assert_eq!(counts, [11, 7, 4, 3]);
}

#[test]
fn a_family_lengths_when_p_divides_n_plus_one() {
    let cat = Catalog::builtin();
    let rec = cat.instantiate(Dynkin::A, 7, None, char_(2)).unwrap();
    let j = jacobian_ideal(&rec.germ());
    assert_eq!(local_length(&j).unwrap(), Length::Finite(8));
}
