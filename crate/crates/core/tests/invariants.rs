use nec_ovals::census::{census, enumerate_epimorphisms, units, CensusOptions};
use nec_ovals::oracle::{cross_check, exponents};
use nec_ovals::{
    isolated_fixed_points, max_cyclic_order, parse_signature, validate, CyclicEpimorphism,
    NecSignature, Rational, Sign,
};
use proptest::prelude::*;

#[test]
fn oracle_agrees_on_every_census_row_up_to_40() {
    let mut rows = 0;
    for m in 1..=40u64 {
        for row in census(
            m,
            12,
            &CensusOptions {
                up_to_aut: true,
                ..Default::default()
            },
        )
        .unwrap()
        {
            rows += 1;
            let t = cross_check(&row.epimorphism).unwrap();
            assert!(
                t.agreement,
                "{} {}: {:?}",
                row.signature, row.images, t.first_disagreement
            );
            for c in &t.per_cycle {
                assert_eq!(c.class_count_doublecoset, c.class_count_exponent);
            }
            if let Some(inv) = &row.report.involution {
                assert!(
                    inv.scherrer_lhs <= inv.scherrer_rhs,
                    "{} {}",
                    row.signature,
                    row.images
                );
            }
        }
    }
    assert!(rows > 1000);
}

#[test]
fn exponent_divisibility() {
    for m in (2..=100u64).step_by(2) {
        for v in 0..m {
            let e = exponents(m, v).unwrap();
            assert_eq!((m / 2) % e.delta, 0);
            assert_eq!(m % e.epsilon, 0);
        }
    }
}

#[test]
fn isolated_counts_coincide_at_the_involution() {
    for m in (2..=20u64).step_by(2) {
        for row in census(m, 10, &CensusOptions::default()).unwrap() {
            let sig = &row.signature;
            let even_sum: u64 = sig
                .periods()
                .iter()
                .filter(|&&p| p % 2 == 0)
                .map(|&p| m / p)
                .sum();
            assert_eq!(isolated_fixed_points(sig, m, m / 2).unwrap(), even_sum);
        }
    }
}

#[test]
fn max_order_through_nine() {
    for p in 3..=9u64 {
        let expected = if p % 2 == 1 { 2 * p } else { 2 * (p - 1) };
        assert_eq!(max_cyclic_order(p, 12), Ok(expected), "p={p}");
    }
}

#[test]
fn c4_inverse_pair_map_needs_even_r() {
    for r in 0..=5usize {
        let periods: Vec<u64> = std::iter::repeat_n(2, r).chain([4, 4]).collect();
        let sig = NecSignature::new(0, Sign::Plus, periods, 1).unwrap();
        let mut x = vec![2; r];
        x.extend([1, 3]);
        let epi = CyclicEpimorphism::new(sig, 4, x, vec![0], vec![2], vec![]).unwrap();
        assert_eq!(validate(&epi).valid, r % 2 == 0, "r={r}");
    }
}

fn arb_valid_epimorphism() -> impl Strategy<Value = CyclicEpimorphism> {
    (2u64..=12, 3u64..=9)
        .prop_flat_map(|(m, g)| {
            let rows: Vec<CyclicEpimorphism> = nec_ovals::enumerate_signatures(m, g)
                .iter()
                .take(6)
                .flat_map(|s| enumerate_epimorphisms(s, m, false).into_iter().take(20))
                .collect();
            let n = rows.len().max(1);
            (Just(rows), 0..n)
        })
        .prop_filter_map("no epimorphisms", |(rows, i)| rows.get(i).cloned())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn validity_is_aut_equivariant(epi in arb_valid_epimorphism()) {
        for u in units(epi.modulus()) {
            prop_assert!(validate(&epi.scaled(u)).valid);
        }
    }

    #[test]
    fn kernel_genus_matches_measure(epi in arb_valid_epimorphism()) {
        let p = validate(&epi).kernel_genus.unwrap();
        let mu = epi.signature().orbifold_measure();
        prop_assert_eq!(Rational::from_integer(p as i64 - 2), mu * Rational::from_integer(epi.modulus() as i64));
    }

    #[test]
    fn permuting_periods_with_images_keeps_validity(epi in arb_valid_epimorphism()) {
        let mut x = epi.x_images().to_vec();
        x.reverse();
        let mut periods = epi.signature().periods().to_vec();
        periods.reverse();
        let sig = epi.signature();
        let swapped = NecSignature::new(sig.genus(), sig.sign(), periods, sig.empty_cycles()).unwrap();
        let other = CyclicEpimorphism::new(
            swapped,
            epi.modulus(),
            x,
            epi.e_images().to_vec(),
            epi.c_images().to_vec(),
            epi.orient_images().to_vec(),
        ).unwrap();
        prop_assert!(validate(&other).valid);
    }
}

#[test]
fn cycle_shorthand_expands() {
    let s = parse_signature("(2;-;[2,3,6];{()^2})").unwrap();
    assert_eq!(s.to_string(), "(2;-;[2,3,6];{()()})");
}
