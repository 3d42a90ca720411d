use proptest::prelude::*;

use llg_core::char_classes::trace_chain_defect;
use llg_core::deformation::GaugeJet;
use llg_core::gen;
use llg_core::lie_algebra::{ce_oracle_differential, differential_d};
use llg_core::rational::{format_rational, parse_rational, ratio};
use llg_core::Poly;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let q = ratio(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn polynomials_round_trip_and_distribute(seed in any::<u64>(), nvars in 1usize..4) {
        let mut r = gen::rng(seed);
        let a = gen::poly(&mut r, nvars, nvars, 3, 4);
        let b = gen::poly(&mut r, nvars, nvars, 2, 3);
        let c = gen::poly(&mut r, nvars, nvars, 2, 3);
        prop_assert_eq!(Poly::parse(&a.to_string(), nvars).unwrap(), a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) - &(&b * &a), Poly::zero(nvars));
    }

    #[test]
    fn differential_squares_to_zero_and_matches_ce(seed in any::<u64>(), n in 2usize..5) {
        let mut r = gen::rng(seed);
        let g = gen::lie_algebra(&mut r, n);
        for k in 0..n {
            let w = gen::cochain(&mut r, n, k);
            let d = differential_d(&g, &w).unwrap();
            prop_assert_eq!(&d, &ce_oracle_differential(&g, &w).unwrap());
            if k + 1 < n {
                prop_assert!(differential_d(&g, &d).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn trace_is_a_chain_map_on_unimodular_algebras(seed in any::<u64>(), n in 2usize..5) {
        let mut r = gen::rng(seed);
        let g = gen::lie_algebra(&mut r, n);
        prop_assume!(g.is_unimodular());
        for k in 1..n {
            let w = gen::cochain(&mut r, n, k);
            prop_assert!(trace_chain_defect(&g, &w).unwrap().is_zero());
        }
    }

    #[test]
    fn frame_connections_are_tilde_flat(seed in any::<u64>(), n in 2usize..5) {
        let mut r = gen::rng(seed);
        let f = gen::unimodular_frame(&mut r, n);
        prop_assert!(f.connection().curvature_tilde().is_zero());
    }

    #[test]
    fn gauge_jets_invert(seed in any::<u64>(), n in 2usize..4, order in 1usize..4) {
        let mut r = gen::rng(seed);
        let coeffs = (0..order).map(|_| gen::poly_matrix(&mut r, n, 1)).collect();
        let j = GaugeJet::from_coeffs(n, coeffs).unwrap();
        let prod = j.f().mul(j.g()).unwrap();
        prop_assert!(prod.coeff(0).is_identity());
        for m in 1..=order {
            prop_assert!(prod.coeff(m).is_zero());
        }
    }
}
