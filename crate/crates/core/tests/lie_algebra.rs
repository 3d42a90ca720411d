use llg_core::gen;
use llg_core::library;
use llg_core::lie_algebra::{
    ce_oracle_differential, class_coordinates, cohomology, derivations, differential_d, inner_derivations,
};
use llg_core::rational::rat;
use llg_core::{AlgebraicCochain, Error, StructureConstants};

// Betti numbers of H^k(g, g) from an independent sympy computation of the
// textbook Chevalley–Eilenberg complex.
const ORACLE: &[(&str, &[usize])] = &[
    ("heisenberg-3", &[1, 4, 5, 2]),
    ("sl2-3", &[0, 0, 0, 0]),
    ("so3-3", &[0, 0, 0, 0]),
    ("aff1-2", &[0, 0, 0]),
    ("engel-4", &[1, 4, 6, 5, 2]),
    ("abelian-3", &[3, 9, 9, 3]),
];

#[test]
fn betti_numbers_match_oracle() {
    for (name, bettis) in ORACLE {
        let g = library::algebra(name).unwrap();
        let rep = cohomology(&g, g.dim()).unwrap();
        assert_eq!(rep.bettis(), *bettis, "{name}");
        assert!(rep.consistent(), "{name}");
        assert_eq!(rep.euler_characteristic, Some(0), "{name}");
    }
}

#[test]
fn abelian_bettis_are_n_choose_k_times_n() {
    for n in 2..=5 {
        let rep = cohomology(&StructureConstants::abelian(n).unwrap(), n).unwrap();
        let mut binom = 1;
        for k in 0..=n {
            assert_eq!(rep.degrees[k].betti, n * binom, "n = {n}, k = {k}");
            binom = binom * (n - k) / (k + 1);
        }
    }
}

#[test]
fn derivation_dimensions() {
    let heis = library::algebra("heisenberg-3").unwrap();
    assert_eq!((derivations(&heis).len(), inner_derivations(&heis).len()), (6, 2));
    let sl2 = library::algebra("sl2-3").unwrap();
    assert_eq!((derivations(&sl2).len(), inner_derivations(&sl2).len()), (3, 3));
}

#[test]
fn differential_equals_ce_formula_on_random_algebras() {
    let mut r = gen::rng(11);
    for case in 0..12 {
        let n = 2 + case % 3;
        let g = gen::lie_algebra(&mut r, n);
        for k in 0..n {
            let w = gen::cochain(&mut r, n, k);
            let d = differential_d(&g, &w).unwrap();
            assert_eq!(d, ce_oracle_differential(&g, &w).unwrap(), "case {case}, degree {k}");
            if k + 1 < n {
                assert!(differential_d(&g, &d).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn cohomology_is_basis_independent() {
    let mut r = gen::rng(3);
    for name in ["heisenberg-3", "sl2-3", "engel-4", "aff1-2"] {
        let g = library::algebra(name).unwrap();
        let h = g.change_basis(&gen::unimodular_basis_change(&mut r, g.dim())).unwrap();
        assert_eq!(
            cohomology(&g, g.dim()).unwrap().bettis(),
            cohomology(&h, h.dim()).unwrap().bettis(),
            "{name}"
        );
    }
}

#[test]
fn jacobi_failure_is_refused_with_a_triple() {
    // [e1, e2] = e1, [e2, e3] = e2 violates Jacobi.
    let g = StructureConstants::from_entries(3, &[(0, 0, 1, rat(1)), (1, 1, 2, rat(1))]).unwrap();
    assert!(!g.jacobi_holds());
    match cohomology(&g, 1) {
        Err(Error::JacobiViolated { i, j, k }) => assert_eq!((i, j, k), (1, 2, 3)),
        other => panic!("expected a Jacobi refusal, got {other:?}"),
    }
}

#[test]
fn antisymmetry_is_enforced() {
    let mut table = vec![rat(0); 8];
    table[1] = rat(1); // c^1_{12} without its partner
    assert!(matches!(StructureConstants::from_table(2, table), Err(Error::NotAntisymmetric(_))));
}

#[test]
fn class_coordinates_reconstruct_a_cocycle() {
    let g = library::algebra("heisenberg-3").unwrap();
    let rep = cohomology(&g, 1).unwrap();
    // A derivation: e1 ↦ e1, e3 ↦ e3 (outer).
    let mut w = AlgebraicCochain::zero(3, 1);
    for (i, coords) in [(0usize, 0usize), (2, 2)] {
        let mut m = w.to_matrix();
        m.set(i, coords, rat(1));
        w = AlgebraicCochain::from_matrix(&m);
    }
    assert!(differential_d(&g, &w).unwrap().is_zero());
    let (coords, eta) = class_coordinates(&g, &rep, &w).unwrap();
    let mut sum = differential_d(&g, &eta).unwrap();
    for (a, h) in coords.iter().zip(&rep.degrees[1].representatives) {
        sum = sum.add(&h.scale(a));
    }
    assert_eq!(sum, w);
    assert!(coords.iter().any(|a| *a != rat(0)));
}

#[test]
fn non_cocycles_have_no_class() {
    let g = library::algebra("heisenberg-3").unwrap();
    let rep = cohomology(&g, 1).unwrap();
    let w = AlgebraicCochain::from_matrix(&{
        let mut m = AlgebraicCochain::zero(3, 1).to_matrix();
        m.set(0, 2, rat(1));
        m
    });
    assert!(matches!(class_coordinates(&g, &rep, &w), Err(Error::NotClosed)));
}
