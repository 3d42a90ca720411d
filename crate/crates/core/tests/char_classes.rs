use llg_core::char_classes::{class_is_exact, classes_report, t_power, t_power_field, trace_map};
use llg_core::gen;
use llg_core::io::{ConnectionFile, GammaEntry};
use llg_core::library;
use llg_core::lie_algebra::differential_d;
use llg_core::parallelism::jacobi_form;
use llg_core::rational::rat;
use llg_core::{Error, Rational};

fn origin(n: usize) -> Vec<Rational> {
    vec![rat(0); n]
}

#[test]
fn aff1_trace_is_one_zero() {
    let (c, _) = library::load_geometry("aff1-2").unwrap();
    let rep = classes_report(&c, &origin(2)).unwrap();
    assert!(!rep.unimodular);
    let t1 = &rep.entries[0];
    assert_eq!(t1.trace, [(vec![1], "1".to_string())]);
    assert!(t1.field_closed && t1.point_closed && t1.exact);
}

#[test]
fn heisenberg_torsion_is_closed_and_exact() {
    let (c, _) = library::load_geometry("heisenberg-3").unwrap();
    let rep = classes_report(&c, &[rat(2), rat(-1), rat(1)]).unwrap();
    assert!(rep.unimodular && rep.t2_equals_jacobi_form);
    assert_eq!(rep.entries.len(), 1);
    assert!(rep.entries[0].field_closed && rep.entries[0].exact);
}

#[test]
fn abelian_classes_vanish() {
    let (c, _) = library::load_geometry("abelian-4").unwrap();
    let rep = classes_report(&c, &origin(4)).unwrap();
    assert_eq!(rep.entries.len(), 2);
    assert!(rep.entries.iter().all(|e| e.cochain.is_empty() && e.trace.is_empty()));
}

#[test]
fn non_local_lie_is_refused() {
    let (c, _) = library::load_geometry("perturbed-3").unwrap();
    assert!(matches!(classes_report(&c, &origin(3)), Err(Error::NotLocalLie(_))));
}

#[test]
fn first_power_is_always_exact_with_identity_primitive() {
    let mut r = gen::rng(9);
    for case in 0..10 {
        let g = gen::lie_algebra(&mut r, 2 + case % 3);
        let t1 = t_power(&g, 1).unwrap();
        let ex = class_is_exact(&g, &t1).unwrap();
        assert!(ex.exact, "case {case}");
        assert_eq!(differential_d(&g, &ex.certificate.unwrap()).unwrap(), t1);
    }
}

#[test]
fn t2_is_the_jacobi_form_without_jacobi() {
    // Constant connection whose torsion violates Jacobi: T² = J ≠ 0.
    let g = |i, k, j, v: &str| GammaEntry { i, k, j, val: v.into() };
    let c = ConnectionFile {
        n: 3,
        gamma: vec![g(1, 1, 2, "1"), g(2, 2, 3, "1")],
    }
    .to_connection()
    .unwrap();
    let t = c.torsion();
    let j = jacobi_form(&t);
    assert!(!j.is_zero());
    assert_eq!(t_power_field(&t, 2).unwrap(), j);
    assert!(!c.torsion().localize(&origin(3)).unwrap().jacobi_holds());
}

#[test]
fn trace_of_unimodular_torsion_vanishes() {
    for name in ["heisenberg-3", "sl2-3", "so3-3", "engel-4"] {
        let g = library::algebra(name).unwrap();
        assert!(trace_map(&t_power(&g, 1).unwrap()).unwrap().is_zero(), "{name}");
    }
}
