use llg_core::deformation::{
    constancy_conditions, deformation_report, kappa, ks_cocycle, semisimple_rigidity, validity, GaugeJet,
};
use llg_core::library;
use llg_core::rational::rat;
use llg_core::{Error, PolyMatrix, RatMatrix, Rational};

fn origin(n: usize) -> Vec<Rational> {
    vec![rat(0); n]
}

fn unit(n: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = RatMatrix::zero(n, n);
    m.set(i, j, rat(1));
    m
}

#[test]
fn abelian_constant_jet_has_class_a() {
    let (j, base) = library::load_jet("abelian-const-jet").unwrap();
    let (c, f) = library::load_geometry(base).unwrap();
    let rep = deformation_report(&j, &c, f.as_ref(), &origin(2)).unwrap();
    assert!(rep.is_deformation() && rep.is_constant());
    assert_eq!(rep.ks.host, "invariant");
    let class = rep.ks.class.unwrap();
    // The abelian H¹ basis is the coordinate basis, so the class is A itself.
    assert_eq!(class.coordinates, ["1", "2", "0", "-1"]);
    assert!(!class.zero);
    assert!(rep.diagram.iter().all(|d| d.commutes));
}

#[test]
fn abelian_nonconstant_jet() {
    let (j, base) = library::load_jet("abelian-nonconst-jet").unwrap();
    let (c, _) = library::load_geometry(base).unwrap();
    let rep = deformation_report(&j, &c, None, &origin(2)).unwrap();
    // [e1, e2] = t e1: a valid deformation that is not constant.
    assert!(rep.is_deformation());
    assert_eq!(rep.constancy_order, 0);
    assert!(rep.constancy.agree() && !rep.constancy.constant);
    assert!(!rep.ks.hypothesis_met);
    assert!(matches!(ks_cocycle(&j, &c), Err(Error::Hypothesis(_))));
}

#[test]
fn heisenberg_bad_column_violates_constraint_at_first_order() {
    let (j, base) = library::load_jet("heisenberg-bad-column-jet").unwrap();
    let (c, _) = library::load_geometry(base).unwrap();
    let v = validity(&j, &c, &origin(3)).unwrap();
    assert_eq!(v.constraint_field, [false, true, true, true]);
    assert_eq!(v.constraint_point, [false, true, true, true]);
    assert!(v.constraint_matches_derived());
    // t¹ coefficients, derived by hand from f = I + tE, g = I − tE.
    let rep = deformation_report(&j, &c, None, &origin(3)).unwrap();
    let s = |v: &[(Vec<usize>, String)]| v.iter().map(|(i, x)| (i.clone(), x.clone())).collect::<Vec<_>>();
    assert_eq!(s(&rep.kappa_literal[0]), [(vec![1, 1, 2], "1".into()), (vec![1, 2, 1], "-1".into())]);
    assert_eq!(s(&rep.kappa_conjugated[0]), [(vec![3, 2, 3], "-1".into()), (vec![3, 3, 2], "1".into())]);
    assert_eq!(rep.constancy_order, 0);
    assert!(rep.constancy.agree());
}

#[test]
fn identity_jet_is_constant_with_zero_class() {
    let (j, base) = library::load_jet("heisenberg-identity-jet").unwrap();
    let (c, f) = library::load_geometry(base).unwrap();
    let rep = deformation_report(&j, &c, f.as_ref(), &origin(3)).unwrap();
    assert!(rep.is_constant() && rep.is_deformation());
    assert!(rep.ks.class.unwrap().zero);
}

#[test]
fn stabilizer_gauges_are_deformations() {
    let f = library::frame("heisenberg-3").unwrap();
    let c = f.connection();
    let p = vec![rat(1), rat(-1), rat(2)];
    // Scaling e3 moves the derived algebra: the constraint fails at p, yet
    // the splitting is untouched, so the jet is still a deformation.
    let j = GaugeJet::stabilizer(&f, &unit(3, 2, 2), 3).unwrap();
    let rep = deformation_report(&j, &c, Some(&f), &p).unwrap();
    assert!(rep.is_deformation() && !rep.is_constant());
    assert_eq!(rep.validity.constraint_point, [false, false, false]);
    assert!(rep.validity.constraint_matches_derived());
    assert!(rep.constancy.agree());
    // e2 ↦ e1 kills [g, g] = ⟨e3⟩: constant, with a nonzero invariant class.
    let j = GaugeJet::stabilizer(&f, &unit(3, 0, 1), 3).unwrap();
    let rep = deformation_report(&j, &c, Some(&f), &p).unwrap();
    assert!(rep.is_deformation() && rep.is_constant());
    assert_eq!(rep.ks.host, "invariant");
    assert!(!rep.ks.class.unwrap().zero);
    assert!(rep.kappa_velocity_parallel_base && rep.kappa_velocity_parallel_deformed);
    assert!(rep.diagram.iter().all(|d| d.commutes));
}

#[test]
fn constant_deformation_can_violate_the_constraint() {
    let f = library::frame("heisenberg-3").unwrap();
    let c = f.connection();
    let j = GaugeJet::exp(&PolyMatrix::from_rat(&unit(3, 2, 2), 3), 3).unwrap();
    let rep = deformation_report(&j, &c, Some(&f), &origin(3)).unwrap();
    assert!(rep.is_deformation() && rep.is_constant());
    assert!(!rep.validity.constraint_field[0] && !rep.validity.constraint_point[0]);
    let cc = constancy_conditions(&j, &c, &origin(3)).unwrap();
    assert!(cc.agree() && cc.constant);
    assert!(kappa(&j, &c).unwrap().conjugated.is_zero());
    // d̂₀F₁ = 0 regardless; F₁ = E33 is not ∇̃₀-parallel here.
    assert_eq!(rep.ks.closed, Some(true));
    assert_eq!(rep.ks.host, "janet");
}

#[test]
fn sl2_rejects_moving_jets() {
    let (c, _) = library::load_geometry("sl2-3").unwrap();
    let g = c.torsion().localize(&origin(3)).unwrap();
    let moving = GaugeJet::exp(&PolyMatrix::from_rat(&unit(3, 0, 1), 3), 2).unwrap();
    let r = semisimple_rigidity(&moving, &g, &origin(3)).unwrap();
    assert!(r.perfect);
    assert_eq!(r.rejected_at, Some(1));
    let still = GaugeJet::identity(3, 2).unwrap();
    assert_eq!(semisimple_rigidity(&still, &g, &origin(3)).unwrap().rejected_at, None);
}

#[test]
fn non_local_lie_base_is_refused() {
    let (c, f) = library::load_geometry("perturbed-3").unwrap();
    let j = GaugeJet::identity(3, 2).unwrap();
    assert!(matches!(
        deformation_report(&j, &c, f.as_ref(), &origin(3)),
        Err(Error::NotLocalLie(_))
    ));
}

#[test]
fn jets_invert_exactly() {
    let a = PolyMatrix::from_rat(&unit(2, 0, 1).add(&unit(2, 1, 1)), 2);
    let j = GaugeJet::exp(&a, 4).unwrap();
    let prod = j.f().mul(j.g()).unwrap();
    assert!(prod.coeff(0).is_identity());
    assert!((1..=4).all(|m| prod.coeff(m).is_zero()));
}
