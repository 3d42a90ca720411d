use llg_core::parallelism::{hat_invariant_jet, invariant_jet, lie_derivative_defect, vanishes_below};
use llg_core::rational::rat;
use llg_core::{Connection, Frame, Poly, PolyMatrix, Rational, TensorField, VectorForm};

fn frame(n: usize, rows: &[&[&str]]) -> Frame {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    Frame::new(PolyMatrix::parse_rows(n, &rows).unwrap(), None).unwrap()
}

fn heis() -> Frame {
    frame(3, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "x1", "1"]])
}

fn engel() -> Frame {
    frame(
        4,
        &[
            &["1", "0", "0", "0"],
            &["0", "1", "0", "0"],
            &["0", "x1", "1", "0"],
            &["0", "1/2*x1^2", "x1", "1"],
        ],
    )
}

fn nonzero(t: &TensorField) -> Vec<(Vec<usize>, String)> {
    t.nonzero().into_iter().map(|(i, p)| (i.iter().map(|x| x + 1).collect(), p.to_string())).collect()
}

fn raw(n: usize, entries: &[(usize, usize, usize, &str)]) -> Connection {
    let mut g = TensorField::zero(n, n, 1, 2);
    for (i, k, j, s) in entries {
        g.set(&[i - 1, k - 1, j - 1], Poly::parse(s, n).unwrap());
    }
    Connection::from_table(g).unwrap()
}

#[test]
fn heisenberg_connection() {
    let c = heis().connection();
    assert_eq!(nonzero(c.gamma()), vec![(vec![3, 1, 2], "1".to_string())]);
    assert_eq!(
        nonzero(c.torsion().field()),
        vec![(vec![3, 1, 2], "1".to_string()), (vec![3, 2, 1], "-1".to_string())]
    );
    let v = c.local_lie_verdict();
    assert!(v.tilde_flat && v.hat_flat && v.nabla_t_zero && v.consistent());
}

#[test]
fn engel_connection() {
    let c = engel().connection();
    assert_eq!(
        nonzero(c.gamma()),
        vec![(vec![3, 1, 2], "1".to_string()), (vec![4, 1, 3], "1".to_string())]
    );
    assert!(c.is_local_lie_group());
    let g = c.torsion().localize(&vec![rat(0); 4]).unwrap();
    assert!(g.jacobi_holds());
}

#[test]
fn raw_candidate_x2_is_hat_flat() {
    let c = raw(3, &[(3, 1, 2, "x2")]);
    assert!(c.curvature_hat().is_zero());
    let rt = c.curvature_tilde();
    assert_eq!(rt.get(2, 1, 0, 1), &Poly::constant(3, rat(1)));
}

#[test]
fn raw_candidate_x3_is_not_local_lie() {
    let c = raw(3, &[(3, 1, 2, "x3")]);
    let v = c.local_lie_verdict();
    assert!(!v.hat_flat);
    assert!(!v.hat_curvature_nonzero.is_empty());
    assert_eq!(c.curvature_hat().get(2, 2, 1, 0), &Poly::constant(3, rat(1)));
}

#[test]
fn identity_suite_holds() {
    for f in [heis(), engel()] {
        let rep = f.connection().identity_suite(Some(&f));
        assert!(rep.all_hold(), "{:?}", rep.checks.iter().filter(|c| !c.holds).collect::<Vec<_>>());
    }
    // general forms hold for an arbitrary polynomial connection
    let c = raw(2, &[(1, 1, 2, "x2"), (2, 2, 1, "x1^2 - 1"), (1, 2, 2, "3*x1*x2")]);
    let rep = c.identity_suite(None);
    assert!(!rep.tilde_flat);
    assert!(rep.all_hold(), "{:?}", rep.checks.iter().filter(|c| !c.holds).collect::<Vec<_>>());
}

#[test]
fn invariant_jet_recovers_frame_field() {
    let f = heis();
    let c = f.connection();
    let p = vec![rat(1), rat(2), rat(3)];
    let e2 = f.column(1);
    let jet = invariant_jet(&c, &e2, &p, 3).unwrap();
    assert_eq!(jet, e2);
    let ext = f.invariant_extension(&e2, &p).unwrap();
    assert_eq!(ext, e2);
}

#[test]
fn hat_jet_commutes_with_invariant_fields() {
    let f = engel();
    let c = f.connection();
    let p: Vec<Rational> = vec![rat(1), rat(-1), rat(2), rat(0)];
    let x_p = TensorField::from_constants(4, 4, 1, 0, &[rat(1), rat(2), rat(0), rat(-1)]).unwrap();
    let xh = hat_invariant_jet(&c, &x_p, &p, 4).unwrap();
    assert!(vanishes_below(&c.nabla_hat(&xh), &p, 4));
    for a in 0..4 {
        let d = lie_derivative_defect(&c, &x_p, &f.column(a), &p, 4).unwrap();
        assert!(vanishes_below(&d, &p, 4));
    }
}

#[test]
fn d_hat_degree_zero_is_nabla_hat() {
    let c = raw(2, &[(1, 1, 2, "x2"), (2, 2, 1, "x1")]);
    let xi = TensorField::vector(vec![Poly::parse("x1*x2", 2).unwrap(), Poly::parse("1 - x2", 2).unwrap()]).unwrap();
    let d = c.d_hat(&VectorForm::new(xi.clone()).unwrap());
    assert_eq!(d.tensor(), &c.nabla_hat(&xi));
}

fn sample_form(n: usize, k: usize) -> VectorForm {
    VectorForm::from_sorted(n, n, k, |i, s| {
        let mut p = Poly::constant(n, rat((i + s.iter().sum::<usize>()) as i64 - 2));
        p.add_assign_ref(&Poly::var(n, (i + k) % n).scale(&rat(s[0] as i64 + 1)));
        p.add_assign_ref(&(&Poly::var(n, s[k - 1] % n) * &Poly::var(n, i)));
        p
    })
}

#[test]
fn comparison_formula_on_arbitrary_connection() {
    let c = raw(3, &[(1, 1, 2, "x2"), (2, 2, 1, "x1^2 - 1"), (3, 2, 3, "3*x1*x3"), (1, 3, 3, "x2 - 2")]);
    for k in 1..=3 {
        assert!(llg_core::parallelism::comparison_defect(&c, &sample_form(3, k)).is_zero(), "degree {k}");
    }
}

#[test]
fn janet_property_on_local_lie_frames() {
    for f in [heis(), engel()] {
        let c = f.connection();
        let n = c.dim();
        for k in 1..=2 {
            let w = sample_form(n, k);
            assert!(c.d_hat(&c.d_hat(&w)).is_zero());
        }
        assert!(c.d_hat(&VectorForm::new(c.torsion().field().clone()).unwrap()).is_zero());
    }
    let bad = raw(3, &[(3, 1, 2, "x3")]);
    assert!(!bad.d_hat(&bad.d_hat(&sample_form(3, 1))).is_zero());
}
