//! Seeded verification suites. Reports are deterministic for a given seed
//! (no timings, no hash-ordered data), so two runs are byte-identical.

use serde::Serialize;

use crate::char_classes::{closedness, t_power, t_power_field, trace_chain_defect, trace_map};
use crate::deformation::{deformation_report, ks_cocycle, validity, semisimple_rigidity, GaugeJet};
use crate::error::{Error, Result};
use crate::gen::{self, Rng8};
use crate::library::{self, ExampleKind};
use crate::lie_algebra::{cohomology, derived_algebra, differential_d, AlgebraicCochain, StructureConstants};
use crate::linalg::RatMatrix;
use crate::matrix::PolyMatrix;
use crate::parallelism::{comparison_defect, invariant_jet, jacobi_form, Connection, Frame};
use crate::rational::{format_rational, rat, Rational};
use crate::tensor::{TensorField, VectorForm};

/// Deformation order used by the generated jet suites.
pub const JET_ORDER: usize = 3;
/// Unfiltered jets generated per base algebra.
pub const JETS_PER_ALGEBRA: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Complexes,
    Classes,
    Deformations,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "identities" => Suite::Identities,
            "complexes" => Suite::Complexes,
            "classes" => Suite::Classes,
            "deformations" => Suite::Deformations,
            "all" => Suite::All,
            _ => {
                return Err(Error::Invalid(format!(
                    "unknown suite `{s}` (identities, complexes, classes, deformations, all)"
                )))
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Complexes => "complexes",
            Suite::Classes => "classes",
            Suite::Deformations => "deformations",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// Descriptions of failing cases (at most ten).
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Informational counts (e.g. how many jets fell on each side of a verdict).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub stats: Vec<(String, usize)>,
}

impl Section {
    fn new(name: &str, checks: Vec<Check>) -> Self {
        Section {
            name: name.into(),
            passed: checks.iter().all(|c| c.passed),
            checks,
            stats: vec![],
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub sections: Vec<Section>,
}

impl VerifyReport {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }
}

/// Accumulates case verdicts for one check.
struct Tally {
    name: String,
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            name: name.into(),
            cases: 0,
            failures: vec![],
            failed: 0,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 10 {
                self.failures.push(what());
            }
        }
    }

    /// A case that errored counts as a failure.
    fn record_result(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, what),
            Err(e) => {
                let w = what();
                self.record(false, || format!("{w}: {e}"));
            }
        }
    }

    fn finish(self) -> Check {
        Check {
            name: self.name,
            passed: self.failed == 0 && self.cases > 0,
            cases: self.cases,
            failures: self.failures,
        }
    }
}

fn sub_rng(seed: u64, stream: u64) -> Rng8 {
    gen::rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(stream))
}

fn fmt_point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

fn library_frames() -> Vec<(String, Frame)> {
    library::catalog()
        .into_iter()
        .filter(|e| e.kind == ExampleKind::Frame)
        .map(|e| {
            let f = library::frame(&e.name).expect("library frame");
            (e.name, f)
        })
        .collect()
}

/// Library geometries whose connection is a local Lie group.
fn local_lie_geometries() -> Vec<(String, Connection, Option<Frame>)> {
    library::catalog()
        .into_iter()
        .filter(|e| e.kind != ExampleKind::Jet)
        .map(|e| {
            let (c, f) = library::load_geometry(&e.name).expect("library geometry");
            (e.name, c, f)
        })
        .filter(|(_, c, _)| c.is_local_lie_group())
        .collect()
}

/// Identity suite on the named examples and on random polynomial connections.
pub fn identities(seed: u64) -> Section {
    let mut checks = Vec::new();
    for name in ["heisenberg-3", "engel-4"] {
        let f = library::frame(name).expect("library frame");
        let rep = f.connection().identity_suite(Some(&f));
        let mut t = Tally::new(name);
        for c in &rep.checks {
            t.record(c.holds, || format!("{}: {} nonzero components", c.name, c.nonzero_components));
        }
        checks.push(t.finish());
    }
    let mut r = sub_rng(seed, 1);
    let mut t = Tally::new("random-connections");
    for case in 0..27 {
        let n = 2 + case % 3;
        let c = gen::connection(&mut r, n, 2);
        let rep = c.identity_suite(None);
        let bad: Vec<&str> = rep.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
        t.record(bad.is_empty(), || format!("case {case} (n = {n}): {}", bad.join(", ")));
    }
    checks.push(t.finish());
    Section::new("identities", checks)
}

/// `R̃ = 0` for every frame-derived connection.
pub fn frame_flatness(seed: u64) -> Section {
    let mut lib = Tally::new("library-frames");
    for (name, f) in library_frames() {
        lib.record(f.connection().curvature_tilde().is_zero(), || name.clone());
    }
    let mut r = sub_rng(seed, 2);
    let mut rnd = Tally::new("random-unimodular-frames");
    for case in 0..25 {
        let n = 2 + case % 3;
        let f = gen::unimodular_frame(&mut r, n);
        rnd.record(f.connection().curvature_tilde().is_zero(), || format!("case {case} (n = {n})"));
    }
    Section::new("frame-flatness", vec![lib.finish(), rnd.finish()])
}

/// Janet property `d̂∘d̂ = 0` and the comparison formula.
pub fn janet(seed: u64) -> Section {
    let mut r = sub_rng(seed, 3);
    let mut sq = Tally::new("d-hat-squared");
    for (name, c, _) in local_lie_geometries() {
        let n = c.dim();
        for k in 0..=2.min(n) {
            let w = gen::form(&mut r, n, k);
            sq.record(c.d_hat(&c.d_hat(&w)).is_zero(), || format!("{name}, degree {k}"));
        }
    }
    let mut cmp = Tally::new("comparison-formula");
    let mut conns: Vec<(String, Connection)> =
        local_lie_geometries().into_iter().map(|(name, c, _)| (name, c)).collect();
    for case in 0..9 {
        let n = 2 + case % 3;
        conns.push((format!("random {case} (n = {n})"), gen::connection(&mut r, n, 2)));
    }
    for (name, c) in &conns {
        let n = c.dim();
        for k in 1..=3.min(n) {
            let w = gen::form(&mut r, n, k);
            cmp.record(comparison_defect(c, &w).is_zero(), || format!("{name}, degree {k}"));
        }
    }
    Section::new("janet", vec![sq.finish(), cmp.finish()])
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Algebraic cohomology: examples, structural identities and the CE oracle.
pub fn cohomology_suite(seed: u64) -> Section {
    let mut ex = Tally::new("examples");
    for n in 2..=5 {
        let name = format!("abelian-{n}");
        let g = library::algebra(&name).expect("library algebra");
        let rep = cohomology(&g, n);
        ex.record_result(
            rep.map(|rep| rep.consistent() && rep.bettis() == (0..=n).map(|k| n * binomial(n, k)).collect::<Vec<_>>()),
            || name.clone(),
        );
    }
    let expect: [(&str, &[usize]); 2] = [("heisenberg-3", &[1, 4]), ("sl2-3", &[0, 0])];
    for (name, bettis) in expect {
        let g = library::algebra(name).expect("library algebra");
        let rep = cohomology(&g, g.dim());
        ex.record_result(
            rep.map(|rep| rep.consistent() && rep.bettis()[..2] == *bettis),
            || name.to_string(),
        );
    }
    let mut r = sub_rng(seed, 4);
    let mut rnd = Tally::new("random-algebras");
    let mut oracle = Tally::new("ce-oracle");
    for case in 0..24 {
        let n = 2 + case % 3;
        let g = gen::lie_algebra(&mut r, n);
        match cohomology(&g, n) {
            Ok(rep) => {
                rnd.record(rep.consistent() && rep.euler_characteristic == Some(0), || {
                    format!("case {case} (n = {n})")
                });
                for d in &rep.degrees {
                    oracle.record(
                        d.equals_ce && d.rank_d == d.ce_rank && d.kernel_dim == d.ce_kernel_dim,
                        || format!("case {case} (n = {n}), degree {}", d.degree),
                    );
                }
            }
            Err(e) => rnd.record(false, || format!("case {case}: {e}")),
        }
    }
    Section::new("cohomology", vec![ex.finish(), rnd.finish(), oracle.finish()])
}

fn constant_field(n: usize, w: &AlgebraicCochain) -> TensorField {
    TensorField::from_constants(n, n, 1, w.degree(), w.table()).expect("sized table")
}

/// Field-level `d̂` of invariant jets at `p` against `D` of the localized cochain.
pub fn localization(seed: u64) -> Section {
    let mut r = sub_rng(seed, 5);
    let mut jets = Tally::new("invariant-jets");
    let mut exts = Tally::new("invariant-extensions");
    for name in ["heisenberg-3", "engel-4"] {
        let f = library::frame(name).expect("library frame");
        let c = f.connection();
        let n = c.dim();
        for _ in 0..3 {
            let p = gen::point(&mut r, n);
            let g = c.torsion().localize(&p).expect("point in chart");
            for k in 0..=2 {
                let w = gen::cochain(&mut r, n, k);
                let expected = differential_d(&g, &w).expect("Jacobi holds");
                let what = || format!("{name} at {}, degree {k}", fmt_point(&p));
                let at_p = |field: &TensorField| -> Result<bool> {
                    let d = c.d_hat(&VectorForm::new(field.clone())?);
                    Ok(d.tensor().eval(&p)? == expected.table())
                };
                jets.record_result(
                    invariant_jet(&c, &constant_field(n, &w), &p, 2).and_then(|j| at_p(&j)),
                    what,
                );
                exts.record_result(
                    f.invariant_extension(&constant_field(n, &w), &p).and_then(|e| at_p(&e)),
                    what,
                );
            }
        }
    }
    Section::new("localization", vec![jets.finish(), exts.finish()])
}

/// Torsion powers, closedness of `T`, and the trace map.
pub fn classes(seed: u64) -> Section {
    let mut r = sub_rng(seed, 6);
    let mut t2 = Tally::new("t2-equals-jacobi");
    let mut conns: Vec<(String, Connection)> = local_lie_geometries()
        .into_iter()
        .filter(|(_, c, _)| c.dim() >= 3)
        .map(|(name, c, _)| (name, c))
        .collect();
    for case in 0..6 {
        let n = 3 + case % 2;
        conns.push((format!("random {case} (n = {n})"), gen::connection(&mut r, n, 1)));
    }
    for (name, c) in &conns {
        let t = c.torsion();
        t2.record_result(t_power_field(&t, 2).map(|p| p == jacobi_form(&t)), || name.clone());
    }
    let mut even = Tally::new("even-powers-vanish");
    for case in 0..12 {
        let n = 3 + case % 2;
        let g = gen::lie_algebra(&mut r, n);
        let mut k = 2;
        while k < n {
            even.record_result(t_power(&g, k).map(|w| w.is_zero()), || format!("case {case} (n = {n}), T^{k}"));
            k += 2;
        }
    }
    let mut closed = Tally::new("torsion-closed");
    for (name, c, _) in local_lie_geometries() {
        let p = gen::point(&mut r, c.dim());
        closed.record_result(
            closedness(&c, 1, &p).map(|cl| cl.field_closed && cl.point_closed),
            || name.clone(),
        );
    }
    let mut chain = Tally::new("trace-chain-map");
    let mut case = 0;
    while chain.cases < 24 {
        let n = 2 + case % 3;
        let g = gen::lie_algebra(&mut r, n);
        case += 1;
        if !g.is_unimodular() {
            continue;
        }
        for k in 1..n {
            let w = gen::cochain(&mut r, n, k);
            chain.record_result(trace_chain_defect(&g, &w).map(|d| d.is_zero()), || {
                format!("case {case} (n = {n}), degree {k}")
            });
        }
    }
    let mut aff = Tally::new("aff1-trace");
    let (c, _) = library::load_geometry("aff1-2").expect("library geometry");
    let p = vec![rat(0), rat(0)];
    let tr = c
        .torsion()
        .localize(&p)
        .and_then(|g| t_power(&g, 1))
        .and_then(|w| trace_map(&w));
    aff.record_result(tr.map(|tr| *tr.get(&[0]) == rat(1) && *tr.get(&[1]) == rat(0)), || {
        "aff1-2 at the origin".into()
    });
    Section::new(
        "characteristic-classes",
        vec![t2.finish(), even.finish(), closed.finish(), chain.finish(), aff.finish()],
    )
}

/// One base for the generated deformation suites.
struct Base {
    conn: Connection,
    frame: Option<Frame>,
    algebra: StructureConstants,
    point: Vec<Rational>,
}

fn base(name: &str, r: &mut Rng8) -> Base {
    let (conn, frame) = library::load_geometry(name).expect("library geometry");
    let point = gen::point(r, conn.dim());
    let algebra = conn.torsion().localize(&point).expect("point in chart");
    Base {
        conn,
        frame,
        algebra,
        point,
    }
}

/// Constant projector whose kernel is the derived algebra (complemented by coordinate vectors).
fn derived_killer(g: &StructureConstants) -> RatMatrix {
    let n = g.dim();
    let mut basis = derived_algebra(g);
    let d = basis.len();
    for i in 0..n {
        let mut e = vec![rat(0); n];
        e[i] = rat(1);
        basis.push(e);
        if crate::linalg::span_rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    let b = RatMatrix::from_columns(n, &basis);
    let mut keep = RatMatrix::zero(n, n);
    for i in d..n {
        keep.set(i, i, rat(1));
    }
    b.mul(&keep).mul(&b.inverse().expect("basis"))
}

/// A polynomial matrix vanishing at `p`.
fn vanishing_at(r: &mut Rng8, n: usize, p: &[Rational]) -> PolyMatrix {
    let q = gen::poly_matrix(r, n, 2);
    let v = q.eval(p).expect("point in chart");
    q.sub(&PolyMatrix::from_rat(&v, n))
}

/// Unfiltered jets: random, half-projected (velocities kill the derived
/// algebra at `p`), constant exponentials and stabilizers.
fn unfiltered_jets(b: &Base, r: &mut Rng8) -> Vec<GaugeJet> {
    let n = b.conn.dim();
    let proj = PolyMatrix::from_rat(&derived_killer(&b.algebra), n);
    let mut out = Vec::with_capacity(JETS_PER_ALGEBRA);
    for case in 0..JETS_PER_ALGEBRA {
        let jet = match case % 5 {
            0 | 1 => GaugeJet::from_coeffs(n, (0..JET_ORDER).map(|_| gen::poly_matrix(r, n, 1)).collect()),
            2 | 3 => GaugeJet::from_coeffs(
                n,
                (0..JET_ORDER)
                    .map(|_| gen::poly_matrix(r, n, 1).mul(&proj).add(&vanishing_at(r, n, &b.point)))
                    .collect(),
            ),
            _ => match &b.frame {
                Some(f) if case % 10 == 4 => GaugeJet::stabilizer(f, &gen::rat_matrix(r, n, 1), JET_ORDER),
                _ => GaugeJet::exp(&PolyMatrix::from_rat(&gen::rat_matrix(r, n, 1), n), JET_ORDER),
            },
        };
        out.push(jet.expect("identity lead"));
    }
    out
}

/// The identity plus candidate deformations (constant exponentials,
/// stabilizers, derived-killing affine jets, diagonal rescalings) that are
/// valid and satisfy the derivative constraint at field level. On a perfect
/// algebra every candidate collapses to the identity.
fn filtered_jets(b: &Base, r: &mut Rng8) -> Vec<GaugeJet> {
    let n = b.conn.dim();
    let proj = PolyMatrix::from_rat(&derived_killer(&b.algebra), n);
    let mut out = vec![GaugeJet::identity(n, JET_ORDER).expect("identity")];
    for case in 0..24 {
        let jet = match case % 4 {
            0 => GaugeJet::exp(&PolyMatrix::from_rat(&gen::rat_matrix(r, n, 1), n).mul(&proj), JET_ORDER),
            1 => match &b.frame {
                Some(f) => GaugeJet::stabilizer(f, &gen::rat_matrix(r, n, 1), JET_ORDER),
                None => continue,
            },
            2 => GaugeJet::from_coeffs(
                n,
                (0..JET_ORDER).map(|m| if m == 0 { gen::poly_matrix(r, n, 1).mul(&proj) } else { PolyMatrix::zero(n, n, n) }).collect(),
            ),
            _ => {
                let mut d = RatMatrix::zero(n, n);
                d.set(case % n, case % n, rat(1));
                GaugeJet::exp(&PolyMatrix::from_rat(&d, n).mul(&proj), JET_ORDER)
            }
        }
        .expect("identity lead");
        if jet.is_identity() {
            continue;
        }
        if let Ok(v) = validity(&jet, &b.conn, &b.point) {
            if v.order == JET_ORDER && v.constraint_holds() {
                out.push(jet);
            }
        }
    }
    out
}

/// Deformation logic and diagram checks on generated jets over
/// abelian-2, heisenberg-3 and sl2-3.
pub fn deformations(seed: u64) -> (Section, Section) {
    let mut r = sub_rng(seed, 7);
    let mut constraint_iff = Tally::new("derivative-constraint-iff-derived-annihilation");
    let mut rigid = Tally::new("sl2-rigidity");
    let mut constancy = Tally::new("constancy-conditions-agree");
    let mut closed_velocity = Tally::new("velocity-closed-when-constant-to-first-order");
    let mut kappa_velocity = Tally::new("curvature-velocity-invariant");
    let mut diagram = Tally::new("constant-jets-commute");
    let mut stats: Vec<(String, usize)> = Vec::new();

    for name in ["abelian-2", "heisenberg-3", "sl2-3"] {
        let b = base(name, &mut r);
        let (mut constraint_true, mut constraint_false) = (0, 0);
        let jets = unfiltered_jets(&b, &mut r);
        for (idx, j) in jets.iter().enumerate() {
            let what = || format!("{name} jet {idx} at {}", fmt_point(&b.point));
            match validity(j, &b.conn, &b.point) {
                Ok(v) => {
                    constraint_iff.record(v.constraint_matches_derived(), what);
                    for &ok in &v.constraint_point {
                        if ok {
                            constraint_true += 1;
                        } else {
                            constraint_false += 1;
                        }
                    }
                    if name == "sl2-3" {
                        let moves = (1..=j.order()).find(|&m| !j.coeff(m).eval(&b.point).expect("point").is_zero());
                        let verdict = semisimple_rigidity(j, &b.algebra, &b.point);
                        rigid.record_result(
                            verdict.map(|rg| {
                                rg.perfect
                                    && rg.rejected_at == moves
                                    && moves.map_or(true, |m| !v.constraint_point[m - 1])
                            }),
                            what,
                        );
                    }
                }
                Err(e) => constraint_iff.record(false, || format!("{}: {e}", what())),
            }
            match ks_cocycle(j, &b.conn) {
                Ok(ks) => closed_velocity.record(ks.closed, what),
                Err(Error::Hypothesis(_)) => {}
                Err(e) => closed_velocity.record(false, || format!("{}: {e}", what())),
            }
        }
        stats.push((format!("{name}: unfiltered jets"), jets.len()));
        stats.push((format!("{name}: orders satisfying the constraint at p"), constraint_true));
        stats.push((format!("{name}: orders violating the constraint at p"), constraint_false));

        let filtered = filtered_jets(&b, &mut r);
        let mut constant = 0;
        for (idx, j) in filtered.iter().enumerate() {
            let what = || format!("{name} deformation {idx} at {}", fmt_point(&b.point));
            match deformation_report(j, &b.conn, b.frame.as_ref(), &b.point) {
                Ok(rep) => {
                    constancy.record(rep.constancy.agree(), what);
                    kappa_velocity.record(rep.kappa_velocity_parallel_base && rep.kappa_velocity_parallel_deformed, what);
                    if rep.constancy_order >= 1 {
                        closed_velocity.record(rep.ks.closed == Some(true), what);
                    }
                    if rep.is_constant() {
                        constant += 1;
                        for d in &rep.diagram {
                            diagram.record(d.commutes, || format!("{}, degree {}", what(), d.degree));
                        }
                    }
                }
                Err(e) => constancy.record(false, || format!("{}: {e}", what())),
            }
        }
        stats.push((format!("{name}: deformations"), filtered.len()));
        stats.push((format!("{name}: constant deformations"), constant));
    }

    let mut ks = Tally::new("abelian-constant-class");
    ks.record_result(abelian_constant_class(), || "abelian-const-jet".into());

    let mut logic = Section::new(
        "deformation-logic",
        vec![constraint_iff.finish(), rigid.finish(), constancy.finish(), closed_velocity.finish(), kappa_velocity.finish(), ks.finish()],
    );
    logic.stats = stats;
    (logic, Section::new("diagrams", vec![diagram.finish()]))
}

/// The class of `F₁ = A` on the abelian plane is `A` itself, and nonzero.
fn abelian_constant_class() -> Result<bool> {
    let (j, base_name) = library::load_jet("abelian-const-jet")?;
    let (c, frame) = library::load_geometry(base_name)?;
    let p = vec![rat(0); c.dim()];
    let rep = deformation_report(&j, &c, frame.as_ref(), &p)?;
    let class = match (&rep.ks.host[..], &rep.ks.class) {
        ("invariant", Some(class)) => class,
        _ => return Ok(false),
    };
    let g = c.torsion().localize(&p)?;
    let h1 = cohomology(&g, 1)?;
    let reps = &h1.degrees[1].representatives;
    let n = c.dim();
    let mut sum = AlgebraicCochain::zero(n, 1);
    for (coord, h) in class.coordinates.iter().zip(reps) {
        sum = sum.add(&h.scale(&crate::rational::parse_rational(coord)?));
    }
    let a = AlgebraicCochain::from_matrix(&j.coeff(1).eval(&p)?);
    Ok(!class.zero && sum == a && rep.is_constant())
}

/// Runs a suite.
pub fn run(suite: Suite, seed: u64) -> VerifyReport {
    let mut sections = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        sections.push(identities(seed));
        sections.push(frame_flatness(seed));
    }
    if matches!(suite, Suite::Complexes | Suite::All) {
        sections.push(janet(seed));
        sections.push(cohomology_suite(seed));
        sections.push(localization(seed));
    }
    if matches!(suite, Suite::Classes | Suite::All) {
        sections.push(classes(seed));
    }
    if matches!(suite, Suite::Deformations | Suite::All) {
        let (logic, diagrams) = deformations(seed);
        sections.push(logic);
        sections.push(diagrams);
    }
    VerifyReport {
        suite: suite.name().into(),
        seed,
        passed: sections.iter().all(|s| s.passed),
        sections,
    }
}
