use criterion::{black_box, criterion_group, criterion_main, Criterion};

use llg_bench as fx;
use llg_core::char_classes::classes_report;
use llg_core::deformation::deformation_report;
use llg_core::lie_algebra::cohomology;

fn poly_mul(c: &mut Criterion) {
    let (a, b) = fx::polys(4, 4, 12);
    c.bench_function("poly_mul_4vars", |bn| bn.iter(|| black_box(&a) * black_box(&b)));
}

fn identities(c: &mut Criterion) {
    let (f, conn, _) = fx::frame("engel-4");
    c.bench_function("identity_suite_engel4", |bn| bn.iter(|| conn.identity_suite(Some(&f))));
    let random = fx::connection(3);
    c.bench_function("identity_suite_random3", |bn| bn.iter(|| random.identity_suite(None)));
}

fn lie_cohomology(c: &mut Criterion) {
    let g = fx::algebra(4);
    c.bench_function("cohomology_random4", |bn| bn.iter(|| cohomology(&g, 4).unwrap()));
    let (_, conn, p) = fx::frame("heisenberg-3");
    c.bench_function("classes_heisenberg3", |bn| bn.iter(|| classes_report(&conn, &p).unwrap()));
}

fn deformation(c: &mut Criterion) {
    let (j, conn, f, p) = fx::jet("abelian-const-jet");
    c.bench_function("deformation_report_abelian", |bn| {
        bn.iter(|| deformation_report(&j, &conn, f.as_ref(), &p).unwrap())
    });
}

criterion_group!(benches, poly_mul, identities, lie_cohomology, deformation);
criterion_main!(benches);
