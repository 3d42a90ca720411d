//! Fixed-seed fixtures for the criterion benches.

use llg_core::deformation::GaugeJet;
use llg_core::rational::rat;
use llg_core::{gen, library, Connection, Frame, Poly, Rational, StructureConstants};

pub const SEED: u64 = 2024;

/// Two dense-ish random polynomials in `nvars` variables.
pub fn polys(nvars: usize, degree: u32, terms: usize) -> (Poly, Poly) {
    let mut r = gen::rng(SEED);
    (gen::poly(&mut r, nvars, nvars, degree, terms), gen::poly(&mut r, nvars, nvars, degree, terms))
}

/// A random polynomial connection of dimension `n`.
pub fn connection(n: usize) -> Connection {
    gen::connection(&mut gen::rng(SEED), n, 2)
}

/// A random Lie algebra of dimension `n`.
pub fn algebra(n: usize) -> StructureConstants {
    gen::lie_algebra(&mut gen::rng(SEED), n)
}

/// A library frame, its connection and the origin.
pub fn frame(name: &str) -> (Frame, Connection, Vec<Rational>) {
    let f = library::frame(name).expect("library frame");
    let c = f.connection();
    let p = vec![rat(0); c.dim()];
    (f, c, p)
}

/// A library jet, its base geometry and the origin.
pub fn jet(name: &str) -> (GaugeJet, Connection, Option<Frame>, Vec<Rational>) {
    let (j, base) = library::load_jet(name).expect("library jet");
    let (c, f) = library::load_geometry(base).expect("library base");
    let p = vec![rat(0); c.dim()];
    (j, c, f, p)
}
