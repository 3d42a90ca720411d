//! Seeded random inputs for the property suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::index;
use crate::lie_algebra::{AlgebraicCochain, StructureConstants};
use crate::library;
use crate::linalg::RatMatrix;
use crate::matrix::PolyMatrix;
use crate::parallelism::{Connection, Frame};
use crate::poly::Poly;
use crate::rational::{rat, Rational};
use crate::tensor::{TensorField, VectorForm};

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(r: &mut Rng8, bound: i64) -> Rational {
    rat(r.gen_range(-bound..=bound))
}

fn nonzero_small(r: &mut Rng8, bound: i64) -> Rational {
    loop {
        let v = r.gen_range(-bound..=bound);
        if v != 0 {
            return rat(v);
        }
    }
}

/// Up to `terms` monomials of total degree ≤ `degree` in the first `nvars_used` variables.
pub fn poly(r: &mut Rng8, nvars: usize, nvars_used: usize, degree: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let mut e = vec![0u32; nvars];
        let d = r.gen_range(0..=degree);
        for _ in 0..d {
            e[r.gen_range(0..nvars_used)] += 1;
        }
        p.add_assign_ref(&Poly::monomial(nvars, e, nonzero_small(r, 3)));
    }
    p
}

/// Random polynomial connection table with entries of degree ≤ `degree`.
pub fn connection(r: &mut Rng8, n: usize, degree: u32) -> Connection {
    let g = TensorField::from_fn(n, n, 1, 2, |_| {
        if r.gen_bool(0.35) {
            poly(r, n, n, degree, 2)
        } else {
            Poly::zero(n)
        }
    });
    Connection::from_table(g).expect("valence (1,2)")
}

/// Product of elementary factors `I + p E_ij` (determinant 1, polynomial inverse).
pub fn unimodular_frame(r: &mut Rng8, n: usize) -> Frame {
    let mut e = PolyMatrix::identity(n, n);
    for _ in 0..3 {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut f = PolyMatrix::identity(n, n);
        f.set(i, j, poly(r, n, n, 2, 2));
        e = e.mul(&f);
    }
    Frame::new(e, None).expect("unimodular by construction")
}

/// Unit lower times unit upper triangular integer matrix.
pub fn unimodular_basis_change(r: &mut Rng8, n: usize) -> RatMatrix {
    let mut l = RatMatrix::identity(n);
    let mut u = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, small(r, 2));
            u.set(j, i, small(r, 2));
        }
    }
    l.mul(&u)
}

fn seed_algebras(n: usize) -> Vec<StructureConstants> {
    let a = |s: &str| library::algebra(s).expect("library algebra");
    let sum = |x: StructureConstants, y: StructureConstants| x.direct_sum(&y).expect("direct sum");
    match n {
        2 => vec![a("abelian-2"), a("aff1-2")],
        3 => vec![a("abelian-3"), a("heisenberg-3"), a("sl2-3"), a("so3-3"), extend(a("aff1-2"), 1)],
        4 => {
            vec![
                a("abelian-4"),
                extend(a("sl2-3"), 1),
                extend(a("heisenberg-3"), 1),
                a("engel-4"),
                sum(a("aff1-2"), a("aff1-2")),
                extend(a("so3-3"), 1),
            ]
        }
        _ => vec![StructureConstants::abelian(n).expect("n ≥ 2")],
    }
}

/// `g ⊕ ℝ^m`.
fn extend(g: StructureConstants, m: usize) -> StructureConstants {
    let n = g.dim() + m;
    let entries = g.entries();
    StructureConstants::from_entries(n, &entries).expect("embedded constants")
}

/// A Lie algebra from the seed list in a random unimodular basis.
pub fn lie_algebra(r: &mut Rng8, n: usize) -> StructureConstants {
    let seeds = seed_algebras(n);
    let g = seeds.choose(r).expect("nonempty seeds").clone();
    g.change_basis(&unimodular_basis_change(r, n)).expect("invertible change")
}

/// Antisymmetric constants with no Jacobi guarantee.
pub fn antisymmetric_constants(r: &mut Rng8, n: usize) -> StructureConstants {
    let mut entries = Vec::new();
    for i in 0..n {
        for s in index::increasing(n, 2) {
            if r.gen_bool(0.4) {
                entries.push((i, s[0], s[1], small(r, 2)));
            }
        }
    }
    StructureConstants::from_entries(n, &entries).expect("in range")
}

pub fn cochain(r: &mut Rng8, n: usize, degree: usize) -> AlgebraicCochain {
    AlgebraicCochain::from_sorted(n, degree, |_, _| small(r, 3))
}

/// Polynomial vector-valued form with entries of degree ≤ 2.
pub fn form(r: &mut Rng8, n: usize, degree: usize) -> VectorForm {
    VectorForm::from_sorted(n, n, degree, |_, _| poly(r, n, n, 2, 2))
}

pub fn point(r: &mut Rng8, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small(r, 2)).collect()
}

/// Random constant matrix with entries in `[-b, b]`.
pub fn rat_matrix(r: &mut Rng8, n: usize, b: i64) -> RatMatrix {
    let mut m = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, small(r, b));
        }
    }
    m
}

/// Random polynomial matrix with sparse entries of degree ≤ `degree`.
pub fn poly_matrix(r: &mut Rng8, n: usize, degree: u32) -> PolyMatrix {
    let mut m = PolyMatrix::zero(n, n, n);
    for i in 0..n {
        for j in 0..n {
            if r.gen_bool(0.4) {
                m.set(i, j, poly(r, n, n, degree, 2));
            }
        }
    }
    m
}
