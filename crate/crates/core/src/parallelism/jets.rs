//! Taylor jets of invariant extensions, computed by radial recursion.
//!
//! In coordinates `u = x − p`, a solution of `∂_l ξ = L_l ξ` has
//! homogeneous parts `ξ_{d+1} = (1/(d+1)) Σ_l u^l [L_l ξ_{≤d}]_d`
//! (Euler's identity). When the system is integrable the result is the
//! Taylor polynomial of the unique solution through `p`.

use super::calculus::{directional, lie_bracket_fields};
use super::Connection;
use crate::error::{check_dim, Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::tensor::TensorField;

/// Degree-`order` jet at `p` of the ∇̃-parallel extension of `xi_p`
/// (a constant tensor; its components are read at `p`).
pub fn invariant_jet(
    conn: &Connection,
    xi_p: &TensorField,
    p: &[Rational],
    order: usize,
) -> Result<TensorField> {
    jet(conn, xi_p, p, order, false)
}

/// Same for ∇̂ (right-invariant fields, Θ̂).
pub fn hat_invariant_jet(
    conn: &Connection,
    xi_p: &TensorField,
    p: &[Rational],
    order: usize,
) -> Result<TensorField> {
    jet(conn, xi_p, p, order, true)
}

fn jet(conn: &Connection, xi_p: &TensorField, p: &[Rational], order: usize, hat: bool) -> Result<TensorField> {
    let n = conn.dim();
    if conn.nvars() != n || conn.truncation().is_some() {
        return Err(Error::Invalid("invariant jets need a base connection".into()));
    }
    check_dim(n, xi_p.dim())?;
    check_dim(n, p.len())?;
    let vals = xi_p.eval(p)?;
    let (r, s) = (xi_p.upper(), xi_p.lower());
    let gamma_u = Connection::from_table(conn.gamma().map(|q| q.translate(p)))?;
    let gam = |a: usize, l: usize, b: usize| {
        if hat {
            gamma_u.g(a, b, l)
        } else {
            gamma_u.g(a, l, b)
        }
    };
    let mut xi = TensorField::from_constants(n, n, r, s, &vals)?;
    for d in 0..order {
        let mut moved = vec![0; r + s];
        let next = TensorField::from_fn(n, n, r, s, |idx| {
            let mut acc = Poly::zero(n);
            for l in 0..n {
                let mut ll = Poly::zero(n);
                moved.copy_from_slice(idx);
                for q in 0..r {
                    for a in 0..n {
                        moved[q] = a;
                        ll.add_product(gam(idx[q], l, a), xi.get(&moved));
                    }
                    moved[q] = idx[q];
                }
                for q in r..r + s {
                    for a in 0..n {
                        moved[q] = a;
                        ll.sub_assign_ref(&(gam(a, l, idx[q]) * xi.get(&moved)));
                    }
                    moved[q] = idx[q];
                }
                let part = ll.homogeneous_part(d as u32);
                if !part.is_zero() {
                    acc.add_product(&Poly::var(n, l), &part);
                }
            }
            acc.scale(&Rational::new(1.into(), ((d + 1) as i64).into()))
        });
        xi = xi.add(&next);
    }
    let back: Vec<Rational> = p.iter().map(|v| -v.clone()).collect();
    Ok(xi.map(|q| q.translate(&back)))
}

/// Whether every component vanishes to total order `order` at `p`
/// (all Taylor terms of degree `< order` are zero).
pub fn vanishes_below(t: &TensorField, p: &[Rational], order: usize) -> bool {
    t.comps().iter().all(|q| {
        let shifted = q.translate(p);
        let ok = shifted.terms().all(|(e, _)| e.iter().sum::<u32>() as usize >= order);
        ok
    })
}

/// `[X, η] − ∇̃_X η` for `X` the ∇̂-parallel jet of `x_p`; vanishes to
/// order `order` at `p` when R̂ = 0.
pub fn lie_derivative_defect(
    conn: &Connection,
    x_p: &TensorField,
    eta: &TensorField,
    p: &[Rational],
    order: usize,
) -> Result<TensorField> {
    let x = hat_invariant_jet(conn, x_p, p, order)?;
    let lie = lie_bracket_fields(&x, eta)?;
    let cov = directional(&conn.nabla_tilde(eta), &x);
    Ok(lie.sub(&cov))
}
