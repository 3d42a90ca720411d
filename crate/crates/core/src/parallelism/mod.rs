//! Frames, the induced connection, both covariant derivatives, torsion,
//! curvatures and the operators d̂ and [∇̃] on vector-valued forms.
//!
//! Index conventions (all 0-based in code):
//! - `Γ^i_{kj}` is stored at `[i, k, j]`; in ∇̃ the differentiation index is
//!   the first lower slot, in ∇̂ the second.
//! - ∇̃ and ∇̂ add the new derivative slot as the FIRST lower index.
//! - `T^i_{jk} = Γ^i_{jk} − Γ^i_{kj}`.
//! - curvatures are stored at `[i, r, j, k]` for `R^i_{rj,k}`.
//!
//! Sign convention: `∇̃_l ξ^i = ∂_l ξ^i − Γ^i_{la} ξ^a` on vectors and
//! `+Γ^a_{lj} ξ_a` on covector slots — the opposite of the usual
//! tensor-calculus convention, so that frame fields are parallel.

mod analysis;
mod calculus;
mod identities;
mod jets;

pub use analysis::{analyze, AnalysisReport};
pub use calculus::{
    algebraic_bracket, apply_curvature, comparison_defect, directional, jacobi_form,
    lie_bracket_fields, torsion_reduction, torsion_value_term,
};
pub use identities::{probe_fields, IdentityCheck, IdentityReport};
pub use jets::{hat_invariant_jet, invariant_jet, lie_derivative_defect, vanishes_below};

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::index;
use crate::lie_algebra::StructureConstants;
use crate::linalg::RatMatrix;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::tensor::TensorField;

/// A polynomial frame `e` (column `a` = frame field `e_a`) with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    e: PolyMatrix,
    w: PolyMatrix,
}

impl Frame {
    /// Verifies `e·w = w·e = I`. Without an explicit inverse, one is computed
    /// via the adjugate, which needs `det e` to be a nonzero constant.
    pub fn new(e: PolyMatrix, w: Option<PolyMatrix>) -> Result<Self> {
        if e.rows() != e.cols() {
            return Err(Error::SingularFrame("frame matrix is not square".into()));
        }
        check_dim(e.rows(), e.nvars())?;
        let w = match w {
            Some(w) => w,
            None => e.inverse_if_unimodular()?,
        };
        check_dim(e.rows(), w.rows())?;
        check_dim(e.cols(), w.cols())?;
        check_dim(e.nvars(), w.nvars())?;
        if !e.mul(&w).is_identity() || !w.mul(&e).is_identity() {
            return Err(Error::SingularFrame("e·w ≠ identity".into()));
        }
        Ok(Frame { e, w })
    }

    pub fn identity(n: usize) -> Self {
        Frame {
            e: PolyMatrix::identity(n, n),
            w: PolyMatrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.e.rows()
    }

    pub fn e(&self) -> &PolyMatrix {
        &self.e
    }

    pub fn w(&self) -> &PolyMatrix {
        &self.w
    }

    /// Frame field `e_a` as a vector field.
    pub fn column(&self, a: usize) -> TensorField {
        TensorField::vector((0..self.dim()).map(|i| self.e.get(i, a).clone()).collect())
            .expect("frame columns share one chart")
    }

    /// `Γ^i_{kj} = (∂_k e^i_a) w^a_j`, so that every frame field is ∇̃-parallel.
    pub fn connection(&self) -> Connection {
        let n = self.dim();
        let gamma = TensorField::from_fn(n, n, 1, 2, |idx| {
            let (i, k, j) = (idx[0], idx[1], idx[2]);
            let mut acc = Poly::zero(n);
            for a in 0..n {
                acc.add_product(&self.e.get(i, a).diff(k), self.w.get(a, j));
            }
            acc
        });
        Connection {
            gamma,
            frame_derived: true,
            trunc: None,
        }
    }

    /// `ε(x, y) = e(y)·w(x)`.
    pub fn splitting(&self, x: &[Rational], y: &[Rational]) -> Result<RatMatrix> {
        Ok(self.e.eval(y)?.mul(&self.w.eval(x)?))
    }

    /// The ε-invariant extension of a constant tensor given at `p`:
    /// upper slots are moved by `ε(p, x)`, lower slots by `ε(x, p)`.
    pub fn invariant_extension(&self, xi_p: &TensorField, p: &[Rational]) -> Result<TensorField> {
        let n = self.dim();
        check_dim(n, xi_p.dim())?;
        check_dim(n, p.len())?;
        let vals = xi_p.eval(p)?;
        // forward(x) = e(x) w(p), backward(x) = e(p) w(x)
        let fwd = self.e.mul(&PolyMatrix::from_rat(&self.w.eval(p)?, n));
        let bwd = PolyMatrix::from_rat(&self.e.eval(p)?, n).mul(&self.w);
        let (r, s) = (xi_p.upper(), xi_p.lower());
        let mut out = TensorField::zero(n, n, r, s);
        for (pos, v) in vals.iter().enumerate() {
            if num_traits::Zero::is_zero(v) {
                continue;
            }
            let src = index::unflat(pos, n, r + s);
            for dst in index::all(n, r + s) {
                let mut term = Poly::constant(n, v.clone());
                for slot in 0..r {
                    term = &term * fwd.get(dst[slot], src[slot]);
                }
                for slot in r..r + s {
                    term = &term * bwd.get(src[slot], dst[slot]);
                }
                if !term.is_zero() {
                    let mut cur = out.get(&dst).clone();
                    cur.add_assign_ref(&term);
                    out.set(&dst, cur);
                }
            }
        }
        Ok(out)
    }
}

/// Connection components `Γ^i_{kj}`, stored as a valence-(1,2) table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    gamma: TensorField,
    frame_derived: bool,
    /// `(var, max)`: every product is truncated at `var^max` (jets in t).
    trunc: Option<(usize, u32)>,
}

impl Connection {
    /// Accepts any table; such a connection is a "parallelism candidate".
    pub fn from_table(gamma: TensorField) -> Result<Self> {
        if (gamma.upper(), gamma.lower()) != (1, 2) {
            return Err(Error::Invalid(format!(
                "connection table must have valence (1,2), found ({},{})",
                gamma.upper(),
                gamma.lower()
            )));
        }
        if gamma.nvars() < gamma.dim() {
            return Err(Error::DimensionMismatch {
                expected: gamma.dim(),
                found: gamma.nvars(),
            });
        }
        Ok(Connection {
            gamma,
            frame_derived: false,
            trunc: None,
        })
    }

    pub fn zero(n: usize) -> Self {
        Connection {
            gamma: TensorField::zero(n, n, 1, 2),
            frame_derived: false,
            trunc: None,
        }
    }

    /// Products computed by this connection drop powers of `var` above `max`.
    pub fn truncated(mut self, var: usize, max: u32) -> Self {
        self.trunc = Some((var, max));
        self.gamma = self.gamma.truncate_var(var, max);
        self
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn nvars(&self) -> usize {
        self.gamma.nvars()
    }

    pub fn gamma(&self) -> &TensorField {
        &self.gamma
    }

    /// `Γ^i_{kj}`.
    pub fn g(&self, i: usize, k: usize, j: usize) -> &Poly {
        self.gamma.get(&[i, k, j])
    }

    pub fn is_frame_derived(&self) -> bool {
        self.frame_derived
    }

    pub fn truncation(&self) -> Option<(usize, u32)> {
        self.trunc
    }

    pub(crate) fn mark_frame_derived(mut self) -> Self {
        self.frame_derived = true;
        self
    }

    /// `R̂ = 0` (decides the local-Lie-group property), cross-checked with
    /// `∇̃T = 0`; `R̃ = 0` is reported separately.
    pub fn local_lie_verdict(&self) -> LocalLieVerdict {
        let rt = self.curvature_tilde();
        let rh = self.curvature_hat();
        let nt = self.nabla_tilde(self.torsion().field());
        LocalLieVerdict {
            tilde_flat: rt.is_zero(),
            hat_flat: rh.is_zero(),
            nabla_t_zero: nt.is_zero(),
            hat_curvature_nonzero: rh
                .field()
                .nonzero()
                .into_iter()
                .filter(|(idx, _)| idx[1] < idx[2])
                .map(|(idx, p)| (idx.iter().map(|i| i + 1).collect(), p.to_string()))
                .collect(),
        }
    }

    pub fn is_local_lie_group(&self) -> bool {
        self.curvature_hat().is_zero()
    }

    /// `Err(NotLocalLie)` listing how many `R̂` components survive.
    pub fn require_local_lie(&self) -> Result<()> {
        let nonzero = self.local_lie_verdict().hat_curvature_nonzero;
        if nonzero.is_empty() {
            return Ok(());
        }
        let listed: Vec<String> = nonzero.iter().take(4).map(|(i, p)| format!("R̂{i:?} = {p}")).collect();
        Err(Error::NotLocalLie(format!("{} nonzero R̂ components: {}", nonzero.len(), listed.join(", "))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalLieVerdict {
    pub tilde_flat: bool,
    pub hat_flat: bool,
    pub nabla_t_zero: bool,
    /// Independent nonzero `R̂^i_{rj,k}` (r < j), 1-based indices.
    pub hat_curvature_nonzero: Vec<(Vec<usize>, String)>,
}

impl LocalLieVerdict {
    pub fn is_local_lie_group(&self) -> bool {
        self.hat_flat
    }

    /// When R̃ = 0 the two criteria are equivalent.
    pub fn consistent(&self) -> bool {
        !self.tilde_flat || self.hat_flat == self.nabla_t_zero
    }
}

/// `T^i_{jk}`, antisymmetric in its lower pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torsion(TensorField);

impl Torsion {
    pub fn new(t: TensorField) -> Result<Self> {
        if (t.upper(), t.lower()) != (1, 2) || !t.has_antisymmetric_tail(2) {
            return Err(Error::NotAntisymmetric("torsion table".into()));
        }
        Ok(Torsion(t))
    }

    pub fn field(&self) -> &TensorField {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Structure constants `c^i_{jk} = T^i_{jk}(p)` with a Jacobi verdict.
    pub fn localize(&self, p: &[Rational]) -> Result<StructureConstants> {
        let vals = self.0.eval(p)?;
        StructureConstants::from_table(self.dim(), vals)
    }
}

/// `R^i_{rj,k}` stored at `[i, r, j, k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curvature(TensorField);

impl Curvature {
    pub fn field(&self) -> &TensorField {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `R^i_{rj,k}`.
    pub fn get(&self, i: usize, r: usize, j: usize, k: usize) -> &Poly {
        self.0.get(&[i, r, j, k])
    }
}
