//! One-shot report on a connection: tensors, local-Lie verdict, identity
//! suite and the structure constants at a point.

use serde::Serialize;

use super::{Connection, Frame, IdentityReport, LocalLieVerdict};
use crate::error::{check_dim, Result};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub point: Vec<String>,
    pub frame_derived: bool,
    /// Nonzero `Γ^i_{kj}` at `(i, k, j)`, 1-based.
    pub gamma: Vec<(Vec<usize>, String)>,
    /// Nonzero `T^i_{jk}`.
    pub torsion: Vec<(Vec<usize>, String)>,
    /// Nonzero `R̃^i_{rj,k}` at `(i, r, j, k)`.
    pub curvature_tilde: Vec<(Vec<usize>, String)>,
    pub curvature_hat: Vec<(Vec<usize>, String)>,
    pub local_lie_group: bool,
    pub verdict: LocalLieVerdict,
    pub identities: IdentityReport,
    /// Nonzero `c^i_{jk} = T^i_{jk}(p)` with `j < k`.
    pub structure_constants: Vec<(Vec<usize>, String)>,
    pub jacobi_at_point: bool,
}

pub fn analyze(c: &Connection, frame: Option<&Frame>, p: &[Rational]) -> Result<AnalysisReport> {
    let n = c.dim();
    check_dim(n, p.len())?;
    let t = c.torsion();
    let g = t.localize(p)?;
    let verdict = c.local_lie_verdict();
    Ok(AnalysisReport {
        n,
        point: p.iter().map(format_rational).collect(),
        frame_derived: c.is_frame_derived(),
        gamma: c.gamma().sparse(),
        torsion: t.field().sparse(),
        curvature_tilde: c.curvature_tilde().field().sparse(),
        curvature_hat: c.curvature_hat().field().sparse(),
        local_lie_group: verdict.is_local_lie_group(),
        verdict,
        identities: c.identity_suite(frame),
        structure_constants: g
            .entries()
            .into_iter()
            .map(|(i, j, k, v)| (vec![i + 1, j + 1, k + 1], format_rational(&v)))
            .collect(),
        jacobi_at_point: g.jacobi_holds(),
    })
}
