//! Gauge deformations of a local Lie group, represented as jets in `t`.
//!
//! Jets are evaluated by treating `t` as the extra polynomial variable with
//! index `n` and truncating every product at `t^{K+1}`. That way the field
//! calculus of [`crate::parallelism`] applies unchanged to `Γ_t`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::index;
use crate::jet::TJet;
use crate::lie_algebra::{class_coordinates, cohomology, derived_algebra, AlgebraicCochain, StructureConstants};
use crate::linalg::RatMatrix;
use crate::matrix::PolyMatrix;
use crate::parallelism::{Connection, Frame};
use crate::poly::Poly;
use crate::rational::{format_rational, ratio, Rational};
use crate::tensor::{TensorField, VectorForm};

/// `f(t, x) = I + Σ_{m≥1} t^m F_m(x)` with its series inverse `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeJet {
    n: usize,
    f: TJet<PolyMatrix>,
    g: TJet<PolyMatrix>,
}

impl GaugeJet {
    pub fn new(f: TJet<PolyMatrix>) -> Result<Self> {
        let c0 = f.coeff(0);
        if c0.rows() != c0.cols() {
            return Err(Error::Invalid("gauge coefficients must be square".into()));
        }
        let n = c0.rows();
        for c in f.coeffs() {
            check_dim(n, c.rows())?;
            check_dim(n, c.cols())?;
            check_dim(n, c.nvars())?;
        }
        if f.order() == 0 {
            return Err(Error::Invalid("gauge jets need order K ≥ 1".into()));
        }
        let g = f.invert()?;
        Ok(GaugeJet { n, f, g })
    }

    /// From `F_1..F_K` (the identity is implied for `t^0`).
    pub fn from_coeffs(n: usize, coeffs: Vec<PolyMatrix>) -> Result<Self> {
        let mut all = vec![PolyMatrix::identity(n, n)];
        all.extend(coeffs);
        Self::new(TJet::new(all)?)
    }

    pub fn identity(n: usize, order: usize) -> Result<Self> {
        Self::from_coeffs(n, vec![PolyMatrix::zero(n, n, n); order])
    }

    /// `exp(tA)` truncated at `t^K`.
    pub fn exp(a: &PolyMatrix, order: usize) -> Result<Self> {
        let n = a.rows();
        let mut coeffs = Vec::with_capacity(order);
        let mut pow = PolyMatrix::identity(n, a.nvars());
        let mut fact = Rational::one();
        for m in 1..=order {
            pow = pow.mul(a);
            fact *= Rational::from_integer((m as i64).into());
            coeffs.push(pow.scale(&(Rational::one() / &fact)));
        }
        Self::from_coeffs(n, coeffs)
    }

    /// `e · exp(tD) · w`: gauges that fix the splitting of `frame`.
    pub fn stabilizer(frame: &Frame, d: &RatMatrix, order: usize) -> Result<Self> {
        let n = frame.dim();
        let base = Self::exp(&PolyMatrix::from_rat(d, n), order)?;
        let coeffs = base.f.coeffs()[1..].iter().map(|c| frame.e().mul(c).mul(frame.w())).collect();
        Self::from_coeffs(n, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }

    pub fn f(&self) -> &TJet<PolyMatrix> {
        &self.f
    }

    pub fn g(&self) -> &TJet<PolyMatrix> {
        &self.g
    }

    /// `F_m`.
    pub fn coeff(&self, m: usize) -> &PolyMatrix {
        self.f.coeff(m)
    }

    pub fn is_identity(&self) -> bool {
        self.f.coeffs()[1..].iter().all(PolyMatrix::is_zero)
    }

    fn f_t(&self) -> PolyMatrix {
        self.f.to_poly_in_t()
    }

    fn g_t(&self) -> PolyMatrix {
        self.g.to_poly_in_t()
    }
}

fn require_base(c: &Connection) -> Result<()> {
    if c.nvars() != c.dim() || c.truncation().is_some() {
        return Err(Error::Invalid("deformations act on a base connection".into()));
    }
    Ok(())
}

/// `(Γ_t)^i_{kj} = ∂_k f^i_a g^a_j + f^i_b Γ^b_{kc} g^c_j`, over `n + 1` variables, truncated at `t^K`.
pub fn act_on_connection(j: &GaugeJet, c: &Connection) -> Result<Connection> {
    require_base(c)?;
    let n = c.dim();
    check_dim(n, j.dim())?;
    let (t, k_max) = (n, j.order() as u32);
    let nv = n + 1;
    let f = j.f_t();
    let g = j.g_t();
    let mut gamma = TensorField::zero(n, nv, 1, 2);
    for k in 0..n {
        let df = f.map(|p| p.diff(k));
        let gk = PolyMatrix::from_rows(
            nv,
            (0..n).map(|b| (0..n).map(|cc| c.g(b, k, cc).with_nvars(nv)).collect()).collect(),
        )?;
        let m = df
            .mul_truncated(&g, t, k_max)
            .add(&f.mul_truncated(&gk, t, k_max).mul_truncated(&g, t, k_max));
        for i in 0..n {
            for jj in 0..n {
                gamma.set(&[i, k, jj], m.get(i, jj).clone());
            }
        }
    }
    let out = Connection::from_table(gamma)?.truncated(t, k_max);
    Ok(if c.is_frame_derived() { out.mark_frame_derived() } else { out })
}

/// `(fε)(x, y) = f(y) ε(x, y) g(x)` as a jet of matrices.
pub fn act_on_splitting(j: &GaugeJet, frame: &Frame, x: &[Rational], y: &[Rational]) -> Result<TJet<RatMatrix>> {
    check_dim(frame.dim(), j.dim())?;
    let eps = frame.splitting(x, y)?;
    let fy = j.f.eval(y)?;
    let gx = j.g.eval(x)?;
    fy.mul(&TJet::constant(eps, j.order()))?.mul(&gx)
}

/// The `p`-based gauge section with `ε₀(p, x) = f(x) ε₁(p, x)`, and its inverse:
/// `f(x) = e₀(x) w₀(p) e₁(p) w₁(x)`.
pub fn gauge_between(f0: &Frame, f1: &Frame, p: &[Rational]) -> Result<(PolyMatrix, PolyMatrix)> {
    let n = f0.dim();
    check_dim(n, f1.dim())?;
    let mid = PolyMatrix::from_rat(&f0.w().eval(p)?.mul(&f1.e().eval(p)?), n);
    let mid_inv = PolyMatrix::from_rat(&f1.w().eval(p)?.mul(&f0.e().eval(p)?), n);
    Ok((f0.e().mul(&mid).mul(f1.w()), f1.e().mul(&mid_inv).mul(f0.w())))
}

/// Checks `ε₀(x, y) = f(y) ε₁(x, y) f(x)^{-1}` at each pair of sample points.
pub fn gauge_conjugates(
    f0: &Frame,
    f1: &Frame,
    f: &PolyMatrix,
    f_inv: &PolyMatrix,
    points: &[Vec<Rational>],
) -> Result<bool> {
    for x in points {
        for y in points {
            let lhs = f0.splitting(x, y)?;
            let rhs = f.eval(y)?.mul(&f1.splitting(x, y)?).mul(&f_inv.eval(x)?);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest `m ≤ K` with the table `≡ 0 mod t^{m+1}`; `None` if the `t^0` part is nonzero.
fn vanishing_order(t: &TensorField, var: usize, k: usize) -> Option<usize> {
    match t.min_degree_in(var) {
        None => Some(k),
        Some(0) => None,
        Some(d) => Some((d as usize - 1).min(k)),
    }
}

fn t_coeff(t: &TensorField, n: usize, m: usize) -> TensorField {
    t.coeff_of_var(n, m as u32).with_nvars(n)
}

/// Contracts upper slots with `f` and lower slots with `g` (the pushforward `(f_t)_*`).
pub fn push_forward(j: &GaugeJet, w: &TensorField) -> TensorField {
    let n = j.dim();
    let nv = n + 1;
    let k = j.order() as u32;
    let (f, g) = (j.f_t(), j.g_t());
    let (r, s) = (w.upper(), w.lower());
    let mut cur = w.with_nvars(nv);
    for slot in 0..r + s {
        let upper = slot < r;
        let prev = cur;
        let mut moved = vec![0; r + s];
        cur = TensorField::from_fn(n, nv, r, s, |idx| {
            moved.copy_from_slice(idx);
            let mut acc = Poly::zero(nv);
            for a in 0..n {
                moved[slot] = a;
                let src = prev.get(&moved);
                if src.is_zero() {
                    continue;
                }
                let m = if upper { f.get(idx[slot], a) } else { g.get(a, idx[slot]) };
                acc.add_assign_ref(&m.mul_truncated(src, n, k));
            }
            acc
        });
    }
    cur
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validity {
    /// Largest `m ≤ K` with `R̂_t ≡ 0 mod t^{m+1}`.
    pub order: usize,
    /// Per `m = 1..K`: `F_m^i_a T^a_{kj} = 0` as polynomials.
    pub constraint_field: Vec<bool>,
    /// Per `m = 1..K`: `F_m(p)^i_a T^a_{kj}(p) = 0`.
    pub constraint_point: Vec<bool>,
    /// Per `m = 1..K`: `F_m(p)` kills a basis of the derived algebra at `p`.
    pub derived_annihilated: Vec<bool>,
}

impl Validity {
    pub fn constraint_holds(&self) -> bool {
        self.constraint_field.iter().all(|&b| b)
    }

    /// The pointwise derivative-constraint verdicts agree with derived-algebra annihilation.
    pub fn constraint_matches_derived(&self) -> bool {
        self.constraint_point == self.derived_annihilated
    }
}

/// Deformation validity through order `K` plus the derivative-constraint verdicts.
pub fn validity(j: &GaugeJet, c: &Connection, p: &[Rational]) -> Result<Validity> {
    require_base(c)?;
    c.require_local_lie()?;
    let n = c.dim();
    let k = j.order();
    let ct = act_on_connection(j, c)?;
    let order = vanishing_order(ct.curvature_hat().field(), n, k).unwrap_or(0);
    let t0 = c.torsion();
    let tf = t0.field();
    let g = t0.localize(p)?;
    let derived = derived_algebra(&g);
    let (mut constraint_field, mut constraint_point, mut derived_annihilated) = (vec![], vec![], vec![]);
    for m in 1..=k {
        let fm = j.coeff(m);
        let field_ok = index::all(n, 3).all(|idx| {
            let (i, kk, jj) = (idx[0], idx[1], idx[2]);
            let mut acc = Poly::zero(n);
            for a in 0..n {
                acc.add_product(fm.get(i, a), tf.get(&[a, kk, jj]));
            }
            acc.is_zero()
        });
        let fp = fm.eval(p)?;
        let point_ok = index::all(n, 3).all(|idx| {
            (0..n)
                .fold(Rational::zero(), |acc, a| acc + fp.get(idx[0], a) * g.c(a, idx[1], idx[2]))
                .is_zero()
        });
        let ann = derived.iter().all(|v| fp.mul_vec(v).iter().all(Zero::is_zero));
        constraint_field.push(field_ok);
        constraint_point.push(point_ok);
        derived_annihilated.push(ann);
    }
    Ok(Validity {
        order,
        constraint_field,
        constraint_point,
        derived_annihilated,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rigidity {
    /// `[g, g] = g`, so every velocity must vanish at `p`.
    pub perfect: bool,
    /// First `m` with `F_m(p) ≠ 0` when the algebra is perfect.
    pub rejected_at: Option<usize>,
}

pub fn semisimple_rigidity(j: &GaugeJet, g: &StructureConstants, p: &[Rational]) -> Result<Rigidity> {
    let perfect = derived_algebra(g).len() == g.dim();
    let mut rejected_at = None;
    if perfect {
        for m in 1..=j.order() {
            if !j.coeff(m).eval(p)?.is_zero() {
                rejected_at = Some(m);
                break;
            }
        }
    }
    Ok(Rigidity { perfect, rejected_at })
}

/// `Δ^i_{jk} = f^i_a T₀^a_{jk} − T_t^i_{ab} f^a_j f^b_k`.
pub fn constancy_defect(j: &GaugeJet, c: &Connection) -> Result<TensorField> {
    let ct = act_on_connection(j, c)?;
    Ok(defect_from(j, c, &ct))
}

fn defect_from(j: &GaugeJet, c: &Connection, ct: &Connection) -> TensorField {
    let n = c.dim();
    let nv = n + 1;
    let k = j.order() as u32;
    let f = j.f_t();
    let t0 = c.torsion().field().with_nvars(nv);
    let tt = ct.torsion();
    let pulled = pull_lower(j, tt.field());
    TensorField::from_fn(n, nv, 1, 2, |idx| {
        let mut acc = Poly::zero(nv);
        for a in 0..n {
            acc.add_assign_ref(&f.get(idx[0], a).mul_truncated(t0.get(&[a, idx[1], idx[2]]), n, k));
        }
        acc.sub_assign_ref(pulled.get(idx));
        acc
    })
}

/// `T^i_{ab} f^a_j f^b_k` (lower slots only).
fn pull_lower(j: &GaugeJet, t: &TensorField) -> TensorField {
    let n = j.dim();
    let nv = n + 1;
    let k = j.order() as u32;
    let f = j.f_t();
    let half = TensorField::from_fn(n, nv, 1, 2, |idx| {
        let mut acc = Poly::zero(nv);
        for b in 0..n {
            acc.add_assign_ref(&t.get(&[idx[0], idx[1], b]).mul_truncated(f.get(b, idx[2]), n, k));
        }
        acc
    });
    TensorField::from_fn(n, nv, 1, 2, |idx| {
        let mut acc = Poly::zero(nv);
        for a in 0..n {
            acc.add_assign_ref(&half.get(&[idx[0], a, idx[2]]).mul_truncated(f.get(a, idx[1]), n, k));
        }
        acc
    })
}

/// The two readings of the deformation curvature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kappa {
    /// `T_t − T₀` at fixed components.
    pub literal: TensorField,
    /// `g · T_t(f, f) − T₀`: the deformed bracket pulled back by `f_t`.
    pub conjugated: TensorField,
}

pub fn kappa(j: &GaugeJet, c: &Connection) -> Result<Kappa> {
    let ct = act_on_connection(j, c)?;
    Ok(kappa_from(j, c, &ct))
}

fn kappa_from(j: &GaugeJet, c: &Connection, ct: &Connection) -> Kappa {
    let n = c.dim();
    let nv = n + 1;
    let k = j.order() as u32;
    let g = j.g_t();
    let t0 = c.torsion().field().with_nvars(nv);
    let tt = ct.torsion().field().clone();
    let pulled = pull_lower(j, &tt);
    let conjugated = TensorField::from_fn(n, nv, 1, 2, |idx| {
        let mut acc = Poly::zero(nv);
        for a in 0..n {
            acc.add_assign_ref(&g.get(idx[0], a).mul_truncated(pulled.get(&[a, idx[1], idx[2]]), n, k));
        }
        acc.sub_assign_ref(t0.get(idx));
        acc
    });
    Kappa {
        literal: tt.sub(&t0),
        conjugated,
    }
}

fn t_derivative(t: &TensorField, var: usize, k: usize) -> TensorField {
    t.diff(var).truncate_var(var, k.saturating_sub(1) as u32)
}

fn at_point(t: &TensorField, p: &[Rational]) -> TensorField {
    t.map(|q| q.eval_prefix(p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstancyConditions {
    pub constant: bool,
    pub kappa_zero: bool,
    pub kappa_zero_at_p: bool,
    pub dkappa_zero: bool,
    pub dkappa_zero_at_p: bool,
}

impl ConstancyConditions {
    pub fn agree(&self) -> bool {
        let v = [self.kappa_zero, self.kappa_zero_at_p, self.dkappa_zero, self.dkappa_zero_at_p];
        v.iter().all(|&b| b == self.constant)
    }
}

/// The five conditions through order `K`, on the conjugated κ.
pub fn constancy_conditions(j: &GaugeJet, c: &Connection, p: &[Rational]) -> Result<ConstancyConditions> {
    let ct = act_on_connection(j, c)?;
    Ok(constancy_from(j, c, &ct, p))
}

fn constancy_from(j: &GaugeJet, c: &Connection, ct: &Connection, p: &[Rational]) -> ConstancyConditions {
    let n = c.dim();
    let k = j.order();
    let kap = kappa_from(j, c, ct).conjugated;
    let dk = t_derivative(&kap, n, k);
    ConstancyConditions {
        constant: defect_from(j, c, ct).is_zero(),
        kappa_zero: kap.is_zero(),
        kappa_zero_at_p: at_point(&kap, p).is_zero(),
        dkappa_zero: dk.is_zero(),
        dkappa_zero_at_p: at_point(&dk, p).is_zero(),
    }
}

/// Invariance of `dκ/dt` (conjugated reading), truncated at `t^{K−1}`:
/// returns `(∇̃₀ dκ/dt, ∇̃_t dκ/dt)`.
pub fn kappa_velocity_defects(j: &GaugeJet, c: &Connection) -> Result<(TensorField, TensorField)> {
    let ct = act_on_connection(j, c)?;
    Ok(kappa_velocity_from(j, c, &ct))
}

fn kappa_velocity_from(j: &GaugeJet, c: &Connection, ct: &Connection) -> (TensorField, TensorField) {
    let n = c.dim();
    let k = j.order();
    let kap = kappa_from(j, c, ct).conjugated;
    let dk = t_derivative(&kap, n, k);
    let cut = (k.saturating_sub(1)) as u32;
    let base_t = Connection::from_table(c.gamma().with_nvars(n + 1))
        .expect("valence preserved")
        .truncated(n, k as u32);
    (
        base_t.nabla_tilde(&dk).truncate_var(n, cut),
        ct.nabla_tilde(&dk).truncate_var(n, cut),
    )
}

/// Kodaira–Spencer cocycle data for `μ = F₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsCocycle {
    pub mu: TensorField,
    /// `d̂₀ μ = 0`.
    pub closed: bool,
    /// `∇̃₀ μ = 0`.
    pub invariant: bool,
}

/// Requires the jet to be constant through order 1.
pub fn ks_cocycle(j: &GaugeJet, c: &Connection) -> Result<KsCocycle> {
    let defect = constancy_defect(j, c)?;
    if vanishing_order(&defect, c.dim(), j.order()).unwrap_or(0) < 1 {
        return Err(Error::Hypothesis("the deformation is not constant through order 1".into()));
    }
    Ok(ks_from(j, c))
}

fn ks_from(j: &GaugeJet, c: &Connection) -> KsCocycle {
    let n = c.dim();
    let f1 = j.coeff(1);
    let mu = TensorField::from_fn(n, n, 1, 1, |idx| f1.get(idx[0], idx[1]).clone());
    let closed = c.d_hat(&VectorForm::wrap_unchecked(mu.clone())).is_zero();
    let invariant = c.nabla_tilde(&mu).is_zero();
    KsCocycle { mu, closed, invariant }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KsClass {
    /// Coordinates in the stored H¹ basis.
    pub coordinates: Vec<String>,
    pub zero: bool,
    /// `η` with `μ(p) − Σ a_h h = D(η)`, 1-based sparse entries.
    pub certificate: Vec<(Vec<usize>, String)>,
}

/// Class of an invariant cocycle, localized at `p`.
pub fn ks_class(mu: &TensorField, g: &StructureConstants, p: &[Rational]) -> Result<KsClass> {
    let n = g.dim();
    let vals = mu.eval(p)?;
    let w = AlgebraicCochain::from_matrix(&RatMatrix::from_rows(
        (0..n).map(|i| vals[i * n..(i + 1) * n].to_vec()).collect(),
    )?);
    let report = cohomology(g, 1)?;
    let (coords, eta) = class_coordinates(g, &report, &w)?;
    Ok(KsClass {
        zero: coords.iter().all(Zero::is_zero),
        coordinates: coords.iter().map(format_rational).collect(),
        certificate: eta.sparse(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramCheck {
    pub degree: usize,
    pub commutes: bool,
}

/// `(f_t)_* d̂₀ ω = d̂_t (f_t)_* ω mod t^{K+1}` on sample forms of degrees 0–2.
/// With a frame the samples are exact invariant forms; otherwise fixed polynomial forms.
pub fn diagram_checks(j: &GaugeJet, c: &Connection, frame: Option<&Frame>, p: &[Rational]) -> Result<Vec<DiagramCheck>> {
    let ct = act_on_connection(j, c)?;
    diagram_from(j, c, &ct, frame, p)
}

fn diagram_from(
    j: &GaugeJet,
    c: &Connection,
    ct: &Connection,
    frame: Option<&Frame>,
    p: &[Rational],
) -> Result<Vec<DiagramCheck>> {
    let n = c.dim();
    let k = j.order() as u32;
    let mut out = Vec::new();
    for degree in 0..=2.min(n) {
        let cochain = AlgebraicCochain::from_sorted(n, degree, |i, s| {
            let v = (3 * i + 5 * s.iter().map(|x| x + 1).sum::<usize>() + degree) % 7;
            ratio(v as i64 - 3, 1 + (i as i64 % 2))
        });
        let consts = TensorField::from_constants(n, n, 1, degree, cochain.table())?;
        let w = match frame {
            Some(fr) => fr.invariant_extension(&consts, p)?,
            None => consts.map(|q| {
                let mut q = q.clone();
                if !q.is_zero() {
                    q.add_assign_ref(&Poly::var(n, 0).scale(&q.constant_term()));
                }
                q
            }),
        };
        let lhs = push_forward(j, c.d_hat(&VectorForm::wrap_unchecked(w.clone())).tensor());
        let rhs = ct.d_hat(&VectorForm::wrap_unchecked(push_forward(j, &w)));
        let diff = lhs.sub(rhs.tensor()).truncate_var(n, k);
        out.push(DiagramCheck {
            degree,
            commutes: diff.is_zero(),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KsReport {
    pub hypothesis_met: bool,
    pub mu: Vec<(Vec<usize>, String)>,
    pub closed: Option<bool>,
    pub invariant: Option<bool>,
    /// `"invariant"` (class in the localized complex), `"janet"` (cocycle only) or `"none"`.
    pub host: String,
    pub class: Option<KsClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub n: usize,
    pub order: usize,
    pub point: Vec<String>,
    pub validity: Validity,
    pub constancy_order: usize,
    pub kappa_conjugated_order: usize,
    /// Per `m = 1..K`, nonzero components of the `t^m` coefficient.
    pub kappa_literal: Vec<Vec<(Vec<usize>, String)>>,
    pub kappa_conjugated: Vec<Vec<(Vec<usize>, String)>>,
    pub constancy: ConstancyConditions,
    /// `∇̃₀(dκ/dt) ≡ 0 mod t^K`.
    pub kappa_velocity_parallel_base: bool,
    /// `∇̃_t(dκ/dt) ≡ 0 mod t^K`.
    pub kappa_velocity_parallel_deformed: bool,
    pub rigidity: Rigidity,
    pub ks: KsReport,
    pub diagram: Vec<DiagramCheck>,
}

impl DeformationReport {
    pub fn is_deformation(&self) -> bool {
        self.validity.order == self.order
    }

    pub fn is_constant(&self) -> bool {
        self.constancy_order == self.order
    }
}

/// Runs every deformation check for one jet over a local-Lie base.
pub fn deformation_report(j: &GaugeJet, c: &Connection, frame: Option<&Frame>, p: &[Rational]) -> Result<DeformationReport> {
    require_base(c)?;
    c.require_local_lie()?;
    let n = c.dim();
    check_dim(n, j.dim())?;
    check_dim(n, p.len())?;
    let k = j.order();
    let ct = act_on_connection(j, c)?;
    let validity = validity(j, c, p)?;
    let defect = defect_from(j, c, &ct);
    let constancy_order = vanishing_order(&defect, n, k).unwrap_or(0);
    let kap = kappa_from(j, c, &ct);
    let kappa_conjugated_order = vanishing_order(&kap.conjugated, n, k).unwrap_or(0);
    let per_order = |t: &TensorField| (1..=k).map(|m| t_coeff(t, n, m).sparse()).collect::<Vec<_>>();
    let (l0, lt) = kappa_velocity_from(j, c, &ct);
    let g = c.torsion().localize(p)?;
    let ks = if constancy_order >= 1 {
        let cy = ks_from(j, c);
        let class = if cy.closed && cy.invariant {
            Some(ks_class(&cy.mu, &g, p)?)
        } else {
            None
        };
        KsReport {
            hypothesis_met: true,
            mu: cy.mu.sparse(),
            closed: Some(cy.closed),
            invariant: Some(cy.invariant),
            host: if !cy.closed {
                "none"
            } else if cy.invariant {
                "invariant"
            } else {
                "janet"
            }
            .into(),
            class,
        }
    } else {
        KsReport {
            hypothesis_met: false,
            mu: vec![],
            closed: None,
            invariant: None,
            host: "none".into(),
            class: None,
        }
    };
    Ok(DeformationReport {
        n,
        order: k,
        point: p.iter().map(format_rational).collect(),
        validity,
        constancy_order,
        kappa_conjugated_order,
        kappa_literal: per_order(&kap.literal),
        kappa_conjugated: per_order(&kap.conjugated),
        constancy: constancy_from(j, c, &ct, p),
        kappa_velocity_parallel_base: l0.is_zero(),
        kappa_velocity_parallel_deformed: lt.is_zero(),
        rigidity: semisimple_rigidity(j, &g, p)?,
        ks,
        diagram: diagram_from(j, c, &ct, frame, p)?,
    })
}
