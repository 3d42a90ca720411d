//! Structure constants, the localized algebraic complex and its cohomology.
//!
//! The differential `D` is the localization of the Janet operator on
//! invariant forms (every Γ-term reduced to torsion):
//!
//! `D(ω)^i_{x0..xk} = −[c^i_{a x0} ω^a_{x1..xk}]_{[x0..xk]}
//!                    − Σ_{u<v} (−1)^{u+v+1} c^a_{x_u x_v} ω^i_{a, x without u,v}`
//!
//! with first-index alternation. It coincides with the textbook
//! Chevalley–Eilenberg differential with adjoint coefficients, which is
//! implemented separately from the bracket as an oracle.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::index;
use crate::linalg::{span_rank, RatMatrix};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    c: Vec<Rational>,
    jacobi_violation: Option<(usize, usize, usize)>,
}

impl StructureConstants {
    /// Full table `c[i][j][k] = c^i_{jk}` in row-major order.
    pub fn from_table(n: usize, c: Vec<Rational>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("structure constants need dimension ≥ 2".into()));
        }
        check_dim(n * n * n, c.len())?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c[index::flat(&[i, j, k], n)] != -c[index::flat(&[i, k, j], n)].clone() {
                        return Err(Error::NotAntisymmetric(format!(
                            "c^{}_{{{}{}}}",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        let mut g = StructureConstants {
            n,
            c,
            jacobi_violation: None,
        };
        g.jacobi_violation = g.find_jacobi_violation();
        Ok(g)
    }

    /// From entries `(i, j, k, c^i_{jk})` (0-based) with `j < k`; the
    /// antisymmetric partners are implied.
    pub fn from_entries(n: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut c = vec![Rational::zero(); n * n * n];
        for (i, j, k, v) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= n || j >= n || k >= n {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j).max(k),
                    bound: n,
                });
            }
            if j >= k {
                return Err(Error::Invalid(format!(
                    "structure constant entries must have j < k, got ({}, {}, {})",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            c[index::flat(&[i, j, k], n)] += v;
            c[index::flat(&[i, k, j], n)] -= v;
        }
        Self::from_table(n, c)
    }

    pub fn abelian(n: usize) -> Result<Self> {
        Self::from_table(n, vec![Rational::zero(); n * n * n])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `c^i_{jk}`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn table(&self) -> &[Rational] {
        &self.c
    }

    /// Nonzero `(i, j, k, value)` with `j < k`, 0-based.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for s in index::increasing(n, 2) {
                let v = self.c(i, s[0], s[1]);
                if !v.is_zero() {
                    out.push((i, s[0], s[1], v.clone()));
                }
            }
        }
        out
    }

    pub fn jacobi_holds(&self) -> bool {
        self.jacobi_violation.is_none()
    }

    /// First basis triple `(x, y, z)`, 0-based, where Jacobi fails.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        self.jacobi_violation
    }

    pub fn require_jacobi(&self) -> Result<()> {
        match self.jacobi_violation {
            None => Ok(()),
            Some((x, y, z)) => Err(Error::JacobiViolated {
                i: x + 1,
                j: y + 1,
                k: z + 1,
            }),
        }
    }

    fn find_jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for s in index::increasing(n, 3) {
            let (x, y, z) = (s[0], s[1], s[2]);
            for i in 0..n {
                let mut acc = Rational::zero();
                for b in 0..n {
                    acc += self.c(i, x, b) * self.c(b, y, z);
                    acc += self.c(i, z, b) * self.c(b, x, y);
                    acc += self.c(i, y, b) * self.c(b, z, x);
                }
                if !acc.is_zero() {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = Rational::zero();
                for a in 0..n {
                    if u[a].is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        if !v[b].is_zero() {
                            acc += self.c(i, a, b) * &u[a] * &v[b];
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Constants in the basis `f_j = Σ_i P^i_j e_i`:
    /// `c'(x, y) = P^{-1} c(P x, P y)`.
    pub fn change_basis(&self, p: &RatMatrix) -> Result<Self> {
        let n = self.n;
        check_dim(n, p.rows())?;
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::Invalid("change of basis is singular".into()))?;
        let mut out = vec![Rational::zero(); n * n * n];
        for j in 0..n {
            for k in 0..n {
                let br = self.bracket(&p.column(j), &p.column(k));
                let v = pinv.mul_vec(&br);
                for i in 0..n {
                    out[index::flat(&[i, j, k], n)] = v[i].clone();
                }
            }
        }
        Self::from_table(n, out)
    }

    pub fn direct_sum(&self, other: &StructureConstants) -> Result<Self> {
        let (a, b) = (self.n, other.n);
        let n = a + b;
        let mut c = vec![Rational::zero(); n * n * n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    c[index::flat(&[i, j, k], n)] = self.c(i, j, k).clone();
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    c[index::flat(&[a + i, a + j, a + k], n)] = other.c(i, j, k).clone();
                }
            }
        }
        Self::from_table(n, c)
    }

    /// `tr ad_x = 0` for every `x`.
    pub fn is_unimodular(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| (0..n).fold(Rational::zero(), |acc, a| acc + self.c(a, x, a)).is_zero())
    }
}

/// A `T_p`-valued alternating `k`-form: components `ω^i_{j1..jk}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicCochain {
    n: usize,
    degree: usize,
    comps: Vec<Rational>,
}

impl AlgebraicCochain {
    pub fn zero(n: usize, degree: usize) -> Self {
        AlgebraicCochain {
            n,
            degree,
            comps: vec![Rational::zero(); n.pow(degree as u32 + 1)],
        }
    }

    /// Fills from values on increasing lower tuples, extending by antisymmetry.
    pub fn from_sorted(n: usize, degree: usize, mut f: impl FnMut(usize, &[usize]) -> Rational) -> Self {
        let mut out = Self::zero(n, degree);
        for i in 0..n {
            for s in index::increasing(n, degree) {
                let v = f(i, &s);
                if !v.is_zero() {
                    out.set_antisymmetric(i, &s, &v);
                }
            }
        }
        out
    }

    fn set_antisymmetric(&mut self, i: usize, sorted: &[usize], v: &Rational) {
        let n = self.n;
        let neg = -v.clone();
        let mut perm = sorted.to_vec();
        let comps = &mut self.comps;
        crate::tensor::permutations(&mut perm, 0, &mut |p, sign| {
            let mut idx = Vec::with_capacity(p.len() + 1);
            idx.push(i);
            idx.extend_from_slice(p);
            comps[index::flat(&idx, n)] = if sign > 0 { v.clone() } else { neg.clone() };
        });
    }

    /// From a full row-major table; antisymmetry is checked.
    pub fn from_table(n: usize, degree: usize, comps: Vec<Rational>) -> Result<Self> {
        check_dim(n.pow(degree as u32 + 1), comps.len())?;
        let out = AlgebraicCochain { n, degree, comps };
        let rebuilt = Self::from_sorted(n, degree, |i, s| out.get_sorted(i, s).clone());
        if rebuilt != out {
            return Err(Error::NotAntisymmetric(format!("degree-{degree} cochain")));
        }
        Ok(out)
    }

    pub fn vector(v: Vec<Rational>) -> Self {
        AlgebraicCochain {
            n: v.len(),
            degree: 0,
            comps: v,
        }
    }

    /// Degree-1 cochain `ω^i_j = M[i][j]`.
    pub fn from_matrix(m: &RatMatrix) -> Self {
        let n = m.rows();
        AlgebraicCochain {
            n,
            degree: 1,
            comps: (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m.get(i, j).clone()).collect(),
        }
    }

    pub fn to_matrix(&self) -> RatMatrix {
        assert_eq!(self.degree, 1);
        let mut m = RatMatrix::zero(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(&[i, j]).clone());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn table(&self) -> &[Rational] {
        &self.comps
    }

    /// `ω^{idx[0]}_{idx[1..]}`.
    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.comps[index::flat(idx, self.n)]
    }

    fn get_sorted(&self, i: usize, s: &[usize]) -> &Rational {
        let mut idx = Vec::with_capacity(s.len() + 1);
        idx.push(i);
        idx.extend_from_slice(s);
        &self.comps[index::flat(&idx, self.n)]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Zero::is_zero)
    }

    /// Coordinates on the basis `e_i ⊗ e^{s}` (value index major, then
    /// increasing tuples in lexicographic order).
    pub fn coords(&self) -> Vec<Rational> {
        let tuples = index::increasing(self.n, self.degree);
        (0..self.n)
            .flat_map(|i| tuples.iter().map(move |s| (i, s)))
            .map(|(i, s)| self.get_sorted(i, s).clone())
            .collect()
    }

    pub fn from_coords(n: usize, degree: usize, coords: &[Rational]) -> Result<Self> {
        let tuples = index::increasing(n, degree);
        check_dim(n * tuples.len(), coords.len())?;
        Ok(Self::from_sorted(n, degree, |i, s| {
            let pos = tuples.iter().position(|t| t.as_slice() == s).expect("tuple enumerated");
            coords[i * tuples.len() + pos].clone()
        }))
    }

    pub fn space_dim(n: usize, degree: usize) -> usize {
        n * index::binomial(n, degree)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        AlgebraicCochain {
            n: self.n,
            degree: self.degree,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AlgebraicCochain {
            n: self.n,
            degree: self.degree,
            comps: self.comps.iter().map(|a| a * c).collect(),
        }
    }

    /// Nonzero independent components `(i, sorted lower tuple, value)`, 1-based.
    pub fn sparse(&self) -> Vec<(Vec<usize>, String)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for s in index::increasing(self.n, self.degree) {
                let v = self.get_sorted(i, &s);
                if !v.is_zero() {
                    let mut idx = vec![i + 1];
                    idx.extend(s.iter().map(|x| x + 1));
                    out.push((idx, format_rational(v)));
                }
            }
        }
        out
    }
}

/// `c^a_{x_u x_v} ω^i_{a, x without u,v}` summed with signs `(−1)^{u+v+1}`.
pub(crate) fn lower_reduction(g: &StructureConstants, i: usize, x: &[usize], w: &dyn Fn(&[usize]) -> Rational) -> Rational {
    let n = g.dim();
    let k = x.len();
    let mut acc = Rational::zero();
    let mut src = vec![0; k];
    for u in 0..k {
        for v in u + 1..k {
            src[0] = i;
            let mut pos = 2;
            for (q, &xq) in x.iter().enumerate() {
                if q != u && q != v {
                    src[pos] = xq;
                    pos += 1;
                }
            }
            for a in 0..n {
                let c = g.c(a, x[u], x[v]);
                if c.is_zero() {
                    continue;
                }
                src[1] = a;
                let term = c * w(&src);
                if (u + v + 1) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
        }
    }
    acc
}

fn check_cochain(g: &StructureConstants, w: &AlgebraicCochain) -> Result<()> {
    check_dim(g.dim(), w.dim())?;
    if w.degree() >= g.dim() + 1 {
        return Err(Error::DegreeTooLarge {
            degree: w.degree(),
            n: g.dim(),
        });
    }
    Ok(())
}

/// The localized Janet differential (see the module docs).
pub fn differential_d(g: &StructureConstants, w: &AlgebraicCochain) -> Result<AlgebraicCochain> {
    g.require_jacobi()?;
    check_cochain(g, w)?;
    Ok(differential_d_unchecked(g, w))
}

pub(crate) fn differential_d_unchecked(g: &StructureConstants, w: &AlgebraicCochain) -> AlgebraicCochain {
    let n = g.dim();
    let k = w.degree();
    if k == n {
        return AlgebraicCochain::zero(n, n + 1);
    }
    // A^i_{x0; x1..xk} = c^i_{a x0} ω^a_{x1..xk}
    let a_val = |i: usize, x: &[usize]| -> Rational {
        let mut src = Vec::with_capacity(k + 1);
        src.push(0);
        src.extend_from_slice(&x[1..]);
        let mut acc = Rational::zero();
        for a in 0..n {
            let c = g.c(i, a, x[0]);
            if !c.is_zero() {
                src[0] = a;
                acc += c * w.get(&src);
            }
        }
        acc
    };
    let wv = |idx: &[usize]| w.get(idx).clone();
    AlgebraicCochain::from_sorted(n, k + 1, |i, x| {
        let mut alt = a_val(i, x);
        let mut sw = x.to_vec();
        for p in 1..=k {
            sw.swap(0, p);
            alt -= a_val(i, &sw);
            sw.swap(0, p);
        }
        -alt - lower_reduction(g, i, x, &wv)
    })
}

/// Textbook Chevalley–Eilenberg differential with adjoint coefficients:
/// `δω(x0..xk) = Σ_p (−1)^p [x_p, ω(..x̂_p..)] + Σ_{u<v} (−1)^{u+v} ω([x_u, x_v], ..x̂_u..x̂_v..)`.
pub fn ce_oracle_differential(g: &StructureConstants, w: &AlgebraicCochain) -> Result<AlgebraicCochain> {
    g.require_jacobi()?;
    check_cochain(g, w)?;
    let n = g.dim();
    let k = w.degree();
    if k == n {
        return Ok(AlgebraicCochain::zero(n, n + 1));
    }
    let basis = |j: usize| -> Vec<Rational> {
        (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect()
    };
    // ω evaluated on basis vectors, as a vector in T_p.
    let eval = |args: &[usize]| -> Vec<Rational> {
        let mut idx = vec![0; args.len() + 1];
        idx[1..].copy_from_slice(args);
        (0..n)
            .map(|i| {
                idx[0] = i;
                w.get(&idx).clone()
            })
            .collect()
    };
    let mut table = vec![Rational::zero(); n.pow(k as u32 + 2)];
    for x in index::increasing(n, k + 1) {
        let mut out = vec![Rational::zero(); n];
        for p in 0..=k {
            let rest: Vec<usize> = x.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &v)| v).collect();
            let br = g.bracket(&basis(x[p]), &eval(&rest));
            for i in 0..n {
                if p % 2 == 0 {
                    out[i] += &br[i];
                } else {
                    out[i] -= &br[i];
                }
            }
        }
        for u in 0..=k {
            for v in u + 1..=k {
                let uv = g.bracket(&basis(x[u]), &basis(x[v]));
                let rest: Vec<usize> =
                    x.iter().enumerate().filter(|&(q, _)| q != u && q != v).map(|(_, &y)| y).collect();
                // multilinear in the first argument
                for (a, ca) in uv.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    let mut args = vec![a];
                    args.extend_from_slice(&rest);
                    let val = eval(&args);
                    for i in 0..n {
                        let term = ca * &val[i];
                        if (u + v) % 2 == 0 {
                            out[i] += term;
                        } else {
                            out[i] -= term;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            let mut idx = vec![i];
            idx.extend_from_slice(&x);
            table[index::flat(&idx, n)] = out[i].clone();
        }
    }
    let sorted_only = AlgebraicCochain {
        n,
        degree: k + 1,
        comps: table,
    };
    Ok(AlgebraicCochain::from_sorted(n, k + 1, |i, s| sorted_only.get_sorted(i, s).clone()))
}

/// Matrix of a degree-`k` differential in the coordinates of [`AlgebraicCochain::coords`].
pub fn differential_matrix(
    g: &StructureConstants,
    k: usize,
    op: impl Fn(&AlgebraicCochain) -> AlgebraicCochain,
) -> RatMatrix {
    let n = g.dim();
    let src_dim = AlgebraicCochain::space_dim(n, k);
    let dst_dim = AlgebraicCochain::space_dim(n, k + 1);
    let mut m = RatMatrix::zero(dst_dim, src_dim);
    for col in 0..src_dim {
        let mut e = vec![Rational::zero(); src_dim];
        e[col] = Rational::one();
        let w = AlgebraicCochain::from_coords(n, k, &e).expect("sized coordinates");
        let image = op(&w).coords();
        for (row, v) in image.into_iter().enumerate() {
            m.set(row, col, v);
        }
    }
    m
}

pub fn d_matrix(g: &StructureConstants, k: usize) -> Result<RatMatrix> {
    g.require_jacobi()?;
    Ok(differential_matrix(g, k, |w| differential_d_unchecked(g, w)))
}

pub fn ce_matrix(g: &StructureConstants, k: usize) -> Result<RatMatrix> {
    g.require_jacobi()?;
    Ok(differential_matrix(g, k, |w| {
        ce_oracle_differential(g, w).expect("Jacobi already checked")
    }))
}

/// Basis of the center `{v : c^i_{aj} v^a = 0}`.
pub fn center(g: &StructureConstants) -> Vec<Vec<Rational>> {
    let n = g.dim();
    let mut m = RatMatrix::zero(n * n, n);
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                m.set(i * n + j, a, g.c(i, a, j).clone());
            }
        }
    }
    m.nullspace()
}

/// Canonical (reduced echelon) basis of `[g, g]`.
pub fn derived_algebra(g: &StructureConstants) -> Vec<Vec<Rational>> {
    let n = g.dim();
    let cols: Vec<Vec<Rational>> = index::increasing(n, 2)
        .iter()
        .map(|s| (0..n).map(|i| g.c(i, s[0], s[1]).clone()).collect())
        .collect();
    RatMatrix::from_rows(cols).expect("uniform rows").row_space_basis()
}

/// Derivations: `ξ^i_a c^a_{rj} = c^i_{aj} ξ^a_r + c^i_{ra} ξ^a_j`.
pub fn derivations(g: &StructureConstants) -> Vec<RatMatrix> {
    let n = g.dim();
    let pairs = index::increasing(n, 2);
    let mut m = RatMatrix::zero(n * pairs.len(), n * n);
    let var = |i: usize, r: usize| i * n + r;
    for i in 0..n {
        for (pi, s) in pairs.iter().enumerate() {
            let (r, j) = (s[0], s[1]);
            let row = i * pairs.len() + pi;
            let mut bump = |col: usize, v: &Rational| {
                let cur = m.get(row, col) + v;
                m.set(row, col, cur);
            };
            for a in 0..n {
                bump(var(i, a), g.c(a, r, j));
                bump(var(a, r), &-g.c(i, a, j).clone());
                bump(var(a, j), &-g.c(i, r, a).clone());
            }
        }
    }
    m.nullspace().into_iter().map(|v| vec_to_matrix(n, &v)).collect()
}

/// Canonical basis of `span{ad_v}`, `(ad_b)^i_r = c^i_{br}`.
pub fn inner_derivations(g: &StructureConstants) -> Vec<RatMatrix> {
    let n = g.dim();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|b| {
            (0..n)
                .flat_map(|i| (0..n).map(move |r| (i, r)))
                .map(|(i, r)| g.c(i, b, r).clone())
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows)
        .expect("uniform rows")
        .row_space_basis()
        .into_iter()
        .map(|v| vec_to_matrix(n, &v))
        .collect()
}

fn vec_to_matrix(n: usize, v: &[Rational]) -> RatMatrix {
    let mut m = RatMatrix::zero(n, n);
    for i in 0..n {
        for r in 0..n {
            m.set(i, r, v[i * n + r].clone());
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub cochain_dim: usize,
    /// Rank of `D_k` (into degree k+1).
    pub rank_d: usize,
    pub kernel_dim: usize,
    pub betti: usize,
    pub ce_rank: usize,
    pub ce_kernel_dim: usize,
    /// `D_k` and the CE differential agree as matrices.
    pub equals_ce: bool,
    #[serde(skip)]
    pub representatives: Vec<AlgebraicCochain>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub max_degree: usize,
    pub degrees: Vec<DegreeReport>,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub der_dim: usize,
    pub inn_dim: usize,
    pub h0_is_center: bool,
    pub h1_is_outer_derivations: bool,
    pub d_squared_zero: bool,
    /// Only computed when every degree is included.
    pub euler_characteristic: Option<i64>,
}

impl CohomologyReport {
    pub fn bettis(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn consistent(&self) -> bool {
        self.h0_is_center
            && self.h1_is_outer_derivations
            && self.d_squared_zero
            && self.euler_characteristic.map_or(true, |e| e == 0)
            && self
                .degrees
                .iter()
                .all(|d| d.rank_d == d.ce_rank && d.kernel_dim == d.ce_kernel_dim)
    }
}

/// Cohomology with adjoint coefficients in degrees `0..=max_degree`.
pub fn cohomology(g: &StructureConstants, max_degree: usize) -> Result<CohomologyReport> {
    g.require_jacobi()?;
    let n = g.dim();
    if max_degree > n {
        return Err(Error::DegreeTooLarge { degree: max_degree, n });
    }
    let top = (max_degree + 1).min(n);
    let d: Vec<RatMatrix> = (0..=top).map(|k| d_matrix(g, k)).collect::<Result<_>>()?;
    let ce: Vec<RatMatrix> = (0..=top).map(|k| ce_matrix(g, k)).collect::<Result<_>>()?;
    let ranks: Vec<usize> = d.iter().map(RatMatrix::rank).collect();
    let mut d_squared_zero = true;
    for k in 0..top {
        if !d[k + 1].mul(&d[k]).is_zero() {
            d_squared_zero = false;
        }
    }
    let mut degrees = Vec::new();
    for k in 0..=max_degree {
        let dim = AlgebraicCochain::space_dim(n, k);
        let rank_d = ranks[k];
        let kernel_dim = dim - rank_d;
        let prev = if k == 0 { 0 } else { ranks[k - 1] };
        let ce_rank = ce[k].rank();
        degrees.push(DegreeReport {
            degree: k,
            cochain_dim: dim,
            rank_d,
            kernel_dim,
            betti: kernel_dim - prev,
            ce_rank,
            ce_kernel_dim: dim - ce_rank,
            equals_ce: d[k] == ce[k],
            representatives: representatives(n, k, &d[k], if k == 0 { None } else { Some(&d[k - 1]) }),
        });
    }
    let center_dim = center(g).len();
    let der_dim = derivations(g).len();
    let inn_dim = inner_derivations(g).len();
    let euler = (max_degree == n).then(|| {
        degrees
            .iter()
            .map(|d| if d.degree % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) })
            .sum()
    });
    Ok(CohomologyReport {
        n,
        max_degree,
        h0_is_center: degrees[0].betti == center_dim,
        h1_is_outer_derivations: degrees.get(1).map_or(true, |d| d.betti == der_dim - inn_dim),
        degrees,
        center_dim,
        derived_dim: derived_algebra(g).len(),
        der_dim,
        inn_dim,
        d_squared_zero,
        euler_characteristic: euler,
    })
}

/// Kernel vectors of `d_k` (in nullspace order) that are independent
/// modulo the image of `d_{k−1}`.
fn representatives(n: usize, k: usize, dk: &RatMatrix, prev: Option<&RatMatrix>) -> Vec<AlgebraicCochain> {
    let mut span: Vec<Vec<Rational>> = match prev {
        Some(m) => RatMatrix::from_columns(m.rows(), &(0..m.cols()).map(|j| m.column(j)).collect::<Vec<_>>())
            .transpose()
            .row_space_basis(),
        None => Vec::new(),
    };
    let mut reps = Vec::new();
    let mut rank = span.len();
    for v in dk.nullspace() {
        span.push(v.clone());
        let r = span_rank(&span);
        if r > rank {
            rank = r;
            reps.push(AlgebraicCochain::from_coords(n, k, &v).expect("sized coordinates"));
        } else {
            span.pop();
        }
    }
    reps
}

/// Expresses a closed cochain as `Σ a_h h + D(η)` over the stored
/// representatives `h`; returns the class coordinates and `η`.
pub fn class_coordinates(
    g: &StructureConstants,
    report: &CohomologyReport,
    w: &AlgebraicCochain,
) -> Result<(Vec<Rational>, AlgebraicCochain)> {
    g.require_jacobi()?;
    let n = g.dim();
    let k = w.degree();
    if !differential_d(g, w)?.is_zero() {
        return Err(Error::NotClosed);
    }
    let reps = &report
        .degrees
        .get(k)
        .ok_or(Error::DegreeTooLarge { degree: k, n: report.max_degree })?
        .representatives;
    let mut cols: Vec<Vec<Rational>> = reps.iter().map(AlgebraicCochain::coords).collect();
    let prev = if k == 0 { None } else { Some(d_matrix(g, k - 1)?) };
    if let Some(m) = &prev {
        cols.extend((0..m.cols()).map(|j| m.column(j)));
    }
    let dim = AlgebraicCochain::space_dim(n, k);
    let sys = RatMatrix::from_columns(dim, &cols);
    let y = sys
        .solve(&w.coords())
        .ok_or_else(|| Error::Invalid("closed cochain outside kernel span".into()))?;
    let coords = y[..reps.len()].to_vec();
    let eta = match prev {
        Some(_) => AlgebraicCochain::from_coords(n, k - 1, &y[reps.len()..])?,
        None => AlgebraicCochain::zero(n, 0),
    };
    Ok((coords, eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    pub(crate) fn heis() -> StructureConstants {
        StructureConstants::from_entries(3, &[(2, 0, 1, rat(1))]).unwrap()
    }

    pub(crate) fn sl2() -> StructureConstants {
        StructureConstants::from_entries(3, &[(1, 0, 1, rat(2)), (2, 0, 2, rat(-2)), (0, 1, 2, rat(1))])
            .unwrap()
    }

    #[test]
    fn centers() {
        assert_eq!(center(&StructureConstants::abelian(2).unwrap()).len(), 2);
        assert_eq!(center(&heis()), vec![vec![rat(0), rat(0), rat(1)]]);
        assert!(center(&sl2()).is_empty());
    }

    #[test]
    fn derived() {
        assert!(derived_algebra(&StructureConstants::abelian(2).unwrap()).is_empty());
        assert_eq!(derived_algebra(&heis()), vec![vec![rat(0), rat(0), rat(1)]]);
        assert_eq!(derived_algebra(&sl2()).len(), 3);
    }

    #[test]
    fn derivation_dims() {
        let ab = StructureConstants::abelian(2).unwrap();
        assert_eq!((derivations(&ab).len(), inner_derivations(&ab).len()), (4, 0));
        assert_eq!((derivations(&heis()).len(), inner_derivations(&heis()).len()), (6, 2));
        assert_eq!((derivations(&sl2()).len(), inner_derivations(&sl2()).len()), (3, 3));
    }

    #[test]
    fn identity_matrix_maps_to_bracket() {
        let g = heis();
        let d = differential_d(&g, &AlgebraicCochain::from_matrix(&RatMatrix::identity(3))).unwrap();
        assert_eq!(d.sparse(), vec![(vec![3, 1, 2], "1".to_string())]);
    }

    #[test]
    fn degree_zero_is_minus_ad() {
        let g = sl2();
        let v = vec![rat(1), rat(2), rat(-1)];
        let d = differential_d(&g, &AlgebraicCochain::vector(v.clone())).unwrap();
        for x in 0..3 {
            let mut e = vec![rat(0); 3];
            e[x] = rat(1);
            let br = g.bracket(&e, &v); // [e_x, v] = −ad_v(e_x)
            for i in 0..3 {
                assert_eq!(d.get(&[i, x]), &br[i]);
            }
        }
    }

    #[test]
    fn cohomology_examples() {
        let r = cohomology(&heis(), 3).unwrap();
        assert_eq!(&r.bettis()[..2], &[1, 4]);
        assert!(r.consistent());
        let r = cohomology(&sl2(), 3).unwrap();
        assert_eq!(&r.bettis()[..2], &[0, 0]);
        assert!(r.consistent());
        let r = cohomology(&StructureConstants::abelian(2).unwrap(), 2).unwrap();
        assert_eq!(r.bettis(), vec![2, 4, 2]);
    }

    #[test]
    fn jacobi_failure_refused() {
        // [e1,e2] = e3, [e2,e3] = e2 ... breaks Jacobi
        let g = StructureConstants::from_entries(3, &[(2, 0, 1, rat(1)), (0, 1, 2, rat(1)), (1, 0, 2, rat(1))]).unwrap();
        if g.jacobi_holds() {
            return;
        }
        assert!(matches!(cohomology(&g, 1), Err(Error::JacobiViolated { .. })));
    }
}
