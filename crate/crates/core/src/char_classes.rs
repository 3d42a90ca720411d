//! Torsion powers, their closedness and exactness, and the trace map to
//! scalar invariant forms.
//!
//! Powers are right-nested with first-index alternation:
//! `(T^k)^i_{j0..jk} = [T^i_{j0 a} (T^{k−1})^a_{j1..jk}]_{[j0..jk]}`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::index;
use crate::lie_algebra::{d_matrix, differential_d, AlgebraicCochain, StructureConstants};
use crate::linalg::RatMatrix;
use crate::parallelism::{Connection, Torsion};
use crate::poly::Poly;
use crate::rational::{format_rational, Rational};
use crate::tensor::{alternate_first_unchecked, TensorField, VectorForm};

/// Fully antisymmetric scalar `k`-form on `T_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarCochain {
    n: usize,
    degree: usize,
    comps: Vec<Rational>,
}

impl ScalarCochain {
    pub fn zero(n: usize, degree: usize) -> Self {
        ScalarCochain {
            n,
            degree,
            comps: vec![Rational::zero(); n.pow(degree as u32)],
        }
    }

    pub fn from_sorted(n: usize, degree: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        let mut out = Self::zero(n, degree);
        for s in index::increasing(n, degree) {
            let v = f(&s);
            if v.is_zero() {
                continue;
            }
            let neg = -v.clone();
            let mut perm = s.clone();
            let comps = &mut out.comps;
            crate::tensor::permutations(&mut perm, 0, &mut |p, sign| {
                comps[index::flat(p, n)] = if sign > 0 { v.clone() } else { neg.clone() };
            });
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.comps[index::flat(idx, self.n)]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        ScalarCochain {
            n: self.n,
            degree: self.degree,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        }
    }

    /// Nonzero independent components (sorted tuple, 1-based).
    pub fn sparse(&self) -> Vec<(Vec<usize>, String)> {
        index::increasing(self.n, self.degree)
            .into_iter()
            .filter_map(|s| {
                let v = self.get(&s);
                (!v.is_zero()).then(|| (s.iter().map(|x| x + 1).collect(), format_rational(v)))
            })
            .collect()
    }
}

/// `T^k` of constant structure constants, a cochain of degree `k + 1`.
pub fn t_power(g: &StructureConstants, k: usize) -> Result<AlgebraicCochain> {
    let n = g.dim();
    if k == 0 {
        return Err(Error::Invalid("torsion powers start at k = 1".into()));
    }
    if k + 1 > n {
        return Err(Error::DegreeTooLarge { degree: k + 1, n });
    }
    let mut cur = AlgebraicCochain::from_table(n, 2, g.table().to_vec())?;
    for deg in 2..=k {
        let prev = cur;
        // A^i_{x0; x1..} = c^i_{x0 a} prev^a_{x1..}
        let a_val = |i: usize, x: &[usize]| -> Rational {
            let mut src = Vec::with_capacity(x.len());
            src.push(0);
            src.extend_from_slice(&x[1..]);
            let mut acc = Rational::zero();
            for a in 0..n {
                let c = g.c(i, x[0], a);
                if !c.is_zero() {
                    src[0] = a;
                    acc += c * prev.get(&src);
                }
            }
            acc
        };
        cur = AlgebraicCochain::from_sorted(n, deg + 1, |i, x| {
            let mut alt = a_val(i, x);
            let mut sw = x.to_vec();
            for p in 1..x.len() {
                sw.swap(0, p);
                alt -= a_val(i, &sw);
                sw.swap(0, p);
            }
            alt
        });
    }
    Ok(cur)
}

/// `T^k` at field level, a vector-valued form of degree `k + 1`.
pub fn t_power_field(t: &Torsion, k: usize) -> Result<VectorForm> {
    let n = t.dim();
    if k == 0 {
        return Err(Error::Invalid("torsion powers start at k = 1".into()));
    }
    if k + 1 > n {
        return Err(Error::DegreeTooLarge { degree: k + 1, n });
    }
    let tf = t.field();
    let nv = tf.nvars();
    let mut cur = VectorForm::new(tf.clone())?;
    for deg in 2..=k {
        let mut full = vec![0; deg + 1];
        let a = TensorField::from_fn(n, nv, 1, deg + 1, |idx| {
            let (i, x0) = (idx[0], idx[1]);
            full[1..].copy_from_slice(&idx[2..]);
            let mut acc = Poly::zero(nv);
            for b in 0..n {
                full[0] = b;
                acc.add_product(tf.get(&[i, x0, b]), cur.get(&full));
            }
            acc
        });
        cur = alternate_first_unchecked(&a);
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Closedness {
    /// Power `2k − 1`.
    pub power: usize,
    /// `d̂(T^{2k−1}) = 0` as polynomials.
    pub field_closed: bool,
    /// `D(T^{2k−1}(p)) = 0`.
    pub point_closed: bool,
}

/// Closedness of `T^{2k−1}`; refused when the connection is not a local Lie group.
pub fn closedness(c: &Connection, k: usize, p: &[Rational]) -> Result<Closedness> {
    c.require_local_lie()?;
    if k == 0 {
        return Err(Error::Invalid("class index starts at k = 1".into()));
    }
    let power = 2 * k - 1;
    let t = c.torsion();
    let field = t_power_field(&t, power)?;
    let g = t.localize(p)?;
    let point = t_power(&g, power)?;
    Ok(Closedness {
        power,
        field_closed: c.d_hat(&field).is_zero(),
        point_closed: differential_d(&g, &point)?.is_zero(),
    })
}

/// `tr(ω)_{j1..j_{k−1}} = ω^a_{j1..j_{k−1} a}`.
pub fn trace_map(w: &AlgebraicCochain) -> Result<ScalarCochain> {
    let k = w.degree();
    if k == 0 {
        return Err(Error::Invalid("trace needs degree ≥ 1".into()));
    }
    let n = w.dim();
    Ok(ScalarCochain::from_sorted(n, k - 1, |s| {
        let mut idx = vec![0; k + 1];
        idx[1..k].copy_from_slice(s);
        (0..n).fold(Rational::zero(), |acc, a| {
            idx[0] = a;
            idx[k] = a;
            acc + w.get(&idx)
        })
    }))
}

/// Trivial-coefficient differential:
/// `D_s(ω)_{x0..xk} = −Σ_{u<v} (−1)^{u+v+1} c^a_{x_u x_v} ω_{a, x without u,v}`.
pub fn scalar_differential(g: &StructureConstants, w: &ScalarCochain) -> Result<ScalarCochain> {
    g.require_jacobi()?;
    let n = g.dim();
    check_dim(n, w.dim())?;
    let k = w.degree();
    if k >= n {
        return Ok(ScalarCochain::zero(n, k + 1));
    }
    Ok(ScalarCochain::from_sorted(n, k + 1, |x| {
        let mut acc = Rational::zero();
        let mut src = vec![0; k];
        for u in 0..=k {
            for v in u + 1..=k {
                let mut pos = 1;
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
                    src[0] = a;
                    let term = c * w.get(&src);
                    if (u + v + 1) % 2 == 0 {
                        acc -= term;
                    } else {
                        acc += term;
                    }
                }
            }
        }
        acc
    }))
}

/// `tr(Dω) − D_s(tr ω)`; zero exactly when the trace commutes with the differentials on `ω`.
pub fn trace_chain_defect(g: &StructureConstants, w: &AlgebraicCochain) -> Result<ScalarCochain> {
    let lhs = trace_map(&differential_d(g, w)?)?;
    let rhs = scalar_differential(g, &trace_map(w)?)?;
    Ok(lhs.sub(&rhs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exactness {
    pub exact: bool,
    /// `η` with `D(η) = ω` when exact.
    pub certificate: Option<AlgebraicCochain>,
}

/// Decides whether a closed cochain is `D`-exact by an exact linear solve.
pub fn class_is_exact(g: &StructureConstants, w: &AlgebraicCochain) -> Result<Exactness> {
    if !differential_d(g, w)?.is_zero() {
        return Err(Error::NotClosed);
    }
    let k = w.degree();
    if k == 0 {
        return Ok(Exactness {
            exact: w.is_zero(),
            certificate: w.is_zero().then(|| AlgebraicCochain::zero(g.dim(), 0)),
        });
    }
    let m: RatMatrix = d_matrix(g, k - 1)?;
    Ok(match m.solve(&w.coords()) {
        Some(y) => Exactness {
            exact: true,
            certificate: Some(AlgebraicCochain::from_coords(g.dim(), k - 1, &y)?),
        },
        None => Exactness {
            exact: false,
            certificate: None,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub power: usize,
    pub degree: usize,
    /// Independent nonzero components of `T^{power}(p)`, 1-based.
    pub cochain: Vec<(Vec<usize>, String)>,
    pub field_closed: bool,
    pub point_closed: bool,
    pub exact: bool,
    pub certificate: Option<Vec<(Vec<usize>, String)>>,
    pub trace: Vec<(Vec<usize>, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassesReport {
    pub n: usize,
    pub unimodular: bool,
    /// `T² = J` componentwise at field level.
    pub t2_equals_jacobi_form: bool,
    pub entries: Vec<ClassEntry>,
}

/// All odd powers `T^{2k−1}` that fit in dimension `n`.
pub fn classes_report(c: &Connection, p: &[Rational]) -> Result<ClassesReport> {
    c.require_local_lie()?;
    let n = c.dim();
    let t = c.torsion();
    let g = t.localize(p)?;
    g.require_jacobi()?;
    let t2_equals_jacobi_form = if n >= 3 {
        t_power_field(&t, 2)? == crate::parallelism::jacobi_form(&t)
    } else {
        true
    };
    let mut entries = Vec::new();
    let mut k = 1;
    while 2 * k <= n {
        let cl = closedness(c, k, p)?;
        let w = t_power(&g, cl.power)?;
        let ex = class_is_exact(&g, &w)?;
        entries.push(ClassEntry {
            power: cl.power,
            degree: cl.power + 1,
            cochain: w.sparse(),
            field_closed: cl.field_closed,
            point_closed: cl.point_closed,
            exact: ex.exact,
            certificate: ex.certificate.map(|e| e.sparse()),
            trace: trace_map(&w)?.sparse(),
        });
        k += 1;
    }
    Ok(ClassesReport {
        n,
        unimodular: g.is_unimodular(),
        t2_equals_jacobi_form,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sl2() -> StructureConstants {
        StructureConstants::from_entries(3, &[(1, 0, 1, rat(2)), (2, 0, 2, rat(-2)), (0, 1, 2, rat(1))]).unwrap()
    }

    #[test]
    fn higher_powers_vanish_under_jacobi() {
        for g in [sl2(), StructureConstants::from_entries(3, &[(2, 0, 1, rat(1))]).unwrap()] {
            assert!(t_power(&g, 2).unwrap().is_zero());
        }
        let g4 = StructureConstants::from_entries(4, &[(2, 0, 1, rat(1)), (3, 0, 2, rat(1))]).unwrap();
        assert!(t_power(&g4, 2).unwrap().is_zero() && t_power(&g4, 3).unwrap().is_zero());
    }

    #[test]
    fn t1_is_exact() {
        let g = sl2();
        let t1 = t_power(&g, 1).unwrap();
        let ex = class_is_exact(&g, &t1).unwrap();
        assert!(ex.exact);
        let eta = ex.certificate.unwrap();
        assert_eq!(differential_d(&g, &eta).unwrap(), t1);
    }

    #[test]
    fn abelian_constant_form_not_exact() {
        let g = StructureConstants::abelian(2).unwrap();
        let w = AlgebraicCochain::vector(vec![rat(1), rat(0)]);
        assert!(!class_is_exact(&g, &w).unwrap().exact);
    }

    #[test]
    fn aff_trace() {
        let g = StructureConstants::from_entries(2, &[(1, 0, 1, rat(1))]).unwrap();
        let tr = trace_map(&t_power(&g, 1).unwrap()).unwrap();
        assert_eq!((tr.get(&[0]), tr.get(&[1])), (&rat(1), &rat(0)));
        assert!(!g.is_unimodular());
    }

    #[test]
    fn trace_is_chain_map_on_unimodular() {
        let g = sl2();
        for k in 1..=2 {
            let w = AlgebraicCochain::from_sorted(3, k, |i, s| rat((i * 7 + s.iter().sum::<usize>() * 3) as i64 % 5 - 2));
            assert!(trace_chain_defect(&g, &w).unwrap().is_zero());
        }
    }
}
