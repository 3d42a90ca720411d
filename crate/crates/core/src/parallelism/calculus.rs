use super::{Connection, Curvature, Torsion};
use crate::error::{check_dim, Result};
use crate::poly::Poly;
use crate::tensor::{alternate_first_unchecked, TensorField, VectorForm};

impl Connection {
    /// `acc ± a·b`, honouring the jet truncation.
    pub(crate) fn fma(&self, acc: &mut Poly, a: &Poly, b: &Poly, negate: bool) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (self.trunc, negate) {
            (None, false) => acc.add_product(a, b),
            (None, true) => acc.sub_assign_ref(&(a * b)),
            (Some((v, m)), false) => acc.add_assign_ref(&a.mul_truncated(b, v, m)),
            (Some((v, m)), true) => acc.sub_assign_ref(&a.mul_truncated(b, v, m)),
        }
    }

    pub fn torsion(&self) -> Torsion {
        let n = self.dim();
        Torsion(TensorField::from_fn(n, self.nvars(), 1, 2, |idx| {
            self.g(idx[0], idx[1], idx[2]) - self.g(idx[0], idx[2], idx[1])
        }))
    }

    /// `R̃^i_{rj,k} = ∂_rΓ^i_{jk} − ∂_jΓ^i_{rk} + Γ^a_{rk}Γ^i_{ja} − Γ^a_{jk}Γ^i_{ra}`.
    pub fn curvature_tilde(&self) -> Curvature {
        let n = self.dim();
        Curvature(TensorField::from_fn(n, self.nvars(), 1, 3, |idx| {
            let (i, r, j, k) = (idx[0], idx[1], idx[2], idx[3]);
            let mut acc = self.g(i, j, k).diff(r) - self.g(i, r, k).diff(j);
            for a in 0..n {
                self.fma(&mut acc, self.g(a, r, k), self.g(i, j, a), false);
                self.fma(&mut acc, self.g(a, j, k), self.g(i, r, a), true);
            }
            acc
        }))
    }

    /// `R̂^i_{rj,k} = ∂_rΓ^i_{kj} − ∂_jΓ^i_{kr} + Γ^a_{kr}Γ^i_{aj} − Γ^a_{kj}Γ^i_{ar}`.
    pub fn curvature_hat(&self) -> Curvature {
        let n = self.dim();
        Curvature(TensorField::from_fn(n, self.nvars(), 1, 3, |idx| {
            let (i, r, j, k) = (idx[0], idx[1], idx[2], idx[3]);
            let mut acc = self.g(i, k, j).diff(r) - self.g(i, k, r).diff(j);
            for a in 0..n {
                self.fma(&mut acc, self.g(a, k, r), self.g(i, a, j), false);
                self.fma(&mut acc, self.g(a, k, j), self.g(i, a, r), true);
            }
            acc
        }))
    }

    /// ∇̃ξ: `∂_l ξ − Σ_upper Γ^u_{la} ξ^{..a..} + Σ_lower Γ^a_{lv} ξ_{..a..}`,
    /// the new slot `l` placed first among the lower indices.
    pub fn nabla_tilde(&self, xi: &TensorField) -> TensorField {
        self.covariant(xi, false)
    }

    /// ∇̂ξ: as ∇̃ with the two lower slots of Γ swapped.
    pub fn nabla_hat(&self, xi: &TensorField) -> TensorField {
        self.covariant(xi, true)
    }

    fn covariant(&self, xi: &TensorField, hat: bool) -> TensorField {
        let n = self.dim();
        assert_eq!(xi.dim(), n, "tensor dimension differs from the connection's");
        assert_eq!(xi.nvars(), self.nvars(), "variable count differs from the connection's");
        let (r, s) = (xi.upper(), xi.lower());
        let gam = |a: usize, l: usize, b: usize| {
            if hat {
                self.g(a, b, l)
            } else {
                self.g(a, l, b)
            }
        };
        let mut base = vec![0; r + s];
        TensorField::from_fn(n, self.nvars(), r, s + 1, |idx| {
            let l = idx[r];
            base[..r].copy_from_slice(&idx[..r]);
            base[r..].copy_from_slice(&idx[r + 1..]);
            let mut acc = xi.get(&base).diff(l);
            let mut moved = base.clone();
            for p in 0..r {
                for a in 0..n {
                    moved[p] = a;
                    self.fma(&mut acc, gam(base[p], l, a), xi.get(&moved), true);
                }
                moved[p] = base[p];
            }
            for q in r..r + s {
                for a in 0..n {
                    moved[q] = a;
                    self.fma(&mut acc, gam(a, l, base[q]), xi.get(&moved), false);
                }
                moved[q] = base[q];
            }
            acc
        })
    }

    /// Janet operator: `∂_r ω^i_J − Γ^i_{ar} ω^a_J`, then first-index alternation.
    pub fn d_hat(&self, w: &VectorForm) -> VectorForm {
        let n = self.dim();
        assert_eq!(w.dim(), n);
        assert_eq!(w.nvars(), self.nvars());
        let k = w.degree();
        let mut src = vec![0; k + 1];
        let a_tab = TensorField::from_fn(n, self.nvars(), 1, k + 1, |idx| {
            let (i, r) = (idx[0], idx[1]);
            src[1..].copy_from_slice(&idx[2..]);
            src[0] = i;
            let mut acc = w.get(&src).diff(r);
            for a in 0..n {
                src[0] = a;
                self.fma(&mut acc, self.g(i, a, r), w.get(&src), true);
            }
            acc
        });
        alternate_first_unchecked(&a_tab)
    }

    /// `[∇̃]ω`: full ∇̃ then first-index alternation.
    pub fn box_nabla(&self, w: &VectorForm) -> VectorForm {
        alternate_first_unchecked(&self.nabla_tilde(w.tensor()))
    }
}

/// `T(X, Y)^i = T^i_{ab} X^a Y^b`.
pub fn algebraic_bracket(t: &Torsion, x: &TensorField, y: &TensorField) -> Result<TensorField> {
    let n = t.dim();
    check_dim(n, x.dim())?;
    check_dim(n, y.dim())?;
    let tf = t.field();
    Ok(TensorField::from_fn(n, x.nvars(), 1, 0, |idx| {
        let i = idx[0];
        let mut acc = Poly::zero(x.nvars());
        for a in 0..n {
            for b in 0..n {
                let c = tf.get(&[i, a, b]);
                if !c.is_zero() {
                    acc.add_assign_ref(&(&(c * x.get(&[a])) * y.get(&[b])));
                }
            }
        }
        acc
    }))
}

/// `J^i_{xyz} = T^i_{xb}T^b_{yz} + T^i_{zb}T^b_{xy} + T^i_{yb}T^b_{zx}`.
pub fn jacobi_form(t: &Torsion) -> VectorForm {
    let n = t.dim();
    let tf = t.field();
    let nv = tf.nvars();
    VectorForm::from_sorted(n, nv, 3, |i, s| {
        let (x, y, z) = (s[0], s[1], s[2]);
        let mut acc = Poly::zero(nv);
        for b in 0..n {
            acc.add_product(tf.get(&[i, x, b]), tf.get(&[b, y, z]));
            acc.add_product(tf.get(&[i, z, b]), tf.get(&[b, x, y]));
            acc.add_product(tf.get(&[i, y, b]), tf.get(&[b, z, x]));
        }
        acc
    })
}

/// `[X, Y]^i = X^a ∂_a Y^i − Y^a ∂_a X^i`.
pub fn lie_bracket_fields(x: &TensorField, y: &TensorField) -> Result<TensorField> {
    check_dim(x.dim(), y.dim())?;
    let n = x.dim();
    Ok(TensorField::from_fn(n, x.nvars(), 1, 0, |idx| {
        let i = idx[0];
        let mut acc = Poly::zero(x.nvars());
        for a in 0..n {
            acc.add_product(x.get(&[a]), &y.get(&[i]).diff(a));
            acc.sub_assign_ref(&(y.get(&[a]) * &x.get(&[i]).diff(a)));
        }
        acc
    }))
}

/// Contracts the first lower slot of `nab` with the vector field `x`.
pub fn directional(nab: &TensorField, x: &TensorField) -> TensorField {
    let (r, s) = (nab.upper(), nab.lower());
    assert!(s >= 1);
    let n = nab.dim();
    let mut full = vec![0; r + s];
    TensorField::from_fn(n, nab.nvars(), r, s - 1, |idx| {
        full[..r].copy_from_slice(&idx[..r]);
        full[r + 1..].copy_from_slice(&idx[r..]);
        let mut acc = Poly::zero(nab.nvars());
        for l in 0..n {
            full[r] = l;
            acc.add_product(nab.get(&full), x.get(&[l]));
        }
        acc
    })
}

/// `(R(A, B) C)^i = R^i_{ab,c} A^a B^b C^c`.
pub fn apply_curvature(r: &Curvature, a: &TensorField, b: &TensorField, c: &TensorField) -> TensorField {
    let n = a.dim();
    let rf = r.field();
    TensorField::from_fn(n, a.nvars(), 1, 0, |idx| {
        let i = idx[0];
        let mut acc = Poly::zero(a.nvars());
        for x in 0..n {
            for y in 0..n {
                let ab = a.get(&[x]) * b.get(&[y]);
                if ab.is_zero() {
                    continue;
                }
                for z in 0..n {
                    let coeff = rf.get(&[i, x, y, z]);
                    if !coeff.is_zero() {
                        acc.add_assign_ref(&(&(coeff * &ab) * c.get(&[z])));
                    }
                }
            }
        }
        acc
    })
}

/// The alternated Γ-lower terms of [∇̃] rewritten through torsion:
/// `Σ_{u<v} (−1)^{u+v+1} T^a_{x_u x_v} ω^i_{a, x without u,v}`.
pub fn torsion_reduction(t: &Torsion, w: &VectorForm) -> VectorForm {
    let n = t.dim();
    let k = w.degree();
    let tf = t.field();
    let nv = w.nvars();
    let mut src = vec![0; k + 1];
    VectorForm::from_sorted(n, nv, k + 1, |i, x| {
        let mut acc = Poly::zero(nv);
        for u in 0..=k {
            for v in u + 1..=k {
                src[0] = i;
                let mut pos = 2;
                for (q, &xq) in x.iter().enumerate() {
                    if q != u && q != v {
                        src[pos] = xq;
                        pos += 1;
                    }
                }
                for a in 0..n {
                    src[1] = a;
                    let term = tf.get(&[a, x[u], x[v]]);
                    if term.is_zero() {
                        continue;
                    }
                    let prod = term * w.get(&src);
                    if (u + v + 1) % 2 == 0 {
                        acc.add_assign_ref(&prod);
                    } else {
                        acc.sub_assign_ref(&prod);
                    }
                }
            }
        }
        acc
    })
}

/// `[T^i_{x0 a} ω^a_{x1..xk}]` with first-index alternation.
pub fn torsion_value_term(t: &Torsion, w: &VectorForm) -> VectorForm {
    let n = t.dim();
    let k = w.degree();
    let tf = t.field();
    let mut src = vec![0; k + 1];
    let a = TensorField::from_fn(n, w.nvars(), 1, k + 1, |idx| {
        let (i, x0) = (idx[0], idx[1]);
        src[1..].copy_from_slice(&idx[2..]);
        let mut acc = Poly::zero(w.nvars());
        for b in 0..n {
            src[0] = b;
            acc.add_product(tf.get(&[i, x0, b]), w.get(&src));
        }
        acc
    });
    alternate_first_unchecked(&a)
}

/// Comparison of the two operators on forms:
/// `[∇̃]ω − d̂ω + [T^i_{x0 a} ω^a] − (Γ-lower terms reduced to T)`, which vanishes identically.
pub fn comparison_defect(c: &Connection, w: &VectorForm) -> VectorForm {
    let t = c.torsion();
    let out = c
        .box_nabla(w)
        .tensor()
        .sub(c.d_hat(w).tensor())
        .add(torsion_value_term(&t, w).tensor())
        .sub(torsion_reduction(&t, w).tensor());
    VectorForm::wrap_unchecked(out)
}
