//! Tensor fields with polynomial components, and vector-valued forms.
//!
//! Components are stored densely; zero polynomials cost no allocation.
//! Index order is upper indices first, then lower indices.

use crate::error::{check_dim, Error, Result};
use crate::index;
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorField {
    dim: usize,
    nvars: usize,
    upper: usize,
    lower: usize,
    comps: Vec<Poly>,
}

impl TensorField {
    pub fn zero(dim: usize, nvars: usize, upper: usize, lower: usize) -> Self {
        TensorField {
            dim,
            nvars,
            upper,
            lower,
            comps: vec![Poly::zero(nvars); dim.pow((upper + lower) as u32)],
        }
    }

    pub fn from_fn(
        dim: usize,
        nvars: usize,
        upper: usize,
        lower: usize,
        mut f: impl FnMut(&[usize]) -> Poly,
    ) -> Self {
        let comps: Vec<Poly> = index::all(dim, upper + lower)
            .map(|idx| {
                let p = f(&idx);
                assert_eq!(p.nvars(), nvars, "component has the wrong variable count");
                p
            })
            .collect();
        TensorField {
            dim,
            nvars,
            upper,
            lower,
            comps,
        }
    }

    /// Constant field from a flat row-major table.
    pub fn from_constants(
        dim: usize,
        nvars: usize,
        upper: usize,
        lower: usize,
        values: &[Rational],
    ) -> Result<Self> {
        check_dim(dim.pow((upper + lower) as u32), values.len())?;
        Ok(TensorField {
            dim,
            nvars,
            upper,
            lower,
            comps: values.iter().map(|v| Poly::constant(nvars, v.clone())).collect(),
        })
    }

    /// A vector field from its components.
    pub fn vector(components: Vec<Poly>) -> Result<Self> {
        let dim = components.len();
        let nvars = components.first().map_or(0, Poly::nvars);
        for c in &components {
            check_dim(nvars, c.nvars())?;
        }
        Ok(TensorField {
            dim,
            nvars,
            upper: 1,
            lower: 0,
            comps: components,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn rank(&self) -> usize {
        self.upper + self.lower
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn get(&self, idx: &[usize]) -> &Poly {
        debug_assert_eq!(idx.len(), self.rank());
        &self.comps[index::flat(idx, self.dim)]
    }

    pub fn set(&mut self, idx: &[usize], p: Poly) {
        assert_eq!(idx.len(), self.rank());
        assert_eq!(p.nvars(), self.nvars);
        let k = index::flat(idx, self.dim);
        self.comps[k] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// Nonzero components with their (0-based) indices, in table order.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, &Poly)> {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| (index::unflat(k, self.dim, self.rank()), p))
            .collect()
    }

    /// Nonzero components as `(1-based index, polynomial string)`.
    pub fn sparse(&self) -> Vec<(Vec<usize>, String)> {
        self.nonzero().into_iter().map(|(i, p)| (i.iter().map(|x| x + 1).collect(), p.to_string())).collect()
    }

    pub fn same_shape(&self, other: &TensorField) -> bool {
        (self.dim, self.nvars, self.upper, self.lower)
            == (other.dim, other.nvars, other.upper, other.lower)
    }

    fn zip(&self, other: &TensorField, f: impl Fn(&Poly, &Poly) -> Poly) -> TensorField {
        assert!(self.same_shape(other), "tensor shape mismatch");
        TensorField {
            dim: self.dim,
            nvars: self.nvars,
            upper: self.upper,
            lower: self.lower,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &TensorField) -> TensorField {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TensorField) -> TensorField {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> TensorField {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> TensorField {
        self.map(|p| -p)
    }

    /// Applies `f` to every component (may change the variable count).
    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> TensorField {
        let comps: Vec<Poly> = self.comps.iter().map(f).collect();
        let nvars = comps.first().map_or(self.nvars, Poly::nvars);
        TensorField {
            dim: self.dim,
            nvars,
            upper: self.upper,
            lower: self.lower,
            comps,
        }
    }

    /// Same table with the slots permuted: `out[idx] = self[idx ∘ perm]`,
    /// i.e. slot `s` of the result reads slot `perm[s]` of the input.
    pub fn permute_slots(&self, perm: &[usize]) -> TensorField {
        assert_eq!(perm.len(), self.rank());
        let mut src = vec![0; self.rank()];
        TensorField::from_fn(self.dim, self.nvars, self.upper, self.lower, |idx| {
            for (s, &p) in perm.iter().enumerate() {
                src[p] = idx[s];
            }
            self.get(&src).clone()
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.comps.iter().map(|p| p.eval(point)).collect()
    }

    /// Whether the last `k` lower slots are antisymmetric (every pair checked).
    pub fn has_antisymmetric_tail(&self, k: usize) -> bool {
        if k > self.lower {
            return false;
        }
        let start = self.rank() - k;
        let mut swapped = vec![0; self.rank()];
        for (pos, p) in self.comps.iter().enumerate() {
            let idx = index::unflat(pos, self.dim, self.rank());
            for a in start..idx.len() {
                for b in a + 1..idx.len() {
                    swapped.copy_from_slice(&idx);
                    swapped.swap(a, b);
                    let q = self.get(&swapped);
                    if idx[a] == idx[b] {
                        if !p.is_zero() {
                            return false;
                        }
                    } else if *q != -p {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Coefficientwise helpers for jets embedded as an extra variable.
    pub fn truncate_var(&self, var: usize, max: u32) -> TensorField {
        self.map(|p| p.truncate_var(var, max))
    }

    pub fn coeff_of_var(&self, var: usize, m: u32) -> TensorField {
        self.map(|p| p.coeff_of_var(var, m))
    }

    pub fn diff(&self, var: usize) -> TensorField {
        self.map(|p| p.diff(var))
    }

    pub fn with_nvars(&self, nvars: usize) -> TensorField {
        self.map(|p| p.with_nvars(nvars))
    }

    /// Smallest exponent of `var` appearing anywhere (`None` if zero).
    pub fn min_degree_in(&self, var: usize) -> Option<u32> {
        self.comps.iter().filter_map(|p| p.min_degree_in(var)).min()
    }
}

/// A valence-(1,k) field fully antisymmetric in its lower slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorForm(TensorField);

impl VectorForm {
    pub fn new(t: TensorField) -> Result<Self> {
        if t.upper() != 1 {
            return Err(Error::Invalid(format!(
                "a vector-valued form has one upper index, found {}",
                t.upper()
            )));
        }
        if !t.has_antisymmetric_tail(t.lower()) {
            return Err(Error::NotAntisymmetric(format!(
                "lower indices of a degree-{} form",
                t.lower()
            )));
        }
        Ok(VectorForm(t))
    }

    /// Fills the table from values on increasing lower tuples.
    pub fn from_sorted(
        dim: usize,
        nvars: usize,
        degree: usize,
        mut f: impl FnMut(usize, &[usize]) -> Poly,
    ) -> Self {
        let mut t = TensorField::zero(dim, nvars, 1, degree);
        for i in 0..dim {
            for s in index::increasing(dim, degree) {
                let v = f(i, &s);
                if v.is_zero() {
                    continue;
                }
                fill_antisymmetric(&mut t, i, &s, &v);
            }
        }
        VectorForm(t)
    }

    pub fn degree(&self) -> usize {
        self.0.lower()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn tensor(&self) -> &TensorField {
        &self.0
    }

    pub fn into_tensor(self) -> TensorField {
        self.0
    }

    pub fn get(&self, idx: &[usize]) -> &Poly {
        self.0.get(idx)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub(crate) fn wrap_unchecked(t: TensorField) -> Self {
        debug_assert!(t.upper() == 1 && t.has_antisymmetric_tail(t.lower()));
        VectorForm(t)
    }
}

fn fill_antisymmetric(t: &mut TensorField, i: usize, sorted: &[usize], v: &Poly) {
    let neg = -v;
    let mut perm: Vec<usize> = sorted.to_vec();
    permutations(&mut perm, 0, &mut |p, sign| {
        let mut idx = Vec::with_capacity(p.len() + 1);
        idx.push(i);
        idx.extend_from_slice(p);
        t.set(&idx, if sign > 0 { v.clone() } else { neg.clone() });
    });
}

/// Heap-style enumeration of all permutations with their signs.
pub(crate) fn permutations(v: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize], i32)) {
    fn go(v: &mut Vec<usize>, start: usize, sign: i32, f: &mut dyn FnMut(&[usize], i32)) {
        if start + 1 >= v.len() {
            f(v, sign);
            return;
        }
        for i in start..v.len() {
            v.swap(start, i);
            go(v, start + 1, if i == start { sign } else { -sign }, f);
            v.swap(start, i);
        }
    }
    go(v, start, 1, f);
}

/// First-index alternation of a valence-(1,k+1) table antisymmetric in its
/// trailing `k` lower slots:
/// `A_{x0 x1..xk} − Σ_{p≥1} A_{(x0 ↔ xp)}`.
pub fn alternate_first(a: &TensorField) -> Result<VectorForm> {
    if a.upper() != 1 || a.lower() == 0 {
        return Err(Error::Invalid(format!(
            "alternation needs valence (1, k+1), found ({}, {})",
            a.upper(),
            a.lower()
        )));
    }
    let k = a.lower() - 1;
    if !a.has_antisymmetric_tail(k) {
        return Err(Error::NotAntisymmetric(format!(
            "trailing {k} lower indices of the alternation input"
        )));
    }
    Ok(alternate_first_unchecked(a))
}

pub(crate) fn alternate_first_unchecked(a: &TensorField) -> VectorForm {
    let k = a.lower() - 1;
    let mut sw = vec![0; a.rank()];
    VectorForm::from_sorted(a.dim(), a.nvars(), k + 1, |i, x| {
        let mut idx = Vec::with_capacity(k + 2);
        idx.push(i);
        idx.extend_from_slice(x);
        let mut acc = a.get(&idx).clone();
        for p in 1..=k {
            sw.copy_from_slice(&idx);
            sw.swap(1, 1 + p);
            acc.sub_assign_ref(a.get(&sw));
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn consts(dim: usize, upper: usize, lower: usize, v: &[i64]) -> TensorField {
        let vals: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
        TensorField::from_constants(dim, 1, upper, lower, &vals).unwrap()
    }

    #[test]
    fn alternation_k1() {
        // Upper index of dimension 2 with a single nonzero value slice.
        let a = consts(2, 1, 1, &[1, 2, 3, 4]);
        let flat = TensorField::from_fn(2, 1, 1, 2, |idx| {
            if idx[0] == 0 {
                a.get(&[idx[1], idx[2]]).clone()
            } else {
                Poly::zero(1)
            }
        });
        let out = alternate_first(&flat).unwrap();
        let got: Vec<i64> = (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .map(|(r, c)| out.get(&[0, r, c]).constant_term().to_integer().try_into().unwrap())
            .collect();
        assert_eq!(got, vec![0, -1, 1, 0]);
    }

    #[test]
    fn antisymmetric_input_doubles_for_k1() {
        let a = TensorField::from_fn(2, 1, 1, 2, |idx| {
            let v = match (idx[1], idx[2]) {
                (0, 1) => 3,
                (1, 0) => -3,
                _ => 0,
            };
            Poly::constant(1, rat(v * (idx[0] as i64 + 1)))
        });
        let out = alternate_first(&a).unwrap();
        assert_eq!(out.tensor(), &a.scale(&rat(2)));
    }

    #[test]
    fn precondition_checked() {
        // valence (1,3) with trailing pair not antisymmetric
        let a = TensorField::from_fn(2, 1, 1, 3, |idx| Poly::constant(1, rat(idx.iter().sum::<usize>() as i64)));
        assert!(matches!(alternate_first(&a), Err(Error::NotAntisymmetric(_))));
    }

    #[test]
    fn permute_slots_transposes() {
        let a = consts(2, 0, 2, &[1, 2, 3, 4]);
        let t = a.permute_slots(&[1, 0]);
        assert_eq!(t.get(&[0, 1]).constant_term(), rat(3));
    }
}
