//! Square-or-rectangular matrices of polynomials.


use crate::error::{check_dim, Error, Result};
use crate::linalg::RatMatrix;
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, n, nvars);
        for i in 0..n {
            m.set(i, i, Poly::one(nvars));
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            check_dim(c, row.len())?;
            for p in row {
                check_dim(nvars, p.nvars())?;
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            nvars,
            entries,
        })
    }

    /// Parses a row-major table of polynomial strings.
    pub fn parse_rows(nvars: usize, rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| Poly::parse(s, nvars)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(nvars, parsed)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn from_rat(m: &RatMatrix, nvars: usize) -> Self {
        let mut out = Self::zero(m.rows(), m.cols(), nvars);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, Poly::constant(nvars, m.get(i, j).clone()));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let p = self.get(i, j);
                    if i == j {
                        *p == Poly::one(self.nvars)
                    } else {
                        p.is_zero()
                    }
                })
            })
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(Poly::is_constant)
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        check_dim(self.cols, other.rows)?;
        check_dim(self.nvars, other.nvars)?;
        let mut out = PolyMatrix::zero(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(self.nvars);
                for k in 0..self.cols {
                    acc.add_product(self.get(i, k), other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        self.checked_mul(other).expect("matrix shape mismatch")
    }

    /// Product with each entry truncated at `var^max`.
    pub fn mul_truncated(&self, other: &PolyMatrix, var: usize, max: u32) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = PolyMatrix::zero(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(self.nvars);
                for k in 0..self.cols {
                    acc.add_assign_ref(&self.get(i, k).mul_truncated(other.get(k, j), var, max));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        let entries: Vec<Poly> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, Poly::nvars);
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            entries,
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn with_nvars(&self, nvars: usize) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            entries: self.entries.iter().map(|p| p.with_nvars(nvars)).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<RatMatrix> {
        let mut out = RatMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).eval(point)?);
            }
        }
        Ok(out)
    }

    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let all: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor_det(&all, &all))
    }

    // Laplace expansion along the first listed row; fine for n <= 6.
    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Poly {
        match rows.len() {
            0 => Poly::one(self.nvars),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = Poly::zero(self.nvars);
                let sub_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let m = self.minor_det(sub_rows, &sub_cols);
                    let term = a * &m;
                    if k % 2 == 0 {
                        acc.add_assign_ref(&term);
                    } else {
                        acc.sub_assign_ref(&term);
                    }
                }
                acc
            }
        }
    }

    /// Classical adjugate: `self · adj = det · I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if self.rows != self.cols {
            return Err(Error::Invalid("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut adj = PolyMatrix::zero(n, n, self.nvars);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let m = self.minor_det(&rows, &cols);
                adj.set(i, j, if (i + j) % 2 == 0 { m } else { -m });
            }
        }
        Ok(adj)
    }

    /// Polynomial inverse, available when the determinant is a nonzero constant.
    pub fn inverse_if_unimodular(&self) -> Result<PolyMatrix> {
        let det = self.det()?;
        if det.is_zero() || !det.is_constant() {
            return Err(Error::SingularFrame(format!(
                "determinant {det} is not a nonzero constant"
            )));
        }
        let inv = det.constant_term().recip();
        Ok(self.adjugate()?.scale(&inv))
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn truncate_var(&self, var: usize, max: u32) -> PolyMatrix {
        self.map(|p| p.truncate_var(var, max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis(nvars: usize) -> PolyMatrix {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        PolyMatrix::parse_rows(nvars, &[s(&["1", "0", "0"]), s(&["0", "1", "0"]), s(&["0", "x1", "1"])])
            .unwrap()
    }

    #[test]
    fn adjugate_inverse() {
        let e = heis(3);
        let w = e.inverse_if_unimodular().unwrap();
        assert!(e.mul(&w).is_identity());
        assert!(w.mul(&e).is_identity());
        assert_eq!(w.get(2, 1).to_string(), "-x1");
    }

    #[test]
    fn non_constant_determinant_rejected() {
        let m = PolyMatrix::parse_rows(1, &[vec!["x1".to_string()]]).unwrap();
        assert!(m.inverse_if_unimodular().is_err());
    }
}
