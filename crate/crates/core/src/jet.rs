//! Truncated power series in the deformation parameter `t`.

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::rational::Rational;

/// Ring operations a jet coefficient needs.
pub trait JetCoeff: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&self, other: &Self) -> Self;
    fn sub_coeff(&self, other: &Self) -> Self;
    fn mul_coeff(&self, other: &Self) -> Self;
}

/// Coefficients with a multiplicative identity (square matrices).
pub trait UnitCoeff: JetCoeff {
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool;
}

impl JetCoeff for Rational {
    fn zero_like(&self) -> Self {
        crate::rational::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_coeff(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_coeff(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_coeff(&self, o: &Self) -> Self {
        self * o
    }
}

impl JetCoeff for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_coeff(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_coeff(&self, o: &Self) -> Self {
        self * o
    }
}

impl JetCoeff for PolyMatrix {
    fn zero_like(&self) -> Self {
        PolyMatrix::zero(self.rows(), self.cols(), self.nvars())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_coeff(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_coeff(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

impl UnitCoeff for PolyMatrix {
    fn identity_like(&self) -> Self {
        PolyMatrix::identity(self.rows(), self.nvars())
    }
    fn is_identity(&self) -> bool {
        PolyMatrix::is_identity(self)
    }
}

impl JetCoeff for RatMatrix {
    fn zero_like(&self) -> Self {
        RatMatrix::zero(self.rows(), self.cols())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_coeff(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_coeff(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

impl UnitCoeff for RatMatrix {
    fn identity_like(&self) -> Self {
        RatMatrix::identity(self.rows())
    }
    fn is_identity(&self) -> bool {
        RatMatrix::is_identity(self)
    }
}

/// `Σ_{m=0..K} c_m t^m`, arithmetic modulo `t^{K+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TJet<T> {
    coeffs: Vec<T>,
}

impl<T: JetCoeff> TJet<T> {
    /// `coeffs[m]` multiplies `t^m`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("a jet needs at least one coefficient".into()));
        }
        Ok(TJet { coeffs })
    }

    /// `c + 0·t + ... + 0·t^K`.
    pub fn constant(c: T, order: usize) -> Self {
        let z = c.zero_like();
        let mut coeffs = vec![c];
        coeffs.resize(order + 1, z);
        TJet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &T {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        crate::error::check_dim(self.order(), other.order())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TJet {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add_coeff(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TJet {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub_coeff(b)).collect(),
        })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let k = self.order();
        let coeffs = (0..=k)
            .map(|m| {
                (0..=m).fold(self.coeffs[0].zero_like(), |acc, l| {
                    let (a, b) = (&self.coeffs[l], &other.coeffs[m - l]);
                    if a.is_zero_coeff() || b.is_zero_coeff() {
                        acc
                    } else {
                        acc.add_coeff(&a.mul_coeff(b))
                    }
                })
            })
            .collect();
        Ok(TJet { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero_coeff)
    }

    /// Smallest `m` with a nonzero coefficient.
    pub fn lowest_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_coeff())
    }

    pub fn map<U: JetCoeff>(&self, f: impl Fn(&T) -> U) -> TJet<U> {
        TJet {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<T: UnitCoeff> TJet<T> {
    /// Series inverse of a jet whose `t^0` coefficient is the identity:
    /// `g_0 = I`, `g_m = -Σ_{l=1..m} f_l g_{m-l}`.
    pub fn invert(&self) -> Result<Self> {
        if !self.coeffs[0].is_identity() {
            return Err(Error::NonIdentityLead);
        }
        let mut g: Vec<T> = vec![self.coeffs[0].identity_like()];
        for m in 1..=self.order() {
            let mut acc = self.coeffs[0].zero_like();
            for l in 1..=m {
                let f = &self.coeffs[l];
                if !f.is_zero_coeff() {
                    acc = acc.add_coeff(&f.mul_coeff(&g[m - l]));
                }
            }
            g.push(acc.zero_like().sub_coeff(&acc));
        }
        Ok(TJet { coeffs: g })
    }
}

impl TJet<PolyMatrix> {
    pub fn eval(&self, point: &[Rational]) -> Result<TJet<RatMatrix>> {
        Ok(TJet {
            coeffs: self.coeffs.iter().map(|c| c.eval(point)).collect::<Result<_>>()?,
        })
    }

    /// `Σ c_m t^m` as one matrix over `nvars + 1` variables (t last).
    pub fn to_poly_in_t(&self) -> PolyMatrix {
        let c0 = &self.coeffs[0];
        let nv = c0.nvars() + 1;
        let t = nv - 1;
        let mut out = PolyMatrix::zero(c0.rows(), c0.cols(), nv);
        for (m, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0u32; nv];
            e[t] = m as u32;
            let tm = Poly::monomial(nv, e, crate::rational::one());
            out = out.add(&c.with_nvars(nv).map(|p| p * &tm));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn nilpotent_inverse() {
        let a = rm(&[&[0, 1], &[0, 0]]);
        let f = TJet::new(vec![RatMatrix::identity(2), a.clone(), RatMatrix::zero(2, 2)]).unwrap();
        let g = f.invert().unwrap();
        assert_eq!(g.coeff(1), &a.scale(&rat(-1)));
        assert!(g.coeff(2).is_zero());
    }

    #[test]
    fn identity_inverse() {
        let f = TJet::constant(RatMatrix::identity(3), 4);
        assert_eq!(f.invert().unwrap(), f);
    }

    #[test]
    fn generic_second_order() {
        let a = rm(&[&[1, 2], &[3, 4]]);
        let f = TJet::new(vec![RatMatrix::identity(2), a.clone(), RatMatrix::zero(2, 2)]).unwrap();
        let g = f.invert().unwrap();
        assert_eq!(g.coeff(1), &a.scale(&rat(-1)));
        assert_eq!(g.coeff(2), &a.mul(&a));
        assert!(f.mul(&g).unwrap().coeffs().iter().skip(1).all(RatMatrix::is_zero));
    }

    #[test]
    fn non_identity_lead_rejected() {
        let f = TJet::constant(RatMatrix::identity(2).scale(&rat(2)), 1);
        assert_eq!(f.invert(), Err(Error::NonIdentityLead));
    }
}
