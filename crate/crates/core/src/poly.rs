//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under a graded
//! order, so equal polynomials have identical representations and "is zero"
//! is "has no terms".

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::rational::{format_rational, is_neg, parse_rational, Rational};

/// Exponent vector. Ordered by total degree first; within a degree,
/// a larger power of an earlier variable sorts first (so `x1` precedes `x2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The coordinate `x_{j+1}` (0-based `j`).
    pub fn var(nvars: usize, j: usize) -> Self {
        assert!(j < nvars, "variable {j} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            check_dim(nvars, e.len())?;
            p.accumulate(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.exps(), c))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest exponent of `var` over all terms (`None` for zero).
    pub fn min_degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    fn accumulate(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        check_dim(self.nvars, other.nvars)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    /// Product keeping only terms whose exponent of `var` is at most `max`.
    pub fn mul_truncated(&self, other: &Poly, var: usize, max: u32) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial dimension mismatch");
        self.mul_filtered(other, |m| m.0[var] <= max)
    }

    fn mul_filtered(&self, other: &Poly, keep: impl Fn(&Monomial) -> bool) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.times(mb);
                if keep(&m) {
                    out.accumulate(m, ca * cb);
                }
            }
        }
        out
    }

    /// In-place `self += a * b`.
    pub fn add_product(&mut self, a: &Poly, b: &Poly) {
        assert!(
            self.nvars == a.nvars && a.nvars == b.nvars,
            "polynomial dimension mismatch"
        );
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.accumulate(ma.times(mb), ca * cb);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomial dimension mismatch");
        for (m, c) in &other.terms {
            self.accumulate(m.clone(), c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomial dimension mismatch");
        for (m, c) in &other.terms {
            self.accumulate(m.clone(), -c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// ∂/∂x_{j+1} (0-based `j`).
    pub fn try_diff(&self, j: usize) -> Result<Poly> {
        if j >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: j,
                bound: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[j] -= 1;
                out.accumulate(Monomial(exps), c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Panicking form of [`Poly::try_diff`].
    pub fn diff(&self, j: usize) -> Poly {
        self.try_diff(j).expect("derivative index out of range")
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        check_dim(self.nvars, point.len())?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Substitutes the first `values.len()` variables, keeping the variable count.
    pub fn eval_prefix(&self, values: &[Rational]) -> Poly {
        assert!(values.len() <= self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut exps = m.0.clone();
            for (k, x) in values.iter().enumerate() {
                if exps[k] > 0 {
                    v *= num_traits::pow(x.clone(), exps[k] as usize);
                    exps[k] = 0;
                }
            }
            out.accumulate(Monomial(exps), v);
        }
        out
    }

    /// `p(x + shift)`; `shift` may be shorter than the variable count.
    pub fn translate(&self, shift: &[Rational]) -> Poly {
        assert!(shift.len() <= self.nvars);
        let nv = self.nvars;
        // powers[k][e] = (x_k + s_k)^e
        let mut powers: Vec<Vec<Poly>> = (0..shift.len()).map(|_| vec![Poly::one(nv)]).collect();
        let mut out = Poly::zero(nv);
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let mut term = Poly::constant(nv, c.clone());
            for (k, s) in shift.iter().enumerate() {
                let e = rest[k] as usize;
                rest[k] = 0;
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e {
                    let base = &Poly::var(nv, k) + &Poly::constant(nv, s.clone());
                    let next = powers[k].last().unwrap() * &base;
                    powers[k].push(next);
                }
                term = &term * &powers[k][e];
            }
            term = &term * &Poly::monomial(nv, rest, Rational::one());
            out.add_assign_ref(&term);
        }
        out
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        self.filter(|m| m.degree() == d)
    }

    /// Drops terms whose exponent of `var` exceeds `max`.
    pub fn truncate_var(&self, var: usize, max: u32) -> Poly {
        self.filter(|m| m.0[var] <= max)
    }

    /// Coefficient of `var^m`, as a polynomial with that variable removed (exponent 0).
    pub fn coeff_of_var(&self, var: usize, m: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (mono, c) in &self.terms {
            if mono.0[var] == m {
                let mut e = mono.0.clone();
                e[var] = 0;
                out.terms.insert(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Re-expresses in `nvars` variables; new variables get exponent 0.
    pub fn with_nvars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars || self.terms.keys().all(|m| m.0[nvars..].iter().all(|&e| e == 0)));
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Parses the polynomial grammar `1 + 2/3*x1*x2^2`, `-x3`, ...
    /// Variables are 1-based and must not exceed `nvars`.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        Parser::new(s, nvars).poly()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_neg(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| {
                    if e == 1 {
                        format!("x{}", k + 1)
                    } else {
                        format!("x{}^{}", k + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial dimension mismatch")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, nvars: usize) -> Self {
        Parser {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            nvars,
            src,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn poly(&mut self) -> Result<Poly> {
        if self.chars.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut out = Poly::zero(self.nvars);
        let mut sign = if self.eat('-') {
            -Rational::one()
        } else {
            self.eat('+');
            Rational::one()
        };
        loop {
            let t = self.term()?;
            out.add_assign_ref(&t.scale(&sign));
            if self.eat('+') {
                sign = Rational::one();
            } else if self.eat('-') {
                sign = -Rational::one();
            } else if self.peek().is_none() {
                return Ok(out);
            } else {
                return Err(self.err("unexpected character"));
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut exps = vec![0u32; self.nvars];
        let coeff = if let Some(num) = self.digits() {
            let text = if self.eat('/') {
                let den = self.digits().ok_or_else(|| self.err("expected denominator"))?;
                format!("{num}/{den}")
            } else {
                num
            };
            let c = parse_rational(&text)?;
            while self.eat('*') {
                self.var(&mut exps)?;
            }
            c
        } else {
            self.var(&mut exps)?;
            while self.eat('*') {
                self.var(&mut exps)?;
            }
            Rational::one()
        };
        Ok(Poly::monomial(self.nvars, exps, coeff))
    }

    fn var(&mut self, exps: &mut [u32]) -> Result<()> {
        if !self.eat('x') {
            return Err(self.err("expected variable"));
        }
        let idx: usize = self
            .digits()
            .ok_or_else(|| self.err("expected variable index"))?
            .parse()
            .map_err(|_| self.err("variable index too large"))?;
        if idx == 0 || idx > self.nvars {
            return Err(Error::Parse(format!(
                "variable x{idx} outside x1..x{} in {:?}",
                self.nvars, self.src
            )));
        }
        let e: u32 = if self.eat('^') {
            self.digits()
                .ok_or_else(|| self.err("expected exponent"))?
                .parse()
                .map_err(|_| self.err("exponent too large"))?
        } else {
            1
        };
        exps[idx - 1] += e;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x1 + 1", 1) * &p("x1 - 1", 1), p("x1^2 - 1", 1));
    }

    #[test]
    fn zero_is_additive_identity() {
        let a = p("3*x1*x2 - 1/2", 2);
        assert_eq!(&a + &Poly::zero(2), a);
    }

    #[test]
    fn scaling() {
        assert_eq!(p("x1^2*x2", 2).scale(&ratio(1, 2)), p("1/2*x1^2*x2", 2));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x1^2*x2", 2).diff(0), p("2*x1*x2", 2));
        assert!(p("x1", 2).diff(1).is_zero());
        assert_eq!(p("1/2*x1^2", 1).diff(0), p("x1", 1));
        assert!(p("x1", 1).try_diff(1).is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("x1 + x2^2", 2).eval(&[rat(1), rat(2)]).unwrap(), rat(5));
        assert_eq!(p("7 + x1*x2", 2).eval(&[rat(0), rat(0)]).unwrap(), rat(7));
        assert_eq!(p("1/2*x1^2", 1).eval(&[rat(3)]).unwrap(), ratio(9, 2));
        assert!(p("x1", 1).eval(&[rat(1), rat(2)]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(Poly::one(2).checked_add(&Poly::one(3)).is_err());
        assert!(Poly::one(2).checked_mul(&Poly::one(3)).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["1 + 2/3*x1*x2^2", "-x3", "0", "x1 - x2", "-1/2 + x1^3*x2"] {
            let q = p(s, 3);
            assert_eq!(p(&q.to_string(), 3), q);
        }
        assert_eq!(p("2/3*x2^2*x1 + 1", 2).to_string(), "1 + 2/3*x1*x2^2");
        assert_eq!(p("x2 + x1", 2).to_string(), "x1 + x2");
        assert_eq!(p("x1 - x1", 2).to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!(Poly::parse("x4", 3).is_err());
        assert!(Poly::parse("x0", 3).is_err());
        assert!(Poly::parse("2*", 3).is_err());
        assert!(Poly::parse("", 3).is_err());
        assert!(Poly::parse("1/", 3).is_err());
        assert!(Poly::parse("x1 x2", 3).is_err());
        assert_eq!(p(" 2 / 3 * x1 ", 1), p("2/3*x1", 1));
    }

    #[test]
    fn translate_shifts_argument() {
        let q = p("x1^2*x2 + 3", 2);
        let s = [rat(1), rat(-2)];
        let shifted = q.translate(&s);
        for pt in [[rat(0), rat(0)], [rat(2), ratio(1, 3)]] {
            let moved = [&pt[0] + &s[0], &pt[1] + &s[1]];
            assert_eq!(shifted.eval(&pt).unwrap(), q.eval(&moved).unwrap());
        }
    }

    #[test]
    fn variable_slicing() {
        let q = p("x1*x3^2 + x2*x3 + 5", 3);
        assert_eq!(q.coeff_of_var(2, 1), p("x2", 3));
        assert_eq!(q.truncate_var(2, 1), p("x2*x3 + 5", 3));
        assert_eq!(q.min_degree_in(2), Some(0));
        assert_eq!(q.eval_prefix(&[rat(2)]), p("2*x3^2 + x2*x3 + 5", 3));
    }
}
