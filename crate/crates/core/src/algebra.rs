//! Exact sparse Laurent polynomials and tropical semifields.
//!
//! A [`LaurentPolynomial`] lives in `Z[y_1..y_l][x_1^±..x_n^±]`: the `x` block
//! carries integer exponents, the `y` block carries non-negative ones.
//! Coefficients are arbitrary-precision integers. Terms are kept in a
//! `BTreeMap` keyed by [`ExponentVector`], whose ordering is lexicographic on
//! `(y, x)`; this ordering is also the canonical text order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("rank mismatch: ({0}, {1}) vs ({2}, {3})")]
    RankMismatch(usize, usize, usize, usize),
    #[error("negative exponent {exponent} on y{index}")]
    NegativeYExponent { index: usize, exponent: i64 },
    #[error("division is not exact")]
    NotExact,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("y{0} has no assigned semifield element")]
    Unassigned(usize),
    #[error("polynomial has x-exponents; tropical evaluation needs a coefficient polynomial")]
    NotCoefficientPolynomial,
    #[error("coefficient {0} cannot be evaluated in a semifield")]
    NonPositiveCoefficient(BigInt),
    #[error("the zero polynomial has no value in a semifield")]
    EmptySum,
    #[error("semifield generator count mismatch: {0} vs {1}")]
    GeneratorMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exponents of one monomial `y^a x^b`.
///
/// Field order matters: the derived `Ord` compares `y` first, then `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    y: Vec<u32>,
    x: Vec<i32>,
}

impl ExponentVector {
    pub fn new(x: Vec<i32>, y: Vec<u32>) -> Self {
        Self { y, x }
    }

    pub fn zero(nx: usize, ny: usize) -> Self {
        Self { y: vec![0; ny], x: vec![0; nx] }
    }

    /// Builds a vector from signed `y` exponents, rejecting negative entries.
    pub fn from_signed(x: Vec<i32>, y: &[i64]) -> Result<Self, AlgebraError> {
        let y = y
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                u32::try_from(e).map_err(|_| AlgebraError::NegativeYExponent { index: i + 1, exponent: e })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { y, x })
    }

    pub fn x(&self) -> &[i32] {
        &self.x
    }

    pub fn y(&self) -> &[u32] {
        &self.y
    }

    pub fn nx(&self) -> usize {
        self.x.len()
    }

    pub fn ny(&self) -> usize {
        self.y.len()
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().all(|&e| e == 0) && self.y.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        Self {
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
        }
    }

    fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        let y: Vec<i64> = self.y.iter().zip(&other.y).map(|(&a, &b)| a as i64 - b as i64).collect();
        Self::from_signed(self.x.iter().zip(&other.x).map(|(a, b)| a - b).collect(), &y)
    }
}

/// Sparse Laurent polynomial with big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nx: usize,
    ny: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(nx: usize, ny: usize) -> Self {
        Self { nx, ny, terms: BTreeMap::new() }
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        Self::monomial(ExponentVector::zero(nx, ny), BigInt::one())
    }

    pub fn constant(nx: usize, ny: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExponentVector::zero(nx, ny), c.into())
    }

    pub fn monomial(exponents: ExponentVector, coeff: BigInt) -> Self {
        let (nx, ny) = (exponents.nx(), exponents.ny());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        Self { nx, ny, terms }
    }

    /// The variable `x_i` (1-based).
    pub fn x(nx: usize, ny: usize, i: usize) -> Self {
        let mut e = ExponentVector::zero(nx, ny);
        e.x[i - 1] = 1;
        Self::monomial(e, BigInt::one())
    }

    /// The variable `y_i` (1-based).
    pub fn y(nx: usize, ny: usize, i: usize) -> Self {
        let mut e = ExponentVector::zero(nx, ny);
        e.y[i - 1] = 1;
        Self::monomial(e, BigInt::one())
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(nx: usize, ny: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut p = Self::zero(nx, ny);
        for (e, c) in terms {
            if e.nx() != nx || e.ny() != ny {
                return Err(AlgebraError::RankMismatch(nx, ny, e.nx(), e.ny()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    fn check_rank(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nx != other.nx || self.ny != other.ny {
            return Err(AlgebraError::RankMismatch(self.nx, self.ny, other.nx, other.ny));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            nx: self.nx,
            ny: self.ny,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.nx, self.ny);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nx, self.ny);
        for _ in 0..k {
            acc = acc.mul(self).expect("same rank");
        }
        acc
    }

    /// Multiplies every term by the monomial `m`.
    pub fn mul_monomial(&self, m: &ExponentVector) -> Result<Self, AlgebraError> {
        if m.nx() != self.nx || m.ny() != self.ny {
            return Err(AlgebraError::RankMismatch(self.nx, self.ny, m.nx(), m.ny()));
        }
        Ok(Self {
            nx: self.nx,
            ny: self.ny,
            terms: self.terms.iter().map(|(e, c)| (e.mul(m), c.clone())).collect(),
        })
    }

    /// Divides by a unit-coefficient monomial. Always exact in the `x` block;
    /// fails only if a `y` exponent would turn negative.
    pub fn divide_monomial(&self, m: &ExponentVector) -> Result<Self, AlgebraError> {
        if m.nx() != self.nx || m.ny() != self.ny {
            return Err(AlgebraError::RankMismatch(self.nx, self.ny, m.nx(), m.ny()));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.div(m)?, c.clone());
        }
        Ok(Self { nx: self.nx, ny: self.ny, terms })
    }

    /// Exact division by an arbitrary Laurent polynomial.
    ///
    /// Runs leading-term division under the canonical order. Every quotient
    /// term must fall inside the exponent box spanned by `self / divisor`;
    /// leaving it, or a non-divisible leading coefficient, means the quotient
    /// is not in the ring.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(divisor)?;
        let (lead_e, lead_c) = divisor.terms.iter().next_back().ok_or(AlgebraError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        if divisor.len() == 1 {
            let q = self.divide_monomial(lead_e)?;
            return exact_scalar_div(&q, lead_c);
        }
        let (lo, hi) = quotient_box(self, divisor);
        let mut rem = self.clone();
        let mut quotient = Self::zero(self.nx, self.ny);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let qe = e.div(lead_e).map_err(|_| AlgebraError::NotExact)?;
            if !within(&qe, &lo, &hi) {
                return Err(AlgebraError::NotExact);
            }
            if !(c % lead_c).is_zero() {
                return Err(AlgebraError::NotExact);
            }
            let qc = c / lead_c;
            for (de, dc) in &divisor.terms {
                rem.add_term(qe.mul(de), -(dc * &qc));
            }
            quotient.add_term(qe, qc);
        }
        Ok(quotient)
    }

    /// Sets every `x_i` to 1, keeping the `x` block (now all zero).
    pub fn x_to_one(&self) -> Self {
        let mut out = Self::zero(self.nx, self.ny);
        for (e, c) in &self.terms {
            out.add_term(ExponentVector { y: e.y.clone(), x: vec![0; self.nx] }, c.clone());
        }
        out
    }

    /// Sets every `y_i` to 1, dropping the `y` block.
    pub fn y_to_one(&self) -> Self {
        let mut out = Self::zero(self.nx, 0);
        for (e, c) in &self.terms {
            out.add_term(ExponentVector { y: Vec::new(), x: e.x.clone() }, c.clone());
        }
        out
    }

    /// Exponent `d_i >= 0` of `x_i` in the reduced denominator.
    pub fn denominator(&self) -> Vec<u32> {
        (0..self.nx)
            .map(|i| {
                let min = self.terms.keys().map(|e| e.x[i]).min().unwrap_or(0);
                if min < 0 { (-min) as u32 } else { 0 }
            })
            .collect()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn is_coefficient_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.x.iter().all(|&v| v == 0))
    }

    /// Evaluates a coefficient polynomial in a tropical semifield: `+` becomes
    /// componentwise minimum and `y^a` becomes `sum a_i * yhat_i`.
    pub fn tropical_eval(&self, assignment: &[TropicalElement]) -> Result<TropicalElement, AlgebraError> {
        if !self.is_coefficient_polynomial() {
            return Err(AlgebraError::NotCoefficientPolynomial);
        }
        if assignment.len() < self.ny {
            return Err(AlgebraError::Unassigned(assignment.len() + 1));
        }
        let ell = assignment.first().map_or(0, TropicalElement::generators);
        if let Some(bad) = assignment.iter().find(|a| a.generators() != ell) {
            return Err(AlgebraError::GeneratorMismatch(ell, bad.generators()));
        }
        let mut acc: Option<TropicalElement> = None;
        for (e, c) in &self.terms {
            if !c.is_positive() {
                return Err(AlgebraError::NonPositiveCoefficient(c.clone()));
            }
            let mut value = TropicalElement::identity(ell);
            for (i, &a) in e.y.iter().enumerate() {
                value = value.times(&assignment[i].pow(a as i64));
            }
            acc = Some(match acc {
                None => value,
                Some(prev) => prev.oplus(&value),
            });
        }
        acc.ok_or(AlgebraError::EmptySum)
    }

    /// Parses canonical text with the given block sizes.
    pub fn parse(text: &str, nx: usize, ny: usize) -> Result<Self, AlgebraError> {
        parse_poly(text, nx, ny)
    }
}

fn exact_scalar_div(p: &LaurentPolynomial, c: &BigInt) -> Result<LaurentPolynomial, AlgebraError> {
    let mut out = LaurentPolynomial::zero(p.nx, p.ny);
    for (e, v) in &p.terms {
        if !(v % c).is_zero() {
            return Err(AlgebraError::NotExact);
        }
        out.add_term(e.clone(), v / c);
    }
    Ok(out)
}

/// Per-coordinate bounds `[min(a) - max(b), max(a) - min(b)]` for quotient exponents.
fn quotient_box(a: &LaurentPolynomial, b: &LaurentPolynomial) -> (Vec<i64>, Vec<i64>) {
    let coords = |p: &LaurentPolynomial| -> Vec<(i64, i64)> {
        let dims = p.ny + p.nx;
        (0..dims)
            .map(|k| {
                let vals = p.terms.keys().map(|e| coord(e, k));
                let (mut lo, mut hi) = (i64::MAX, i64::MIN);
                for v in vals {
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                (lo, hi)
            })
            .collect()
    };
    let (ca, cb) = (coords(a), coords(b));
    let lo = ca.iter().zip(&cb).map(|(a, b)| a.0 - b.1).collect();
    let hi = ca.iter().zip(&cb).map(|(a, b)| a.1 - b.0).collect();
    (lo, hi)
}

fn coord(e: &ExponentVector, k: usize) -> i64 {
    if k < e.y.len() { e.y[k] as i64 } else { e.x[k - e.y.len()] as i64 }
}

fn within(e: &ExponentVector, lo: &[i64], hi: &[i64]) -> bool {
    (0..lo.len()).all(|k| {
        let v = coord(e, k);
        lo[k] <= v && v <= hi[k]
    })
}

/// Canonical text with a chosen letter for the coefficient block.
pub struct Rendered<'a> {
    poly: &'a LaurentPolynomial,
    letter: char,
}

impl LaurentPolynomial {
    /// Canonical text naming the coefficient variables `letter1, letter2, ...`.
    pub fn render(&self, letter: char) -> Rendered<'_> {
        Rendered { poly: self, letter }
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Canonical text: terms in `(y, x)` lex order joined by `" + "`, each term
    /// `c * y1^a1 * ... * x1^b1 * ...` with unit coefficients and exponents
    /// omitted. The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render('y').fmt(f)
    }
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (poly, letter) = (self.poly, self.letter);
        if poly.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &poly.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (i, &a) in e.y.iter().enumerate() {
                match a {
                    0 => {}
                    1 => factors.push(format!("{letter}{}", i + 1)),
                    _ => factors.push(format!("{letter}{}^{}", i + 1, a)),
                }
            }
            for (i, &b) in e.x.iter().enumerate() {
                match b {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, b)),
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                f.write_str(&factors.join(" * "))?;
            } else {
                write!(f, "{c} * {}", factors.join(" * "))?;
            }
        }
        Ok(())
    }
}

fn parse_poly(text: &str, nx: usize, ny: usize) -> Result<LaurentPolynomial, AlgebraError> {
    let text = text.trim();
    if text == "0" {
        return Ok(LaurentPolynomial::zero(nx, ny));
    }
    let mut out = LaurentPolynomial::zero(nx, ny);
    for raw in text.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(AlgebraError::Parse(format!("empty term in {text:?}")));
        }
        let mut e = ExponentVector::zero(nx, ny);
        let mut coeff = BigInt::one();
        for (pos, tok) in term.split('*').map(str::trim).enumerate() {
            if let Ok(c) = BigInt::from_str(tok) {
                if pos != 0 {
                    return Err(AlgebraError::Parse(format!("coefficient {tok:?} must lead the term")));
                }
                coeff = c;
                continue;
            }
            let (var, exp) = match tok.split_once('^') {
                Some((v, x)) => {
                    let x: i64 = x.trim().parse().map_err(|_| AlgebraError::Parse(format!("bad exponent in {tok:?}")))?;
                    (v.trim(), x)
                }
                None => (tok, 1),
            };
            let (block, idx) = var.split_at(1.min(var.len()));
            let idx: usize = idx.parse().map_err(|_| AlgebraError::Parse(format!("bad variable {var:?}")))?;
            match block {
                "x" if (1..=nx).contains(&idx) => {
                    e.x[idx - 1] += i32::try_from(exp).map_err(|_| AlgebraError::Parse(format!("exponent out of range in {tok:?}")))?;
                }
                "y" if (1..=ny).contains(&idx) => {
                    let v = e.y[idx - 1] as i64 + exp;
                    e.y[idx - 1] = u32::try_from(v).map_err(|_| AlgebraError::NegativeYExponent { index: idx, exponent: v })?;
                }
                _ => return Err(AlgebraError::Parse(format!("unknown variable {var:?}"))),
            }
        }
        out.add_term(e, coeff);
    }
    Ok(out)
}

/// `Trop(u_1, ..., u_l)`: elements are exponent vectors of the `u_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TropicalSemifield {
    generators: usize,
}

impl TropicalSemifield {
    pub fn new(generators: usize) -> Self {
        Self { generators }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn identity(&self) -> TropicalElement {
        TropicalElement::identity(self.generators)
    }

    /// The generator `u_i` (1-based).
    pub fn generator(&self, i: usize) -> TropicalElement {
        let mut v = vec![0; self.generators];
        v[i - 1] = 1;
        TropicalElement(v)
    }

    pub fn element(&self, exponents: Vec<i64>) -> Result<TropicalElement, AlgebraError> {
        if exponents.len() != self.generators {
            return Err(AlgebraError::GeneratorMismatch(self.generators, exponents.len()));
        }
        Ok(TropicalElement(exponents))
    }
}

/// A Laurent monomial `prod u_i^{a_i}` of a tropical semifield.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropicalElement(Vec<i64>);

impl TropicalElement {
    pub fn identity(generators: usize) -> Self {
        Self(vec![0; generators])
    }

    pub fn new(exponents: Vec<i64>) -> Self {
        Self(exponents)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn generators(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Semifield multiplication.
    pub fn times(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Semifield addition.
    pub fn oplus(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn pow(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(x: &[i32], y: &[u32]) -> ExponentVector {
        ExponentVector::new(x.to_vec(), y.to_vec())
    }

    fn mono(x: &[i32], y: &[u32], c: i64) -> LaurentPolynomial {
        LaurentPolynomial::monomial(ev(x, y), BigInt::from(c))
    }

    #[test]
    fn add_two_summands_of_example_a() {
        // x3^2 y1 y3 y5 + x3 x4 y1 y3
        let a = mono(&[0, 0, 2, 0, 0], &[1, 0, 1, 0, 1], 1);
        let b = mono(&[0, 0, 1, 1, 0], &[1, 0, 1, 0, 0], 1);
        let s = a.add(&b).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_string(), "y1 * y3 * x3 * x4 + y1 * y3 * y5 * x3^2");
    }

    #[test]
    fn add_zero_is_identity() {
        let p = mono(&[1, -2], &[0, 3], 7);
        assert_eq!(p.add(&LaurentPolynomial::zero(2, 2)).unwrap(), p);
    }

    #[test]
    fn add_doubles_repeated_monomial() {
        let t = mono(&[0, 2, 0, 2], &[1, 1, 1, 1], 1);
        let s = t.add(&t).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&ev(&[0, 2, 0, 2], &[1, 1, 1, 1])), BigInt::from(2));
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let a = LaurentPolynomial::one(2, 2);
        let b = LaurentPolynomial::one(3, 3);
        assert!(matches!(a.add(&b), Err(AlgebraError::RankMismatch(..))));
        assert!(matches!(a.mul(&b), Err(AlgebraError::RankMismatch(..))));
    }

    #[test]
    fn mul_cancels_exponents() {
        let inv = mono(&[0, 0, -1, 0, 0], &[0; 5], 1);
        let p = mono(&[0, 0, 1, 1, 0], &[0; 5], 1);
        assert_eq!(inv.mul(&p).unwrap(), LaurentPolynomial::x(5, 5, 4));
        assert_eq!(p.mul(&LaurentPolynomial::one(5, 5)).unwrap(), p);
    }

    #[test]
    fn monomial_division() {
        let p = mono(&[1, 0, 1, 0, 1], &[0; 5], 3);
        let q = p.divide_monomial(&ev(&[1, 0, 1, 0, 1], &[0; 5])).unwrap();
        assert_eq!(q, LaurentPolynomial::constant(5, 5, 3));
        assert_eq!(p.divide_monomial(&ExponentVector::zero(5, 5)).unwrap(), p);
        assert!(p.divide_monomial(&ev(&[0; 5], &[1, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn exact_division_and_failure() {
        let n = 2;
        let x1 = LaurentPolynomial::x(n, n, 1);
        let x2 = LaurentPolynomial::x(n, n, 2);
        let y1 = LaurentPolynomial::y(n, n, 1);
        let f = x1.add(&y1.mul(&x2).unwrap()).unwrap();
        let g = x1.mul(&x1).unwrap().add(&x2).unwrap();
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod.div_exact(&f).unwrap(), g);
        assert_eq!(prod.div_exact(&g).unwrap(), f);
        assert_eq!(prod.add(&x1).unwrap().div_exact(&f), Err(AlgebraError::NotExact));
        assert_eq!(x1.div_exact(&x1.add(&x2).unwrap()), Err(AlgebraError::NotExact));
        assert_eq!(x1.div_exact(&LaurentPolynomial::zero(n, n)), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn text_form_of_special_values() {
        assert_eq!(LaurentPolynomial::zero(2, 2).to_string(), "0");
        assert_eq!(LaurentPolynomial::one(2, 2).to_string(), "1");
        assert_eq!(mono(&[-1, 0], &[0, 2], -3).to_string(), "-3 * y2^2 * x1^-1");
        let p = mono(&[-1, 0], &[0, 2], -3).add(&LaurentPolynomial::one(2, 2)).unwrap();
        assert_eq!(p.to_string(), "1 + -3 * y2^2 * x1^-1");
        assert_eq!(LaurentPolynomial::parse("1 + -3 * y2^2 * x1^-1", 2, 2).unwrap(), p);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(LaurentPolynomial::parse("x3", 2, 2).is_err());
        assert!(LaurentPolynomial::parse("z1", 2, 2).is_err());
        assert!(LaurentPolynomial::parse("x1 + ", 2, 2).is_err());
        assert!(LaurentPolynomial::parse("y1^-1", 2, 2).is_err());
        assert!(LaurentPolynomial::parse("x1 * 3", 2, 2).is_err());
    }

    #[test]
    fn tropical_eval_of_constant_one() {
        let one = LaurentPolynomial::one(3, 3);
        let assign = vec![TropicalElement::new(vec![1, 0]); 3];
        assert!(one.tropical_eval(&assign).unwrap().is_identity());
    }

    #[test]
    fn tropical_eval_errors() {
        let p = LaurentPolynomial::y(2, 2, 2);
        assert_eq!(p.tropical_eval(&[TropicalElement::identity(1)]), Err(AlgebraError::Unassigned(2)));
        assert_eq!(
            LaurentPolynomial::x(2, 2, 1).tropical_eval(&vec![TropicalElement::identity(1); 2]),
            Err(AlgebraError::NotCoefficientPolynomial)
        );
        assert_eq!(LaurentPolynomial::zero(2, 2).tropical_eval(&vec![TropicalElement::identity(1); 2]), Err(AlgebraError::EmptySum));
        assert!(p.neg().tropical_eval(&vec![TropicalElement::identity(1); 2]).is_err());
    }

    #[test]
    fn tropical_axioms_small() {
        let s = TropicalSemifield::new(2);
        let a = s.element(vec![1, -3]).unwrap();
        let b = s.element(vec![0, 2]).unwrap();
        let c = s.element(vec![-1, 5]).unwrap();
        assert_eq!(a.oplus(&a), a);
        assert_eq!(a.oplus(&b), b.oplus(&a));
        assert_eq!(a.oplus(&b).oplus(&c), a.oplus(&b.oplus(&c)));
        assert_eq!(a.times(&b.oplus(&c)), a.times(&b).oplus(&a.times(&c)));
        assert_eq!(s.generator(2).exponents(), &[0, 1]);
        assert!(s.element(vec![1]).is_err());
    }

    fn small_poly(nx: usize, ny: usize) -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec(
            (prop::collection::vec(-2i32..3, nx), prop::collection::vec(0u32..3, ny), -4i64..5),
            0..5,
        )
        .prop_map(move |terms| {
            LaurentPolynomial::from_terms(
                nx,
                ny,
                terms.into_iter().map(|(x, y, c)| (ExponentVector::new(x, y), BigInt::from(c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(2, 2), b in small_poly(2, 2), c in small_poly(2, 2)) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert!(a.sub(&a).unwrap().is_zero());
        }

        #[test]
        fn text_round_trip(a in small_poly(3, 2)) {
            let s = a.to_string();
            let back = LaurentPolynomial::parse(&s, 3, 2).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), s);
        }

        #[test]
        fn monomial_division_round_trip(a in small_poly(3, 2), x in prop::collection::vec(-3i32..4, 3), y in prop::collection::vec(0u32..3, 2)) {
            let m = ExponentVector::new(x, y);
            prop_assert_eq!(a.mul_monomial(&m).unwrap().divide_monomial(&m).unwrap(), a);
        }

        #[test]
        fn exact_division_round_trip(a in small_poly(2, 1), b in small_poly(2, 1)) {
            prop_assume!(!b.is_zero());
            let prod = a.mul(&b).unwrap();
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }
    }
}
