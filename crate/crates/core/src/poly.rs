//! Exact multivariate polynomials over the rationals.
//!
//! Variables are split into an `X` block (kept) and a `U` block (to be
//! eliminated). The global variable order is the `X` block followed by the
//! `U` block, and every exponent vector and weight vector uses that layout.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::order::MonomialOrder;

/// Exact rational coefficient.
pub type Rational = BigRational;

pub(crate) fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// The declared variables, split into the kept block and the eliminated block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    x_vars: Vec<String>,
    u_vars: Vec<String>,
}

impl VariableContext {
    pub fn new<S: Into<String>>(
        x_vars: impl IntoIterator<Item = S>,
        u_vars: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let x_vars: Vec<String> = x_vars.into_iter().map(Into::into).collect();
        let u_vars: Vec<String> = u_vars.into_iter().map(Into::into).collect();
        if x_vars.is_empty() && u_vars.is_empty() {
            return Err(Error::InvalidContext("no variables declared".into()));
        }
        let mut seen = alloc::collections::BTreeSet::new();
        for name in x_vars.iter().chain(u_vars.iter()) {
            if name.is_empty() {
                return Err(Error::InvalidContext("empty variable name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidContext(alloc::format!("variable `{name}` declared twice")));
            }
        }
        Ok(Self { x_vars, u_vars })
    }

    /// Number of kept variables.
    pub fn n(&self) -> usize {
        self.x_vars.len()
    }

    /// Number of eliminated variables.
    pub fn m(&self) -> usize {
        self.u_vars.len()
    }

    pub fn dim(&self) -> usize {
        self.n() + self.m()
    }

    pub fn x_vars(&self) -> &[String] {
        &self.x_vars
    }

    pub fn u_vars(&self) -> &[String] {
        &self.u_vars
    }

    pub fn name(&self, index: usize) -> &str {
        if index < self.n() {
            &self.x_vars[index]
        } else {
            &self.u_vars[index - self.n()]
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.x_vars.iter().chain(self.u_vars.iter()).map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names().position(|v| v == name)
    }

    pub fn is_u_index(&self, index: usize) -> bool {
        index >= self.n()
    }
}

/// Exponent tuple of a monomial, laid out as `(x_1..x_n, u_1..u_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn zero(dim: usize) -> Self {
        Self(alloc::vec![0; dim])
    }

    /// The exponent of the single variable `index`.
    pub fn var(dim: usize, index: usize) -> Self {
        let mut e = Self::zero(dim);
        e.0[index] = 1;
        e
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// `self` divides `other`, i.e. `self <= other` componentwise.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.divides(self) {
            Some(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    /// True when the `U` block is zero, i.e. the monomial lies in `K[X]`.
    pub fn in_x_ring(&self, ctx: &VariableContext) -> bool {
        self.0[ctx.n()..].iter().all(|&e| e == 0)
    }

    /// Signed difference `self - other` as an integer vector.
    pub fn difference(&self, other: &Self) -> Vec<BigInt> {
        self.0.iter().zip(&other.0).map(|(&a, &b)| BigInt::from(a) - BigInt::from(b)).collect()
    }

    fn write_monomial(&self, ctx: &VariableContext, out: &mut String) -> bool {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(ctx.name(i));
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        !first
    }
}

/// A weight vector in the nonnegative orthant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|w| w.is_negative()) {
            return Err(Error::NegativeWeight(i));
        }
        Ok(Self(entries))
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&v| int(v)).collect())
    }

    pub fn from_big_ints(entries: &[BigInt]) -> Result<Self> {
        Self::new(entries.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self(alloc::vec![Rational::zero(); dim])
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, alpha: &Exponents) -> Rational {
        let mut acc = Rational::zero();
        for (w, &e) in self.0.iter().zip(alpha.as_slice()) {
            if e != 0 && !w.is_zero() {
                acc += w * Rational::from_integer(BigInt::from(e));
            }
        }
        acc
    }

    /// Dot product with an integer vector (e.g. a cone normal).
    pub fn dot_int(&self, v: &[BigInt]) -> Rational {
        self.0.iter().zip(v).fold(Rational::zero(), |acc, (w, c)| acc + w * Rational::from_integer(c.clone()))
    }

    /// The point `self + t * (other - self)`.
    pub fn lerp(&self, other: &Self, t: &Rational) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + t * (b - a)).collect())
    }

    /// True when every `X` entry is zero (membership in the face `Omega_u`).
    pub fn in_omega_u(&self, ctx: &VariableContext) -> bool {
        self.0[..ctx.n()].iter().all(Zero::is_zero)
    }

    /// Positive multiple with integer entries and gcd 1 (zero stays zero).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let denom_lcm = self.0.iter().fold(BigInt::one(), |acc, w| num_integer::Integer::lcm(&acc, w.denom()));
        let ints: Vec<BigInt> =
            self.0.iter().map(|w| (w * Rational::from_integer(denom_lcm.clone())).to_integer()).collect();
        crate::linalg::make_primitive(ints)
    }
}

impl core::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

/// Sparse polynomial: exponent vector to nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(dim, Exponents::zero(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn monomial(dim: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), dim, "exponent length does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { dim, terms }
    }

    pub fn var(dim: usize, index: usize) -> Self {
        Self::monomial(dim, Exponents::var(dim, index), Rational::one())
    }

    /// Builds a polynomial from possibly repeated terms; like terms are merged.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim, "exponent length does not match ring");
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from `(coefficient, exponents)` integer pairs.
    pub fn from_int_terms(dim: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(dim, terms.iter().map(|(c, e)| (Exponents::new(e.to_vec()), int(*c))))
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponents) -> Option<&Rational> {
        self.terms.get(e)
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponents> {
        self.terms.keys()
    }

    /// True when every monomial lies in `K[X]`.
    pub fn in_x_ring(&self, ctx: &VariableContext) -> bool {
        self.terms.keys().all(|e| e.in_x_ring(ctx))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::ContextMismatch { expected: self.dim, found: other.dim })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self { dim: self.dim, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// `c * y^shift * self`.
    pub fn mul_term(&self, shift: &Exponents, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self { dim: self.dim, terms: self.terms.iter().map(|(e, v)| (e.mul(shift), v * c)).collect() }
    }

    /// `max { w . alpha }` over the support.
    pub fn weighted_degree(&self, w: &WeightVector) -> Result<Rational> {
        self.check_weight(w)?;
        self.terms.keys().map(|e| w.dot(e)).max().ok_or(Error::ZeroPolynomial)
    }

    /// Sum of the terms of maximal `w`-degree.
    pub fn initial_form(&self, w: &WeightVector) -> Result<Self> {
        let top = self.weighted_degree(w)?;
        Ok(Self {
            dim: self.dim,
            terms: self.terms.iter().filter(|(e, _)| w.dot(e) == top).map(|(e, c)| (e.clone(), c.clone())).collect(),
        })
    }

    fn check_weight(&self, w: &WeightVector) -> Result<()> {
        if w.len() == self.dim {
            Ok(())
        } else {
            Err(Error::ContextMismatch { expected: self.dim, found: w.len() })
        }
    }

    /// The `order`-maximal term.
    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(&Rational, &Exponents)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0)).map(|(e, c)| (c, e)).ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_exponent(&self, order: &MonomialOrder) -> Option<&Exponents> {
        self.terms.keys().max_by(|a, b| order.compare(a, b))
    }

    pub fn leading_coefficient(&self, order: &MonomialOrder) -> Option<&Rational> {
        self.leading_term(order).ok().map(|(c, _)| c)
    }

    /// Divides by the leading coefficient so that it becomes 1.
    pub fn normed(&self, order: &MonomialOrder) -> Self {
        match self.leading_coefficient(order) {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Terms sorted strictly descending under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Exponents, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| order.compare(b.0, a.0));
        t
    }

    /// Canonical text, e.g. `3*x^2*u - 1/2*u + 1`, terms descending under `order`.
    pub fn to_text(&self, ctx: &VariableContext, order: &MonomialOrder) -> String {
        write_terms(ctx, self.sorted_terms(order))
    }
}

pub(crate) fn write_terms(ctx: &VariableContext, terms: Vec<(&Exponents, &Rational)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        if e.is_one() {
            let _ = write!(out, "{abs}");
        } else {
            if !abs.is_one() {
                let _ = write!(out, "{abs}*");
            }
            e.write_monomial(ctx, &mut out);
        }
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "polynomials from different rings");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "polynomials from different rings");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "polynomials from different rings");
        let mut out = Polynomial::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { dim: self.dim, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::MonomialOrder;

    fn ctx_xu() -> VariableContext {
        VariableContext::new(["x"], ["u"]).unwrap()
    }

    // x^2 - 1 over (x, u)
    fn x2m1() -> Polynomial {
        Polynomial::from_int_terms(2, &[(1, &[2, 0]), (-1, &[0, 0])])
    }

    #[test]
    fn add_cancels_constant() {
        let p = &x2m1() + &Polynomial::one(2);
        assert_eq!(p, Polynomial::from_int_terms(2, &[(1, &[2, 0])]));
    }

    #[test]
    fn mul_by_zero_is_zero() {
        assert!((&x2m1() * &Polynomial::zero(2)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let a = Polynomial::from_int_terms(2, &[(1, &[1, 0]), (1, &[0, 1])]);
        let b = Polynomial::from_int_terms(2, &[(1, &[1, 0]), (-1, &[0, 1])]);
        // hand expansion: x^2 - xu + ux - u^2
        let expected = Polynomial::from_int_terms(2, &[(1, &[2, 0]), (-1, &[0, 2])]);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let err = x2m1().checked_add(&Polynomial::one(3)).unwrap_err();
        assert_eq!(err, Error::ContextMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn weighted_degrees() {
        let w = WeightVector::from_ints(&[1, 1]).unwrap();
        assert_eq!(x2m1().weighted_degree(&w).unwrap(), int(2));

        let f = Polynomial::from_int_terms(3, &[(1, &[1, 0, 0]), (1, &[0, 1, 0]), (1, &[0, 0, 1])]);
        let w = WeightVector::from_ints(&[9, 6, 5]).unwrap();
        assert_eq!(f.weighted_degree(&w).unwrap(), int(9));

        let c = Polynomial::constant(2, int(7));
        assert_eq!(c.weighted_degree(&w_any()).unwrap(), int(0));
        assert_eq!(Polynomial::zero(2).weighted_degree(&w_any()), Err(Error::ZeroPolynomial));
    }

    fn w_any() -> WeightVector {
        WeightVector::from_ints(&[3, 5]).unwrap()
    }

    #[test]
    fn initial_forms() {
        // u^2 - xu - 1 at (1,1) keeps u^2 - xu
        let f = Polynomial::from_int_terms(2, &[(1, &[0, 2]), (-1, &[1, 1]), (-1, &[0, 0])]);
        let w = WeightVector::from_ints(&[1, 1]).unwrap();
        let expected = Polynomial::from_int_terms(2, &[(1, &[0, 2]), (-1, &[1, 1])]);
        assert_eq!(f.initial_form(&w).unwrap(), expected);

        let zero_w = WeightVector::zero(2);
        assert_eq!(x2m1().initial_form(&zero_w).unwrap(), x2m1());

        // x u^2 - x - u at (0,1) keeps x u^2
        let g = Polynomial::from_int_terms(2, &[(1, &[1, 2]), (-1, &[1, 0]), (-1, &[0, 1])]);
        let w = WeightVector::from_ints(&[0, 1]).unwrap();
        assert_eq!(g.initial_form(&w).unwrap(), Polynomial::from_int_terms(2, &[(1, &[1, 2])]));
    }

    #[test]
    fn negative_weights_rejected() {
        assert_eq!(WeightVector::from_ints(&[1, -2]), Err(Error::NegativeWeight(1)));
    }

    #[test]
    fn context_validation() {
        assert!(VariableContext::new(["x"], ["x"]).is_err());
        assert!(VariableContext::new(Vec::<&str>::new(), Vec::new()).is_err());
        let ctx = VariableContext::new(["x", "y"], ["u"]).unwrap();
        assert_eq!(ctx.index_of("u"), Some(2));
        assert!(ctx.is_u_index(2));
    }

    #[test]
    fn canonical_text() {
        let ctx = ctx_xu();
        let lex = MonomialOrder::lex(2);
        let f = Polynomial::from_terms(
            2,
            [
                (Exponents::new(alloc::vec![2, 1]), int(3)),
                (Exponents::new(alloc::vec![0, 1]), Rational::new(BigInt::from(-1), BigInt::from(2))),
                (Exponents::zero(2), int(1)),
            ],
        );
        assert_eq!(f.to_text(&ctx, &lex), "3*x^2*u - 1/2*u + 1");
        assert_eq!((-&Polynomial::var(2, 0)).to_text(&ctx, &lex), "-x");
        assert_eq!(Polynomial::zero(2).to_text(&ctx, &lex), "0");
    }
}
