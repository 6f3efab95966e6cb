#![allow(dead_code)]

use gbwalk_core::{Exponents, MonomialOrder, Polynomial, Rational, VariableContext, WeightVector};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn context(n: usize, m: usize) -> VariableContext {
    let xs = ["x", "y", "z"];
    let us = ["u", "v", "w"];
    VariableContext::new(xs[..n].iter().copied(), us[..m].iter().copied()).unwrap()
}

/// Contexts with at least one variable in each block and at most three in total.
pub fn small_context() -> impl Strategy<Value = VariableContext> {
    prop_oneof![Just(context(1, 1)), Just(context(1, 2)), Just(context(2, 1))]
}

pub fn exponents(dim: usize, max: u32) -> impl Strategy<Value = Exponents> {
    prop::collection::vec(0..=max, dim).prop_map(Exponents::new)
}

pub fn coefficient() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(|c| rat(c, 1))
}

pub fn rational_coefficient() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Exponent vectors of total degree at most `deg`.
pub fn bounded_exponents(dim: usize, deg: u32) -> impl Strategy<Value = Exponents> {
    prop::collection::vec(0..=deg, dim)
        .prop_filter("total degree", move |v| v.iter().sum::<u32>() <= deg)
        .prop_map(Exponents::new)
}

/// Up to `terms` terms, integer coefficients in -3..=3, total degree at most `deg`.
pub fn polynomial(dim: usize, terms: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((bounded_exponents(dim, deg), coefficient()), 1..=terms)
        .prop_map(move |ts| Polynomial::from_terms(dim, ts))
}

pub fn nonzero_polynomial(dim: usize, terms: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
    polynomial(dim, terms, deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn rational_polynomial(dim: usize, terms: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((exponents(dim, deg), rational_coefficient()), 0..=terms)
        .prop_map(move |ts| Polynomial::from_terms(dim, ts))
}

/// Generators of a small ideal: 1..=3 polynomials with at most 4 terms of
/// total degree at most 3.
pub fn ideal(dim: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(nonzero_polynomial(dim, 3, 3), 1..=3)
}

/// A context together with an ideal in it.
pub fn problem() -> impl Strategy<Value = (VariableContext, Vec<Polynomial>)> {
    small_context().prop_flat_map(|ctx| {
        let dim = ctx.dim();
        (Just(ctx), ideal(dim))
    })
}

pub fn int_weight(dim: usize, max: i64) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(0..=max, dim).prop_map(|v| WeightVector::from_ints(&v).unwrap())
}

pub fn positive_weight(dim: usize, max: i64) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(1..=max, dim).prop_map(|v| WeightVector::from_ints(&v).unwrap())
}

pub fn rational_weight(dim: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec((0i64..=6, 1i64..=3), dim)
        .prop_map(|v| WeightVector::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()).unwrap())
}

/// `(0, g)` with every entry of `g` in `1..=max`.
pub fn omega_u_target(ctx: &VariableContext, max: i64) -> impl Strategy<Value = WeightVector> {
    let n = ctx.n();
    prop::collection::vec(1..=max, ctx.m()).prop_map(move |g| {
        let mut v = vec![0; n];
        v.extend(g);
        WeightVector::from_ints(&v).unwrap()
    })
}

pub fn permutation(dim: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..dim).collect::<Vec<_>>()).prop_shuffle()
}

/// Weight-matrix order with 0..=2 rational rows and a random tie-break.
pub fn order(dim: usize) -> impl Strategy<Value = MonomialOrder> {
    (prop::collection::vec(rational_weight(dim), 0..=2), permutation(dim))
        .prop_map(|(rows, perm)| MonomialOrder::new(rows, perm).unwrap())
}

pub fn weight_from_ints(v: &[BigInt]) -> WeightVector {
    WeightVector::from_big_ints(v).unwrap()
}

/// Positive combination of `rays` with coefficients from `coeffs` (cycled).
pub fn combine(rays: &[Vec<BigInt>], coeffs: &[u32], dim: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); dim];
    for (i, r) in rays.iter().enumerate() {
        let c = BigInt::from(coeffs[i % coeffs.len()]);
        for (o, x) in out.iter_mut().zip(r) {
            *o += &c * x;
        }
    }
    out
}

/// Polynomial with exponents as a plain list of terms; used as an oracle.
pub fn naive_terms(p: &Polynomial) -> Vec<(Vec<u32>, Rational)> {
    p.terms().map(|(e, c)| (e.as_slice().to_vec(), c.clone())).collect()
}
