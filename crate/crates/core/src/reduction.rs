//! Multivariate division with quotient certificates, single reduction steps
//! and S-polynomials.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::order::{MonomialOrder, OrderKey};
use crate::poly::{Exponents, Polynomial, Rational};

/// Witness of `f = sum(q_i * g_i) + r` with `r` irreducible by every `g_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionCertificate {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl DivisionCertificate {
    /// Re-expands `sum(q_i * g_i) + r`.
    pub fn recombine(&self, divisors: &[Polynomial]) -> Polynomial {
        self.quotients.iter().zip(divisors).fold(self.remainder.clone(), |acc, (q, g)| &acc + &(q * g))
    }
}

/// `f - (f_beta y^beta / lt(g)) g` for the term of `f` at `target`.
pub fn reduce_step(f: &Polynomial, g: &Polynomial, target: &Exponents, order: &MonomialOrder) -> Result<Polynomial> {
    if f.dim() != g.dim() {
        return Err(Error::ContextMismatch { expected: f.dim(), found: g.dim() });
    }
    let coeff =
        f.coefficient(target).ok_or_else(|| Error::Precondition("target monomial does not occur in f".into()))?;
    let (lc, lm) = g.leading_term(order)?;
    let shift = target
        .checked_div(lm)
        .ok_or_else(|| Error::Precondition("leading monomial of g does not divide target".into()))?;
    Ok(f - &g.mul_term(&shift, &(coeff / lc)))
}

/// Division of `f` by the ordered tuple `divisors`.
///
/// The largest reducible monomial is always eliminated first, using the
/// first divisor (in tuple order) whose leading monomial divides it.
pub fn remainder(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Result<DivisionCertificate> {
    for g in divisors {
        if g.dim() != f.dim() {
            return Err(Error::ContextMismatch { expected: f.dim(), found: g.dim() });
        }
        if g.is_zero() {
            return Err(Error::Precondition("division by the zero polynomial".into()));
        }
    }
    let refs: Vec<&Polynomial> = divisors.iter().collect();
    let leads = Leads::new(&refs, order);
    let (quotients, remainder) = divide(f, &refs, &leads, order, true);
    Ok(DivisionCertificate { quotients, remainder })
}

/// Remainder only; zero divisors are skipped.
pub(crate) fn normal_form(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let refs: Vec<&Polynomial> = divisors.iter().collect();
    normal_form_by(f, &refs, order)
}

pub(crate) fn normal_form_by(f: &Polynomial, divisors: &[&Polynomial], order: &MonomialOrder) -> Polynomial {
    let leads = Leads::new(divisors, order);
    divide(f, divisors, &leads, order, false).1
}

struct Leads(Vec<Option<(Exponents, Rational)>>);

impl Leads {
    fn new(divisors: &[&Polynomial], order: &MonomialOrder) -> Self {
        Self(divisors.iter().map(|g| g.leading_term(order).ok().map(|(c, e)| (e.clone(), c.clone()))).collect())
    }
}

fn divide(
    f: &Polynomial,
    divisors: &[&Polynomial],
    leads: &Leads,
    order: &MonomialOrder,
    track: bool,
) -> (Vec<Polynomial>, Polynomial) {
    let dim = f.dim();
    let mut work: BTreeMap<OrderKey, (Exponents, Rational)> =
        f.terms().map(|(e, c)| (order.key(e), (e.clone(), c.clone()))).collect();
    let mut quotients: Vec<Vec<(Exponents, Rational)>> =
        alloc::vec![Vec::new(); if track { divisors.len() } else { 0 }];
    let mut rem = Vec::new();

    while let Some((_, (e, c))) = work.pop_last() {
        let hit = leads.0.iter().enumerate().find_map(|(i, lead)| {
            let (lm, lc) = lead.as_ref()?;
            e.checked_div(lm).map(|shift| (i, shift, lm, lc))
        });
        let Some((i, shift, lm, lc)) = hit else {
            rem.push((e, c));
            continue;
        };
        let factor = &c / lc;
        for (ge, gc) in divisors[i].terms() {
            if ge == lm {
                continue;
            }
            let ne = ge.mul(&shift);
            let delta = -(&factor * gc);
            let key = order.key(&ne);
            match work.entry(key) {
                alloc::collections::btree_map::Entry::Vacant(v) => {
                    v.insert((ne, delta));
                }
                alloc::collections::btree_map::Entry::Occupied(mut o) => {
                    o.get_mut().1 += delta;
                    if o.get().1.is_zero() {
                        o.remove();
                    }
                }
            }
        }
        if track {
            quotients[i].push((shift, factor));
        }
    }
    let quotients = quotients.into_iter().map(|terms| Polynomial::from_terms(dim, terms)).collect();
    (quotients, Polynomial::from_terms(dim, rem))
}

/// `S(p, q) = (y^g / lt(p)) p - (y^g / lt(q)) q` with `y^g = lcm(lm(p), lm(q))`.
pub fn s_polynomial(p: &Polynomial, q: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
    if p.dim() != q.dim() {
        return Err(Error::ContextMismatch { expected: p.dim(), found: q.dim() });
    }
    let (pc, pe) = p.leading_term(order)?;
    let (qc, qe) = q.leading_term(order)?;
    let lcm = pe.lcm(qe);
    let left = p.mul_term(&lcm.checked_div(pe).expect("lcm is a multiple"), &pc.recip());
    let right = q.mul_term(&lcm.checked_div(qe).expect("lcm is a multiple"), &qc.recip());
    Ok(&left - &right)
}
