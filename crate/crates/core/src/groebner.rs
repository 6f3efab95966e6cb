//! Buchberger's algorithm, interreduction to the normed reduced basis, and
//! the ideal-specific elimination predicates built on top of it.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::One;

use crate::error::{Error, Result};
use crate::order::{MonomialOrder, OrderKey};
use crate::poly::{Exponents, Polynomial, VariableContext};
use crate::reduction::{normal_form, normal_form_by, s_polynomial};

/// A Gröbner basis tagged with the order it was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    polys: Vec<Polynomial>,
    order: MonomialOrder,
    reduced: bool,
    normed: bool,
}

/// Order in which critical pairs are processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    /// First in, first out.
    Fifo,
    /// Smallest lcm of the leading monomials first.
    Normal,
}

/// Knobs for [`buchberger_with`]. None of them changes the reduced basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Skip pairs whose leading monomials are coprime.
    pub coprime_criterion: bool,
    /// Skip `(i, j)` when some `lm(g_k)` divides their lcm and both `(i, k)`
    /// and `(j, k)` were already handled.
    pub chain_criterion: bool,
    pub selection: PairSelection,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        Self { coprime_criterion: true, chain_criterion: true, selection: PairSelection::Normal }
    }
}

/// Hooks called with every intermediate polynomial set of a conversion.
pub trait ConversionObserver {
    /// After the input is loaded and after each new S-polynomial remainder.
    fn buchberger_state(&mut self, _basis: &[Polynomial], _order: &MonomialOrder) {}
    /// After the input is loaded and after each replacement `p -> p'`.
    fn interreduce_state(&mut self, _basis: &[Polynomial], _order: &MonomialOrder) {}
}

impl ConversionObserver for () {}

impl GroebnerBasis {
    /// Wraps polynomials already known to form a Gröbner basis under `order`.
    pub(crate) fn from_completed(polys: Vec<Polynomial>, order: MonomialOrder) -> Self {
        Self { polys, order, reduced: false, normed: false }
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<Polynomial> {
        self.polys
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_normed(&self) -> bool {
        self.normed
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.order.dim()
    }

    /// Elements whose leading term lies in `K[X]`.
    pub fn lead_x(&self, ctx: &VariableContext) -> Vec<Polynomial> {
        lead_x(&self.polys, &self.order, ctx)
    }

    /// True when every element with leading term in `K[X]` lies in `K[X]`.
    pub fn is_ideal_specific_eo(&self, ctx: &VariableContext) -> Result<bool> {
        if !self.reduced || !self.normed {
            return Err(Error::Precondition("ideal-specific test needs the normed reduced basis".into()));
        }
        Ok(self.lead_x(ctx).iter().all(|g| g.in_x_ring(ctx)))
    }

    /// `G ∩ K[X]`, the reduced basis of the elimination ideal.
    pub fn elimination_basis(&self, ctx: &VariableContext) -> Result<Vec<Polynomial>> {
        if !self.is_ideal_specific_eo(ctx)? {
            return Err(Error::NotIdealSpecific);
        }
        Ok(self.polys.iter().filter(|g| g.in_x_ring(ctx)).cloned().collect())
    }

    /// Polynomials in canonical text, sorted ascending by leading monomial.
    pub fn to_text(&self, ctx: &VariableContext) -> Vec<String> {
        self.polys.iter().map(|p| p.to_text(ctx, &self.order)).collect()
    }

    /// Order-independent identifier of the basis (as a set of polynomials).
    ///
    /// Two orders in the same Gröbner cone may sort non-leading terms
    /// differently, so this uses a fixed term order per polynomial and sorts
    /// the polynomials by their leading monomial under that fixed order.
    pub fn canonical_key(&self, ctx: &VariableContext) -> String {
        let fixed = MonomialOrder::lex(ctx.dim());
        let mut parts: Vec<(crate::poly::Exponents, String)> = self
            .polys
            .iter()
            .map(|p| {
                let lead = self.order_lead(p).clone();
                let mut rest: Vec<_> = p.terms().filter(|(e, _)| **e != lead).collect();
                rest.sort_by(|a, b| fixed.compare(b.0, a.0));
                let mut terms = alloc::vec![(&lead, p.coefficient(&lead).expect("lead term"))];
                terms.extend(rest);
                (lead.clone(), crate::poly::write_terms(ctx, terms))
            })
            .collect();
        parts.sort_by(|a, b| fixed.compare(&a.0, &b.0));
        let texts: Vec<String> = parts.into_iter().map(|(_, s)| s).collect();
        texts.join("; ")
    }

    fn order_lead<'a>(&self, p: &'a Polynomial) -> &'a crate::poly::Exponents {
        p.leading_exponent(&self.order).expect("nonzero basis element")
    }

    /// Every S-polynomial reduces to zero modulo the basis.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        satisfies_buchberger_criterion(&self.polys, &self.order)
    }
}

/// `{ p in G : lt(p) in K[X] }` for an arbitrary polynomial set.
pub fn lead_x(polys: &[Polynomial], order: &MonomialOrder, ctx: &VariableContext) -> Vec<Polynomial> {
    polys.iter().filter(|p| p.leading_exponent(order).is_some_and(|e| e.in_x_ring(ctx))).cloned().collect()
}

pub fn satisfies_buchberger_criterion(polys: &[Polynomial], order: &MonomialOrder) -> bool {
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let s = s_polynomial(&polys[i], &polys[j], order).expect("nonzero basis elements");
            if !normal_form(&s, polys, order).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn buchberger(generators: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(generators, order, BuchbergerOptions::default(), &mut ())
}

/// Buchberger's completion.
///
/// The output contains the nonzero inputs unchanged, followed by the nonzero
/// S-polynomial remainders (made monic) in the order they were found.
pub fn buchberger_with(
    generators: &[Polynomial],
    order: &MonomialOrder,
    options: BuchbergerOptions,
    observer: &mut dyn ConversionObserver,
) -> Result<GroebnerBasis> {
    let dim = order.dim();
    if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
        return Err(Error::ContextMismatch { expected: dim, found: g.dim() });
    }
    let mut basis: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Err(Error::ZeroIdealBasis);
    }
    observer.buchberger_state(&basis, order);

    let mut leads: Vec<_> = basis.iter().map(|g| g.leading_exponent(order).expect("nonzero").clone()).collect();
    let mut minimal: Vec<bool> = (0..leads.len())
        .map(|i| !(0..leads.len()).any(|k| leads[k].divides(&leads[i]) && (leads[k] != leads[i] || k < i)))
        .collect();
    let mut pairs = PairQueue::new(options.selection);
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(i, j, &leads, order);
        }
    }

    while let Some((i, j)) = pairs.pop() {
        if options.coprime_criterion && leads[i].is_coprime(&leads[j]) {
            continue;
        }
        if options.chain_criterion {
            let lcm = leads[i].lcm(&leads[j]);
            let redundant = (0..basis.len())
                .any(|k| k != i && k != j && leads[k].divides(&lcm) && !pairs.contains(i, k) && !pairs.contains(j, k));
            if redundant {
                continue;
            }
        }
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        // elements whose leading monomial is a multiple of another's are not
        // needed as reducers
        let reducers: Vec<&Polynomial> = basis.iter().zip(&minimal).filter(|(_, &m)| m).map(|(g, _)| g).collect();
        let r = normal_form_by(&s, &reducers, order);
        if r.is_zero() {
            continue;
        }
        let r = r.normed(order);
        let k = basis.len();
        let lead = r.leading_exponent(order).expect("nonzero").clone();
        for (m, l) in minimal.iter_mut().zip(&leads) {
            if lead.divides(l) {
                *m = false;
            }
        }
        minimal.push(true);
        leads.push(lead);
        basis.push(r);
        for i in 0..k {
            pairs.push(i, k, &leads, order);
        }
        observer.buchberger_state(&basis, order);
    }
    Ok(GroebnerBasis { polys: basis, order: order.clone(), reduced: false, normed: false })
}

pub fn interreduce(basis: GroebnerBasis) -> GroebnerBasis {
    interreduce_with(basis, &mut ())
}

/// Replaces each element by its remainder modulo the others until nothing
/// changes, then drops zeros, norms, and sorts ascending by leading monomial.
pub fn interreduce_with(basis: GroebnerBasis, observer: &mut dyn ConversionObserver) -> GroebnerBasis {
    let order = basis.order;
    let mut h: Vec<Polynomial> = basis.polys;
    observer.interreduce_state(&h, &order);
    loop {
        let mut changed = false;
        for i in 0..h.len() {
            if h[i].is_zero() {
                continue;
            }
            let others: Vec<Polynomial> =
                h.iter().enumerate().filter(|&(j, p)| j != i && !p.is_zero()).map(|(_, p)| p.clone()).collect();
            let reduced = normal_form(&h[i], &others, &order);
            if reduced != h[i] {
                h[i] = reduced;
                changed = true;
                observer.interreduce_state(&h, &order);
            }
        }
        if !changed {
            break;
        }
    }
    let mut polys: Vec<Polynomial> = h.into_iter().filter(|p| !p.is_zero()).map(|p| p.normed(&order)).collect();
    polys.sort_by(|a, b| cmp_leads(a, b, &order));
    polys.dedup();
    GroebnerBasis { polys, order, reduced: true, normed: true }
}

/// Pending pairs `(i, j)` with `i < j`.
struct PairQueue {
    selection: PairSelection,
    fifo: VecDeque<(usize, usize)>,
    by_lcm: BTreeSet<(OrderKey, usize, usize)>,
    pending: BTreeSet<(usize, usize)>,
}

impl PairQueue {
    fn new(selection: PairSelection) -> Self {
        Self { selection, fifo: VecDeque::new(), by_lcm: BTreeSet::new(), pending: BTreeSet::new() }
    }

    fn push(&mut self, i: usize, j: usize, leads: &[Exponents], order: &MonomialOrder) {
        self.pending.insert((i, j));
        match self.selection {
            PairSelection::Fifo => self.fifo.push_back((i, j)),
            PairSelection::Normal => {
                let key = order.key(&leads[i].lcm(&leads[j]));
                self.by_lcm.insert((key, j, i));
            }
        }
    }

    fn pop(&mut self) -> Option<(usize, usize)> {
        let pair = match self.selection {
            PairSelection::Fifo => self.fifo.pop_front(),
            PairSelection::Normal => self.by_lcm.pop_first().map(|(_, j, i)| (i, j)),
        }?;
        self.pending.remove(&pair);
        Some(pair)
    }

    fn contains(&self, a: usize, b: usize) -> bool {
        self.pending.contains(&(a.min(b), a.max(b)))
    }
}

fn cmp_leads(a: &Polynomial, b: &Polynomial, order: &MonomialOrder) -> Ordering {
    let (ea, eb) = (a.leading_exponent(order), b.leading_exponent(order));
    match (ea, eb) {
        (Some(ea), Some(eb)) => order.compare(ea, eb),
        _ => Ordering::Equal,
    }
}

/// The unique normed reduced Gröbner basis of `<generators>`.
pub fn reduced_gb(generators: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    Ok(interreduce(buchberger(generators, order)?))
}

/// Converts a basis to a new order: completion followed by interreduction.
pub fn convert(
    generators: &[Polynomial],
    order: &MonomialOrder,
    observer: &mut dyn ConversionObserver,
) -> Result<GroebnerBasis> {
    let completed = buchberger_with(generators, order, BuchbergerOptions::default(), observer)?;
    Ok(interreduce_with(completed, observer))
}

/// Checks the normed/reduced invariants directly.
pub fn check_reduced(basis: &GroebnerBasis) -> bool {
    let order = &basis.order;
    for g in &basis.polys {
        match g.leading_coefficient(order) {
            Some(c) if c.is_one() => {}
            _ => return false,
        }
    }
    for (i, g) in basis.polys.iter().enumerate() {
        let lm = g.leading_exponent(order).expect("nonzero");
        for (j, h) in basis.polys.iter().enumerate() {
            if i != j && h.support().any(|e| lm.divides(e)) {
                return false;
            }
        }
    }
    true
}
