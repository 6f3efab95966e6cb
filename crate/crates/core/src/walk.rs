//! Gröbner walk for elimination.
//!
//! The walk follows the segment from `sigma` towards a target weight `tau`
//! in `Omega_u` (zero on `X`, positive on `U`). It starts from the reduced
//! basis under `(sigma | target)`, where `target` is `(tau | tiebreak)`;
//! for `sigma` inside a cell this is the cell of `(sigma | lex)`, and for
//! `sigma` on a wall it is the cell the segment enters. Every time the
//! segment leaves the current Gröbner cone, the basis is converted to
//! `(omega_k | target)`, where `omega_k` is the exit point, so the exit
//! parameters strictly increase.
//!
//! Two stopping rules are offered:
//!
//! * [`WalkMode::Improved`] stops at the first basis whose order is an
//!   ideal-specific elimination order.
//! * [`WalkMode::TranBoundary`] stops once the current cone touches the
//!   positive part of `Omega_u`, which implies the former.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cone::cone_of;
use crate::error::{Error, Result};
use crate::groebner::{convert, lead_x, reduced_gb, ConversionObserver, GroebnerBasis};
use crate::order::MonomialOrder;
use crate::poly::{Exponents, Polynomial, Rational, VariableContext, WeightVector};

/// Hard cap on conversions; every walk over a finite fan stops long before.
const MAX_CONVERSIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkMode {
    Improved,
    TranBoundary,
}

impl WalkMode {
    pub fn as_str(self) -> &'static str {
        match self {
            WalkMode::Improved => "improved",
            WalkMode::TranBoundary => "tran",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The current order is an ideal-specific elimination order.
    IeoReached,
    /// The current cone meets the positive part of `Omega_u`.
    BoundaryReached,
    /// The walk arrived at `tau` itself.
    TauReached,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::IeoReached => "IEO_REACHED",
            StopReason::BoundaryReached => "BOUNDARY_REACHED",
            StopReason::TauReached => "TAU_REACHED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkStep {
    pub k: usize,
    pub omega: WeightVector,
    /// Position of `omega` on the segment `sigma`–`tau`.
    pub t: Rational,
    pub order: MonomialOrder,
    pub basis: GroebnerBasis,
    pub is_ieo: bool,
    /// Cone normals that became tight at `omega` (empty for the start).
    pub tight_normals: Vec<Vec<BigInt>>,
    /// The segment crossed a face of codimension at least two.
    pub non_generic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTrace {
    pub mode: WalkMode,
    pub steps: Vec<WalkStep>,
    pub stop_reason: StopReason,
    pub conversions: usize,
}

impl WalkTrace {
    pub fn last(&self) -> &WalkStep {
        self.steps.last().expect("a trace has at least the start step")
    }

    pub fn any_non_generic(&self) -> bool {
        self.steps.iter().any(|s| s.non_generic)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkOutcome {
    /// Reduced basis of the elimination ideal `<F> ∩ K[X]`.
    pub elimination_basis: Vec<Polynomial>,
    pub trace: WalkTrace,
}

/// Conversion strategy used by the walk; lets callers watch each conversion.
trait Converter {
    fn convert(&mut self, k: usize, source: &GroebnerBasis, target: &MonomialOrder) -> Result<GroebnerBasis>;
}

struct Plain;

impl Converter for Plain {
    fn convert(&mut self, _k: usize, source: &GroebnerBasis, target: &MonomialOrder) -> Result<GroebnerBasis> {
        convert(source.polys(), target, &mut ())
    }
}

/// Walks from `sigma` to `tau` and returns the elimination ideal's basis.
///
/// `target_tiebreak` refines `tau` into a total order; it defaults to lex.
pub fn eliminate_walk(
    generators: &[Polynomial],
    ctx: &VariableContext,
    sigma: &WeightVector,
    tau: &WeightVector,
    target_tiebreak: Option<&MonomialOrder>,
    mode: WalkMode,
) -> Result<WalkOutcome> {
    run_walk(generators, ctx, sigma, tau, target_tiebreak, mode, &mut Plain)
}

fn check_inputs(
    generators: &[Polynomial],
    ctx: &VariableContext,
    sigma: &WeightVector,
    tau: &WeightVector,
    target_tiebreak: Option<&MonomialOrder>,
) -> Result<()> {
    let dim = ctx.dim();
    for len in generators.iter().map(Polynomial::dim).chain([sigma.len(), tau.len()]) {
        if len != dim {
            return Err(Error::ContextMismatch { expected: dim, found: len });
        }
    }
    if let Some(o) = target_tiebreak {
        if o.dim() != dim {
            return Err(Error::ContextMismatch { expected: dim, found: o.dim() });
        }
    }
    let (x, u) = tau.entries().split_at(ctx.n());
    if !x.iter().all(Zero::is_zero) || !u.iter().all(Signed::is_positive) {
        return Err(Error::Precondition("tau must vanish on X and be positive on U".into()));
    }
    Ok(())
}

fn run_walk(
    generators: &[Polynomial],
    ctx: &VariableContext,
    sigma: &WeightVector,
    tau: &WeightVector,
    target_tiebreak: Option<&MonomialOrder>,
    mode: WalkMode,
    converter: &mut dyn Converter,
) -> Result<WalkOutcome> {
    check_inputs(generators, ctx, sigma, tau, target_tiebreak)?;
    let dim = ctx.dim();
    let target = match target_tiebreak {
        Some(o) => o.compose(tau.clone())?,
        None => MonomialOrder::lex(dim).compose(tau.clone())?,
    };
    let start = target.compose(sigma.clone())?;
    let basis = reduced_gb(generators, &start)?;
    let is_ieo = basis.is_ideal_specific_eo(ctx)?;
    let mut steps = alloc::vec![WalkStep {
        k: 0,
        omega: sigma.clone(),
        t: Rational::zero(),
        order: start,
        basis,
        is_ieo,
        tight_normals: Vec::new(),
        non_generic: false,
    }];

    loop {
        let cur = steps.last().expect("nonempty");
        let cone = cone_of(&cur.basis, ctx)?;
        let stop = match mode {
            WalkMode::Improved => cur.is_ieo.then_some(StopReason::IeoReached),
            WalkMode::TranBoundary => cone.meets_positive_omega_u(ctx).then_some(StopReason::BoundaryReached),
        };
        let stop = stop.or_else(|| (cur.omega == *tau).then_some(StopReason::TauReached));
        if let Some(stop_reason) = stop {
            let elimination_basis = cur.basis.elimination_basis(ctx)?;
            let conversions = steps.len() - 1;
            return Ok(WalkOutcome { elimination_basis, trace: WalkTrace { mode, steps, stop_reason, conversions } });
        }
        if steps.len() > MAX_CONVERSIONS {
            return Err(Error::Precondition("walk did not terminate".into()));
        }

        let exit = cone.segment_exit(&cur.omega, tau)?;
        let omega = cur.omega.lerp(tau, &exit.t);
        let t = &cur.t + &exit.t * (Rational::one() - &cur.t);
        let order = target.compose(omega.clone())?;
        let basis = converter.convert(cur.k + 1, &cur.basis, &order)?;
        if exit.t.is_zero() && basis.canonical_key(ctx) == cur.basis.canonical_key(ctx) {
            return Err(Error::Precondition("walk made no progress".into()));
        }
        let is_ieo = basis.is_ideal_specific_eo(ctx)?;
        let step = WalkStep {
            k: cur.k + 1,
            omega,
            t,
            order,
            basis,
            is_ieo,
            non_generic: exit.is_non_generic(),
            tight_normals: exit.tight,
        };
        steps.push(step);
    }
}

/// Outcome of watching one conversion of a walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionAudit {
    pub k: usize,
    /// Only conversions whose source order is an ideal-specific elimination
    /// order are checked.
    pub checked: bool,
    /// Intermediate polynomial sets inspected.
    pub states: usize,
    /// Every state had the same `X`-leading elements as the source.
    pub lead_x_preserved: bool,
    /// Those elements kept their leading terms under the new order.
    pub leading_terms_preserved: bool,
    pub non_generic: bool,
}

impl ConversionAudit {
    pub fn passed(&self) -> bool {
        !self.checked || (self.lead_x_preserved && self.leading_terms_preserved)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstrumentationReport {
    /// The start basis is ideal-specific and `sigma` is interior to its cone.
    pub start_interior_ieo: bool,
    pub audits: Vec<ConversionAudit>,
    pub outcome: WalkOutcome,
}

impl InstrumentationReport {
    pub fn passed(&self) -> bool {
        self.audits.iter().all(ConversionAudit::passed)
    }

    pub fn checked(&self) -> usize {
        self.audits.iter().filter(|a| a.checked).count()
    }
}

struct LeadXWatcher<'a> {
    ctx: &'a VariableContext,
    expected: BTreeSet<Polynomial>,
    states: usize,
    preserved: bool,
}

impl LeadXWatcher<'_> {
    fn check(&mut self, basis: &[Polynomial], order: &MonomialOrder) {
        self.states += 1;
        let found: BTreeSet<Polynomial> = lead_x(basis, order, self.ctx).into_iter().collect();
        if found != self.expected {
            self.preserved = false;
        }
    }
}

impl ConversionObserver for LeadXWatcher<'_> {
    fn buchberger_state(&mut self, basis: &[Polynomial], order: &MonomialOrder) {
        self.check(basis, order);
    }

    fn interreduce_state(&mut self, basis: &[Polynomial], order: &MonomialOrder) {
        self.check(basis, order);
    }
}

struct Auditing<'a> {
    ctx: &'a VariableContext,
    audits: Vec<ConversionAudit>,
}

impl Converter for Auditing<'_> {
    fn convert(&mut self, k: usize, source: &GroebnerBasis, target: &MonomialOrder) -> Result<GroebnerBasis> {
        if !source.is_ideal_specific_eo(self.ctx)? {
            self.audits.push(ConversionAudit {
                k,
                checked: false,
                states: 0,
                lead_x_preserved: true,
                leading_terms_preserved: true,
                non_generic: false,
            });
            return convert(source.polys(), target, &mut ());
        }
        let expected: BTreeSet<Polynomial> = source.lead_x(self.ctx).into_iter().collect();
        let leading_terms_preserved = expected.iter().all(|g| {
            let old: Option<(&Rational, &Exponents)> = g.leading_term(source.order()).ok();
            old.is_some() && old == g.leading_term(target).ok()
        });
        let mut watcher = LeadXWatcher { ctx: self.ctx, expected, states: 0, preserved: true };
        let result = convert(source.polys(), target, &mut watcher)?;
        // the final normed, sorted output too
        watcher.check(result.polys(), target);
        self.audits.push(ConversionAudit {
            k,
            checked: true,
            states: watcher.states,
            lead_x_preserved: watcher.preserved,
            leading_terms_preserved,
            non_generic: false,
        });
        Ok(result)
    }
}

/// Runs a boundary-stopping walk and, at every conversion that starts from
/// an ideal-specific elimination order, checks that all intermediate sets of
/// the completion and interreduction keep the source's `X`-leading elements
/// and their leading terms.
pub fn walk_instrumentation_check(
    generators: &[Polynomial],
    ctx: &VariableContext,
    sigma: &WeightVector,
    tau: &WeightVector,
    target_tiebreak: Option<&MonomialOrder>,
) -> Result<InstrumentationReport> {
    let mut auditing = Auditing { ctx, audits: Vec::new() };
    let outcome = run_walk(generators, ctx, sigma, tau, target_tiebreak, WalkMode::TranBoundary, &mut auditing)?;
    let mut audits = auditing.audits;
    for a in &mut audits {
        a.non_generic = outcome.trace.steps[a.k].non_generic;
    }
    let first = &outcome.trace.steps[0];
    let start_interior_ieo = first.is_ieo && cone_of(&first.basis, ctx)?.interior_contains(sigma);
    Ok(InstrumentationReport { start_interior_ieo, audits, outcome })
}

/// Short textual description of a trace step, used in reports.
pub fn describe_step(step: &WalkStep, ctx: &VariableContext) -> String {
    let mut s = alloc::format!("k={} omega={} ieo={} gb=[", step.k, step.omega, step.is_ieo);
    s.push_str(&step.basis.to_text(ctx).join(", "));
    s.push(']');
    s
}
