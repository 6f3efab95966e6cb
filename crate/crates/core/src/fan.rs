//! Gröbner fans of small ideals.
//!
//! Cells are found by facet flipping: from a cell `C` with inward facet
//! normal `a` and relative-interior facet point `p`, the neighbouring cell is
//! the reduced basis under the matrix order `[p, -a]` (then lex), which is
//! the order of `p` pushed an infinitesimal step out of `C`. Because `p` is
//! strictly positive, `[p, c*p - a]` with a large enough integer `c` compares
//! monomials identically and keeps every row nonnegative.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::{cone_of, BoundaryClass, GroebnerCone};
use crate::error::{Error, Result};
use crate::groebner::{interreduce, reduced_gb, GroebnerBasis};
use crate::order::MonomialOrder;
use crate::poly::{Polynomial, Rational, VariableContext, WeightVector};
use crate::reduction::normal_form;

/// Largest ambient dimension accepted by default.
pub const DEFAULT_MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCell {
    pub key: String,
    pub basis: GroebnerBasis,
    pub cone: GroebnerCone,
    pub is_ieo: bool,
    pub boundary: BoundaryClass,
}

#[derive(Debug, Clone)]
pub struct GroebnerFan {
    ctx: VariableContext,
    cells: Vec<FanCell>,
    index: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FanOptions {
    pub max_dim: usize,
}

impl Default for FanOptions {
    fn default() -> Self {
        Self { max_dim: DEFAULT_MAX_DIM }
    }
}

fn make_cell(basis: GroebnerBasis, ctx: &VariableContext) -> Result<FanCell> {
    let cone = cone_of(&basis, ctx)?;
    let is_ieo = basis.is_ideal_specific_eo(ctx)?;
    Ok(FanCell { key: basis.canonical_key(ctx), boundary: cone.boundary_class(ctx), basis, cone, is_ieo })
}

fn check_generators(generators: &[Polynomial], ctx: &VariableContext, options: FanOptions) -> Result<()> {
    if ctx.dim() > options.max_dim {
        return Err(Error::DimensionGuard { dim: ctx.dim(), limit: options.max_dim });
    }
    if let Some(g) = generators.iter().find(|g| g.dim() != ctx.dim()) {
        return Err(Error::ContextMismatch { expected: ctx.dim(), found: g.dim() });
    }
    Ok(())
}

/// Order `[p, -a]` then lex, with the second row shifted by a multiple of `p`.
fn flip_order(point: &[BigInt], inward: &[BigInt]) -> Result<MonomialOrder> {
    let mut c = BigInt::zero();
    for (a, p) in inward.iter().zip(point) {
        if a.is_positive() {
            c = c.max(Integer::div_ceil(a, p));
        }
    }
    let second: Vec<BigInt> = point.iter().zip(inward).map(|(p, a)| &c * p - a).collect();
    let rows = alloc::vec![WeightVector::from_big_ints(point)?, WeightVector::from_big_ints(&second)?];
    MonomialOrder::new(rows, (0..point.len()).collect())
}

/// Reduced basis under `target` of the cell across a facet through `point`.
///
/// The initial forms at `point` of the current basis generate the initial
/// ideal; its reduced basis under `target` is lifted back by subtracting
/// normal forms modulo the current basis.
fn flip(current: &GroebnerBasis, point: &[BigInt], target: &MonomialOrder) -> Result<GroebnerBasis> {
    let w = WeightVector::from_big_ints(point)?;
    let initial = current.polys().iter().map(|g| g.initial_form(&w)).collect::<Result<Vec<_>>>()?;
    let initial_basis = reduced_gb(&initial, target)?;
    let lifted = initial_basis.polys().iter().map(|h| h - &normal_form(h, current.polys(), current.order())).collect();
    Ok(interreduce(GroebnerBasis::from_completed(lifted, target.clone())))
}

/// Enumerates every cell of the fan by breadth-first facet flipping.
pub fn enumerate_fan(generators: &[Polynomial], ctx: &VariableContext, options: FanOptions) -> Result<GroebnerFan> {
    check_generators(generators, ctx, options)?;
    let first = make_cell(degree_basis(generators, ctx)?, ctx)?;

    let mut fan = GroebnerFan { ctx: ctx.clone(), cells: Vec::new(), index: BTreeMap::new() };
    fan.insert(first);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let facets = fan.cells[i].cone.facets();
        for facet in facets.into_iter().filter(|f| !f.on_boundary) {
            let order = flip_order(&facet.point, &facet.normal)?;
            let basis = flip(&fan.cells[i].basis, &facet.point, &order)?;
            let key = basis.canonical_key(ctx);
            if fan.index.contains_key(&key) {
                continue;
            }
            let cell = make_cell(basis, ctx)?;
            let p = WeightVector::from_big_ints(&facet.point)?;
            if !cell.cone.contains(&p) {
                return Err(Error::Precondition("facet flip left the shared facet".into()));
            }
            queue.push_back(fan.insert(cell));
        }
    }
    Ok(fan)
}

/// Reduced basis under `(1, ..., 1 | lex)`. Also a cheap starting set for
/// completions under other orders: completing from the raw generators under
/// lex-like orders can swell coefficients to thousands of bits.
fn degree_basis(generators: &[Polynomial], ctx: &VariableContext) -> Result<GroebnerBasis> {
    reduced_gb(generators, &MonomialOrder::weighted_lex(WeightVector::from_ints(&alloc::vec![1; ctx.dim()])?)?)
}

/// Keys of the cells hit by `(w | lex)` for every grid point `w` with
/// nonnegative integer entries summing to `denominator` (the simplex grid of
/// step `1/denominator`). An enumeration-independent oracle for the fan.
pub fn grid_sample_keys(
    generators: &[Polynomial],
    ctx: &VariableContext,
    denominator: u32,
    options: FanOptions,
) -> Result<alloc::collections::BTreeSet<String>> {
    check_generators(generators, ctx, options)?;
    let mut keys = alloc::collections::BTreeSet::new();
    let mut point = alloc::vec![0i64; ctx.dim()];
    let seed = degree_basis(generators, ctx)?;
    let mut result = Ok(());
    simplex_points(&mut point, 0, i64::from(denominator), &mut |w| {
        if result.is_err() {
            return;
        }
        let basis =
            WeightVector::from_ints(w).and_then(MonomialOrder::weighted_lex).and_then(|o| reduced_gb(seed.polys(), &o));
        match basis {
            Ok(b) => {
                keys.insert(b.canonical_key(ctx));
            }
            Err(e) => result = Err(e),
        }
    });
    result.map(|()| keys)
}

/// Outcome of checking an enumerated fan against the simplex grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCrossCheck {
    pub denominator: u32,
    pub grid_cells: usize,
    pub fan_cells: usize,
    /// Cells the grid hit that the enumeration did not produce.
    pub missing_from_fan: Vec<String>,
    /// Enumerated cells no grid point landed in.
    pub unseen_by_grid: Vec<String>,
    /// Unseen cells whose basis could not be reproduced from the generators
    /// at an interior weight of the cell.
    pub unconfirmed: Vec<String>,
}

impl GridCrossCheck {
    /// Grid and enumeration found exactly the same cells.
    pub fn identical(&self) -> bool {
        self.missing_from_fan.is_empty() && self.unseen_by_grid.is_empty()
    }

    /// Nothing the grid saw is missing, and every cell the grid is too
    /// coarse to hit was recomputed from scratch and matched.
    pub fn passed(&self) -> bool {
        self.missing_from_fan.is_empty() && self.unconfirmed.is_empty()
    }
}

/// Compares `fan` with [`grid_sample_keys`] at step `1/denominator`.
pub fn cross_check_with_grid(
    fan: &GroebnerFan,
    generators: &[Polynomial],
    denominator: u32,
    options: FanOptions,
) -> Result<GridCrossCheck> {
    let ctx = fan.context();
    let grid = grid_sample_keys(generators, ctx, denominator, options)?;
    let keys = fan.keys();
    let missing_from_fan = grid.difference(&keys).cloned().collect();
    let seed = degree_basis(generators, ctx)?;
    let mut unseen_by_grid = Vec::new();
    let mut unconfirmed = Vec::new();
    for cell in fan.cells.iter().filter(|c| !grid.contains(&c.key)) {
        unseen_by_grid.push(cell.key.clone());
        let w = WeightVector::from_big_ints(&cell.cone.interior_point())?;
        let basis = reduced_gb(seed.polys(), &MonomialOrder::weighted_lex(w)?)?;
        if basis.canonical_key(ctx) != cell.key {
            unconfirmed.push(cell.key.clone());
        }
    }
    Ok(GridCrossCheck {
        denominator,
        grid_cells: grid.len(),
        fan_cells: keys.len(),
        missing_from_fan,
        unseen_by_grid,
        unconfirmed,
    })
}

fn simplex_points(point: &mut Vec<i64>, i: usize, left: i64, f: &mut dyn FnMut(&[i64])) {
    if i + 1 == point.len() {
        point[i] = left;
        f(point);
        return;
    }
    for v in 0..=left {
        point[i] = v;
        simplex_points(point, i + 1, left - v, f);
    }
}

/// One segment of the star-shape experiment that leaves the EV region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarViolation {
    pub sigma: WeightVector,
    pub tau: WeightVector,
    pub omega: WeightVector,
    /// Key of a (non ideal-specific) cell containing `omega`.
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCheckReport {
    pub samples_tested: usize,
    pub violations: Vec<StarViolation>,
    pub seed: u64,
}

impl StarCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl GroebnerFan {
    fn insert(&mut self, cell: FanCell) -> usize {
        let i = self.cells.len();
        self.index.insert(cell.key.clone(), i);
        self.cells.push(cell);
        i
    }

    pub fn context(&self) -> &VariableContext {
        &self.ctx
    }

    /// Cells in discovery order.
    pub fn cells(&self) -> &[FanCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell(&self, key: &str) -> Option<&FanCell> {
        self.index.get(key).map(|&i| &self.cells[i])
    }

    pub fn keys(&self) -> alloc::collections::BTreeSet<String> {
        self.index.keys().cloned().collect()
    }

    /// Every cell whose cone contains `nu`.
    pub fn neighbourhood(&self, nu: &WeightVector) -> Vec<&FanCell> {
        self.cells.iter().filter(|c| c.cone.contains(nu)).collect()
    }

    /// Cells of ideal-specific elimination orders.
    pub fn ev_region(&self) -> Vec<&FanCell> {
        self.cells.iter().filter(|c| c.is_ieo).collect()
    }

    /// `w` lies in the cone of some ideal-specific elimination order.
    pub fn is_ev(&self, w: &WeightVector) -> bool {
        self.cells.iter().any(|c| c.is_ieo && c.cone.contains(w))
    }

    /// A point of the segment `a`–`b` outside the EV region, if any.
    ///
    /// Each cone meets the segment in a closed parameter interval; the
    /// segment is covered exactly when the intervals of the EV cells cover
    /// `[0, 1]`.
    pub fn ev_gap_on_segment(&self, a: &WeightVector, b: &WeightVector) -> Option<WeightVector> {
        let mut intervals: Vec<(Rational, Rational)> =
            self.ev_region().into_iter().filter_map(|c| segment_interval(&c.cone, a, b)).collect();
        intervals.sort();
        let one = Rational::one();
        let mut covered = Rational::zero();
        let mut started = false;
        for (lo, hi) in intervals {
            if (!started && lo > Rational::zero()) || (started && lo > covered) {
                let gap_end = lo;
                let t = if started {
                    (&covered + &gap_end) / Rational::from_integer(2.into())
                } else {
                    gap_end / Rational::from_integer(2.into())
                };
                return Some(a.lerp(b, &t));
            }
            started = true;
            if hi > covered {
                covered = hi;
            }
            if covered >= one {
                return None;
            }
        }
        let t = if started { (&covered + &one) / Rational::from_integer(2.into()) } else { Rational::zero() };
        Some(a.lerp(b, &t))
    }

    /// Samples `sigma` from EV cells and `tau` from `Omega_u` and checks that
    /// the whole segment stays in the EV region.
    pub fn check_star_shaped(&self, n_samples: usize, seed: u64) -> StarCheckReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ev = self.ev_region();
        let mut violations = Vec::new();
        let n = self.ctx.n();
        let mut tested = 0;
        if ev.is_empty() {
            return StarCheckReport { samples_tested: 0, violations, seed };
        }
        for _ in 0..n_samples {
            let cell = ev[rng.gen_range(0..ev.len())];
            let mut sigma = alloc::vec![BigInt::zero(); self.ctx.dim()];
            for ray in cell.cone.extreme_rays() {
                let c = BigInt::from(rng.gen_range(1..=8u32));
                for (s, r) in sigma.iter_mut().zip(ray) {
                    *s += &c * r;
                }
            }
            let tau: Vec<BigInt> = (0..self.ctx.dim())
                .map(|i| if i < n { BigInt::zero() } else { BigInt::from(rng.gen_range(0..=8u32)) })
                .collect();
            let sigma = WeightVector::from_big_ints(&sigma).expect("nonnegative rays");
            let tau = WeightVector::from_big_ints(&tau).expect("nonnegative");
            tested += 1;
            if let Some(omega) = self.ev_gap_on_segment(&sigma, &tau) {
                let witness =
                    self.cells.iter().find(|c| c.cone.contains(&omega)).map(|c| c.key.clone()).unwrap_or_default();
                violations.push(StarViolation { sigma, tau, omega, witness });
            }
        }
        StarCheckReport { samples_tested: tested, violations, seed }
    }

    /// `sigma` and `tau` are EVs while `omega`, on the segment between them,
    /// is not.
    pub fn check_nonconvexity_witness(
        &self,
        sigma: &WeightVector,
        tau: &WeightVector,
        omega: &WeightVector,
    ) -> Result<bool> {
        if !on_segment(sigma, tau, omega) {
            return Err(Error::Precondition("omega is not on the segment sigma-tau".into()));
        }
        Ok(self.is_ev(sigma) && self.is_ev(tau) && !self.is_ev(omega))
    }
}

/// Parameter interval `{ t in [0,1] : a + t (b - a) in C }`.
fn segment_interval(cone: &GroebnerCone, a: &WeightVector, b: &WeightVector) -> Option<(Rational, Rational)> {
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    let dim = cone.dim();
    let units = (0..dim).map(|i| {
        let mut e = alloc::vec![BigInt::zero(); dim];
        e[i] = BigInt::one();
        e
    });
    for v in cone.normals().iter().cloned().chain(units) {
        let va = a.dot_int(&v);
        let vd = b.dot_int(&v) - &va;
        if vd.is_zero() {
            if va.is_negative() {
                return None;
            }
        } else {
            let t = -&va / &vd;
            if vd.is_positive() {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn on_segment(a: &WeightVector, b: &WeightVector, w: &WeightVector) -> bool {
    if a.len() != b.len() || a.len() != w.len() {
        return false;
    }
    if a == b {
        return a == w;
    }
    let i = (0..a.len()).find(|&i| a.entries()[i] != b.entries()[i]).expect("distinct endpoints");
    let t = (&w.entries()[i] - &a.entries()[i]) / (&b.entries()[i] - &a.entries()[i]);
    t >= Rational::zero() && t <= Rational::one() && a.lerp(b, &t) == *w
}
