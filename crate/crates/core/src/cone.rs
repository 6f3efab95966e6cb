//! Gröbner cones of reduced bases, restricted to the nonnegative orthant.
//!
//! A cone is stored as an H-description: primitive integer normals `v` with
//! `w . v >= 0` for every `w` in the cone, plus the implicit orthant
//! constraints `w_i >= 0`. Extreme rays are computed once at construction by
//! exhaustive enumeration of `(d-1)`-subsets of constraints, which is exact
//! and cheap at the dimensions this crate targets.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::{dot, kernel_vector, make_primitive, rank};
use crate::poly::{Rational, VariableContext, WeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryClass {
    /// The cone meets the orthant boundary only at the origin.
    OriginOnly,
    /// The cone contains a nonzero point whose `X` coordinates vanish.
    MeetsOmegaU,
    /// The cone touches some other part of the orthant boundary.
    MeetsOtherBoundary,
}

impl BoundaryClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::OriginOnly => "ORIGIN_ONLY",
            Self::MeetsOmegaU => "MEETS_OMEGA_U",
            Self::MeetsOtherBoundary => "MEETS_OTHER_BOUNDARY",
        }
    }
}

/// Result of walking from `a` towards `b` inside a cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentExit {
    /// Largest `t` in `[0, 1]` with `a + t (b - a)` in the cone.
    pub t: Rational,
    /// Normals that become tight at the exit point (empty when `t = 1`).
    pub tight: Vec<Vec<BigInt>>,
}

impl SegmentExit {
    /// The exit meets a face of codimension greater than one.
    pub fn is_non_generic(&self) -> bool {
        rank(&self.tight) > 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Inward normal.
    pub normal: Vec<BigInt>,
    /// Sum of the extreme rays on the facet, a relative-interior point.
    pub point: Vec<BigInt>,
    /// The facet lies in a coordinate hyperplane.
    pub on_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerCone {
    dim: usize,
    normals: Vec<Vec<BigInt>>,
    rays: Vec<Vec<BigInt>>,
    source: String,
}

/// The cone of a reduced basis: `w . (lead(g) - beta) >= 0` for every element
/// `g` and every non-leading exponent `beta` of `g`.
pub fn cone_of(basis: &GroebnerBasis, ctx: &VariableContext) -> Result<GroebnerCone> {
    if !basis.is_reduced() {
        return Err(Error::Precondition("cone of a non-reduced basis".into()));
    }
    let order = basis.order();
    let mut normals = Vec::new();
    for g in basis.polys() {
        let lead = g.leading_exponent(order).expect("nonzero basis element");
        for beta in g.support().filter(|&b| b != lead) {
            normals.push(lead.difference(beta));
        }
    }
    Ok(GroebnerCone::from_normals(ctx.dim(), normals, basis.canonical_key(ctx)))
}

impl GroebnerCone {
    /// Cone `{ w >= 0 : w . v >= 0 for all v }`.
    pub fn from_normals(dim: usize, normals: Vec<Vec<BigInt>>, source: String) -> Self {
        let normals: BTreeSet<Vec<BigInt>> =
            normals.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).map(make_primitive).collect();
        let normals: Vec<Vec<BigInt>> = normals.into_iter().collect();
        let mut cone = Self { dim, normals, rays: Vec::new(), source };
        cone.rays = cone.compute_rays();
        cone
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Normals derived from the basis (orthant constraints are implicit).
    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.normals
    }

    pub fn extreme_rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    fn orthant(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        (0..self.dim).map(move |i| {
            let mut e = alloc::vec![BigInt::zero(); self.dim];
            e[i] = BigInt::from(1);
            e
        })
    }

    /// Basis normals followed by the orthant constraints, without repeats.
    fn constraints(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.normals.clone();
        for e in self.orthant() {
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }

    fn compute_rays(&self) -> Vec<Vec<BigInt>> {
        let d = self.dim;
        let constraints = self.constraints();
        let mut rays = BTreeSet::new();
        let mut chosen: Vec<usize> = Vec::with_capacity(d.saturating_sub(1));
        for_each_subset(constraints.len(), d - 1, &mut chosen, &mut |idx| {
            let rows: Vec<&[BigInt]> = idx.iter().map(|&i| constraints[i].as_slice()).collect();
            let Some(k) = kernel_vector(&rows, d) else {
                return;
            };
            let neg: Vec<BigInt> = k.iter().map(|x| -x).collect();
            for cand in [k, neg] {
                if constraints.iter().all(|c| !dot(c, &cand).is_negative()) {
                    rays.insert(cand);
                }
            }
        });
        rays.into_iter().collect()
    }

    pub fn contains(&self, w: &WeightVector) -> bool {
        w.len() == self.dim
            && self.normals.iter().all(|v| !w.dot_int(v).is_negative())
            && w.entries().iter().all(|x| !x.is_negative())
    }

    /// Strict inequality on every basis normal (relative to the orthant).
    pub fn interior_contains(&self, w: &WeightVector) -> bool {
        self.contains(w) && self.normals.iter().all(|v| w.dot_int(v).is_positive())
    }

    /// A strictly interior integer point: the sum of all extreme rays.
    pub fn interior_point(&self) -> Vec<BigInt> {
        sum_vectors(self.dim, self.rays.iter())
    }

    pub fn segment_exit(&self, a: &WeightVector, b: &WeightVector) -> Result<SegmentExit> {
        if a.len() != self.dim || b.len() != self.dim {
            return Err(Error::ContextMismatch { expected: self.dim, found: a.len().min(b.len()) });
        }
        if !self.contains(a) {
            return Err(Error::Precondition("segment start lies outside the cone".into()));
        }
        if a == b {
            return Err(Error::Precondition("degenerate segment".into()));
        }
        let mut best: Option<Rational> = None;
        let mut tight: Vec<Vec<BigInt>> = Vec::new();
        for v in self.constraints() {
            let va = a.dot_int(&v);
            let vd = b.dot_int(&v) - &va;
            if !vd.is_negative() {
                continue;
            }
            let t = -va / vd;
            match &best {
                Some(cur) if t > *cur => {}
                Some(cur) if t == *cur => tight.push(v),
                _ => {
                    best = Some(t);
                    tight = alloc::vec![v];
                }
            }
        }
        let one = Rational::from_integer(1.into());
        match best {
            Some(t) if t < one => Ok(SegmentExit { t, tight }),
            _ => Ok(SegmentExit { t: one, tight: Vec::new() }),
        }
    }

    pub fn facets(&self) -> Vec<Facet> {
        let d = self.dim;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in self.constraints() {
            let on: Vec<usize> = (0..self.rays.len()).filter(|&i| dot(&c, &self.rays[i]).is_zero()).collect();
            let on_rays: Vec<Vec<BigInt>> = on.iter().map(|&i| self.rays[i].clone()).collect();
            if rank(&on_rays) + 1 != d || !seen.insert(on) {
                continue;
            }
            let point = sum_vectors(d, on_rays.iter());
            let on_boundary = point.iter().any(Zero::is_zero);
            out.push(Facet { normal: c, point, on_boundary });
        }
        out
    }

    pub fn boundary_class(&self, ctx: &VariableContext) -> BoundaryClass {
        let n = ctx.n();
        if ctx.m() > 0 && self.rays.iter().any(|r| r[..n].iter().all(Zero::is_zero)) {
            BoundaryClass::MeetsOmegaU
        } else if self.rays.iter().all(|r| r.iter().all(Signed::is_positive)) {
            BoundaryClass::OriginOnly
        } else {
            BoundaryClass::MeetsOtherBoundary
        }
    }

    /// The cone contains a point `(0, g)` with every entry of `g` positive.
    pub fn meets_positive_omega_u(&self, ctx: &VariableContext) -> bool {
        let n = ctx.n();
        let face = self.rays.iter().filter(|r| r[..n].iter().all(Zero::is_zero));
        let s = sum_vectors(self.dim, face);
        s[n..].iter().all(Signed::is_positive)
    }
}

fn sum_vectors<'a>(dim: usize, vs: impl Iterator<Item = &'a Vec<BigInt>>) -> Vec<BigInt> {
    let mut acc = alloc::vec![BigInt::zero(); dim];
    for v in vs {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += x;
        }
    }
    acc
}

fn for_each_subset(n: usize, k: usize, chosen: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    let start = chosen.last().map_or(0, |&i| i + 1);
    let remaining = k - chosen.len();
    for i in start..n {
        if n - i < remaining {
            break;
        }
        chosen.push(i);
        for_each_subset(n, k, chosen, f);
        chosen.pop();
    }
}
