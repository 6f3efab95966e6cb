//! Exact polynomial arithmetic, Gröbner bases, Gröbner fans and the Gröbner
//! walk specialised to elimination.
//!
//! Variables split into a kept block `X` and an eliminated block `U`. An order
//! is an *ideal-specific elimination order* for `I` when every element of the
//! reduced basis whose leading term lies in `K[X]` lies in `K[X]` entirely; the
//! `K[X]` part of that basis then generates `I ∩ K[X]`.

#![no_std]

extern crate alloc;

pub mod cone;
pub mod error;
pub mod fan;
pub mod groebner;
mod linalg;
pub mod order;
pub mod poly;
pub mod reduction;
pub mod walk;

pub use cone::{cone_of, BoundaryClass, Facet, GroebnerCone, SegmentExit};
pub use error::{Error, Result};
pub use fan::{
    cross_check_with_grid, enumerate_fan, grid_sample_keys, FanCell, FanOptions, GridCrossCheck, GroebnerFan,
    StarCheckReport, StarViolation,
};
pub use groebner::{
    buchberger, buchberger_with, check_reduced, convert, interreduce, interreduce_with, lead_x, reduced_gb,
    BuchbergerOptions, ConversionObserver, GroebnerBasis, PairSelection,
};
pub use order::{MonomialOrder, OrderKey};
pub use poly::{Exponents, Polynomial, Rational, VariableContext, WeightVector};
pub use reduction::{reduce_step, remainder, s_polynomial, DivisionCertificate};
pub use walk::{
    eliminate_walk, walk_instrumentation_check, ConversionAudit, InstrumentationReport, StopReason, WalkMode,
    WalkOutcome, WalkStep, WalkTrace,
};
