//! Weight-matrix monomial orders with a final lexicographic tie-break.
//!
//! Monomials are compared by the tuple of row degrees `(w_1 . a, ..., w_k . a)`
//! and, when all rows tie, lexicographically along `tiebreak`. Nonnegative
//! rows plus the lex tail make every such order a multiplicative well-order
//! with `1` minimal.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::{Exponents, Rational, VariableContext, WeightVector};

#[derive(Debug, Clone)]
pub struct MonomialOrder {
    rows: Vec<WeightVector>,
    tiebreak: Vec<usize>,
    // each row scaled by the lcm of its denominators
    int_rows: Vec<Vec<BigInt>>,
    // same rows when every entry fits in an i64
    small_rows: Option<Vec<Vec<i64>>>,
}

/// Sort key whose natural ordering agrees with [`MonomialOrder::compare`].
pub type OrderKey = (Vec<BigInt>, Vec<u32>);

impl PartialEq for MonomialOrder {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.tiebreak == other.tiebreak
    }
}

impl Eq for MonomialOrder {}

impl MonomialOrder {
    /// Weight-matrix order; `tiebreak` lists variable indices from most to
    /// least significant.
    pub fn new(rows: Vec<WeightVector>, tiebreak: Vec<usize>) -> Result<Self> {
        let dim = tiebreak.len();
        let mut seen = alloc::vec![false; dim];
        for &i in &tiebreak {
            if i >= dim || seen[i] {
                return Err(Error::InvalidOrder("tie-break is not a permutation".into()));
            }
            seen[i] = true;
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::ContextMismatch { expected: dim, found: r.len() });
        }
        let int_rows: Vec<Vec<BigInt>> = rows.iter().map(scale_to_integers).collect();
        let small_rows = int_rows.iter().map(|r| r.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>()).collect();
        Ok(Self { rows, tiebreak, int_rows, small_rows })
    }

    /// Pure lexicographic order with `y_1 > y_2 > ...` in declaration order.
    pub fn lex(dim: usize) -> Self {
        Self::new(Vec::new(), (0..dim).collect()).expect("identity permutation")
    }

    pub fn lex_with(perm: Vec<usize>) -> Result<Self> {
        Self::new(Vec::new(), perm)
    }

    /// `(w | lex)`.
    pub fn weighted_lex(w: WeightVector) -> Result<Self> {
        let dim = w.len();
        Self::lex(dim).compose(w)
    }

    /// Block order weighting only the `U` variables, lex tie-break.
    ///
    /// The leading term of any polynomial lies in `K[X]` only if the whole
    /// polynomial does.
    pub fn universal_elimination(ctx: &VariableContext) -> Self {
        let row: Vec<i64> = (0..ctx.dim()).map(|i| i64::from(ctx.is_u_index(i))).collect();
        let row = WeightVector::from_ints(&row).expect("nonnegative");
        Self::new(alloc::vec![row], (0..ctx.dim()).collect()).expect("valid block order")
    }

    /// `(w | self)`: order by `w`-degree first, `self` breaks ties.
    pub fn compose(&self, w: WeightVector) -> Result<Self> {
        if w.len() != self.dim() {
            return Err(Error::ContextMismatch { expected: self.dim(), found: w.len() });
        }
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        rows.push(w);
        rows.extend(self.rows.iter().cloned());
        Self::new(rows, self.tiebreak.clone())
    }

    pub fn dim(&self) -> usize {
        self.tiebreak.len()
    }

    pub fn rows(&self) -> &[WeightVector] {
        &self.rows
    }

    pub fn tiebreak(&self) -> &[usize] {
        &self.tiebreak
    }

    pub fn compare(&self, a: &Exponents, b: &Exponents) -> Ordering {
        if let Some(rows) = &self.small_rows {
            for row in rows {
                match small_dot(row, a).cmp(&small_dot(row, b)) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
        } else {
            for row in &self.int_rows {
                match int_dot(row, a).cmp(&int_dot(row, b)) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
        }
        let (a, b) = (a.as_slice(), b.as_slice());
        for &i in &self.tiebreak {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    }

    pub fn key(&self, a: &Exponents) -> OrderKey {
        let degrees = self.int_rows.iter().map(|r| int_dot(r, a)).collect();
        let lex = self.tiebreak.iter().map(|&i| a.as_slice()[i]).collect();
        (degrees, lex)
    }

    /// Serialized form `rows=[[9,6,5]];tiebreak=x>u>v`.
    pub fn to_text(&self, ctx: &VariableContext) -> String {
        let mut out = String::from("rows=[");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            for (j, w) in row.entries().iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{w}");
            }
            out.push(']');
        }
        out.push_str("];tiebreak=");
        for (i, &v) in self.tiebreak.iter().enumerate() {
            if i > 0 {
                out.push('>');
            }
            out.push_str(ctx.name(v));
        }
        out
    }
}

fn scale_to_integers(w: &WeightVector) -> Vec<BigInt> {
    let l = w.entries().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let l = Rational::from_integer(l);
    w.entries().iter().map(|x| (x * &l).to_integer()).collect()
}

// |w| < 2^63 and e < 2^32, so each product fits in 95 bits and the sum
// of a handful of them cannot overflow
fn small_dot(row: &[i64], a: &Exponents) -> i128 {
    row.iter().zip(a.as_slice()).map(|(&w, &e)| i128::from(w) * i128::from(e)).sum()
}

fn int_dot(row: &[BigInt], a: &Exponents) -> BigInt {
    row.iter().zip(a.as_slice()).filter(|(_, &e)| e != 0).map(|(w, &e)| w * BigInt::from(e)).sum()
}
