//! Small exact integer linear algebra used by the cone geometry.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Divides out the gcd of the entries, keeping the orientation.
pub(crate) fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x = &*x / &g;
        }
    }
    v
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rank of an integer matrix (rows may have any count).
pub(crate) fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            let pivot = m[r].clone();
            for (x, y) in m[i].iter_mut().zip(&pivot).skip(c) {
                *x = &*x * &a - y * &b;
            }
            let row = make_primitive(core::mem::take(&mut m[i]));
            m[i] = row;
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Generator of the kernel of a `(d-1) x d` integer matrix via signed
/// maximal minors; `None` when the rows are dependent.
pub(crate) fn kernel_vector(rows: &[&[BigInt]], d: usize) -> Option<Vec<BigInt>> {
    debug_assert_eq!(rows.len() + 1, d);
    let mut out = Vec::with_capacity(d);
    for skip in 0..d {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, x)| x.clone()).collect())
            .collect();
        let det = determinant(minor);
        out.push(if skip % 2 == 0 { det } else { -det });
    }
    if out.iter().all(Zero::is_zero) {
        None
    } else {
        Some(make_primitive(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(vec![b(&[2, 1]), b(&[1, 3])]), BigInt::from(5));
        assert_eq!(determinant(vec![b(&[0, 1, 2]), b(&[1, 0, 3]), b(&[4, -3, 8])]), BigInt::from(-2));
        assert_eq!(determinant(vec![b(&[1, 2]), b(&[2, 4])]), BigInt::zero());
    }

    #[test]
    fn kernel_is_orthogonal() {
        let r1 = b(&[1, -1, 0]);
        let r2 = b(&[0, 1, -3]);
        let k = kernel_vector(&[&r1, &r2], 3).unwrap();
        assert!(dot(&k, &r1).is_zero() && dot(&k, &r2).is_zero());
        assert_eq!(k, b(&[3, 3, 1]));
        assert!(kernel_vector(&[&r1, &r1], 3).is_none());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[b(&[1, 2, 3]), b(&[2, 4, 6])]), 1);
        assert_eq!(rank(&[b(&[1, 0, 0]), b(&[0, 1, 0]), b(&[1, 1, 0])]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn primitive_keeps_sign() {
        assert_eq!(make_primitive(b(&[0, -4, 6])), b(&[0, -2, 3]));
    }
}
