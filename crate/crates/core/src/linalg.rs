//! Exact dense linear algebra over the rationals and the integers.

use crate::symbolic::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Solves `a·x = b` for square nonsingular `a`; `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length mismatch");
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix is not square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col][col..].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

/// `a·x` for a rational matrix and vector.
pub fn mat_vec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(Rational::zero(), |acc, (p, q)| acc + p * q))
        .collect()
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn determinant(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
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

/// Determinants of the leading `k×k` submatrices for `k = 1..=n`.
pub fn leading_minors(a: &[Vec<i64>]) -> Vec<BigInt> {
    (1..=a.len())
        .map(|k| {
            let sub: Vec<Vec<i64>> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}
