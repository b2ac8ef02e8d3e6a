//! Small dense matrices over an arbitrary [`Ring`]. Row-major `Vec<Vec<R>>`.

use std::collections::HashMap;

use crate::exactnum::Ring;

pub type Matrix<R> = Vec<Vec<R>>;

pub fn zeros<R: Ring>(like: &R, rows: usize, cols: usize) -> Matrix<R> {
    vec![vec![like.zero_like(); cols]; rows]
}

pub fn identity<R: Ring>(like: &R, n: usize) -> Matrix<R> {
    let mut m = zeros(like, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = like.one_like();
    }
    m
}

pub fn mat_mul<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let inner = b.len();
    assert!(a.iter().all(|r| r.len() == inner), "shape mismatch");
    let like = &a[0][0];
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = zeros(like, a.len(), cols);
    for i in 0..a.len() {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
            }
        }
    }
    out
}

pub fn mat_vec<R: Ring>(a: &Matrix<R>, v: &[R]) -> Vec<R> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(v[0].zero_like(), |acc, (x, y)| acc.add(&x.mul(y)))
        })
        .collect()
}

pub fn transpose<R: Ring>(a: &Matrix<R>) -> Matrix<R> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn is_identity<R: Ring>(a: &Matrix<R>) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

/// Determinant by Laplace expansion along rows with memoisation on the set of
/// remaining columns. Division free, so valid over any commutative ring.
pub fn determinant<R: Ring>(a: &Matrix<R>) -> R {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    assert!(n < 64);
    if n == 0 {
        panic!("determinant of an empty matrix needs a ring context");
    }
    let mut memo: HashMap<u64, R> = HashMap::new();
    det_rec(a, 0, (1u64 << n) - 1, &mut memo)
}

fn det_rec<R: Ring>(a: &Matrix<R>, row: usize, cols: u64, memo: &mut HashMap<u64, R>) -> R {
    if cols == 0 {
        return a[0][0].one_like();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = a[0][0].zero_like();
    let mut sign_neg = false;
    for j in 0..a.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &a[row][j];
        if !entry.is_zero() {
            let minor = det_rec(a, row + 1, cols & !(1 << j), memo);
            let term = entry.mul(&minor);
            acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
        }
        sign_neg = !sign_neg;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Inverse of a 2×2 matrix when the determinant is a unit.
pub fn inverse2<R: Ring>(m: &Matrix<R>) -> Option<Matrix<R>> {
    let det = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
    let inv = det.try_inverse()?;
    Some(vec![
        vec![m[1][1].mul(&inv), m[0][1].neg().mul(&inv)],
        vec![m[1][0].neg().mul(&inv), m[0][0].mul(&inv)],
    ])
}

/// Inverse by Gauss–Jordan elimination with unit pivots. Returns `None` if no
/// unit pivot is found, which over a field means the matrix is singular.
pub fn inverse<R: Ring>(m: &Matrix<R>) -> Option<Matrix<R>> {
    let n = m.len();
    let like = &m[0][0];
    let mut a: Matrix<R> = m.clone();
    let mut inv = identity(like, n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col].is_unit())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].try_inverse()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&p);
            inv[col][j] = inv[col][j].mul(&p);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                    inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                }
            }
        }
    }
    Some(inv)
}

/// Rank over a field by Gaussian elimination.
pub fn rank<R: Ring>(m: &Matrix<R>) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][col].try_inverse().expect("rank needs a field");
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].mul(&inv);
                for j in col..cols {
                    a[r][j] = a[r][j].sub(&f.mul(&a[rank][j]));
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{Fp, Rational};

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn determinant_examples() {
        let m = vec![vec![q(2), q(0), q(1)], vec![q(1), q(3), q(2)], vec![q(1), q(1), q(1)]];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(determinant(&m), q(0));
        let m = vec![vec![q(3), q(0), q(0)], vec![q(0), q(0), q(3)], vec![q(0), q(3), q(0)]];
        assert_eq!(determinant(&m), q(-27));
    }

    #[test]
    fn inverse_round_trip() {
        let p = |v| Fp::new(v, 7).unwrap();
        let m = vec![vec![p(1), p(2), p(0)], vec![p(0), p(1), p(3)], vec![p(4), p(0), p(1)]];
        let inv = inverse(&m).unwrap();
        assert!(is_identity(&mat_mul(&m, &inv)));
        assert_eq!(rank(&m), 3);
        let sing = vec![vec![p(1), p(2)], vec![p(2), p(4)]];
        assert!(inverse(&sing).is_none());
        assert!(inverse2(&sing).is_none());
        assert_eq!(rank(&sing), 1);
    }
}
