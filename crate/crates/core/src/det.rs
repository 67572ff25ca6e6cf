//! Exact determinants by Laplace expansion over any commutative ring.
//!
//! Sub-determinants are memoized on the set of surviving columns, so an `n x n`
//! determinant costs `O(2^n * n)` ring multiplications. That is fine for the
//! `n <= 10` matrices this crate builds and avoids needing exact division.

use std::collections::HashMap;

use rug::Rational;

use crate::logpoly::LogPoly;

pub trait DetRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl DetRing for LogPoly {
    fn zero() -> Self {
        LogPoly::zero()
    }
    fn one() -> Self {
        LogPoly::one()
    }
    fn is_zero(&self) -> bool {
        LogPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl DetRing for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        Rational::from(self + other)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational::from(self - other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
}

/// Determinant by cofactor expansion along successive rows, starting from row 0.
///
/// Panics if the matrix is not square or is wider than 63 columns.
pub fn laplace_det<T: DetRing>(matrix: &[Vec<T>]) -> T {
    let n = matrix.len();
    assert!(
        matrix.iter().all(|row| row.len() == n),
        "determinant of a non-square matrix"
    );
    assert!(n < 64, "matrix too large for subset memoization");
    if n == 0 {
        return T::one();
    }
    let mut memo = HashMap::new();
    minor(matrix, (1u64 << n) - 1, &mut memo)
}

/// Determinant by cofactor expansion along successive columns, starting from column 0.
pub fn laplace_det_by_columns<T: DetRing>(matrix: &[Vec<T>]) -> T {
    laplace_det(&transpose(matrix))
}

pub fn transpose<T: Clone>(matrix: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = matrix.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| matrix.iter().map(|row| row[j].clone()).collect())
        .collect()
}

fn minor<T: DetRing>(matrix: &[Vec<T>], cols: u64, memo: &mut HashMap<u64, T>) -> T {
    if cols == 0 {
        return T::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let n = matrix.len();
    let row = n - cols.count_ones() as usize;
    let mut acc = T::zero();
    let mut position = 0usize;
    for col in 0..n {
        if cols & (1 << col) == 0 {
            continue;
        }
        let entry = &matrix[row][col];
        if !entry.is_zero() {
            let sub = minor(matrix, cols & !(1 << col), memo);
            if !sub.is_zero() {
                let term = entry.mul(&sub);
                acc = if position.is_multiple_of(2) {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}
