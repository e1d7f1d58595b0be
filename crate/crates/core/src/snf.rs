//! Smith normal form of integer matrices.
//!
//! Elimination first runs on `i64` with overflow checks and restarts on
//! arbitrary-precision integers if any intermediate entry overflows, so the
//! result is always exact. Pivots are chosen by minimal absolute value.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

trait Entry: Clone + Debug + PartialEq {
    fn is_zero(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    /// Truncating quotient.
    fn quot(&self, d: &Self) -> Self;
    /// `self - q * x`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Invariant factors `d1 | d2 | ... | dr` (all positive) of an integer
/// matrix given row-major. `r` is the rank.
pub fn invariant_factors(rows: usize, cols: usize, entries: &[i64]) -> Vec<BigInt> {
    assert_eq!(entries.len(), rows * cols);
    let small: Vec<Vec<i64>> = (0..rows)
        .map(|i| entries[i * cols..(i + 1) * cols].to_vec())
        .collect();
    let diag = match diagonalize(small.clone()) {
        Some(d) => d.iter().map(Entry::to_big).collect(),
        None => {
            let big: Vec<Vec<BigInt>> = small
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect();
            diagonalize(big).expect("bigint elimination cannot overflow")
        }
    };
    normalize_diagonal(diag)
}

/// Reduces to a diagonal matrix by unimodular row and column operations and
/// returns the nonzero diagonal entries. `None` on overflow.
fn diagonalize<T: Entry>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = pick_pivot(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            // clear column t below the pivot; remainders are smaller than it
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].quot(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                let (pivot_row, row) = (&head[t], &mut tail[0]);
                for j in t..cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = row[j].sub_mul(&q, &pivot_row[j])?;
                    }
                }
            }
            if let Some(i) = min_nonzero((t + 1..rows).map(|i| (i, &a[i][t]))) {
                a.swap(t, i);
                continue;
            }
            // column t is now zero off the pivot, so column operations only
            // touch row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].quot(&a[t][t]);
                a[t][j] = a[t][j].sub_mul(&q, &a[t][t])?;
            }
            if let Some(j) = min_nonzero((t + 1..cols).map(|j| (j, &a[t][j]))) {
                for row in a.iter_mut() {
                    row.swap(t, j);
                }
                continue;
            }
            break;
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Some(diag)
}

fn min_nonzero<'a, T: Entry + 'a>(entries: impl Iterator<Item = (usize, &'a T)>) -> Option<usize> {
    let mut best: Option<(usize, &T)> = None;
    for (k, v) in entries {
        if !v.is_zero() && best.is_none_or(|(_, b)| v.magnitude_lt(b)) {
            best = Some((k, v));
        }
    }
    best.map(|(k, _)| k)
}

fn pick_pivot<T: Entry>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if v.is_unit() {
                return Some((i, j));
            }
            if best.is_none_or(|(bi, bj)| v.magnitude_lt(&a[bi][bj])) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Turns an arbitrary nonzero diagonal into Smith form by repeatedly
/// replacing pairs `(a, b)` with `(gcd, lcm)`.
fn normalize_diagonal(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.abs()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Invariant factors above 1: the torsion part of the cokernel.
pub fn torsion_coefficients(factors: &[BigInt]) -> Vec<BigInt> {
    factors.iter().filter(|d| !d.is_one()).cloned().collect()
}

#[cfg(test)]
pub(crate) fn invariant_factors_bigint_only(rows: usize, cols: usize, entries: &[i64]) -> Vec<BigInt> {
    let big: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| entries[i * cols..(i + 1) * cols].iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    normalize_diagonal(diagonalize(big).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(invariant_factors(2, 2, &[2, 0, 0, 3]), big(&[1, 6]));
        assert_eq!(invariant_factors(2, 2, &[2, 4, 6, 8]), big(&[2, 4]));
        assert_eq!(invariant_factors(1, 3, &[0, 0, 0]), big(&[]));
        assert_eq!(invariant_factors(0, 0, &[]), big(&[]));
        assert_eq!(invariant_factors(3, 1, &[4, 6, 10]), big(&[2]));
        let m = [2, 4, 4, -6, 6, 12, 10, -4, -16];
        assert_eq!(invariant_factors(3, 3, &m), big(&[2, 6, 12]));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let huge = i64::MAX / 2 + 1;
        let m = [huge, huge - 1, huge - 1, huge - 2];
        // det = huge*(huge-2) - (huge-1)^2 = -1
        assert_eq!(invariant_factors(2, 2, &m), big(&[1, 1]));
    }

    /// Determinantal divisors by brute force on 3x3 and smaller matrices.
    fn det_divisors(rows: usize, cols: usize, m: &[i64]) -> Vec<BigInt> {
        fn det(rows: &[usize], cols: &[usize], m: &[i64], width: usize) -> BigInt {
            if rows.len() == 1 {
                return BigInt::from(m[rows[0] * width + cols[0]]);
            }
            let mut total = BigInt::zero();
            for (k, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det(&rows[1..], &rest, m, width);
                let term = BigInt::from(m[rows[0] * width + c]) * minor;
                if k % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == k)
                .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
                .collect()
        }
        let mut out = Vec::new();
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for r in subsets(rows, k) {
                for c in subsets(cols, k) {
                    g = g.gcd(&det(&r, &c, m, cols));
                }
            }
            if Zero::is_zero(&g) {
                break;
            }
            out.push(g);
        }
        out
    }

    proptest! {
        #[test]
        fn matches_determinantal_divisors(rows in 1usize..=3, cols in 1usize..=3, vals in proptest::collection::vec(-6i64..=6, 9)) {
            let m = &vals[..rows * cols];
            let d = invariant_factors(rows, cols, m);
            let dd = det_divisors(rows, cols, m);
            prop_assert_eq!(d.len(), dd.len());
            // d_k = D_k / D_{k-1}
            let mut prev = BigInt::one();
            for (k, dk) in dd.iter().enumerate() {
                prop_assert_eq!(&d[k] * &prev, dk.abs());
                prev = dk.abs();
            }
            prop_assert_eq!(d, invariant_factors_bigint_only(rows, cols, m));
        }
    }
}
