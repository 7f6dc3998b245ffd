//! Smith normal form with unimodular witnesses.
//!
//! Pivoting is deterministic: at every step the pivot is the nonzero entry of
//! least absolute value in the active block, ties broken by lowest row and then
//! lowest column. Identical inputs therefore always produce identical `u`, `d`,
//! `v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal with a
/// divisibility chain on its nonnegative diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries `d_1, …, d_min(rows, cols)` including zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero diagonal entries.
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }
}

fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in t..a.rows() {
        for c in t..a.cols() {
            let e = a.get(r, c);
            if e.is_zero() {
                continue;
            }
            let abs = e.abs();
            if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                best = Some((r, c, abs));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Smith normal form of `a` with witnesses. Total on integer matrices.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        let Some((pr, pc)) = find_pivot(&d, t) else { break };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        let mut clean = true;
        for r in t + 1..m {
            if d.get(r, t).is_zero() {
                continue;
            }
            let q = -d.get(r, t).div_floor(d.get(t, t));
            d.add_row_multiple(r, t, &q);
            u.add_row_multiple(r, t, &q);
            if !d.get(r, t).is_zero() {
                clean = false;
            }
        }
        for c in t + 1..n {
            if d.get(t, c).is_zero() {
                continue;
            }
            let q = -d.get(t, c).div_floor(d.get(t, t));
            d.add_col_multiple(c, t, &q);
            v.add_col_multiple(c, t, &q);
            if !d.get(t, c).is_zero() {
                clean = false;
            }
        }
        if !clean {
            // a smaller remainder exists; repivot
            continue;
        }

        let pivot = d.get(t, t).clone();
        let offender =
            (t + 1..m).flat_map(|r| (t + 1..n).map(move |c| (r, c))).find(|&(r, c)| !d.get(r, c).is_multiple_of(&pivot));
        if let Some((r, _)) = offender {
            let one = BigInt::one();
            d.add_row_multiple(t, r, &one);
            u.add_row_multiple(t, r, &one);
            continue;
        }

        if pivot.is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SnfDecomposition { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntMatrix::from_rows(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert_eq!(s.d, IntMatrix::zeros(2, 3));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn coprime_diagonal_needs_divisibility_fix() {
        let s = check(&IntMatrix::from_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn deterministic() {
        let a = IntMatrix::from_rows(&[&[3, -7, 2], &[5, 1, -4], &[0, 6, 6]]);
        assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    #[test]
    fn empty_shapes() {
        let s = check(&IntMatrix::zeros(1, 0));
        assert_eq!(s.rank(), 0);
        let s = check(&IntMatrix::zeros(0, 4));
        assert_eq!(s.v, IntMatrix::identity(4));
    }
}
