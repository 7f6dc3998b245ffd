//! Integer lattices in row-Hermite normal form: kernels, images and
//! coordinates with respect to a canonical basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// Sublattice of `ℤ^dim`, stored as its reduced row-echelon (Hermite) basis.
/// Two lattices are equal exactly when their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    /// Lattice spanned by the given vectors.
    pub fn span(dim: usize, vectors: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vectors.into_iter().collect();
        assert!(rows.iter().all(|r| r.len() == dim), "vector length mismatch");
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            // gcd-combine all rows with a nonzero entry in this column
            let mut pivot_row: Option<Vec<BigInt>> = None;
            let mut rest = Vec::with_capacity(rows.len());
            for row in rows.drain(..) {
                if row[col].is_zero() {
                    rest.push(row);
                    continue;
                }
                match pivot_row.take() {
                    None => pivot_row = Some(row),
                    Some(p) => {
                        let (p, r) = gcd_combine(p, row, col);
                        pivot_row = Some(p);
                        if r.iter().any(|e| !e.is_zero()) {
                            rest.push(r);
                        }
                    }
                }
            }
            rows = rest;
            if let Some(mut p) = pivot_row {
                if p[col].is_negative() {
                    p.iter_mut().for_each(|e| *e = -&*e);
                }
                basis.push(p);
                pivots.push(col);
            }
        }
        // reduce entries above each pivot into [0, pivot)
        for i in 0..basis.len() {
            let pc = pivots[i];
            for j in 0..i {
                let q = basis[j][pc].div_floor(&basis[i][pc]);
                if !q.is_zero() {
                    #[allow(clippy::needless_range_loop)]
                    for c in 0..dim {
                        let v = &basis[i][c] * &q;
                        basis[j][c] -= v;
                    }
                }
            }
        }
        Lattice { dim, basis, pivots }
    }

    /// Column span of `m`.
    pub fn column_span(m: &IntMatrix) -> Self {
        Self::span(m.rows(), (0..m.cols()).map(|c| m.column(c)))
    }

    /// Integer kernel `{x : m x = 0}` of `m`, as a sublattice of `ℤ^cols`.
    pub fn kernel(m: &IntMatrix) -> Self {
        let s = smith_normal_form(m);
        let r = s.rank();
        Self::span(m.cols(), (r..m.cols()).map(|c| s.v.column(c)))
    }

    pub fn full(dim: usize) -> Self {
        Self::span(dim, (0..dim).map(|i| unit(dim, i)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis vectors as the columns of a `dim x rank` matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.dim, self.basis.len());
        for (j, b) in self.basis.iter().enumerate() {
            for (i, e) in b.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    /// Integer coordinates of `v` in the canonical basis, if `v` lies in the
    /// lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rem[pc].div_rem(&b[pc]);
            if !r.is_zero() {
                return None;
            }
            for c in 0..self.dim {
                let t = &b[c] * &q;
                rem[c] -= t;
            }
            coords.push(q);
        }
        rem.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Index `[ℤ^dim : L]` for a full-rank lattice, `None` otherwise.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == self.dim).then(|| self.basis.iter().zip(&self.pivots).map(|(b, &p)| b[p].clone()).product())
    }
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::one();
    v
}

/// Replaces `(a, b)` by a unimodular recombination whose first row carries
/// `gcd(a[col], b[col])` and whose second row vanishes at `col`.
fn gcd_combine(a: Vec<BigInt>, b: Vec<BigInt>, col: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let e = a[col].extended_gcd(&b[col]);
    let (x, y, g) = (e.x, e.y, e.gcd);
    let sa = &a[col] / &g;
    let sb = &b[col] / &g;
    let p: Vec<BigInt> = a.iter().zip(&b).map(|(ai, bi)| &x * ai + &y * bi).collect();
    let r: Vec<BigInt> = a.iter().zip(&b).map(|(ai, bi)| &sb * ai - &sa * bi).collect();
    (p, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = Lattice::span(2, [v(&[2, 0]), v(&[0, 3]), v(&[4, 3])]);
        let b = Lattice::span(2, [v(&[2, 3]), v(&[0, 3])]);
        assert_eq!(a, b);
        assert_eq!(a.index(), Some(BigInt::from(6)));
    }

    #[test]
    fn unit_vectors_span_themselves() {
        let l = Lattice::span(4, [v(&[0, 0, 1, 0]), v(&[0, 1, 0, 0])]);
        assert_eq!(l.basis(), &[v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])]);
    }

    #[test]
    fn kernel_and_coordinates() {
        let m = IntMatrix::from_rows(&[&[1, 1, 1]]);
        let k = Lattice::kernel(&m);
        assert_eq!(k.rank(), 2);
        let c = k.coordinates(&v(&[3, -5, 2])).unwrap();
        let back: Vec<BigInt> = (0..3).map(|i| k.basis().iter().zip(&c).map(|(b, x)| &b[i] * x).sum()).collect();
        assert_eq!(back, v(&[3, -5, 2]));
        assert!(k.coordinates(&v(&[1, 0, 0])).is_none());
    }
}
