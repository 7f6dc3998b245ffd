//! Construction of truncated simplicial sets from their nondegenerate
//! simplices.
//!
//! Every simplex is uniquely `σ^*(y)` for a nondegenerate `y` of dimension
//! `m` and an order-preserving surjection `σ : [n] ↠ [m]`. Given the faces of
//! each nondegenerate simplex, all faces and degeneracies follow from
//! factoring composites of `σ` with coface and codegeneracy maps.

use std::collections::HashMap;

use super::set::SimplicialData;
use crate::error::{Error, Result};

/// `(σ, m, y)`: the surjection as its value sequence on `0..=n`, the target
/// dimension and the nondegenerate simplex index within dimension `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Code {
    m: usize,
    y: usize,
    sigma: Vec<usize>,
}

/// All order-preserving surjections `[n] ↠ [m]` in lexicographic order of
/// their value sequences.
pub fn surjections(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(pos: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos > n {
            if cur.last() == Some(&m) {
                out.push(cur.clone());
            }
            return;
        }
        let last = cur[pos - 1];
        for v in [last, last + 1] {
            // remaining positions must still be able to reach m
            if v <= m && m - v <= n - pos {
                cur.push(v);
                go(pos + 1, n, m, cur, out);
                cur.pop();
            }
        }
    }
    if m > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    go(1, n, m, &mut cur, &mut out);
    out
}

/// Builder for a truncated simplicial set given by nondegenerate simplices.
#[derive(Debug, Clone, Default)]
pub struct SimplicialBuilder {
    /// `nondeg[m][y]` lists the faces `d_0 y, …, d_m y` as indices into the
    /// full level `X_{m-1}`.
    nondeg: Vec<Vec<Vec<usize>>>,
}

impl SimplicialBuilder {
    pub fn new(vertices: usize) -> Self {
        SimplicialBuilder { nondeg: vec![vec![Vec::new(); vertices]] }
    }

    pub fn top_dimension(&self) -> usize {
        self.nondeg.len() - 1
    }

    /// Current full level `X_n`, in canonical order: by dimension of the
    /// underlying nondegenerate simplex, then its index, then the surjection.
    fn level(&self, n: usize) -> Vec<Code> {
        let mut out = Vec::new();
        for m in 0..=n.min(self.top_dimension()) {
            let surj = surjections(n, m);
            for y in 0..self.nondeg[m].len() {
                for s in &surj {
                    out.push(Code { m, y, sigma: s.clone() });
                }
            }
        }
        out
    }

    fn level_index(&self, n: usize) -> HashMap<Code, usize> {
        self.level(n).into_iter().enumerate().map(|(i, c)| (c, i)).collect()
    }

    /// `d_i` of a simplex code.
    fn face_code(&self, c: &Code, i: usize) -> Code {
        let mut tau = c.sigma.clone();
        tau.remove(i);
        let missing = (0..=c.m).find(|v| !tau.contains(v));
        match missing {
            None => Code { m: c.m, y: c.y, sigma: tau },
            Some(j) => {
                // σ∘δ^i = δ^j ∘ τ'; then pull back d_j y along τ'
                let tau_prime: Vec<usize> = tau.iter().map(|&v| if v > j { v - 1 } else { v }).collect();
                let level = self.level(c.m - 1);
                let face = &level[self.nondeg[c.m][c.y][j]];
                Code { m: face.m, y: face.y, sigma: tau_prime.iter().map(|&v| face.sigma[v]).collect() }
            }
        }
    }

    fn degeneracy_code(c: &Code, j: usize) -> Code {
        let mut sigma = c.sigma.clone();
        sigma.insert(j, c.sigma[j]);
        Code { m: c.m, y: c.y, sigma }
    }

    /// Adds a nondegenerate simplex of dimension `dim ≥ 1` with faces given
    /// as indices into the current `X_{dim-1}`; returns its index in `X_dim`.
    pub fn add_simplex(&mut self, dim: usize, faces: &[usize]) -> Result<usize> {
        if dim < self.top_dimension() {
            // earlier levels are referenced by index from higher faces
            return Err(Error::Invalid(format!("add dimension {dim} before dimension {}", self.top_dimension())));
        }
        if dim == 0 {
            self.nondeg[0].push(Vec::new());
            return Ok(self.level_index(0).len() - 1);
        }
        if faces.len() != dim + 1 {
            return Err(Error::Dimension(format!("a {dim}-simplex has {} faces", dim + 1)));
        }
        let lower = self.level(dim - 1);
        if faces.iter().any(|&f| f >= lower.len()) {
            return Err(Error::Invalid("face index outside X_{dim-1}".into()));
        }
        if dim >= 2 {
            for j in 1..=dim {
                for i in 0..j {
                    if self.face_code(&lower[faces[j]], i) != self.face_code(&lower[faces[i]], j - 1) {
                        return Err(Error::Invalid(format!("faces violate d_{i} d_{j} = d_{} d_{i}", j - 1)));
                    }
                }
            }
        }
        while self.nondeg.len() <= dim {
            self.nondeg.push(Vec::new());
        }
        self.nondeg[dim].push(faces.to_vec());
        let code = Code { m: dim, y: self.nondeg[dim].len() - 1, sigma: (0..=dim).collect() };
        Ok(self.level_index(dim)[&code])
    }

    /// Index in `X_n` of `σ₀ⁿ` applied to vertex `v`.
    pub fn degenerate_vertex(&self, v: usize, n: usize) -> usize {
        let code = Code { m: 0, y: v, sigma: vec![0; n + 1] };
        self.level_index(n)[&code]
    }

    /// Materializes all levels `0..=truncation`.
    pub fn build(&self, truncation: usize) -> SimplicialData {
        let levels: Vec<Vec<Code>> = (0..=truncation).map(|n| self.level(n)).collect();
        let index: Vec<HashMap<Code, usize>> = (0..=truncation).map(|n| self.level_index(n)).collect();
        let sets = levels.iter().map(Vec::len).collect();
        let faces = (0..=truncation)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n).map(|i| levels[n].iter().map(|c| index[n - 1][&self.face_code(c, i)]).collect()).collect()
            })
            .collect();
        let degeneracies = (0..=truncation)
            .map(|n| {
                if n == truncation {
                    return Vec::new();
                }
                (0..=n).map(|j| levels[n].iter().map(|c| index[n + 1][&Self::degeneracy_code(c, j)]).collect()).collect()
            })
            .collect();
        SimplicialData { truncation, sets, faces, degeneracies }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts_are_binomial() {
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(2, 2), vec![vec![0, 1, 2]]);
        assert_eq!(surjections(2, 0), vec![vec![0, 0, 0]]);
        assert_eq!(surjections(2, 1), vec![vec![0, 0, 1], vec![0, 1, 1]]);
        assert!(surjections(1, 2).is_empty());
    }

    #[test]
    fn circle_from_one_edge() {
        let mut b = SimplicialBuilder::new(1);
        b.add_simplex(1, &[0, 0]).unwrap();
        let d = b.build(3);
        assert_eq!(d.sets, vec![1, 2, 3, 4]);
        assert!(d.validate().is_valid(), "{:?}", d.validate());
    }

    #[test]
    fn triangle_boundary_checked() {
        let mut b = SimplicialBuilder::new(3);
        let e01 = b.add_simplex(1, &[1, 0]).unwrap();
        let e02 = b.add_simplex(1, &[2, 0]).unwrap();
        let e12 = b.add_simplex(1, &[2, 1]).unwrap();
        assert!(b.add_simplex(2, &[e12, e02, e01]).is_ok());
        assert!(b.add_simplex(2, &[e01, e02, e12]).is_err());
        let d = b.build(3);
        assert!(d.validate().is_valid());
        assert_eq!(d.nondegenerate(2).len(), 1);
        assert!(d.nondegenerate(3).is_empty());
    }
}
