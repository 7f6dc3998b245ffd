//! Levelwise free simplicial abelian groups and the Dold–Kan functors.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::builder::surjections;
use super::set::{SimplicialPointedSet, ValidationReport};
use crate::error::{Error, Result};
use crate::znf::{ChainComplex, FgAbelianGroup, GradedGroups, IntMatrix, Lattice};

/// Truncated simplicial abelian group with free levels `ℤ^{ranks[n]}`.
/// `faces[n][i]` is a `ranks[n-1] x ranks[n]` matrix and
/// `degeneracies[n][j]` a `ranks[n+1] x ranks[n]` matrix, acting on columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialAbelianGroup {
    pub truncation: usize,
    pub ranks: Vec<usize>,
    pub faces: Vec<Vec<IntMatrix>>,
    pub degeneracies: Vec<Vec<IntMatrix>>,
}

impl SimplicialAbelianGroup {
    pub fn groups(&self) -> Vec<FgAbelianGroup> {
        self.ranks.iter().map(|&r| FgAbelianGroup::free(r)).collect()
    }

    fn face(&self, n: usize, i: usize) -> &IntMatrix {
        &self.faces[n][i]
    }

    fn degeneracy(&self, n: usize, j: usize) -> &IntMatrix {
        &self.degeneracies[n][j]
    }

    fn check_shapes(&self, r: &mut ValidationReport) -> bool {
        let top = self.truncation;
        if self.ranks.len() != top + 1 || self.faces.len() != top + 1 || self.degeneracies.len() != top + 1 {
            r.push("shape: one entry per dimension 0..=truncation", top, 0, 0, 0);
            return false;
        }
        for n in 0..=top {
            let nf = if n == 0 { 0 } else { n + 1 };
            let nd = if n == top { 0 } else { n + 1 };
            if self.faces[n].len() != nf || self.degeneracies[n].len() != nd {
                r.push("shape: n+1 faces and degeneracies in dimension n", n, 0, 0, 0);
                return false;
            }
            for (i, f) in self.faces[n].iter().enumerate() {
                if f.rows() != self.ranks[n - 1] || f.cols() != self.ranks[n] {
                    r.push("shape: face matrix is rank(n-1) x rank(n)", n, i, 0, 0);
                    return false;
                }
            }
            for (j, s) in self.degeneracies[n].iter().enumerate() {
                if s.rows() != self.ranks[n + 1] || s.cols() != self.ranks[n] {
                    r.push("shape: degeneracy matrix is rank(n+1) x rank(n)", n, j, 0, 0);
                    return false;
                }
            }
        }
        true
    }

    /// The simplicial identities as matrix identities.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        if !self.check_shapes(&mut r) {
            return r;
        }
        let top = self.truncation;
        for n in 0..=top {
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        if self.face(n - 1, i) * self.face(n, j) != self.face(n - 1, j - 1) * self.face(n, i) {
                            r.push("d_i d_j = d_{j-1} d_i", n, i, j, 0);
                        }
                    }
                }
            }
            if n < top {
                let id = IntMatrix::identity(self.ranks[n]);
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, i) * self.degeneracy(n, j);
                        let (ok, name) = if i == j || i == j + 1 {
                            (lhs == id, "d_j s_j = d_{j+1} s_j = id")
                        } else if i < j {
                            (lhs == self.degeneracy(n - 1, j - 1) * self.face(n, i), "d_i s_j = s_{j-1} d_i")
                        } else {
                            (lhs == self.degeneracy(n - 1, j) * self.face(n, i - 1), "d_i s_j = s_j d_{i-1}")
                        };
                        if !ok {
                            r.push(name, n, i, j, 0);
                        }
                    }
                }
            }
            if n + 2 <= top {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = self.degeneracy(n + 1, i) * self.degeneracy(n, j);
                        let rhs = self.degeneracy(n + 1, j + 1) * self.degeneracy(n, i);
                        if lhs != rhs {
                            r.push("s_i s_j = s_{j+1} s_i", n, i, j, 0);
                        }
                    }
                }
            }
        }
        r
    }
}

/// Matrix of the map induced by `f : X_n → X_m` on free groups with the
/// basepoints set to zero. `basis_*` lists the non-basepoint elements.
fn induced(f: &[usize], from: &[usize], to: &[usize]) -> IntMatrix {
    let mut m = IntMatrix::zeros(to.len(), from.len());
    for (c, &x) in from.iter().enumerate() {
        if let Ok(r) = to.binary_search(&f[x]) {
            m.set(r, c, BigInt::one());
        }
    }
    m
}

/// Free simplicial abelian group on `x` with the basepoints identified to
/// zero. The basis of dimension `n` is the non-basepoint elements of `X_n` in
/// index order.
pub fn levelwise_free(x: &SimplicialPointedSet) -> Result<SimplicialAbelianGroup> {
    x.validate().into_result()?;
    let d = &x.data;
    let top = d.truncation;
    let bases: Vec<Vec<usize>> = (0..=top).map(|n| (0..d.sets[n]).filter(|&e| !x.is_basepoint(n, e)).collect()).collect();
    let faces = (0..=top)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            d.faces[n].iter().map(|f| induced(f, &bases[n], &bases[n - 1])).collect()
        })
        .collect();
    let degeneracies =
        (0..=top).map(|n| d.degeneracies[n].iter().map(|s| induced(s, &bases[n], &bases[n + 1])).collect()).collect();
    Ok(SimplicialAbelianGroup { truncation: top, ranks: bases.iter().map(Vec::len).collect(), faces, degeneracies })
}

/// `N_n = ⋂_{i≥1} ker d_i` in its canonical Hermite basis.
fn normalized_levels(a: &SimplicialAbelianGroup) -> Vec<Lattice> {
    (0..=a.truncation)
        .map(|n| {
            if n == 0 {
                return Lattice::full(a.ranks[0]);
            }
            let stacked = a.faces[n][1..]
                .iter()
                .skip(1)
                .try_fold(a.faces[n][1].clone(), |acc, f| acc.vstack(f))
                .expect("face matrices share a column count");
            Lattice::kernel(&stacked)
        })
        .collect()
}

/// Normalized complex: degree `n` is `⋂_{i≥1} ker d_i` with differential
/// `d_0`, in degrees `0..=N`.
pub fn normalized_complex(a: &SimplicialAbelianGroup) -> Result<ChainComplex> {
    a.validate().into_result()?;
    let levels = normalized_levels(a);
    let mut differentials = Vec::new();
    for n in 1..=a.truncation {
        let (src, dst) = (&levels[n], &levels[n - 1]);
        let mut m = IntMatrix::zeros(dst.rank(), src.rank());
        for (c, b) in src.basis().iter().enumerate() {
            let image = a.faces[n][0].mul_vec(b);
            let coords = dst
                .coordinates(&image)
                .ok_or_else(|| Error::Invalid(format!("d_0 leaves the normalized subgroup in dimension {n}")))?;
            for (r, v) in coords.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        differentials.push(m);
    }
    ChainComplex::new(0, levels.iter().map(Lattice::rank).collect(), differentials)
}

/// Moore complex: `a_n` with differential `Σ (-1)^i d_i`.
pub fn moore_complex(a: &SimplicialAbelianGroup) -> Result<ChainComplex> {
    a.validate().into_result()?;
    let differentials = (1..=a.truncation)
        .map(|n| {
            a.faces[n].iter().enumerate().fold(IntMatrix::zeros(a.ranks[n - 1], a.ranks[n]), |acc, (i, f)| {
                let term = if i % 2 == 0 { f.clone() } else { f.neg() };
                acc.checked_add(&term).expect("same shape")
            })
        })
        .collect();
    ChainComplex::new(0, a.ranks.clone(), differentials)
}

/// Summand layout of `Γ(C)_n = ⊕_{σ : [n] ↠ [k]} C_k`, ordered by `k`
/// ascending and then `σ` lexicographically.
struct GammaLevel {
    summands: Vec<(usize, Vec<usize>, usize)>, // (k, σ, offset)
    rank: usize,
}

fn gamma_level(c: &ChainComplex, n: usize) -> GammaLevel {
    let mut summands = Vec::new();
    let mut offset = 0;
    for k in 0..=n {
        let r = c.rank_at(k as i64);
        if r == 0 {
            continue;
        }
        for s in surjections(n, k) {
            summands.push((k, s, offset));
            offset += r;
        }
    }
    GammaLevel { summands, rank: offset }
}

fn place(m: &mut IntMatrix, row: usize, col: usize, block: &IntMatrix) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            if !block.get(r, c).is_zero() {
                m.set(row + r, col + c, block.get(r, c).clone());
            }
        }
    }
}

/// Dold–Kan inverse `Γ`, truncated at dimension `truncation`.
///
/// On the summand indexed by `σ`, `θ^*` factors `σθ` as a surjection `η`
/// followed by an injection `ε`; it is the identity onto `η` when `ε = id`,
/// the differential onto `η` when `ε = δ^0`, and zero otherwise.
pub fn dold_kan_gamma(c: &ChainComplex, truncation: usize) -> Result<SimplicialAbelianGroup> {
    let t = c.trimmed();
    if t.levels().iter().any(|&r| r > 0) {
        if t.lowest_degree() < 0 {
            return Err(Error::Invalid("complex has support in negative degrees".into()));
        }
        if t.highest_degree() > truncation as i64 {
            return Err(Error::Invalid(format!("complex has support above truncation {truncation}")));
        }
    }
    let levels: Vec<GammaLevel> = (0..=truncation).map(|n| gamma_level(c, n)).collect();
    let find = |n: usize, k: usize, s: &[usize]| -> usize {
        levels[n].summands.iter().find(|(kk, ss, _)| *kk == k && ss == s).map(|x| x.2).expect("summand exists")
    };

    let mut faces = vec![Vec::new()];
    for n in 1..=truncation {
        let mut per_i = Vec::new();
        for i in 0..=n {
            let mut m = IntMatrix::zeros(levels[n - 1].rank, levels[n].rank);
            for (k, s, off) in &levels[n].summands {
                let mut tau = s.clone();
                tau.remove(i);
                let missing = (0..=*k).find(|v| !tau.contains(v));
                match missing {
                    None => {
                        let r = c.rank_at(*k as i64);
                        place(&mut m, find(n - 1, *k, &tau), *off, &IntMatrix::identity(r));
                    }
                    Some(0) => {
                        let d = c.differential(*k as i64);
                        if d.rows() > 0 {
                            let eta: Vec<usize> = tau.iter().map(|v| v - 1).collect();
                            place(&mut m, find(n - 1, k - 1, &eta), *off, &d);
                        }
                    }
                    Some(_) => {}
                }
            }
            per_i.push(m);
        }
        faces.push(per_i);
    }

    let mut degeneracies = Vec::new();
    for n in 0..=truncation {
        if n == truncation {
            degeneracies.push(Vec::new());
            continue;
        }
        let per_j = (0..=n)
            .map(|j| {
                let mut m = IntMatrix::zeros(levels[n + 1].rank, levels[n].rank);
                for (k, s, off) in &levels[n].summands {
                    let mut eta = s.clone();
                    eta.insert(j, s[j]);
                    place(&mut m, find(n + 1, *k, &eta), *off, &IntMatrix::identity(c.rank_at(*k as i64)));
                }
                m
            })
            .collect();
        degeneracies.push(per_j);
    }

    Ok(SimplicialAbelianGroup { truncation, ranks: levels.iter().map(|l| l.rank).collect(), faces, degeneracies })
}

/// `π_*` of the Eilenberg–MacLane object of `c`: homology of `N(Γ c)`,
/// checked against the homology of `c` itself.
pub fn em_homotopy_groups(c: &ChainComplex) -> Result<GradedGroups> {
    let top = c.trimmed().highest_degree().max(0) as usize;
    let gamma = dold_kan_gamma(c, top)?;
    let pi = normalized_complex(&gamma)?.homology();
    let direct = c.homology();
    if !pi.same_groups(&direct) {
        return Err(Error::Invalid(format!("π_*(Γ C) = {pi} but H_*(C) = {direct}")));
    }
    Ok(pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::corpus;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn constant_z_has_h0_only() {
        let g = dold_kan_gamma(&ChainComplex::concentrated(0, 1), 3).unwrap();
        assert_eq!(g.ranks, vec![1, 1, 1, 1]);
        assert!(g.validate().is_valid());
        let n = normalized_complex(&g).unwrap();
        assert_eq!(n.levels(), &[1, 0, 0, 0]);
        let h = n.homology();
        assert_eq!(h.get(0), FgAbelianGroup::free(1));
        assert_eq!(h.nonzero().count(), 1);
    }

    #[test]
    fn z_in_degree_one_counts_surjections() {
        let c = ChainComplex::concentrated(1, 1);
        let g = dold_kan_gamma(&c, 4).unwrap();
        assert_eq!(g.ranks, vec![0, 1, 2, 3, 4]);
        assert!(g.validate().is_valid());
        assert_eq!(normalized_complex(&g).unwrap(), c.padded(0, 4).unwrap());
    }

    #[test]
    fn mod_two_moore_roundtrip() {
        let c = ChainComplex::new(0, vec![1, 1], vec![IntMatrix::from_rows(&[&[2]])]).unwrap();
        let g = dold_kan_gamma(&c, 3).unwrap();
        assert!(g.validate().is_valid());
        assert_eq!(normalized_complex(&g).unwrap(), c.padded(0, 3).unwrap());
        let pi = em_homotopy_groups(&c).unwrap();
        assert_eq!(pi.get(0), FgAbelianGroup::cyclic(2));
        assert_eq!(pi.nonzero().count(), 1);
    }

    #[test]
    fn em_of_shifted_z() {
        let pi = em_homotopy_groups(&ChainComplex::concentrated(2, 1)).unwrap();
        assert_eq!(pi.get(2), FgAbelianGroup::free(1));
        assert!(em_homotopy_groups(&ChainComplex::concentrated(-1, 1)).is_err());
    }

    #[test]
    fn circle_abelianization() {
        let x = corpus::lifted("circle").unwrap();
        let a = levelwise_free(&x).unwrap();
        assert_eq!(&a.ranks[..2], &[0, 1]);
        assert!(a.validate().is_valid());
        let n = normalized_complex(&a).unwrap();
        assert_eq!(n.rank_at(1), 1);
        assert!(n.differential(1).is_zero());
        assert_eq!(n.homology().get(1), FgAbelianGroup::free(1));
    }

    #[test]
    fn s0_and_point() {
        let a = levelwise_free(&corpus::lifted("s0").unwrap()).unwrap();
        assert_eq!(a.ranks, vec![1, 1, 1]);
        let n = normalized_complex(&a).unwrap();
        assert_eq!(n.levels(), &[1, 0, 0]);
        let p = levelwise_free(&corpus::lifted("point").unwrap()).unwrap();
        assert!(p.ranks.iter().all(|&r| r == 0));
    }

    #[test]
    fn normalized_agrees_with_moore_on_corpus() {
        // the top degree of a truncation sees no boundaries, degenerate ones included
        for name in corpus::NAMES {
            let a = levelwise_free(&corpus::lifted(name).unwrap()).unwrap();
            let top = a.truncation as i64 - 1;
            let n = normalized_complex(&a).unwrap().homology().up_to(top);
            let m = moore_complex(&a).unwrap().homology().up_to(top);
            assert!(n.same_groups(&m), "{name}: {n} vs {m}");
        }
    }

    #[test]
    fn sphere_has_top_class() {
        let a = levelwise_free(&corpus::lifted("s2").unwrap()).unwrap();
        let h = normalized_complex(&a).unwrap().homology();
        assert_eq!(h.get(2), FgAbelianGroup::free(1));
        assert!(h.get(0).is_trivial() && h.get(1).is_trivial());
    }

    #[test]
    fn corrupted_matrix_is_reported() {
        let mut g = dold_kan_gamma(&ChainComplex::concentrated(1, 1), 2).unwrap();
        g.faces[2][0].set(0, 0, z(5));
        assert!(!g.validate().is_valid());
        assert!(normalized_complex(&g).is_err());
    }
}
