use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::group::FgAbelianGroup;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::wire;

/// Bounded chain complex of free abelian groups,
/// `C_{lo+L-1} → … → C_{lo+1} → C_lo`.
///
/// `differentials[j]` is `∂_{lo+j+1} : C_{lo+j+1} → C_{lo+j}`, a
/// `levels[j] x levels[j+1]` matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "wire::ComplexWire", into = "wire::ComplexWire")]
pub struct ChainComplex {
    lowest_degree: i64,
    levels: Vec<usize>,
    differentials: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Validates shapes and `∂∂ = 0`.
    pub fn new(lowest_degree: i64, levels: Vec<usize>, differentials: Vec<IntMatrix>) -> Result<Self> {
        let expected = levels.len().saturating_sub(1);
        if differentials.len() != expected {
            return Err(Error::Dimension(format!(
                "{} levels need {expected} differentials, got {}",
                levels.len(),
                differentials.len()
            )));
        }
        for (j, d) in differentials.iter().enumerate() {
            if d.rows() != levels[j] || d.cols() != levels[j + 1] {
                return Err(Error::Dimension(format!(
                    "differential out of degree {} must be {}x{}, got {}x{}",
                    lowest_degree + j as i64 + 1,
                    levels[j],
                    levels[j + 1],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for j in 1..differentials.len() {
            if !(&differentials[j - 1] * &differentials[j]).is_zero() {
                return Err(Error::NotAComplex(format!(
                    "∂_{} ∘ ∂_{} ≠ 0",
                    lowest_degree + j as i64,
                    lowest_degree + j as i64 + 1
                )));
            }
        }
        Ok(ChainComplex { lowest_degree, levels, differentials })
    }

    pub fn zero() -> Self {
        ChainComplex { lowest_degree: 0, levels: Vec::new(), differentials: Vec::new() }
    }

    /// `ℤ^rank` concentrated in `degree`.
    pub fn concentrated(degree: i64, rank: usize) -> Self {
        ChainComplex { lowest_degree: degree, levels: vec![rank], differentials: Vec::new() }
    }

    /// Two-term free resolution of `a` placed in degrees 1 and 0; quasi-isomorphic to `a[0]`.
    pub fn resolution(a: &FgAbelianGroup) -> Self {
        let p = a.canonical_presentation();
        if p.cols() == 0 {
            return Self::concentrated(0, p.rows());
        }
        ChainComplex { lowest_degree: 0, levels: vec![p.rows(), p.cols()], differentials: vec![p] }
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lowest_degree
    }

    /// Highest degree with a stored level (`lowest - 1` for the empty complex).
    pub fn highest_degree(&self) -> i64 {
        self.lowest_degree + self.levels.len() as i64 - 1
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    pub fn rank_at(&self, n: i64) -> usize {
        self.index(n).map_or(0, |i| self.levels[i])
    }

    fn index(&self, n: i64) -> Option<usize> {
        let i = n - self.lowest_degree;
        (i >= 0 && (i as usize) < self.levels.len()).then_some(i as usize)
    }

    /// `∂_n : C_n → C_{n-1}`, zero (of the right shape) outside the stored range.
    pub fn differential(&self, n: i64) -> IntMatrix {
        match (self.index(n), self.index(n - 1)) {
            (Some(i), Some(_)) => self.differentials[i - 1].clone(),
            _ => IntMatrix::zeros(self.rank_at(n - 1), self.rank_at(n)),
        }
    }

    /// Same complex with every degree raised by `n`; differentials pick up the
    /// sign `(-1)^n`.
    pub fn shift(&self, n: i64) -> ChainComplex {
        let differentials =
            if n % 2 == 0 { self.differentials.clone() } else { self.differentials.iter().map(IntMatrix::neg).collect() };
        ChainComplex { lowest_degree: self.lowest_degree + n, levels: self.levels.clone(), differentials }
    }

    /// Drops zero levels at both ends; the empty complex sits at degree 0.
    pub fn trimmed(&self) -> ChainComplex {
        let first = self.levels.iter().position(|&r| r > 0);
        let last = self.levels.iter().rposition(|&r| r > 0);
        match (first, last) {
            (Some(a), Some(b)) => ChainComplex {
                lowest_degree: self.lowest_degree + a as i64,
                levels: self.levels[a..=b].to_vec(),
                differentials: self.differentials[a..b].to_vec(),
            },
            _ => ChainComplex::zero(),
        }
    }

    /// Same complex stored over exactly the degrees `lo..=hi`, adding zero
    /// levels as needed. Nonzero levels outside the window are an error.
    pub fn padded(&self, lo: i64, hi: i64) -> Result<ChainComplex> {
        let t = self.trimmed();
        if t.levels.iter().any(|&r| r > 0) && (t.lowest_degree < lo || t.highest_degree() > hi) {
            return Err(Error::Dimension(format!("complex has support outside [{lo}, {hi}]")));
        }
        let levels: Vec<usize> = (lo..=hi).map(|n| self.rank_at(n)).collect();
        let differentials = (lo + 1..=hi).map(|n| self.differential(n)).collect();
        Ok(ChainComplex { lowest_degree: lo, levels, differentials })
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let lo = self.lowest_degree.min(other.lowest_degree);
        let hi = self.highest_degree().max(other.highest_degree());
        if hi < lo {
            return ChainComplex::zero();
        }
        let levels: Vec<usize> = (lo..=hi).map(|n| self.rank_at(n) + other.rank_at(n)).collect();
        let differentials = (lo + 1..=hi).map(|n| block_diagonal(&self.differential(n), &other.differential(n))).collect();
        ChainComplex { lowest_degree: lo, levels, differentials }
    }

    /// Homology `H_n = ker ∂_n / im ∂_{n+1}` at every stored degree.
    pub fn homology(&self) -> GradedGroups {
        let mut g = GradedGroups::new(self.lowest_degree, self.highest_degree());
        for n in self.lowest_degree..=self.highest_degree() {
            g.insert(n, self.homology_at(n));
        }
        g
    }

    pub fn homology_at(&self, n: i64) -> FgAbelianGroup {
        let rank_n = self.rank_at(n);
        if rank_n == 0 {
            return FgAbelianGroup::trivial();
        }
        let out_rank = smith_normal_form(&self.differential(n)).rank();
        let incoming = smith_normal_form(&self.differential(n + 1));
        let in_rank = incoming.rank();
        let torsion: Vec<BigInt> = incoming.nonzero_diagonal().into_iter().filter(|d| *d > BigInt::from(1)).collect();
        FgAbelianGroup::new(rank_n - out_rank - in_rank, torsion).expect("Smith diagonal is a divisibility chain")
    }
}

fn block_diagonal(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut m = IntMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    m
}

/// Degree → group association with an explicit support window; degrees
/// outside the window (or absent inside it) are the trivial group.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedGroups {
    pub window: (i64, i64),
    groups: BTreeMap<i64, FgAbelianGroup>,
}

impl GradedGroups {
    pub fn new(lo: i64, hi: i64) -> Self {
        GradedGroups { window: (lo, hi), groups: BTreeMap::new() }
    }

    /// Inserts `g` at `n`, widening the window if needed; trivial groups are
    /// not stored.
    pub fn insert(&mut self, n: i64, g: FgAbelianGroup) {
        if self.window.0 > self.window.1 {
            self.window = (n, n);
        } else {
            self.window = (self.window.0.min(n), self.window.1.max(n));
        }
        if g.is_trivial() {
            self.groups.remove(&n);
        } else {
            self.groups.insert(n, g);
        }
    }

    pub fn get(&self, n: i64) -> FgAbelianGroup {
        self.groups.get(&n).cloned().unwrap_or_else(FgAbelianGroup::trivial)
    }

    /// Nontrivial entries in increasing degree.
    pub fn nonzero(&self) -> impl Iterator<Item = (i64, &FgAbelianGroup)> {
        self.groups.iter().map(|(&n, g)| (n, g))
    }

    /// Entries in degrees `≤ hi`.
    pub fn up_to(&self, hi: i64) -> GradedGroups {
        let groups = self.groups.range(..=hi).map(|(&n, g)| (n, g.clone())).collect();
        GradedGroups { window: (self.window.0, self.window.1.min(hi)), groups }
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Same nontrivial groups in the same degrees (windows may differ).
    pub fn same_groups(&self, other: &GradedGroups) -> bool {
        self.groups == other.groups
    }
}

impl fmt::Debug for GradedGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(|(n, g)| format!("{n}: {g}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Total Hom complex in cohomological degree `n`:
/// `Hom^n(C, D) = ⊕_p Hom(C_p, D_{p-n})`, each block flattened row-major.
struct HomBlocks {
    blocks: Vec<(i64, usize, usize, usize)>, // (p, offset, rows = rank D_{p-n}, cols = rank C_p)
    size: usize,
}

fn hom_blocks(c: &ChainComplex, d: &ChainComplex, n: i64) -> HomBlocks {
    let mut blocks = Vec::new();
    let mut size = 0;
    for p in c.lowest_degree..=c.highest_degree() {
        let (rows, cols) = (d.rank_at(p - n), c.rank_at(p));
        if rows * cols > 0 {
            blocks.push((p, size, rows, cols));
            size += rows * cols;
        }
    }
    HomBlocks { blocks, size }
}

/// Matrix of `δ : Hom^n → Hom^{n+1}`,
/// `(δf)_p = ∂^D f_p − (−1)^n f_{p−1} ∂^C_p`.
fn hom_differential(c: &ChainComplex, d: &ChainComplex, n: i64) -> IntMatrix {
    let src = hom_blocks(c, d, n);
    let dst = hom_blocks(c, d, n + 1);
    let mut m = IntMatrix::zeros(dst.size, src.size);
    let sign = if n % 2 == 0 { BigInt::from(-1) } else { BigInt::from(1) };
    for &(p, off, rows, cols) in &dst.blocks {
        // target block: C_p → D_{p-n-1}
        for &(q, soff, srows, scols) in &src.blocks {
            if q == p {
                // ∂^D_{p-n} ∘ f_p
                let dd = d.differential(p - n);
                for i in 0..rows {
                    for j in 0..cols {
                        for k in 0..srows {
                            let coef = dd.get(i, k);
                            if !coef.is_zero() {
                                let cur = m.get(off + i * cols + j, soff + k * scols + j).clone();
                                m.set(off + i * cols + j, soff + k * scols + j, cur + coef);
                            }
                        }
                    }
                }
            } else if q == p - 1 {
                // ±f_{p-1} ∘ ∂^C_p
                let dc = c.differential(p);
                for i in 0..rows {
                    for j in 0..cols {
                        for k in 0..scols {
                            let coef = dc.get(k, j);
                            if !coef.is_zero() {
                                let cur = m.get(off + i * cols + j, soff + i * scols + k).clone();
                                m.set(off + i * cols + j, soff + i * scols + k, cur + &sign * coef);
                            }
                        }
                    }
                }
            }
        }
    }
    m
}

/// `hyperExt^n(C, D)`: cohomology of the total Hom complex in degree `n`.
/// Levels are free, so no resolution is needed. Degrees with no Hom blocks
/// give the trivial group.
pub fn hyper_ext(c: &ChainComplex, d: &ChainComplex, n: i64) -> FgAbelianGroup {
    let here = hom_blocks(c, d, n).size;
    if here == 0 {
        return FgAbelianGroup::trivial();
    }
    let out_rank = smith_normal_form(&hom_differential(c, d, n)).rank();
    let incoming = hom_differential(c, d, n - 1);
    let s = smith_normal_form(&incoming);
    let torsion: Vec<BigInt> = s.nonzero_diagonal().into_iter().filter(|x| *x > BigInt::from(1)).collect();
    FgAbelianGroup::new(here - out_rank - s.rank(), torsion).expect("Smith diagonal is a divisibility chain")
}

/// Range of cohomological degrees where `Hom^n(C, D)` can be nonzero.
pub fn hyper_ext_support(c: &ChainComplex, d: &ChainComplex) -> Option<(i64, i64)> {
    if c.levels.is_empty() || d.levels.is_empty() {
        return None;
    }
    Some((c.lowest_degree - d.highest_degree(), c.highest_degree() - d.lowest_degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times_two() -> ChainComplex {
        ChainComplex::new(0, vec![1, 1], vec![IntMatrix::from_rows(&[&[2]])]).unwrap()
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMatrix::from_rows(&[&[1]]);
        let d2 = IntMatrix::from_rows(&[&[1]]);
        assert!(matches!(ChainComplex::new(0, vec![1, 1, 1], vec![d1, d2]), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ChainComplex::new(0, vec![1, 2], vec![IntMatrix::zeros(1, 1)]).is_err());
        assert!(ChainComplex::new(0, vec![1, 2], vec![]).is_err());
    }

    #[test]
    fn homology_examples() {
        let h = ChainComplex::concentrated(0, 1).homology();
        assert_eq!(h.get(0), FgAbelianGroup::free(1));
        let h = times_two().homology();
        assert_eq!(h.get(0), FgAbelianGroup::cyclic(2));
        assert!(h.get(1).is_trivial());
        assert!(h.get(17).is_trivial());
    }

    #[test]
    fn hyper_ext_examples() {
        let z0 = ChainComplex::concentrated(0, 1);
        assert_eq!(hyper_ext(&z0, &z0, 0), FgAbelianGroup::free(1));
        assert_eq!(hyper_ext(&z0, &times_two(), 0), FgAbelianGroup::cyclic(2));
        assert_eq!(hyper_ext(&times_two(), &z0, 1), FgAbelianGroup::cyclic(2));
        assert!(hyper_ext(&times_two(), &z0, 0).is_trivial());
        assert!(hyper_ext(&z0, &z0, 5).is_trivial());
    }

    #[test]
    fn shift_moves_homology() {
        let c = times_two();
        let s = c.shift(3);
        assert_eq!(s.homology().get(3), FgAbelianGroup::cyclic(2));
        assert_eq!(s.lowest_degree(), 3);
    }

    #[test]
    fn resolution_realizes_group() {
        let a = FgAbelianGroup::free(1).direct_sum(&FgAbelianGroup::cyclic(6));
        let r = ChainComplex::resolution(&a);
        assert_eq!(r.homology().get(0), a);
        assert!(r.homology().get(1).is_trivial());
    }

    #[test]
    fn direct_sum_adds_homology() {
        let s = times_two().direct_sum(&ChainComplex::concentrated(1, 2));
        assert_eq!(s.homology().get(1), FgAbelianGroup::free(2));
        assert_eq!(s.homology().get(0), FgAbelianGroup::cyclic(2));
    }
}
