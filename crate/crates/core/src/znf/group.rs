use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::wire;

/// Finitely generated abelian group `ℤ^free_rank ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k` with
/// `2 ≤ d_1 | d_2 | … | d_k`.
///
/// Equality compares isomorphism classes; the optional presentation is
/// carried along for provenance only.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "wire::GroupWire", into = "wire::GroupWire")]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
    presentation: Option<IntMatrix>,
}

impl PartialEq for FgAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }
}

impl Eq for FgAbelianGroup {}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { free_rank: rank, invariant_factors: Vec::new(), presentation: None }
    }

    /// `ℤ/n`; `n = 0` gives `ℤ` and `n = ±1` the trivial group.
    pub fn cyclic(n: i64) -> Self {
        Self::from_orders(&[BigInt::from(n)])
    }

    /// Builds a group in canonical form from an already valid invariant-factor
    /// chain.
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        if invariant_factors.iter().any(|d| *d < two) {
            return Err(Error::Invalid("invariant factors must be at least 2".into()));
        }
        if invariant_factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::Invalid("invariant factors must form a divisibility chain".into()));
        }
        Ok(FgAbelianGroup { free_rank, invariant_factors, presentation: None })
    }

    /// Direct sum of cyclic groups `ℤ/n_i`, normalized to invariant factors
    /// (`n_i = 0` contributes a free summand).
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let diag = IntMatrix::diagonal(n, n, orders);
        let mut g = cokernel_structure(&diag);
        g.presentation = None;
        g
    }

    /// Attaches a presentation matrix after checking that its cokernel is this
    /// group.
    pub fn with_presentation(self, presentation: IntMatrix) -> Result<Self> {
        let g = cokernel_structure(&presentation);
        if g != self {
            return Err(Error::Invalid(format!("presentation realizes {g}, not {self}")));
        }
        Ok(g)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn presentation(&self) -> Option<&IntMatrix> {
        self.presentation.as_ref()
    }

    /// Canonical presentation: `ℤ^k → ℤ^(free + k)` with the invariant
    /// factors on the diagonal.
    pub fn canonical_presentation(&self) -> IntMatrix {
        let k = self.invariant_factors.len();
        let mut m = IntMatrix::zeros(k + self.free_rank, k);
        for (i, d) in self.invariant_factors.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.invariant_factors.len() <= 1
    }

    /// Minimal number of generators.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Cyclic orders of the canonical generators: torsion first, then `0` for
    /// each free summand.
    pub fn cyclic_orders(&self) -> Vec<BigInt> {
        let mut v = self.invariant_factors.clone();
        v.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        v
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut orders = self.cyclic_orders();
        orders.extend(other.cyclic_orders());
        Self::from_orders(&orders)
    }

    /// Elements of a finite group as residue vectors over the invariant
    /// factors, in lexicographic order (the identity first).
    pub fn elements(&self, cap: usize) -> Result<Vec<Vec<u64>>> {
        let order = self.order().ok_or_else(|| Error::Unsupported(format!("{self} is infinite")))?;
        let n = order
            .to_usize()
            .filter(|&n| n <= cap)
            .ok_or_else(|| Error::CapExceeded(format!("group of order {order} exceeds element cap {cap}")))?;
        let moduli: Vec<u64> = self.invariant_factors.iter().map(|d| d.to_u64().unwrap()).collect();
        let mut out = Vec::with_capacity(n);
        let mut cur = vec![0u64; moduli.len()];
        for _ in 0..n {
            out.push(cur.clone());
            for i in (0..moduli.len()).rev() {
                cur[i] += 1;
                if cur[i] < moduli[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbelianGroup({self})")
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("ℤ/{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Cokernel of `a : ℤ^cols → ℤ^rows`, read off the Smith diagonal.
pub fn cokernel_structure(a: &IntMatrix) -> FgAbelianGroup {
    let s = smith_normal_form(a);
    let diag = s.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let invariant_factors = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
    FgAbelianGroup { free_rank: a.rows() - rank, invariant_factors, presentation: Some(a.clone()) }
}

/// `Hom(A, B)`, computed factorwise: `Hom(ℤ, B) = B`, `Hom(ℤ/d, B) = B[d]`.
pub fn hom_fg(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut orders = Vec::new();
    for _ in 0..a.free_rank {
        orders.extend(b.cyclic_orders());
    }
    for d in &a.invariant_factors {
        // ℤ[d] = 0, (ℤ/e)[d] = ℤ/gcd(d, e)
        orders.extend(b.invariant_factors.iter().map(|e| d.gcd(e)));
    }
    FgAbelianGroup::from_orders(&orders)
}

/// `Ext¹(A, B)`, computed factorwise: `Ext¹(ℤ, B) = 0`, `Ext¹(ℤ/d, B) = B/dB`.
pub fn ext1_fg(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut orders = Vec::new();
    for d in &a.invariant_factors {
        orders.extend(std::iter::repeat_n(d.clone(), b.free_rank));
        orders.extend(b.invariant_factors.iter().map(|e| d.gcd(e)));
    }
    FgAbelianGroup::from_orders(&orders)
}

/// `A ⊗ B`, computed factorwise: `ℤ ⊗ B = B`, `ℤ/d ⊗ B = B/dB`.
pub fn tensor_fg(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut orders = Vec::new();
    for _ in 0..a.free_rank {
        orders.extend(b.cyclic_orders());
    }
    for d in &a.invariant_factors {
        orders.extend(std::iter::repeat_n(d.clone(), b.free_rank));
        orders.extend(b.invariant_factors.iter().map(|e| d.gcd(e)));
    }
    FgAbelianGroup::from_orders(&orders)
}

/// Dimension of `A ⊗ ℚ`.
pub fn rationalize_rank(a: &FgAbelianGroup) -> usize {
    a.free_rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(n)
    }

    #[test]
    fn cokernel_examples() {
        assert!(cokernel_structure(&IntMatrix::identity(2)).is_trivial());
        let g = cokernel_structure(&IntMatrix::from_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(g, z(6));
        assert_eq!(g.presentation(), Some(&IntMatrix::from_rows(&[&[2, 0], &[0, 3]])));
        assert_eq!(cokernel_structure(&IntMatrix::zeros(1, 0)), FgAbelianGroup::free(1));
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_fg(&z(0), &z(6)), z(6));
        assert_eq!(hom_fg(&z(4), &z(6)), z(2));
        assert_eq!(hom_fg(&z(4), &z(0)), FgAbelianGroup::trivial());
    }

    #[test]
    fn ext_examples() {
        assert!(ext1_fg(&z(0), &z(5)).is_trivial());
        assert_eq!(ext1_fg(&z(4), &z(0)), z(4));
        assert_eq!(ext1_fg(&z(6), &z(4)), z(2));
    }

    #[test]
    fn rationalization() {
        assert_eq!(rationalize_rank(&z(0)), 1);
        assert_eq!(rationalize_rank(&z(7)), 0);
        let g = FgAbelianGroup::free(2).direct_sum(&z(6));
        assert_eq!(rationalize_rank(&g), 2);
    }

    #[test]
    fn orders_normalize_to_invariant_factors() {
        let g = FgAbelianGroup::from_orders(&[BigInt::from(4), BigInt::from(6), BigInt::from(1)]);
        assert_eq!(g.invariant_factors(), &[BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g.to_string(), "ℤ/2 ⊕ ℤ/12");
    }

    #[test]
    fn new_rejects_broken_chain() {
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(4), BigInt::from(6)]).is_err());
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(1)]).is_err());
    }

    #[test]
    fn presentation_must_match() {
        let m = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        assert!(z(6).with_presentation(m.clone()).is_ok());
        assert!(z(5).with_presentation(m).is_err());
    }

    #[test]
    fn element_enumeration() {
        let g = FgAbelianGroup::from_orders(&[BigInt::from(2), BigInt::from(2)]);
        assert_eq!(g.elements(8).unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(FgAbelianGroup::free(1).elements(8).is_err());
        assert!(z(9).elements(8).is_err());
    }
}
