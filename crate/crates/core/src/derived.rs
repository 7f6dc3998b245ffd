//! Homology of the dualizing complex over `Spec S`, expressed through
//! formal values `Ext¹(ℚ, B)`.
//!
//! `Ext¹(ℚ, B)` is uncountable for `B ≠ 0` free, so it is recorded by the
//! rank of `B` together with a display label. Torsion contributes nothing:
//! `Ext¹(ℚ, ℤ/n) = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::znf::{hom_fg, hyper_ext, rationalize_rank, ChainComplex, FgAbelianGroup};

/// Formal `Ext¹(ℚ, B)` for a finitely generated `B`, remembered by the free
/// rank of `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalExt {
    pub rank: usize,
    pub source_label: String,
}

fn free_label(rank: usize) -> String {
    match rank {
        0 => "0".into(),
        1 => "ℤ".into(),
        r => format!("ℤ^{r}"),
    }
}

impl FormalExt {
    pub fn zero() -> Self {
        FormalExt { rank: 0, source_label: free_label(0) }
    }

    /// `Ext¹(ℚ, b)`.
    pub fn of(b: &FgAbelianGroup) -> Self {
        Self::of_rank(b.free_rank())
    }

    pub fn of_rank(rank: usize) -> Self {
        FormalExt { rank, source_label: free_label(rank) }
    }

    /// Same value with `B` displayed as `label` (for example `𝒪_K`).
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        if self.rank > 0 {
            self.source_label = label.into();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    /// `Ext¹(ℚ, B ⊕ B′)`.
    pub fn direct_sum(&self, other: &FormalExt) -> FormalExt {
        match (self.is_zero(), other.is_zero()) {
            (true, _) => other.clone(),
            (_, true) => self.clone(),
            _ if self.source_label == free_label(self.rank) && other.source_label == free_label(other.rank) => {
                Self::of_rank(self.rank + other.rank)
            }
            _ => FormalExt {
                rank: self.rank + other.rank,
                source_label: format!("{} ⊕ {}", self.source_label, other.source_label),
            },
        }
    }
}

impl fmt::Display for FormalExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "Ext¹(ℚ,{})", self.source_label)
        }
    }
}

/// Integral homology of a finite complex: finitely many groups in degrees `≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<i64, FgAbelianGroup>", into = "BTreeMap<i64, FgAbelianGroup>")]
pub struct FiniteComplexHomology {
    groups: BTreeMap<i64, FgAbelianGroup>,
}

impl TryFrom<BTreeMap<i64, FgAbelianGroup>> for FiniteComplexHomology {
    type Error = Error;

    fn try_from(groups: BTreeMap<i64, FgAbelianGroup>) -> Result<Self> {
        Self::new(groups)
    }
}

impl From<FiniteComplexHomology> for BTreeMap<i64, FgAbelianGroup> {
    fn from(h: FiniteComplexHomology) -> Self {
        h.groups
    }
}

impl FiniteComplexHomology {
    pub fn new(groups: BTreeMap<i64, FgAbelianGroup>) -> Result<Self> {
        if let Some(n) = groups.keys().find(|&&n| n < 0) {
            return Err(Error::Invalid(format!("homology of a finite complex lives in degrees ≥ 0, got {n}")));
        }
        Ok(FiniteComplexHomology { groups: groups.into_iter().filter(|(_, g)| !g.is_trivial()).collect() })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, FgAbelianGroup)>) -> Result<Self> {
        Self::new(pairs.into_iter().collect())
    }

    /// `H_*` of the sphere spectrum as seen by integral homology: `ℤ` in degree 0.
    pub fn sphere() -> Self {
        FiniteComplexHomology { groups: BTreeMap::from([(0, FgAbelianGroup::free(1))]) }
    }

    /// Moore spectrum `M a`: `a` in degree 0.
    pub fn moore(a: FgAbelianGroup) -> Self {
        Self::from_pairs([(0, a)]).expect("degree 0")
    }

    pub fn get(&self, n: i64) -> FgAbelianGroup {
        self.groups.get(&n).cloned().unwrap_or_else(FgAbelianGroup::trivial)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.groups.keys().copied()
    }

    pub fn direct_sum(&self, other: &FiniteComplexHomology) -> FiniteComplexHomology {
        let mut groups = self.groups.clone();
        for (n, g) in &other.groups {
            let s = self.get(*n).direct_sum(g);
            groups.insert(*n, s);
        }
        FiniteComplexHomology { groups }
    }
}

/// Degree → formal `Ext¹(ℚ, −)` value, with the window of degrees examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedExt {
    pub window: Option<(i64, i64)>,
    pub values: BTreeMap<i64, FormalExt>,
}

impl GradedExt {
    pub fn get(&self, n: i64) -> FormalExt {
        self.values.get(&n).cloned().unwrap_or_else(FormalExt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> Vec<i64> {
        self.values.keys().copied().collect()
    }
}

impl fmt::Display for GradedExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(n, v)| format!("{n}: {v} (rank {})", v.rank)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `[Σⁱ H a, X] ≅ Ext¹(a ⊗ ℚ, H_{i+1}(X))` for cyclic `a`.
pub fn lin_bracket(a: &FgAbelianGroup, x: &FiniteComplexHomology, i: i64) -> Result<FormalExt> {
    if !a.is_cyclic() {
        return Err(Error::Unsupported(format!("Lin's formula needs a cyclic coefficient group, got {a}")));
    }
    Ok(lin_bracket_factorwise(a, x, i))
}

/// The same formula applied to each cyclic summand of `a` and summed.
pub fn lin_bracket_factorwise(a: &FgAbelianGroup, x: &FiniteComplexHomology, i: i64) -> FormalExt {
    FormalExt::of_rank(rationalize_rank(a) * x.get(i + 1).free_rank())
}

fn graded(x: &FiniteComplexHomology, value: impl Fn(i64) -> FormalExt) -> GradedExt {
    let lo = x.degrees().next();
    let hi = x.degrees().last();
    let window = lo.zip(hi).map(|(lo, hi)| (lo - 1, hi - 1));
    let values = x.degrees().map(|n| (n - 1, value(n - 1))).filter(|(_, v)| !v.is_zero()).collect();
    GradedExt { window, values }
}

/// `H_t f^! X ≅ [Σᵗ Hℤ, X]`.
pub fn dualizing_homology(x: &FiniteComplexHomology) -> GradedExt {
    graded(x, |t| lin_bracket_factorwise(&FgAbelianGroup::free(1), x, t))
}

/// Dualizing homology with each nonzero source displayed as `label`, as for
/// the Moore spectrum of a ring of integers (`𝒪_K`).
pub fn dualizing_homology_labeled(x: &FiniteComplexHomology, label: &str) -> GradedExt {
    let mut g = dualizing_homology(x);
    for v in g.values.values_mut() {
        *v = v.clone().with_label(label);
    }
    g
}

pub fn is_prime(p: &BigInt) -> bool {
    let Some(p) = p.to_u64() else { return false };
    if p < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `H_t j^! X ≅ [Σᵗ H𝔽_p, X]` for `j : Spec 𝔽_p → Spec S`.
pub fn j_shriek_homology(p: &BigInt, x: &FiniteComplexHomology) -> Result<GradedExt> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let fp = FgAbelianGroup::from_orders(std::slice::from_ref(p));
    Ok(graded(x, |t| lin_bracket_factorwise(&fp, x, t)))
}

/// `i^! X ≅ H_0 f^! X ≅ Ext¹(ℚ, H_1(X))`.
pub fn i_shriek(x: &FiniteComplexHomology) -> FormalExt {
    dualizing_homology(x).get(0)
}

/// Both sides of `Hom(H_0 C, a) ≅ Ext⁰(C, a[0])` and whether they agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi0Witness {
    pub h0: FgAbelianGroup,
    pub hom_side: FgAbelianGroup,
    pub hyper_ext_side: FgAbelianGroup,
    pub agrees: bool,
}

pub fn pi0_adjunction_check(c: &ChainComplex, a: &FgAbelianGroup) -> Result<Pi0Witness> {
    let t = c.trimmed();
    if t.levels().iter().any(|&r| r > 0) && t.lowest_degree() < 0 {
        return Err(Error::Invalid("complex must be connective (degrees ≥ 0)".into()));
    }
    let h0 = c.homology_at(0);
    let hom_side = hom_fg(&h0, a);
    let hyper_ext_side = hyper_ext(c, &ChainComplex::resolution(a), 0);
    let agrees = hom_side == hyper_ext_side;
    Ok(Pi0Witness { h0, hom_side, hyper_ext_side, agrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::znf::IntMatrix;

    fn z(r: usize) -> FgAbelianGroup {
        FgAbelianGroup::free(r)
    }

    fn c(n: i64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(n)
    }

    fn h(pairs: &[(i64, FgAbelianGroup)]) -> FiniteComplexHomology {
        FiniteComplexHomology::from_pairs(pairs.iter().cloned()).unwrap()
    }

    #[test]
    fn sphere_dualizing_in_degree_minus_one() {
        let d = dualizing_homology(&FiniteComplexHomology::sphere());
        assert_eq!(d.support(), vec![-1]);
        assert_eq!(d.get(-1).to_string(), "Ext¹(ℚ,ℤ)");
        assert_eq!(d.get(-1).rank, 1);
        assert_eq!(d.to_string(), "{-1: Ext¹(ℚ,ℤ) (rank 1)}");
    }

    #[test]
    fn lin_bracket_cases() {
        let s = FiniteComplexHomology::sphere();
        assert_eq!(lin_bracket(&z(1), &s, -1).unwrap().rank, 1);
        for i in -3..3 {
            assert!(lin_bracket(&c(7), &s, i).unwrap().is_zero());
        }
        assert!(lin_bracket(&z(1), &h(&[(1, c(2))]), 0).unwrap().is_zero());
        assert!(matches!(lin_bracket(&z(2), &s, -1), Err(Error::Unsupported(_))));
        assert_eq!(lin_bracket_factorwise(&z(2), &s, -1).rank, 2);
    }

    #[test]
    fn ring_of_integers_moore_spectrum() {
        let d = dualizing_homology_labeled(&FiniteComplexHomology::moore(z(2)), "𝒪_K");
        assert_eq!(d.support(), vec![-1]);
        assert_eq!(d.get(-1).rank, 2);
        assert_eq!(d.get(-1).to_string(), "Ext¹(ℚ,𝒪_K)");
        assert!(dualizing_homology(&FiniteComplexHomology::moore(c(12))).is_zero());
    }

    #[test]
    fn j_shriek_vanishes() {
        for (p, x) in [(2, FiniteComplexHomology::sphere()), (5, h(&[(0, z(3))])), (3, h(&[(2, c(9))]))] {
            assert!(j_shriek_homology(&BigInt::from(p), &x).unwrap().is_zero());
        }
        assert!(j_shriek_homology(&BigInt::from(4), &FiniteComplexHomology::sphere()).is_err());
        assert!(j_shriek_homology(&BigInt::from(1), &FiniteComplexHomology::sphere()).is_err());
    }

    #[test]
    fn i_shriek_cases() {
        assert!(i_shriek(&FiniteComplexHomology::sphere()).is_zero());
        assert_eq!(i_shriek(&h(&[(1, z(1))])).to_string(), "Ext¹(ℚ,ℤ)");
        assert!(i_shriek(&h(&[(1, c(6))])).is_zero());
    }

    #[test]
    fn additivity() {
        let x = h(&[(0, z(1)), (2, c(4))]);
        let y = h(&[(0, z(2)), (3, z(1))]);
        let s = dualizing_homology(&x.direct_sum(&y));
        for t in -2..4 {
            assert_eq!(s.get(t).rank, dualizing_homology(&x).get(t).rank + dualizing_homology(&y).get(t).rank);
        }
    }

    #[test]
    fn negative_degrees_rejected() {
        assert!(FiniteComplexHomology::from_pairs([(-1, z(1))]).is_err());
        let parsed: std::result::Result<FiniteComplexHomology, _> =
            serde_json::from_str(r#"{"-1":{"free_rank":1,"invariant_factors":[]}}"#);
        assert!(parsed.is_err());
        let ok: FiniteComplexHomology = serde_json::from_str(r#"{"0":{"free_rank":1,"invariant_factors":[]}}"#).unwrap();
        assert_eq!(ok, FiniteComplexHomology::sphere());
    }

    #[test]
    fn pi0_examples() {
        let w = pi0_adjunction_check(&ChainComplex::concentrated(0, 1), &c(6)).unwrap();
        assert!(w.agrees);
        assert_eq!(w.hom_side, c(6));
        let moore = ChainComplex::new(0, vec![1, 1], vec![IntMatrix::from_rows(&[&[2]])]).unwrap();
        let w = pi0_adjunction_check(&moore, &c(4)).unwrap();
        assert_eq!((w.hom_side.clone(), w.hyper_ext_side.clone()), (c(2), c(2)));
        let w = pi0_adjunction_check(&ChainComplex::concentrated(1, 1), &z(1)).unwrap();
        assert!(w.agrees && w.hom_side.is_trivial());
        assert!(pi0_adjunction_check(&ChainComplex::concentrated(-1, 1), &z(1)).is_err());
    }
}
