use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::znf::FgAbelianGroup;

/// Finite pointed set `{0, 1, …, size-1}` with basepoint `0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedSet {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl PointedSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invalid("a pointed set has at least its basepoint".into()));
        }
        Ok(PointedSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut s = Self::new(labels.len())?;
        s.labels = Some(labels);
        Ok(s)
    }

    /// `S⁰ = {*, 1}`, the unit for the smash product.
    pub fn s0() -> Self {
        PointedSet { size: 2, labels: None }
    }

    pub fn point() -> Self {
        PointedSet { size: 1, labels: None }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None if i == 0 => "*".into(),
            None => i.to_string(),
        }
    }
}

/// Basepoint-preserving map between finite pointed sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointedMap {
    pub target_size: usize,
    pub images: Vec<usize>,
}

impl PointedMap {
    pub fn new(source: &PointedSet, target: &PointedSet, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.size() {
            return Err(Error::Dimension("map must assign an image to every element".into()));
        }
        if images[0] != 0 {
            return Err(Error::Invalid("map does not preserve the basepoint".into()));
        }
        if images.iter().any(|&i| i >= target.size()) {
            return Err(Error::Invalid("image outside the target".into()));
        }
        Ok(PointedMap { target_size: target.size(), images })
    }

    pub fn identity(x: &PointedSet) -> Self {
        PointedMap { target_size: x.size(), images: (0..x.size()).collect() }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PointedMap) -> PointedMap {
        PointedMap { target_size: self.target_size, images: first.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn is_bijective(&self) -> bool {
        if self.images.len() != self.target_size {
            return false;
        }
        let mut seen = vec![false; self.target_size];
        self.images.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }
}

/// All basepoint-preserving maps `x → y`, in lexicographic order of images.
pub fn pointed_maps(x: &PointedSet, y: &PointedSet) -> Vec<PointedMap> {
    let k = x.size() - 1;
    let total = y.size().pow(k as u32);
    (0..total)
        .map(|mut code| {
            let mut images = vec![0; x.size()];
            for slot in images.iter_mut().skip(1).rev() {
                *slot = code % y.size();
                code /= y.size();
            }
            PointedMap { target_size: y.size(), images }
        })
        .collect()
}

/// Index of `a ∧ b` inside `x ∧ y`.
pub fn smash_index(y: &PointedSet, a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        1 + (a - 1) * (y.size() - 1) + (b - 1)
    }
}

/// `x ∧ y = (x × y)/(x ∨ y)`; non-basepoint elements are pairs `(a, b)` with
/// `a, b ≠ *`, ordered lexicographically.
pub fn smash(x: &PointedSet, y: &PointedSet) -> PointedSet {
    let mut labels = vec!["*".to_string()];
    for a in 1..x.size() {
        for b in 1..y.size() {
            labels.push(format!("({},{})", x.label(a), y.label(b)));
        }
    }
    PointedSet { size: labels.len(), labels: Some(labels) }
}

/// One-point union; `x`'s elements keep their indices, `y`'s non-basepoint
/// element `b` lands at `|x| - 1 + b`.
pub fn wedge(x: &PointedSet, y: &PointedSet) -> PointedSet {
    let mut labels = vec!["*".to_string()];
    labels.extend((1..x.size()).map(|a| format!("l:{}", x.label(a))));
    labels.extend((1..y.size()).map(|b| format!("r:{}", y.label(b))));
    PointedSet { size: labels.len(), labels: Some(labels) }
}

/// Symmetry `x ∧ y → y ∧ x`.
pub fn smash_swap(x: &PointedSet, y: &PointedSet) -> PointedMap {
    let mut images = vec![0; smash(x, y).size()];
    for a in 1..x.size() {
        for b in 1..y.size() {
            images[smash_index(y, a, b)] = smash_index(x, b, a);
        }
    }
    PointedMap { target_size: images.len(), images }
}

/// Associator `(x ∧ y) ∧ z → x ∧ (y ∧ z)`.
pub fn smash_assoc(x: &PointedSet, y: &PointedSet, z: &PointedSet) -> PointedMap {
    let xy = smash(x, y);
    let yz = smash(y, z);
    let mut images = vec![0; smash(&xy, z).size()];
    for a in 1..x.size() {
        for b in 1..y.size() {
            for c in 1..z.size() {
                images[smash_index(z, smash_index(y, a, b), c)] = smash_index(&yz, a, smash_index(z, b, c));
            }
        }
    }
    PointedMap { target_size: smash(x, &yz).size(), images }
}

/// Left unitor `S⁰ ∧ x → x`.
pub fn smash_unitor(x: &PointedSet) -> PointedMap {
    let mut images = vec![0; x.size()];
    for a in 1..x.size() {
        images[smash_index(x, 1, a)] = a;
    }
    PointedMap { target_size: x.size(), images }
}

/// The functor `α`: `ℤ^(|x|-1)`, the free abelian group on `x` with the
/// basepoint set to zero.
pub fn free_abelian(x: &PointedSet) -> FgAbelianGroup {
    FgAbelianGroup::free(x.size() - 1)
}

/// The forgetful functor `α*` on a finite abelian group: its elements, listed
/// lexicographically as residue vectors, with the identity as basepoint.
pub fn forget_to_pointed(a: &FgAbelianGroup, cap: usize) -> Result<PointedSet> {
    if !a.is_finite() {
        return Err(Error::Unsupported(format!("{a} is infinite; its underlying pointed set is not finite")));
    }
    let elems = a.elements(cap)?;
    let labels = elems
        .iter()
        .map(|e| {
            let parts: Vec<String> = e.iter().map(u64::to_string).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    PointedSet::with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(n: usize) -> PointedSet {
        PointedSet::new(n).unwrap()
    }

    #[test]
    fn smash_sizes() {
        assert_eq!(smash(&ps(1), &ps(5)).size(), 1);
        assert_eq!(smash(&ps(3), &ps(4)).size(), 7);
        assert_eq!(smash(&PointedSet::s0(), &PointedSet::s0()).size(), 2);
        assert_eq!(smash(&ps(3), &ps(2)).label(2), "(2,1)");
    }

    #[test]
    fn wedge_sizes() {
        assert_eq!(wedge(&ps(1), &ps(4)).size(), 4);
        assert_eq!(wedge(&ps(3), &ps(4)).size(), 6);
    }

    #[test]
    fn zero_size_rejected() {
        assert!(PointedSet::new(0).is_err());
    }

    #[test]
    fn free_abelian_ranks() {
        assert!(free_abelian(&ps(1)).is_trivial());
        assert_eq!(free_abelian(&ps(4)), FgAbelianGroup::free(3));
    }

    #[test]
    fn forgetful_sizes() {
        assert_eq!(forget_to_pointed(&FgAbelianGroup::trivial(), 64).unwrap().size(), 1);
        assert_eq!(forget_to_pointed(&FgAbelianGroup::cyclic(6), 64).unwrap().size(), 6);
        let k = FgAbelianGroup::cyclic(2).direct_sum(&FgAbelianGroup::cyclic(2));
        let p = forget_to_pointed(&k, 64).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.label(0), "(0,0)");
        assert!(forget_to_pointed(&FgAbelianGroup::free(1), 64).is_err());
    }

    #[test]
    fn pointed_map_checks() {
        assert!(PointedMap::new(&ps(3), &ps(2), vec![1, 0, 0]).is_err());
        assert!(PointedMap::new(&ps(3), &ps(2), vec![0, 2, 0]).is_err());
        assert_eq!(pointed_maps(&ps(3), &ps(2)).len(), 4);
        assert!(smash_unitor(&ps(4)).is_bijective());
    }
}
