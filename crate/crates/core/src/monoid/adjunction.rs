//! Exhaustive check of the adjunction `α ⊣ α*` between pointed sets and
//! abelian groups on finite instances.
//!
//! For a pointed set `s` and a finite abelian group `a`, a homomorphism
//! `α(s) = ℤ^(|s|-1) → a` is determined by the images of the free generators,
//! and a pointed map `s → α*(a)` is a choice of element for every
//! non-basepoint. The bijection sends a homomorphism to its restriction along
//! the unit `s → α*α(s)`; naturality is checked against every pointed
//! endomap of `s` and every group endomorphism of `a`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::pointed::{forget_to_pointed, pointed_maps, PointedMap, PointedSet};
use crate::error::{Error, Result};
use crate::znf::FgAbelianGroup;

/// Explicit size caps; configuration, not constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionCaps {
    pub max_set_size: usize,
    pub max_group_order: usize,
}

impl Default for AdjunctionCaps {
    fn default() -> Self {
        AdjunctionCaps { max_set_size: 5, max_group_order: 8 }
    }
}

/// Finite abelian group with elements indexed by their lexicographic
/// position as residue vectors.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    moduli: Vec<u64>,
    order: usize,
}

impl FiniteGroup {
    pub fn new(a: &FgAbelianGroup, cap: usize) -> Result<Self> {
        let order = a.elements(cap)?.len();
        let moduli = a.invariant_factors().iter().map(|d| d.to_u64().unwrap()).collect();
        Ok(FiniteGroup { moduli, order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn residues(&self, mut idx: usize) -> Vec<u64> {
        let mut r = vec![0; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            r[i] = idx as u64 % self.moduli[i];
            idx /= self.moduli[i] as usize;
        }
        r
    }

    pub fn index(&self, r: &[u64]) -> usize {
        r.iter().zip(&self.moduli).fold(0, |acc, (&x, &m)| acc * m as usize + (x % m) as usize)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.residues(x), self.residues(y));
        let s: Vec<u64> = a.iter().zip(&b).zip(&self.moduli).map(|((p, q), m)| (p + q) % m).collect();
        self.index(&s)
    }

    /// `k · x` for an integer `k` (possibly negative).
    pub fn scale(&self, k: i64, x: usize) -> usize {
        let a = self.residues(x);
        let s: Vec<u64> = a.iter().zip(&self.moduli).map(|(&p, &m)| ((k.rem_euclid(m as i64) as u64) * p) % m).collect();
        self.index(&s)
    }

    /// Order of the `i`-th canonical generator.
    fn generator_order(&self, i: usize) -> u64 {
        self.moduli[i]
    }

    #[cfg(test)]
    fn generator(&self, i: usize) -> usize {
        let mut r = vec![0; self.moduli.len()];
        r[i] = 1;
        self.index(&r)
    }

    /// Every endomorphism, as the table of images of all elements.
    pub fn endomorphisms(&self) -> Vec<Vec<usize>> {
        let k = self.moduli.len();
        // admissible images of each generator: elements killed by its order
        let choices: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                let d = self.generator_order(i) as i64;
                (0..self.order).filter(|&x| self.scale(d, x) == 0).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; k];
        loop {
            let images: Vec<usize> = (0..k).map(|i| choices[i][pick[i]]).collect();
            let table = (0..self.order)
                .map(|x| {
                    let r = self.residues(x);
                    (0..k).fold(0, |acc, i| self.add(acc, self.scale(r[i] as i64, images[i])))
                })
                .collect();
            out.push(table);
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    #[cfg(test)]
    fn generators(&self) -> Vec<usize> {
        (0..self.moduli.len()).map(|i| self.generator(i)).collect()
    }
}

/// Homomorphism `ℤ^k → a`, recorded by the images of the free generators.
pub type FreeHom = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionWitness {
    pub set_size: usize,
    pub group: FgAbelianGroup,
    pub hom_ab_count: usize,
    pub hom_pointed_count: usize,
    /// `(φ, Φ(φ))` for every homomorphism `φ : α(s) → a`.
    pub bijection: Vec<(FreeHom, Vec<usize>)>,
    pub naturality_squares_in_set: usize,
    pub naturality_squares_in_group: usize,
}

fn all_free_homs(k: usize, g: &FiniteGroup) -> Vec<FreeHom> {
    let n = g.order();
    (0..n.pow(k as u32))
        .map(|mut code| {
            let mut v = vec![0; k];
            for slot in v.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            v
        })
        .collect()
}

/// `Φ(φ)`: restriction of `φ` along the unit `s → α*α(s)`.
fn restrict(phi: &FreeHom) -> Vec<usize> {
    std::iter::once(0).chain(phi.iter().copied()).collect()
}

/// `Ψ(f)`: the unique homomorphism extending a pointed map.
fn extend(f: &[usize]) -> FreeHom {
    f[1..].to_vec()
}

/// `φ ∘ α(h)` for a pointed map `h : s → s`, computed linearly: `α(h)` sends
/// generator `e_i` to `e_{h(i)}`, or to `0` when `h(i)` is the basepoint.
fn precompose(phi: &FreeHom, h: &PointedMap, g: &FiniteGroup) -> FreeHom {
    let k = phi.len();
    (1..=k)
        .map(|i| {
            // column i of the matrix of α(h)
            let column: Vec<i64> = (1..=k).map(|j| i64::from(h.apply(i) == j)).collect();
            column.iter().zip(phi).fold(0, |acc, (&c, &img)| g.add(acc, g.scale(c, img)))
        })
        .collect()
}

/// Verifies the natural bijection `Hom_Ab(α(s), a) ≅ Hom_pSets(s, α*(a))`.
pub fn check_alpha_adjunction(s: &PointedSet, a: &FgAbelianGroup, caps: AdjunctionCaps) -> Result<AdjunctionWitness> {
    if s.size() > caps.max_set_size {
        return Err(Error::CapExceeded(format!("|s| = {} exceeds cap {}", s.size(), caps.max_set_size)));
    }
    let g = FiniteGroup::new(a, caps.max_group_order)?;
    let target = forget_to_pointed(a, caps.max_group_order)?;
    let k = s.size() - 1;

    let homs = all_free_homs(k, &g);
    let pointed = pointed_maps(s, &target);

    let mut hit = vec![false; pointed.len()];
    let mut bijection = Vec::with_capacity(homs.len());
    for phi in &homs {
        let f = PointedMap::new(s, &target, restrict(phi))?;
        if extend(&f.images) != *phi {
            return Err(Error::Invalid(format!("Ψ(Φ(φ)) ≠ φ for φ = {phi:?}")));
        }
        let pos = pointed.iter().position(|p| *p == f).ok_or_else(|| Error::Invalid("Φ(φ) is not a pointed map".into()))?;
        if std::mem::replace(&mut hit[pos], true) {
            return Err(Error::Invalid(format!("Φ is not injective at φ = {phi:?}")));
        }
        bijection.push((phi.clone(), f.images));
    }
    if let Some(miss) = hit.iter().position(|h| !h) {
        return Err(Error::Invalid(format!("pointed map {:?} has no preimage", pointed[miss].images)));
    }
    for f in &pointed {
        if restrict(&extend(&f.images)) != f.images {
            return Err(Error::Invalid(format!("Φ(Ψ(f)) ≠ f for f = {:?}", f.images)));
        }
    }

    // naturality in s: Φ(φ ∘ α(h)) = Φ(φ) ∘ h
    let endo_s = pointed_maps(s, s);
    let mut squares_s = 0;
    for (phi, f) in &bijection {
        let f = PointedMap { target_size: target.size(), images: f.clone() };
        for h in &endo_s {
            let lhs = restrict(&precompose(phi, h, &g));
            let rhs = f.after(h).images;
            if lhs != rhs {
                return Err(Error::Invalid(format!("naturality in s fails for φ = {phi:?}, h = {:?}", h.images)));
            }
            squares_s += 1;
        }
    }

    // naturality in a: Φ(t ∘ φ) = α*(t) ∘ Φ(φ)
    let mut squares_a = 0;
    for t in g.endomorphisms() {
        let t_map = PointedMap { target_size: target.size(), images: t.clone() };
        for (phi, f) in &bijection {
            let composed: FreeHom = phi.iter().map(|&x| t[x]).collect();
            let lhs = restrict(&composed);
            let rhs = t_map.after(&PointedMap { target_size: target.size(), images: f.clone() }).images;
            if lhs != rhs {
                return Err(Error::Invalid(format!("naturality in a fails for φ = {phi:?}")));
            }
            squares_a += 1;
        }
    }

    Ok(AdjunctionWitness {
        set_size: s.size(),
        group: a.clone(),
        hom_ab_count: homs.len(),
        hom_pointed_count: pointed.len(),
        bijection,
        naturality_squares_in_set: squares_s,
        naturality_squares_in_group: squares_a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(n)
    }

    #[test]
    fn one_point_set_gives_singletons() {
        let w = check_alpha_adjunction(&PointedSet::point(), &z(6), AdjunctionCaps::default()).unwrap();
        assert_eq!((w.hom_ab_count, w.hom_pointed_count), (1, 1));
    }

    #[test]
    fn three_point_set_into_z2() {
        let s = PointedSet::new(3).unwrap();
        let w = check_alpha_adjunction(&s, &z(2), AdjunctionCaps::default()).unwrap();
        assert_eq!((w.hom_ab_count, w.hom_pointed_count), (4, 4));
    }

    #[test]
    fn four_point_set_into_z6() {
        let s = PointedSet::new(4).unwrap();
        let w = check_alpha_adjunction(&s, &z(6), AdjunctionCaps::default()).unwrap();
        assert_eq!((w.hom_ab_count, w.hom_pointed_count), (216, 216));
        assert_eq!(w.naturality_squares_in_set, 216 * 64);
        assert_eq!(w.naturality_squares_in_group, 216 * 6);
    }

    #[test]
    fn caps_are_enforced() {
        let s = PointedSet::new(6).unwrap();
        assert!(matches!(check_alpha_adjunction(&s, &z(2), AdjunctionCaps::default()), Err(Error::CapExceeded(_))));
        let s = PointedSet::new(2).unwrap();
        assert!(check_alpha_adjunction(&s, &z(9), AdjunctionCaps::default()).is_err());
        let big = AdjunctionCaps { max_set_size: 5, max_group_order: 9 };
        assert!(check_alpha_adjunction(&s, &z(9), big).is_ok());
    }

    #[test]
    fn klein_four_endomorphisms() {
        let v = z(2).direct_sum(&z(2));
        let g = FiniteGroup::new(&v, 8).unwrap();
        assert_eq!(g.endomorphisms().len(), 16);
        assert_eq!(g.generators(), vec![2, 1]);
        let z6 = FiniteGroup::new(&z(6), 8).unwrap();
        assert_eq!(z6.endomorphisms().len(), 6);
        assert_eq!(z6.scale(-1, 1), 5);
    }
}
