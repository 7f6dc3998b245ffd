//! Ideal class groups of monogenic fields by Minkowski-bound enumeration.
//!
//! Generators are the prime ideals of norm at most the bound; relations come
//! from the factorization of rational primes and of small elements. The
//! quotient found this way surjects onto the class group, and every nonzero
//! class is then checked to be non-principal before the answer is returned.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::field::{factor_prime, is_prime_u64, NumberField, OkElement};
use crate::error::{Error, Result};
use crate::znf::{cokernel_structure, smith_normal_form, FgAbelianGroup, IntMatrix, Lattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassGroupConfig {
    /// Coordinates of searched elements lie in `[-box_radius, box_radius]`.
    pub box_radius: i64,
    /// Largest candidate group whose classes are checked one by one.
    pub element_cap: usize,
}

impl Default for ClassGroupConfig {
    fn default() -> Self {
        ClassGroupConfig { box_radius: 8, element_cap: 4096 }
    }
}

#[derive(Debug, Clone)]
pub struct PrimeIdeal {
    pub p: u64,
    pub poly: Vec<u64>,
    pub e: usize,
    pub f: usize,
    pub lattice: Lattice,
}

impl PrimeIdeal {
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f as u32)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassGroupReport {
    pub group: FgAbelianGroup,
    pub minkowski_bound: f64,
    pub bound: u64,
    /// `(p, factor of f mod p)` for each generator.
    pub generators: Vec<(u64, Vec<u64>)>,
    pub relations: usize,
}

fn ideal_lattice(k: &NumberField, gens: &[OkElement]) -> Lattice {
    let d = k.degree();
    let vecs = gens.iter().flat_map(|g| (0..d).map(move |i| k.mul(g, &k.theta_power(i)).0));
    Lattice::span(d, vecs.collect::<Vec<_>>())
}

fn ideal_mul(k: &NumberField, a: &Lattice, b: &Lattice) -> Lattice {
    let d = k.degree();
    let mut vecs = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            vecs.push(k.mul(&OkElement(x.clone()), &OkElement(y.clone())).0);
        }
    }
    Lattice::span(d, vecs)
}

fn unit_ideal(k: &NumberField) -> Lattice {
    Lattice::full(k.degree())
}

fn prime_ideals_up_to(k: &NumberField, bound: u64) -> Result<Vec<PrimeIdeal>> {
    let mut out = Vec::new();
    for p in (2..=bound).filter(|&p| is_prime_u64(p)) {
        for pf in factor_prime(k, p)?.factors {
            if p.checked_pow(pf.f as u32).is_none_or(|n| n > bound) {
                continue;
            }
            let g = k.element(&pf.poly.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
            let lattice = ideal_lattice(k, &[k.element(&[BigInt::from(p)]), g]);
            out.push(PrimeIdeal { p, poly: pf.poly, e: pf.e, f: pf.f, lattice });
        }
    }
    Ok(out)
}

struct Valuator<'a> {
    k: &'a NumberField,
    powers: Vec<Vec<Lattice>>,
}

impl Valuator<'_> {
    /// `v_P(α)`, trying exponents up to `max`.
    fn valuation(&mut self, i: usize, base: &[PrimeIdeal], alpha: &OkElement, max: u32) -> u32 {
        let mut v = 0;
        while v < max {
            if self.powers[i].len() <= v as usize + 1 {
                let next = ideal_mul(self.k, self.powers[i].last().unwrap(), &base[i].lattice);
                self.powers[i].push(next);
            }
            if !self.powers[i][v as usize + 1].contains(&alpha.0) {
                break;
            }
            v += 1;
        }
        v
    }
}

/// Exponent vector of `(α)` over the base, if `(α)` factors within it.
fn factor_element(val: &mut Valuator<'_>, base: &[PrimeIdeal], alpha: &OkElement) -> Option<Vec<i64>> {
    let norm = val.k.norm(alpha).abs();
    if norm.is_zero() {
        return None;
    }
    let mut rest = norm.clone();
    let mut exps = vec![0i64; base.len()];
    let mut primes: Vec<u64> = base.iter().map(|q| q.p).collect();
    primes.dedup();
    for p in primes {
        let mut vp = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            vp += 1;
        }
        if vp == 0 {
            continue;
        }
        let mut covered = 0u32;
        for (i, q) in base.iter().enumerate().filter(|(_, q)| q.p == p) {
            let v = val.valuation(i, base, alpha, vp / q.f as u32);
            exps[i] = i64::from(v);
            covered += v * q.f as u32;
        }
        if covered != vp {
            return None;
        }
    }
    rest.is_one().then_some(exps)
}

fn box_elements(d: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * r + 1) as usize;
    let total = side.pow(d as u32);
    (0..total).map(move |mut n| {
        (0..d)
            .map(|_| {
                let c = (n % side) as i64 - r;
                n /= side;
                c
            })
            .collect()
    })
}

/// Is the ideal `j` principal? `Some(false)` only when proven.
fn is_principal(k: &NumberField, j: &Lattice, config: &ClassGroupConfig) -> Option<bool> {
    let norm = j.index().expect("full-rank ideal");
    let basis: Vec<OkElement> = j.basis().iter().map(|b| OkElement(b.clone())).collect();
    let combine = |coeffs: &[i64]| {
        let mut v = vec![BigInt::zero(); k.degree()];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (vi, bi) in v.iter_mut().zip(&b.0) {
                *vi += bi * c;
            }
        }
        OkElement(v)
    };
    if k.is_imaginary_quadratic() {
        // N(x b1 + y b2) = a x² + b x y + c y², positive definite
        let a = k.norm(&basis[0]);
        let c = k.norm(&basis[1]);
        let b = k.norm(&combine(&[1, 1])) - &a - &c;
        let disc = (&b * &b - BigInt::from(4) * &a * &c).abs();
        let ymax = (BigInt::from(4) * &a * &norm).to_f64()? / disc.to_f64()?;
        let ymax = ymax.sqrt().floor() as i64 + 1;
        let xmax = ((BigInt::from(4) * &c * &norm).to_f64()? / disc.to_f64()?).sqrt().floor() as i64 + 1;
        for y in -ymax..=ymax {
            for x in -xmax..=xmax {
                let n = &a * x * x + &b * x * y + &c * y * y;
                if n == norm {
                    return Some(true);
                }
            }
        }
        return Some(false);
    }
    let found = box_elements(k.degree(), config.box_radius).any(|coeffs| k.norm(&combine(&coeffs)).abs() == norm);
    found.then_some(true)
}

pub fn class_group(k: &NumberField, bound: u64) -> Result<FgAbelianGroup> {
    Ok(class_group_report(k, bound, &ClassGroupConfig::default())?.group)
}

pub fn class_group_report(k: &NumberField, bound: u64, config: &ClassGroupConfig) -> Result<ClassGroupReport> {
    let mk = k.minkowski_bound();
    if (bound as f64) < mk.floor() {
        return Err(Error::Invalid(format!("bound {bound} is below the Minkowski bound {mk:.4}")));
    }
    k.check_maximal()?;
    let base = prime_ideals_up_to(k, bound)?;
    let n = base.len();
    let generators = base.iter().map(|q| (q.p, q.poly.clone())).collect();
    if n == 0 {
        return Ok(ClassGroupReport { group: FgAbelianGroup::trivial(), minkowski_bound: mk, bound, generators, relations: 0 });
    }
    let mut relations: Vec<Vec<i64>> = Vec::new();
    // (p) = ∏ P^e when every prime over p is in the base
    let mut by_p: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, q) in base.iter().enumerate() {
        by_p.entry(q.p).or_default().push(i);
    }
    for idx in by_p.values() {
        if idx.iter().map(|&i| base[i].e * base[i].f).sum::<usize>() == k.degree() {
            let mut rel = vec![0i64; n];
            for &i in idx {
                rel[i] = base[i].e as i64;
            }
            relations.push(rel);
        }
    }
    let mut val = Valuator { k, powers: base.iter().map(|q| vec![unit_ideal(k), q.lattice.clone()]).collect() };
    for coeffs in box_elements(k.degree(), config.box_radius) {
        let alpha = k.element_i64(&coeffs);
        if let Some(rel) = factor_element(&mut val, &base, &alpha) {
            if rel.iter().any(|&e| e != 0) {
                relations.push(rel);
            }
        }
    }
    loop {
        let mut m = IntMatrix::zeros(n, relations.len().max(1));
        for (c, rel) in relations.iter().enumerate() {
            for (r, &e) in rel.iter().enumerate() {
                m.set(r, c, BigInt::from(e));
            }
        }
        let found = cokernel_structure(&m);
        let group = FgAbelianGroup::new(found.free_rank(), found.invariant_factors().to_vec())?;
        if !group.is_finite() {
            return Err(Error::Inconclusive(format!(
                "relations from the box of radius {} leave {group}; enlarge the box",
                config.box_radius
            )));
        }
        let order = group.order().expect("finite");
        if order.is_one() {
            return Ok(ClassGroupReport { group, minkowski_bound: mk, bound, generators, relations: relations.len() });
        }
        match first_principal_class(k, &base, &m, &group, config)? {
            None => return Ok(ClassGroupReport { group, minkowski_bound: mk, bound, generators, relations: relations.len() }),
            Some(rel) => relations.push(rel),
        }
    }
}

/// Looks for a nonzero class of the candidate group with a principal
/// representative; returns its exponent vector as a new relation.
fn first_principal_class(
    k: &NumberField,
    base: &[PrimeIdeal],
    relations: &IntMatrix,
    group: &FgAbelianGroup,
    config: &ClassGroupConfig,
) -> Result<Option<Vec<i64>>> {
    let order = group.order().expect("finite").to_usize().unwrap_or(usize::MAX);
    if order > config.element_cap {
        return Err(Error::CapExceeded(format!("candidate class group of order {order} exceeds {}", config.element_cap)));
    }
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let n = base.len();
    let modulus = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);
    let class_of = |a: &[i64]| -> Vec<BigInt> {
        let v = snf.u.mul_vec(&a.iter().map(|&e| BigInt::from(e)).collect::<Vec<_>>());
        v.into_iter()
            .enumerate()
            .map(|(i, x)| {
                let m = modulus(i);
                if m.is_zero() {
                    x
                } else {
                    x.mod_floor(&m)
                }
            })
            .collect()
    };
    let exponent = group.invariant_factors().last().and_then(|d| d.to_i64()).unwrap_or(1);
    // smallest representative of every class among exponents in [0, exponent)
    let mut reps: BTreeMap<Vec<BigInt>, Vec<i64>> = BTreeMap::new();
    let mut a = vec![0i64; n];
    'outer: loop {
        let key = class_of(&a);
        reps.entry(key).or_insert_with(|| a.clone());
        if reps.len() == order {
            break;
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'outer;
            }
            a[i] += 1;
            if a[i] < exponent {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
    let zero = class_of(&vec![0; n]);
    for (key, a) in reps {
        if key == zero {
            continue;
        }
        let mut j = unit_ideal(k);
        for (i, &e) in a.iter().enumerate() {
            for _ in 0..e {
                j = ideal_mul(k, &j, &base[i].lattice);
            }
        }
        match is_principal(k, &j, config) {
            Some(true) => return Ok(Some(a)),
            Some(false) => {}
            None => {
                return Err(Error::Inconclusive(format!(
                    "cannot decide whether the class with exponents {a:?} is principal within radius {}",
                    config.box_radius
                )))
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> NumberField {
        NumberField::from_i64(c).unwrap()
    }

    #[test]
    fn gaussian_is_trivial() {
        assert!(class_group(&NumberField::gaussian(), 2).unwrap().is_trivial());
        assert!(class_group(&NumberField::rationals(), 1).unwrap().is_trivial());
    }

    #[test]
    fn sqrt_minus_five() {
        let k = field(&[5, 0, 1]);
        assert_eq!(class_group(&k, 3).unwrap(), FgAbelianGroup::cyclic(2));
        assert_eq!(class_group(&k, 6).unwrap(), FgAbelianGroup::cyclic(2));
        assert!(class_group(&k, 1).is_err());
    }

    #[test]
    fn imaginary_quadratic_table() {
        // x² + n with ℤ[√-n] maximal: class numbers of discriminant -4n
        for (n, h) in [(1, 1), (2, 1), (5, 2), (6, 2), (10, 2), (13, 2), (14, 4), (17, 4), (21, 4), (26, 6), (29, 6), (30, 4)] {
            let k = field(&[n, 0, 1]);
            let b = k.minkowski_bound().ceil() as u64;
            let g = class_group(&k, b).unwrap();
            assert_eq!(g.order(), Some(BigInt::from(h)), "x²+{n}: {g}");
        }
        assert_eq!(class_group(&field(&[14, 0, 1]), 5).unwrap(), FgAbelianGroup::cyclic(4));
        assert_eq!(class_group(&field(&[21, 0, 1]), 6).unwrap().invariant_factors().len(), 2);
    }

    #[test]
    fn real_and_cubic_trivial() {
        assert!(class_group(&field(&[-2, 0, 1]), 2).unwrap().is_trivial());
        assert!(class_group(&field(&[-2, 0, 0, 1]), 3).unwrap().is_trivial());
    }

    #[test]
    fn prime_ideal_norms() {
        let k = field(&[5, 0, 1]);
        let base = prime_ideals_up_to(&k, 7).unwrap();
        let norms: Vec<u64> = base.iter().map(PrimeIdeal::norm).collect();
        assert_eq!(norms, vec![2, 3, 3, 5, 7, 7]);
        for q in &base {
            assert_eq!(q.lattice.index(), Some(BigInt::from(q.norm())));
        }
    }
}
