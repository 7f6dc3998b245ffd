//! Homomorphisms `ℚ → K/𝒪_K` recorded on `1/m` for `m | M`, and their
//! dictionary with finite adeles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use super::field::{trial_factor, KElement, NumberField};
use super::finite::{inv_mod, split_off, Component, FiniteAdele};
use crate::error::{Error, Result};

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

fn prime_powers(m: u64) -> Vec<(u64, u32)> {
    trial_factor(&BigInt::from(m), u64::MAX).0
}

/// Canonical representative of `x` modulo `𝒪_K`: numerators in `[0, den)`.
fn mod_integral(x: &KElement) -> KElement {
    KElement::new(x.num.0.iter().map(|c| c.mod_floor(&x.den)).collect(), x.den.clone()).expect("den > 0")
}

/// The `p`-primary part of `x` in `K/𝒪_K`, as `c / p^e`.
fn p_part(x: &KElement, p: u64) -> KElement {
    let (e, u) = split_off(&x.den, p);
    let pe: BigInt = Pow::pow(BigInt::from(p), e);
    let uinv = inv_mod(&u, &pe).expect("unit");
    mod_integral(&KElement::new(x.num.0.iter().map(|c| c * &uinv).collect(), pe).expect("den > 0"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibleSystem {
    pub modulus: u64,
    /// `φ(1/m)` modulo `𝒪_K` for every divisor `m` of the modulus.
    pub values: BTreeMap<u64, KElement>,
}

impl CompatibleSystem {
    pub fn zero(k: &NumberField, modulus: u64) -> Self {
        let values = divisors(modulus).into_iter().map(|m| (m, KElement::zero(k.degree()))).collect();
        CompatibleSystem { modulus, values }
    }

    /// The system determined by `φ(1/M) = top`.
    pub fn from_top(modulus: u64, top: &KElement) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        let values = divisors(modulus).into_iter().map(|m| (m, mod_integral(&top.scale(&BigInt::from(modulus / m))))).collect();
        let s = CompatibleSystem { modulus, values };
        s.validate()?;
        Ok(s)
    }

    /// Divisor pairs `m | m'` must satisfy `φ(1/m) = (m'/m) φ(1/m')`, and
    /// denominators may only involve primes of the modulus.
    pub fn validate(&self) -> Result<()> {
        let ds = divisors(self.modulus);
        let keys: Vec<u64> = self.values.keys().copied().collect();
        if keys != ds {
            return Err(Error::Invalid(format!("values must be given exactly on the divisors {ds:?}")));
        }
        for v in self.values.values() {
            let stray = trial_factor(&v.den, u64::MAX).0.into_iter().find(|(p, _)| !self.modulus.is_multiple_of(*p));
            if let Some((p, _)) = stray {
                return Err(Error::Invalid(format!("value {v} has denominator prime {p} not dividing {}", self.modulus)));
            }
        }
        for &m in &ds {
            for &m2 in ds.iter().filter(|&&m2| m2 % m == 0) {
                let lhs = mod_integral(&self.values[&m]);
                let rhs = mod_integral(&self.values[&m2].scale(&BigInt::from(m2 / m)));
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "incompatible at divisor pair ({m}, {m2}): {lhs} ≠ {} · {}",
                        m2 / m,
                        self.values[&m2]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Equality modulo `𝒪_K`.
    pub fn same_as(&self, other: &CompatibleSystem) -> bool {
        self.modulus == other.modulus
            && self.values.len() == other.values.len()
            && self.values.iter().all(|(m, v)| other.values.get(m).is_some_and(|w| mod_integral(v) == mod_integral(w)))
    }
}

/// `x_p = p^j · (p-part of φ(1/p^j))` with `p^j ∥ M`, truncated to precision.
pub fn system_to_adele(k: &NumberField, s: &CompatibleSystem, precision: u32) -> Result<FiniteAdele> {
    s.validate()?;
    let mut comps = BTreeMap::new();
    for (p, j) in prime_powers(s.modulus) {
        if precision > j {
            return Err(Error::Invalid(format!("precision {precision} exceeds the depth {j} available at {p}")));
        }
        let pj = p.pow(j);
        let part = p_part(&s.values[&pj], p);
        let (e, _) = split_off(&part.den, p);
        // p^j c / p^e = c / p^{e-j} when e > j; otherwise integral
        let x = part.scale(&BigInt::from(pj));
        comps.insert(p, Component { k: e.saturating_sub(j), r: x.num.0 });
    }
    FiniteAdele::new(k, precision, comps)
}

/// `φ(1/m) = Σ_p (p-part of x_p / m)`; primes outside the support add nothing.
pub fn adele_to_system(x: &FiniteAdele, modulus: u64) -> Result<CompatibleSystem> {
    if modulus == 0 {
        return Err(Error::Invalid("modulus must be positive".into()));
    }
    for (p, j) in prime_powers(modulus) {
        if j > x.precision() {
            return Err(Error::Invalid(format!("depth {p}^{j} exceeds precision {}", x.precision())));
        }
    }
    let d = x.field().degree();
    let mut values = BTreeMap::new();
    for m in divisors(modulus) {
        let mut v = KElement::zero(d);
        for (&p, c) in x.components() {
            if !modulus.is_multiple_of(p) {
                continue;
            }
            let den = BigInt::from(m) * Pow::pow(BigInt::from(p), c.k);
            let term = KElement::new(c.r.clone(), den)?;
            v = v.add(&p_part(&term, p));
        }
        values.insert(m, mod_integral(&v));
    }
    Ok(CompatibleSystem { modulus, values })
}

/// Whether `x` and `y` agree at every prime of `modulus` to depth `v_p(modulus)`.
pub fn agree_to_depth(x: &FiniteAdele, y: &FiniteAdele, modulus: u64) -> bool {
    let Ok(diff) = x.sub(y) else { return false };
    prime_powers(modulus).into_iter().all(|(p, j)| match diff.component(p) {
        None => true,
        Some(c) => c.k == 0 && c.r.iter().all(|v| (v % Pow::pow(BigInt::from(p), j)).is_zero()),
    })
}

impl CompatibleSystem {
    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_integral())
    }

    pub fn value(&self, m: u64) -> Option<&KElement> {
        self.values.get(&m)
    }
}

impl KElement {
    pub fn reduced_mod_integers(&self) -> KElement {
        mod_integral(self)
    }

    pub fn is_one_over(&self, m: u64) -> bool {
        self.den == BigInt::from(m) && self.num.0.first().is_some_and(One::is_one) && self.num.0[1..].iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adele::finite::random_adele;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn frac(num: &[i64], den: i64) -> KElement {
        KElement::new(num.iter().map(|&v| BigInt::from(v)).collect(), BigInt::from(den)).unwrap()
    }

    #[test]
    fn zero_system_gives_zero_adele() {
        let k = NumberField::gaussian();
        let x = system_to_adele(&k, &CompatibleSystem::zero(&k, 12), 1).unwrap();
        assert!(x.is_zero());
        assert!(adele_to_system(&FiniteAdele::zero(&k, 3).unwrap(), 8).unwrap().is_zero());
    }

    #[test]
    fn inclusion_of_rationals_at_two() {
        let q = NumberField::rationals();
        let s = CompatibleSystem::from_top(8, &frac(&[1], 8)).unwrap();
        assert!(s.value(2).unwrap().is_one_over(2));
        let x = system_to_adele(&q, &s, 3).unwrap();
        assert_eq!(x.support(), vec![2]);
        assert_eq!(x.component(2), Some(&Component { k: 0, r: vec![BigInt::one()] }));
        assert!(adele_to_system(&x, 8).unwrap().same_as(&s));
    }

    #[test]
    fn third_at_three() {
        let q = NumberField::rationals();
        let s = CompatibleSystem::from_top(3, &frac(&[1], 3)).unwrap();
        let x = system_to_adele(&q, &s, 1).unwrap();
        assert_eq!(x.component(3), Some(&Component { k: 0, r: vec![BigInt::one()] }));
        // a deeper value at 1/3 needs a denominator at 3
        let s9 = CompatibleSystem::from_top(3, &frac(&[1], 9)).unwrap();
        assert_eq!(system_to_adele(&q, &s9, 1).unwrap().component(3), Some(&Component { k: 1, r: vec![BigInt::one()] }));
    }

    #[test]
    fn integral_adele_kills_the_integers() {
        let k = NumberField::gaussian();
        let x = FiniteAdele::new(&k, 3, [(2, Component { k: 0, r: vec![BigInt::from(3), BigInt::one()] })].into()).unwrap();
        let s = adele_to_system(&x, 4).unwrap();
        assert!(s.value(1).unwrap().is_integral());
        assert!(!s.value(4).unwrap().is_integral());
    }

    #[test]
    fn incompatible_pair_reported() {
        let mut s = CompatibleSystem::from_top(6, &frac(&[1], 6)).unwrap();
        s.values.insert(2, frac(&[0], 1));
        let err = s.validate().unwrap_err().to_string();
        assert!(err.contains("(2, 6)"), "{err}");
        assert!(adele_to_system(&FiniteAdele::zero(&NumberField::rationals(), 2).unwrap(), 8).is_err());
        assert!(system_to_adele(&NumberField::rationals(), &CompatibleSystem::from_top(4, &frac(&[1], 4)).unwrap(), 3).is_err());
    }

    proptest! {
        #[test]
        fn system_roundtrip(a in 0i64..1000, b in 0i64..1000, e in 0u32..3, gaussian in any::<bool>()) {
            let k = if gaussian { NumberField::gaussian() } else { NumberField::rationals() };
            let m = 2u64.pow(2) * 3 * 5;
            let top_den = m as i64 * 2i64.pow(e);
            let num: Vec<i64> = if gaussian { vec![a, b] } else { vec![a] };
            // keep denominators on the primes of the modulus
            let s = CompatibleSystem::from_top(m, &frac(&num, top_den)).unwrap();
            let x = system_to_adele(&k, &s, 1).unwrap();
            let full = CompatibleSystem::from_top(900, &frac(&num, 900 * 2i64.pow(e))).unwrap();
            prop_assert!(adele_to_system(&system_to_adele(&k, &full, 2).unwrap(), 900).unwrap().same_as(&full));
            let restricted = CompatibleSystem::from_top(30, &s.values[&30]).unwrap();
            prop_assert!(adele_to_system(&x, 30).unwrap().same_as(&restricted));
        }

        #[test]
        fn adele_roundtrip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = NumberField::gaussian();
            let x = random_adele(&mut rng, &k, 2, &[2, 3, 5], 2).unwrap();
            let m = 4 * 9 * 25;
            let s = adele_to_system(&x, m).unwrap();
            s.validate().unwrap();
            let y = system_to_adele(&k, &s, 2).unwrap();
            prop_assert!(agree_to_depth(&x, &y, m));
            prop_assert!(adele_to_system(&y, m).unwrap().same_as(&s));
        }
    }
}
