//! Finite adeles of a monogenic field, truncated at a working precision.
//!
//! A component at `p` is `p^{-k} r` with `r ∈ 𝒪_K / p^{N+k}`, so it is known
//! modulo `p^N 𝒪_{K,p}`. Primes outside the support carry an integral
//! component that is not tracked.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::field::{is_prime_u64, KElement, NumberField};
use crate::error::{Error, Result};
use crate::wire::{self, DecimalInt};

pub const DEFAULT_DENOMINATOR_CAP: u32 = 32;

pub(crate) fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `(v_p(n), n / p^{v_p(n)})`.
pub(crate) fn split_off(n: &BigInt, p: u64) -> (u32, BigInt) {
    let mut n = n.clone();
    let mut e = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        e += 1;
    }
    (e, n)
}

fn pow(p: u64, e: u32) -> BigInt {
    Pow::pow(BigInt::from(p), e)
}

/// Chinese remainder for pairwise coprime moduli: the residue in `[0, ∏ m)`.
pub(crate) fn crt(pairs: &[(BigInt, BigInt)]) -> BigInt {
    let mut acc = BigInt::zero();
    let mut m = BigInt::one();
    for (r, n) in pairs {
        // acc + m t ≡ r mod n
        let inv = inv_mod(&m, n).expect("coprime moduli");
        let t = ((r - &acc) * inv).mod_floor(n);
        acc += &m * t;
        m *= n;
    }
    acc.mod_floor(&m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub k: u32,
    pub r: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAdele {
    field: NumberField,
    precision: u32,
    cap: u32,
    components: BTreeMap<u64, Component>,
}

impl FiniteAdele {
    pub fn zero(field: &NumberField, precision: u32) -> Result<Self> {
        Self::new(field, precision, BTreeMap::new())
    }

    pub fn new(field: &NumberField, precision: u32, components: BTreeMap<u64, Component>) -> Result<Self> {
        Self::with_cap(field, precision, DEFAULT_DENOMINATOR_CAP, components)
    }

    pub fn with_cap(field: &NumberField, precision: u32, cap: u32, components: BTreeMap<u64, Component>) -> Result<Self> {
        if precision == 0 {
            return Err(Error::Invalid("precision must be at least 1".into()));
        }
        let mut x = FiniteAdele { field: field.clone(), precision, cap, components: BTreeMap::new() };
        for (p, c) in components {
            if !is_prime_u64(p) {
                return Err(Error::Invalid(format!("{p} is not prime")));
            }
            if c.r.len() != field.degree() {
                return Err(Error::Dimension(format!(
                    "component at {p} has {} coordinates, expected {}",
                    c.r.len(),
                    field.degree()
                )));
            }
            x.set(p, c)?;
        }
        Ok(x)
    }

    /// Stores `p^{-k} r` in canonical form.
    fn set(&mut self, p: u64, Component { mut k, r }: Component) -> Result<()> {
        let mut r: Vec<BigInt> = {
            let m = pow(p, self.precision + k);
            r.iter().map(|c| c.mod_floor(&m)).collect()
        };
        while k > 0 && r.iter().all(|c| (c % p).is_zero()) {
            r.iter_mut().for_each(|c| *c /= p);
            k -= 1;
        }
        if k > self.cap {
            return Err(Error::CapExceeded(format!("denominator {p}^{k} exceeds the cap {p}^{}", self.cap)));
        }
        if k == 0 && r.iter().all(Zero::is_zero) {
            self.components.remove(&p);
        } else {
            self.components.insert(p, Component { k, r });
        }
        Ok(())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn set_cap(&mut self, cap: u32) -> Result<()> {
        if let Some((p, c)) = self.components.iter().find(|(_, c)| c.k > cap) {
            return Err(Error::CapExceeded(format!("component at {p} has k = {} above {cap}", c.k)));
        }
        self.cap = cap;
        Ok(())
    }

    pub fn support(&self) -> Vec<u64> {
        self.components.keys().copied().collect()
    }

    pub fn components(&self) -> &BTreeMap<u64, Component> {
        &self.components
    }

    pub fn component(&self, p: u64) -> Option<&Component> {
        self.components.get(&p)
    }

    pub fn is_integral(&self) -> bool {
        self.components.values().all(|c| c.k == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// `∏ p^{k_p}`.
    pub fn denominator(&self) -> BigInt {
        self.components.iter().map(|(&p, c)| pow(p, c.k)).product()
    }

    fn d(&self) -> usize {
        self.field.degree()
    }

    /// Image of a global element on the primes of its denominator.
    pub fn global(field: &NumberField, precision: u32, lambda: &KElement) -> Result<Self> {
        let mut x = Self::zero(field, precision)?;
        x.add_global(lambda, &BigInt::one())?;
        Ok(x)
    }

    /// `self + s λ` on the tracked primes and the primes of `den(λ)`.
    fn add_global(&mut self, lambda: &KElement, s: &BigInt) -> Result<()> {
        let mut primes: Vec<u64> = super::field::trial_factor(&lambda.den, u64::MAX).0.into_iter().map(|(p, _)| p).collect();
        primes.extend(self.components.keys());
        primes.sort_unstable();
        primes.dedup();
        for p in primes {
            let (e, u) = split_off(&lambda.den, p);
            let cur = self.components.get(&p).cloned().unwrap_or(Component { k: 0, r: vec![BigInt::zero(); self.d()] });
            let k = cur.k.max(e);
            let m = pow(p, self.precision + k);
            let uinv = inv_mod(&u, &m).expect("unit");
            let shift_cur = pow(p, k - cur.k);
            let shift_l = pow(p, k - e);
            let r = cur.r.iter().zip(&lambda.num.0).map(|(a, b)| a * &shift_cur + s * b * &uinv * &shift_l).collect();
            self.set(p, Component { k, r })?;
        }
        Ok(())
    }

    pub fn sub_global(&self, lambda: &KElement) -> Result<Self> {
        let mut y = self.clone();
        y.add_global(lambda, &-BigInt::one())?;
        Ok(y)
    }

    fn combine(&self, other: &FiniteAdele, sign: i64) -> Result<Self> {
        if self.field != other.field || self.precision != other.precision {
            return Err(Error::Invalid("adeles over different fields or precisions".into()));
        }
        let mut out = self.clone();
        out.cap = self.cap.max(other.cap);
        let s = BigInt::from(sign);
        for (&p, c) in &other.components {
            let cur = out.components.get(&p).cloned().unwrap_or(Component { k: 0, r: vec![BigInt::zero(); self.d()] });
            let k = cur.k.max(c.k);
            let (sa, sb) = (pow(p, k - cur.k), pow(p, k - c.k));
            let r = cur.r.iter().zip(&c.r).map(|(a, b)| a * &sa + &s * b * &sb).collect();
            out.set(p, Component { k, r })?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &FiniteAdele) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &FiniteAdele) -> Result<Self> {
        self.combine(other, -1)
    }

    pub fn scale(&self, n: &BigInt) -> Result<Self> {
        let mut out = self.clone();
        for (&p, c) in &self.components {
            out.set(p, Component { k: c.k, r: c.r.iter().map(|x| x * n).collect() })?;
        }
        Ok(out)
    }

    /// Whether `x - λ` vanishes at precision on the tracked primes and `λ` is
    /// integral elsewhere.
    pub fn matches_global(&self, lambda: &KElement) -> bool {
        let outside = super::field::trial_factor(&lambda.den, u64::MAX).0.iter().any(|(p, _)| !self.components.contains_key(p));
        if outside {
            return false;
        }
        match self.sub_global(lambda) {
            Ok(diff) => diff.is_zero(),
            Err(_) => false,
        }
    }

    /// Embedding along `ℚ ↪ K`; `self` must be an adele of `ℚ`.
    pub fn extend_scalars(&self, k: &NumberField) -> Result<Self> {
        if self.d() != 1 {
            return Err(Error::Unsupported("only adeles of ℚ can be extended".into()));
        }
        let comps = self
            .components
            .iter()
            .map(|(&p, c)| {
                let mut r = vec![BigInt::zero(); k.degree()];
                r[0] = c.r[0].clone();
                (p, Component { k: c.k, r })
            })
            .collect();
        Self::with_cap(k, self.precision, self.cap, comps)
    }

    pub fn from_json(field: &NumberField, v: &Value) -> Result<Self> {
        Self::from_json_with_cap(field, v, DEFAULT_DENOMINATOR_CAP)
    }

    pub fn from_json_with_cap(field: &NumberField, v: &Value, cap: u32) -> Result<Self> {
        let w: AdeleWire = serde_json::from_value(v.clone()).map_err(|e| Error::Schema(e.to_string()))?;
        let mut comps = BTreeMap::new();
        for (p, c) in w.components {
            let p: u64 = p.parse().map_err(|_| Error::Schema(format!("prime key {p:?} is not an integer")))?;
            comps.insert(p, Component { k: c.k, r: wire::from_decimal(c.r) });
        }
        Self::with_cap(field, w.precision, cap, comps)
    }

    pub fn to_json(&self) -> Value {
        let w = AdeleWire {
            precision: self.precision,
            components: self
                .components
                .iter()
                .map(|(p, c)| (p.to_string(), ComponentWire { k: c.k, r: wire::to_decimal(&c.r) }))
                .collect(),
        };
        serde_json::to_value(w).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentWire {
    k: u32,
    r: Vec<DecimalInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AdeleWire {
    precision: u32,
    #[serde(default)]
    components: BTreeMap<String, ComponentWire>,
}

impl fmt::Display for FiniteAdele {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0 (mod p^{})", self.precision);
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(p, c)| {
                let r: Vec<String> = c.r.iter().map(|x| x.to_string()).collect();
                match c.k {
                    0 => format!("{p}: [{}]", r.join(", ")),
                    k => format!("{p}: {p}^-{k} [{}]", r.join(", ")),
                }
            })
            .collect();
        write!(f, "{{{}}} (mod p^{})", parts.join("; "), self.precision)
    }
}

/// Strong approximation: `x = λ + y` with `λ ∈ K` and `y` integral.
pub fn strong_approx_reduce(x: &FiniteAdele) -> Result<(KElement, FiniteAdele)> {
    let d = x.d();
    let den = x.denominator();
    if den.is_one() {
        return Ok((KElement::zero(d), x.clone()));
    }
    // λ = a / D with a ≡ r_p (D / p^k) mod p^k for each p
    let num: Vec<BigInt> = (0..d)
        .map(|i| {
            let pairs: Vec<(BigInt, BigInt)> = x
                .components
                .iter()
                .filter(|(_, c)| c.k > 0)
                .map(|(&p, c)| {
                    let pk = pow(p, c.k);
                    ((&c.r[i] * (&den / &pk)).mod_floor(&pk), pk)
                })
                .collect();
            crt(&pairs)
        })
        .collect();
    let lambda = KElement::new(num, den)?;
    let y = x.sub_global(&lambda)?;
    debug_assert!(y.is_integral());
    Ok((lambda, y))
}

/// `y` with `n y ≡ x` modulo `K`, together with the global `μ = n y - x`.
pub fn divide_class_with_witness(x: &FiniteAdele, n: u64) -> Result<(FiniteAdele, KElement)> {
    if n == 0 {
        return Err(Error::Invalid("cannot divide by 0".into()));
    }
    let nb = BigInt::from(n);
    let mut y0 = x.clone();
    for (&p, c) in &x.components {
        let (e, u) = split_off(&nb, p);
        let k = c.k + e;
        let uinv = inv_mod(&u, &pow(p, x.precision + k)).expect("unit");
        y0.set(p, Component { k, r: c.r.iter().map(|v| v * &uinv).collect() })?;
    }
    let (lambda, y) = strong_approx_reduce(&y0)?;
    Ok((y, lambda.scale(&-nb)))
}

pub fn divide_class(x: &FiniteAdele, n: u64) -> Result<FiniteAdele> {
    Ok(divide_class_with_witness(x, n)?.0)
}

/// A global `λ` with denominator dividing `bound` that agrees with `x` at
/// every tracked prime, if the denominators allow one.
pub fn is_global(x: &FiniteAdele, bound: &BigInt) -> Option<KElement> {
    if bound.is_zero() || !(bound % x.denominator()).is_zero() {
        return None;
    }
    let (lambda, y) = strong_approx_reduce(x).ok()?;
    let mu: Vec<BigInt> = (0..x.d())
        .map(|i| {
            let pairs: Vec<(BigInt, BigInt)> = y.components.iter().map(|(&p, c)| (c.r[i].clone(), pow(p, x.precision))).collect();
            crt(&pairs)
        })
        .collect();
    let global = lambda.add(&KElement::new(mu, BigInt::one()).ok()?);
    debug_assert!(x.matches_global(&global));
    Some(global)
}

/// Random adele with support in `primes` and `k ≤ kmax`.
pub fn random_adele<R: Rng>(rng: &mut R, field: &NumberField, precision: u32, primes: &[u64], kmax: u32) -> Result<FiniteAdele> {
    let mut comps = BTreeMap::new();
    for &p in primes {
        if rng.gen_bool(0.3) {
            continue;
        }
        let k = rng.gen_range(0..=kmax);
        let m = pow(p, precision + k);
        let r = (0..field.degree())
            .map(|_| {
                let bits = m.bits() + 8;
                let v: BigInt = (0..bits).fold(BigInt::zero(), |acc, _| acc * 2 + u32::from(rng.gen_bool(0.5)));
                v.mod_floor(&m)
            })
            .collect();
        comps.insert(p, Component { k, r });
    }
    FiniteAdele::new(field, precision, comps)
}

/// Largest `|coordinate|` needed to write `x`; used in diagnostics.
pub fn height(x: &FiniteAdele) -> BigInt {
    x.components.values().flat_map(|c| c.r.iter().map(|v| v.abs())).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn adele(k: &NumberField, n: u32, comps: &[(u64, u32, &[i64])]) -> FiniteAdele {
        let comps = comps.iter().map(|&(p, k, r)| (p, Component { k, r: r.iter().map(|&v| b(v)).collect() })).collect();
        FiniteAdele::new(k, n, comps).unwrap()
    }

    fn frac(num: &[i64], den: i64) -> KElement {
        KElement::new(num.iter().map(|&v| b(v)).collect(), b(den)).unwrap()
    }

    #[test]
    fn half_at_two() {
        let x = adele(&q(), 4, &[(2, 1, &[1])]);
        let (l, y) = strong_approx_reduce(&x).unwrap();
        assert_eq!(l, frac(&[1], 2));
        assert!(y.is_integral() && y.is_zero());
    }

    #[test]
    fn half_plus_third() {
        let x = adele(&q(), 4, &[(2, 1, &[1]), (3, 1, &[1])]);
        let (l, y) = strong_approx_reduce(&x).unwrap();
        assert_eq!(l, frac(&[5], 6));
        assert!(y.is_integral());
        assert!(x.sub_global(&l).unwrap() == y);
    }

    #[test]
    fn integral_input_is_fixed() {
        let x = adele(&NumberField::gaussian(), 3, &[(5, 0, &[7, 3])]);
        let (l, y) = strong_approx_reduce(&x).unwrap();
        assert!(l.is_zero());
        assert_eq!(y, x);
    }

    #[test]
    fn canonical_form() {
        let x = adele(&q(), 2, &[(2, 2, &[2]), (3, 0, &[9])]);
        assert_eq!(x.component(2), Some(&Component { k: 1, r: vec![b(1)] }));
        assert_eq!(x.support(), vec![2]);
        assert!(FiniteAdele::with_cap(&q(), 2, 1, [(2, Component { k: 2, r: vec![b(1)] })].into()).is_err());
        assert!(FiniteAdele::new(&q(), 2, [(4, Component { k: 0, r: vec![b(1)] })].into()).is_err());
    }

    #[test]
    fn divide_by_three() {
        let x = adele(&q(), 4, &[(2, 1, &[1])]);
        let (y, mu) = divide_class_with_witness(&x, 3).unwrap();
        let diff = y.scale(&b(3)).unwrap().sub(&x).unwrap();
        assert!(diff.matches_global(&mu));
        assert!(is_global(&diff, &b(2)).is_some());
        assert_eq!(divide_class(&x, 1).unwrap(), strong_approx_reduce(&x).unwrap().1);
    }

    #[test]
    fn is_global_examples() {
        assert_eq!(is_global(&FiniteAdele::zero(&q(), 3).unwrap(), &b(1)), Some(KElement::zero(1)));
        let x = adele(&q(), 3, &[(2, 1, &[1]), (3, 0, &[0])]);
        assert_eq!(is_global(&x, &b(2)), Some(frac(&[1], 2)));
        assert_eq!(is_global(&x, &b(1)), None);
        assert!(x.matches_global(&frac(&[1], 2)));
        assert!(!x.matches_global(&frac(&[1], 6)));
    }

    #[test]
    fn json_roundtrip() {
        let k = NumberField::gaussian();
        let x = adele(&k, 4, &[(2, 1, &[1, 3]), (5, 2, &[4, 0])]);
        let v = x.to_json();
        assert_eq!(v["components"]["2"]["k"], 1);
        assert_eq!(FiniteAdele::from_json(&k, &v).unwrap(), x);
        assert!(
            FiniteAdele::from_json(&k, &serde_json::json!({"precision": 2, "components": {"2": {"k": 0, "r": ["1"]}}})).is_err()
        );
    }

    #[test]
    fn naturality_along_rationals_in_gaussian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = NumberField::gaussian();
        for _ in 0..30 {
            let x = random_adele(&mut rng, &q(), 4, &[2, 3, 5], 3).unwrap();
            let (l, y) = strong_approx_reduce(&x).unwrap();
            let (lk, yk) = strong_approx_reduce(&x.extend_scalars(&k).unwrap()).unwrap();
            assert_eq!(y.extend_scalars(&k).unwrap(), yk);
            assert_eq!((lk.num.0[0].clone(), lk.den.clone()), (l.num.0[0].clone(), l.den.clone()));
        }
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(seed in any::<u64>(), gaussian in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = if gaussian { NumberField::gaussian() } else { q() };
            let x = random_adele(&mut rng, &k, 4, &[2, 3, 5], 3).unwrap();
            let (l, y) = strong_approx_reduce(&x).unwrap();
            prop_assert!(y.is_integral());
            prop_assert!((x.denominator() % &l.den).is_zero());
            prop_assert_eq!(x.sub_global(&l).unwrap(), y.clone());
            let (l2, y2) = strong_approx_reduce(&y).unwrap();
            prop_assert!(l2.is_zero());
            prop_assert_eq!(y2, y);
        }

        #[test]
        fn divided_classes_are_global_multiples(seed in any::<u64>(), n in 1u64..=12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_adele(&mut rng, &NumberField::gaussian(), 4, &[2, 3, 5], 3).unwrap();
            let (y, mu) = divide_class_with_witness(&x, n).unwrap();
            let diff = y.scale(&BigInt::from(n)).unwrap().sub(&x).unwrap();
            prop_assert!(diff.matches_global(&mu));
            prop_assert!(is_global(&diff, &diff.denominator()).is_some());
        }

        #[test]
        fn integral_adeles_differ_by_a_global_integer(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = NumberField::gaussian();
            let a = strong_approx_reduce(&random_adele(&mut rng, &k, 3, &[2, 3, 5], 2).unwrap()).unwrap().1;
            let c = strong_approx_reduce(&random_adele(&mut rng, &k, 3, &[2, 3, 5], 2).unwrap()).unwrap().1;
            let diff = a.sub(&c).unwrap();
            let g = is_global(&diff, &BigInt::one()).unwrap();
            prop_assert!(g.is_integral());
            prop_assert!(diff.matches_global(&g));
        }
    }
}
