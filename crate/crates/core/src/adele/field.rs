//! Monogenic number fields `K = ℚ(θ)`, `𝒪_K = ℤ[θ]`, with elements in the
//! power basis `1, θ, …, θ^{d-1}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{self, FpPoly};
use crate::error::{Error, Result};
use crate::wire::{self, DecimalInt};
use crate::znf::IntMatrix;

/// Trial-division limit for discriminant factorization.
const TRIAL_LIMIT: u64 = 1_000_000;

pub fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime factorization of `|n|` by trial division; the second component is
/// the unfactored cofactor (1 when complete).
pub fn trial_factor(n: &BigInt, limit: u64) -> (Vec<(u64, u32)>, BigInt) {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return (out, n);
    }
    let mut d = 2u64;
    while d <= limit && BigInt::from(d) * BigInt::from(d) <= n {
        let mut e = 0;
        while (&n % d).is_zero() {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() && BigInt::from(d) * BigInt::from(d) > n {
        out.push((n.to_u64().expect("cofactor below the trial limit squared fits in u64"), 1));
        n = BigInt::one();
    }
    (out, n)
}

fn to_fp(f: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    poly::trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_fp(f: &[u64]) -> Vec<BigInt> {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Quotient of `f` by a monic `g` over `ℤ`, if exact.
fn exact_div_monic(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    if r.len() < g.len() {
        return r.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut q = vec![BigInt::zero(); r.len() - dg];
    for i in (dg..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, gj) in g.iter().enumerate() {
            r[i - dg + j] -= &c * gj;
        }
        q[i - dg] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let (fs, rest) = trial_factor(n, TRIAL_LIMIT);
    if !rest.is_one() {
        return Err(Error::Unsupported(format!("cannot factor {n} by trial division")));
    }
    let mut ds = vec![BigInt::one()];
    for (p, e) in fs {
        let mut next = Vec::new();
        for d in &ds {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        ds = next;
    }
    Ok(ds)
}

/// Number of divisor combinations Kronecker's method may try.
const KRONECKER_CAP: usize = 2_000_000;

/// Kronecker's method: is there a monic integer factor of degree `k`?
fn has_factor_of_degree(f: &[BigInt], k: usize) -> Result<bool> {
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut a = 0i64;
    while points.len() < k {
        let x = BigInt::from(a);
        let v = eval(f, &x);
        if v.is_zero() {
            return Ok(true);
        }
        points.push(x);
        values.push(v);
        a = if a > 0 { -a } else { -a + 1 };
    }
    let choices: Vec<Vec<BigInt>> =
        values.iter().map(|v| divisors(v).map(|ds| ds.iter().flat_map(|d| [d.clone(), -d]).collect())).collect::<Result<_>>()?;
    let total = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
    if total.is_none_or(|t| t > KRONECKER_CAP) {
        return Err(Error::Unsupported("irreducibility search exceeds its cap".into()));
    }
    // g = ∏ (x - a_i) + h with deg h < k and h(a_i) = g(a_i)
    let base = points.iter().fold(vec![BigInt::one()], |acc, a| zmul(&acc, &[-a, BigInt::one()]));
    let mut pick = vec![0usize; k];
    loop {
        let targets: Vec<BigInt> = (0..k).map(|i| choices[i][pick[i]].clone()).collect();
        if let Some(h) = interpolate(&points, &targets) {
            let mut g = base.clone();
            for (i, c) in h.into_iter().enumerate() {
                g[i] += c;
            }
            if exact_div_monic(f, &g).is_some() {
                return Ok(true);
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(false);
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Integer-coefficient polynomial of degree `< n` through `n` points, if any.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = xs.len();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (t, c) in basis.iter().enumerate() {
                next[t + 1] += c;
                next[t] -= c * BigRational::from_integer(xs[j].clone());
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = BigRational::new(ys[i].clone(), denom);
        for (t, c) in basis.into_iter().enumerate() {
            out[t] += c * &scale;
        }
    }
    out.into_iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

fn rational_poly(f: &[BigInt]) -> Vec<BigRational> {
    f.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn qrem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Number of real roots of a squarefree polynomial (Sturm's theorem).
fn real_root_count(f: &[BigInt]) -> usize {
    let mut seq = vec![rational_poly(f)];
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    seq.push(rational_poly(&df));
    while seq.last().is_some_and(|p| p.len() > 1) {
        let n = seq.len();
        let r: Vec<BigRational> = qrem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    let changes = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sign = |c: &BigRational| {
        if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        }
    };
    let at_pos = seq.iter().map(|p| sign(p.last().unwrap())).collect();
    let at_neg = seq.iter().map(|p| sign(p.last().unwrap()) * if (p.len() - 1) % 2 == 0 { 1 } else { -1 }).collect();
    changes(at_neg) - changes(at_pos)
}

fn discriminant(f: &[BigInt]) -> BigInt {
    let d = f.len() - 1;
    if d == 1 {
        return BigInt::one();
    }
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    // Sylvester matrix of f (degree d) and f' (degree d-1)
    let n = 2 * d - 1;
    let mut m = IntMatrix::zeros(n, n);
    for r in 0..d - 1 {
        for (j, c) in f.iter().rev().enumerate() {
            m.set(r, r + j, c.clone());
        }
    }
    for r in 0..d {
        for (j, c) in df.iter().rev().enumerate() {
            m.set(d - 1 + r, r + j, c.clone());
        }
    }
    let res = m.determinant().expect("square");
    if (d * (d - 1) / 2).is_multiple_of(2) {
        res
    } else {
        -res
    }
}

#[derive(Serialize, Deserialize)]
struct FieldWire {
    min_poly: Vec<DecimalInt>,
    #[serde(default, skip_deserializing, skip_serializing_if = "Option::is_none")]
    disc: Option<DecimalInt>,
}

/// `K = ℚ[x]/(f)` for a monic irreducible integer polynomial `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldWire", into = "FieldWire")]
pub struct NumberField {
    min_poly: Vec<BigInt>,
    disc: BigInt,
    real_embeddings: usize,
}

impl TryFrom<FieldWire> for NumberField {
    type Error = Error;

    fn try_from(w: FieldWire) -> Result<Self> {
        NumberField::new(wire::from_decimal(w.min_poly))
    }
}

impl From<NumberField> for FieldWire {
    fn from(k: NumberField) -> Self {
        FieldWire { min_poly: wire::to_decimal(&k.min_poly), disc: Some(DecimalInt(k.disc)) }
    }
}

impl NumberField {
    /// `min_poly` lists coefficients `c_0, …, c_d` with `c_d = 1`.
    pub fn new(min_poly: Vec<BigInt>) -> Result<Self> {
        if min_poly.len() < 2 {
            return Err(Error::Invalid("minimal polynomial must have degree ≥ 1".into()));
        }
        if !min_poly.last().unwrap().is_one() {
            return Err(Error::Invalid("minimal polynomial must be monic".into()));
        }
        check_irreducible(&min_poly)?;
        let disc = discriminant(&min_poly);
        let real_embeddings = real_root_count(&min_poly);
        Ok(NumberField { min_poly, disc, real_embeddings })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `ℚ` itself, presented by `x`.
    pub fn rationals() -> Self {
        Self::from_i64(&[0, 1]).expect("x is irreducible")
    }

    pub fn gaussian() -> Self {
        Self::from_i64(&[1, 0, 1]).expect("x^2+1 is irreducible")
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// `(r1, r2)`: real embeddings and pairs of complex ones.
    pub fn signature(&self) -> (usize, usize) {
        (self.real_embeddings, (self.degree() - self.real_embeddings) / 2)
    }

    pub fn is_imaginary_quadratic(&self) -> bool {
        self.degree() == 2 && self.real_embeddings == 0
    }

    /// `(d!/d^d) (4/π)^{r2} √|disc|`.
    pub fn minkowski_bound(&self) -> f64 {
        let d = self.degree();
        let (_, r2) = self.signature();
        let mut c = 1.0;
        for i in 1..=d {
            c *= i as f64 / d as f64;
        }
        c * (4.0 / std::f64::consts::PI).powi(r2 as i32) * self.disc.to_f64().unwrap_or(f64::INFINITY).abs().sqrt()
    }

    /// Reduces a polynomial in `θ` modulo the minimal polynomial.
    fn reduce(&self, mut a: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        while a.len() > d {
            let c = a.pop().unwrap();
            let shift = a.len() - d;
            for (j, fj) in self.min_poly[..d].iter().enumerate() {
                a[shift + j] -= &c * fj;
            }
        }
        a.resize(d, BigInt::zero());
        a
    }

    pub fn mul(&self, a: &OkElement, b: &OkElement) -> OkElement {
        OkElement(self.reduce(zmul(&a.0, &b.0)))
    }

    pub fn one(&self) -> OkElement {
        let mut v = vec![BigInt::zero(); self.degree()];
        v[0] = BigInt::one();
        OkElement(v)
    }

    /// `θ^i`.
    pub fn theta_power(&self, i: usize) -> OkElement {
        let mut v = vec![BigInt::zero(); i + 1];
        v[i] = BigInt::one();
        OkElement(self.reduce(v))
    }

    /// Matrix of multiplication by `a` on the power basis (columns are `a θ^j`).
    pub fn mult_matrix(&self, a: &OkElement) -> IntMatrix {
        let d = self.degree();
        let mut m = IntMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.mul(a, &self.theta_power(j));
            for (i, c) in col.0.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    pub fn norm(&self, a: &OkElement) -> BigInt {
        self.mult_matrix(a).determinant().expect("square")
    }

    /// Element from a polynomial in `θ` given by integer coefficients.
    pub fn element(&self, coeffs: &[BigInt]) -> OkElement {
        OkElement(self.reduce(coeffs.to_vec()))
    }

    pub fn element_i64(&self, coeffs: &[i64]) -> OkElement {
        self.element(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    /// Dedekind's criterion: does `p` divide `[𝒪_K : ℤ[θ]]`?
    pub fn divides_index(&self, p: u64) -> bool {
        let pb = BigInt::from(p);
        if !(&self.disc % (&pb * &pb)).is_zero() {
            return false;
        }
        let fbar = to_fp(&self.min_poly, p);
        let fs = poly::factor(&fbar, p);
        let g = fs.iter().fold(vec![1u64], |acc, (gi, _)| poly::mul(&acc, gi, p));
        let h = fs.iter().fold(vec![1u64], |acc, (gi, e)| (1..*e).fold(acc, |a, _| poly::mul(&a, gi, p)));
        let gh = zmul(&from_fp(&g), &from_fp(&h));
        let big_f: Vec<BigInt> = (0..gh.len().max(self.min_poly.len()))
            .map(|i| {
                let a = gh.get(i).cloned().unwrap_or_default();
                let b = self.min_poly.get(i).cloned().unwrap_or_default();
                (a - b) / &pb
            })
            .collect();
        let common = poly::gcd(&poly::gcd(&g, &h, p), &to_fp(&big_f, p), p);
        poly::degree(&common).unwrap_or(0) > 0
    }

    /// Confirms `ℤ[θ]` is the full ring of integers.
    pub fn check_maximal(&self) -> Result<()> {
        let (fs, rest) = trial_factor(&self.disc, TRIAL_LIMIT);
        if !rest.is_one() {
            return Err(Error::Unsupported(format!("discriminant {} not fully factored", self.disc)));
        }
        for (p, e) in fs {
            if e >= 2 && self.divides_index(p) {
                return Err(Error::Unsupported(format!(
                    "ℤ[θ] is not maximal at {p}; the field is outside the monogenic setting"
                )));
            }
        }
        Ok(())
    }

    pub fn poly_string(&self) -> String {
        poly_display(&self.min_poly.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

fn check_irreducible(f: &[BigInt]) -> Result<()> {
    let d = f.len() - 1;
    if d == 1 {
        return Ok(());
    }
    if has_factor_of_degree(f, 1)? {
        return Err(Error::Invalid(format!(
            "{} has a rational root",
            poly_display(&f.iter().map(|c| c.to_string()).collect::<Vec<_>>())
        )));
    }
    if d <= 3 {
        return Ok(());
    }
    // factor degrees that survive reduction modulo many good primes
    let disc = discriminant(f);
    let mut possible: Vec<bool> = (0..=d).map(|k| (2..=d / 2).contains(&k)).collect();
    let mut primes_used = 0;
    for p in (2u64..).filter(|&p| is_prime_u64(p)).take(200) {
        if (&disc % p).is_zero() {
            continue;
        }
        let degs: Vec<usize> = poly::factor(&to_fp(f, p), p).iter().map(|(g, _)| g.len() - 1).collect();
        let mut sums = vec![false; d + 1];
        sums[0] = true;
        for g in degs {
            for s in (g..=d).rev() {
                sums[s] = sums[s] || sums[s - g];
            }
        }
        for k in 0..=d {
            possible[k] = possible[k] && sums[k];
        }
        primes_used += 1;
        if primes_used >= 40 || !possible.iter().any(|&b| b) {
            break;
        }
    }
    for k in (2..=d / 2).filter(|&k| possible[k]) {
        if has_factor_of_degree(f, k)? {
            return Err(Error::Invalid(format!("polynomial has a factor of degree {k}")));
        }
    }
    Ok(())
}

fn poly_display(coeffs: &[String]) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        let coef = match (c.as_str(), i) {
            ("1", i) if i > 0 => String::new(),
            ("-1", i) if i > 0 => "-".into(),
            _ => c.clone(),
        };
        terms.push(format!("{coef}{mono}"));
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.join(" + ").replace("+ -", "- ")
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ℚ[x]/({})", self.poly_string())
    }
}

/// Element of `𝒪_K = ℤ[θ]` in the power basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OkElement(pub Vec<BigInt>);

impl OkElement {
    pub fn zero(d: usize) -> Self {
        OkElement(vec![BigInt::zero(); d])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Serialize for OkElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        wire::to_decimal(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for OkElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<DecimalInt>::deserialize(d).map(|v| OkElement(wire::from_decimal(v)))
    }
}

/// Element `num / den` of `K`, with `den > 0` and `gcd(num, den) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KElement {
    pub num: OkElement,
    #[serde(with = "decimal")]
    pub den: BigInt,
}

mod decimal {
    use super::*;

    pub fn serialize<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecimalInt(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        DecimalInt::deserialize(d).map(|v| v.0)
    }
}

impl KElement {
    pub fn new(num: Vec<BigInt>, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        let sign = if den.is_negative() { -BigInt::one() } else { BigInt::one() };
        let num = num.iter().map(|c| c / &g * &sign).collect();
        Ok(KElement { num: OkElement(num), den: den.abs() / g })
    }

    pub fn zero(d: usize) -> Self {
        KElement { num: OkElement::zero(d), den: BigInt::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &KElement) -> KElement {
        let den = &self.den * &other.den;
        let num = self.num.0.iter().zip(&other.num.0).map(|(a, b)| a * &other.den + b * &self.den).collect();
        KElement::new(num, den).expect("nonzero")
    }

    pub fn scale(&self, n: &BigInt) -> KElement {
        KElement::new(self.num.0.iter().map(|c| c * n).collect(), self.den.clone()).expect("nonzero")
    }

    pub fn neg(&self) -> KElement {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.num.0.iter().map(|c| c.to_string()).collect();
        let body = poly_display(&coeffs).replace('x', "θ");
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

/// One prime factor `(g mod p)` of `p𝒪_K` with ramification `e` and residue
/// degree `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFactor {
    pub poly: Vec<u64>,
    pub e: usize,
    pub f: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSplit {
    pub p: u64,
    pub factors: Vec<PrimeFactor>,
}

impl PrimeSplit {
    pub fn is_split(&self) -> bool {
        self.factors.iter().all(|f| f.e == 1 && f.f == 1)
    }

    pub fn is_ramified(&self) -> bool {
        self.factors.iter().any(|f| f.e > 1)
    }
}

impl fmt::Display for PrimeSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|pf| {
                let s = poly_display(&pf.poly.iter().map(|c| c.to_string()).collect::<Vec<_>>());
                if pf.e > 1 {
                    format!("({s})^{}", pf.e)
                } else {
                    format!("({s})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Kummer–Dedekind: the factorization of `p𝒪_K` read off from `f mod p`.
pub fn factor_prime(k: &NumberField, p: u64) -> Result<PrimeSplit> {
    if !is_prime_u64(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if k.divides_index(p) {
        return Err(Error::Unsupported(format!("{p} divides [𝒪_K : ℤ[θ]]; Kummer–Dedekind does not apply")));
    }
    let factors: Vec<PrimeFactor> =
        poly::factor(&to_fp(k.min_poly(), p), p).into_iter().map(|(g, e)| PrimeFactor { f: g.len() - 1, poly: g, e }).collect();
    let total: usize = factors.iter().map(|pf| pf.e * pf.f).sum();
    if total != k.degree() {
        return Err(Error::Invalid(format!("Σ e·f = {total} ≠ {}", k.degree())));
    }
    Ok(PrimeSplit { p, factors })
}
