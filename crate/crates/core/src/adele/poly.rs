//! Polynomials over `𝔽_p` (little-endian `u64` coefficients, no trailing
//! zeros) and their factorization into irreducibles.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type FpPoly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2)
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[u64]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// `(q, r)` with `a = q b + r`, `deg r < deg b`. Panics on `b = 0`.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = mulmod(r[i], inv, p);
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mulmod(c, bj, p);
            r[i - db + j] = (r[i - db + j] + p - t) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    divrem(a, b, p).1
}

pub fn monic(f: &[u64], p: u64) -> FpPoly {
    match f.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = inv_mod(lc, p);
            f.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

fn powmod(base: &[u64], e: &BigUint, f: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let base = rem(base, f, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), f, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &base, p), f, p);
        }
    }
    acc
}

/// Splits a squarefree monic `g` whose irreducible factors all have degree `k`.
fn equal_degree(g: FpPoly, k: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = degree(&g).unwrap_or(0);
    if n <= k {
        out.push(g);
        return;
    }
    loop {
        let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.is_empty() {
            continue;
        }
        let b = if p == 2 {
            // trace a + a^2 + ... + a^(2^(k-1))
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..k {
                s = rem(&mul(&s, &s, p), &g, p);
                t = add(&t, &s, p);
            }
            t
        } else {
            let e = (BigUint::from(p).pow(k as u32) - 1u32) / 2u32;
            sub(&powmod(&a, &e, &g, p), &[1], p)
        };
        let d = gcd(&g, &b, p);
        let dd = degree(&d).unwrap_or(0);
        if dd > 0 && dd < n {
            let other = divrem(&g, &d, p).0;
            equal_degree(d, k, p, rng, out);
            equal_degree(monic(&other, p), k, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a nonzero `f` with multiplicities, sorted by
/// degree and then coefficients.
pub fn factor(f: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let f = monic(&trim(f.to_vec()), p);
    let n = degree(&f).expect("nonzero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let x: FpPoly = trim(vec![0, 1]);
    let pb = BigUint::from(p);
    let mut irreducibles = Vec::new();
    let mut found_product: FpPoly = vec![1];
    let mut h = x.clone(); // x^(p^i) mod f
    for i in 1..=n {
        h = powmod(&h, &pb, &f, p);
        // distinct irreducibles of degree dividing i, minus those already found
        let g = gcd(&f, &sub(&h, &x, p), p);
        let new = divrem(&g, &gcd(&g, &found_product, p), p).0;
        if degree(&new).unwrap_or(0) > 0 {
            found_product = mul(&found_product, &new, p);
            equal_degree(monic(&new, p), i, p, &mut rng, &mut irreducibles);
        }
    }
    let mut out: Vec<(FpPoly, usize)> = irreducibles
        .into_iter()
        .map(|g| {
            let mut e = 0;
            let mut rest = f.clone();
            loop {
                let (q, r) = divrem(&rest, &g, p);
                if !r.is_empty() {
                    break;
                }
                e += 1;
                rest = q;
            }
            (g, e)
        })
        .collect();
    out.sort_by(|a, b| (a.0.len(), a.0.iter().rev().collect::<Vec<_>>()).cmp(&(b.0.len(), b.0.iter().rev().collect())));
    out
}

pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let fs = factor(f, p);
    fs.len() == 1 && fs[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(fs: &[(FpPoly, usize)], p: u64) -> FpPoly {
        fs.iter().fold(vec![1], |acc, (g, e)| (0..*e).fold(acc, |a, _| mul(&a, g, p)))
    }

    #[test]
    fn gaussian_examples() {
        // x^2 + 1
        assert_eq!(factor(&[1, 0, 1], 5), vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
        assert_eq!(factor(&[1, 0, 1], 2), vec![(vec![1, 1], 2)]);
        assert_eq!(factor(&[1, 0, 1], 3), vec![(vec![1, 0, 1], 1)]);
    }

    #[test]
    fn factors_multiply_back() {
        for p in [2u64, 3, 5, 7, 11, 101] {
            for f in [vec![1u64, 0, 0, 0, 1], vec![6, 11, 6, 1], vec![1, 1, 1, 1, 1, 1, 1], vec![0, 0, 1, 1]] {
                let f: FpPoly = f.iter().map(|c| c % p).collect();
                let fs = factor(&f, p);
                assert_eq!(expand(&fs, p), monic(&f, p), "p={p} f={f:?}");
                for (g, _) in &fs {
                    // irreducible: no proper factor by brute force for small degree
                    if g.len() <= 3 && p <= 11 {
                        let roots = (0..p).filter(|&a| g.iter().rev().fold(0, |acc, &c| (acc * a + c) % p) == 0).count();
                        assert!(g.len() == 2 || roots == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn large_prime_split() {
        // 10^9 + 9 ≡ 1 and 10^9 + 7 ≡ 3 mod 4
        assert_eq!(factor(&[1, 0, 1], 1_000_000_009).len(), 2);
        assert!(is_irreducible(&[1, 0, 1], 1_000_000_007));
    }
}
