//! The acceptance criteria as library functions, plus the random generators
//! they draw from. `corpus-verify` and the acceptance test target both run
//! these.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adele::finite::random_adele;
use crate::adele::{
    adele_to_system, class_group, divide_class_with_witness, is_global, strong_approx_reduce, system_to_adele, NumberField,
};
use crate::derived::{
    dualizing_homology, dualizing_homology_labeled, i_shriek, j_shriek_homology, FiniteComplexHomology, FormalExt,
};
use crate::error::{Error, Result};
use crate::monoid::{check_alpha_adjunction, enumerate_monoids, smash_monoid_roundtrip, AdjunctionCaps, PointedSet};
use crate::simplicial::{
    basepoint_lift, corpus, dold_kan_gamma, em_homotopy_groups, normalized_complex, reduced_chains, PointedSimplicialSet,
};
use crate::znf::{hyper_ext, smith_normal_form, ChainComplex, FgAbelianGroup, IntMatrix, Lattice};

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, max_entry: i64) -> IntMatrix {
    let rows = rng.gen_range(0..=max_dim);
    let cols = rng.gen_range(0..=max_dim);
    let entries = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-max_entry..=max_entry))).collect();
    IntMatrix::new(rows, cols, entries).expect("shape matches")
}

/// Random complex in degrees `lowest ..= lowest + len - 1` with `len ≤ max_len`
/// and ranks `≤ max_rank`; each differential has columns drawn from the
/// kernel of the one below.
pub fn random_complex<R: Rng>(rng: &mut R, lowest: i64, max_len: usize, max_rank: usize) -> ChainComplex {
    let len = rng.gen_range(1..=max_len);
    let levels: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut diffs: Vec<IntMatrix> = Vec::new();
    for n in 1..len {
        let (rows, cols) = (levels[n - 1], levels[n]);
        let kernel = match diffs.last() {
            None => Lattice::full(rows),
            Some(prev) => Lattice::kernel(prev),
        };
        let mut m = IntMatrix::zeros(rows, cols);
        for c in 0..cols {
            if rng.gen_bool(0.2) {
                continue;
            }
            for b in kernel.basis() {
                let t = rng.gen_range(-2i64..=2);
                for (r, v) in b.iter().enumerate() {
                    let cur = m.get(r, c) + v * t;
                    m.set(r, c, cur);
                }
            }
        }
        diffs.push(m);
    }
    ChainComplex::new(lowest, levels, diffs).expect("columns lie in the kernel")
}

fn minor(a: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let k = rows.len();
    let mut m = IntMatrix::zeros(k, k);
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            m.set(i, j, a.get(r, c).clone());
        }
    }
    m.determinant().expect("square")
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all `k × k` minors (the `k`-th determinantal divisor).
pub fn minors_gcd(a: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(a.rows(), k) {
        for cols in subsets(a.cols(), k) {
            g = g.gcd(&minor(a, &rows, &cols));
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        write!(f, "[{tag}] {:>2}. {} ({} ms, limit {} ms)", self.id, self.title, self.elapsed_ms, self.limit_ms)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Inputs that `corpus-verify` can swap out.
#[derive(Debug, Clone)]
pub struct VerifyCorpus {
    pub simplicial: Vec<(String, PointedSimplicialSet)>,
    /// Enumeration bound for the class-group criterion; `None` uses the
    /// rounded-up Minkowski bound of each field.
    pub class_group_bound: Option<u64>,
    pub seed: u64,
}

impl VerifyCorpus {
    pub fn bundled() -> Result<Self> {
        let simplicial = corpus::NAMES.iter().map(|n| Ok((n.to_string(), corpus::model(n)?))).collect::<Result<_>>()?;
        Ok(VerifyCorpus { simplicial, class_group_bound: None, seed: 20240601 })
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
    Inconclusive(String),
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(id: u8, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> CriterionReport {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (mut status, mut detail) = match outcome {
        Outcome::Pass(d) => (Status::Pass, d),
        Outcome::Fail(d) => (Status::Fail, d),
        Outcome::Inconclusive(d) => (Status::Inconclusive, d),
    };
    if status == Status::Pass && elapsed > limit {
        status = Status::Fail;
        detail = format!("exceeded time limit; {detail}");
    }
    CriterionReport { id, title: title.into(), status, detail, elapsed_ms: elapsed.as_millis(), limit_ms: limit.as_millis() }
}

fn check(r: std::result::Result<String, String>) -> Outcome {
    match r {
        Ok(d) => Outcome::Pass(d),
        Err(d) => Outcome::Fail(d),
    }
}

fn ext_label(x: &FormalExt) -> String {
    x.to_string()
}

pub fn criterion_1() -> CriterionReport {
    timed(1, "dualizing homology of the sphere", Duration::from_secs(1), || {
        check((|| {
            let d = dualizing_homology(&FiniteComplexHomology::sphere());
            ensure(d.support() == vec![-1], || format!("support {:?}", d.support()))?;
            let top = d.get(-1);
            ensure(top.rank == 1 && ext_label(&top) == "Ext¹(ℚ,ℤ)", || format!("degree -1 holds {top}"))?;
            for p in [2, 3, 5] {
                let j = j_shriek_homology(&BigInt::from(p), &FiniteComplexHomology::sphere()).map_err(|e| e.to_string())?;
                ensure(j.is_zero(), || format!("j-shriek at {p} is {j}"))?;
            }
            Ok(format!("{d}"))
        })())
    })
}

pub fn criterion_2() -> CriterionReport {
    timed(2, "dualizing homology over ℚ(i) and i-shriek", Duration::from_secs(1), || {
        check((|| {
            let k = NumberField::gaussian();
            let x = FiniteComplexHomology::from_pairs([(0, FgAbelianGroup::free(k.degree()))]).map_err(|e| e.to_string())?;
            let d = dualizing_homology_labeled(&x, "𝒪_K");
            ensure(d.support() == vec![-1], || format!("support {:?}", d.support()))?;
            ensure(d.get(-1).rank == 2, || format!("rank {} at -1", d.get(-1).rank))?;
            let i = i_shriek(&FiniteComplexHomology::sphere());
            ensure(i.is_zero(), || format!("i-shriek of the sphere is {i}"))?;
            Ok(format!("{d}"))
        })())
    })
}

pub fn criterion_3(seed: u64) -> CriterionReport {
    timed(3, "hyper-Ext against ℤ[0] recovers homology", Duration::from_secs(10), || {
        check((|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let z0 = ChainComplex::concentrated(0, 1);
            let mut checked = 0;
            for case in 0..50 {
                let lowest = rng.gen_range(-3..=3);
                let d = random_complex(&mut rng, lowest, 4, 4);
                for t in d.lowest_degree()..=d.highest_degree() {
                    let lhs = hyper_ext(&z0, &d, -t);
                    let rhs = d.homology_at(t);
                    ensure(lhs == rhs, || format!("case {case}, t = {t}: {lhs} vs {rhs}"))?;
                    checked += 1;
                }
            }
            Ok(format!("50 complexes, {checked} degrees"))
        })())
    })
}

pub fn criterion_4(seed: u64) -> CriterionReport {
    timed(4, "Dold–Kan round trip and Eilenberg–MacLane homotopy", Duration::from_secs(30), || {
        check((|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            for case in 0..200 {
                let c = random_complex(&mut rng, 0, 4, 3);
                let top = c.highest_degree().max(0) as usize;
                let gamma = dold_kan_gamma(&c, top).map_err(|e| format!("case {case}: {e}"))?;
                let back = normalized_complex(&gamma).map_err(|e| format!("case {case}: {e}"))?;
                let expected = c.padded(0, top as i64).map_err(|e| e.to_string())?;
                ensure(back == expected, || format!("case {case}: N∘Γ differs from the input"))?;
                let pi = em_homotopy_groups(&c).map_err(|e| format!("case {case}: {e}"))?;
                ensure(pi.same_groups(&c.homology()), || format!("case {case}: π_* = {pi}, H_* = {}", c.homology()))?;
            }
            Ok("200 complexes".into())
        })())
    })
}

pub fn criterion_5(corpus: &VerifyCorpus) -> CriterionReport {
    timed(5, "basepoint lift is inverse to forgetting", Duration::from_secs(10), || {
        check((|| {
            let roundtrip = |name: &str, x: &PointedSimplicialSet| -> std::result::Result<(), String> {
                let report = x.validate();
                if let Some(v) = report.violations.first() {
                    return Err(format!("{name}: {v}"));
                }
                let lifted = basepoint_lift(x).map_err(|e| format!("{name}: {e}"))?;
                ensure(lifted.validate().is_valid(), || format!("{name}: lift fails validation"))?;
                ensure(&lifted.forget() == x, || format!("{name}: forget ∘ lift ≠ id"))?;
                let again = basepoint_lift(&lifted.forget()).map_err(|e| format!("{name}: {e}"))?;
                ensure(again == lifted, || format!("{name}: lift ∘ forget ≠ id"))
            };
            for (name, x) in &corpus.simplicial {
                roundtrip(name, x)?;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(corpus.seed.wrapping_add(5));
            for i in 0..50 {
                let x = corpus::random_simplicial_set(&mut rng, 3, 5);
                roundtrip(&format!("random #{i}"), &x)?;
            }
            Ok(format!("{} corpus models, 50 random", corpus.simplicial.len()))
        })())
    })
}

pub fn criterion_6() -> CriterionReport {
    timed(6, "free/forgetful adjunction and smash monoids", Duration::from_secs(60), || {
        check((|| {
            let groups = [
                FgAbelianGroup::cyclic(2),
                FgAbelianGroup::cyclic(3),
                FgAbelianGroup::cyclic(4),
                FgAbelianGroup::cyclic(6),
                FgAbelianGroup::from_orders(&[BigInt::from(2), BigInt::from(2)]),
            ];
            let mut pairs = 0;
            for size in 1..=4 {
                let s = PointedSet::new(size).map_err(|e| e.to_string())?;
                for a in &groups {
                    let w =
                        check_alpha_adjunction(&s, a, AdjunctionCaps::default()).map_err(|e| format!("|s|={size}, {a}: {e}"))?;
                    ensure(w.hom_ab_count == w.hom_pointed_count && w.bijection.len() == w.hom_ab_count, || {
                        format!("|s|={size}, {a}: {} vs {}", w.hom_ab_count, w.hom_pointed_count)
                    })?;
                    pairs += 1;
                }
            }
            let mut monoids = 0;
            for size in 1..=5 {
                for m in enumerate_monoids(size) {
                    let r = smash_monoid_roundtrip(&m).map_err(|e| e.to_string())?;
                    ensure(r.monoid == m, || format!("roundtrip changed a monoid of size {size}"))?;
                    monoids += 1;
                }
            }
            Ok(format!("{pairs} adjunction pairs, {monoids} monoids"))
        })())
    })
}

pub fn criterion_7(corpus: &VerifyCorpus) -> CriterionReport {
    timed(7, "reduced homology of the corpus", Duration::from_secs(1), || {
        check((|| {
            let expected = [
                ("circle", 1, FgAbelianGroup::free(1)),
                ("s2", 2, FgAbelianGroup::free(1)),
                ("rp2", 1, FgAbelianGroup::cyclic(2)),
            ];
            let mut out = Vec::new();
            for (name, degree, group) in expected {
                let x = corpus.simplicial.iter().find(|(n, _)| n == name).map(|(_, x)| x).ok_or(format!("{name} missing"))?;
                let lifted = basepoint_lift(x).map_err(|e| format!("{name}: {e}"))?;
                let h = reduced_chains(&lifted).map_err(|e| format!("{name}: {e}"))?.homology();
                let mut want = crate::znf::GradedGroups::new(0, x.truncation() as i64);
                want.insert(degree, group);
                ensure(h.same_groups(&want), || format!("{name}: {h}"))?;
                out.push(format!("{name} {h}"));
            }
            Ok(out.join(", "))
        })())
    })
}

pub fn criterion_8(seed: u64) -> CriterionReport {
    timed(8, "Smith normal form properties", Duration::from_secs(10), || {
        check((|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(8));
            for case in 0..500 {
                let a = random_matrix(&mut rng, 8, 20);
                let s = smith_normal_form(&a);
                let uav = s.u.checked_mul(&a).and_then(|x| x.checked_mul(&s.v)).map_err(|e| e.to_string())?;
                ensure(uav == s.d, || format!("case {case}: u·a·v ≠ d"))?;
                ensure(s.u.is_unimodular() && s.v.is_unimodular(), || format!("case {case}: witness not unimodular"))?;
                let diag = s.diagonal();
                for i in 0..s.d.rows() {
                    for j in 0..s.d.cols() {
                        ensure(i == j || s.d.get(i, j).is_zero(), || format!("case {case}: off-diagonal entry"))?;
                    }
                }
                for w in diag.windows(2) {
                    let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
                    ensure(ok && w[0] >= BigInt::zero(), || format!("case {case}: chain broken at {} | {}", w[0], w[1]))?;
                }
                let mut prod = BigInt::one();
                for k in 1..=3.min(diag.len()) {
                    prod *= &diag[k - 1];
                    let g = minors_gcd(&a, k);
                    ensure(g == prod, || format!("case {case}: {k}-minor gcd {g} vs {prod}"))?;
                }
            }
            Ok("500 matrices".into())
        })())
    })
}

pub fn criterion_9(seed: u64) -> CriterionReport {
    timed(9, "adele suite", Duration::from_secs(10), || {
        check((|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(9));
            let fields = [NumberField::rationals(), NumberField::gaussian()];
            let modulus = 16 * 81 * 625;
            for case in 0..100 {
                let k = &fields[case % 2];
                let x = random_adele(&mut rng, k, 4, &[2, 3, 5], 3).map_err(|e| e.to_string())?;
                let (l, y) = strong_approx_reduce(&x).map_err(|e| e.to_string())?;
                ensure(y.is_integral(), || format!("case {case}: output not integral"))?;
                ensure(x.sub_global(&l).map_err(|e| e.to_string())? == y, || format!("case {case}: x - λ ≠ y"))?;
                let (l2, y2) = strong_approx_reduce(&y).map_err(|e| e.to_string())?;
                ensure(l2.is_zero() && y2 == y, || format!("case {case}: not idempotent"))?;

                let s = adele_to_system(&x, modulus).map_err(|e| e.to_string())?;
                s.validate().map_err(|e| format!("case {case}: {e}"))?;
                let back = system_to_adele(k, &s, 4).map_err(|e| e.to_string())?;
                ensure(back == x, || format!("case {case}: adele → system → adele changed {x}"))?;
                let again = adele_to_system(&back, modulus).map_err(|e| e.to_string())?;
                ensure(again.same_as(&s), || format!("case {case}: system → adele → system changed"))?;

                for n in 1..=12u64 {
                    let (dv, mu) = divide_class_with_witness(&x, n).map_err(|e| e.to_string())?;
                    let diff = dv.scale(&BigInt::from(n)).and_then(|z| z.sub(&x)).map_err(|e| e.to_string())?;
                    ensure(diff.matches_global(&mu), || format!("case {case}, n = {n}: witness fails"))?;
                    ensure(is_global(&diff, &diff.denominator()).is_some(), || format!("case {case}, n = {n}: not global"))?;
                }
            }
            Ok("100 adeles over ℚ and ℚ(i)".into())
        })())
    })
}

pub fn criterion_10(corpus: &VerifyCorpus) -> CriterionReport {
    timed(10, "ideal class groups", Duration::from_secs(5), || {
        let cases = [
            ("ℚ(i)", NumberField::gaussian(), FgAbelianGroup::trivial()),
            ("ℚ(√-5)", NumberField::from_i64(&[5, 0, 1]).expect("irreducible"), FgAbelianGroup::cyclic(2)),
            ("ℚ", NumberField::rationals(), FgAbelianGroup::trivial()),
        ];
        let mut out = Vec::new();
        for (name, k, want) in cases {
            let b = corpus.class_group_bound.unwrap_or_else(|| (k.minkowski_bound().ceil() as u64).max(1));
            let run = |bound: u64| class_group(&k, bound);
            let (g, g2) = match (run(b), run(2 * b)) {
                (Ok(g), Ok(g2)) => (g, g2),
                (Err(e @ (Error::Inconclusive(_) | Error::Invalid(_))), _)
                | (_, Err(e @ (Error::Inconclusive(_) | Error::Invalid(_)))) => {
                    return Outcome::Inconclusive(format!("{name}: {e}"))
                }
                (Err(e), _) | (_, Err(e)) => return Outcome::Fail(format!("{name}: {e}")),
            };
            if g != want || g2 != g {
                return Outcome::Fail(format!("{name}: {g} at bound {b}, {g2} at bound {}", 2 * b));
            }
            out.push(format!("{name} {g}"));
        }
        Outcome::Pass(out.join(", "))
    })
}

pub fn run_all(corpus: &VerifyCorpus) -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(corpus.seed),
        criterion_4(corpus.seed),
        criterion_5(corpus),
        criterion_6(),
        criterion_7(corpus),
        criterion_8(corpus.seed),
        criterion_9(corpus.seed),
        criterion_10(corpus),
    ]
}
