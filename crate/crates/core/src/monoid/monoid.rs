use serde::{Deserialize, Serialize};

use super::pointed::{smash, smash_index, PointedSet};
use crate::error::{Error, Result};
use crate::znf::FgAbelianGroup;

/// Commutative monoid with an absorbing zero, on the carrier
/// `{0, …, size-1}` with `0` the zero element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MonoidWire", into = "MonoidWire")]
pub struct CommMonoidWithZero {
    carrier: PointedSet,
    table: Vec<Vec<usize>>,
    unit: usize,
}

#[derive(Serialize, Deserialize)]
struct MonoidWire {
    size: usize,
    unit: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<MonoidWire> for CommMonoidWithZero {
    type Error = Error;

    fn try_from(w: MonoidWire) -> Result<Self> {
        if w.table.len() != w.size {
            return Err(Error::Schema(format!("table has {} rows for size {}", w.table.len(), w.size)));
        }
        CommMonoidWithZero::new(w.size, w.unit, w.table)
    }
}

impl From<CommMonoidWithZero> for MonoidWire {
    fn from(m: CommMonoidWithZero) -> Self {
        MonoidWire { size: m.size(), unit: m.unit, table: m.table }
    }
}

impl CommMonoidWithZero {
    /// Validates the table exhaustively: closure, commutativity,
    /// associativity, unit law and absorption by `0`.
    pub fn new(size: usize, unit: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let carrier = PointedSet::new(size)?;
        if unit >= size {
            return Err(Error::Invalid(format!("unit {unit} outside carrier of size {size}")));
        }
        if table.len() != size || table.iter().any(|r| r.len() != size) {
            return Err(Error::Dimension(format!("multiplication table must be {size}x{size}")));
        }
        if table.iter().flatten().any(|&v| v >= size) {
            return Err(Error::Invalid("table entry outside carrier".into()));
        }
        for a in 0..size {
            if table[0][a] != 0 || table[a][0] != 0 {
                return Err(Error::Invalid(format!("0 is not absorbing: 0·{a} ≠ 0")));
            }
            if table[unit][a] != a {
                return Err(Error::Invalid(format!("unit law fails at {a}")));
            }
            for b in 0..size {
                if table[a][b] != table[b][a] {
                    return Err(Error::Invalid(format!("not commutative at ({a},{b})")));
                }
                for c in 0..size {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(CommMonoidWithZero { carrier, table, unit })
    }

    /// `𝕄₀ = {0, 1}`.
    pub fn m0() -> Self {
        Self::new(2, 1, vec![vec![0, 0], vec![0, 1]]).expect("𝕄₀ is a monoid")
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn carrier(&self) -> &PointedSet {
        &self.carrier
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// Every commutative monoid with zero on `{0, …, size-1}` (zero at `0`, any
/// unit), as literal tables. Not reduced up to isomorphism.
pub fn enumerate_monoids(size: usize) -> Vec<CommMonoidWithZero> {
    if size == 0 {
        return Vec::new();
    }
    if size == 1 {
        return vec![CommMonoidWithZero::new(1, 0, vec![vec![0]]).expect("trivial monoid")];
    }
    let mut out = Vec::new();
    for unit in 1..size {
        let others: Vec<usize> = (1..size).filter(|&x| x != unit).collect();
        let pairs: Vec<(usize, usize)> =
            others.iter().enumerate().flat_map(|(i, &a)| others[i..].iter().map(move |&b| (a, b))).collect();
        let total = size.pow(pairs.len() as u32);
        let mut table = vec![vec![0; size]; size];
        #[allow(clippy::needless_range_loop)]
        for a in 1..size {
            table[unit][a] = a;
            table[a][unit] = a;
        }
        for mut code in 0..total {
            for &(a, b) in &pairs {
                let v = code % size;
                code /= size;
                table[a][b] = v;
                table[b][a] = v;
            }
            if is_associative(&table) {
                out.push(CommMonoidWithZero { carrier: PointedSet::new(size).unwrap(), table: table.clone(), unit });
            }
        }
    }
    out
}

fn is_associative(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

/// `ℤ[M]/(𝟎)` in structure-constant form: the basis is the nonzero elements of
/// `M`, and the product of two basis elements is a basis element or zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidRing {
    /// Monoid elements indexing the basis, in increasing order.
    pub basis: Vec<usize>,
    /// `structure[i][j]` is the basis index of `basis[i]·basis[j]`, or `None`
    /// when the product is the monoid zero.
    pub structure: Vec<Vec<Option<usize>>>,
    /// Basis index of the ring unit (absent for the zero ring).
    pub unit: Option<usize>,
}

impl MonoidRing {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Underlying additive group, `ℤ^rank`.
    pub fn additive_group(&self) -> FgAbelianGroup {
        FgAbelianGroup::free(self.rank())
    }

    /// Product of formal ℤ-combinations of the basis.
    pub fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                if let Some(k) = self.structure[i][j] {
                    out[k] += a * b;
                }
            }
        }
        out
    }

    pub fn one(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        if let Some(u) = self.unit {
            v[u] = 1;
        }
        v
    }

    /// Checks commutativity, associativity and the unit law on the basis;
    /// bilinearity of `mul` extends them to all combinations.
    pub fn check_ring_axioms(&self) -> Result<()> {
        let n = self.rank();
        let e = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        for i in 0..n {
            if self.mul(&self.one(), &e(i)) != e(i) {
                return Err(Error::Invalid(format!("unit law fails on basis element {i}")));
            }
            for j in 0..n {
                if self.mul(&e(i), &e(j)) != self.mul(&e(j), &e(i)) {
                    return Err(Error::Invalid(format!("not commutative on ({i},{j})")));
                }
                for k in 0..n {
                    let l = self.mul(&self.mul(&e(i), &e(j)), &e(k));
                    let r = self.mul(&e(i), &self.mul(&e(j), &e(k)));
                    if l != r {
                        return Err(Error::Invalid(format!("not associative on ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The functor `β`: `M ↦ ℤ[M]/(𝟎)`.
pub fn monoid_ring(m: &CommMonoidWithZero) -> MonoidRing {
    let basis: Vec<usize> = (1..m.size()).collect();
    let index = |x: usize| if x == 0 { None } else { Some(x - 1) };
    let structure = basis.iter().map(|&a| basis.iter().map(|&b| index(m.mul(a, b))).collect()).collect();
    MonoidRing { unit: index(m.unit()), basis, structure }
}

/// A commutative monoid viewed as a monoid object in pointed sets: the
/// multiplication as a pointed map out of the smash square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmashRoundtrip {
    pub smash_square: PointedSet,
    /// Image in the carrier of each element of `M ∧ M`.
    pub smash_multiplication: Vec<usize>,
    pub monoid: CommMonoidWithZero,
}

/// Passes `m` through the smash-product description and back. The returned
/// monoid equals `m` on the nose.
pub fn smash_monoid_roundtrip(m: &CommMonoidWithZero) -> Result<SmashRoundtrip> {
    let c = m.carrier();
    let square = smash(c, c);
    let mut mult = vec![usize::MAX; square.size()];
    // the product map on M × M must send the wedge M ∨ M to 0
    for a in 0..c.size() {
        for b in 0..c.size() {
            let s = smash_index(c, a, b);
            let v = m.mul(a, b);
            if s == 0 && v != 0 {
                return Err(Error::Invalid(format!("{a}·{b} ≠ 0; product does not factor through the smash")));
            }
            if mult[s] != usize::MAX && mult[s] != v {
                return Err(Error::Invalid("product is not well defined on the smash".into()));
            }
            mult[s] = v;
        }
    }
    let table = (0..c.size()).map(|a| (0..c.size()).map(|b| mult[smash_index(c, a, b)]).collect()).collect();
    let monoid = CommMonoidWithZero::new(c.size(), m.unit(), table)?;
    Ok(SmashRoundtrip { smash_square: square, smash_multiplication: mult, monoid })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers() -> CommMonoidWithZero {
        // {0, 1, x} with x² = 0
        CommMonoidWithZero::new(3, 1, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]]).unwrap()
    }

    fn z2_with_zero() -> CommMonoidWithZero {
        // {0, 1, g} with g² = 1
        CommMonoidWithZero::new(3, 1, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn rejects_invalid_tables() {
        assert!(CommMonoidWithZero::new(2, 1, vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(CommMonoidWithZero::new(3, 1, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 1, 2]]).is_err());
        assert!(CommMonoidWithZero::new(2, 2, vec![vec![0, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn monoid_ring_examples() {
        let r = monoid_ring(&CommMonoidWithZero::m0());
        assert_eq!(r.rank(), 1);
        assert_eq!(r.mul(&[3], &[4]), vec![12]);

        let r = monoid_ring(&dual_numbers());
        assert_eq!(r.rank(), 2);
        r.check_ring_axioms().unwrap();
        assert_eq!(r.mul(&[0, 1], &[0, 1]), vec![0, 0]);

        let r = monoid_ring(&z2_with_zero());
        r.check_ring_axioms().unwrap();
        assert_eq!(r.mul(&[0, 1], &[0, 1]), vec![1, 0]);
        assert_eq!(r.additive_group(), FgAbelianGroup::free(2));
    }

    #[test]
    fn roundtrip_examples() {
        let m0 = CommMonoidWithZero::m0();
        assert_eq!(smash_monoid_roundtrip(&m0).unwrap().monoid, m0);
        let d = dual_numbers();
        let rt = smash_monoid_roundtrip(&d).unwrap();
        assert_eq!(rt.monoid, d);
        // smash square of {0,1,x} is {*, (1,1), (1,x), (x,1), (x,x)}
        assert_eq!(rt.smash_multiplication, vec![0, 1, 2, 2, 0]);
    }

    #[test]
    fn enumeration_counts_small_sizes() {
        assert_eq!(enumerate_monoids(1).len(), 1);
        assert_eq!(enumerate_monoids(2).len(), 1);
        // unit 1: x² ∈ {0, 1, x}; unit 2 mirrors it
        assert_eq!(enumerate_monoids(3).len(), 6);
    }

    #[test]
    fn json_schema() {
        let m: CommMonoidWithZero = serde_json::from_str(r#"{"size":2,"unit":1,"table":[[0,0],[0,1]]}"#).unwrap();
        assert_eq!(m, CommMonoidWithZero::m0());
        assert!(serde_json::from_str::<CommMonoidWithZero>(r#"{"size":2,"unit":1,"table":[[0,1],[0,1]]}"#).is_err());
    }
}
