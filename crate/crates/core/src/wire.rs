//! JSON wire formats. Integers travel as decimal strings so values beyond
//! 64 bits survive transit; plain JSON numbers are accepted on input.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Error;
use crate::znf::{ChainComplex, FgAbelianGroup, IntMatrix};

/// Arbitrary-precision integer serialized as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalInt(pub BigInt);

impl Serialize for DecimalInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for DecimalInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = DecimalInt;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<DecimalInt, E> {
                Ok(DecimalInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<DecimalInt, E> {
                Ok(DecimalInt(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<DecimalInt, E> {
                BigInt::from_str(v.trim()).map(DecimalInt).map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn to_decimal(v: &[BigInt]) -> Vec<DecimalInt> {
    v.iter().cloned().map(DecimalInt).collect()
}

pub fn from_decimal(v: Vec<DecimalInt>) -> Vec<BigInt> {
    v.into_iter().map(|d| d.0).collect()
}

#[derive(Serialize, Deserialize)]
pub struct MatrixWire {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<DecimalInt>,
}

impl TryFrom<MatrixWire> for IntMatrix {
    type Error = Error;

    fn try_from(w: MatrixWire) -> Result<Self, Error> {
        IntMatrix::new(w.rows, w.cols, from_decimal(w.entries)).map_err(|e| Error::Schema(e.to_string()))
    }
}

impl From<IntMatrix> for MatrixWire {
    fn from(m: IntMatrix) -> Self {
        MatrixWire { rows: m.rows(), cols: m.cols(), entries: to_decimal(m.entries()) }
    }
}

#[derive(Serialize, Deserialize)]
pub struct GroupWire {
    pub free_rank: usize,
    #[serde(default)]
    pub invariant_factors: Vec<DecimalInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<IntMatrix>,
}

impl TryFrom<GroupWire> for FgAbelianGroup {
    type Error = Error;

    fn try_from(w: GroupWire) -> Result<Self, Error> {
        let g = FgAbelianGroup::new(w.free_rank, from_decimal(w.invariant_factors)).map_err(|e| Error::Schema(e.to_string()))?;
        match w.presentation {
            Some(p) => g.with_presentation(p).map_err(|e| Error::Schema(e.to_string())),
            None => Ok(g),
        }
    }
}

impl From<FgAbelianGroup> for GroupWire {
    fn from(g: FgAbelianGroup) -> Self {
        GroupWire {
            free_rank: g.free_rank(),
            invariant_factors: to_decimal(g.invariant_factors()),
            presentation: g.presentation().cloned(),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct ComplexWire {
    pub lowest_degree: i64,
    pub levels: Vec<usize>,
    #[serde(default)]
    pub differentials: Vec<IntMatrix>,
}

impl TryFrom<ComplexWire> for ChainComplex {
    type Error = Error;

    fn try_from(w: ComplexWire) -> Result<Self, Error> {
        ChainComplex::new(w.lowest_degree, w.levels, w.differentials)
    }
}

impl From<ChainComplex> for ComplexWire {
    fn from(c: ChainComplex) -> Self {
        ComplexWire { lowest_degree: c.lowest_degree(), levels: c.levels().to_vec(), differentials: c.differentials().to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_uses_decimal_strings() {
        let m = IntMatrix::from_rows(&[&[1, -2]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":["1","-2"]}"#);
        let big = r#"{"rows":1,"cols":1,"entries":["123456789012345678901234567890"]}"#;
        let m: IntMatrix = serde_json::from_str(big).unwrap();
        assert_eq!(m.get(0, 0).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn matrix_json_accepts_numbers_and_checks_shape() {
        let m: IntMatrix = serde_json::from_str(r#"{"rows":2,"cols":1,"entries":[3,4]}"#).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[&[3], &[4]]));
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows":2,"cols":2,"entries":[3,4]}"#).is_err());
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows":1,"cols":1,"entries":["x"]}"#).is_err());
    }

    #[test]
    fn complex_json_validates_boundary() {
        let ok = r#"{"lowest_degree":0,"levels":[1,1],"differentials":[{"rows":1,"cols":1,"entries":["2"]}]}"#;
        let c: ChainComplex = serde_json::from_str(ok).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), ok);
        let bad = r#"{"lowest_degree":0,"levels":[1,1,1],"differentials":[{"rows":1,"cols":1,"entries":["1"]},{"rows":1,"cols":1,"entries":["1"]}]}"#;
        assert!(serde_json::from_str::<ChainComplex>(bad).is_err());
    }

    #[test]
    fn group_json_roundtrip() {
        let g = FgAbelianGroup::free(1).direct_sum(&FgAbelianGroup::cyclic(6));
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"free_rank":1,"invariant_factors":["6"]}"#);
        assert_eq!(serde_json::from_str::<FgAbelianGroup>(&s).unwrap(), g);
    }
}
