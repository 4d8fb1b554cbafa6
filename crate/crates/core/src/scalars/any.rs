use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::fp2::{inv_raw, least_nonresidue, mul_raw, sqrt_raw};
use super::{Field, Quad, Rational, ScalarError};

/// A scalar whose characteristic is only known at runtime.
///
/// This is the interchange form: JSON files carry it, and arithmetic on it
/// checks that both operands live in the same field. The generic code works
/// with the concrete [`Field`] types instead.
///
/// JSON encoding: a characteristic-0 value is a list of `[radicand, num, den]`
/// triples; a characteristic-`p` value `a + bδ` is the triple `[p, a, b]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyScalar {
    Quad(Quad),
    Fp { p: u32, a: u32, b: u32 },
}

impl AnyScalar {
    pub fn characteristic(&self) -> u32 {
        match self {
            AnyScalar::Quad(_) => 0,
            AnyScalar::Fp { p, .. } => *p,
        }
    }

    fn same_field(&self, o: &Self) -> Result<(), ScalarError> {
        let (p, q) = (self.characteristic(), o.characteristic());
        if p == q {
            Ok(())
        } else {
            Err(ScalarError::CharacteristicMismatch(p, q))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ScalarError> {
        self.same_field(o)?;
        Ok(match (self, o) {
            (AnyScalar::Quad(x), AnyScalar::Quad(y)) => AnyScalar::Quad(x.clone() + y.clone()),
            (AnyScalar::Fp { p, a, b }, AnyScalar::Fp { a: c, b: d, .. }) => {
                AnyScalar::Fp { p: *p, a: (a + c) % p, b: (b + d) % p }
            }
            _ => unreachable!("same_field checked"),
        })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        self.same_field(o)?;
        Ok(match (self, o) {
            (AnyScalar::Quad(x), AnyScalar::Quad(y)) => AnyScalar::Quad(x.clone() * y.clone()),
            (AnyScalar::Fp { p, a, b }, AnyScalar::Fp { a: c, b: d, .. }) => {
                let (a, b) = mul_raw(*p, least_nonresidue(*p), (*a, *b), (*c, *d));
                AnyScalar::Fp { p: *p, a, b }
            }
            _ => unreachable!("same_field checked"),
        })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            AnyScalar::Quad(x) => AnyScalar::Quad(-x.clone()),
            AnyScalar::Fp { p, a, b } => AnyScalar::Fp { p: *p, a: (p - a) % p, b: (p - b) % p },
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        match self {
            AnyScalar::Quad(x) => x.try_inv().map(AnyScalar::Quad),
            AnyScalar::Fp { p, a, b } => {
                inv_raw(*p, least_nonresidue(*p), (*a, *b)).map(|(a, b)| AnyScalar::Fp { p: *p, a, b })
            }
        }
    }

    pub fn sqrt(&self) -> Result<Self, ScalarError> {
        match self {
            AnyScalar::Quad(x) => x.sqrt_prime().map(AnyScalar::Quad),
            AnyScalar::Fp { p, a, b: 0 } => {
                let (a, b) = sqrt_raw(*p, *a);
                Ok(AnyScalar::Fp { p: *p, a, b })
            }
            AnyScalar::Fp { .. } => Err(ScalarError::NotInPrimeSubfield(format!("{self:?}"))),
        }
    }
}

impl Serialize for AnyScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AnyScalar::Quad(q) => {
                let mut seq = s.serialize_seq(Some(q.terms().len()))?;
                for (d, r) in q.terms() {
                    seq.serialize_element(&(*d as i128, *r.numer(), *r.denom()))?;
                }
                seq.end()
            }
            AnyScalar::Fp { p, a, b } => (p, a, b).serialize(s),
        }
    }
}

fn as_i128(v: &serde_json::Value) -> Option<i128> {
    v.as_i64().map(i128::from).or_else(|| v.as_u64().map(i128::from))
}

impl AnyScalar {
    pub fn from_json(v: &serde_json::Value) -> Result<Self, ScalarError> {
        let bad = || ScalarError::Malformed(v.to_string());
        let items = v.as_array().ok_or_else(bad)?;
        let is_fp = items.len() == 3 && items.iter().all(|x| x.is_number());
        if is_fp {
            let nums: Vec<i128> = items.iter().map(as_i128).collect::<Option<_>>().ok_or_else(bad)?;
            let p = u32::try_from(nums[0]).map_err(|_| bad())?;
            if p < 3 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                return Err(bad());
            }
            let red = |x: i128| x.rem_euclid(p as i128) as u32;
            return Ok(AnyScalar::Fp { p, a: red(nums[1]), b: red(nums[2]) });
        }
        let mut acc = Quad::default();
        for t in items {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(bad)?;
            let (d, n, den) = (as_i128(&t[0]), as_i128(&t[1]), as_i128(&t[2]));
            let (d, n, den) = (d.ok_or_else(bad)?, n.ok_or_else(bad)?, den.ok_or_else(bad)?);
            if d < 1 || den == 0 || super::squarefree_part(d as u128).0 != 1 {
                return Err(bad());
            }
            acc = acc + Quad::term(d as u64, Rational::new(n, den));
        }
        Ok(AnyScalar::Quad(acc))
    }
}

impl<'de> Deserialize<'de> for AnyScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        AnyScalar::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Fp2;
    use num_traits::One;

    #[test]
    fn mismatched_characteristics_are_rejected() {
        let a = Quad::one().to_any();
        let b = Fp2::<5>::one().to_any();
        assert_eq!(a.checked_add(&b), Err(ScalarError::CharacteristicMismatch(0, 5)));
        let c = Fp2::<7>::one().to_any();
        assert_eq!(b.checked_mul(&c), Err(ScalarError::CharacteristicMismatch(5, 7)));
    }

    #[test]
    fn runtime_arithmetic_agrees_with_typed() {
        let x = Fp2::<7>::new(3, 5);
        let y = Fp2::<7>::new(6, 2);
        assert_eq!(x.to_any().checked_mul(&y.to_any()).unwrap(), (x * y).to_any());
        assert_eq!(x.to_any().inv().unwrap(), x.try_inv().unwrap().to_any());
    }

    #[test]
    fn json_round_trip() {
        let q = Quad::from_ratio(1, 2).unwrap() + Quad::sqrt_int(6);
        let v = serde_json::to_value(q.to_any()).unwrap();
        assert_eq!(v, serde_json::json!([[1, 1, 2], [6, 1, 1]]));
        assert_eq!(AnyScalar::from_json(&v).unwrap(), q.to_any());
        let f = Fp2::<5>::delta().to_any();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v, serde_json::json!([5, 0, 1]));
        assert_eq!(AnyScalar::from_json(&v).unwrap(), f);
    }

    #[test]
    fn malformed_json_is_an_error() {
        assert!(AnyScalar::from_json(&serde_json::json!("x")).is_err());
        assert!(AnyScalar::from_json(&serde_json::json!([[4, 1, 1]])).is_err());
        assert!(AnyScalar::from_json(&serde_json::json!([9, 1, 1])).is_err());
    }
}
