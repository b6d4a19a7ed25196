//! Exact scalars: rationals and elements of cyclotomic fields.
//!
//! Mixed arithmetic promotes into the smallest common cyclotomic field
//! Q(zeta_lcm), and every result is demoted back to a plain rational whenever
//! its non-constant coefficients vanish. Both steps are canonical, so results
//! never depend on the order in which promotions happened.

mod cyclotomic;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};
pub use rational::Rational;

use crate::error::{Error, Result};

#[derive(Clone)]
pub enum Scalar {
    Rational(Rational),
    Cyclotomic(Cyclotomic),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(Rational::from(n))
    }

    pub fn rational(p: i64, q: i64) -> Result<Self> {
        Ok(Scalar::Rational(Rational::new(p, q)?))
    }

    /// zeta_N^k, demoted to a rational when it equals 1 or -1.
    pub fn root_of_unity(order: u32, power: i64) -> Self {
        assert!(order >= 1, "root of unity of order zero");
        let e = power.rem_euclid(order as i64);
        if e == 0 {
            return Scalar::one();
        }
        if 2 * e == order as i64 {
            return Scalar::from_int(-1);
        }
        Scalar::from_cyclotomic(Cyclotomic::zeta_power(order, e))
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        match c.as_rational() {
            Some(r) => Scalar::Rational(r),
            None => Scalar::Cyclotomic(c),
        }
    }

    /// Order N of the cyclotomic field the value is stored in (1 for rationals).
    pub fn field_order(&self) -> u32 {
        match self {
            Scalar::Rational(_) => 1,
            Scalar::Cyclotomic(c) => c.order(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclotomic(_) => None,
        }
    }

    /// Representation inside Q(zeta_order); `order` must be a multiple of the field order.
    pub fn to_cyclotomic(&self, order: u32) -> Cyclotomic {
        match self {
            Scalar::Rational(r) => Cyclotomic::from_rational(order, r.clone()),
            Scalar::Cyclotomic(c) => c.embed(order),
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        rat: impl Fn(&Rational, &Rational) -> Rational,
        cyc: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat(a, b)),
            _ => {
                let order = cyclotomic::lcm(self.field_order(), other.field_order());
                Scalar::from_cyclotomic(cyc(&self.to_cyclotomic(order), &other.to_cyclotomic(order)))
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => Ok(Scalar::Rational(r.inv()?)),
            Scalar::Cyclotomic(c) => Ok(Scalar::from_cyclotomic(c.inv()?)),
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
            return Ok(Scalar::Rational(a.div(b)?));
        }
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Least m <= bound with self^m = 1, or `None`.
    pub fn multiplicative_order(&self, bound: u32) -> Result<Option<u32>> {
        if self.is_zero() {
            return Err(Error::ZeroInput("multiplicative order of zero".into()));
        }
        let mut power = self.clone();
        for m in 1..=bound {
            if power.is_one() {
                return Ok(Some(m));
            }
            power = &power * self;
        }
        Ok(None)
    }

    /// Writes a root of unity as zeta_m^k with gcd(k, m) = 1, returning (k, m).
    ///
    /// Inside Q(zeta_N) every root of unity has order dividing lcm(2, N), so the
    /// search is exhaustive and `None` certifies infinite multiplicative order.
    pub fn root_of_unity_exponent(&self) -> Option<(u32, u32)> {
        if self.is_zero() {
            return None;
        }
        let big = cyclotomic::lcm(2, self.field_order());
        let order = self.multiplicative_order(big).ok()??;
        (0..order)
            .find(|&k| k.gcd(&order) == 1 && Scalar::root_of_unity(order, k as i64) == *self)
            .map(|k| (k, order))
    }

    fn to_json(&self) -> Value {
        match self {
            Scalar::Rational(r) => json!({ "rational": [int_json(r.numerator()), int_json(r.denominator())] }),
            Scalar::Cyclotomic(c) => {
                let coeffs: Vec<Value> = c
                    .coeffs()
                    .iter()
                    .map(|q| json!([int_json(q.numerator()), int_json(q.denominator())]))
                    .collect();
                json!({ "cyclotomic": { "order": c.order(), "coeffs": coeffs } })
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Scalar> {
        let bad = |msg: &str| Error::Parse(format!("scalar literal {v}: {msg}"));
        if let Some(n) = v.as_i64() {
            return Ok(Scalar::from_int(n));
        }
        let obj = v.as_object().ok_or_else(|| bad("expected object"))?;
        if let Some(pair) = obj.get("rational") {
            return Ok(Scalar::Rational(parse_fraction(pair).map_err(|e| bad(&e))?));
        }
        if let Some(z) = obj.get("zeta") {
            let order = z
                .get("order")
                .and_then(Value::as_u64)
                .filter(|&n| n >= 1)
                .ok_or_else(|| bad("zeta needs a positive order"))?;
            let power = z.get("power").and_then(Value::as_i64).unwrap_or(1);
            return Ok(Scalar::root_of_unity(order as u32, power));
        }
        if let Some(c) = obj.get("cyclotomic") {
            let order = c
                .get("order")
                .and_then(Value::as_u64)
                .filter(|&n| n >= 1)
                .ok_or_else(|| bad("cyclotomic needs a positive order"))?;
            let coeffs = c
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("cyclotomic needs coeffs"))?
                .iter()
                .map(parse_fraction)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| bad(&e))?;
            return Ok(Scalar::from_cyclotomic(Cyclotomic::from_coeffs(order as u32, coeffs)));
        }
        Err(bad("expected one of rational, zeta, cyclotomic"))
    }
}

fn int_json(n: &num_bigint::BigInt) -> Value {
    use num_traits::ToPrimitive;
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

fn parse_int(v: &Value) -> std::result::Result<num_bigint::BigInt, String> {
    if let Some(i) = v.as_i64() {
        return Ok(i.into());
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format!("not an integer: {v}"))
}

fn parse_fraction(v: &Value) -> std::result::Result<Rational, String> {
    match v.as_array().map(Vec::as_slice) {
        Some([p, q]) => Rational::new(parse_int(p)?, parse_int(q)?).map_err(|e| e.to_string()),
        Some([p]) => Ok(Rational::from_integer(parse_int(p)?)),
        _ => Err(format!("expected [p, q], got {v}")),
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            _ => {
                let order = cyclotomic::lcm(self.field_order(), other.field_order());
                self.to_cyclotomic(order) == other.to_cyclotomic(order)
            }
        }
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, Cyclotomic::add)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, |a, b| a.add(&b.neg()))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Cyclotomic(c)) | (Scalar::Cyclotomic(c), Scalar::Rational(a)) => {
                Scalar::from_cyclotomic(c.scale(a))
            }
            _ => self.binary(rhs, |a, b| a * b, Cyclotomic::mul),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Cyclotomic(c) => {
                if let Some((k, m)) = self.root_of_unity_exponent() {
                    if k == 1 {
                        write!(f, "z{m}")
                    } else {
                        write!(f, "z{m}^{k}")
                    }
                } else {
                    write!(f, "({c})")
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        Scalar::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Scalar {
        Scalar::root_of_unity(n, k)
    }

    #[test]
    fn roots_of_unity_basic() {
        assert_eq!(z(1, 0), Scalar::one());
        assert_eq!(z(2, 1), Scalar::from_int(-1));
        let cube = z(3, 1).pow(3).unwrap();
        assert_eq!(cube, Scalar::one());
        assert!(matches!(z(3, 1), Scalar::Cyclotomic(_)));
    }

    #[test]
    fn arithmetic_examples() {
        let a = Scalar::rational(1, 2).unwrap();
        let b = Scalar::rational(1, 3).unwrap();
        assert_eq!(&a + &b, Scalar::rational(5, 6).unwrap());
        assert_eq!(&z(3, 1) * &z(3, 2), Scalar::one());
        assert!(matches!(&z(3, 1) * &z(3, 2), Scalar::Rational(_)));
    }

    #[test]
    fn doubled_zeta3_squared_matches_hand_reduction() {
        // (2x)^2 = 4x^2 = 4(-1 - x) mod x^2 + x + 1
        let s = &z(3, 1) + &z(3, 1);
        let sq = &s * &s;
        let expected = Scalar::from_cyclotomic(Cyclotomic::from_coeffs(
            3,
            vec![Rational::from(-4), Rational::from(-4)],
        ));
        assert_eq!(sq, expected);
        assert_eq!(sq, &Scalar::from_int(4) * &z(3, 2));
    }

    #[test]
    fn multiplicative_orders() {
        assert_eq!(Scalar::from_int(-1).multiplicative_order(10), Ok(Some(2)));
        assert_eq!(z(3, 1).multiplicative_order(10), Ok(Some(3)));
        assert_eq!(Scalar::from_int(2).multiplicative_order(10), Ok(None));
        assert!(Scalar::zero().multiplicative_order(10).is_err());
    }

    #[test]
    fn mixed_orders_compare_after_embedding() {
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(12, 4).to_cyclotomic(12), z(3, 1).to_cyclotomic(12));
        assert_eq!(&z(4, 1) * &z(4, 1), Scalar::from_int(-1));
        assert_eq!(&z(4, 1) * &z(3, 1), z(12, 7));
    }

    #[test]
    fn root_of_unity_exponents() {
        assert_eq!(z(6, 5).root_of_unity_exponent(), Some((5, 6)));
        assert_eq!(z(10, 4).root_of_unity_exponent(), Some((2, 5)));
        assert_eq!(Scalar::from_int(-1).root_of_unity_exponent(), Some((1, 2)));
        assert_eq!(Scalar::one().root_of_unity_exponent(), Some((0, 1)));
        // -zeta_3 has order 6 and lives in Q(zeta_3).
        assert_eq!((-z(3, 1)).root_of_unity_exponent(), Some((5, 6)));
        assert_eq!(Scalar::from_int(2).root_of_unity_exponent(), None);
        let not_root = &z(5, 1) + &Scalar::one();
        assert_eq!(not_root.root_of_unity_exponent(), None);
    }

    #[test]
    fn division() {
        assert_eq!(Scalar::one().try_div(&Scalar::zero()), Err(Error::DivisionByZero));
        let q = z(5, 2).try_div(&z(5, 3)).unwrap();
        assert_eq!(q, z(5, 4));
    }

    #[test]
    fn json_literals() {
        let lits = [
            (json!({"rational": [3, 6]}), Scalar::rational(1, 2).unwrap()),
            (json!({"zeta": {"order": 3, "power": 2}}), z(3, 2)),
            (json!({"cyclotomic": {"order": 3, "coeffs": [[0, 1], [1, 1]]}}), z(3, 1)),
            (json!(-4), Scalar::from_int(-4)),
        ];
        for (v, expected) in lits {
            let s = Scalar::from_json(&v).unwrap();
            assert_eq!(s, expected);
            let back: Scalar = serde_json::from_value(serde_json::to_value(&s).unwrap()).unwrap();
            assert_eq!(back, s);
        }
        assert!(Scalar::from_json(&json!({"rational": [1, 0]})).is_err());
        assert!(Scalar::from_json(&json!({"zeta": {"order": 0}})).is_err());
    }
}
