use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Laurent series known exactly for exponents `offset..=cutoff`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    offset: i64,
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    /// `coeffs[k]` is the coefficient of t^(offset + k).
    pub fn new(offset: i64, coeffs: Vec<Scalar>) -> Self {
        TruncatedSeries { offset, coeffs }
    }

    pub fn zeros(offset: i64, cutoff: i64) -> Self {
        let len = (cutoff - offset + 1).max(0) as usize;
        TruncatedSeries::new(offset, vec![Scalar::zero(); len])
    }

    pub fn from_ints(offset: i64, coeffs: &[i64]) -> Self {
        TruncatedSeries::new(offset, coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn cutoff(&self) -> i64 {
        self.offset + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of t^e; zero below the offset.  Panics above the cutoff.
    pub fn coeff(&self, e: i64) -> Scalar {
        assert!(e <= self.cutoff(), "coefficient t^{e} is beyond cutoff {}", self.cutoff());
        if e < self.offset {
            Scalar::zero()
        } else {
            self.coeffs[(e - self.offset) as usize].clone()
        }
    }

    pub fn coeff_mut(&mut self, e: i64) -> &mut Scalar {
        assert!(e >= self.offset && e <= self.cutoff());
        &mut self.coeffs[(e - self.offset) as usize]
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.as_rational().and_then(|r| r.to_i64())).collect()
    }

    /// Restricts to exponents <= cutoff.
    pub fn truncate(&self, cutoff: i64) -> TruncatedSeries {
        let keep = (cutoff - self.offset + 1).clamp(0, self.coeffs.len() as i64) as usize;
        TruncatedSeries::new(self.offset, self.coeffs[..keep].to_vec())
    }

    fn check_cutoff(&self, other: &TruncatedSeries) -> Result<()> {
        if self.cutoff() != other.cutoff() {
            return Err(Error::DimensionMismatch(format!(
                "series cutoffs differ: {} vs {}",
                self.cutoff(),
                other.cutoff()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_cutoff(other)?;
        let offset = self.offset.min(other.offset);
        let cutoff = self.cutoff();
        let coeffs = (offset..=cutoff).map(|e| &self.coeff(e) + &other.coeff(e)).collect();
        Ok(TruncatedSeries::new(offset, coeffs))
    }

    pub fn scale(&self, c: &Scalar) -> TruncatedSeries {
        TruncatedSeries::new(self.offset, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by t^k, keeping the cutoff fixed.
    pub fn shift(&self, k: i64) -> TruncatedSeries {
        let cutoff = self.cutoff();
        let moved = TruncatedSeries::new(self.offset + k, self.coeffs.clone());
        if k >= 0 {
            moved.truncate(cutoff)
        } else {
            // Lowering exponents cannot invent coefficients above the old cutoff + k.
            moved
        }
    }

    /// Equality as series on a common exponent range, ignoring leading zeros.
    pub fn agrees_with(&self, other: &TruncatedSeries) -> bool {
        if self.cutoff() != other.cutoff() {
            return false;
        }
        let lo = self.offset.min(other.offset);
        (lo..=self.cutoff()).all(|e| self.coeff(e) == other.coeff(e))
    }

    pub fn to_json(&self) -> Value {
        json!({ "offset": self.offset, "cutoff": self.cutoff(), "coeffs": self.coeffs })
    }

    pub fn from_json(v: &Value) -> Result<TruncatedSeries> {
        let offset = v
            .get("offset")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("series needs integer \"offset\"".into()))?;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("series needs \"coeffs\" array".into()))?
            .iter()
            .map(Scalar::from_json)
            .collect::<Result<Vec<_>>>()?;
        let s = TruncatedSeries::new(offset, coeffs);
        if let Some(c) = v.get("cutoff").and_then(Value::as_i64) {
            if c != s.cutoff() {
                return Err(Error::Parse(format!("series cutoff {c} disagrees with coefficient count")));
            }
        }
        Ok(s)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        if self.offset == 0 {
            write!(f, "[{}] + O(t^{})", parts.join(", "), self.cutoff() + 1)
        } else {
            write!(f, "t^{} [{}] + O(t^{})", self.offset, parts.join(", "), self.cutoff() + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_with_offsets() {
        let a = TruncatedSeries::from_ints(0, &[1, 2, 3]);
        let b = TruncatedSeries::from_ints(-1, &[5, 1, 1, 1]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.offset(), -1);
        assert_eq!(s.coeffs_i64(), Some(vec![5, 2, 3, 4]));
        let c = TruncatedSeries::from_ints(0, &[1]);
        assert!(a.add(&c).is_err());
    }

    #[test]
    fn shift_keeps_cutoff() {
        let a = TruncatedSeries::from_ints(0, &[1, 2, 3, 4]);
        let s = a.shift(2);
        assert_eq!(s.cutoff(), 3);
        assert_eq!(s.coeff(2), Scalar::from_int(1));
        assert_eq!(s.coeff(3), Scalar::from_int(2));
        assert_eq!(s.coeff(0), Scalar::zero());
    }

    #[test]
    fn json_round_trip() {
        let a = TruncatedSeries::from_ints(-2, &[1, 0, 7]);
        assert_eq!(TruncatedSeries::from_json(&a.to_json()).unwrap(), a);
    }
}
