use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::poly::Poly;
use super::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A rational function in t in canonical form: coprime numerator and monic
/// denominator.  Equality of canonical forms is equality of functions.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Canonicalizes `num / den`.
    pub fn normalize(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_exact(&g)?, den.div_exact(&g)?);
        let lead_inv = d.leading().unwrap().inv()?;
        n = n.scale(&lead_inv);
        d = d.scale(&lead_inv);
        Ok(RatFun { num: n, den: d })
    }

    pub fn zero() -> RatFun {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFun {
        RatFun::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> RatFun {
        RatFun {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// The variable t itself.
    pub fn t() -> RatFun {
        RatFun::from_poly(Poly::monomial(Scalar::one(), 1))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn scale(&self, c: &Scalar) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::normalize(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, other: &RatFun) -> Result<RatFun> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::normalize(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn pow(&self, k: u32) -> RatFun {
        (0..k).fold(RatFun::one(), |acc, _| &acc * self)
    }

    /// f(1/t), with both numerator and denominator multiplied by
    /// t^max(deg num, deg den) to clear negative powers.
    pub fn substitute_t_inverse(&self) -> RatFun {
        if self.is_zero() {
            return RatFun::zero();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let m = dn.max(dd);
        let num = self.num.reverse(dn + 1).shift(m - dn);
        let den = self.den.reverse(dd + 1).shift(m - dd);
        RatFun::normalize(num, den).expect("reversed denominator is nonzero")
    }

    /// Power-series coefficients of degrees 0..=cutoff.
    pub fn series_expand(&self, cutoff: usize) -> Result<TruncatedSeries> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NonExpandable);
        }
        let d0_inv = d0.inv()?;
        let den = self.den.coeffs();
        let mut out: Vec<Scalar> = Vec::with_capacity(cutoff + 1);
        for k in 0..=cutoff {
            let mut acc = self.num.coeff(k);
            for (i, d) in den.iter().enumerate().skip(1).take(k) {
                if !d.is_zero() {
                    acc = &acc - &(d * &out[k - i]);
                }
            }
            out.push(&acc * &d0_inv);
        }
        Ok(TruncatedSeries::new(0, out))
    }

    /// Writes the denominator as c * prod (1 - t^k) when possible.
    pub fn cyclotomic_denominator(&self) -> Option<(Scalar, Vec<usize>)> {
        let mut p = self.den.clone();
        let mut ks = Vec::new();
        while p.degree()? > 0 {
            let c0 = p.coeff(0);
            if c0.is_zero() {
                return None;
            }
            let k = (1..p.coeffs().len()).find(|&k| !p.coeff(k).is_zero())?;
            let (q, r) = p.div_rem(&Poly::one_minus_t_pow(k)).ok()?;
            if !r.is_zero() {
                return None;
            }
            ks.push(k);
            p = q;
        }
        ks.sort_unstable();
        Some((p.coeff(0), ks))
    }

    /// Human-readable form, with a product-of-(1 - t^k) denominator when one exists.
    pub fn render(&self) -> String {
        if self.is_polynomial() {
            return self.num.to_string();
        }
        if let Some((c, ks)) = self.cyclotomic_denominator() {
            let num = self.num.scale(&c.inv().expect("nonzero"));
            let mut groups: Vec<(usize, usize)> = Vec::new();
            for &k in &ks {
                match groups.last_mut() {
                    Some((g, m)) if *g == k => *m += 1,
                    _ => groups.push((k, 1)),
                }
            }
            let factors: String = groups
                .iter()
                .map(|&(k, m)| {
                    let base = match k {
                        1 => "(1 - t)".to_string(),
                        _ => format!("(1 - t^{k})"),
                    };
                    if m == 1 { base } else { format!("{base}^{m}") }
                })
                .collect();
            let den_str = if groups.len() == 1 && groups[0].1 == 1 {
                factors
            } else {
                format!("({factors})")
            };
            let num_str = if num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({num})")
            } else {
                num.to_string()
            };
            return format!("{num_str}/{den_str}");
        }
        format!("({})/({})", self.num, self.den)
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.coeffs(), "den": self.den.coeffs() })
    }

    pub fn from_json(v: &Value) -> Result<RatFun> {
        let poly = |key: &str| -> Result<Poly> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("rational function needs \"{key}\" array")))?;
            Ok(Poly::new(arr.iter().map(Scalar::from_json).collect::<Result<_>>()?))
        };
        RatFun::normalize(poly("num")?, poly("den")?)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::normalize(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RatFun::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        RatFun::normalize(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn one_minus_t_times_one_minus_t3() -> Poly {
        &p(&[1, -1]) * &p(&[1, 0, 0, -1])
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let f = RatFun::normalize(p(&[1, 0, -1]), one_minus_t_times_one_minus_t3()).unwrap();
        // (1 + t)/(1 - t^3), written with a monic denominator
        assert_eq!(f.num(), &p(&[-1, -1]));
        assert_eq!(f.den(), &p(&[-1, 0, 0, 1]));
        assert_eq!(f, RatFun::normalize(p(&[1, 1]), p(&[1, 0, 0, -1])).unwrap());
    }

    #[test]
    fn normalize_zero_and_errors() {
        assert_eq!(RatFun::normalize(Poly::zero(), p(&[1, -1])).unwrap(), RatFun::zero());
        assert_eq!(RatFun::normalize(p(&[1]), Poly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn already_reduced_trace_is_kept() {
        let den = one_minus_t_times_one_minus_t3();
        let f = RatFun::normalize(p(&[3, -5, 3]), den.clone()).unwrap();
        // (1 - t)(1 - t^3) = 1 - t - t^3 + t^4 is already monic
        assert_eq!(f.num(), &p(&[3, -5, 3]));
        assert_eq!(f.den(), &den);
        assert_eq!(f.render(), "(3 - 5t + 3t^2)/((1 - t)(1 - t^3))");
    }

    #[test]
    fn expansions() {
        let f = RatFun::normalize(p(&[1]), &p(&[1, -1]) * &p(&[1, -1])).unwrap();
        assert_eq!(f.series_expand(4).unwrap().coeffs_i64(), Some(vec![1, 2, 3, 4, 5]));
        assert_eq!(RatFun::one().series_expand(3).unwrap().coeffs_i64(), Some(vec![1, 0, 0, 0]));
        // Long division of (3 - t + 3t^2)/(1 - t - t^3 + t^4) by hand:
        // a0 = 3, a1 = -1 + a0 = 2, a2 = 3 + a1 = 5, a3 = a2 + a0 = 8
        let m = RatFun::normalize(p(&[3, -1, 3]), one_minus_t_times_one_minus_t3()).unwrap();
        assert_eq!(m.series_expand(3).unwrap().coeffs_i64(), Some(vec![3, 2, 5, 8]));
        let bad = RatFun::normalize(p(&[1]), p(&[0, 1])).unwrap();
        assert_eq!(bad.series_expand(3), Err(Error::NonExpandable));
    }

    #[test]
    fn t_inverse_examples() {
        let h = RatFun::normalize(p(&[1]), &p(&[1, -1]) * &p(&[1, -1])).unwrap();
        let expected = RatFun::normalize(p(&[0, 0, 1]), &p(&[1, -1]) * &p(&[1, -1])).unwrap();
        assert_eq!(h.substitute_t_inverse(), expected);
        assert_eq!(RatFun::constant(Scalar::from_int(5)).substitute_t_inverse(), RatFun::constant(Scalar::from_int(5)));
        let tr = RatFun::normalize(p(&[3, -5, 3]), one_minus_t_times_one_minus_t3()).unwrap();
        let tr_inv = RatFun::normalize(p(&[0, 0, 3, -5, 3]), one_minus_t_times_one_minus_t3()).unwrap();
        assert_eq!(tr.substitute_t_inverse(), tr_inv);
        assert_eq!(tr.substitute_t_inverse().substitute_t_inverse(), tr);
    }

    #[test]
    fn json_shape() {
        let f = RatFun::normalize(p(&[1]), p(&[1, -1])).unwrap();
        let v = f.to_json();
        assert_eq!(RatFun::from_json(&v).unwrap(), f);
        assert!(v.get("num").unwrap().is_array());
    }
}
