//! Elements of the cyclotomic field Q(zeta_N), stored in the power basis of
//! Q[x]/Phi_N(x).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Integer coefficients of Phi_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order zero");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut quotient = vec![0i64; n as usize + 1];
    quotient[0] = -1;
    quotient[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let divisor = cyclotomic_polynomial(d);
            quotient = divide_monic_exact(&quotient, &divisor);
        }
    }
    let result = Arc::new(quotient);
    cache.lock().unwrap().insert(n, Arc::clone(&result));
    result
}

fn divide_monic_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![0];
    }
    let mut q = vec![0i64; rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

/// Euler's totient, i.e. the degree of Phi_n.
pub fn totient(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// An element of Q(zeta_N).  `coeffs` has length phi(N) and is fully reduced
/// modulo Phi_N, so equality within one order is coefficient comparison.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Reduces an arbitrary coefficient list (lowest power first) modulo Phi_N.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        let mut c = coeffs;
        for k in (deg..c.len()).rev() {
            let lead = std::mem::take(&mut c[k]);
            if lead.is_zero() {
                continue;
            }
            for (i, &p) in phi.iter().enumerate().take(deg) {
                if p != 0 {
                    let delta = lead.mul_ref(&Rational::from(p));
                    c[k - deg + i] = &c[k - deg + i] - &delta;
                }
            }
        }
        c.resize(deg, Rational::zero());
        Cyclotomic { order, coeffs: c }
    }

    /// zeta_N^k.
    pub fn zeta_power(order: u32, power: i64) -> Self {
        let e = power.rem_euclid(order as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Cyclotomic::from_coeffs(order, c)
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        Cyclotomic::from_coeffs(order, vec![r])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value if every non-constant coefficient vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Rational::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    /// Image under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^(M/N).  Requires N | M.
    pub fn embed(&self, target: u32) -> Cyclotomic {
        assert!(
            target % self.order == 0,
            "cannot embed order {} into {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut c = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            c[k * step] = a.clone();
        }
        Cyclotomic::from_coeffs(target, c)
    }

    pub(crate) fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        debug_assert_eq!(self.order, other.order);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    pub(crate) fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub(crate) fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        debug_assert_eq!(self.order, other.order);
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); (2 * n).max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j].add_assign_ref(&a.mul_ref(b));
                }
            }
        }
        Cyclotomic::from_coeffs(self.order, prod)
    }

    pub(crate) fn scale(&self, r: &Rational) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
    pub(crate) fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| Rational::from(c))
            .collect();
        let mut r0 = phi;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = qpoly_divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let qs1 = qpoly_mul(&q, &s1);
            let next = qpoly_sub(&s0, &qs1);
            s0 = std::mem::replace(&mut s1, next);
        }
        // r0 is a nonzero constant because Phi_N is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].inv()?;
        let scaled = s0.iter().map(|a| a * &c).collect();
        Ok(Cyclotomic::from_coeffs(self.order, scaled))
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Rational::is_zero) {
        v.pop();
    }
    v
}

fn qpoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x - y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => -y,
            (None, None) => Rational::zero(),
        })
        .collect();
    trim(out)
}

fn qpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_assign_ref(&x.mul_ref(y));
        }
    }
    trim(out)
}

fn qpoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b.last().expect("nonzero divisor").inv().expect("nonzero lead");
    let mut q = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &c.mul_ref(y);
        }
        q[shift] = c;
        rem = trim(rem);
    }
    (trim(q), rem)
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z{}", self.order)?,
                (1, false) => write!(f, "{mag}*z{}", self.order)?,
                (_, true) => write!(f, "z{}^{k}", self.order)?,
                (_, false) => write!(f, "{mag}*z{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(15), 8);
        // Phi_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn zeta_three_cubed_by_hand() {
        // x^3 = x * x^2 = x * (-1 - x) = -x - x^2 = -x + 1 + x = 1 mod x^2 + x + 1
        let z = Cyclotomic::zeta_power(3, 1);
        let cube = z.mul(&z).mul(&z);
        assert_eq!(cube.as_rational(), Some(Rational::one()));
    }

    #[test]
    fn inverse_of_one_plus_zeta5() {
        let z = Cyclotomic::zeta_power(5, 1);
        let one = Cyclotomic::from_rational(5, Rational::one());
        let a = one.add(&z);
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv).as_rational(), Some(Rational::one()));
    }

    #[test]
    fn embedding_respects_powers() {
        let z3 = Cyclotomic::zeta_power(3, 2);
        assert_eq!(z3.embed(12), Cyclotomic::zeta_power(12, 8));
    }
}
