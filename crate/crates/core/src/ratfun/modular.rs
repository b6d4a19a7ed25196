//! Modular gcd of polynomials over Q(zeta_N).
//!
//! For a prime `p = 1 (mod N)` and a primitive N-th root of unity `w` mod `p`,
//! each map `zeta_N -> w^j` with `j` coprime to `N` sends the p-integral part of
//! Q(zeta_N) to F_p.  The monic gcds of the images at all these conjugates
//! determine the coordinates of the gcd mod `p` (a Vandermonde solve); several
//! primes are combined by CRT and rational reconstruction, and the candidate is
//! accepted only once it divides both inputs exactly.  Its degree never exceeds
//! the degree of an image gcd, which never falls below the true gcd degree, so
//! an exact common divisor found this way is the gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::poly::Poly;
use crate::scalar::{Cyclotomic, Rational, Scalar};

/// Largest number of primes tried before falling back to Euclid.
const MAX_PRIMES: usize = 400;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A primitive `order`-th root of unity mod `p`; requires `order | p - 1`.
fn primitive_root_of_unity(order: u64, p: u64) -> u64 {
    let factors = prime_factors(order);
    (2..p)
        .map(|g| pow_mod(g, (p - 1) / order, p))
        .find(|&w| factors.iter().all(|q| pow_mod(w, order / q, p) != 1))
        .expect("F_p^* is cyclic")
}

struct Reduction {
    p: u64,
    order: u32,
    w: u64,
}

impl Reduction {
    fn rational(&self, r: &Rational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let den = r.denominator().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = r.numerator().mod_floor(&p).to_u64()?;
        Some(num * inv_mod(den, self.p) % self.p)
    }

    fn scalar(&self, c: &Scalar) -> Option<u64> {
        match c {
            Scalar::Rational(r) => self.rational(r),
            Scalar::Cyclotomic(z) => {
                let zeta = pow_mod(self.w, u64::from(self.order / z.order()), self.p);
                let mut acc = 0;
                let mut power = 1;
                for r in z.coeffs() {
                    acc = (acc + self.rational(r)? * power) % self.p;
                    power = power * zeta % self.p;
                }
                Some(acc)
            }
        }
    }

    fn poly(&self, f: &Poly) -> Option<Vec<u64>> {
        f.coeffs().iter().map(|c| self.scalar(c)).collect()
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over F_p of two nonzero trimmed polynomials.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * inv % p;
            let shift = a.len() - b.len();
            for (i, &x) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - c * x % p) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    let inv = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|x| x * inv % p).collect()
}

/// Inverse of the Vandermonde matrix `V[j][i] = nodes[j]^i` mod p.
fn vandermonde_inverse(nodes: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = nodes.len();
    let mut m: Vec<Vec<u64>> = nodes
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let mut row: Vec<u64> = std::iter::successors(Some(1u64), |y| Some(y * x % p)).take(n).collect();
            row.extend((0..n).map(|k| u64::from(k == j)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0).expect("distinct nodes");
        m.swap(col, piv);
        let inv = inv_mod(m[col][col], p);
        for x in m[col].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// `r / s` with `r = u s (mod m)` and both below `sqrt(m / 2)` in size.
fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound: BigInt = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::from(0), BigInt::from(1));
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.magnitude() > bound.magnitude() {
        return None;
    }
    Rational::new(r1, t1).ok()
}

/// Coordinates of the monic gcd mod `p`: `coords[k][i]` is the coefficient of
/// `zeta^i` in the coefficient of `t^k`.  `None` for an unusable prime.
fn gcd_coordinates(a: &Poly, b: &Poly, order: u32, p: u64) -> Option<Vec<Vec<u64>>> {
    let n = u64::from(order);
    let w = primitive_root_of_unity(n, p);
    let mut images = Vec::new();
    let mut nodes = Vec::new();
    for j in (1..=n).filter(|j| j.gcd(&n) == 1) {
        let red = Reduction {
            p,
            order,
            w: pow_mod(w, j, p),
        };
        let (mut x, mut y) = (red.poly(a)?, red.poly(b)?);
        let (da, db) = (x.len(), y.len());
        trim(&mut x);
        trim(&mut y);
        if x.len() != da || y.len() != db {
            return None;
        }
        images.push(gcd_mod(x, y, p));
        nodes.push(red.w);
    }
    let len = images[0].len();
    if images.iter().any(|g| g.len() != len) {
        return None;
    }
    let vinv = vandermonde_inverse(&nodes, p);
    Some(
        (0..len)
            .map(|k| {
                vinv.iter()
                    .map(|row| row.iter().zip(&images).fold(0, |acc, (v, g)| (acc + v * g[k]) % p))
                    .collect()
            })
            .collect(),
    )
}

fn to_poly(order: u32, coords: &[Vec<Rational>]) -> Poly {
    Poly::new(
        coords
            .iter()
            .map(|c| Scalar::from_cyclotomic(Cyclotomic::from_coeffs(order, c.clone())))
            .collect(),
    )
}

/// Monic gcd of two nonzero polynomials, or `None` if no candidate survived.
pub(super) fn gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let order = a.coeffs().iter().chain(b.coeffs()).fold(1u32, |l, c| l.lcm(&c.field_order()));
    let n = u64::from(order);
    let mut k = (1u64 << 31) / n;
    let mut modulus = BigInt::from(1);
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut last: Option<Vec<Vec<Rational>>> = None;
    let mut used = 0;
    while used < MAX_PRIMES {
        k += 1;
        let p = k * n + 1;
        if !is_prime(p) {
            continue;
        }
        used += 1;
        let Some(coords) = gcd_coordinates(a, b, order, p) else {
            continue;
        };
        if coords.len() == 1 {
            return Some(Poly::one());
        }
        if coords.len() > residues.len() && !residues.is_empty() {
            continue;
        }
        if coords.len() < residues.len() || residues.is_empty() {
            // A new lowest degree: every earlier prime was unlucky.
            residues = coords.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
            modulus = BigInt::from(p);
            last = None;
        } else {
            // x = r (mod M), x = c (mod p)  gives  x = r + M ((c - r) / M mod p).
            let bp = BigInt::from(p);
            let minv = BigInt::from(inv_mod((&modulus % &bp).to_u64().unwrap(), p));
            for (rk, ck) in residues.iter_mut().zip(&coords) {
                for (r, &c) in rk.iter_mut().zip(ck) {
                    let delta = ((BigInt::from(c) - &*r) * &minv).mod_floor(&bp);
                    *r += &modulus * delta;
                }
            }
            modulus *= bp;
        }
        let candidate: Option<Vec<Vec<Rational>>> = residues
            .iter()
            .map(|rk| rk.iter().map(|r| rational_reconstruction(r, &modulus)).collect())
            .collect();
        let Some(candidate) = candidate else {
            continue;
        };
        if last.as_ref() == Some(&candidate) {
            let g = to_poly(order, &candidate);
            let divides = |f: &Poly| f.div_rem(&g).is_ok_and(|(_, r)| r.is_zero());
            if divides(a) && divides(b) {
                return Some(g);
            }
        }
        last = Some(candidate);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Poly, b: &Poly, want: &Poly) {
        assert_eq!(gcd(a, b).as_ref(), Some(want));
    }

    #[test]
    fn rational_gcds() {
        let a = Poly::from_ints(&[1, -1]);
        let b = Poly::from_ints(&[1, 1]);
        check(&a, &b, &Poly::one());
        check(&Poly::from_ints(&[1, 0, -1]), &a, &Poly::from_ints(&[-1, 1]));
        let lin = Poly::from_ints(&[-7, 3]);
        let big = &Poly::from_ints(&[123456789, 0, 987654321]) * &lin;
        let want = Poly::new(vec![Scalar::rational(-7, 3).unwrap(), Scalar::one()]);
        check(&big, &(&lin * &b), &want);
    }

    #[test]
    fn cyclotomic_common_factor() {
        let z = Scalar::root_of_unity(5, 1);
        let lin = Poly::new(vec![-&z, Scalar::one()]); // t - zeta_5
        let a = &lin * &Poly::from_ints(&[2, 1]);
        let b = &lin * &Poly::new(vec![Scalar::from_int(3), z.clone(), Scalar::one()]);
        check(&a, &b, &lin);
        check(&Poly::from_ints(&[2, 1]), &lin, &Poly::one());
    }

    #[test]
    fn reconstructs_fractions() {
        let p = 1_000_000_007u64;
        let u = BigInt::from(2 * inv_mod(3, p) % p);
        assert_eq!(rational_reconstruction(&u, &BigInt::from(p)), Some(Rational::new(2, 3).unwrap()));
    }
}
