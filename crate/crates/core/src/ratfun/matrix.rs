use std::fmt;

use super::function::RatFun;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Dense matrix over the field of rational functions in t.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFun>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![RatFun::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFun::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn column(entries: Vec<RatFun>) -> Self {
        RatMatrix {
            rows: entries.len(),
            cols: 1,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFun) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RatFun] {
        &self.entries
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RatFun::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn map(&self, f: impl Fn(&RatFun) -> RatFun) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "square matrix required, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    /// Exact inverse.  Cofactor expansion for n <= 4, fraction-free
    /// Gauss-Jordan elimination above that.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = self.require_square()?;
        if n <= 4 {
            self.inverse_adjugate()
        } else {
            self.solve_matrix(&RatMatrix::identity(n))
        }
    }

    /// Inverse as adjugate / determinant via cofactors.
    pub fn inverse_adjugate(&self) -> Result<RatMatrix> {
        let n = self.require_square()?;
        let det = self.det_laplace();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let det_inv = det.inv()?;
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let mut c = minor.det_laplace();
                if (i + j) % 2 == 1 {
                    c = -&c;
                }
                // adj(M)_{ji} = C_{ij}
                inv.set(j, i, &c * &det_inv);
            }
        }
        Ok(inv)
    }

    fn minor(&self, row: usize, col: usize) -> RatMatrix {
        let rows: Vec<Vec<RatFun>> = (0..self.rows)
            .filter(|&i| i != row)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| j != col)
                    .map(|j| self.get(i, j).clone())
                    .collect()
            })
            .collect();
        let n = self.rows - 1;
        RatMatrix {
            rows: n,
            cols: n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    fn det_laplace(&self) -> RatFun {
        match self.rows {
            0 => RatFun::one(),
            1 => self.get(0, 0).clone(),
            n => {
                let mut acc = RatFun::zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, j).det_laplace();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<RatFun> {
        let n = self.require_square()?;
        let (poly, row_dens) = self.to_poly_rows();
        let mut a = poly;
        let mut sign = false;
        let mut prev = Poly::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(RatFun::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                let factor = a[i][k].clone();
                for j in k..n {
                    let v = &(&a[k][k] * &a[i][j]) - &(&factor * &a[k][j]);
                    a[i][j] = v.div_exact(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let mut det = RatFun::from_poly(prev);
        if sign {
            det = -&det;
        }
        let scale = row_dens.iter().fold(Poly::one(), |acc, d| &acc * d);
        det.try_div(&RatFun::from_poly(scale))
    }

    /// Each row multiplied by the lcm of its denominators: M = diag(1/L) P.
    fn to_poly_rows(&self) -> (Vec<Vec<Poly>>, Vec<Poly>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut dens = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let lcm = (0..self.cols).fold(Poly::one(), |l, j| {
                let d = self.get(i, j).den();
                let g = l.gcd(d);
                (&l * d).div_exact(&g).expect("gcd divides")
            });
            let row = (0..self.cols)
                .map(|j| {
                    let e = self.get(i, j);
                    &e.num().clone() * &lcm.div_exact(e.den()).expect("lcm is a multiple")
                })
                .collect();
            rows.push(row);
            dens.push(lcm);
        }
        (rows, dens)
    }

    /// Solves M X = B exactly by fraction-free Gauss-Jordan elimination.
    pub fn solve_matrix(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        let n = self.require_square()?;
        if rhs.rows != n {
            return Err(Error::DimensionMismatch("right-hand side row count".into()));
        }
        let (mut a, row_dens) = self.to_poly_rows();
        // P X = diag(L) B; clear the denominators of diag(L) B column by column.
        let m = rhs.cols;
        let mut col_dens = Vec::with_capacity(m);
        let mut b = vec![vec![Poly::zero(); m]; n];
        for j in 0..m {
            let scaled: Vec<RatFun> = (0..n)
                .map(|i| &RatFun::from_poly(row_dens[i].clone()) * rhs.get(i, j))
                .collect();
            let q = scaled.iter().fold(Poly::one(), |l, e| {
                let g = l.gcd(e.den());
                (&l * e.den()).div_exact(&g).expect("gcd divides")
            });
            for (i, e) in scaled.iter().enumerate() {
                b[i][j] = e.num() * &q.div_exact(e.den())?;
            }
            col_dens.push(q);
        }
        for (row, brow) in a.iter_mut().zip(b) {
            row.extend(brow);
        }
        let width = n + m;
        let mut prev = Poly::one();
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(p, k);
            let pivot_row = a[k].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let factor = row[k].clone();
                for j in 0..width {
                    let v = &(&pivot_row[k] * &row[j]) - &(&factor * &pivot_row[j]);
                    row[j] = v.div_exact(&prev)?;
                }
            }
            prev = pivot_row[k].clone();
        }
        // Every diagonal entry now equals the final pivot.
        let mut x = RatMatrix::zeros(n, m);
        for i in 0..n {
            for j in 0..m {
                let den = &a[i][i] * &col_dens[j];
                x.set(i, j, RatFun::normalize(a[i][n + j].clone(), den)?);
            }
        }
        Ok(x)
    }

    /// Solves M x = b for a single column.
    pub fn solve(&self, b: &[RatFun]) -> Result<Vec<RatFun>> {
        let x = self.solve_matrix(&RatMatrix::column(b.to_vec()))?;
        Ok(x.entries)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn poly(c: &[i64]) -> RatFun {
        RatFun::from_poly(Poly::from_ints(c))
    }

    #[test]
    fn identity_inverse() {
        let id = RatMatrix::identity(3);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn two_by_two_against_hand_adjugate() {
        // [[1+t^2, -t], [-t, 1+t^2]]: det = (1+t^2)^2 - t^2 = 1 + t^2 + t^4
        let m = RatMatrix::from_rows(vec![
            vec![poly(&[1, 0, 1]), poly(&[0, -1])],
            vec![poly(&[0, -1]), poly(&[1, 0, 1])],
        ])
        .unwrap();
        let det = Poly::from_ints(&[1, 0, 1, 0, 1]);
        let entry = |num: &[i64]| RatFun::normalize(Poly::from_ints(num), det.clone()).unwrap();
        let expected = RatMatrix::from_rows(vec![
            vec![entry(&[1, 0, 1]), entry(&[0, 1])],
            vec![entry(&[0, 1]), entry(&[1, 0, 1])],
        ])
        .unwrap();
        assert_eq!(m.inverse().unwrap(), expected);
        assert_eq!(m.solve_matrix(&RatMatrix::identity(2)).unwrap(), expected);
        assert_eq!(m.det().unwrap(), RatFun::from_poly(det));
    }

    #[test]
    fn singular_is_reported() {
        let m = RatMatrix::from_rows(vec![vec![poly(&[1, 1]), poly(&[2, 2])], vec![poly(&[1]), poly(&[2])]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
        assert_eq!(m.solve_matrix(&RatMatrix::identity(2)), Err(Error::SingularMatrix));
        assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn methods_agree_on_rational_entries() {
        // entries with denominators and a zero leading pivot
        let f = RatFun::normalize(Poly::from_ints(&[1]), Poly::from_ints(&[1, -1])).unwrap();
        let rows = vec![
            vec![RatFun::zero(), f.clone(), poly(&[0, 1]), poly(&[2])],
            vec![poly(&[1, 1]), RatFun::zero(), poly(&[3]), f.clone()],
            vec![poly(&[0, 0, 1]), poly(&[1]), RatFun::zero(), poly(&[1, 0, -1])],
            vec![poly(&[5]), f.clone(), poly(&[0, 2]), RatFun::constant(Scalar::rational(1, 3).unwrap())],
        ];
        let m = RatMatrix::from_rows(rows).unwrap();
        let a = m.inverse_adjugate().unwrap();
        let b = m.solve_matrix(&RatMatrix::identity(4)).unwrap();
        assert_eq!(a, b);
        assert_eq!(m.mul(&a).unwrap(), RatMatrix::identity(4));
        assert_eq!(a.mul(&m).unwrap(), RatMatrix::identity(4));
    }
}
