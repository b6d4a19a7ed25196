//! Sparse exact vectors and incremental row reduction.
//!
//! Every reduction in the crate goes through [`EchelonBasis`]: the pivot of a
//! row is its lowest column index, so callers control pivot preference purely
//! through the column order they choose.

use crate::scalar::Scalar;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec(Vec<(usize, Scalar)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(index: usize) -> Self {
        SparseVec(vec![(index, Scalar::one())])
    }

    /// Builds from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(mut entries: Vec<(usize, Scalar)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.0.iter()
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.0.first()
    }

    pub fn get(&self, index: usize) -> Scalar {
        match self.0.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.0[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec(self.0.iter().map(|(i, a)| (*i, a * c)).collect())
    }

    /// self + c * other
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec(out)
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Scalar::from_int(-1), other)
    }

    /// Applies an index relabelling; the map must be injective on the support.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(self.0.iter().map(|(i, c)| (f(*i), c.clone())).collect())
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        SparseVec::from_entries(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug)]
struct EchelonRow {
    vector: SparseVec,
    combo: SparseVec,
}

/// An incrementally built echelon basis of a subspace, remembering how each
/// row was formed from the inserted vectors (numbered in insertion order).
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<EchelonRow>,
    pivots: std::collections::BTreeMap<usize, usize>,
    inserted: usize,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn has_pivot(&self, column: usize) -> bool {
        self.pivots.contains_key(&column)
    }

    /// Reduces `v` against the basis; returns the residual and the combination
    /// `c` of inserted vectors with `v = residual + sum c_k inserted_k`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut residual = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = residual
                .iter()
                .find(|(i, _)| *i >= cursor && self.pivots.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            let Some((col, coeff)) = next else { break };
            let row = &self.rows[self.pivots[&col]];
            residual = residual.add_scaled(&-&coeff, &row.vector);
            combo = combo.add_scaled(&coeff, &row.combo);
            cursor = col + 1;
        }
        (residual, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts `v` (numbered as the next inserted vector).  Returns `None` when
    /// `v` was independent, otherwise `Some(c)` with `v = sum c_k inserted_k`,
    /// i.e. a linear dependency among inserted vectors ending in this one.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let id = self.inserted;
        self.inserted += 1;
        let (residual, combo) = self.reduce(v);
        if residual.is_zero() {
            return Some(combo);
        }
        // residual = v - combo; normalize the leading coefficient to 1.
        let own = SparseVec::unit(id).sub(&combo);
        let lead = residual.leading().unwrap().1.clone();
        let inv = lead.inv().expect("nonzero leading coefficient");
        let row = EchelonRow {
            vector: residual.scale(&inv),
            combo: own.scale(&inv),
        };
        let pivot = row.vector.leading().unwrap().0;
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(row);
        None
    }

    /// Coordinates of `v` with respect to the inserted vectors, if `v` lies in the span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let (residual, combo) = self.reduce(v);
        residual.is_zero().then_some(combo)
    }

    /// Rows in fully reduced echelon form, sorted by pivot.
    pub fn reduced_rows(&self) -> Vec<SparseVec> {
        let mut out = Vec::with_capacity(self.rows.len());
        for (_, &idx) in self.pivots.iter() {
            let row = &self.rows[idx].vector;
            let lead = row.leading().unwrap().0;
            let mut tail = SparseVec(row.0[1..].to_vec());
            let (reduced_tail, _) = self.reduce(&tail);
            tail = reduced_tail;
            let mut entries = vec![(lead, Scalar::one())];
            entries.extend(tail.into_entries());
            out.push(SparseVec::from_entries(entries));
        }
        out
    }
}

/// Basis of the kernel of the linear map sending unit vector `j` to `images[j]`.
pub fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    let mut eb = EchelonBasis::new();
    let mut out = Vec::new();
    for (j, v) in images.iter().enumerate() {
        if let Some(combo) = eb.insert(v) {
            // images[j] = sum combo_k images[k]  =>  e_j - combo is in the kernel
            out.push(SparseVec::unit(j).sub(&combo));
        }
    }
    // Canonical reduced form keeps kernels comparable across runs.
    let mut kb = EchelonBasis::new();
    for v in &out {
        kb.insert(v);
    }
    kb.reduced_rows()
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut eb = EchelonBasis::new();
    for v in vectors {
        eb.insert(v);
    }
    eb.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, Scalar::from_int(c))).collect()
    }

    #[test]
    fn add_scaled_cancels() {
        let a = sv(&[(0, 1), (2, 3)]);
        let b = sv(&[(2, 1), (5, 1)]);
        assert_eq!(a.add_scaled(&Scalar::from_int(-3), &b), sv(&[(0, 1), (5, -3)]));
    }

    #[test]
    fn echelon_tracks_combinations() {
        let mut eb = EchelonBasis::new();
        assert!(eb.insert(&sv(&[(0, 1), (1, 1)])).is_none());
        assert!(eb.insert(&sv(&[(1, 1), (2, 1)])).is_none());
        let dep = eb.insert(&sv(&[(0, 2), (1, 3), (2, 1)])).unwrap();
        assert_eq!(dep, sv(&[(0, 2), (1, 1)]));
        let coords = eb.express(&sv(&[(0, 1), (2, -1)])).unwrap();
        assert_eq!(coords, sv(&[(0, 1), (1, -1)]));
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let images = vec![sv(&[(0, 1)]), sv(&[(0, 2)]), sv(&[(0, -1)])];
        let k = kernel(&images);
        assert_eq!(k.len(), 2);
        for v in &k {
            let image = v
                .iter()
                .fold(SparseVec::new(), |acc, (j, c)| acc.add_scaled(c, &images[*j]));
            assert!(image.is_zero());
        }
    }
}
