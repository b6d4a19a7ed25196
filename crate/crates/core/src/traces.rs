//! Vector traces of scaling automorphisms, Hilbert and Molien series,
//! reciprocity and the homological determinant.
//!
//! Two independent routes compute the vector traces.  The brute-force route
//! sums monomial weights over a graded basis.  The closed form solves
//! `M x = 1`, where `M` has diagonal `1 + c1 t1 t^2` and off-diagonal entry
//! `(i, j)` equal to `-t` times the total weight of the arrows `i -> j` of the
//! doubled quiver; the left traces use the transpose.

use serde_json::{json, Value};

use crate::algebra::GradedAlgebra;
use crate::automorphism::{AutGroup, ScalingAutomorphism};
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::ratfun::{Poly, RatFun, RatMatrix, TruncatedSeries};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Traces on `e_j A`.
    Right,
    /// Traces on `A e_j`.
    Left,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            _ => Err(Error::Parse(format!("side must be \"right\" or \"left\", got {s:?}"))),
        }
    }
}

/// Brute-force vector traces: coefficient `s` of entry `j` sums the weights of
/// the degree-`s` basis monomials starting (right) or ending (left) at `j`.
pub fn vtrace_bruteforce(
    alg: &GradedAlgebra,
    g: &ScalingAutomorphism,
    side: Side,
    cutoff: usize,
) -> Result<Vec<TruncatedSeries>> {
    if cutoff > alg.cutoff() {
        return Err(Error::TruncationExceeded {
            degree: cutoff,
            cutoff: alg.cutoff(),
        });
    }
    let q = alg
        .quiver()
        .ok_or_else(|| Error::QuiverMismatch(format!("{} has no monomial basis", alg.name())))?;
    let w = g.arrow_weights(q)?;
    let n = alg.vertex_count();
    let mut out: Vec<TruncatedSeries> = (0..n).map(|_| TruncatedSeries::zeros(0, cutoff as i64)).collect();
    for s in 0..=cutoff {
        for (k, b) in alg.basis(s).iter().enumerate() {
            let j = match side {
                Side::Right => b.source,
                Side::Left => b.target,
            };
            let c = out[j - 1].coeff_mut(s as i64);
            *c = &*c + &g.weight(&w, alg.monomial(s, k).unwrap());
        }
    }
    Ok(out)
}

fn require_family(q: &Quiver) -> Result<Quiver> {
    if q.family().is_none() {
        return Err(Error::UnsupportedFamily(format!(
            "closed forms need an A~, D~ or E~ quiver, got {}",
            q.name()
        )));
    }
    if q.is_doubled() {
        Ok(q.clone())
    } else {
        q.double()
    }
}

/// `M` for scalars listed in quiver pair order, in the variable `var`.
pub fn trace_matrix(q: &Quiver, c: &[Scalar], t: &[Scalar], var: &RatFun) -> Result<RatMatrix> {
    let q = require_family(q)?;
    let pairs: Vec<&str> = q.pairs().map(|a| a.id.as_str()).collect();
    if c.len() != pairs.len() || t.len() != pairs.len() {
        return Err(Error::DimensionMismatch("scalar count differs from arrow pair count".into()));
    }
    let n = q.vertex_count();
    let ct = &c[0] * &t[0];
    let var2 = var * var;
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, &RatFun::one() + &var2.scale(&ct));
    }
    for a in q.arrows() {
        let (id, scalars) = match &a.partner {
            Some(p) if a.is_star => (p.as_str(), t),
            _ => (a.id.as_str(), c),
        };
        let k = pairs.iter().position(|&x| x == id).unwrap();
        let (i, j) = (a.source - 1, a.target - 1);
        let entry = m.get(i, j) - &var.scale(&scalars[k]);
        m.set(i, j, entry);
    }
    Ok(m)
}

/// `M(c, t, t)` for an automorphism.
pub fn automorphism_matrix(q: &Quiver, g: &ScalingAutomorphism) -> Result<RatMatrix> {
    trace_matrix(q, g.c(), g.t(), &RatFun::t())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorTraceClosed {
    pub side: Side,
    pub entries: Vec<RatFun>,
}

impl VectorTraceClosed {
    pub fn total(&self) -> RatFun {
        self.entries.iter().fold(RatFun::zero(), |acc, e| &acc + e)
    }

    pub fn expand(&self, cutoff: usize) -> Result<Vec<TruncatedSeries>> {
        self.entries.iter().map(|e| e.series_expand(cutoff)).collect()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self.entries.iter().map(RatFun::to_json).collect();
        json!({ "side": self.side.as_str(), "entries": entries })
    }
}

/// Closed-form vector traces: `M^{-1} 1` on the right, `(M^T)^{-1} 1` on the left.
pub fn vtrace_closed(q: &Quiver, g: &ScalingAutomorphism, side: Side) -> Result<VectorTraceClosed> {
    let m = automorphism_matrix(q, g)?;
    let m = match side {
        Side::Right => m,
        Side::Left => m.transpose(),
    };
    let ones = vec![RatFun::one(); m.rows()];
    Ok(VectorTraceClosed {
        side,
        entries: m.solve(&ones)?,
    })
}

/// Per-vertex Hilbert series of `e_j A` (the traces of the identity).
pub fn hilbert_closed(q: &Quiver, side: Side) -> Result<VectorTraceClosed> {
    let q = require_family(q)?;
    vtrace_closed(&q, &ScalingAutomorphism::identity(&q), side)
}

#[derive(Clone, Debug)]
pub struct MolienReport {
    pub group_order: usize,
    /// Total trace of each group element, when closed forms are available.
    pub traces: Option<Vec<RatFun>>,
    pub molien: Option<RatFun>,
    pub expansion: TruncatedSeries,
}

impl MolienReport {
    /// Whether every expansion coefficient is a nonnegative integer.
    pub fn is_dimension_series(&self) -> bool {
        self.expansion
            .coeffs()
            .iter()
            .all(|c| c.as_rational().is_some_and(|r| r.is_integer() && !r.is_negative()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group_order": self.group_order,
            "traces": self.traces.as_ref().map(|v| v.iter().map(RatFun::to_json).collect::<Vec<_>>()),
            "molien": self.molien.as_ref().map(RatFun::to_json),
            "expansion": self.expansion.to_json(),
        })
    }
}

/// Hilbert series of the fixed ring as the group average of total traces.
pub fn molien(alg: &GradedAlgebra, group: &AutGroup, cutoff: usize) -> Result<MolienReport> {
    let q = alg
        .quiver()
        .ok_or_else(|| Error::QuiverMismatch(format!("{} has no monomial basis", alg.name())))?;
    let scale = Scalar::from_int(group.order() as i64).inv()?;
    if q.family().is_some() {
        let traces = group
            .elements()
            .iter()
            .map(|g| Ok(vtrace_closed(q, g, Side::Right)?.total()))
            .collect::<Result<Vec<_>>>()?;
        let molien = traces.iter().fold(RatFun::zero(), |acc, f| &acc + f).scale(&scale);
        let expansion = molien.series_expand(cutoff)?;
        return Ok(MolienReport {
            group_order: group.order(),
            traces: Some(traces),
            molien: Some(molien),
            expansion,
        });
    }
    let mut expansion = TruncatedSeries::zeros(0, cutoff as i64);
    for g in group.elements() {
        for entry in vtrace_bruteforce(alg, g, Side::Right, cutoff)? {
            expansion = expansion.add(&entry)?;
        }
    }
    Ok(MolienReport {
        group_order: group.order(),
        traces: None,
        molien: None,
        expansion: expansion.scale(&scale),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reciprocity {
    pub holds: bool,
    /// First vertex where the identity fails.
    pub vertex: Option<usize>,
    pub lhs: Vec<RatFun>,
    pub rhs: Vec<RatFun>,
}

impl Reciprocity {
    pub fn to_json(&self) -> Value {
        json!({ "holds": self.holds, "vertex": self.vertex })
    }
}

/// Compares the left traces of `g^{-1}` at `1/t` with `c1 t1 t^2` times the
/// right traces of `g`, vertex by vertex.
pub fn reciprocity_check(q: &Quiver, g: &ScalingAutomorphism) -> Result<Reciprocity> {
    let left = vtrace_closed(q, &g.inverse(), Side::Left)?;
    let right = vtrace_closed(q, g, Side::Right)?;
    let factor = RatFun::from_poly(Poly::monomial(g.ct(), 2));
    let lhs: Vec<RatFun> = left.entries.iter().map(RatFun::substitute_t_inverse).collect();
    let rhs: Vec<RatFun> = right.entries.iter().map(|e| &factor * e).collect();
    let vertex = lhs.iter().zip(&rhs).position(|(a, b)| a != b).map(|k| k + 1);
    Ok(Reciprocity {
        holds: vertex.is_none(),
        vertex,
        lhs,
        rhs,
    })
}

/// Checks `(c1 t1 t^2)^{-1} M(c, t, t) = M(t^{-1}, c^{-1}, t^{-1})` entrywise.
pub fn matrix_identity_check(q: &Quiver, g: &ScalingAutomorphism) -> Result<bool> {
    let lhs = automorphism_matrix(q, g)?;
    let factor = RatFun::from_poly(Poly::monomial(g.ct(), 2)).inv()?;
    let lhs = lhs.map(|e| &factor * e);
    let inv = |v: &[Scalar]| v.iter().map(Scalar::inv).collect::<Result<Vec<_>>>();
    let rhs = trace_matrix(q, &inv(g.t())?, &inv(g.c())?, &RatFun::t().inv()?)?;
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HdetMatrix {
    pub diag: Vec<Scalar>,
}

impl HdetMatrix {
    pub fn is_scalar(&self) -> bool {
        self.diag.windows(2).all(|w| w[0] == w[1])
    }

    pub fn mul(&self, other: &HdetMatrix) -> HdetMatrix {
        HdetMatrix {
            diag: self.diag.iter().zip(&other.diag).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(&self.diag).expect("scalars serialize")
    }
}

/// The homological determinant `c1 t1 I_n`.
pub fn hdet(q: &Quiver, g: &ScalingAutomorphism) -> Result<HdetMatrix> {
    let q = require_family(q)?;
    g.arrow_weights(&q)?;
    Ok(HdetMatrix {
        diag: vec![g.ct(); q.vertex_count()],
    })
}

/// Checks `hdet(gh) = hdet(g) hdet(h)` over all pairs of group elements.
pub fn hdet_is_homomorphism(q: &Quiver, group: &AutGroup) -> Result<bool> {
    let dets = group.elements().iter().map(|g| hdet(q, g)).collect::<Result<Vec<_>>>()?;
    for (g, dg) in group.elements().iter().zip(&dets) {
        for (h, dh) in group.elements().iter().zip(&dets) {
            if hdet(q, &g.compose(h)?)? != dg.mul(dh) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::generate_group;
    use crate::quiver::{build_extended_dynkin, DynkinFamily};

    fn doubled(f: DynkinFamily) -> Quiver {
        build_extended_dynkin(f).unwrap().double().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&k| Scalar::from_int(k)).collect()
    }

    fn ratfun(num: &[i64], den: &Poly) -> RatFun {
        RatFun::normalize(Poly::from_ints(num), den.clone()).unwrap()
    }

    #[test]
    fn identity_traces_are_hilbert_series() {
        let q = doubled(DynkinFamily::a(3).unwrap());
        let h = hilbert_closed(&q, Side::Right).unwrap();
        let sq = &Poly::one_minus_t_pow(1) * &Poly::one_minus_t_pow(1);
        for e in &h.entries {
            assert_eq!(*e, ratfun(&[1], &sq));
        }
        let alg = GradedAlgebra::preprojective(&q, 4).unwrap();
        let id = ScalingAutomorphism::identity(&q);
        for s in vtrace_bruteforce(&alg, &id, Side::Right, 4).unwrap() {
            assert_eq!(s.coeffs_i64(), Some(vec![1, 2, 3, 4, 5]));
        }
    }

    #[test]
    fn worked_example_trace() {
        let q = doubled(DynkinFamily::a(3).unwrap());
        let g = ScalingAutomorphism::new(&q, ints(&[1, -1, -1]), ints(&[1, -1, -1])).unwrap();
        let total = vtrace_closed(&q, &g, Side::Right).unwrap().total();
        let den = &Poly::one_minus_t_pow(1) * &Poly::one_minus_t_pow(3);
        assert_eq!(total, ratfun(&[3, -5, 3], &den));
        let alg = GradedAlgebra::preprojective(&q, 6).unwrap();
        let brute = vtrace_bruteforce(&alg, &g, Side::Right, 6).unwrap();
        let sum = brute.iter().skip(1).fold(brute[0].clone(), |acc, s| acc.add(s).unwrap());
        assert!(sum.agrees_with(&total.series_expand(6).unwrap()));
        for s in &brute {
            assert_eq!(s.coeff(0), Scalar::one());
        }
    }

    #[test]
    fn two_vertex_cycle_matrix() {
        let q = doubled(DynkinFamily::a(2).unwrap());
        let c = [Scalar::from_int(2), Scalar::from_int(3)];
        let t = [Scalar::from_int(5), Scalar::from_int(7)];
        let m = trace_matrix(&q, &c, &t, &RatFun::t()).unwrap();
        // -(c1 + t2) t and -(c2 + t1) t
        assert_eq!(*m.get(0, 1), RatFun::from_poly(Poly::from_ints(&[0, -9])));
        assert_eq!(*m.get(1, 0), RatFun::from_poly(Poly::from_ints(&[0, -8])));
        assert_eq!(*m.get(0, 0), RatFun::from_poly(Poly::from_ints(&[1, 0, 10])));
    }

    #[test]
    fn transpose_swaps_scalars() {
        let q = doubled(DynkinFamily::d(5).unwrap());
        let c = ints(&[1, 2, 3, 4]);
        let t = ints(&[5, 6, 7, 8]);
        let m = trace_matrix(&q, &c, &t, &RatFun::t()).unwrap();
        assert_eq!(m.transpose(), trace_matrix(&q, &t, &c, &RatFun::t()).unwrap());
    }

    #[test]
    fn molien_of_example() {
        let q = doubled(DynkinFamily::a(3).unwrap());
        let alg = GradedAlgebra::preprojective(&q, 3).unwrap();
        let den = &Poly::one_minus_t_pow(1) * &Poly::one_minus_t_pow(3);
        let g = ScalingAutomorphism::new(&q, ints(&[1, -1, -1]), ints(&[1, -1, -1])).unwrap();
        let grp = generate_group(&q, &[g], 10).unwrap();
        let rep = molien(&alg, &grp, 3).unwrap();
        assert_eq!(rep.molien, Some(ratfun(&[3, -1, 3], &den)));
        assert_eq!(rep.expansion.coeffs_i64(), Some(vec![3, 2, 5, 8]));
        assert!(rep.is_dimension_series());

        let trivial = molien(&alg, &AutGroup::trivial(&q), 3).unwrap();
        let sq = &Poly::one_minus_t_pow(1) * &Poly::one_minus_t_pow(1);
        assert_eq!(trivial.molien, Some(ratfun(&[3], &sq)));
    }

    #[test]
    fn reciprocity_and_matrix_identity() {
        let q = doubled(DynkinFamily::e(6).unwrap());
        let a = [1, 2, 0, 1, 2, 1];
        let g = ScalingAutomorphism::from_exponents(&q, 3, &a, 1).unwrap();
        assert!(reciprocity_check(&q, &g).unwrap().holds);
        assert!(matrix_identity_check(&q, &g).unwrap());
        let id = ScalingAutomorphism::identity(&q);
        assert!(reciprocity_check(&q, &id).unwrap().holds);
    }

    #[test]
    fn hdet_values() {
        let q = doubled(DynkinFamily::a(3).unwrap());
        let g = ScalingAutomorphism::new(&q, ints(&[1, -1, -1]), ints(&[1, -1, -1])).unwrap();
        assert_eq!(hdet(&q, &g).unwrap().diag, ints(&[1, 1, 1]));
        let z = Scalar::root_of_unity(3, 1);
        let h = ScalingAutomorphism::new(&q, vec![z.clone(); 3], vec![z.clone(); 3]).unwrap();
        assert_eq!(hdet(&q, &h).unwrap().diag, vec![Scalar::root_of_unity(3, 2); 3]);
        let grp = generate_group(&q, &[g, h], 100).unwrap();
        assert_eq!(grp.order(), 6);
        assert!(hdet_is_homomorphism(&q, &grp).unwrap());
    }

    #[test]
    fn custom_quivers_have_no_closed_form() {
        use crate::quiver::Arrow;
        let q = Quiver::new(2, vec![Arrow::new("b", 1, 2)]).unwrap().double().unwrap();
        let id = ScalingAutomorphism::identity(&q);
        assert!(matches!(vtrace_closed(&q, &id, Side::Right), Err(Error::UnsupportedFamily(_))));
        assert!(matches!(hdet(&q, &id), Err(Error::UnsupportedFamily(_))));
    }
}
