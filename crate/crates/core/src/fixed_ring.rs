//! Fixed subspaces of a group of scaling automorphisms, minimal generators of
//! the fixed ring, and the fixed ring as a truncation of its own.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::automorphism::{reynolds, AutGroup};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseVec};

/// A basis of the fixed elements in each degree, as vectors in the ambient basis.
#[derive(Clone, Debug)]
pub struct FixedBasis {
    pub degrees: Vec<Vec<SparseVec>>,
}

impl FixedBasis {
    pub fn cutoff(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }
}

/// Images of the Reynolds operator on every basis monomial, row-reduced to a
/// basis in each degree.  Images of monomials stay inside one `e_i A e_j`.
pub fn fixed_basis(alg: &GradedAlgebra, group: &AutGroup, cutoff: usize) -> Result<FixedBasis> {
    if cutoff > alg.cutoff() {
        return Err(Error::TruncationExceeded {
            degree: cutoff,
            cutoff: alg.cutoff(),
        });
    }
    let mut degrees = Vec::with_capacity(cutoff + 1);
    for d in 0..=cutoff {
        let mut eb = EchelonBasis::new();
        let mut kept = Vec::new();
        for k in 0..alg.dim(d) {
            let image = reynolds(group, alg, &AlgebraElement::basis(d, k))?.component(d);
            if !image.is_zero() && eb.insert(&image).is_none() {
                kept.push(image);
            }
        }
        degrees.push(kept);
    }
    Ok(FixedBasis { degrees })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub element: AlgebraElement,
}

fn block(alg: &GradedAlgebra, degree: usize, v: &SparseVec) -> (usize, usize) {
    let b = &alg.basis(degree)[v.leading().expect("nonzero vector").0];
    (b.source, b.target)
}

fn label_of(alg: &GradedAlgebra, degree: usize, v: &SparseVec) -> Option<String> {
    match v.entries() {
        [(k, c)] if c.is_one() => Some(alg.label(degree, *k)),
        _ => None,
    }
}

/// Greedy minimal generators: a fixed basis element of degree `d` becomes a
/// generator iff it is not in the span of products of earlier generators.
pub fn extract_generators(alg: &GradedAlgebra, fb: &FixedBasis) -> Result<Vec<Generator>> {
    let mut gens: Vec<Generator> = Vec::new();
    // spans[d]: a basis of the degree-d part of the subalgebra generated so far.
    let mut spans: Vec<Vec<SparseVec>> = vec![fb.degrees[0].clone()];
    for d in 1..=fb.cutoff() {
        let mut eb = EchelonBasis::new();
        let mut span = Vec::new();
        for g in gens.iter().filter(|g| g.degree < d) {
            for b in &spans[d - g.degree] {
                let p = alg.multiply(&AlgebraElement::from_vec(d - g.degree, b), &g.element)?;
                let v = p.component(d);
                if !v.is_zero() && eb.insert(&v).is_none() {
                    span.push(v);
                }
            }
        }
        for f in &fb.degrees[d] {
            if eb.insert(f).is_none() {
                let (source, target) = block(alg, d, f);
                let label = label_of(alg, d, f).unwrap_or_else(|| format!("g{}", gens.len() + 1));
                gens.push(Generator {
                    label,
                    degree: d,
                    source,
                    target,
                    element: AlgebraElement::from_vec(d, f),
                });
                span.push(f.clone());
            }
        }
        spans.push(span);
    }
    Ok(gens)
}

/// Whether the fixed space in every degree is spanned by products of generators.
pub fn generators_span(alg: &GradedAlgebra, fb: &FixedBasis, gens: &[Generator]) -> Result<bool> {
    let mut spans: Vec<Vec<SparseVec>> = vec![fb.degrees[0].clone()];
    for d in 1..=fb.cutoff() {
        let mut eb = EchelonBasis::new();
        let mut span = Vec::new();
        for g in gens.iter().filter(|g| g.degree <= d) {
            for b in &spans[d - g.degree] {
                let v = alg.multiply(&AlgebraElement::from_vec(d - g.degree, b), &g.element)?.component(d);
                if !v.is_zero() && eb.insert(&v).is_none() {
                    span.push(v);
                }
            }
        }
        if eb.rank() != fb.degrees[d].len() || !fb.degrees[d].iter().all(|f| eb.contains(f)) {
            return Ok(false);
        }
        spans.push(span);
    }
    Ok(true)
}

pub fn generators_json(alg: &GradedAlgebra, gens: &[Generator]) -> Value {
    Value::Array(
        gens.iter()
            .map(|g| {
                json!({
                    "label": g.label,
                    "degree": g.degree,
                    "source": g.source,
                    "target": g.target,
                    "element": alg.element_json(&g.element),
                })
            })
            .collect(),
    )
}

/// The fixed ring as a graded algebra in its own right, keeping the ambient
/// grading and the ambient idempotents.
pub fn build_subalgebra_truncation(alg: Arc<GradedAlgebra>, fb: &FixedBasis) -> Result<GradedAlgebra> {
    if fb.degrees[0].len() != alg.vertex_count() {
        return Err(Error::InconsistentBasis(format!(
            "fixed ring has {} idempotents, expected {}",
            fb.degrees[0].len(),
            alg.vertex_count()
        )));
    }
    let labels: Vec<Vec<String>> = fb
        .degrees
        .iter()
        .enumerate()
        .map(|(d, vs)| {
            vs.iter()
                .enumerate()
                .map(|(k, v)| label_of(&alg, d, v).unwrap_or_else(|| format!("c{d}_{k}")))
                .collect()
        })
        .collect();
    let name = format!("{}^G", alg.name());
    GradedAlgebra::subring(alg, fb.degrees.clone(), labels, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{generate_group, ScalingAutomorphism};
    use crate::quiver::{build_extended_dynkin, DynkinFamily, Quiver};
    use crate::scalar::Scalar;

    fn setup(d: usize) -> (Quiver, Arc<GradedAlgebra>, AutGroup) {
        let q = build_extended_dynkin(DynkinFamily::a(3).unwrap()).unwrap().double().unwrap();
        let alg = Arc::new(GradedAlgebra::preprojective(&q, d).unwrap());
        let s = |v: &[i64]| v.iter().map(|&k| Scalar::from_int(k)).collect::<Vec<_>>();
        let g = ScalingAutomorphism::new(&q, s(&[1, -1, -1]), s(&[1, -1, -1])).unwrap();
        let grp = generate_group(&q, &[g], 10).unwrap();
        (q, alg, grp)
    }

    #[test]
    fn fixed_dimensions() {
        let (q, alg, grp) = setup(4);
        let fb = fixed_basis(&alg, &grp, 4).unwrap();
        assert_eq!(fb.dims(), vec![3, 2, 5, 8, 7]);
        let full = fixed_basis(&alg, &AutGroup::trivial(&q), 4).unwrap();
        assert_eq!(full.dims(), (0..=4).map(|d| alg.dim(d)).collect::<Vec<_>>());
        let deg1: Vec<String> = fb.degrees[1].iter().map(|v| label_of(&alg, 1, v).unwrap()).collect();
        assert_eq!(deg1, vec!["a1", "a1*"]);
    }

    #[test]
    fn example_generators() {
        let (q, alg, grp) = setup(5);
        let fb = fixed_basis(&alg, &grp, 5).unwrap();
        let gens = extract_generators(&alg, &fb).unwrap();
        let shape: Vec<(&str, usize, usize, usize)> =
            gens.iter().map(|g| (g.label.as_str(), g.degree, g.source, g.target)).collect();
        assert_eq!(
            shape,
            vec![
                ("a1", 1, 1, 2),
                ("a1*", 1, 2, 1),
                ("a2 a3", 2, 2, 1),
                ("a3 a3*", 2, 3, 3),
                ("a3* a2*", 2, 1, 2),
                ("a3 a1 a2", 3, 3, 3),
                ("a2* a1* a3*", 3, 3, 3),
            ]
        );
        assert!(generators_span(&alg, &fb, &gens).unwrap());

        let trivial = fixed_basis(&alg, &AutGroup::trivial(&q), 3).unwrap();
        let tg = extract_generators(&alg, &trivial).unwrap();
        assert_eq!(tg.len(), 6);
        assert!(tg.iter().all(|g| g.degree == 1));
    }

    #[test]
    fn fixed_ring_truncation() {
        let (q, alg, grp) = setup(4);
        let fb = fixed_basis(&alg, &grp, 4).unwrap();
        let c = build_subalgebra_truncation(alg.clone(), &fb).unwrap();
        assert_eq!((0..=3).map(|d| c.dim(d)).collect::<Vec<_>>(), vec![3, 2, 5, 8]);
        let find = |d: usize, l: &str| {
            let k = (0..c.dim(d)).find(|&k| c.label(d, k) == l).unwrap();
            AlgebraElement::basis(d, k)
        };
        let x = find(2, "a2 a3");
        let y = find(2, "a3* a2*");
        let s = c.multiply(&find(1, "a1*"), &find(1, "a1")).unwrap();
        assert_eq!(c.multiply(&x, &y).unwrap(), c.multiply(&s, &s).unwrap());

        let full = fixed_basis(&alg, &AutGroup::trivial(&q), 4).unwrap();
        let same = build_subalgebra_truncation(alg.clone(), &full).unwrap();
        for (d1, d2) in [(1, 1), (1, 2), (2, 2)] {
            for i in 0..alg.dim(d1) {
                for j in 0..alg.dim(d2) {
                    assert_eq!(same.multiply_basis(d1, i, d2, j), alg.multiply_basis(d1, i, d2, j));
                }
            }
        }
    }
}
