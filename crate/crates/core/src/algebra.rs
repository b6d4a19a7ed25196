//! Degree-truncated graded algebras with monomial bases.
//!
//! Two backends share one interface:
//!
//! * a quotient of the path algebra of a doubled quiver by quadratic relations
//!   (the preprojective algebra and, for negative controls, deliberately
//!   perturbed variants), built degree by degree;
//! * a graded subalgebra of another truncation, given by a basis of each
//!   degree expressed in the ambient basis.
//!
//! Quotient construction.  With `N_d` the normal monomials of degree `d`, every
//! degree-`d` path is congruent to a combination of the candidates `m * b`
//! (`m` in `N_{d-1}`, `b` an arrow).  The only further identifications come
//! from `m' * r` with `m'` in `N_{d-2}` and `r` a relation, rewritten through the
//! degree `d-1` table.  Row reduction pivots on the largest candidate in
//! degree-lexicographic order, so the survivors form `N_d`.  Products are
//! evaluated by right-multiplying one arrow at a time through these tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::quiver::{FamilyKind, Quiver};
use crate::scalar::Scalar;

/// A path in a quiver, stored as arrow indices.  Length-zero paths are the
/// trivial paths `e_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathMonomial {
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl PathMonomial {
    pub fn trivial(v: usize) -> Self {
        PathMonomial {
            arrows: Vec::new(),
            source: v,
            target: v,
        }
    }

    /// Builds a path from arrow ids, checking composability.
    pub fn from_ids(q: &Quiver, ids: &[&str]) -> Result<Self> {
        let Some(first) = ids.first() else {
            return Err(Error::InvalidQuiver("empty arrow list; use a trivial path".into()));
        };
        let mut p = PathMonomial::trivial(q.arrow(q.arrow_index(first)?).source);
        for id in ids {
            p = p.extend(q, q.arrow_index(id)?)?;
        }
        Ok(p)
    }

    /// The path followed by one more arrow.
    pub fn extend(&self, q: &Quiver, arrow: usize) -> Result<Self> {
        let a = q.arrow(arrow);
        if a.source != self.target {
            return Err(Error::InvalidQuiver(format!(
                "arrow {} starts at {} but the path ends at {}",
                a.id, a.source, self.target
            )));
        }
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Ok(PathMonomial {
            arrows,
            source: self.source,
            target: a.target,
        })
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn degree(&self) -> usize {
        self.arrows.len()
    }

    pub fn ids<'q>(&self, q: &'q Quiver) -> Vec<&'q str> {
        self.arrows.iter().map(|&i| q.arrow(i).id.as_str()).collect()
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.source)
        } else {
            self.ids(q).join(" ")
        }
    }
}

/// A homogeneous quadratic relation: a combination of length-two paths, all
/// with the same endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRelation {
    pub terms: Vec<(Scalar, usize, usize)>,
}

impl QuadraticRelation {
    fn source(&self, q: &Quiver) -> Option<usize> {
        self.terms.first().map(|&(_, a, _)| q.arrow(a).source)
    }
}

/// The relation sum(a a*) - sum(a* a) at each vertex, over the non-star
/// arrows `a` leaving, respectively entering, that vertex.
pub fn preprojective_relations(q: &Quiver) -> Result<Vec<QuadraticRelation>> {
    if !q.is_doubled() {
        return Err(Error::InvalidQuiver("preprojective relations need a doubled quiver".into()));
    }
    let mut out = Vec::with_capacity(q.vertex_count());
    for v in 1..=q.vertex_count() {
        let mut terms = Vec::new();
        for a in q.arrows_from(v).filter(|&a| !q.arrow(a).is_star) {
            terms.push((Scalar::one(), a, q.partner_index(a).unwrap()));
        }
        for a in q.arrows_into(v).filter(|&a| !q.arrow(a).is_star) {
            terms.push((Scalar::from_int(-1), q.partner_index(a).unwrap(), a));
        }
        if !terms.is_empty() {
            out.push(QuadraticRelation { terms });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    Path(PathMonomial),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub label: BasisLabel,
}

/// Sparse combination of basis elements, keyed by (degree, index in degree).
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<(usize, usize), Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn basis(degree: usize, index: usize) -> Self {
        AlgebraElement::from_vec(degree, &SparseVec::unit(index))
    }

    pub fn from_vec(degree: usize, v: &SparseVec) -> Self {
        AlgebraElement {
            terms: v.iter().map(|(i, c)| ((degree, *i), c.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, degree: usize, index: usize) -> Scalar {
        self.terms.get(&(degree, index)).cloned().unwrap_or_default()
    }

    /// The degree, if the element is nonzero and homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|k| k.0);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn component(&self, degree: usize) -> SparseVec {
        self.terms
            .range((degree, 0)..(degree + 1, 0))
            .map(|(k, c)| (k.1, c.clone()))
            .collect()
    }

    pub fn add_term(&mut self, degree: usize, index: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((degree, index)).or_insert_with(Scalar::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&(degree, index));
        }
    }

    pub fn add_scaled(&self, c: &Scalar, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for ((d, i), a) in other.terms() {
            out.add_term(d, i, &(c * a));
        }
        out
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add_scaled(&Scalar::from_int(-1), other)
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement::zero().add_scaled(c, self)
    }

    /// Multiplies each basis coefficient by a per-basis factor.
    pub fn map_coeffs(&self, f: impl Fn(usize, usize, &Scalar) -> Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for ((d, i), c) in self.terms() {
            out.add_term(d, i, &f(d, i, c));
        }
        out
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|((d, i), c)| format!("{c}*[{d}:{i}]")).collect();
        write!(f, "AlgebraElement({})", parts.join(" + "))
    }
}

enum Backend {
    Quotient {
        quiver: Quiver,
        /// `right[d][i]`: (arrow, normal form of basis(d)[i] * arrow) pairs,
        /// sorted by arrow, for d < cutoff.
        right: Vec<Vec<Vec<(usize, SparseVec)>>>,
    },
    Subring {
        ambient: Arc<GradedAlgebra>,
        /// Per degree: each basis element as a vector in the ambient basis.
        embedding: Vec<Vec<SparseVec>>,
        spans: Vec<EchelonBasis>,
    },
}

/// A graded algebra known in degrees `0..=cutoff`, with a basis per degree,
/// each basis element living in some `e_i R e_j`.
pub struct GradedAlgebra {
    name: String,
    vertex_count: usize,
    cutoff: usize,
    basis: Vec<Vec<BasisElement>>,
    backend: Backend,
    products: Mutex<HashMap<(usize, usize, usize, usize), SparseVec>>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<usize> = (0..=self.cutoff).map(|d| self.dim(d)).collect();
        write!(f, "GradedAlgebra({}, dims {:?})", self.name, dims)
    }
}

impl GradedAlgebra {
    /// The preprojective algebra of a doubled quiver, up to degree `cutoff`.
    pub fn preprojective(q: &Quiver, cutoff: usize) -> Result<GradedAlgebra> {
        let rels = preprojective_relations(q)?;
        GradedAlgebra::quadratic_quotient(q, &rels, cutoff, format!("Pi({})", q.name()))
    }

    /// Path algebra of `q` modulo the two-sided ideal of the given relations.
    pub fn quadratic_quotient(
        q: &Quiver,
        relations: &[QuadraticRelation],
        cutoff: usize,
        name: impl Into<String>,
    ) -> Result<GradedAlgebra> {
        for r in relations {
            let src = r.source(q);
            let tgt = r.terms.first().map(|&(_, _, b)| q.arrow(b).target);
            for &(_, a, b) in &r.terms {
                let (x, y) = (q.arrow(a), q.arrow(b));
                if x.target != y.source || Some(x.source) != src || Some(y.target) != tgt {
                    return Err(Error::InvalidQuiver(format!(
                        "relation term {} {} is not a path with the relation's endpoints",
                        x.id, y.id
                    )));
                }
            }
        }
        let mut monomials: Vec<Vec<PathMonomial>> = vec![(1..=q.vertex_count()).map(PathMonomial::trivial).collect()];
        let mut right: Vec<Vec<Vec<(usize, SparseVec)>>> = Vec::new();
        for d in 1..=cutoff {
            let prev = &monomials[d - 1];
            // Candidates m * b, remembered by (index of m, arrow).
            let mut cands: Vec<(PathMonomial, usize, usize)> = Vec::new();
            for (i, m) in prev.iter().enumerate() {
                for b in q.arrows_from(m.target) {
                    cands.push((m.extend(q, b)?, i, b));
                }
            }
            // Column 0 is the largest monomial, so pivots land on leading terms.
            cands.sort_by(|x, y| y.0.arrows.cmp(&x.0.arrows));
            let column: HashMap<&[usize], usize> =
                cands.iter().enumerate().map(|(c, (m, _, _))| (m.arrows.as_slice(), c)).collect();

            let mut eb = EchelonBasis::new();
            if d >= 2 {
                let table = &right[d - 2];
                for (i, m) in monomials[d - 2].iter().enumerate() {
                    for r in relations.iter().filter(|r| r.source(q) == Some(m.target)) {
                        let mut entries = Vec::new();
                        for (c, b, g) in &r.terms {
                            for (k, a) in lookup(&table[i], *b).iter() {
                                let mut key = prev[*k].arrows.clone();
                                key.push(*g);
                                entries.push((column[key.as_slice()], c * a));
                            }
                        }
                        eb.insert(&SparseVec::from_entries(entries));
                    }
                }
            }
            let reduced: HashMap<usize, SparseVec> = eb
                .reduced_rows()
                .into_iter()
                .map(|row| (row.leading().unwrap().0, row))
                .collect();
            // Survivors in ascending monomial order.
            let survivors: Vec<usize> = (0..cands.len()).rev().filter(|c| !reduced.contains_key(c)).collect();
            let mut position = vec![usize::MAX; cands.len()];
            for (p, &c) in survivors.iter().enumerate() {
                position[c] = p;
            }
            let mut table: Vec<Vec<(usize, SparseVec)>> = vec![Vec::new(); prev.len()];
            for (c, (_, i, b)) in cands.iter().enumerate() {
                let nf = match reduced.get(&c) {
                    None => SparseVec::unit(position[c]),
                    Some(row) => row
                        .iter()
                        .skip(1)
                        .map(|(k, a)| (position[*k], -a))
                        .collect(),
                };
                table[*i].push((*b, nf));
            }
            for row in &mut table {
                row.sort_by_key(|(b, _)| *b);
            }
            right.push(table);
            monomials.push(survivors.into_iter().map(|c| cands[c].0.clone()).collect());
        }
        let basis = monomials
            .into_iter()
            .map(|ms| {
                ms.into_iter()
                    .map(|m| BasisElement {
                        source: m.source,
                        target: m.target,
                        label: BasisLabel::Path(m),
                    })
                    .collect()
            })
            .collect();
        Ok(GradedAlgebra {
            name: name.into(),
            vertex_count: q.vertex_count(),
            cutoff,
            basis,
            backend: Backend::Quotient { quiver: q.clone(), right },
            products: Mutex::new(HashMap::new()),
        })
    }

    /// The subalgebra whose degree-`d` piece is spanned by `embedding[d]`
    /// (vectors in the ambient degree-`d` basis, each inside one `e_i R e_j`).
    /// Closure under multiplication is checked lazily: a product leaving the
    /// span is reported as an inconsistent basis.
    pub fn subring(
        ambient: Arc<GradedAlgebra>,
        embedding: Vec<Vec<SparseVec>>,
        labels: Vec<Vec<String>>,
        name: impl Into<String>,
    ) -> Result<GradedAlgebra> {
        let cutoff = embedding.len().saturating_sub(1).min(ambient.cutoff);
        let mut basis = Vec::with_capacity(embedding.len());
        let mut spans = Vec::with_capacity(embedding.len());
        for (d, vecs) in embedding.iter().enumerate().take(cutoff + 1) {
            let mut eb = EchelonBasis::new();
            let mut row = Vec::with_capacity(vecs.len());
            for (k, v) in vecs.iter().enumerate() {
                let (i, j) = ambient.block_of(d, v).ok_or_else(|| {
                    Error::InconsistentBasis(format!("subring basis vector {k} in degree {d} is not in a single e_i R e_j"))
                })?;
                if eb.insert(v).is_some() {
                    return Err(Error::InconsistentBasis(format!(
                        "subring basis vector {k} in degree {d} is linearly dependent"
                    )));
                }
                let label = labels
                    .get(d)
                    .and_then(|l| l.get(k))
                    .cloned()
                    .unwrap_or_else(|| format!("c{d}_{k}"));
                row.push(BasisElement {
                    source: i,
                    target: j,
                    label: BasisLabel::Named(label),
                });
            }
            basis.push(row);
            spans.push(eb);
        }
        Ok(GradedAlgebra {
            name: name.into(),
            vertex_count: ambient.vertex_count,
            cutoff,
            basis,
            backend: Backend::Subring {
                ambient,
                embedding,
                spans,
            },
            products: Mutex::new(HashMap::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// The quiver, for path-algebra quotients.
    pub fn quiver(&self) -> Option<&Quiver> {
        match &self.backend {
            Backend::Quotient { quiver, .. } => Some(quiver),
            Backend::Subring { .. } => None,
        }
    }

    /// Ambient algebra and embedding, for subrings.
    pub fn ambient(&self) -> Option<(&Arc<GradedAlgebra>, &[Vec<SparseVec>])> {
        match &self.backend {
            Backend::Quotient { .. } => None,
            Backend::Subring { ambient, embedding, .. } => Some((ambient, embedding)),
        }
    }

    pub fn basis(&self, degree: usize) -> &[BasisElement] {
        self.basis.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.basis(degree).len()
    }

    /// dim e_i R_d e_j
    pub fn dim_block(&self, degree: usize, i: usize, j: usize) -> usize {
        self.basis(degree).iter().filter(|b| b.source == i && b.target == j).count()
    }

    /// Indices of degree-`d` basis elements with the given endpoints (either may be free).
    pub fn indices(&self, degree: usize, source: Option<usize>, target: Option<usize>) -> Vec<usize> {
        self.basis(degree)
            .iter()
            .enumerate()
            .filter(|(_, b)| source.is_none_or(|s| b.source == s) && target.is_none_or(|t| b.target == t))
            .map(|(k, _)| k)
            .collect()
    }

    /// The path monomial of a basis element, for quotient backends.
    pub fn monomial(&self, degree: usize, index: usize) -> Option<&PathMonomial> {
        match &self.basis(degree).get(index)?.label {
            BasisLabel::Path(m) => Some(m),
            BasisLabel::Named(_) => None,
        }
    }

    pub fn label(&self, degree: usize, index: usize) -> String {
        match (&self.basis[degree][index].label, &self.backend) {
            (BasisLabel::Path(m), Backend::Quotient { quiver, .. }) => m.render(quiver),
            (BasisLabel::Named(s), _) => s.clone(),
            (BasisLabel::Path(_), _) => unreachable!("path labels only occur in quotients"),
        }
    }

    /// The (source, target) block containing a homogeneous vector, if it is in one.
    fn block_of(&self, degree: usize, v: &SparseVec) -> Option<(usize, usize)> {
        let basis = self.basis(degree);
        let mut it = v.iter().map(|(k, _)| (basis[*k].source, basis[*k].target));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn idempotent(&self, v: usize) -> AlgebraElement {
        let k = self.basis(0).iter().position(|b| b.source == v).expect("vertex has an idempotent");
        AlgebraElement::basis(0, k)
    }

    pub fn one(&self) -> AlgebraElement {
        (1..=self.vertex_count).fold(AlgebraElement::zero(), |acc, v| acc.add(&self.idempotent(v)))
    }

    /// The class of a path given by arrow ids (quotient backends only).
    pub fn path(&self, ids: &[&str]) -> Result<AlgebraElement> {
        let Backend::Quotient { quiver, .. } = &self.backend else {
            return Err(Error::InvalidQuiver(format!("{} has no arrows to form paths from", self.name)));
        };
        let p = PathMonomial::from_ids(quiver, ids)?;
        let mut acc = self.idempotent(p.source);
        for &a in &p.arrows {
            let arrow = self.arrow_element(quiver, a);
            acc = self.multiply(&acc, &arrow)?;
        }
        Ok(acc)
    }

    fn arrow_element(&self, q: &Quiver, arrow: usize) -> AlgebraElement {
        let k = self
            .basis(1)
            .iter()
            .position(|b| matches!(&b.label, BasisLabel::Path(m) if m.arrows == [arrow]))
            .unwrap_or_else(|| panic!("arrow {} survives in degree 1", q.arrow(arrow).id));
        AlgebraElement::basis(1, k)
    }

    /// Product of two basis elements as a vector in degree `d1 + d2`.
    pub fn multiply_basis(&self, d1: usize, i: usize, d2: usize, j: usize) -> Result<SparseVec> {
        let degree = d1 + d2;
        if degree > self.cutoff {
            return Err(Error::TruncationExceeded {
                degree,
                cutoff: self.cutoff,
            });
        }
        let (a, b) = (&self.basis[d1][i], &self.basis[d2][j]);
        if a.target != b.source {
            return Ok(SparseVec::new());
        }
        if d2 == 0 {
            return Ok(SparseVec::unit(i));
        }
        if d1 == 0 {
            return Ok(SparseVec::unit(j));
        }
        let key = (d1, i, d2, j);
        if let Some(v) = self.products.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = match &self.backend {
            Backend::Quotient { right, .. } => {
                let BasisLabel::Path(m) = &b.label else { unreachable!() };
                let mut v = SparseVec::unit(i);
                for (step, &arrow) in m.arrows.iter().enumerate() {
                    let table = &right[d1 + step];
                    let mut next = SparseVec::new();
                    for (k, c) in v.iter() {
                        next = next.add_scaled(c, lookup(&table[*k], arrow));
                    }
                    v = next;
                }
                v
            }
            Backend::Subring {
                ambient,
                embedding,
                spans,
            } => {
                let x = AlgebraElement::from_vec(d1, &embedding[d1][i]);
                let y = AlgebraElement::from_vec(d2, &embedding[d2][j]);
                let prod = ambient.multiply(&x, &y)?.component(degree);
                spans[degree].express(&prod).ok_or_else(|| {
                    Error::InconsistentBasis(format!(
                        "product of {} and {} leaves the subring",
                        self.label(d1, i),
                        self.label(d2, j)
                    ))
                })?
            }
        };
        self.products.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for ((d1, i), x) in a.terms() {
            for ((d2, j), y) in b.terms() {
                if self.basis[d1][i].target != self.basis[d2][j].source {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.multiply_basis(d1, i, d2, j)?.iter() {
                    out.add_term(d1 + d2, *k, &(&xy * c));
                }
            }
        }
        Ok(out)
    }

    /// `{label: scalar}` rendering of an element.
    pub fn element_json(&self, x: &AlgebraElement) -> Value {
        let mut m = Map::new();
        for ((d, i), c) in x.terms() {
            m.insert(self.label(d, i), serde_json::to_value(c).expect("scalars serialize"));
        }
        Value::Object(m)
    }

    pub fn render_element(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = x
            .terms()
            .map(|((d, i), c)| {
                let l = self.label(d, i);
                if c.is_one() {
                    l
                } else {
                    format!("({c})*{l}")
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// `{"ring", "cutoff", "dims": [[d, i, j, dim], ...]}` over the nonzero blocks.
    pub fn dims_json(&self) -> Value {
        let mut dims = Vec::new();
        for d in 0..=self.cutoff {
            for i in 1..=self.vertex_count {
                for j in 1..=self.vertex_count {
                    let k = self.dim_block(d, i, j);
                    if k > 0 {
                        dims.push(json!([d, i, j, k]));
                    }
                }
            }
        }
        json!({ "ring": self.name, "cutoff": self.cutoff, "dims": dims })
    }
}

fn lookup(row: &[(usize, SparseVec)], arrow: usize) -> &SparseVec {
    let k = row
        .binary_search_by_key(&arrow, |(b, _)| *b)
        .expect("arrow composes with the monomial");
    &row[k].1
}

/// The simple path (non-star arrows first, then star arrows) with the same
/// source and the same numbers of non-star and star arrows as `p`.
///
/// Only defined on a doubled cyclic quiver, where it is the normal form of `p`
/// in the preprojective algebra.
pub fn simple_path_normal_form(p: &PathMonomial, q: &Quiver) -> Result<PathMonomial> {
    match q.family() {
        Some(f) if f.kind() == FamilyKind::A && q.is_doubled() => {}
        _ => return Err(Error::WrongFamily(format!("simple paths need a doubled A~ quiver, got {}", q.name()))),
    }
    let stars = p.arrows.iter().filter(|&&a| q.arrow(a).is_star).count();
    let plain = p.degree() - stars;
    let mut out = PathMonomial::trivial(p.source);
    for k in 0..p.degree() {
        let want_star = k >= plain;
        let next = q
            .arrows_from(out.target)
            .find(|&a| q.arrow(a).is_star == want_star)
            .expect("each vertex of a cycle has one arrow of each kind leaving it");
        out = out.extend(q, next)?;
    }
    Ok(out)
}

/// The central loops: `beta` is the sum over vertices of the cycle of non-star
/// arrows starting there, `beta*` the same with star arrows.
pub fn build_central_loops(alg: &GradedAlgebra) -> Result<(AlgebraElement, AlgebraElement)> {
    let q = alg
        .quiver()
        .filter(|q| q.family().is_some_and(|f| f.kind() == FamilyKind::A))
        .ok_or_else(|| Error::WrongFamily(format!("central loops need an A~ quiver, got {}", alg.name())))?;
    let n = q.vertex_count();
    if alg.cutoff() < 2 * n {
        return Err(Error::CutoffTooSmall(format!("central loops of degree {n} need cutoff >= {}", 2 * n)));
    }
    let cycle = |v: usize, star: bool| -> Result<AlgebraElement> {
        let mut ids = Vec::with_capacity(n);
        let mut at = v;
        for _ in 0..n {
            let a = q.arrows_from(at).find(|&a| q.arrow(a).is_star == star).unwrap();
            ids.push(q.arrow(a).id.as_str());
            at = q.arrow(a).target;
        }
        alg.path(&ids)
    };
    let mut beta = AlgebraElement::zero();
    let mut beta_star = AlgebraElement::zero();
    for v in 1..=n {
        beta = beta.add(&cycle(v, false)?);
        beta_star = beta_star.add(&cycle(v, true)?);
    }
    Ok((beta, beta_star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{build_extended_dynkin, DynkinFamily};

    fn pi(f: DynkinFamily, d: usize) -> GradedAlgebra {
        let q = build_extended_dynkin(f).unwrap().double().unwrap();
        GradedAlgebra::preprojective(&q, d).unwrap()
    }

    #[test]
    fn cycle_dimensions() {
        let a = pi(DynkinFamily::a(3).unwrap(), 6);
        for d in 0..=6 {
            assert_eq!(a.dim(d), 3 * (d + 1));
            for j in 1..=3 {
                assert_eq!(a.indices(d, Some(j), None).len(), d + 1);
            }
        }
    }

    #[test]
    fn degree_zero_is_idempotents() {
        let a = pi(DynkinFamily::e(6).unwrap(), 2);
        assert_eq!(a.dim(0), 7);
        for i in 1..=7 {
            for j in 1..=7 {
                let p = a.multiply(&a.idempotent(i), &a.idempotent(j)).unwrap();
                assert_eq!(p, if i == j { a.idempotent(i) } else { AlgebraElement::zero() });
            }
        }
    }

    #[test]
    fn relation_identifies_paths() {
        let a = pi(DynkinFamily::a(3).unwrap(), 4);
        assert_eq!(a.path(&["a1", "a1*"]).unwrap(), a.path(&["a3*", "a3"]).unwrap());
        assert_eq!(a.path(&["a2", "a2*"]).unwrap(), a.path(&["a1*", "a1"]).unwrap());
        // yx = (a1 a1*)^2 with x = a2 a3 and y = a3* a2*
        let x = a.path(&["a2", "a3"]).unwrap();
        let y = a.path(&["a3*", "a2*"]).unwrap();
        let s = a.path(&["a1", "a1*"]).unwrap();
        let t = a.path(&["a1*", "a1"]).unwrap();
        assert_eq!(a.multiply(&y, &x).unwrap(), a.multiply(&s, &s).unwrap());
        assert_eq!(a.multiply(&x, &y).unwrap(), a.multiply(&t, &t).unwrap());
    }

    #[test]
    fn leaf_relation_kills_path() {
        let a = pi(DynkinFamily::d(5).unwrap(), 3);
        assert!(a.path(&["a1", "a1*"]).unwrap().is_zero());
        assert!(!a.path(&["a1*", "a1"]).unwrap().is_zero());
    }

    #[test]
    fn truncation_is_enforced() {
        let a = pi(DynkinFamily::a(2).unwrap(), 2);
        let x = a.path(&["a1", "a2"]).unwrap();
        assert_eq!(
            a.multiply(&x, &a.path(&["a1"]).unwrap()),
            Err(Error::TruncationExceeded { degree: 3, cutoff: 2 })
        );
    }

    #[test]
    fn simple_paths_match_reduction() {
        let q = build_extended_dynkin(DynkinFamily::a(3).unwrap()).unwrap().double().unwrap();
        let a = GradedAlgebra::preprojective(&q, 4).unwrap();
        let p = PathMonomial::from_ids(&q, &["a1*", "a1"]).unwrap();
        let nf = simple_path_normal_form(&p, &q).unwrap();
        assert_eq!(nf.ids(&q), vec!["a2", "a2*"]);
        let s = PathMonomial::from_ids(&q, &["a1", "a2", "a2*"]).unwrap();
        assert_eq!(simple_path_normal_form(&s, &q).unwrap(), s);
        for d in 0..=4 {
            for k in 0..a.dim(d) {
                let m = a.monomial(d, k).unwrap();
                assert_eq!(&simple_path_normal_form(m, &q).unwrap(), m);
            }
        }
        let d5 = build_extended_dynkin(DynkinFamily::d(5).unwrap()).unwrap().double().unwrap();
        assert!(matches!(
            simple_path_normal_form(&PathMonomial::trivial(1), &d5),
            Err(Error::WrongFamily(_))
        ));
    }

    #[test]
    fn central_loops_commute() {
        let a = pi(DynkinFamily::a(3).unwrap(), 6);
        let (b, bs) = build_central_loops(&a).unwrap();
        assert_eq!(b.degree(), Some(3));
        assert_eq!(a.multiply(&b, &bs).unwrap(), a.multiply(&bs, &b).unwrap());
        for v in 1..=3 {
            let e = a.idempotent(v);
            assert_eq!(a.multiply(&b, &e).unwrap(), a.multiply(&e, &b).unwrap());
        }
        let small = pi(DynkinFamily::a(3).unwrap(), 5);
        assert!(matches!(build_central_loops(&small), Err(Error::CutoffTooSmall(_))));
    }

    #[test]
    fn dims_export() {
        let a = pi(DynkinFamily::a(2).unwrap(), 1);
        let j = a.dims_json();
        assert_eq!(j["cutoff"], 1);
        assert_eq!(j["dims"].as_array().unwrap().len(), 2 + 2);
    }
}
