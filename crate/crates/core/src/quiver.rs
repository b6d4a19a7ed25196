//! Quivers, their doubles, and the extended Dynkin builders.
//!
//! Vertices are numbered from 1.  Arrow ids follow the usual figures: `a1`,
//! `a2`, ... for the original arrows and `a1*`, ... for the added reverse
//! arrows.  Doubling appends all star arrows after the original ones, so the
//! arrow index order is also the monomial order used by the algebra module:
//! non-star before star, then by position.

use std::collections::HashSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    A,
    D,
    E,
}

/// An extended Dynkin type: `A` with parameter n is the n-cycle (type
/// A~_{n-1}), `D` with n has n vertices (type D~_{n-1}), `E` with m in 6..=8
/// has m + 1 vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DynkinFamily {
    kind: FamilyKind,
    parameter: usize,
}

impl DynkinFamily {
    pub fn new(kind: FamilyKind, parameter: usize) -> Result<Self> {
        let ok = match kind {
            FamilyKind::A => parameter >= 2,
            FamilyKind::D => parameter >= 5,
            FamilyKind::E => (6..=8).contains(&parameter),
        };
        if !ok {
            let range = match kind {
                FamilyKind::A => "n >= 2",
                FamilyKind::D => "n >= 5",
                FamilyKind::E => "m in 6..=8",
            };
            return Err(Error::OutOfRange(format!("{kind:?} with parameter {parameter}; need {range}")));
        }
        Ok(DynkinFamily { kind, parameter })
    }

    pub fn a(n: usize) -> Result<Self> {
        DynkinFamily::new(FamilyKind::A, n)
    }

    pub fn d(n: usize) -> Result<Self> {
        DynkinFamily::new(FamilyKind::D, n)
    }

    pub fn e(m: usize) -> Result<Self> {
        DynkinFamily::new(FamilyKind::E, m)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn parameter(&self) -> usize {
        self.parameter
    }

    pub fn vertex_count(&self) -> usize {
        match self.kind {
            FamilyKind::A | FamilyKind::D => self.parameter,
            FamilyKind::E => self.parameter + 1,
        }
    }
}

impl fmt::Display for DynkinFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::A => write!(f, "A~{}", self.parameter - 1),
            FamilyKind::D => write!(f, "D~{}", self.parameter - 1),
            FamilyKind::E => write!(f, "E~{}", self.parameter),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub is_star: bool,
    /// The paired arrow once the quiver is doubled.
    pub partner: Option<String>,
}

impl Arrow {
    pub fn new(id: impl Into<String>, source: usize, target: usize) -> Self {
        Arrow {
            id: id.into(),
            source,
            target,
            is_star: false,
            partner: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    family: Option<DynkinFamily>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.id.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id {}", a.id)));
            }
            for v in [a.source, a.target] {
                if v == 0 || v > vertex_count {
                    return Err(Error::InvalidQuiver(format!(
                        "arrow {} touches vertex {v}, outside 1..={vertex_count}",
                        a.id
                    )));
                }
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
            family: None,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, index: usize) -> &Arrow {
        &self.arrows[index]
    }

    pub fn family(&self) -> Option<DynkinFamily> {
        self.family
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| Error::InvalidQuiver(format!("no arrow with id {id}")))
    }

    pub fn is_doubled(&self) -> bool {
        self.arrows.iter().any(|a| a.is_star)
    }

    /// Indices of arrows leaving `v`, in arrow order.
    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    /// Indices of arrows entering `v`, in arrow order.
    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    /// Index of the partner of a doubled arrow.
    pub fn partner_index(&self, index: usize) -> Option<usize> {
        let p = self.arrows[index].partner.as_deref()?;
        self.arrow_index(p).ok()
    }

    /// The non-star arrows, i.e. the pairs of the double.
    pub fn pairs(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(|a| !a.is_star)
    }

    /// Adds a reverse arrow `id*` for every arrow; loops get a second loop.
    pub fn double(&self) -> Result<Quiver> {
        if let Some(a) = self.arrows.iter().find(|a| a.is_star) {
            return Err(Error::AlreadyDoubled(a.id.clone()));
        }
        let mut arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|a| Arrow {
                partner: Some(format!("{}*", a.id)),
                ..a.clone()
            })
            .collect();
        for a in &self.arrows {
            arrows.push(Arrow {
                id: format!("{}*", a.id),
                source: a.target,
                target: a.source,
                is_star: true,
                partner: Some(a.id.clone()),
            });
        }
        let mut q = Quiver::new(self.vertex_count, arrows)?;
        q.family = self.family;
        Ok(q)
    }

    pub fn from_json(v: &Value) -> Result<Quiver> {
        if let Some(fam) = v.get("family") {
            let kind = match fam.as_str() {
                Some("A") => FamilyKind::A,
                Some("D") => FamilyKind::D,
                Some("E") => FamilyKind::E,
                _ => return Err(Error::Parse(format!("unknown quiver family {fam}"))),
            };
            let parameter = v
                .get("parameter")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("family quiver needs integer \"parameter\"".into()))?;
            return build_extended_dynkin(DynkinFamily::new(kind, parameter as usize)?);
        }
        let n = v
            .get("vertices")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("quiver needs \"family\" or integer \"vertices\"".into()))?;
        let list = v
            .get("arrows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("quiver needs an \"arrows\" array".into()))?;
        let mut arrows = Vec::with_capacity(list.len());
        for (k, a) in list.iter().enumerate() {
            let field = |name: &str| {
                a.get(name)
                    .ok_or_else(|| Error::Parse(format!("arrow #{k} is missing \"{name}\"")))
            };
            let id = field("id")?
                .as_str()
                .ok_or_else(|| Error::Parse(format!("arrow #{k}: \"id\" must be a string")))?;
            if id.ends_with('*') {
                return Err(Error::AlreadyDoubled(id.to_string()));
            }
            let vertex = |name: &str| -> Result<usize> {
                field(name)?
                    .as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("arrow {id}: \"{name}\" must be a vertex number")))
            };
            arrows.push(Arrow::new(id, vertex("source")?, vertex("target")?));
        }
        Quiver::new(n as usize, arrows)
    }

    pub fn to_json(&self) -> Value {
        if let Some(f) = self.family {
            let fam = match f.kind {
                FamilyKind::A => "A",
                FamilyKind::D => "D",
                FamilyKind::E => "E",
            };
            return json!({ "family": fam, "parameter": f.parameter });
        }
        let arrows: Vec<Value> = self
            .pairs()
            .map(|a| json!({ "id": a.id, "source": a.source, "target": a.target }))
            .collect();
        json!({ "vertices": self.vertex_count, "arrows": arrows })
    }

    pub fn name(&self) -> String {
        match self.family {
            Some(f) => f.to_string(),
            None => format!("quiver({} vertices, {} arrows)", self.vertex_count, self.pairs().count()),
        }
    }
}

/// Builds the undoubled extended Dynkin quiver with the standard labeling.
pub fn build_extended_dynkin(spec: DynkinFamily) -> Result<Quiver> {
    let spec = DynkinFamily::new(spec.kind, spec.parameter)?;
    let arrow = |i: usize, s: usize, t: usize| Arrow::new(format!("a{i}"), s, t);
    let n = spec.parameter;
    let arrows: Vec<Arrow> = match spec.kind {
        FamilyKind::A => (1..=n).map(|i| arrow(i, i, if i == n { 1 } else { i + 1 })).collect(),
        FamilyKind::D => {
            let mut v = vec![arrow(1, 1, 3), arrow(2, 2, 3)];
            v.extend((3..=n - 3).map(|i| arrow(i, i, i + 1)));
            v.push(arrow(n - 1, n - 2, n - 1));
            v.push(arrow(n, n - 2, n));
            v
        }
        FamilyKind::E => {
            // A chain 1 -> ... -> len plus one branch arm at `center`.
            let (len, center, branch) = match n {
                6 => (5, 3, 2),
                7 => (7, 4, 1),
                _ => (8, 6, 1),
            };
            let mut v: Vec<Arrow> = (1..len).map(|i| arrow(i, i, i + 1)).collect();
            let mut prev = center;
            for k in 0..branch {
                let (id, vertex) = (len + 1 + k, len + 1 + k);
                v.push(arrow(id, prev, vertex));
                prev = vertex;
            }
            v
        }
    };
    let mut q = Quiver::new(spec.vertex_count(), arrows)?;
    q.family = Some(spec);
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(q: &Quiver) -> Vec<(String, usize, usize)> {
        q.arrows().iter().map(|a| (a.id.clone(), a.source, a.target)).collect()
    }

    fn s(id: &str, a: usize, b: usize) -> (String, usize, usize) {
        (id.to_string(), a, b)
    }

    #[test]
    fn cycle_labels() {
        let q = build_extended_dynkin(DynkinFamily::a(3).unwrap()).unwrap();
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(shape(&q), vec![s("a1", 1, 2), s("a2", 2, 3), s("a3", 3, 1)]);
    }

    #[test]
    fn d_with_degenerate_chain() {
        let q = build_extended_dynkin(DynkinFamily::d(5).unwrap()).unwrap();
        assert_eq!(q.vertex_count(), 5);
        assert_eq!(shape(&q), vec![s("a1", 1, 3), s("a2", 2, 3), s("a4", 3, 4), s("a5", 3, 5)]);
        let q7 = build_extended_dynkin(DynkinFamily::d(7).unwrap()).unwrap();
        assert_eq!(
            shape(&q7),
            vec![s("a1", 1, 3), s("a2", 2, 3), s("a3", 3, 4), s("a4", 4, 5), s("a6", 5, 6), s("a7", 5, 7)]
        );
    }

    #[test]
    fn e_branches() {
        let e6 = build_extended_dynkin(DynkinFamily::e(6).unwrap()).unwrap();
        assert_eq!(e6.vertex_count(), 7);
        assert_eq!(e6.arrows().len(), 6);
        assert!(shape(&e6).contains(&s("a6", 3, 6)));
        assert!(shape(&e6).contains(&s("a7", 6, 7)));
        let e7 = build_extended_dynkin(DynkinFamily::e(7).unwrap()).unwrap();
        assert!(shape(&e7).contains(&s("a8", 4, 8)));
        let e8 = build_extended_dynkin(DynkinFamily::e(8).unwrap()).unwrap();
        assert!(shape(&e8).contains(&s("a9", 6, 9)));
        assert_eq!(e8.arrows().len(), 8);
    }

    #[test]
    fn arrow_counts_match_graph_shape() {
        for n in 2..7 {
            let q = build_extended_dynkin(DynkinFamily::a(n).unwrap()).unwrap();
            assert_eq!(q.arrows().len(), q.vertex_count());
        }
        for f in [DynkinFamily::d(5), DynkinFamily::d(6), DynkinFamily::e(6), DynkinFamily::e(7), DynkinFamily::e(8)] {
            let q = build_extended_dynkin(f.unwrap()).unwrap();
            assert_eq!(q.arrows().len(), q.vertex_count() - 1);
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(DynkinFamily::a(1), Err(Error::OutOfRange(_))));
        assert!(matches!(DynkinFamily::d(4), Err(Error::OutOfRange(_))));
        assert!(matches!(DynkinFamily::e(9), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn doubling() {
        let q = build_extended_dynkin(DynkinFamily::a(3).unwrap()).unwrap().double().unwrap();
        assert_eq!(q.arrows().len(), 6);
        let star = &q.arrows()[q.arrow_index("a1*").unwrap()];
        assert_eq!((star.source, star.target, star.is_star), (2, 1, true));
        for (i, a) in q.arrows().iter().enumerate() {
            let p = q.partner_index(i).unwrap();
            assert_eq!(q.partner_index(p), Some(i));
            assert_ne!(a.is_star, q.arrow(p).is_star);
        }
        for v in 1..=3 {
            assert_eq!(q.arrows_from(v).count(), q.arrows_into(v).count());
        }
        assert!(matches!(q.double(), Err(Error::AlreadyDoubled(_))));

        let d4 = build_extended_dynkin(DynkinFamily::d(5).unwrap()).unwrap().double().unwrap();
        assert_eq!(d4.arrows().len(), 8);
    }

    #[test]
    fn loop_doubles_to_two_loops() {
        let q = Quiver::new(1, vec![Arrow::new("x", 1, 1)]).unwrap().double().unwrap();
        assert_eq!(shape(&q), vec![s("x", 1, 1), s("x*", 1, 1)]);
    }

    #[test]
    fn json_forms() {
        let q = Quiver::from_json(&json!({"family": "A", "parameter": 3})).unwrap();
        assert_eq!(q.family(), Some(DynkinFamily::a(3).unwrap()));
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
        let c = Quiver::from_json(&json!({"vertices": 2, "arrows": [{"id": "b", "source": 1, "target": 2}]})).unwrap();
        assert_eq!(c.family(), None);
        assert!(matches!(
            Quiver::from_json(&json!({"vertices": 2, "arrows": [{"id": "b", "source": 1, "target": 3}]})),
            Err(Error::InvalidQuiver(_))
        ));
        assert!(matches!(Quiver::from_json(&json!({"family": "F", "parameter": 3})), Err(Error::Parse(_))));
    }
}
