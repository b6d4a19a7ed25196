//! Arrow-scaling automorphisms of preprojective algebras and the finite
//! groups they generate.
//!
//! An automorphism fixes every vertex idempotent, scales each original arrow
//! `a` by `c_a` and its reverse `a*` by `t_a`.  It preserves the preprojective
//! relations exactly when all products `c_a t_a` coincide.

use std::collections::{HashMap, HashSet, VecDeque};

use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraElement, GradedAlgebra, PathMonomial};
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::scalar::Scalar;

/// Default cap on the size of a generated group.
pub const DEFAULT_GROUP_BOUND: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingAutomorphism {
    /// Ids of the non-star arrows, in quiver order.
    pairs: Vec<String>,
    c: Vec<Scalar>,
    t: Vec<Scalar>,
}

impl ScalingAutomorphism {
    pub fn identity(q: &Quiver) -> Self {
        let pairs: Vec<String> = q.pairs().map(|a| a.id.clone()).collect();
        let n = pairs.len();
        ScalingAutomorphism {
            pairs,
            c: vec![Scalar::one(); n],
            t: vec![Scalar::one(); n],
        }
    }

    /// Validates scalars listed in quiver pair order.
    pub fn new(q: &Quiver, c: Vec<Scalar>, t: Vec<Scalar>) -> Result<Self> {
        let pairs: Vec<String> = q.pairs().map(|a| a.id.clone()).collect();
        if c.len() != pairs.len() || t.len() != pairs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} arrow pairs but {} c-scalars and {} t-scalars",
                pairs.len(),
                c.len(),
                t.len()
            )));
        }
        let g = ScalingAutomorphism { pairs, c, t };
        g.check()?;
        Ok(g)
    }

    /// Validates scalars given by arrow id; `t` is indexed by the non-star partner.
    pub fn validate(q: &Quiver, c: &HashMap<String, Scalar>, t: &HashMap<String, Scalar>) -> Result<Self> {
        let mut cs = Vec::new();
        let mut ts = Vec::new();
        for a in q.pairs() {
            cs.push(c.get(&a.id).cloned().ok_or_else(|| Error::MissingScalar(format!("c for {}", a.id)))?);
            ts.push(t.get(&a.id).cloned().ok_or_else(|| Error::MissingScalar(format!("t for {}", a.id)))?);
        }
        for key in c.keys().chain(t.keys()) {
            if !q.pairs().any(|a| &a.id == key) {
                return Err(Error::QuiverMismatch(format!("scalar given for unknown arrow {key}")));
            }
        }
        ScalingAutomorphism::new(q, cs, ts)
    }

    /// The automorphism with `c_i = zeta_N^{a_i}` and `t_i = zeta_N^{m - a_i}`,
    /// so that every `c_i t_i = zeta_N^m`.
    pub fn from_exponents(q: &Quiver, order: u32, a: &[i64], m: i64) -> Result<Self> {
        let c = a.iter().map(|&k| Scalar::root_of_unity(order, k)).collect();
        let t = a.iter().map(|&k| Scalar::root_of_unity(order, m - k)).collect();
        ScalingAutomorphism::new(q, c, t)
    }

    fn check(&self) -> Result<()> {
        for (i, id) in self.pairs.iter().enumerate() {
            if self.c[i].is_zero() {
                return Err(Error::ZeroScalar(id.clone()));
            }
            if self.t[i].is_zero() {
                return Err(Error::ZeroScalar(format!("{id}*")));
            }
        }
        if let Some(first) = self.pairs.first() {
            let ct = &self.c[0] * &self.t[0];
            for i in 1..self.pairs.len() {
                if &self.c[i] * &self.t[i] != ct {
                    return Err(Error::ConstraintViolation(format!(
                        "{} (c*t differs from the value at {first})",
                        self.pairs[i]
                    )));
                }
            }
        }
        for (i, id) in self.pairs.iter().enumerate() {
            if self.c[i].root_of_unity_exponent().is_none() {
                return Err(Error::InfiniteOrder(id.clone()));
            }
            if self.t[i].root_of_unity_exponent().is_none() {
                return Err(Error::InfiniteOrder(format!("{id}*")));
            }
        }
        Ok(())
    }

    pub fn pair_ids(&self) -> &[String] {
        &self.pairs
    }

    pub fn c(&self) -> &[Scalar] {
        &self.c
    }

    pub fn t(&self) -> &[Scalar] {
        &self.t
    }

    /// The common value of `c_a t_a`.
    pub fn ct(&self) -> Scalar {
        match self.pairs.is_empty() {
            true => Scalar::one(),
            false => &self.c[0] * &self.t[0],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.c.iter().chain(&self.t).all(Scalar::is_one)
    }

    fn check_quiver(&self, q: &Quiver) -> Result<()> {
        if q.pairs().map(|a| a.id.as_str()).ne(self.pairs.iter().map(String::as_str)) {
            return Err(Error::QuiverMismatch(format!(
                "automorphism on arrows [{}] used with {}",
                self.pairs.join(", "),
                q.name()
            )));
        }
        Ok(())
    }

    /// Scalar by which each arrow of the doubled quiver is multiplied.
    pub fn arrow_weights(&self, q: &Quiver) -> Result<Vec<Scalar>> {
        self.check_quiver(q)?;
        let pos: HashMap<&str, usize> = self.pairs.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        q.arrows()
            .iter()
            .map(|a| {
                if a.is_star {
                    let p = a.partner.as_deref().unwrap_or_default();
                    Ok(self.t[pos[p]].clone())
                } else {
                    Ok(self.c[pos[a.id.as_str()]].clone())
                }
            })
            .collect()
    }

    pub fn weight(&self, weights: &[Scalar], m: &PathMonomial) -> Scalar {
        m.arrows().iter().fold(Scalar::one(), |acc, &a| &acc * &weights[a])
    }

    /// Applies the automorphism to an element of a path-algebra quotient.
    pub fn apply(&self, alg: &GradedAlgebra, x: &AlgebraElement) -> Result<AlgebraElement> {
        let q = alg
            .quiver()
            .ok_or_else(|| Error::QuiverMismatch(format!("{} is not a path-algebra quotient", alg.name())))?;
        let w = self.arrow_weights(q)?;
        Ok(x.map_coeffs(|d, i, c| c * &self.weight(&w, alg.monomial(d, i).unwrap())))
    }

    pub fn compose(&self, other: &ScalingAutomorphism) -> Result<ScalingAutomorphism> {
        if self.pairs != other.pairs {
            return Err(Error::QuiverMismatch("composing automorphisms of different quivers".into()));
        }
        Ok(ScalingAutomorphism {
            pairs: self.pairs.clone(),
            c: self.c.iter().zip(&other.c).map(|(a, b)| a * b).collect(),
            t: self.t.iter().zip(&other.t).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn inverse(&self) -> ScalingAutomorphism {
        let inv = |v: &[Scalar]| v.iter().map(|s| s.inv().expect("validated scalars are nonzero")).collect();
        ScalingAutomorphism {
            pairs: self.pairs.clone(),
            c: inv(&self.c),
            t: inv(&self.t),
        }
    }

    /// Exact identity key: each scalar written as zeta_m^k.
    fn key(&self) -> Vec<(u32, u32)> {
        self.c
            .iter()
            .chain(&self.t)
            .map(|s| s.root_of_unity_exponent().expect("validated scalars are roots of unity"))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let side = |v: &[Scalar]| -> Value {
            let mut m = Map::new();
            for (id, s) in self.pairs.iter().zip(v) {
                m.insert(id.clone(), serde_json::to_value(s).expect("scalars serialize"));
            }
            Value::Object(m)
        };
        json!({ "c": side(&self.c), "t": side(&self.t) })
    }

    pub fn from_json(q: &Quiver, v: &Value) -> Result<ScalingAutomorphism> {
        let side = |name: &str| -> Result<HashMap<String, Scalar>> {
            let obj = v
                .get(name)
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Parse(format!("automorphism needs a \"{name}\" object")))?;
            obj.iter().map(|(k, s)| Ok((k.clone(), Scalar::from_json(s)?))).collect()
        };
        ScalingAutomorphism::validate(q, &side("c")?, &side("t")?)
    }
}

/// A finite group of scaling automorphisms; the identity comes first.
#[derive(Clone, Debug)]
pub struct AutGroup {
    elements: Vec<ScalingAutomorphism>,
}

impl AutGroup {
    pub fn trivial(q: &Quiver) -> AutGroup {
        AutGroup {
            elements: vec![ScalingAutomorphism::identity(q)],
        }
    }

    pub fn elements(&self) -> &[ScalingAutomorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn from_json(q: &Quiver, v: &Value) -> Result<AutGroup> {
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("group needs a \"generators\" array".into()))?
            .iter()
            .map(|g| ScalingAutomorphism::from_json(q, g))
            .collect::<Result<Vec<_>>>()?;
        generate_group(q, &gens, DEFAULT_GROUP_BOUND)
    }
}

/// Closure of the generators under composition, in breadth-first order.
pub fn generate_group(q: &Quiver, gens: &[ScalingAutomorphism], bound: usize) -> Result<AutGroup> {
    let id = ScalingAutomorphism::identity(q);
    for g in gens {
        g.check_quiver(q)?;
    }
    let mut seen: HashSet<Vec<(u32, u32)>> = HashSet::from([id.key()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g)?;
            if seen.insert(y.key()) {
                if elements.len() == bound {
                    return Err(Error::BoundExceeded(bound));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(AutGroup { elements })
}

/// Group average (1/|G|) sum g(x), the projection onto the fixed elements.
pub fn reynolds(group: &AutGroup, alg: &GradedAlgebra, x: &AlgebraElement) -> Result<AlgebraElement> {
    let mut acc = AlgebraElement::zero();
    for g in group.elements() {
        acc = acc.add(&g.apply(alg, x)?);
    }
    let inv = Scalar::from_int(group.order() as i64).inv()?;
    Ok(acc.scale(&inv))
}
