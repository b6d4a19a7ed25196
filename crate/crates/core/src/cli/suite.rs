//! Golden regression checks for the worked Ã₂ example and the structural
//! facts around it.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{build_central_loops, preprojective_relations, AlgebraElement, GradedAlgebra};
use crate::automorphism::{generate_group, reynolds, AutGroup, ScalingAutomorphism};
use crate::error::{Error, Result};
use crate::fixed_ring::{build_subalgebra_truncation, extract_generators, fixed_basis};
use crate::quiver::{build_extended_dynkin, DynkinFamily, Quiver};
use crate::ratfun::{Poly, RatFun, TruncatedSeries};
use crate::resolution::{ext_against_ring, gorenstein_verdict, minimal_resolution, simple_module};
use crate::scalar::Scalar;
use crate::traces::{
    hdet, hdet_is_homomorphism, hilbert_closed, molien, reciprocity_check, trace_matrix, vtrace_bruteforce,
    vtrace_closed, Side,
};

use super::table;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub cutoff: usize,
    pub corrupted: bool,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&SuiteCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect();
        json!({
            "cutoff": self.cutoff,
            "corrupted": self.corrupted,
            "passed": self.checks.iter().filter(|c| c.passed).count(),
            "failed": self.failures().count(),
            "checks": checks,
        })
    }

    pub fn to_table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| vec![if c.passed { "PASS" } else { "FAIL" }.to_string(), c.name.clone(), c.detail.clone()])
            .collect();
        let mut out = table(&["result", "check", "detail"], &rows);
        out.push_str(&format!(
            "{} passed, {} failed\n",
            self.checks.len() - self.failures().count(),
            self.failures().count()
        ));
        out
    }
}

struct Suite {
    checks: Vec<SuiteCheck>,
}

impl Suite {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(SuiteCheck {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&k| Scalar::from_int(k)).collect()
}

fn arrows_of(q: &Quiver) -> Vec<(String, usize, usize)> {
    q.arrows().iter().map(|a| (a.id.clone(), a.source, a.target)).collect()
}

fn ratfun(num: &[i64], den: &[i64]) -> Result<RatFun> {
    RatFun::normalize(Poly::from_ints(num), Poly::from_ints(den))
}

/// The preprojective algebra of the doubled Ã₂, or with `corrupt` the
/// quotient that forgets the relation at vertex 1.
fn example_algebra(q: &Quiver, cutoff: usize, corrupt: bool) -> Result<GradedAlgebra> {
    if !corrupt {
        return GradedAlgebra::preprojective(q, cutoff);
    }
    let mut rels = preprojective_relations(q)?;
    rels.remove(0);
    GradedAlgebra::quadratic_quotient(q, &rels, cutoff, "Pi(A~2) with a broken relation")
}

/// Runs every golden check.  Brute-force comparisons go up to `cutoff`.
pub fn example_suite(cutoff: usize, corrupt: bool) -> Result<SuiteReport> {
    let d = cutoff.max(6);
    let base = build_extended_dynkin(DynkinFamily::a(3)?)?;
    let q = base.double()?;
    let alg = Arc::new(example_algebra(&q, d, corrupt)?);
    let g = ScalingAutomorphism::new(&q, ints(&[1, -1, -1]), ints(&[1, -1, -1]))?;
    let group = generate_group(&q, &[g.clone()], 10)?;
    let mut s = Suite { checks: Vec::new() };

    s.run("quiver A~2 arrows", || {
        let want = vec![("a1".into(), 1, 2), ("a2".into(), 2, 3), ("a3".into(), 3, 1)];
        let got = arrows_of(&base);
        Ok((got == want, format!("{got:?}")))
    });
    s.run("quiver D~4 arrows", || {
        let got = arrows_of(&build_extended_dynkin(DynkinFamily::d(5)?)?);
        let want = vec![("a1".into(), 1, 3), ("a2".into(), 2, 3), ("a4".into(), 3, 4), ("a5".into(), 3, 5)];
        Ok((got == want, format!("{got:?}")))
    });
    s.run("quiver E~6 branch", || {
        let e6 = build_extended_dynkin(DynkinFamily::e(6)?)?;
        let got = arrows_of(&e6);
        let ok = e6.vertex_count() == 7
            && got.contains(&("a6".into(), 3, 6))
            && got.contains(&("a7".into(), 6, 7));
        Ok((ok, format!("{} vertices, {} arrows", e6.vertex_count(), got.len())))
    });
    s.run("double of A~2", || {
        let a1s = &q.arrows()[q.arrow_index("a1*")?];
        Ok((
            q.arrows().len() == 6 && (a1s.source, a1s.target) == (2, 1),
            format!("{} arrows, a1*: {} -> {}", q.arrows().len(), a1s.source, a1s.target),
        ))
    });
    s.run("dim e_j A_d = d + 1", || {
        let ok = (0..=4).all(|k| (1..=3).all(|j| alg.indices(k, Some(j), None).len() == k + 1));
        let dims: Vec<usize> = (0..=4).map(|k| alg.dim(k)).collect();
        Ok((ok, format!("dim A_d = {dims:?}")))
    });
    s.run("a1 a1* = a3* a3", || {
        Ok((alg.path(&["a1", "a1*"])? == alg.path(&["a3*", "a3"])?, String::new()))
    });
    s.run("a1* a1 = a2 a2*", || {
        Ok((alg.path(&["a1*", "a1"])? == alg.path(&["a2", "a2*"])?, String::new()))
    });
    s.run("yx = (a1 a1*)^2", || {
        let yx = alg.multiply(&alg.path(&["a3*", "a2*"])?, &alg.path(&["a2", "a3"])?)?;
        Ok((yx == alg.path(&["a1", "a1*", "a1", "a1*"])?, alg.render_element(&yx)))
    });
    s.run("central loops commute", || {
        let (b, bs) = build_central_loops(&alg)?;
        let ok = b.degree() == Some(3) && alg.multiply(&b, &bs)? == alg.multiply(&bs, &b)?;
        Ok((ok, alg.render_element(&b)))
    });
    s.run("example automorphism validation", || {
        let bad = ScalingAutomorphism::new(&q, ints(&[1, 1, 1]), ints(&[1, 1, -1]));
        let ok = matches!(&bad, Err(Error::ConstraintViolation(m)) if m.starts_with("a3"));
        Ok((ok, bad.err().map_or("accepted".into(), |e| e.to_string())))
    });
    s.run("g(x) = x and g(a2) = -a2", || {
        let x = alg.path(&["a2", "a3"])?;
        let a2 = alg.path(&["a2"])?;
        Ok((g.apply(&alg, &x)? == x && g.apply(&alg, &a2)? == a2.scale(&Scalar::from_int(-1)), String::new()))
    });
    s.run("g has order 2", || {
        Ok((g.compose(&g)?.is_identity() && group.order() == 2, format!("group order {}", group.order())))
    });
    s.run("Reynolds on a1 and a2", || {
        let a1 = alg.path(&["a1"])?;
        let ok = reynolds(&group, &alg, &alg.path(&["a2"])?)?.is_zero() && reynolds(&group, &alg, &a1)? == a1;
        Ok((ok, String::new()))
    });
    s.run("right traces of id to degree 4", || {
        let id = ScalingAutomorphism::identity(&q);
        let want = TruncatedSeries::from_ints(0, &[1, 2, 3, 4, 5]);
        let got = vtrace_bruteforce(&alg, &id, Side::Right, 4)?;
        Ok((got.iter().all(|e| e.agrees_with(&want)), String::new()))
    });
    s.run("closed Hilbert series 1/(1-t)^2", || {
        let h = hilbert_closed(&q, Side::Right)?;
        let want = ratfun(&[1], &[1, -2, 1])?;
        Ok((h.entries.iter().all(|e| *e == want), h.entries[0].render()))
    });
    s.run("Tr(g) = (3-5t+3t^2)/((1-t)(1-t^3))", || {
        let total = vtrace_closed(&q, &g, Side::Right)?.total();
        let brute = vtrace_bruteforce(&alg, &g, Side::Right, d)?
            .iter()
            .try_fold(TruncatedSeries::zeros(0, d as i64), |acc, e| acc.add(e))?;
        let want = ratfun(&[3, -5, 3], &[1, -1, 0, -1, 1])?;
        Ok((total == want && total.series_expand(d)?.agrees_with(&brute), total.render()))
    });
    s.run("A~1 trace matrix", || {
        let a1 = build_extended_dynkin(DynkinFamily::a(2)?)?.double()?;
        let m = trace_matrix(&a1, &ints(&[2, 3]), &ints(&[5, 7]), &RatFun::t())?;
        let t = |k: i64| RatFun::from_poly(Poly::from_ints(&[0, k]));
        Ok((*m.get(0, 1) == t(-9) && *m.get(1, 0) == t(-8), format!("{m:?}")))
    });
    s.run("Molien series of the trivial group", || {
        let m = molien(&alg, &AutGroup::trivial(&q), d)?;
        let f = m.molien.unwrap_or_else(RatFun::zero);
        Ok((f == ratfun(&[3], &[1, -2, 1])?, f.render()))
    });
    s.run("Molien series (3-t+3t^2)/((1-t)(1-t^3)) matches fixed dimensions", || {
        let m = molien(&alg, &group, d)?;
        let f = m.molien.clone().unwrap_or_else(RatFun::zero);
        let dims = fixed_basis(&alg, &group, d)?.dims();
        let series = TruncatedSeries::from_ints(0, &dims.iter().map(|&x| x as i64).collect::<Vec<_>>());
        let closed_ok = f == ratfun(&[3, -1, 3], &[1, -1, 0, -1, 1])?;
        let dims_ok = m.expansion.agrees_with(&series);
        let detail = if dims_ok {
            f.render()
        } else {
            format!("Molien mismatch: expansion {:?} vs fixed dims {dims:?}", m.expansion.coeffs_i64())
        };
        Ok((closed_ok && dims_ok, detail))
    });
    s.run("reciprocity for g", || {
        let r = reciprocity_check(&q, &g)?;
        Ok((r.holds, format!("{:?}", r.vertex)))
    });
    s.run("Hdet(g) = I_3", || {
        let h = hdet(&q, &g)?;
        Ok((h.diag == ints(&[1, 1, 1]), format!("{:?}", h.diag.iter().map(ToString::to_string).collect::<Vec<_>>())))
    });
    s.run("Hdet for c1 = t1 = zeta_3", || {
        let z = Scalar::root_of_unity(3, 1);
        let h = hdet(&q, &ScalingAutomorphism::new(&q, vec![z.clone(); 3], vec![z.clone(); 3])?)?;
        Ok((h.diag == vec![z.pow(2)?; 3], h.diag[0].to_string()))
    });
    s.run("Hdet is multiplicative on G", || Ok((hdet_is_homomorphism(&q, &group)?, String::new())));
    s.run("fixed degree 1 is span{a1, a1*}", || {
        let fb = fixed_basis(&alg, &group, 1)?;
        let labels: Vec<String> = fb.degrees[1]
            .iter()
            .map(|v| alg.render_element(&AlgebraElement::from_vec(1, v)))
            .collect();
        Ok((labels == ["a1", "a1*"], labels.join(", ")))
    });
    s.run("fixed-ring generators at D = 6", || {
        let fb = fixed_basis(&alg, &group, 6)?;
        let gens = extract_generators(&alg, &fb)?;
        let got: Vec<(String, usize, usize, usize)> =
            gens.iter().map(|g| (g.label.clone(), g.degree, g.source, g.target)).collect();
        let want: Vec<(String, usize, usize, usize)> = [
            ("a1", 1, 1, 2),
            ("a1*", 1, 2, 1),
            ("a2 a3", 2, 2, 1),
            ("a3 a3*", 2, 3, 3),
            ("a3* a2*", 2, 1, 2),
            ("a3 a1 a2", 3, 3, 3),
            ("a2* a1* a3*", 3, 3, 3),
        ]
        .iter()
        .map(|&(l, k, a, b)| (l.to_string(), k, a, b))
        .collect();
        let labels: Vec<String> = got.iter().map(|g| g.0.clone()).collect();
        Ok((got == want, labels.join(", ")))
    });

    let fixed = fixed_basis(&alg, &group, d)?;
    let c = build_subalgebra_truncation(alg.clone(), &fixed)?;
    s.run("xy = (a1* a1)^2 in the fixed ring", || {
        let find = |k: usize, l: &str| -> Result<AlgebraElement> {
            (0..c.dim(k))
                .find(|&i| c.label(k, i) == l)
                .map(|i| AlgebraElement::basis(k, i))
                .ok_or_else(|| Error::Index(format!("{l} is not a fixed basis element")))
        };
        let xy = c.multiply(&find(2, "a2 a3")?, &find(2, "a3* a2*")?)?;
        let s2 = c.multiply(&find(1, "a1*")?, &find(1, "a1")?)?;
        Ok((xy == c.multiply(&s2, &s2)?, c.render_element(&xy)))
    });

    let pi12 = GradedAlgebra::preprojective(&q, 12)?;
    s.run("resolutions of simples over Pi(A~2)", || {
        let mut ok = true;
        for i in 1..=3 {
            let res = minimal_resolution(&simple_module(&pi12, i, Side::Right)?, &pi12, 3, 12)?;
            let (prev, next) = ((i + 1) % 3 + 1, i % 3 + 1);
            let mut step1 = vec![(prev, 1), (next, 1)];
            step1.sort();
            ok &= res.shapes() == [vec![(i, 0)], step1, vec![(i, 2)], vec![]];
        }
        Ok((ok, String::new()))
    });
    s.run("resolution of S1 over Pi(D~4)", || {
        let qd = build_extended_dynkin(DynkinFamily::d(5)?)?.double()?;
        let ad = GradedAlgebra::preprojective(&qd, 8)?;
        let res = minimal_resolution(&simple_module(&ad, 1, Side::Right)?, &ad, 3, 8)?;
        let sh = res.shapes();
        Ok((sh[1] == [(3, 1)] && sh[2] == [(1, 2)] && sh[3].is_empty(), format!("{sh:?}")))
    });
    s.run("Ext^2(S_j, Pi(A~2)) = S_j^v[2]", || {
        let mut ok = true;
        for j in 1..=3 {
            let res = minimal_resolution(&simple_module(&pi12, j, Side::Right)?, &pi12, 3, 12)?;
            ok &= ext_against_ring(&res, &pi12, 2)?.as_dual_simple() == Some((j, -2));
        }
        Ok((ok, String::new()))
    });
    s.run("Gorenstein data of Pi(A~2)", || {
        let v = gorenstein_verdict(&pi12, 3, 12)?.verdict;
        let ok = v.gorenstein && v.n == Some(2) && v.sigma == [Some(1), Some(2), Some(3)] && v.ell == [Some(2); 3];
        Ok((ok, format!("N={:?} sigma={:?} ell={:?}", v.n, v.sigma, v.ell)))
    });
    s.run("Gorenstein data of Pi(E~6)", || {
        let qe = build_extended_dynkin(DynkinFamily::e(6)?)?.double()?;
        let ae = GradedAlgebra::preprojective(&qe, 12)?;
        let v = gorenstein_verdict(&ae, 3, 12)?.verdict;
        let ok = v.gorenstein && v.n == Some(2) && v.sigma == (1..=7).map(Some).collect::<Vec<_>>() && v.ell == [Some(2); 7];
        Ok((ok, format!("N={:?} ell={:?}", v.n, v.ell)))
    });

    let c12 = if d >= 12 {
        c
    } else {
        let alg12 = Arc::new(example_algebra(&q, 12, corrupt)?);
        let fixed12 = fixed_basis(&alg12, &group, 12)?;
        build_subalgebra_truncation(alg12, &fixed12)?
    };
    let report = gorenstein_verdict(&c12, 4, 12);
    s.run("resolution of S1 over the fixed ring", || {
        let rep = report.as_ref().map_err(Clone::clone)?;
        let res = &rep.resolutions[0];
        let sh = res.shapes();
        let ok = sh[1] == [(2, 1), (2, 2)] && sh.iter().all(|step| !step.is_empty());
        Ok((ok, format!("steps 0..=4: {sh:?}")))
    });
    for (j, want) in [(1usize, 2usize), (2, 1)] {
        s.run(&format!("Ext^2(S{j}, C) = S{want}^v up to shift"), || {
            let rep = report.as_ref().map_err(Clone::clone)?;
            let e2 = &rep.ext[j - 1][2];
            let got = e2.as_dual_simple();
            let lower_vanish = rep.ext[j - 1][0].is_zero() && rep.ext[j - 1][1].is_zero();
            let ok = lower_vanish && got.map(|(u, _)| u) == Some(want);
            let detail = match got {
                Some((u, e)) => format!("observed S{u}^v[{}] (total dimension 1)", -e),
                None => format!("total dimension {}", e2.total()),
            };
            Ok((ok, detail))
        });
    }
    s.run("fixed ring sigma swaps 1 and 2", || {
        let rep = report.as_ref().map_err(Clone::clone)?;
        let v = &rep.verdict;
        let ok = v.n == Some(2) && v.sigma[0] == Some(2) && v.sigma[1] == Some(1);
        Ok((ok, format!("N={:?} sigma={:?} ell={:?}", v.n, v.sigma, v.ell)))
    });

    Ok(SuiteReport {
        cutoff: d,
        corrupted: corrupt,
        checks: s.checks,
    })
}
