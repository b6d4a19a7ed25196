//! Degree-truncated minimal projective resolutions of simple modules, Ext
//! into the ring, and the generalized Gorenstein verdict.
//!
//! Modules are right modules.  A free module is a list of summands
//! `e_v R[-d]`; its degree-`s` part at right vertex `w` has basis the pairs
//! (summand `l`, basis element `b` of `e_{v_l} R_{s - d_l} e_w`).  Everything
//! is computed one (degree, right vertex) block at a time, since right
//! multiplication by idempotents splits every space involved.
//!
//! `Hom(e_v R[-d], R)` is `R e_v` shifted so that its degree-`e` part is
//! `(R e_v)_{d + e}`; the Ext complex is assembled from these blocks, split by
//! left vertex, directly from the ring's structure constants.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, EchelonBasis, SparseVec};
use crate::ratfun::TruncatedSeries;
use crate::scalar::Scalar;
use crate::traces::Side;

/// A graded module known in degrees `0..=cutoff`, with the ring acting on
/// one side through explicit structure constants.
#[derive(Clone, Debug)]
pub struct GradedModuleTruncation {
    side: Side,
    /// `basis[s][i]`: the vertex `v` with `m = m e_v` (right) or `m = e_v m` (left).
    basis: Vec<Vec<usize>>,
    /// Nonzero products (module degree, index, ring degree, ring index) -> vector.
    action: HashMap<(usize, usize, usize, usize), SparseVec>,
}

impl GradedModuleTruncation {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn cutoff(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dim(&self, s: usize) -> usize {
        self.basis.get(s).map_or(0, Vec::len)
    }

    pub fn vertex(&self, s: usize, i: usize) -> usize {
        self.basis[s][i]
    }

    /// `m_i * r` for right modules, `r * m_i` for left modules.
    pub fn act(&self, s: usize, i: usize, r_deg: usize, r_idx: usize) -> SparseVec {
        self.action.get(&(s, i, r_deg, r_idx)).cloned().unwrap_or_default()
    }

    pub fn hilbert(&self, cutoff: usize) -> TruncatedSeries {
        TruncatedSeries::new(0, (0..=cutoff).map(|s| Scalar::from_int(self.dim(s) as i64)).collect())
    }

    fn local(&self, s: usize, v: usize) -> Vec<usize> {
        (0..self.dim(s)).filter(|&i| self.basis[s][i] == v).collect()
    }
}

/// `S_j` (right) or its dual `S_j^v` (left): one dimension in degree 0 at
/// vertex `j`, fixed by `e_j` and killed by everything else.
pub fn simple_module(alg: &GradedAlgebra, j: usize, side: Side) -> Result<GradedModuleTruncation> {
    if j == 0 || j > alg.vertex_count() {
        return Err(Error::Index(format!("vertex {j} outside 1..={}", alg.vertex_count())));
    }
    let e = alg.indices(0, Some(j), Some(j))[0];
    Ok(GradedModuleTruncation {
        side,
        basis: vec![vec![j]],
        action: HashMap::from([((0, 0, 0, e), SparseVec::unit(0))]),
    })
}

/// Basis of a free module, block by block.
#[derive(Clone, Debug)]
struct FreeBasis {
    /// `lists[s][w - 1]`: (summand, ring basis index) pairs.
    lists: Vec<Vec<Vec<(usize, usize)>>>,
    index: Vec<Vec<HashMap<(usize, usize), usize>>>,
}

impl FreeBasis {
    fn new(alg: &GradedAlgebra, summands: &[(usize, usize)], cutoff: usize) -> FreeBasis {
        let n = alg.vertex_count();
        let mut lists = vec![vec![Vec::new(); n]; cutoff + 1];
        for (s, row) in lists.iter_mut().enumerate() {
            for (l, &(v, d)) in summands.iter().enumerate() {
                if d > s {
                    continue;
                }
                for b in alg.indices(s - d, Some(v), None) {
                    row[alg.basis(s - d)[b].target - 1].push((l, b));
                }
            }
        }
        let index = lists
            .iter()
            .map(|row| {
                row.iter()
                    .map(|list| list.iter().enumerate().map(|(p, &key)| (key, p)).collect())
                    .collect()
            })
            .collect();
        FreeBasis { lists, index }
    }
}

enum Space<'a> {
    Module(&'a GradedModuleTruncation),
    Free(&'a [(usize, usize)], &'a FreeBasis),
}

impl Space<'_> {
    fn dim(&self, s: usize, v: usize) -> usize {
        match self {
            Space::Module(m) => m.local(s, v).len(),
            Space::Free(_, fb) => fb.lists.get(s).map_or(0, |row| row[v - 1].len()),
        }
    }

    /// `x * r` for `x` in block (s, v) and `r = alg.basis(r_deg)[r_idx]`,
    /// landing in block (s + r_deg, target of r).
    fn act(&self, alg: &GradedAlgebra, x: &SparseVec, s: usize, v: usize, r_deg: usize, r_idx: usize) -> Result<SparseVec> {
        let w = alg.basis(r_deg)[r_idx].target;
        let mut out = Vec::new();
        match self {
            Space::Module(m) => {
                let here = m.local(s, v);
                let there = m.local(s + r_deg, w);
                for (p, c) in x.iter() {
                    for (g, a) in m.act(s, here[*p], r_deg, r_idx).iter() {
                        let pos = there.iter().position(|k| k == g).expect("action stays in block");
                        out.push((pos, c * a));
                    }
                }
            }
            Space::Free(summands, fb) => {
                for (p, c) in x.iter() {
                    let (l, b) = fb.lists[s][v - 1][*p];
                    let deg = s - summands[l].1;
                    for (b2, a) in alg.multiply_basis(deg, b, r_deg, r_idx)?.iter() {
                        out.push((fb.index[s + r_deg][w - 1][&(l, *b2)], c * a));
                    }
                }
            }
        }
        Ok(SparseVec::from_entries(out))
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionStep {
    /// `(v, d)` for each summand `e_v R[-d]`.
    pub summands: Vec<(usize, usize)>,
    /// Image of each generator in the previous term, as a vector in its
    /// block (d, v).
    images: Vec<SparseVec>,
    basis: FreeBasis,
}

impl ResolutionStep {
    pub fn rank(&self) -> usize {
        self.summands.len()
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub cutoff: usize,
    pub module: GradedModuleTruncation,
    pub steps: Vec<ResolutionStep>,
    /// Dimensions per degree of the kernel of the last computed differential.
    pub last_kernel_dims: Vec<usize>,
}

impl Resolution {
    /// Summand lists of every step.
    pub fn shapes(&self) -> Vec<Vec<(usize, usize)>> {
        self.steps.iter().map(|s| s.summands.clone()).collect()
    }

    /// First step whose differential is injective up to the cutoff, i.e. the
    /// length of the resolution if it terminates inside the computation.
    pub fn terminates_at(&self) -> Option<usize> {
        match self.steps.iter().position(|s| s.summands.is_empty()) {
            Some(k) => Some(k.saturating_sub(1)),
            None => self.last_kernel_dims.iter().all(|&d| d == 0).then(|| self.steps.len() - 1),
        }
    }

    pub fn max_shift(&self, through: usize) -> usize {
        self.steps
            .iter()
            .take(through + 1)
            .flat_map(|s| s.summands.iter().map(|&(_, d)| d))
            .max()
            .unwrap_or(0)
    }

    /// Differential entries `m_{lk}` in `e_{v_l} R e_{v_k}`: for each generator
    /// `k` of step `step >= 1`, the nonzero `(l, m_{lk})`.
    pub fn differential(&self, alg: &GradedAlgebra, step: usize) -> Vec<Vec<(usize, AlgebraElement)>> {
        let prev = &self.steps[step - 1];
        let cur = &self.steps[step];
        cur.summands
            .iter()
            .zip(&cur.images)
            .map(|(&(v, d), x)| {
                let mut by_l: BTreeMap<usize, AlgebraElement> = BTreeMap::new();
                for (p, c) in x.iter() {
                    let (l, b) = prev.basis.lists[d][v - 1][*p];
                    let deg = d - prev.summands[l].1;
                    by_l.entry(l).or_default().add_term(deg, b, c);
                }
                let _ = alg;
                by_l.into_iter().filter(|(_, e)| !e.is_zero()).collect()
            })
            .collect()
    }

    fn space(&self, step: usize) -> Space<'_> {
        let s = &self.steps[step];
        Space::Free(&s.summands, &s.basis)
    }

    fn target_space(&self, step: usize) -> Space<'_> {
        if step == 0 {
            Space::Module(&self.module)
        } else {
            self.space(step - 1)
        }
    }

    /// Applies the differential out of step `step` to a vector in its block (s, v).
    pub fn apply_differential(
        &self,
        alg: &GradedAlgebra,
        step: usize,
        x: &SparseVec,
        s: usize,
        v: usize,
    ) -> Result<SparseVec> {
        let cur = &self.steps[step];
        let target = self.target_space(step);
        let mut out = SparseVec::new();
        for (p, c) in x.iter() {
            let (l, b) = cur.basis.lists[s][v - 1][*p];
            let (vl, dl) = cur.summands[l];
            let y = target.act(alg, &cur.images[l], dl, vl, s - dl, b)?;
            out = out.add_scaled(c, &y);
        }
        Ok(out)
    }

    /// Dimension of step `step` in block (s, v).
    pub fn block_dim(&self, step: usize, s: usize, v: usize) -> usize {
        self.space(step).dim(s, v)
    }

    /// Alternating sum of the Hilbert series of the terms.
    pub fn euler_characteristic(&self, alg: &GradedAlgebra) -> TruncatedSeries {
        let mut coeffs = vec![0i64; self.cutoff + 1];
        for (k, step) in self.steps.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for (s, c) in coeffs.iter_mut().enumerate() {
                let dim: usize = (1..=alg.vertex_count()).map(|v| step.basis.lists[s][v - 1].len()).sum();
                *c += sign * dim as i64;
            }
        }
        TruncatedSeries::from_ints(0, &coeffs)
    }

    /// Whether every differential entry has positive degree.
    pub fn is_minimal(&self) -> bool {
        (1..self.steps.len()).all(|k| {
            let prev = &self.steps[k - 1];
            let cur = &self.steps[k];
            cur.summands.iter().zip(&cur.images).all(|(&(v, d), x)| {
                x.iter().all(|(p, _)| {
                    let (l, _) = prev.basis.lists[d][v - 1][*p];
                    prev.summands[l].1 < d
                })
            })
        })
    }
}

/// Minimal homogeneous generators of the subspaces `sub[s][v-1]` of `space`,
/// lowest degree first, then vertex, then the given order.
fn minimal_generators(
    alg: &GradedAlgebra,
    space: &Space,
    sub: &[Vec<Vec<SparseVec>>],
) -> Result<Vec<(usize, usize, SparseVec)>> {
    let mut gens: Vec<(usize, usize, SparseVec)> = Vec::new();
    for (s, row) in sub.iter().enumerate() {
        for (vi, candidates) in row.iter().enumerate() {
            if candidates.is_empty() {
                continue;
            }
            let v = vi + 1;
            let mut eb = EchelonBasis::new();
            for (gs, gv, z) in gens.iter().filter(|g| g.0 < s) {
                for r in alg.indices(s - gs, Some(*gv), Some(v)) {
                    eb.insert(&space.act(alg, z, *gs, *gv, s - gs, r)?);
                }
            }
            for c in candidates {
                if eb.insert(c).is_none() {
                    gens.push((s, v, c.clone()));
                }
            }
        }
    }
    Ok(gens)
}

/// Kernel of the map from the free module `(summands, basis)` whose
/// generators go to `images` in `target`, block by block up to `cutoff`.
fn free_kernel(
    alg: &GradedAlgebra,
    summands: &[(usize, usize)],
    basis: &FreeBasis,
    images: &[SparseVec],
    target: &Space,
    cutoff: usize,
) -> Result<Vec<Vec<Vec<SparseVec>>>> {
    let n = alg.vertex_count();
    let mut out = vec![vec![Vec::new(); n]; cutoff + 1];
    for (s, row) in out.iter_mut().enumerate() {
        for (vi, slot) in row.iter_mut().enumerate() {
            let cols = &basis.lists[s][vi];
            if cols.is_empty() {
                continue;
            }
            let imgs = cols
                .iter()
                .map(|&(l, b)| {
                    let (vl, dl) = summands[l];
                    target.act(alg, &images[l], dl, vl, s - dl, b)
                })
                .collect::<Result<Vec<_>>>()?;
            *slot = kernel(&imgs);
        }
    }
    Ok(out)
}

/// Minimal resolution `F_0 <- F_1 <- ... <- F_H` of a right module, every
/// term computed in degrees `0..=cutoff`.
pub fn minimal_resolution(
    module: &GradedModuleTruncation,
    alg: &GradedAlgebra,
    hom_bound: usize,
    cutoff: usize,
) -> Result<Resolution> {
    if module.side() != Side::Right {
        return Err(Error::DimensionMismatch("resolutions are built for right modules".into()));
    }
    if cutoff > alg.cutoff() {
        return Err(Error::TruncationExceeded {
            degree: cutoff,
            cutoff: alg.cutoff(),
        });
    }
    let n = alg.vertex_count();
    // The whole module, block by block, is the first subspace to generate.
    let mut sub: Vec<Vec<Vec<SparseVec>>> = (0..=cutoff)
        .map(|s| {
            (1..=n)
                .map(|v| (0..module.local(s, v).len()).map(SparseVec::unit).collect())
                .collect()
        })
        .collect();
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let mut last_kernel_dims = vec![0; cutoff + 1];
    for k in 0..=hom_bound {
        let target = match steps.last() {
            None => Space::Module(module),
            Some(prev) => Space::Free(&prev.summands, &prev.basis),
        };
        let gens = minimal_generators(alg, &target, &sub)?;
        let summands: Vec<(usize, usize)> = gens.iter().map(|&(s, v, _)| (v, s)).collect();
        let images: Vec<SparseVec> = gens.into_iter().map(|(_, _, x)| x).collect();
        let basis = FreeBasis::new(alg, &summands, cutoff);
        sub = free_kernel(alg, &summands, &basis, &images, &target, cutoff)?;
        drop(target);
        steps.push(ResolutionStep {
            summands,
            images,
            basis,
        });
        last_kernel_dims = sub.iter().map(|row| row.iter().map(Vec::len).sum()).collect();
        if k < hom_bound && steps.last().unwrap().summands.is_empty() {
            // Zero term: all later terms vanish too.
            for _ in k + 1..=hom_bound {
                steps.push(ResolutionStep {
                    summands: Vec::new(),
                    images: Vec::new(),
                    basis: FreeBasis::new(alg, &[], cutoff),
                });
            }
            break;
        }
    }
    Ok(Resolution {
        cutoff,
        module: module.clone(),
        steps,
        last_kernel_dims,
    })
}

/// `Ext^i(M, R)` as a graded left module: dimensions by internal degree and
/// by left vertex, known for internal degrees `lowest..=window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtGroup {
    pub i: usize,
    pub lowest: i64,
    pub window: i64,
    /// degree -> (left vertex -> dimension), nonzero entries only.
    pub dims: BTreeMap<i64, BTreeMap<usize, usize>>,
}

impl ExtGroup {
    pub fn total(&self) -> usize {
        self.dims.values().flat_map(|m| m.values()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `(vertex, degree)` if the group is one-dimensional.
    pub fn as_dual_simple(&self) -> Option<(usize, i64)> {
        if self.total() != 1 {
            return None;
        }
        let (&e, by_vertex) = self.dims.iter().next()?;
        let (&u, _) = by_vertex.iter().next()?;
        Some((u, e))
    }

    /// Dimension at internal degree `e`, or `None` outside the reliable window.
    pub fn dim_at(&self, e: i64) -> Option<usize> {
        (e <= self.window).then(|| self.dims.get(&e).map_or(0, |m| m.values().sum()))
    }
}

/// Cohomology at `Hom(F_i, R)` of the complex `Hom(F_*, R)`.
pub fn ext_against_ring(res: &Resolution, alg: &GradedAlgebra, i: usize) -> Result<ExtGroup> {
    if i + 1 >= res.steps.len() {
        return Err(Error::WindowTooSmall(format!(
            "Ext^{i} needs resolution step {}, only {} computed",
            i + 1,
            res.steps.len() - 1
        )));
    }
    // Generators of a minimal F_k sit in degree >= k, so below that cutoff the
    // step that decides cocycles is invisible, not absent.
    if res.cutoff < i + 1 {
        return Err(Error::WindowTooSmall(format!(
            "Ext^{i} needs step {} whose generators start in degree >= {}, beyond cutoff {}",
            i + 1,
            i + 1,
            res.cutoff
        )));
    }
    let window = res.cutoff as i64 - res.max_shift(i + 1) as i64;
    let lowest = -(res.steps[i].summands.iter().map(|&(_, d)| d).max().unwrap_or(0) as i64);
    let mut dims = BTreeMap::new();
    if res.steps[i].summands.is_empty() {
        return Ok(ExtGroup { i, lowest, window, dims });
    }
    if window < lowest {
        return Err(Error::WindowTooSmall(format!(
            "Ext^{i}: reliable window ends at degree {window}, below the lowest degree {lowest}"
        )));
    }
    let next = res.differential(alg, i + 1);
    let this = if i > 0 { Some(res.differential(alg, i)) } else { None };
    for e in lowest..=window {
        for u in 1..=alg.vertex_count() {
            let here = cochain_basis(alg, &res.steps[i].summands, e, u);
            if here.is_empty() {
                continue;
            }
            let out = coboundary(alg, &res.steps[i].summands, &res.steps[i + 1].summands, &next, e, u)?;
            let kernel_dim = here.len() - rank(&out);
            let image_dim = match &this {
                Some(diff) => rank(&coboundary(alg, &res.steps[i - 1].summands, &res.steps[i].summands, diff, e, u)?),
                None => 0,
            };
            let dim = kernel_dim - image_dim;
            if dim > 0 {
                dims.entry(e).or_insert_with(BTreeMap::new).insert(u, dim);
            }
        }
    }
    Ok(ExtGroup { i, lowest, window, dims })
}

/// Basis of `e_u Hom(F, R)_e`: pairs (summand l, basis element of `e_u R_{d_l + e} e_{v_l}`).
fn cochain_basis(alg: &GradedAlgebra, summands: &[(usize, usize)], e: i64, u: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (l, &(v, d)) in summands.iter().enumerate() {
        let deg = d as i64 + e;
        if deg < 0 || deg as usize > alg.cutoff() {
            continue;
        }
        for b in alg.indices(deg as usize, Some(u), Some(v)) {
            out.push((l, b));
        }
    }
    out
}

/// Matrix (as column images) of `Hom(F_a, R) -> Hom(F_b, R)`, `phi -> phi . delta`,
/// on the block (e, u).  `diff[k]` lists the entries `(l, m_{lk})` of delta.
fn coboundary(
    alg: &GradedAlgebra,
    from: &[(usize, usize)],
    to: &[(usize, usize)],
    diff: &[Vec<(usize, AlgebraElement)>],
    e: i64,
    u: usize,
) -> Result<Vec<SparseVec>> {
    let rows = cochain_basis(alg, to, e, u);
    let index: HashMap<(usize, usize), usize> = rows.iter().enumerate().map(|(p, &k)| (k, p)).collect();
    let mut cols = Vec::new();
    for (l, b) in cochain_basis(alg, from, e, u) {
        let deg = (from[l].1 as i64 + e) as usize;
        let y = AlgebraElement::basis(deg, b);
        let mut entries = Vec::new();
        for (k, column) in diff.iter().enumerate() {
            for (l2, m) in column {
                if *l2 != l {
                    continue;
                }
                let prod = alg.multiply(&y, m)?;
                let target_deg = (to[k].1 as i64 + e) as usize;
                for (b2, c) in prod.component(target_deg).iter() {
                    entries.push((index[&(k, *b2)], c.clone()));
                }
            }
        }
        cols.push(SparseVec::from_entries(entries));
    }
    Ok(cols)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub gorenstein: bool,
    pub n: Option<usize>,
    pub sigma: Vec<Option<usize>>,
    pub ell: Vec<Option<i64>>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ExtReport {
    pub ring: String,
    pub hom_bound: usize,
    pub cutoff: usize,
    /// `ext[j - 1][i]` for i < hom_bound.
    pub ext: Vec<Vec<ExtGroup>>,
    pub resolutions: Vec<Resolution>,
    pub verdict: Verdict,
}

impl ExtReport {
    pub fn window(&self) -> i64 {
        self.ext.iter().flatten().map(|g| g.window).min().unwrap_or(self.cutoff as i64)
    }

    pub fn to_json(&self) -> Value {
        let mut ext = Vec::new();
        for (j, groups) in self.ext.iter().enumerate() {
            for g in groups {
                let mut dims = Map::new();
                let mut vertices = Map::new();
                for (e, by_vertex) in &g.dims {
                    dims.insert(e.to_string(), json!(by_vertex.values().sum::<usize>()));
                    let per: Map<String, Value> = by_vertex.iter().map(|(u, d)| (u.to_string(), json!(d))).collect();
                    vertices.insert(e.to_string(), Value::Object(per));
                }
                ext.push(json!({
                    "i": g.i,
                    "j": j + 1,
                    "dims": dims,
                    "vertices": vertices,
                    "lowest": g.lowest,
                    "window": g.window,
                }));
            }
        }
        let resolutions: Vec<Value> = self
            .resolutions
            .iter()
            .enumerate()
            .map(|(j, r)| {
                let steps: Vec<Value> = r
                    .shapes()
                    .iter()
                    .map(|s| Value::Array(s.iter().map(|(v, d)| json!({"vertex": v, "shift": d})).collect()))
                    .collect();
                json!({ "j": j + 1, "steps": steps })
            })
            .collect();
        json!({
            "ring": self.ring,
            "cutoff": self.cutoff,
            "hom_bound": self.hom_bound,
            "window": self.window(),
            "ext": ext,
            "resolutions": resolutions,
            "verdict": {
                "gorenstein": self.verdict.gorenstein,
                "N": self.verdict.n,
                "sigma": self.verdict.sigma,
                "ell": self.verdict.ell,
                "violations": self.verdict.violations,
            },
        })
    }
}

/// Resolves every simple module, computes `Ext^i(S_j, R)` for `i < hom_bound`
/// and checks the generalized Gorenstein condition inside the reliable windows.
pub fn gorenstein_verdict(alg: &GradedAlgebra, hom_bound: usize, cutoff: usize) -> Result<ExtReport> {
    let n = alg.vertex_count();
    let per_vertex: Vec<Result<(Resolution, Vec<ExtGroup>)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (1..=n)
            .map(|j| {
                scope.spawn(move || -> Result<(Resolution, Vec<ExtGroup>)> {
                    let s = simple_module(alg, j, Side::Right)?;
                    let res = minimal_resolution(&s, alg, hom_bound, cutoff)?;
                    let ext = (0..hom_bound).map(|i| ext_against_ring(&res, alg, i)).collect::<Result<Vec<_>>>()?;
                    Ok((res, ext))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("resolution thread panicked")).collect()
    });
    let mut resolutions = Vec::with_capacity(n);
    let mut ext = Vec::with_capacity(n);
    for r in per_vertex {
        let (res, groups) = r?;
        resolutions.push(res);
        ext.push(groups);
    }

    let mut violations = Vec::new();
    let mut sigma = vec![None; n];
    let mut ell = vec![None; n];
    let mut depth: Vec<Option<usize>> = vec![None; n];
    for (j, groups) in ext.iter().enumerate() {
        let Some(first) = groups.iter().find(|g| !g.is_zero()) else {
            violations.push(format!("S{}: no nonzero Ext^i for i < {hom_bound} in the window", j + 1));
            continue;
        };
        depth[j] = Some(first.i);
        match first.as_dual_simple() {
            Some((u, e)) => {
                sigma[j] = Some(u);
                ell[j] = Some(-e);
            }
            None => violations.push(format!(
                "S{}: Ext^{} has total dimension {} across {} degrees, not a shifted dual simple",
                j + 1,
                first.i,
                first.total(),
                first.dims.len()
            )),
        }
    }
    let n_common = depth.first().copied().flatten();
    if depth.iter().any(|d| *d != n_common) {
        violations.push(format!("first nonvanishing Ext degrees differ across vertices: {depth:?}"));
    }
    let mut seen = vec![false; n];
    for u in sigma.iter().flatten() {
        if std::mem::replace(&mut seen[u - 1], true) {
            violations.push(format!("sigma is not a permutation: vertex {u} is hit twice"));
        }
    }
    let verdict = Verdict {
        gorenstein: violations.is_empty(),
        n: if violations.is_empty() { n_common } else { None },
        sigma,
        ell,
        violations,
    };
    Ok(ExtReport {
        ring: alg.name().to_string(),
        hom_bound,
        cutoff,
        ext,
        resolutions,
        verdict,
    })
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
    fn simple_module_shape() {
        let a = pi(DynkinFamily::a(3).unwrap(), 2);
        let s = simple_module(&a, 1, Side::Right).unwrap();
        assert_eq!((s.dim(0), s.dim(1)), (1, 0));
        let e1 = a.indices(0, Some(1), Some(1))[0];
        let e2 = a.indices(0, Some(2), Some(2))[0];
        assert_eq!(s.act(0, 0, 0, e1), SparseVec::unit(0));
        assert!(s.act(0, 0, 0, e2).is_zero());
        assert!(s.act(0, 0, 1, 0).is_zero());
        assert!(matches!(simple_module(&a, 4, Side::Right), Err(Error::Index(_))));
        assert_eq!(simple_module(&a, 2, Side::Left).unwrap().side(), Side::Left);
    }

    #[test]
    fn cycle_resolution_shape() {
        let a = pi(DynkinFamily::a(3).unwrap(), 8);
        let s = simple_module(&a, 2, Side::Right).unwrap();
        let res = minimal_resolution(&s, &a, 3, 8).unwrap();
        assert_eq!(res.shapes(), vec![vec![(2, 0)], vec![(1, 1), (3, 1)], vec![(2, 2)], vec![]]);
        assert_eq!(res.terminates_at(), Some(2));
        assert!(res.is_minimal());
        let chi = res.euler_characteristic(&a);
        assert!(chi.agrees_with(&TruncatedSeries::from_ints(0, &[1, 0, 0, 0, 0, 0, 0, 0, 0])));
    }

    #[test]
    fn ext_of_cycle() {
        let a = pi(DynkinFamily::a(3).unwrap(), 8);
        let s = simple_module(&a, 1, Side::Right).unwrap();
        let res = minimal_resolution(&s, &a, 3, 8).unwrap();
        assert!(ext_against_ring(&res, &a, 0).unwrap().is_zero());
        assert!(ext_against_ring(&res, &a, 1).unwrap().is_zero());
        let e2 = ext_against_ring(&res, &a, 2).unwrap();
        assert_eq!(e2.as_dual_simple(), Some((1, -2)));
        assert_eq!(e2.window, 6);
        assert!(matches!(ext_against_ring(&res, &a, 3), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn invisible_next_step_is_not_read_as_vanishing() {
        // At cutoff 1 the generator of F_2 (degree 2) cannot be seen.
        let a = pi(DynkinFamily::a(3).unwrap(), 1);
        let res = minimal_resolution(&simple_module(&a, 1, Side::Right).unwrap(), &a, 3, 1).unwrap();
        assert!(matches!(ext_against_ring(&res, &a, 1), Err(Error::WindowTooSmall(_))));
        let a = pi(DynkinFamily::a(3).unwrap(), 2);
        let res = minimal_resolution(&simple_module(&a, 1, Side::Right).unwrap(), &a, 3, 2).unwrap();
        assert!(ext_against_ring(&res, &a, 1).unwrap().is_zero());
    }

    #[test]
    fn leaf_resolution_of_d() {
        let a = pi(DynkinFamily::d(5).unwrap(), 6);
        let s = simple_module(&a, 1, Side::Right).unwrap();
        let res = minimal_resolution(&s, &a, 3, 6).unwrap();
        assert_eq!(res.shapes()[..3], [vec![(1, 0)], vec![(3, 1)], vec![(1, 2)]]);
        let d1 = res.differential(&a, 1);
        assert_eq!(d1[0].len(), 1);
        assert_eq!(d1[0][0].1, a.path(&["a1"]).unwrap());
    }

    #[test]
    fn verdict_for_cycle() {
        let a = pi(DynkinFamily::a(3).unwrap(), 8);
        let rep = gorenstein_verdict(&a, 3, 8).unwrap();
        assert!(rep.verdict.gorenstein, "{:?}", rep.verdict.violations);
        assert_eq!(rep.verdict.n, Some(2));
        assert_eq!(rep.verdict.sigma, vec![Some(1), Some(2), Some(3)]);
        assert_eq!(rep.verdict.ell, vec![Some(2); 3]);
        let j = rep.to_json();
        assert_eq!(j["verdict"]["N"], 2);
    }
}
