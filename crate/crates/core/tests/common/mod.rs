//! Shared fixtures and randomized property checks for the integration tests.
#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;

use ppalg::fixed_ring::{build_subalgebra_truncation, fixed_basis};
use ppalg::linalg::SparseVec;
use ppalg::traces::Side;
use ppalg::{
    build_extended_dynkin, generate_group, minimal_resolution, reynolds, simple_module, AlgebraElement, AutGroup,
    DynkinFamily, GradedAlgebra, Quiver, Result, Scalar, ScalingAutomorphism,
};

/// Ã₂, Ã₃, Ã₄, Ã₁, D̃₄, D̃₅, Ẽ₆, Ẽ₇, Ẽ₈.
pub fn nine_families() -> Vec<DynkinFamily> {
    vec![
        DynkinFamily::a(3).unwrap(),
        DynkinFamily::a(4).unwrap(),
        DynkinFamily::a(5).unwrap(),
        DynkinFamily::a(2).unwrap(),
        DynkinFamily::d(5).unwrap(),
        DynkinFamily::d(6).unwrap(),
        DynkinFamily::e(6).unwrap(),
        DynkinFamily::e(7).unwrap(),
        DynkinFamily::e(8).unwrap(),
    ]
}

pub fn doubled(f: DynkinFamily) -> Quiver {
    build_extended_dynkin(f).unwrap().double().unwrap()
}

pub fn signs(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&k| Scalar::from_int(k)).collect()
}

/// The doubled Ã₂ with its sign automorphism and the group it generates.
pub fn example() -> (Quiver, ScalingAutomorphism, AutGroup) {
    let q = doubled(DynkinFamily::a(3).unwrap());
    let g = ScalingAutomorphism::new(&q, signs(&[1, -1, -1]), signs(&[1, -1, -1])).unwrap();
    let group = generate_group(&q, &[g.clone()], 10).unwrap();
    (q, g, group)
}

/// `c_i = zeta_N^{a_i}`, `t_i = zeta_N^{m - a_i}` with `N` in 2..=6.
pub fn random_automorphism(q: &Quiver, rng: &mut impl Rng) -> ScalingAutomorphism {
    let order = rng.gen_range(2..=6u32);
    let a: Vec<i64> = (0..q.pairs().count()).map(|_| rng.gen_range(0..order as i64)).collect();
    ScalingAutomorphism::from_exponents(q, order, &a, rng.gen_range(0..order as i64)).unwrap()
}

pub const PROPERTY_CUTOFF: usize = 7;

/// Algebras shared by the property checks: every Π(Q) of the nine families,
/// followed by the example fixed ring.
pub fn property_rings() -> &'static [Arc<GradedAlgebra>] {
    static RINGS: OnceLock<Vec<Arc<GradedAlgebra>>> = OnceLock::new();
    RINGS.get_or_init(|| {
        let d = PROPERTY_CUTOFF;
        let mut out: Vec<Arc<GradedAlgebra>> = nine_families()
            .into_iter()
            .map(|f| Arc::new(GradedAlgebra::preprojective(&doubled(f), d).unwrap()))
            .collect();
        let (q, _, group) = example();
        let a = Arc::new(GradedAlgebra::preprojective(&q, d).unwrap());
        let fb = fixed_basis(&a, &group, d).unwrap();
        out.push(Arc::new(build_subalgebra_truncation(a, &fb).unwrap()));
        out
    })
}

pub fn random_element(alg: &GradedAlgebra, degree: usize, rng: &mut impl Rng) -> AlgebraElement {
    let mut x = AlgebraElement::zero();
    let dim = alg.dim(degree);
    for _ in 0..rng.gen_range(1..=3) {
        let c = Scalar::from_int(rng.gen_range(-3..=3));
        x.add_term(degree, rng.gen_range(0..dim), &c);
    }
    x
}

pub fn check_associativity(rng: &mut impl Rng) -> Result<bool> {
    let alg = property_rings().choose(rng).unwrap();
    let d = alg.cutoff();
    let a = rng.gen_range(0..=d);
    let b = rng.gen_range(0..=d - a);
    let c = rng.gen_range(0..=d - a - b);
    let (x, y, z) = (random_element(alg, a, rng), random_element(alg, b, rng), random_element(alg, c, rng));
    Ok(alg.multiply(&alg.multiply(&x, &y)?, &z)? == alg.multiply(&x, &alg.multiply(&y, &z)?)?)
}

pub fn check_idempotents(rng: &mut impl Rng) -> Result<bool> {
    let alg = property_rings().choose(rng).unwrap();
    let k = rng.gen_range(0..=alg.cutoff());
    let x = random_element(alg, k, rng);
    let one = alg.one();
    let mut ok = alg.multiply(&one, &x)? == x && alg.multiply(&x, &one)? == x;
    let n = alg.vertex_count();
    let (i, j) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
    let eij = alg.multiply(&alg.idempotent(i), &alg.idempotent(j))?;
    ok &= if i == j { eij == alg.idempotent(i) } else { eij.is_zero() };
    // e_i x e_j summed over all i, j gives x back.
    let mut sum = AlgebraElement::zero();
    for i in 1..=n {
        for j in 1..=n {
            sum = sum.add(&alg.multiply(&alg.multiply(&alg.idempotent(i), &x)?, &alg.idempotent(j))?);
        }
    }
    Ok(ok && sum == x)
}

pub fn check_reynolds(rng: &mut impl Rng) -> Result<bool> {
    let rings = property_rings();
    let k = rng.gen_range(0..9);
    let alg = &rings[k];
    let q = alg.quiver().unwrap();
    let group = generate_group(q, &[random_automorphism(q, rng)], 1000)?;
    let x = random_element(alg, rng.gen_range(0..=alg.cutoff()), rng);
    let p = reynolds(&group, alg, &x)?;
    let fixed = group.elements().iter().map(|g| g.apply(alg, &p)).collect::<Result<Vec<_>>>()?;
    Ok(reynolds(&group, alg, &p)? == p && fixed.iter().all(|y| *y == p))
}

/// A random resolution: ring, simple module and homological bound.
fn random_resolution(rng: &mut impl Rng) -> Result<(Arc<GradedAlgebra>, ppalg::Resolution)> {
    let alg = property_rings().choose(rng).unwrap().clone();
    let j = rng.gen_range(1..=alg.vertex_count());
    let hom = rng.gen_range(2..=4);
    let res = minimal_resolution(&simple_module(&alg, j, Side::Right)?, &alg, hom, alg.cutoff())?;
    Ok((alg, res))
}

pub fn check_d_squared(rng: &mut impl Rng) -> Result<bool> {
    let (alg, res) = random_resolution(rng)?;
    let mut ok = true;
    for k in 1..res.steps.len() {
        for _ in 0..3 {
            let s = rng.gen_range(0..=res.cutoff);
            let v = rng.gen_range(1..=alg.vertex_count());
            let dim = res.block_dim(k, s, v);
            if dim == 0 {
                continue;
            }
            let x = SparseVec::from_entries(
                (0..dim).map(|p| (p, Scalar::from_int(rng.gen_range(-2..=2)))).collect(),
            );
            let once = res.apply_differential(&alg, k, &x, s, v)?;
            ok &= res.apply_differential(&alg, k - 1, &once, s, v)?.is_zero();
        }
    }
    Ok(ok)
}

pub fn check_minimality(rng: &mut impl Rng) -> Result<bool> {
    Ok(random_resolution(rng)?.1.is_minimal())
}

/// `sum_k (-1)^k H_{F_k}(t) = H_S(t) + (-1)^H H_{Z}(t)` with `Z` the last kernel.
pub fn check_euler(rng: &mut impl Rng) -> Result<bool> {
    let (alg, res) = random_resolution(rng)?;
    let chi = res.euler_characteristic(&alg).coeffs_i64().unwrap();
    let h = res.steps.len() as i64 - 1;
    let sign = if h % 2 == 0 { 1 } else { -1 };
    Ok(chi
        .iter()
        .enumerate()
        .all(|(s, &c)| c == i64::from(s == 0) + sign * res.last_kernel_dims[s] as i64))
}
