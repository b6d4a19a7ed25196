//! Molien series, fixed subspaces and minimal generators of the fixed ring.

use std::sync::Arc;

use ppalg::fixed_ring::{build_subalgebra_truncation, extract_generators, fixed_basis, generators_span};
use ppalg::traces::molien;
use ppalg::{build_extended_dynkin, generate_group, AlgebraElement, DynkinFamily, GradedAlgebra, Scalar, ScalingAutomorphism};

fn main() -> ppalg::Result<()> {
    let d = 8;
    let q = build_extended_dynkin(DynkinFamily::a(3)?)?.double()?;
    let signs = || [1, -1, -1].map(Scalar::from_int).to_vec();
    let g = ScalingAutomorphism::new(&q, signs(), signs())?;
    let group = generate_group(&q, &[g], 10)?;
    let alg = Arc::new(GradedAlgebra::preprojective(&q, d)?);

    let m = molien(&alg, &group, d)?;
    println!("H_(A^G)(t) = {}", m.molien.as_ref().expect("closed form").render());
    println!("expansion   {:?}", m.expansion.coeffs_i64().expect("integers"));

    let fb = fixed_basis(&alg, &group, d)?;
    println!("fixed dims  {:?}", fb.dims());

    let gens = extract_generators(&alg, &fb)?;
    for g in &gens {
        println!("  generator {:<12} degree {}  {} -> {}", g.label, g.degree, g.source, g.target);
    }
    println!("generators span every degree: {}", generators_span(&alg, &fb, &gens)?);

    let c = build_subalgebra_truncation(alg.clone(), &fb)?;
    let find = |k: usize, l: &str| AlgebraElement::basis(k, (0..c.dim(k)).find(|&i| c.label(k, i) == l).unwrap());
    let xy = c.multiply(&find(2, "a2 a3"), &find(2, "a3* a2*"))?;
    println!("x y = {} in {}", c.render_element(&xy), c.name());
    Ok(())
}
