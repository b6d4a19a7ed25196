//! Minimal resolutions of simple modules and the generalized Gorenstein
//! verdict, for Pi(D~4) and for the fixed ring of the sign automorphism.

use std::sync::Arc;

use ppalg::fixed_ring::{build_subalgebra_truncation, fixed_basis};
use ppalg::traces::Side;
use ppalg::{
    build_extended_dynkin, generate_group, gorenstein_verdict, minimal_resolution, simple_module, DynkinFamily,
    GradedAlgebra, Scalar, ScalingAutomorphism,
};

fn main() -> ppalg::Result<()> {
    let d = 12;
    let qd = build_extended_dynkin(DynkinFamily::d(5)?)?.double()?;
    let pd = GradedAlgebra::preprojective(&qd, d)?;
    for j in [1, 3] {
        let res = minimal_resolution(&simple_module(&pd, j, Side::Right)?, &pd, 3, d)?;
        println!("S{j} over {}: {:?}", pd.name(), res.shapes());
    }
    let v = gorenstein_verdict(&pd, 3, d)?.verdict;
    println!("{}: N = {:?}, sigma = {:?}, ell = {:?}", pd.name(), v.n, v.sigma, v.ell);

    let q = build_extended_dynkin(DynkinFamily::a(3)?)?.double()?;
    let signs = || [1, -1, -1].map(Scalar::from_int).to_vec();
    let group = generate_group(&q, &[ScalingAutomorphism::new(&q, signs(), signs())?], 10)?;
    let alg = Arc::new(GradedAlgebra::preprojective(&q, d)?);
    let c = build_subalgebra_truncation(alg.clone(), &fixed_basis(&alg, &group, d)?)?;
    let report = gorenstein_verdict(&c, 4, d)?;
    for (j, groups) in report.ext.iter().enumerate().take(2) {
        println!("S{} over {}: {:?}", j + 1, c.name(), report.resolutions[j].shapes());
        for g in groups {
            println!("  Ext^{}: {:?} (reliable through degree {})", g.i, g.dims, g.window);
        }
    }
    println!("{}", serde_json::to_string(&report.to_json()["verdict"]).expect("json"));
    Ok(())
}
