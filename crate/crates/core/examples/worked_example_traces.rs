//! The sign automorphism of Pi(A~2): vector traces, total trace, reciprocity.

use ppalg::traces::{matrix_identity_check, reciprocity_check, vtrace_bruteforce, vtrace_closed, Side};
use ppalg::{build_extended_dynkin, DynkinFamily, GradedAlgebra, Scalar, ScalingAutomorphism};

fn main() -> ppalg::Result<()> {
    let q = build_extended_dynkin(DynkinFamily::a(3)?)?.double()?;
    let signs = || [1, -1, -1].map(Scalar::from_int).to_vec();
    let g = ScalingAutomorphism::new(&q, signs(), signs())?;

    for side in [Side::Right, Side::Left] {
        let closed = vtrace_closed(&q, &g, side)?;
        println!("{} traces:", side.as_str());
        for (j, e) in closed.entries.iter().enumerate() {
            println!("  vertex {}: {}", j + 1, e.render());
        }
    }
    let total = vtrace_closed(&q, &g, Side::Right)?.total();
    println!("Tr(g, t) = {}", total.render());

    let alg = GradedAlgebra::preprojective(&q, 12)?;
    let brute = vtrace_bruteforce(&alg, &g, Side::Right, 12)?;
    println!("vertex 3 by counting: {:?}", brute[2].coeffs_i64());

    let r = reciprocity_check(&q, &g)?;
    println!("reciprocity holds: {}  matrix identity holds: {}", r.holds, matrix_identity_check(&q, &g)?);
    Ok(())
}
