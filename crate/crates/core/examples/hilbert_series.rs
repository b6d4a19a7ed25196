//! Hilbert series of preprojective algebras: closed forms against counting
//! a graded basis, for every family.

use ppalg::traces::{hilbert_closed, vtrace_bruteforce, Side};
use ppalg::{build_extended_dynkin, DynkinFamily, GradedAlgebra, ScalingAutomorphism};

fn main() -> ppalg::Result<()> {
    let d = 10;
    let families = [
        DynkinFamily::a(3)?,
        DynkinFamily::a(4)?,
        DynkinFamily::d(5)?,
        DynkinFamily::e(6)?,
        DynkinFamily::e(8)?,
    ];
    for f in families {
        let q = build_extended_dynkin(f)?.double()?;
        let alg = GradedAlgebra::preprojective(&q, d)?;
        let closed = hilbert_closed(&q, Side::Right)?;
        let counted = vtrace_bruteforce(&alg, &ScalingAutomorphism::identity(&q), Side::Right, d)?;
        let agree = closed.expand(d)?.iter().zip(&counted).all(|(a, b)| a.agrees_with(b));
        println!("{f}: H(e_1 A) = {}", closed.entries[0].render());
        println!("    dim A_d = {:?}  closed/counted agree: {agree}", (0..=d).map(|k| alg.dim(k)).collect::<Vec<_>>());
    }
    Ok(())
}
