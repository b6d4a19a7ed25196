//! Random root-of-unity automorphisms: closed-form traces against counting,
//! on both sides, plus reciprocity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ppalg::traces::{reciprocity_check, vtrace_bruteforce, vtrace_closed, Side};
use ppalg::{build_extended_dynkin, DynkinFamily, GradedAlgebra, ScalingAutomorphism};

fn main() -> ppalg::Result<()> {
    let d = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in [DynkinFamily::a(2)?, DynkinFamily::d(6)?, DynkinFamily::e(7)?] {
        let q = build_extended_dynkin(f)?.double()?;
        let alg = GradedAlgebra::preprojective(&q, d)?;
        for _ in 0..3 {
            let order = rng.gen_range(2..=6u32);
            let a: Vec<i64> = (0..q.pairs().count()).map(|_| rng.gen_range(0..order as i64)).collect();
            let g = ScalingAutomorphism::from_exponents(&q, order, &a, rng.gen_range(0..order as i64))?;
            let mut agree = true;
            for side in [Side::Right, Side::Left] {
                let closed = vtrace_closed(&q, &g, side)?.expand(d)?;
                let counted = vtrace_bruteforce(&alg, &g, side, d)?;
                agree &= closed.iter().zip(&counted).all(|(x, y)| x.agrees_with(y));
            }
            println!(
                "{f} order {order} exponents {a:?}: pipelines agree {agree}, reciprocity {}",
                reciprocity_check(&q, &g)?.holds
            );
        }
    }
    Ok(())
}
