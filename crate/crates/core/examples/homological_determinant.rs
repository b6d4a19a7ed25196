//! Hdet(g) = c1 t1 I_n, and its multiplicativity on generated groups.

use ppalg::traces::{hdet, hdet_is_homomorphism};
use ppalg::{build_extended_dynkin, generate_group, DynkinFamily, ScalingAutomorphism};

fn main() -> ppalg::Result<()> {
    let q = build_extended_dynkin(DynkinFamily::d(6)?)?.double()?;
    let pairs = q.pairs().count();
    // c_i = zeta_6^{a_i}, t_i = zeta_6^{m - a_i}: every pair has c t = zeta_6^m.
    let a: Vec<i64> = (0..pairs as i64).map(|i| i % 6).collect();
    for m in [0, 1, 3] {
        let g = ScalingAutomorphism::from_exponents(&q, 6, &a, m)?;
        let group = generate_group(&q, &[g.clone()], 100)?;
        let h = hdet(&q, &g)?;
        println!(
            "m = {m}: |G| = {}, Hdet(g) = {} I_{}, multiplicative on G: {}",
            group.order(),
            h.diag[0],
            h.diag.len(),
            hdet_is_homomorphism(&q, &group)?
        );
    }
    Ok(())
}
