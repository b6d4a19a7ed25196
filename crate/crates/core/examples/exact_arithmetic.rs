//! Exact scalars, rational functions and matrix inversion over Q(t).

use ppalg::{Poly, RatFun, RatMatrix, Scalar};

fn main() -> ppalg::Result<()> {
    let half = Scalar::rational(1, 2)?;
    let z3 = Scalar::root_of_unity(3, 1);
    let z4 = Scalar::root_of_unity(4, 1);
    println!("1/2 + zeta_3 = {}", &half + &z3);
    println!("zeta_3 * zeta_4 = {} (order {:?})", &z3 * &z4, (&z3 * &z4).multiplicative_order(100)?);
    println!("zeta_3^3 = {}", z3.pow(3)?);

    // Canonical form: (3 - 5t + 3t^2) / ((1 - t)(1 - t^3)) is already reduced.
    let f = RatFun::normalize(Poly::from_ints(&[3, -5, 3]), Poly::from_ints(&[1, -1, 0, -1, 1]))?;
    println!("f = {}", f.render());
    println!("f expanded: {:?}", f.series_expand(8)?.coeffs_i64());
    println!("f(1/t) = {}", f.substitute_t_inverse().render());

    let t = RatFun::t();
    let one_plus_t2 = RatFun::from_poly(Poly::from_ints(&[1, 0, 1]));
    let minus_t = -&t;
    let m = RatMatrix::from_rows(vec![
        vec![one_plus_t2.clone(), minus_t.clone()],
        vec![minus_t, one_plus_t2],
    ])?;
    println!("det M = {}", m.det()?.render());
    println!("M^-1 = {:?}", m.inverse()?);
    Ok(())
}
