//! Exact arithmetic in Z[zeta_9]: products, automorphisms and lambda-adic
//! valuations and digits.

use cyclosum::{CycRing, Valuation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = CycRing::new(3)?;
    let z = ring.zeta_pow(1);
    let a = ring.from_coeffs([1, 2, 0, -1, 0, 3]);
    println!("a = {a}");
    println!("z^6 = {}", ring.zeta_pow(6));
    println!("a * z = {}", ring.mul(&a, &z));
    println!("sigma_2(a) = {}", ring.apply_automorphism(&a, 2)?);
    println!("conj(a) = {}", ring.conjugate(&a));

    let lambda = ring.lambda();
    println!("lambda = {lambda}, lambda * M = {}", ring.mul(&lambda, ring.lambda_cofactor()));

    let b = ring.mul(&a, &ring.pow(&lambda, 5));
    match ring.lambda_valuation(&b, 20) {
        Valuation::Exact(v) => println!("v_lambda(a * lambda^5) = {v}"),
        Valuation::AtLeast(v) => println!("v_lambda(a * lambda^5) >= {v}"),
    }
    let three = ring.from_int(3);
    println!("v_lambda(3) = {}", ring.lambda_valuation(&three, 20));

    let digits = ring.lambda_digit_expand(&a, 4);
    println!("base-lambda digits of a: {:?}", digits.digits);
    assert_eq!(ring.reconstruct(&digits), a);
    Ok(())
}
