//! Exact Jacobi sums of every order dividing 18 over F_19.

use cyclosum::VerificationContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = VerificationContext::new(19, 1, 3)?;
    let sums = ctx.sums();
    let ring = ctx.ring();
    println!("q = 19, gamma = {}, ind(2) = {}", ctx.field().gamma(), sums.ind_two());

    for e in [3, 6, 9, 18] {
        let j = sums.jacobi_sum(e, 1, 1)?.value;
        println!("J_{e}(1,1) = {j}");
        println!("  times conjugate = {}", ring.mul(&j, &ring.conjugate(&j)));
    }
    println!("J_18(0,0) = {}", sums.jacobi_sum(18, 0, 0)?.value);
    println!("J_18(0,5) = {}", sums.jacobi_sum(18, 0, 5)?.value);

    // sum over chi^i(v) chi^j(1 - v) instead of chi^j(v + 1)
    let r = sums.jacobi_sum_reflected(9, 1, 2)?.value;
    println!("reflected J_9(chi, chi^2) = {r}");
    Ok(())
}
