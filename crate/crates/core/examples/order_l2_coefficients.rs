//! Base-lambda expansion of J_{l^2}(1,n) + 1 and the coefficients c_{i,n}
//! that appear in the order-l^2 congruence.

use cyclosum::congruence::{extract_c_coeffs, verify_order_l2};
use cyclosum::VerificationContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, l) in [(19, 3), (101, 5)] {
        let ctx = VerificationContext::new(p, 1, l)?;
        println!("q = {p}, l = {l}");
        for n in 1..l * l {
            let case = verify_order_l2(&ctx, n)?;
            let coeffs = if n % l == 0 {
                "(multiple of l)".to_string()
            } else {
                format!("c_3..c_{l} = {:?}", extract_c_coeffs(&ctx, n)?.as_slice())
            };
            let achieved = case.achieved.map(|v| v.to_string()).unwrap_or_default();
            println!("  n = {n:>2}: {coeffs:<24} valuation {achieved:>4} (need {})", case.required);
        }
    }
    Ok(())
}
