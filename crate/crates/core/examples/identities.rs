//! Exhaustive exact identities among Jacobi sums, printed as CSV.

use cyclosum::congruence::verify_propositions;
use cyclosum::VerificationContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, l) in [(19, 3), (37, 3)] {
        let report = verify_propositions(&VerificationContext::new(p, 1, l)?);
        print!("{}", report.to_csv());
        let failing: Vec<_> = report.checks.iter().filter(|c| !c.pass()).collect();
        for c in &failing {
            eprintln!("{} at order {} fails: {:?}", c.identity, c.order, c.witness);
        }
    }
    Ok(())
}
