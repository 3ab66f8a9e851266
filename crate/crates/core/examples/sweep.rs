//! Verify every admissible q in a range, prime powers included, in parallel.

use cyclosum::cli::sweep_fields;
use cyclosum::congruence::verify_field;
use cyclosum::VerificationContext;
use rayon::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = 3;
    let fields = sweep_fields(l, 2, 2000, true);
    let rows: Vec<_> = fields
        .par_iter()
        .map(|&(p, r)| {
            let ctx = VerificationContext::new(p, r, l).expect("admissible field");
            let report = verify_field(&ctx);
            (report.q, p, r, report.gamma, report.w, report.all_pass)
        })
        .collect();
    println!("{:>6} {:>5} {:>2} {:>6} {:>6}  result", "q", "p", "r", "gamma", "w");
    for (q, p, r, gamma, w, pass) in &rows {
        println!("{q:>6} {p:>5} {r:>2} {gamma:>6} {w:>6}  {}", if *pass { "pass" } else { "FAIL" });
    }
    let failed = rows.iter().filter(|row| !row.5).count();
    println!("{} fields, {failed} failing", rows.len());
    Ok(())
}
