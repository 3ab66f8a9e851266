//! Check every case of the order-2l^2 congruence for one field, printing
//! which right-hand side each n was routed to.
//!
//! Usage: `cargo run --example main_theorem -- [p] [r] [l]` (default 19 1 3).

use cyclosum::congruence::{verify_field, OutputFormat};
use cyclosum::VerificationContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (p, r, l) = match args[..] {
        [p, r, l] => (p, r as u32, l),
        [] => (19, 1, 3),
        _ => return Err("expected p r l".into()),
    };
    let ctx = VerificationContext::new(p, r, l)?;
    let report = verify_field(&ctx);
    print!("{}", report.render(OutputFormat::Text));
    if !report.all_pass {
        std::process::exit(1);
    }
    Ok(())
}
