//! Dilogarithm sums over S+, S-, H+ and H- at random positive assignments.

use ysyslab::cluster::YSystem;
use ysyslab::dilog::verify_identities;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair = std::env::args().nth(1).unwrap_or_else(|| "A2xA1".into());
    let sys: YSystem = pair.parse()?;
    let suite = verify_identities(&sys, 5, 1e-8, 42)?;
    for r in &suite.identities {
        println!("{:<3} expected {:<5} max error {:.2e} values {:?}", r.domain, r.expected, r.max_abs_error, r.measured);
    }
    println!("complement {} sum rule {}", suite.complement.passed, suite.sum_rule.passed);
    Ok(())
}
