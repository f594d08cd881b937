//! The S+ sum does not depend on the initial assignment.

use ysyslab::cluster::YSystem;
use ysyslab::dilog::verify_constancy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair = std::env::args().nth(1).unwrap_or_else(|| "D4xA2".into());
    let sys: YSystem = pair.parse()?;
    let r = verify_constancy(&sys, 20, 1e-10, 3)?;
    println!("{}: {} assignments, range {:.2e}, passed {}", r.pair, r.values.len(), r.range, r.passed);
    Ok(())
}
