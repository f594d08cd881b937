//! Full and half periodicity of a Y-system in every backend.

use ysyslab::cluster::{verify_periodicity, SymbolicBudget, YSystem};
use ysyslab::semifield::Backend;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair = std::env::args().nth(1).unwrap_or_else(|| "A3xA2".into());
    let sys: YSystem = pair.parse()?;
    let budget = SymbolicBudget::default();
    let mut backends = vec![Backend::Tropical, Backend::Numeric];
    if budget.allows(&sys) {
        backends.push(Backend::Symbolic);
    }
    for b in backends {
        let r = verify_periodicity(&sys, b, 5, 1, 1e-9, &budget)?;
        println!(
            "{sys} {b:<9} period {} full {} half {} max error {:.2e}",
            r.period,
            r.full.passed,
            r.half.passed,
            r.full.max_error.unwrap_or(0.0).max(r.half.max_error.unwrap_or(0.0))
        );
    }
    Ok(())
}
