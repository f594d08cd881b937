//! F-polynomials of a Y-system from the tropical frame and their
//! properties.

use ysyslab::cluster::{f_polynomials, SymbolicBudget, YSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair = std::env::args().nth(1).unwrap_or_else(|| "A2xA1".into());
    let sys: YSystem = pair.parse()?;
    let p = sys.period();
    let fam = f_polynomials(&sys, &SymbolicBudget::default(), 0, p)?;
    for u in 0..=p {
        for a in 0..sys.size() {
            println!("F_{}({u}) = {}", sys.label(a).trim_start_matches("y_"), fam.get(a, u)?);
        }
    }
    let r = fam.check_properties(&sys);
    println!("distinct F-polynomials: {}, properties hold: {}", fam.num_atoms(), r.passed);
    Ok(())
}
