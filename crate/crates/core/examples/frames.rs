//! Build the coefficient frame of a Y-system in the three semifields and
//! print a few slices.

use ysyslab::cluster::{numeric_frame, symbolic_frame, tropical_frame, SymbolicBudget, YSystem};
use ysyslab::semifield::PosRealAssignment;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair = std::env::args().nth(1).unwrap_or_else(|| "A1xA2".into());
    let sys: YSystem = pair.parse()?;
    println!("{sys}: period {}, labels {:?}", sys.period(), sys.labels());
    let trop = tropical_frame(&sys, -2, 5)?;
    let sym = symbolic_frame(&sys, &SymbolicBudget::default(), -2, 5)?;
    let num = numeric_frame(&sys, &PosRealAssignment::constant(sys.size(), 2.0)?, -2, 5)?;
    for u in -2..=5 {
        println!("u = {u}");
        for a in 0..sys.size() {
            println!(
                "  {:<9} trop {:<12} num {:<10.6} sym {}",
                sys.label(a),
                trop.get(a, u)?.to_string(),
                num.get(a, u)?.0,
                sym.get(a, u)?
            );
        }
    }
    Ok(())
}
