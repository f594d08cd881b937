//! Expand Σ y ∧ (1+y) over S+ in F-polynomial atoms and watch every block
//! cancel.

use ysyslab::cluster::{SymbolicBudget, YSystem};
use ysyslab::wedge::{wedge_vanishing, WedgeContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair = std::env::args().nth(1).unwrap_or_else(|| "A2xA2".into());
    let sys: YSystem = pair.parse()?;
    let ctx = WedgeContext::new(&sys, &SymbolicBudget::default())?;
    for (a, u) in [(0, 0), (sys.size() - 1, 2)] {
        if sys.parity(a, u) == ysyslab::dynkin::Sign::Plus {
            println!("{} at u = {u}: y = {}, 1+y = {}", sys.label(a), ctx.factorize_y(a, u)?, ctx.factorize_one_plus_y(a, u)?);
        }
    }
    let r = wedge_vanishing(&ctx)?;
    println!("{} terms, {} atoms", r.terms, r.atoms);
    let b = &r.blocks;
    for (name, blk) in [
        ("tropical", &b.tropical),
        ("symmetric", &b.symmetric),
        ("mixed 1", &b.mixed_1),
        ("mixed 2", &b.mixed_2),
        ("mixed 3", &b.mixed_3),
        ("mixed 4", &b.mixed_4),
        ("mixed 5", &b.mixed_5),
    ] {
        println!("  {name:<9} {}", blk.passed);
    }
    println!("total zero: {} ({})", r.total_zero, r.diagnosis);
    Ok(())
}
