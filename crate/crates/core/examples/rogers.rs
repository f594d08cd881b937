//! The Rogers dilogarithm and its functional equations.

use ysyslab::dilog::{rogers_l, rogers_normalized, verify_five_term, PI2_6};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for x in [0.0, 0.1, 0.5, (5f64.sqrt() - 1.0) / 2.0, 0.9, 1.0] {
        println!("L({x:.6}) = {:.15}  normalized {:.15}", rogers_l(x)?, rogers_normalized(x)?);
    }
    let x = 0.3;
    println!("L(x) + L(1-x) - π²/6 = {:.2e}", rogers_l(x)? + rogers_l(1.0 - x)? - PI2_6);
    let r = verify_five_term(0.3, 0.7, 1e-12)?;
    println!("five-term error at (0.3, 0.7): {:.2e}", r.error);
    Ok(())
}
