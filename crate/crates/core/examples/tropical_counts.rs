//! Count positive and negative tropical monomials over one period and
//! compare with h'rr' and hrr'.

use ysyslab::cluster::YSystem;
use ysyslab::tropical::{tropical_report, verify_dvector_factorization, verify_sign_regions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pairs: Vec<String> = std::env::args().skip(1).collect();
    let pairs = if pairs.is_empty() { vec!["A1xA2".into(), "A3xA1".into(), "A3xA2".into(), "D4xA3".into()] } else { pairs };
    for p in pairs {
        let sys: YSystem = p.parse()?;
        let r = tropical_report(&sys)?;
        let regions = verify_sign_regions(&sys)?;
        let dvec = verify_dvector_factorization(&sys)?;
        println!(
            "{:<6} N+ = {:<4} (h'rr' = {:<4}) N- = {:<4} (hrr' = {:<4}) regions {} d-vectors {}",
            r.pair, r.n_plus, r.expected_plus, r.n_minus, r.expected_minus, regions.passed, dvec.passed
        );
    }
    Ok(())
}
