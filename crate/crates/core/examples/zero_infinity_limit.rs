//! Specialize every initial coefficient to `t` and watch the `S+` sum
//! collapse onto the count of negative tropical monomials as `t → 0`.

use ysyslab::cluster::YSystem;
use ysyslab::dilog::{zero_infinity_limit, LIMIT_ARGUMENT_FACTOR, LIMIT_TS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair = std::env::args().nth(1).unwrap_or_else(|| "A3xA2".into());
    let sys: YSystem = pair.parse()?;
    let tol = LIMIT_ARGUMENT_FACTOR * LIMIT_TS[2];
    let r = zero_infinity_limit(&sys, &LIMIT_TS, tol)?;
    println!("{}: expected N- = {}", r.pair, r.expected);
    for (t, s) in r.ts.iter().zip(&r.sums) {
        println!("  t = {t:<6} S+ sum = {s:.12}");
    }
    let last = r.ts.last().unwrap();
    println!("  largest term deviation at t = {last}: {:.3e}", r.max_final_deviation);
    println!("  largest argument deviation at t = {last}: {:.3e}", r.max_final_argument_deviation);
    let toward_one = r.terms.iter().filter(|t| t.values.last() > Some(&0.5)).count();
    println!("  terms tending to 1: {toward_one} of {}", r.terms.len());
    println!("  passed: {}", r.passed);
    Ok(())
}
