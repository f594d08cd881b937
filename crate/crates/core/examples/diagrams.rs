//! Coxeter numbers, bipartitions, the involution ω and d-vectors of the
//! simply laced diagrams.

use ysyslab::dynkin::{diagrams_up_to, Sign};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for x in diagrams_up_to(5, 6, 8) {
        let plus: Vec<usize> = x.part_nodes(Sign::Plus).iter().map(|i| i + 1).collect();
        let omega: Vec<usize> = x.nodes().map(|i| x.omega(i) + 1).collect();
        println!(
            "{x:<3} h = {:<2} |Φ+| = {:<3} dim g = {:<3} I+ = {plus:?} ω = {omega:?}",
            x.coxeter_number(),
            x.positive_roots().len(),
            x.dim_g()
        );
    }
    let a3 = "A3".parse::<ysyslab::dynkin::DynkinDiagram>()?;
    println!("d-vectors of A3, node 1:");
    for u in (0..=a3.coxeter_number() as i64).step_by(2) {
        println!("  d(1, {u}) = {:?}", a3.d_vector(0, u)?.coords());
    }
    Ok(())
}
