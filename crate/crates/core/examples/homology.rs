//! Computes `dim H_n(GC_2)` for loop orders up to the first argument
//! (default 6) and prints it in the layout of the classical table.

use graphforms::graphcomplex::{loop_order_strata, HomologyTable};
use std::time::Instant;

fn main() -> graphforms::Result<()> {
    let h_max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let start = Instant::now();
    for h in 3..=h_max {
        let strata = loop_order_strata(h);
        let sizes: Vec<String> = strata.bases.iter().map(|(e, b)| format!("e={e}:{}", b.len())).collect();
        println!("h={h}: {}", sizes.join(" "));
    }
    let table = HomologyTable::compute(h_max)?;
    print!("{}", table.to_text());
    println!("({:.1?})", start.elapsed());
    Ok(())
}
