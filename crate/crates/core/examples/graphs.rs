//! Builds the named fixture graphs and prints their basic invariants,
//! automorphism counts and what contraction does to a wheel.

use graphforms::graphs::{automorphisms, canonical_certificate, fixture, has_odd_automorphism};

fn main() -> graphforms::Result<()> {
    println!("name  v   e   h  deg  |Aut|  odd-aut");
    for name in ["W3", "W5", "W7", "Z5", "T5", "X5", "K6"] {
        let g = fixture(name)?;
        let (e, h) = (g.edge_count(), g.loop_number());
        println!(
            "{name:<4} {:>2} {e:>3} {h:>3} {:>4} {:>6}  {}",
            g.vertex_count,
            e as i64 - 2 * h as i64,
            automorphisms(&g).len(),
            has_odd_automorphism(&g)
        );
    }
    let w3 = fixture("W3")?;
    let contracted = w3.contract(0)?;
    println!("\nW3 / e1: {} vertices, {} edges, multiple edge: {}", contracted.vertex_count, contracted.edge_count(), contracted.has_multiple_edge());
    let relabeled = w3.relabel(&[1, 2, 3, 0], &[5, 4, 3, 2, 1, 0]);
    let same = canonical_certificate(&w3).canonical_key == canonical_certificate(&relabeled).canonical_key;
    println!("relabeled W3 has the same canonical key: {same}");
    println!("JSON: {}", w3.to_json());
    Ok(())
}
