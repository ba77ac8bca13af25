//! Stokes' theorem on the graph `X5`: the boundary terms of `∫ dω⁹` over
//! its 10-simplex cancel, which relates the wheel `W5` to the zigzag `Z5`.

use graphforms::forms::CanonicalFormSpec;
use graphforms::graphs::fixture;
use graphforms::integrate::{stokes_residual, Sampler};

fn main() -> graphforms::Result<()> {
    let samples: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(200_000);
    let report = stokes_residual(&fixture("X5")?, &CanonicalFormSpec::primitive(2)?, Sampler::Hepp, samples, 1)?;
    println!("{}", report.to_text());
    println!("consistent with zero: {}", report.consistent_with_zero());
    Ok(())
}
