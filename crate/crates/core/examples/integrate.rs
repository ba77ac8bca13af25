//! Monte-Carlo canonical integrals of the wheels and the zigzag graph,
//! compared with their zeta-value references, plus the Feynman residue of
//! the wheel with four spokes. Pass a sample count as the first argument.

use graphforms::forms::CanonicalFormSpec;
use graphforms::graphs::{fixture, wheel};
use graphforms::integrate::{feynman_residue, integrate, reference_integral, wheel_feynman_residue, Integrand, Sampler};

fn main() -> graphforms::Result<()> {
    let samples: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1_000_000);
    for (name, spec) in [("W3", "1"), ("W5", "2"), ("Z5", "2"), ("T5", "2")] {
        let g = fixture(name)?;
        let spec = CanonicalFormSpec::parse(spec)?;
        let description = Integrand::canonical(&g, &spec)?.description().to_string();
        match description.char_indices().nth(90) {
            Some((cut, _)) => println!("{name}: integrand {} …", &description[..cut]),
            None => println!("{name}: integrand {description}"),
        }
        let est = integrate(&g, &spec, Sampler::Hepp, samples, 1)?;
        let (target, label) = reference_integral(name, &spec).expect("reference value");
        let note = est.exact_zero.as_deref().map(|r| format!(" (exact: {r})")).unwrap_or_default();
        println!("  I = {:.5} ± {:.5}{note}   reference {label} = {:.5}", est.value, est.std_error, target.to_f64());
    }
    let w4 = wheel(4)?;
    let res = feynman_residue(&w4, Sampler::Hepp, samples, 1)?;
    println!("W4 residue: {:.5} ± {:.5}   reference 20 ζ(5) = {:.5}", res.value, res.std_error, wheel_feynman_residue(4)?.to_f64());
    Ok(())
}
