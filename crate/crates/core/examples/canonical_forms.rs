//! Canonical forms of graphs: the exact expansion of `ω⁵` on the wheel
//! `W3`, exact point checks of `ω⁹`, `ω¹³` and `ω⁵∧ω⁹` against their
//! closed forms, and the identity checks run on `W4`.

use graphforms::forms::{canonical_form, check_fixture_closed_form, identity_checks, CanonicalFormSpec};
use graphforms::graphs::{fixture, wheel};

fn main() -> graphforms::Result<()> {
    let w3 = fixture("W3")?;
    let omega5 = canonical_form(&w3, &CanonicalFormSpec::primitive(1)?)?;
    let ratio = omega5.ratio_to_omega().expect("top-degree form");
    println!("ω⁵(W3) = ({}) / Ψ^{} · Ω", ratio.numerator, ratio.exponent);

    for (name, spec) in [("W5", "2"), ("W7", "3"), ("K6", "1,2")] {
        let spec = CanonicalFormSpec::parse(spec)?;
        let r = check_fixture_closed_form(name, &spec, 10, 1)?;
        println!("{name} {spec}: {} — {}", if r.passed { "PASS" } else { "FAIL" }, r.detail);
    }

    println!("\nidentity checks on W4:");
    println!("{}", identity_checks(&wheel(4)?, 7)?.to_text());
    Ok(())
}
