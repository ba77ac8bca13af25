//! Known closed forms of canonical forms on the wheel and `K_6` fixtures,
//! and point checks of computed forms against them.
//!
//! Each closed form is a scalar multiple `c(x) · Ω_G` of the volume form:
//!
//! * wheels `W_{2k+1}` with `ω^{4k+1}`: `c = Σ_j a_j Y^j / Ψ²` where
//!   `Y = (Π_{spokes} x) / Ψ`;
//! * `K_6` with `ω⁵ ∧ ω⁹`: `c = (9!/8) · Π_e x_e / Ψ³`.

use super::canonical::{canonical_form_at, CanonicalFormSpec, Route};
use super::identities::{random_points, CheckResult};
use super::values::FormValues;
use crate::error::{Error, Result};
use crate::graphs::{fixture, Graph};
use crate::laplacian::graph_polynomial;
use crate::polyring::{Field, Fp, Ring};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A closed-form expression `c(x) · Ω_G` for a canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosedForm {
    /// `Σ_j coefficients[j] · Y^j / Ψ²` with `Y = Π_{spokes} x / Ψ`; the
    /// spokes are the edges from index `rim` on (the [`crate::graphs::wheel`] labeling).
    Wheel { rim: usize, coefficients: Vec<i64> },
    /// `(numerator/denominator) · Π_e x_e / Ψ^power`.
    EdgeProduct { numerator: i64, denominator: i64, power: u32 },
}

impl ClosedForm {
    /// The closed form recorded for a named fixture and form, if any.
    pub fn for_fixture(name: &str, spec: &CanonicalFormSpec) -> Option<ClosedForm> {
        let wheel = |rim, coefficients: &[i64]| ClosedForm::Wheel { rim, coefficients: coefficients.to_vec() };
        match (name, spec.indices()) {
            ("W3", [1]) => Some(wheel(3, &[10])),
            ("W5", [2]) => Some(wheel(5, &[18, 18 * 12])),
            ("W7", [3]) => Some(wheel(7, &[26, 26 * 60, 26 * 360])),
            ("K6", [1, 2]) => Some(ClosedForm::EdgeProduct { numerator: 362_880, denominator: 8, power: 3 }),
            _ => None,
        }
    }

    /// Value of the coefficient `c(x)` at an exact point.
    pub fn eval(&self, g: &Graph, x: &[Fp]) -> Result<Fp> {
        let psi_inv = graph_polynomial(g)?.eval(x).and_then(|p| p.inv()).ok_or(Error::Pole)?;
        let c = |v: i64| Fp::from_i64(v);
        Ok(match self {
            ClosedForm::Wheel { rim, coefficients } => {
                let y = x[*rim..].iter().fold(psi_inv.clone(), |a, v| a.mul(v));
                let mut poly = Fp::zero();
                for a in coefficients.iter().rev() {
                    poly = poly.mul(&y).add(&c(*a));
                }
                poly.mul(&psi_inv).mul(&psi_inv)
            }
            ClosedForm::EdgeProduct { numerator, denominator, power } => {
                let prod = x.iter().fold(c(1), |a, v| a.mul(v));
                let ratio = c(*numerator).mul(&c(*denominator).inv().ok_or(Error::Pole)?);
                (0..*power).fold(ratio.mul(&prod), |a, _| a.mul(&psi_inv))
            }
        })
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Wheel { coefficients, .. } => {
                let lead = coefficients[0];
                let inner: Vec<String> = coefficients
                    .iter()
                    .enumerate()
                    .map(|(j, a)| match j {
                        0 => "1".to_string(),
                        1 => format!("{}·Y", a / lead),
                        _ => format!("{}·Y^{j}", a / lead),
                    })
                    .collect();
                if inner.len() == 1 {
                    write!(f, "{lead}·Ω/Ψ^2")
                } else {
                    write!(f, "{lead}·({})·Ω/Ψ^2, Y = Π spokes/Ψ", inner.join(" + "))
                }
            }
            ClosedForm::EdgeProduct { numerator, denominator, power } => {
                write!(f, "({numerator}/{denominator})·Π x·Ω/Ψ^{power}")
            }
        }
    }
}

/// The scalar `c` with `values = c · Ω` at `x`, if the values are such a multiple.
pub fn omega_multiple(values: &FormValues<Fp>, x: &[Fp]) -> Option<Fp> {
    let e = x.len();
    let full = if e >= 64 { u64::MAX } else { (1u64 << e) - 1 };
    let c = values.get(full & !1).mul(&x[0].neg().inv()?);
    for k in 0..e {
        let omega_k = if k % 2 == 0 { x[k].neg() } else { x[k] };
        if values.get(full & !(1 << k)) != c.mul(&omega_k) {
            return None;
        }
    }
    Some(c)
}

/// Evaluates the canonical form of `g` exactly over `F_p` at `points` random
/// points and compares it with `closed`.
pub fn check_closed_form(g: &Graph, spec: &CanonicalFormSpec, closed: &ClosedForm, points: usize, seed: u64) -> Result<CheckResult> {
    let e = g.edge_count();
    for (i, x) in random_points::<Fp>(e, points, seed).iter().enumerate() {
        let v = canonical_form_at(g, spec, x, Route::Auto)?;
        let agrees = omega_multiple(&v, x).is_some_and(|c| closed.eval(g, x).is_ok_and(|want| want == c));
        if !agrees {
            return Ok(CheckResult {
                name: "closed form".into(),
                passed: false,
                detail: format!("mismatch at point {i} against {closed}"),
            });
        }
    }
    Ok(CheckResult {
        name: "closed form".into(),
        passed: true,
        detail: format!("{points} points agree with {closed}"),
    })
}

/// [`check_closed_form`] for a named fixture with a recorded closed form.
pub fn check_fixture_closed_form(name: &str, spec: &CanonicalFormSpec, points: usize, seed: u64) -> Result<CheckResult> {
    let closed = ClosedForm::for_fixture(name, spec).ok_or_else(|| Error::UnknownFixture(format!("{name} with {spec}")))?;
    check_closed_form(&fixture(name)?, spec, &closed, points, seed)
}
