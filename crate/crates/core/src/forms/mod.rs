//! Differential forms with denominators a power of one base polynomial,
//! Maurer–Cartan invariant traces `β^n_X = tr((X⁻¹dX)^n)`, the canonical
//! graph forms `ω^{4k+1}_G`, and checkers for the identities they satisfy.
//!
//! A form of degree `d` in `n` variables is stored as a map from ascending
//! index subsets `S` (bitmasks, `|S| = d`) to sections `N_S / B^{m_S}`, where
//! `B` is the shared base polynomial (typically `Ψ_G` or `det X`). Only
//! ascending subsets are stored, so antisymmetry is implicit.

mod canonical;
mod closed;
mod identities;
mod trace;
mod values;

pub use canonical::{
    canonical_form, canonical_form_at, canonical_form_via_eta, coproduct, edge_matrix_at, reduced_coproduct,
    component_labels, CanonicalFormSpec, CoproductTerm, Route,
};
pub use closed::{check_closed_form, check_fixture_closed_form, omega_multiple, ClosedForm};
pub use identities::{
    check_automorphism_invariance, check_duality, check_one_vertex_join, check_parallel, check_restriction,
    check_route_equivalence, check_series, check_vanishing, identity_checks, random_points, vanishing_reason,
    wheel_dual_edge_map,
    CheckResult, IdentityReport,
};
pub use trace::{
    cyclic_trace_components, matrix_trace_components, maurer_cartan_power_at, maurer_cartan_trace,
    maurer_cartan_trace_at,
};
pub use values::{subsets_of_size, FormValues};

use crate::error::{Error, Result};
use crate::polyring::{Field, MultiPoly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Bit mask of a subset of variable indices.
pub type Mask = u64;

/// Indices contained in a mask, ascending.
pub fn mask_indices(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

/// Mask of a list of indices.
pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

/// Sign of `dx_A ∧ dx_B = ± dx_{A∪B}` for disjoint ascending sets: `−1` to
/// the number of pairs `a ∈ A`, `b ∈ B` with `a > b`.
pub fn merge_sign(a: Mask, b: Mask) -> i64 {
    debug_assert_eq!(a & b, 0);
    let mut inversions = 0u32;
    for j in mask_indices(b) {
        inversions += (a >> (j + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A coefficient `numerator / base^exponent`.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub numerator: MultiPoly,
    pub exponent: u32,
}

/// A differential form whose coefficients are polynomials over powers of a
/// shared base polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffForm {
    nvars: usize,
    degree: usize,
    base: MultiPoly,
    components: BTreeMap<Mask, Section>,
}

impl DiffForm {
    /// The zero form of the given degree.
    pub fn zero(nvars: usize, degree: usize, base: MultiPoly) -> Self {
        assert!(nvars <= 64, "at most 64 variables are supported");
        DiffForm {
            nvars,
            degree,
            base,
            components: BTreeMap::new(),
        }
    }

    /// The constant 0-form `1`.
    pub fn one(nvars: usize, base: MultiPoly) -> Self {
        let mut f = DiffForm::zero(nvars, 0, base);
        f.add_component(0, MultiPoly::one(nvars), 0);
        f
    }

    /// `Ω = Σ_i (−1)^i x_i dx_1…\hat{dx_i}…dx_n` (indices counted from 1).
    pub fn omega(nvars: usize, base: MultiPoly) -> Self {
        let full: Mask = if nvars == 64 { u64::MAX } else { (1 << nvars) - 1 };
        let mut f = DiffForm::zero(nvars, nvars.saturating_sub(1), base);
        for k in 0..nvars {
            let sign = if k % 2 == 0 { -1 } else { 1 };
            f.add_component(full & !(1 << k), MultiPoly::var(nvars, k).scale_int(sign), 0);
        }
        f
    }

    /// `d log B = Σ_i (∂_i B / B) dx_i`.
    pub fn dlog_base(nvars: usize, base: MultiPoly) -> Self {
        let mut f = DiffForm::zero(nvars, 1, base.clone());
        for i in 0..nvars {
            f.add_component(1 << i, base.derivative(i), 1);
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &MultiPoly {
        &self.base
    }

    pub fn components(&self) -> &BTreeMap<Mask, Section> {
        &self.components
    }

    pub fn component(&self, mask: Mask) -> Option<&Section> {
        self.components.get(&mask)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Largest denominator exponent over all components (0 for the zero form).
    pub fn max_exponent(&self) -> u32 {
        self.components.values().map(|s| s.exponent).max().unwrap_or(0)
    }

    /// Adds `numerator / base^exponent` to the component of `mask`.
    pub fn add_component(&mut self, mask: Mask, numerator: MultiPoly, exponent: u32) {
        assert_eq!(mask.count_ones() as usize, self.degree, "component degree mismatch");
        if numerator.is_zero() {
            return;
        }
        match self.components.remove(&mask) {
            None => {
                self.components.insert(mask, Section { numerator, exponent });
            }
            Some(old) => {
                let e = old.exponent.max(exponent);
                let a = old.numerator.mul(&self.base.pow(e - old.exponent));
                let b = numerator.mul(&self.base.pow(e - exponent));
                let sum = a.add(&b);
                if !sum.is_zero() {
                    self.components.insert(mask, Section { numerator: sum, exponent: e });
                }
            }
        }
    }

    fn check_compatible(&self, o: &DiffForm) -> Result<()> {
        if self.nvars != o.nvars || self.base != o.base {
            return Err(Error::InvalidArgument("forms live over different variables or bases".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &DiffForm) -> Result<DiffForm> {
        self.check_compatible(o)?;
        if self.degree != o.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: o.degree,
            });
        }
        let mut out = self.clone();
        for (&m, s) in &o.components {
            out.add_component(m, s.numerator.clone(), s.exponent);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> DiffForm {
        let mut out = DiffForm::zero(self.nvars, self.degree, self.base.clone());
        if c.is_zero() {
            return out;
        }
        for (&m, s) in &self.components {
            out.components.insert(
                m,
                Section {
                    numerator: s.numerator.scale(c),
                    exponent: s.exponent,
                },
            );
        }
        out
    }

    /// Multiplies every component by `p / base^exponent`.
    pub fn mul_section(&self, p: &MultiPoly, exponent: u32) -> DiffForm {
        let mut out = DiffForm::zero(self.nvars, self.degree, self.base.clone());
        for (&m, s) in &self.components {
            out.add_component(m, s.numerator.mul(p), s.exponent + exponent);
        }
        out
    }

    pub fn wedge(&self, o: &DiffForm) -> Result<DiffForm> {
        self.check_compatible(o)?;
        let mut out = DiffForm::zero(self.nvars, self.degree + o.degree, self.base.clone());
        if self.degree + o.degree > self.nvars {
            return Ok(out);
        }
        for (&a, sa) in &self.components {
            for (&b, sb) in &o.components {
                if a & b != 0 {
                    continue;
                }
                let num = sa.numerator.mul(&sb.numerator).scale_int(merge_sign(a, b));
                out.add_component(a | b, num, sa.exponent + sb.exponent);
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn exterior_derivative(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.nvars, self.degree + 1, self.base.clone());
        for (&m, s) in &self.components {
            for j in 0..self.nvars {
                if m & (1 << j) != 0 {
                    continue;
                }
                // d(N/B^k) = (B ∂N − k N ∂B) / B^{k+1}
                let num = if s.exponent == 0 {
                    s.numerator.derivative(j)
                } else {
                    self.base
                        .mul(&s.numerator.derivative(j))
                        .sub(&s.numerator.mul(&self.base.derivative(j)).scale_int(s.exponent as i64))
                };
                let exp = if s.exponent == 0 { 0 } else { s.exponent + 1 };
                let sign = merge_sign(1 << j, m);
                out.add_component(m | (1 << j), num.scale_int(sign), exp);
            }
        }
        out.reduce()
    }

    /// Contraction with the Euler vector field `Σ x_e ∂/∂x_e`.
    pub fn euler_contraction(&self) -> DiffForm {
        if self.degree == 0 {
            return DiffForm::zero(self.nvars, 0, self.base.clone());
        }
        let mut out = DiffForm::zero(self.nvars, self.degree - 1, self.base.clone());
        for (&m, s) in &self.components {
            for (pos, i) in mask_indices(m).into_iter().enumerate() {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let num = s.numerator.mul(&MultiPoly::var(self.nvars, i)).scale_int(sign);
                out.add_component(m & !(1 << i), num, s.exponent);
            }
        }
        out.reduce()
    }

    /// Restricts to the coordinate hyperplane `x_e = 0` and removes the
    /// variable `e` (higher indices shift down by one).
    pub fn restrict_edge_zero(&self, e: usize) -> Result<DiffForm> {
        if e >= self.nvars {
            return Err(Error::EdgeOutOfRange {
                index: e,
                edges: self.nvars,
            });
        }
        let zero = BigRational::zero();
        let drop = |p: &MultiPoly| -> MultiPoly {
            let r = p.substitute_value(e, &zero);
            let mut out = MultiPoly::zero(self.nvars - 1);
            for (m, c) in r.terms() {
                let exps: Vec<u16> = (0..self.nvars).filter(|&i| i != e).map(|i| m.0[i]).collect();
                out.add_term(crate::polyring::Monomial(exps), c.clone());
            }
            out
        };
        let base = drop(&self.base);
        if base.is_zero() && self.components.values().any(|s| s.exponent > 0) {
            return Err(Error::Pole);
        }
        let mut out = DiffForm::zero(self.nvars - 1, self.degree, base);
        for (&m, s) in &self.components {
            if m & (1 << e) != 0 {
                continue;
            }
            let low = m & ((1 << e) - 1);
            let high = (m >> (e + 1)) << e;
            out.add_component(low | high, drop(&s.numerator), s.exponent);
        }
        Ok(out.reduce())
    }

    /// Cancels common factors of the base from each component.
    pub fn reduce(mut self) -> DiffForm {
        if self.base.as_constant().is_some() {
            return self;
        }
        for s in self.components.values_mut() {
            while s.exponent > 0 {
                match s.numerator.exact_divide(&self.base) {
                    Ok(Some(q)) => {
                        s.numerator = q;
                        s.exponent -= 1;
                    }
                    _ => break,
                }
            }
        }
        self
    }

    /// Evaluates every component at a point over a field.
    pub fn eval<F: Field>(&self, point: &[F]) -> Result<FormValues<F>> {
        if point.len() != self.nvars {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, form has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let b = self.base.eval(point).ok_or(Error::Pole)?;
        let binv = if self.components.values().any(|s| s.exponent > 0) {
            Some(b.inv().ok_or(Error::Pole)?)
        } else {
            None
        };
        let mut out = FormValues::zero(self.nvars, self.degree);
        for (&m, s) in &self.components {
            let mut v = s.numerator.eval(point).ok_or(Error::Pole)?;
            for _ in 0..s.exponent {
                v = v.mul(binv.as_ref().expect("inverse computed"));
            }
            out.add(m, v);
        }
        Ok(out)
    }

    /// Exact equality as rational functions (cross-multiplying exponents).
    pub fn equals(&self, o: &DiffForm) -> bool {
        if self.nvars != o.nvars || self.degree != o.degree {
            return false;
        }
        if self.base != o.base {
            return false;
        }
        let keys: std::collections::BTreeSet<Mask> = self.components.keys().chain(o.components.keys()).copied().collect();
        keys.into_iter().all(|m| match (self.components.get(&m), o.components.get(&m)) {
            (Some(a), Some(b)) => {
                let e = a.exponent.max(b.exponent);
                a.numerator.mul(&self.base.pow(e - a.exponent)) == b.numerator.mul(&self.base.pow(e - b.exponent))
            }
            _ => false,
        })
    }

    /// For a form of top degree minus one, returns `f` with `self = f · Ω`,
    /// or `None` if the form is not a multiple of `Ω`.
    pub fn ratio_to_omega(&self) -> Option<Section> {
        let n = self.nvars;
        if self.degree + 1 != n {
            return None;
        }
        if self.is_zero() {
            return Some(Section {
                numerator: MultiPoly::zero(n),
                exponent: 0,
            });
        }
        let full: Mask = (1 << n) - 1;
        let mut result: Option<Section> = None;
        for k in 0..n {
            let sign = if k % 2 == 0 { -1 } else { 1 };
            let denom = MultiPoly::var(n, k).scale_int(sign);
            let candidate = match self.components.get(&(full & !(1 << k))) {
                None => Section {
                    numerator: MultiPoly::zero(n),
                    exponent: 0,
                },
                Some(s) => match s.numerator.exact_divide(&denom) {
                    Ok(Some(q)) => Section {
                        numerator: q,
                        exponent: s.exponent,
                    },
                    _ => return None,
                },
            };
            match &result {
                None => result = Some(candidate),
                Some(r) => {
                    let e = r.exponent.max(candidate.exponent);
                    if r.numerator.mul(&self.base.pow(e - r.exponent))
                        != candidate.numerator.mul(&self.base.pow(e - candidate.exponent))
                    {
                        return None;
                    }
                }
            }
        }
        result
    }

    /// Canonical text: the base polynomial on the first line, then one line
    /// per component `[i j …]: (numerator) / B^m`, subsets in lexicographic
    /// order with 1-based indices.
    pub fn to_text(&self) -> String {
        let mut lines = vec![format!("base: {}", self.base.to_text())];
        let mut entries: Vec<(Vec<usize>, &Section)> =
            self.components.iter().map(|(&m, s)| (mask_indices(m), s)).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for (idx, s) in entries {
            let names: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            lines.push(format!("[{}]: ({}) / B^{}", names.join(" "), s.numerator.to_text(), s.exponent));
        }
        if self.components.is_empty() {
            lines.push("0".into());
        }
        lines.join("\n")
    }
}

impl Section {
    /// Canonical text `(numerator) / B^m`.
    pub fn to_text(&self) -> String {
        format!("({}) / B^{}", self.numerator.to_text(), self.exponent)
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.numerator.as_constant().map_or(false, |c| c.is_one())
    }
}
