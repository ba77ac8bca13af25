//! Sparse multivariate polynomials with exact rational coefficients.

use super::field::Field;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// An exponent vector with one slot per variable, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&o.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A polynomial in `nvars` variables over the rationals.
///
/// Terms are kept in a sorted map keyed by monomial (graded lexicographic
/// order), with no zero coefficients stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range {nvars}");
        Self::monomial(nvars, Monomial::var(nvars, i), BigRational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: BigRational) -> Self {
        debug_assert_eq!(m.0.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(coefficient, exponent vector)` pairs, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (BigRational, Vec<u16>)>) -> Self {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Degree in the single variable `x_i`.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// True if every term has total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn scale_int(&self, s: i64) -> MultiPoly {
        self.scale(&rat(s))
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut acc: std::collections::HashMap<Monomial, BigRational> =
            std::collections::HashMap::with_capacity(self.len() * o.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * rat(e as i64));
        }
        out
    }

    /// Exact division; returns `Ok(None)` when `den` does not divide `self`.
    ///
    /// Uses the single-divisor division algorithm in graded-lex order, which
    /// produces the exact quotient whenever one exists; the result is
    /// verified by multiplying back.
    pub fn exact_divide(&self, den: &MultiPoly) -> Result<Option<MultiPoly>> {
        assert_eq!(self.nvars, den.nvars);
        let (lm, lc) = match den.leading_term() {
            Some(t) => (t.0.clone(), t.1.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let q_m = match m.div(&lm) {
                Some(q) => q,
                None => return Ok(None),
            };
            let q_c = c / &lc;
            // rem -= q_term * den
            for (dm, dc) in &den.terms {
                rem.add_term(q_m.mul(dm), -(&q_c * dc));
            }
            quot.add_term(q_m, q_c);
        }
        debug_assert_eq!(&quot.mul(den), self);
        Ok(Some(quot))
    }

    /// Substitutes polynomials (in a possibly different variable set) for each variable.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = MultiPoly::zero(target);
        // cache powers per variable
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(p.nvars)])
            .collect();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Sets `x_i = value` (a rational constant), keeping the variable slot.
    pub fn substitute_value(&self, i: usize, value: &BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut m2 = m.clone();
            m2.0[i] = 0;
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value;
            }
            out.add_term(m2, coeff);
        }
        out
    }

    /// Evaluates at a point over any field; `None` if a coefficient cannot be embedded.
    pub fn eval<F: Field>(&self, point: &[F]) -> Option<F> {
        assert_eq!(point.len(), self.nvars);
        let mut powers: Vec<Vec<F>> = point.iter().map(|x| vec![F::one(), x.clone()]).collect();
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_rational(c)?;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&point[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        Some(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        self.eval(point).expect("rationals embed into rationals")
    }

    /// Re-embeds the polynomial into a space with `nvars` variables using `map[i]` as the new index of `x_i`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// True if every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Canonical text with variables named `x1, x2, ...` (1-based).
    pub fn to_text(&self) -> String {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        self.to_text_with(&names)
    }

    /// Canonical text: terms in decreasing graded-lex order, `c*x1^2*x3` style.
    pub fn to_text_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses the canonical text format produced by [`MultiPoly::to_text`].
    pub fn parse(nvars: usize, text: &str) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(nvars);
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(p);
        }
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let perr = |pos: usize, msg: &str| Error::Parse {
            line: 1,
            column: pos + 1,
            message: msg.to_string(),
        };
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            }
            let end = bytes[pos..]
                .iter()
                .position(|&b| b == b'+' || b == b'-')
                .map(|k| pos + k)
                .unwrap_or(bytes.len());
            let term = &s[pos..end];
            if term.is_empty() {
                return Err(perr(pos, "empty term"));
            }
            let mut coeff = rat(sign);
            let mut exps = vec![0u16; nvars];
            let mut col = pos;
            for factor in term.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, e) = match rest.split_once('^') {
                        Some((a, b)) => (a, b.parse::<u16>().map_err(|_| perr(col, "bad exponent"))?),
                        None => (rest, 1),
                    };
                    let i: usize = idx.parse().map_err(|_| perr(col, "bad variable index"))?;
                    if i == 0 || i > nvars {
                        return Err(perr(col, "variable index out of range"));
                    }
                    exps[i - 1] += e;
                } else {
                    let c: BigRational = factor.parse().map_err(|_| perr(col, "bad coefficient"))?;
                    coeff *= c;
                }
                col += factor.len() + 1;
            }
            p.add_term(Monomial(exps), coeff);
            pos = end;
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A polynomial compiled for fast repeated `f64` evaluation.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    nvars: usize,
    coeffs: Vec<f64>,
    /// Flattened (variable, exponent) factor lists, delimited by `offsets`.
    factors: Vec<(u16, u16)>,
    offsets: Vec<u32>,
}

impl FloatPoly {
    pub fn new(p: &MultiPoly) -> Self {
        let mut coeffs = Vec::new();
        let mut factors = Vec::new();
        let mut offsets = vec![0u32];
        for (m, c) in p.terms() {
            coeffs.push(super::field::rational_to_f64(c).unwrap_or(f64::NAN));
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    factors.push((i as u16, e));
                }
            }
            offsets.push(factors.len() as u32);
        }
        FloatPoly {
            nvars: p.nvars(),
            coeffs,
            factors,
            offsets,
        }
    }

    /// Evaluates with compensated (Kahan–Neumaier) summation of the terms.
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.nvars);
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (t, &c) in self.coeffs.iter().enumerate() {
            let mut v = c;
            for &(i, e) in &self.factors[self.offsets[t] as usize..self.offsets[t + 1] as usize] {
                let xi = x[i as usize];
                v *= if e == 1 { xi } else { xi.powi(e as i32) };
            }
            let s = sum + v;
            if sum.abs() >= v.abs() {
                comp += (sum - s) + v;
            } else {
                comp += (v - s) + sum;
            }
            sum = s;
        }
        sum + comp
    }
}
