//! High-precision reference constants: odd zeta values, the double zeta
//! value `ζ(3,5)`, powers of `π`, and the wheel moment series.
//!
//! Every value is an exact rational approximation whose truncation error is
//! far below `10⁻⁴⁰`. Single zetas are computed twice, by Euler–Maclaurin
//! summation and by the Borwein alternating-series algorithm; double zetas
//! reduce to a finite sum plus Euler–Maclaurin tails of Hurwitz zetas, and are
//! checked against the stuffle relation `ζ(a)ζ(b) = ζ(a,b) + ζ(b,a) + ζ(a+b)`.

use crate::error::{Error, Result};
use crate::polyring::field::rational_to_f64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::sync::OnceLock;

/// Cut-off for the explicit part of Euler–Maclaurin sums.
const EM_CUTOFF: u64 = 40;
/// Number of Bernoulli correction terms in Euler–Maclaurin sums.
const EM_TERMS: usize = 30;
/// Length of the Borwein alternating series (error `≈ 5.8⁻ⁿ`).
const BORWEIN_TERMS: u64 = 90;

/// A real number held as an exact rational approximation.
#[derive(Clone, Debug, PartialEq)]
pub struct HighPrecision(pub BigRational);

impl HighPrecision {
    /// The exact value of a finite double.
    pub fn from_f64(v: f64) -> Result<HighPrecision> {
        BigRational::from_float(v)
            .map(HighPrecision)
            .ok_or_else(|| Error::InvalidArgument(format!("{v} is not a finite number")))
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.0).unwrap_or(f64::NAN)
    }

    /// Decimal expansion rounded to `places` digits after the point.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigInt::from(10).pow(places as u32);
        let scaled = &self.0 * BigRational::from_integer(scale);
        let rounded = scaled.round().to_integer();
        let negative = rounded.is_negative();
        let digits = rounded.abs().to_string();
        let digits = format!("{digits:0>width$}", width = places + 1);
        let (int, frac) = digits.split_at(digits.len() - places);
        format!("{}{int}.{frac}", if negative { "-" } else { "" })
    }

    /// `|self − other| ≤ 10^{-places}`.
    pub fn agrees_with(&self, other: &HighPrecision, places: u32) -> bool {
        let diff = (&self.0 - &other.0).abs();
        diff * BigRational::from_integer(BigInt::from(10).pow(places)) <= BigRational::one()
    }

    pub fn scale(&self, c: i64) -> HighPrecision {
        HighPrecision(&self.0 * BigRational::from_integer(c.into()))
    }
}

impl fmt::Display for HighPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(30)))
    }
}

impl Serialize for HighPrecision {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal(40))
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn inv_pow(n: u64, p: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n).pow(p))
}

/// Bernoulli numbers `B_0 … B_n` (with `B_1 = −1/2`).
fn bernoulli(n: usize) -> &'static [BigRational] {
    static CACHE: OnceLock<Vec<BigRational>> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        let max = 2 * EM_TERMS + 2;
        let mut b: Vec<BigRational> = Vec::with_capacity(max + 1);
        // Σ_{k<m+1} C(m+1, k) B_k = 0 for m ≥ 1.
        for m in 0..=max {
            if m == 0 {
                b.push(BigRational::one());
                continue;
            }
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += bk * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    });
    &table[..=n]
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// `Σ_{n ≥ cutoff} n^{-p}` for `p ≥ 2` by Euler–Maclaurin summation.
fn power_tail(p: u32, cutoff: u64) -> BigRational {
    let b = bernoulli(2 * EM_TERMS);
    let mut acc = BigRational::new(BigInt::one(), BigInt::from(p - 1) * BigInt::from(cutoff).pow(p - 1));
    acc += inv_pow(cutoff, p) / int(2);
    // rising = p (p+1) … (p+2j−2)
    let mut rising = BigInt::from(p);
    for j in 1..=EM_TERMS {
        let term = &b[2 * j] / BigRational::from_integer(factorial(2 * j as u64))
            * BigRational::from_integer(rising.clone())
            * inv_pow(cutoff, p + 2 * j as u32 - 1);
        acc += term;
        rising = rising * BigInt::from(p + 2 * j as u32 - 1) * BigInt::from(p + 2 * j as u32);
    }
    acc
}

/// `ζ(s)` for `s ≥ 2` by Euler–Maclaurin summation.
pub fn zeta(s: u32) -> Result<HighPrecision> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("ζ({s}) diverges")));
    }
    let head: BigRational = (1..EM_CUTOFF).map(|n| inv_pow(n, s)).sum();
    Ok(HighPrecision(head + power_tail(s, EM_CUTOFF)))
}

/// `ζ(s)` for `s ≥ 2` by the Borwein acceleration of the alternating series
/// `η(s) = Σ (−1)^{k−1} k^{-s}`, independent of [`zeta`].
pub fn zeta_borwein(s: u32) -> Result<HighPrecision> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("ζ({s}) diverges")));
    }
    let n = BORWEIN_TERMS;
    // d_k = n Σ_{i ≤ k} (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut acc = BigRational::zero();
    for i in 0..=n {
        let num = factorial(n + i - 1) * BigInt::from(4).pow(i as u32) * BigInt::from(n);
        let den = factorial(n - i) * factorial(2 * i);
        acc += BigRational::new(num, den);
        d.push(acc.clone());
    }
    let dn = d[n as usize].clone();
    let mut sum = BigRational::zero();
    for k in 0..n {
        let term = (&d[k as usize] - &dn) * inv_pow(k + 1, s);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let eta = -sum / dn;
    let factor = BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(2).pow(s - 1));
    Ok(HighPrecision(eta / factor))
}

/// Asymptotic coefficients `(r, a_r)` of the Hurwitz tail
/// `ζ(a, n) = Σ_{k ≥ n} k^{-a} ~ Σ_r a_r n^{-r}`.
fn hurwitz_expansion(a: u32) -> Vec<(u32, BigRational)> {
    let b = bernoulli(2 * EM_TERMS);
    let mut out = vec![(a - 1, BigRational::new(BigInt::one(), BigInt::from(a - 1))), (a, BigRational::new(1.into(), 2.into()))];
    let mut rising = BigInt::from(a);
    for j in 1..=EM_TERMS {
        let coeff = &b[2 * j] / BigRational::from_integer(factorial(2 * j as u64)) * BigRational::from_integer(rising.clone());
        out.push((a + 2 * j as u32 - 1, coeff));
        rising = rising * BigInt::from(a + 2 * j as u32 - 1) * BigInt::from(a + 2 * j as u32);
    }
    out
}

/// The double zeta value `ζ(a, b) = Σ_{1 ≤ m < n} m^{-a} n^{-b}` (`b ≥ 2`).
pub fn double_zeta(a: u32, b: u32) -> Result<HighPrecision> {
    if a < 2 || b < 2 {
        return Err(Error::InvalidArgument(format!("ζ({a},{b}) is not handled (needs a, b ≥ 2)")));
    }
    let za = zeta(a)?.0;
    // Σ_{n < N} n^{-b} H^{(a)}_{n−1}
    let mut harmonic = BigRational::zero();
    let mut head = BigRational::zero();
    for n in 1..EM_CUTOFF {
        head += &harmonic * inv_pow(n, b);
        harmonic += inv_pow(n, a);
    }
    // Σ_{n ≥ N} n^{-b} (ζ(a) − ζ(a, n))
    let mut tail = &za * power_tail(b, EM_CUTOFF);
    for (r, coeff) in hurwitz_expansion(a) {
        tail -= coeff * power_tail(b + r, EM_CUTOFF);
    }
    Ok(HighPrecision(head + tail))
}

fn arctan_inverse(x: u64, terms: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 0..terms {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * k + 1) * BigInt::from(x).pow(2 * k + 1));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `π` by Machin's formula `π = 16 arctan(1/5) − 4 arctan(1/239)`.
pub fn pi() -> HighPrecision {
    HighPrecision(arctan_inverse(5, 40) * int(16) - arctan_inverse(239, 12) * int(4))
}

/// Reference values used as targets for the canonical integrals.
#[derive(Clone, Debug, Serialize)]
pub struct ReferenceConstants {
    pub zeta3: HighPrecision,
    pub zeta5: HighPrecision,
    pub zeta7: HighPrecision,
    pub zeta9: HighPrecision,
    pub zeta11: HighPrecision,
    /// `ζ(3,5) = Σ_{1 ≤ m < n} m^{-3} n^{-5}`.
    pub zeta3_5: HighPrecision,
    pub pi8: HighPrecision,
}

impl ReferenceConstants {
    /// The shared instance (computed once, a few milliseconds).
    pub fn get() -> &'static ReferenceConstants {
        static CACHE: OnceLock<ReferenceConstants> = OnceLock::new();
        CACHE.get_or_init(|| {
            let z = |s| zeta(s).expect("s ≥ 2");
            ReferenceConstants {
                zeta3: z(3),
                zeta5: z(5),
                zeta7: z(7),
                zeta9: z(9),
                zeta11: z(11),
                zeta3_5: double_zeta(3, 5).expect("valid arguments"),
                pi8: HighPrecision(pi().0.pow(8)),
            }
        })
    }

    /// `(9!/16)(360 ζ(3,5) + 690 ζ(3)ζ(5) − 29π⁸/315)`, the canonical integral
    /// of `ω⁵ ∧ ω⁹` on `K_6`.
    pub fn k6_integral(&self) -> HighPrecision {
        let v = int(360) * &self.zeta3_5.0 + int(690) * &self.zeta3.0 * &self.zeta5.0
            - int(29) * &self.pi8.0 / int(315);
        HighPrecision(v * int(362_880) / int(16))
    }
}

/// Checks the stuffle relation `ζ(a)ζ(b) = ζ(a,b) + ζ(b,a) + ζ(a+b)` to the
/// given number of decimal places.
pub fn stuffle_holds(a: u32, b: u32, places: u32) -> Result<bool> {
    let lhs = HighPrecision(zeta(a)?.0 * zeta(b)?.0);
    let rhs = HighPrecision(double_zeta(a, b)?.0 + double_zeta(b, a)?.0 + zeta(a + b)?.0);
    Ok(lhs.agrees_with(&rhs, places))
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// The wheel moment
/// `I^{(k)}_n = 2/(2k+2)! · C(4n, 2n) · Σ_{m ≥ 1} Π_{ℓ=1}^{k} (m² − ℓ²) / m^{4n−1}`,
/// the integral of `(Π_{spokes} x / Ψ)^k Ω/Ψ²` over the wheel with `2n+1`
/// spokes, expanded into single zeta values.
pub fn wheel_moment(n: u32, k: u32) -> Result<HighPrecision> {
    if n == 0 || 4 * n < 2 * k + 4 {
        return Err(Error::InvalidArgument(format!(
            "wheel moment series with n = {n}, k = {k} diverges (needs 4n − 2k − 1 ≥ 3)"
        )));
    }
    // Π_{ℓ ≤ k} (y − ℓ²) as coefficients in y = m².
    let mut poly = vec![BigInt::one()];
    for l in 1..=k as i64 {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * BigInt::from(l * l);
        }
        poly = next;
    }
    let mut series = BigRational::zero();
    for (j, c) in poly.iter().enumerate() {
        if !c.is_zero() {
            series += BigRational::from_integer(c.clone()) * zeta(4 * n - 1 - 2 * j as u32)?.0;
        }
    }
    let prefactor = BigRational::new(
        BigInt::from(2) * binomial(4 * n as u64, 2 * n as u64),
        factorial(2 * k as u64 + 2),
    );
    Ok(HighPrecision(prefactor * series))
}

/// Feynman residue `C(2n−2, n−1) · ζ(2n−3)` of the wheel with `n` spokes.
pub fn wheel_feynman_residue(n: u32) -> Result<HighPrecision> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("wheel with {n} spokes has no convergent residue")));
    }
    let c = binomial(2 * n as u64 - 2, n as u64 - 1);
    Ok(HighPrecision(zeta(2 * n - 3)?.0 * BigRational::from_integer(c)))
}

/// Rational multiple `c · ζ(s)` as a high-precision value.
pub fn zeta_multiple(c: i64, s: u32) -> Result<HighPrecision> {
    Ok(zeta(s)?.scale(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_residues() {
        let c = ReferenceConstants::get();
        assert!(wheel_feynman_residue(3).unwrap().agrees_with(&c.zeta3.scale(6), 40));
        assert!(wheel_feynman_residue(4).unwrap().agrees_with(&c.zeta5.scale(20), 40));
        assert!(wheel_feynman_residue(5).unwrap().agrees_with(&c.zeta7.scale(70), 40));
        assert!(wheel_feynman_residue(2).is_err());
    }

    fn parse(text: &str) -> HighPrecision {
        let (int_part, frac) = text.split_once('.').unwrap();
        let den = BigInt::from(10).pow(frac.len() as u32);
        let num: BigInt = format!("{int_part}{frac}").parse().unwrap();
        HighPrecision(BigRational::new(num, den))
    }

    // Independent 50-digit values (mpmath).
    const ZETA3: &str = "1.20205690315959428539973816151144999076498629234";
    const ZETA5: &str = "1.03692775514336992633136548645703416805708091950";
    const ZETA7: &str = "1.00834927738192282683979754984979675959986356056";
    const ZETA3_5: &str = "0.03770767298484754401130478229365991482260131941";
    const PI8: &str = "9488.53101607057400712857550390676579669717947";

    #[test]
    fn single_zetas_match_independent_values_and_each_other() {
        assert!(zeta(3).unwrap().agrees_with(&parse(ZETA3), 45));
        assert!(zeta(5).unwrap().agrees_with(&parse(ZETA5), 45));
        assert!(zeta(7).unwrap().agrees_with(&parse(ZETA7), 45));
        for s in [3, 5, 7, 9, 11, 8] {
            assert!(zeta(s).unwrap().agrees_with(&zeta_borwein(s).unwrap(), 45), "s = {s}");
        }
    }

    #[test]
    fn even_zeta_matches_pi_power() {
        // ζ(8) = π⁸ / 9450
        let z8 = HighPrecision(pi().0.pow(8) / int(9450));
        assert!(zeta(8).unwrap().agrees_with(&z8, 45));
        assert!(HighPrecision(pi().0.pow(8)).agrees_with(&parse(PI8), 40));
    }

    #[test]
    fn double_zeta_convention_and_stuffle() {
        assert!(double_zeta(3, 5).unwrap().agrees_with(&parse(ZETA3_5), 45));
        assert!(stuffle_holds(3, 5, 45).unwrap());
        assert!(stuffle_holds(2, 3, 40).unwrap());
        // Euler: ζ(1,2) would diverge; ζ(2,1) is excluded; ζ(2,2) = (ζ(2)² − ζ(4))/2.
        let z22 = HighPrecision((zeta(2).unwrap().0.pow(2) - zeta(4).unwrap().0) / int(2));
        assert!(double_zeta(2, 2).unwrap().agrees_with(&z22, 40));
    }

    #[test]
    fn k6_target() {
        let k6 = ReferenceConstants::get().k6_integral();
        assert_eq!(format!("{k6:.12}"), "1708.190112561243");
    }

    #[test]
    fn wheel_moments_are_feynman_residues_and_wheel_integrals() {
        let z = |s| zeta(s).unwrap();
        assert!(wheel_moment(1, 0).unwrap().agrees_with(&z(3).scale(6), 45));
        assert!(wheel_moment(2, 0).unwrap().agrees_with(&z(7).scale(70), 45));
        let w5 = HighPrecision((wheel_moment(2, 0).unwrap().0 + wheel_moment(2, 1).unwrap().0 * int(12)) * int(18));
        assert!(w5.agrees_with(&z(5).scale(1260), 40));
        let w7 = HighPrecision(
            (wheel_moment(3, 0).unwrap().0 + wheel_moment(3, 1).unwrap().0 * int(60) + wheel_moment(3, 2).unwrap().0 * int(360))
                * int(26),
        );
        assert!(w7.agrees_with(&z(7).scale(24024), 40));
        assert!(wheel_moment(1, 1).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(HighPrecision(BigRational::new((-1).into(), 3.into())).to_decimal(4), "-0.3333");
        assert_eq!(HighPrecision(int(2)).to_decimal(2), "2.00");
    }
}
