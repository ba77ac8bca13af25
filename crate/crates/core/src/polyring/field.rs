//! Scalar rings and fields used for exact and modular evaluation.
//!
//! Symbolic work happens over [`BigRational`]; heavy identity checks evaluate
//! the same expressions at points over a word-sized prime field [`ModP`], and
//! numerical integration uses plain `f64`. All three share the [`Ring`] /
//! [`Field`] interface so generic algorithms (determinants, the trace
//! recursion of the forms module) are written once.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// A commutative ring with unit.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `self += a * b`, overridable for speed.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
}

/// A field: a ring with inverses and an embedding of the rationals.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Image of a rational number; `None` if its denominator is not invertible.
    fn from_rational(v: &BigRational) -> Option<Self>;

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(v: &BigRational) -> Option<Self> {
        Some(v.clone())
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Field for f64 {
    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn from_rational(v: &BigRational) -> Option<Self> {
        rational_to_f64(v)
    }
}

/// Converts a big rational to the nearest representable double (approximately).
pub fn rational_to_f64(v: &BigRational) -> Option<f64> {
    let n = v.numer();
    let d = v.denom();
    if let (Some(a), Some(b)) = (n.to_f64(), d.to_f64()) {
        if a.is_finite() && b.is_finite() && b != 0.0 {
            return Some(a / b);
        }
    }
    // Scale both to avoid overflow: keep the top 64 bits of each.
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let a = (n.abs() >> shift_n as usize).to_f64()?;
    let b = (d >> shift_d as usize).to_f64()?;
    let mag = a / b * 2f64.powi((shift_n - shift_d) as i32);
    Some(if n.is_negative() { -mag } else { mag })
}

/// The Mersenne prime 2^61 − 1, the default modulus for point certification.
pub const P61: u64 = (1u64 << 61) - 1;
/// A second, unrelated 60-bit prime used to double-check modular ranks.
pub const P_ALT: u64 = 1_000_000_000_000_000_003;

/// Integers modulo the prime `P` (which must be below 2^63).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ModP<const P: u64>(pub u64);

/// Arithmetic modulo 2^61 − 1.
pub type Fp = ModP<P61>;

impl<const P: u64> ModP<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        ModP(v % P)
    }

    #[inline]
    fn reduce128(x: u128) -> u64 {
        if P == P61 {
            let lo = (x as u64) & P61;
            let hi = (x >> 61) as u64;
            // hi < 2^67 / 2^61 ... fits; fold twice to be safe.
            let s = lo + (hi & P61) + (hi >> 61);
            let s = (s & P61) + (s >> 61);
            if s >= P61 {
                s - P61
            } else {
                s
            }
        } else {
            (x % P as u128) as u64
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = ModP(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = Ring::mul(&acc, &base);
            }
            base = Ring::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(P);
        let r = v.mod_floor(&m);
        ModP(r.to_u64().expect("residue fits in u64"))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Ring for ModP<P> {
    fn zero() -> Self {
        ModP(0)
    }
    fn one() -> Self {
        ModP(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        // P < 2^63, so the modulus is representable as i64.
        ModP(v.rem_euclid(P as i64) as u64)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        ModP(if s >= P { s - P } else { s })
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        ModP(if self.0 >= o.0 {
            self.0 - o.0
        } else {
            self.0 + P - o.0
        })
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        ModP(Self::reduce128(self.0 as u128 * o.0 as u128))
    }
    #[inline]
    fn neg(&self) -> Self {
        ModP(if self.0 == 0 { 0 } else { P - self.0 })
    }
    #[inline]
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = Ring::add(self, &Ring::mul(a, b));
    }
}

impl<const P: u64> Field for ModP<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn from_rational(v: &BigRational) -> Option<Self> {
        let n = Self::from_bigint(v.numer());
        let d = Self::from_bigint(v.denom());
        d.inv().map(|i| Ring::mul(&n, &i))
    }
}

/// Reconstructs a rational `a/b` with `|a|, b ≤ sqrt(P/2)` from its residue,
/// using the extended Euclidean algorithm. Returns `None` if no such fraction exists.
pub fn rational_reconstruct<const P: u64>(x: ModP<P>) -> Option<BigRational> {
    let p = BigInt::from(P);
    let bound = num_integer::Roots::sqrt(&(&p / 2u32));
    let (mut r0, mut r1) = (p.clone(), BigInt::from(x.0));
    let (mut t0, mut t1) = (BigInt::from(0), BigInt::from(1));
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if Zero::is_zero(&t1) || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mersenne_reduction_matches_generic_remainder() {
        let a = Fp::new(P61 - 3);
        let b = Fp::new(P61 - 12345);
        let expect = ((a.0 as u128 * b.0 as u128) % P61 as u128) as u64;
        assert_eq!(Ring::mul(&a, &b).0, expect);
    }

    #[test]
    fn inverse_round_trips() {
        for v in [1u64, 2, 3, 12345, P61 - 1] {
            let x = Fp::new(v);
            assert_eq!(Ring::mul(&x, &x.inv().unwrap()), Fp::one());
        }
        let y = ModP::<P_ALT>::new(987654321);
        assert_eq!(Ring::mul(&y, &y.inv().unwrap()), ModP::<P_ALT>::one());
    }

    #[test]
    fn negative_integers_embed_correctly() {
        assert_eq!(Fp::from_i64(-1), Fp::new(P61 - 1));
        assert_eq!(ModP::<P_ALT>::from_i64(-2), ModP::<P_ALT>::new(P_ALT - 2));
    }

    #[test]
    fn rational_reconstruction_recovers_small_fractions() {
        let r = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let x = Fp::from_rational(&r).unwrap();
        assert_eq!(rational_reconstruct(x), Some(r));
    }

    #[test]
    fn big_rational_to_f64_handles_huge_values() {
        let big = BigInt::from(10).pow(400u32);
        let r = BigRational::new(big.clone() * 3, big);
        assert!((rational_to_f64(&r).unwrap() - 3.0).abs() < 1e-12);
    }
}
