//! Exact scalar fields.
//!
//! Every computation in the crate is generic over a [`Field`], a small
//! context object that owns the arithmetic for its elements. Two fields are
//! provided: [`Rationals`] (arbitrary precision, the default) and
//! [`PrimeField`] (word-sized residues, a fast path for range-limited checks).
//!
//! [`FieldConfig`] is the user-facing description of which field to use and
//! which parameter `alpha` to plug into the ring presentation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

mod rat;
pub use rat::Rat;

/// Arithmetic of an exact field.
///
/// Elements are plain values; the field object carries whatever context the
/// arithmetic needs (the modulus, for prime fields).
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type El: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_i64(&self, n: i64) -> Self::El;
    /// Image of a rational number; fails when the denominator is not invertible.
    fn from_rational(&self, r: &BigRational) -> Result<Self::El>;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Result<Self::El>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn format(&self, a: &Self::El) -> String;

    fn div(&self, a: &Self::El, b: &Self::El) -> Result<Self::El> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    /// `acc -= a * b`
    fn sub_mul_assign(&self, acc: &mut Self::El, a: &Self::El, b: &Self::El) {
        *acc = self.sub(acc, &self.mul(a, b));
    }

    /// `a^e` for any integer exponent; negative exponents need `a != 0`.
    fn pow(&self, a: &Self::El, e: i64) -> Result<Self::El> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            n >>= 1;
        }
        Ok(acc)
    }
}

/// The rational numbers, exact at any size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type El = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn from_i64(&self, n: i64) -> Rat {
        Rat::integer(n)
    }
    fn from_rational(&self, r: &BigRational) -> Result<Rat> {
        Ok(Rat::from_big(r))
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rat) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Result<Rat> {
        a.recip().ok_or(Error::DivisionByZero)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format(&self, a: &Rat) -> String {
        a.to_string()
    }
    fn sub_mul_assign(&self, acc: &mut Rat, a: &Rat, b: &Rat) {
        *acc = acc.sub_mul(a, b);
    }
}

/// Integers modulo a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::Config(format!("modulus {p} must be below 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::Config(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Multiplicative order of a nonzero residue.
    pub fn order(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        let n = self.p - 1;
        let mut ord = n;
        for q in prime_factors(n) {
            while ord.is_multiple_of(q) && self.pow(&a, (ord / q) as i64).ok()? == 1 {
                ord /= q;
            }
        }
        Some(ord)
    }
}

impl Field for PrimeField {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, r: &BigRational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let num = r.numer().mod_floor(&p).to_u64().unwrap_or(0);
        let den = r.denom().mod_floor(&p).to_u64().unwrap_or(0);
        if den == 0 {
            return Err(Error::Config(format!("{r} has no image modulo {}", self.p)));
        }
        self.div(&num, &den)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on signed integers
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        Ok(t.rem_euclid(self.p as i64) as u64)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn sub_mul_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        let prod = a * b % self.p;
        *acc = self.sub(acc, &prod);
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Parse a rational literal such as `2`, `-7` or `3/2`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Which field the computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "p")]
pub enum FieldMode {
    Rationals,
    Prime(u64),
}

impl FromStr for FieldMode {
    type Err = Error;

    /// `q` or `fp:<p>`
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" => Ok(FieldMode::Rationals),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Config(format!("unknown field {other:?}, expected q or fp:<p>")))?;
                Ok(FieldMode::Prime(p))
            }
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Rationals => write!(f, "q"),
            FieldMode::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// Field choice plus the distinguished parameter `alpha`.
///
/// `alpha` must have infinite multiplicative order. Over a prime field that
/// is impossible, so the prime mode instead requires the order of `alpha` to
/// exceed `2 * range_bound + 4`: every power `alpha^e` with
/// `|e| <= range_bound + 2` is then distinct from the others and from 1 (for
/// `e != 0`), which is all that computations within the range ever use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    pub mode: FieldMode,
    pub alpha: BigRational,
    pub range_bound: u32,
}

impl FieldConfig {
    pub const DEFAULT_RANGE_BOUND: u32 = 16;

    pub fn new(mode: FieldMode, alpha: BigRational, range_bound: u32) -> Result<Self> {
        let cfg = FieldConfig { mode, alpha, range_bound };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Rationals with `alpha = 2`.
    pub fn rationals() -> Self {
        FieldConfig {
            mode: FieldMode::Rationals,
            alpha: BigRational::from_integer(2.into()),
            range_bound: Self::DEFAULT_RANGE_BOUND,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.alpha;
        if a.is_zero() || a.is_one() {
            return Err(Error::Config(format!("alpha = {a} must differ from 0 and 1")));
        }
        match self.mode {
            FieldMode::Rationals => {
                if a.abs().is_one() {
                    return Err(Error::Config(format!("alpha = {a} has finite multiplicative order")));
                }
            }
            FieldMode::Prime(p) => {
                let fp = PrimeField::new(p)?;
                let res = fp.from_rational(a)?;
                let ord = fp.order(res).ok_or_else(|| Error::Config(format!("alpha = {a} vanishes modulo {p}")))?;
                let needed = 2 * self.range_bound as u64 + 4;
                if ord <= needed {
                    return Err(Error::Config(format!(
                        "alpha = {a} has order {ord} modulo {p}; need more than {needed}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Largest `|e|` for which `alpha^e` may be used.
    pub fn max_alpha_exponent(&self) -> Option<u64> {
        match self.mode {
            FieldMode::Rationals => None,
            FieldMode::Prime(_) => Some(self.range_bound as u64 + 2),
        }
    }

    pub fn check_alpha_exponent(&self, e: i64) -> Result<()> {
        match self.max_alpha_exponent() {
            Some(max) if e.unsigned_abs() > max => Err(Error::Config(format!(
                "alpha^{e} is outside the range guaranteed by range_bound = {}",
                self.range_bound
            ))),
            _ => Ok(()),
        }
    }
}

impl Default for FieldConfig {
    fn default() -> Self {
        Self::rationals()
    }
}

/// A field together with the image of `alpha` in it.
#[derive(Clone, Debug)]
pub struct Scalars<F: Field> {
    pub field: F,
    pub alpha: F::El,
    pub config: FieldConfig,
}

impl<F: Field> Scalars<F> {
    pub fn new(field: F, config: FieldConfig) -> Result<Self> {
        config.validate()?;
        if config.mode == FieldMode::Rationals && field.characteristic() != 0 {
            return Err(Error::Config("configuration asks for the rationals".into()));
        }
        if let FieldMode::Prime(p) = config.mode {
            if field.characteristic() != p {
                return Err(Error::Config(format!("configuration asks for fp:{p}")));
            }
        }
        let alpha = field.from_rational(&config.alpha)?;
        Ok(Scalars { field, alpha, config })
    }

    /// `alpha^(1 - i)`, the coefficient of `x` in the differential `d_i`.
    pub fn alpha_power(&self, i: i64) -> Result<F::El> {
        self.alpha_pow(1 - i)
    }

    pub fn alpha_pow(&self, e: i64) -> Result<F::El> {
        self.config.check_alpha_exponent(e)?;
        self.field.pow(&self.alpha, e)
    }
}

impl Scalars<Rationals> {
    pub fn rationals(alpha: BigRational) -> Result<Self> {
        Scalars::new(Rationals, FieldConfig::new(FieldMode::Rationals, alpha, FieldConfig::DEFAULT_RANGE_BOUND)?)
    }
}

impl Scalars<PrimeField> {
    pub fn prime(p: u64, alpha: BigRational, range_bound: u32) -> Result<Self> {
        Scalars::new(PrimeField::new(p)?, FieldConfig::new(FieldMode::Prime(p), alpha, range_bound)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn r(s: &str) -> Rat {
        Rat::from_big(&q(s))
    }

    #[test]
    fn rational_arithmetic() {
        let f = Rationals;
        assert_eq!(f.add(&r("1/2"), &r("1/3")), r("5/6"));
        assert_eq!(f.mul(&r("2"), &r("0")), r("0"));
        assert_eq!(f.div(&r("3/4"), &r("3/4")).unwrap(), r("1"));
        assert!(matches!(f.div(&r("1"), &r("0")), Err(Error::DivisionByZero)));
        assert_eq!(q("4/6"), q("2/3"));
        assert_eq!(*q("6/-4").denom(), BigInt::from(2));
    }

    #[test]
    fn prime_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3).unwrap(), 5);
        assert_eq!(f.from_rational(&q("1/2")).unwrap(), 4);
        assert!(f.from_rational(&q("1/7")).is_err());
        assert_eq!(f.order(2), Some(3));
        assert!(PrimeField::new(8).is_err());
    }

    #[test]
    fn alpha_powers() {
        let s = Scalars::rationals(q("2")).unwrap();
        assert_eq!(s.alpha_power(1).unwrap(), r("1"));
        assert_eq!(s.alpha_power(0).unwrap(), r("2"));
        assert_eq!(s.alpha_power(-2).unwrap(), r("8"));
        assert_eq!(s.alpha_power(3).unwrap(), r("1/4"));
        for i in -10..10 {
            let prod = s.field.mul(&s.alpha_power(i).unwrap(), &s.alpha_power(-i).unwrap());
            assert_eq!(prod, r("4"));
        }
    }

    #[test]
    fn config_rejects_finite_order() {
        for a in ["0", "1", "-1"] {
            assert!(FieldConfig::new(FieldMode::Rationals, q(a), 8).is_err(), "{a}");
        }
        assert!(FieldConfig::new(FieldMode::Rationals, q("3/2"), 8).is_ok());
        // 2 has order 3 modulo 7
        assert!(FieldConfig::new(FieldMode::Prime(7), q("2"), 0).is_err());
    }

    #[test]
    fn prime_mode_alpha_range() {
        let s = Scalars::prime(32003, q("2"), 8).unwrap();
        assert!(s.alpha_power(-9).is_ok());
        assert!(s.alpha_power(-20).is_err());
        let powers: Vec<u64> = (-8..=8).map(|i| s.alpha_power(i).unwrap()).collect();
        let mut sorted = powers.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), powers.len());
    }

    #[test]
    fn field_mode_parsing() {
        assert_eq!("q".parse::<FieldMode>().unwrap(), FieldMode::Rationals);
        assert_eq!("fp:32003".parse::<FieldMode>().unwrap(), FieldMode::Prime(32003));
        assert!("fp:x".parse::<FieldMode>().is_err());
    }

    fn small_rational() -> impl Strategy<Value = Rat> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Rat::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            let f = Rationals;
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            if !a.is_zero() {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }

        #[test]
        fn prime_field_axioms(a in 0u64..32003, b in 0u64..32003, c in 0u64..32003) {
            let f = PrimeField::new(32003).unwrap();
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }
}
