//! Rational numbers with a machine-word fast path.
//!
//! Almost every coefficient met during elimination over the preset ring is a
//! small fraction, so a value is stored as a reduced `i64` fraction whenever
//! it fits and only spills to [`BigRational`] when it does not. The
//! representation is canonical, which makes the derived equality exact.

use std::fmt;
use std::num::NonZeroI64;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, with positive denominator.
    Small(i64, NonZeroI64),
    /// Only for values that do not fit `Small`.
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

impl Rat {
    #[inline]
    fn small(n: i64, d: i64) -> Self {
        Rat(Repr::Small(n, NonZeroI64::new(d).expect("nonzero denominator")))
    }

    #[inline]
    fn parts(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small(n, d) => Some((*n, d.get())),
            Repr::Big(_) => None,
        }
    }

    pub fn zero() -> Self {
        Rat::small(0, 1)
    }

    pub fn one() -> Self {
        Rat::small(1, 1)
    }

    pub fn integer(n: i64) -> Self {
        Rat::small(n, 1)
    }

    /// `num / den`, or `None` when `den == 0`.
    pub fn new(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(Self::from_i128(num as i128, den as i128))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let g = num.gcd(&den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::small(n, d),
            _ => Rat(Repr::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d))))),
        }
    }

    pub fn from_big(r: &BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::small(n, d),
            _ => Rat(Repr::Big(Box::new(r.clone()))),
        }
    }

    fn from_big_owned(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::small(n, d),
            _ => Rat(Repr::Big(Box::new(r))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(d.get())),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.parts(), Some((0, _)))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.parts(), Some((1, 1)))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => d.get() == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(d.get()),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    /// `1 / self`, or `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small(0, _) => None,
            Repr::Small(n, d) => Some(Self::from_i128(d.get() as i128, *n as i128)),
            Repr::Big(r) => Some(Self::from_big_owned(r.recip())),
        }
    }

    /// `self - a * b`
    pub fn sub_mul(&self, a: &Rat, b: &Rat) -> Rat {
        if let (Some((n, 1)), Some((an, 1)), Some((bn, 1))) = (self.parts(), a.parts(), b.parts()) {
            let v = n as i128 - (an as i128) * (bn as i128);
            if let Ok(v) = i64::try_from(v) {
                return Rat::small(v, 1);
            }
        }
        self - &(a * b)
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::integer(n)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat::from_big_owned(r)
    }
}

impl From<&Rat> for BigRational {
    fn from(r: &Rat) -> Self {
        r.to_big()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, d) if d.get() == 1 => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Rat {
    type Output = Rat;

    fn add(self, other: &Rat) -> Rat {
        if let (Some((a, b)), Some((c, d))) = (self.parts(), other.parts()) {
            if b == 1 && d == 1 {
                if let Some(s) = a.checked_add(c) {
                    return Rat::small(s, 1);
                }
            }
            let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
            if let (Some(x), Some(y), Some(den)) = (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                if let Some(num) = x.checked_add(y) {
                    return Rat::from_i128(num, den);
                }
            }
        }
        Rat::from_big_owned(self.to_big() + other.to_big())
    }
}

impl Sub for &Rat {
    type Output = Rat;

    fn sub(self, other: &Rat) -> Rat {
        self + &(-other)
    }
}

impl Mul for &Rat {
    type Output = Rat;

    fn mul(self, other: &Rat) -> Rat {
        if let (Some((a, b)), Some((c, d))) = (self.parts(), other.parts()) {
            if b == 1 && d == 1 {
                if let Some(p) = a.checked_mul(c) {
                    return Rat::small(p, 1);
                }
            }
            let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
            return Rat::from_i128(a * c, b * d);
        }
        Rat::from_big_owned(self.to_big() * other.to_big())
    }
}

impl Neg for &Rat {
    type Output = Rat;

    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat(Repr::Small(m, *d)),
                None => Rat::from_big_owned(-self.to_big()),
            },
            Repr::Big(r) => Rat::from_big_owned(-(**r).clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;

    fn neg(self) -> Rat {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rat {
            type Output = Rat;

            fn $m(self, other: Rat) -> Rat {
                (&self).$m(&other)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
