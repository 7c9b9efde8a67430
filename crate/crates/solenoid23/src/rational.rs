//! Exact rational arithmetic with the 2-adic and 3-adic structure used
//! everywhere else: valuations, fractional parts, digits, and floor/frac
//! on the real line.
//!
//! Every quantity in the library is a [`Rational`]; there is no floating
//! point in the kernel. Values are kept in lowest terms with a positive
//! denominator, and serialize as the string `"n/d"` (`"0/1"` for zero).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The three places of the ambient group: the real line and the 2-adic
/// and 3-adic fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Place {
    Real,
    TwoAdic,
    ThreeAdic,
}

impl Place {
    pub const ALL: [Place; 3] = [Place::Real, Place::TwoAdic, Place::ThreeAdic];
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::TwoAdic => write!(f, "two_adic"),
            Place::ThreeAdic => write!(f, "three_adic"),
        }
    }
}

/// The two finite primes in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prime {
    Two,
    Three,
}

impl Prime {
    pub const fn value(self) -> u32 {
        match self {
            Prime::Two => 2,
            Prime::Three => 3,
        }
    }

    pub fn big(self) -> BigUint {
        BigUint::from(self.value())
    }

    /// p^exp as a big unsigned integer.
    pub fn power(self, exp: u32) -> BigUint {
        self.big().pow(exp)
    }

    pub const fn place(self) -> Place {
        match self {
            Prime::Two => Place::TwoAdic,
            Prime::Three => Place::ThreeAdic,
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// An exact rational number in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational(BigRational);

/// Comparisons cross-multiply in i128 whenever both fractions fit in
/// machine words (overflow-free since |num|, den < 2^63), falling back
/// to big-integer arithmetic otherwise. Interval bookkeeping leans hard
/// on ordering, so this path matters.
impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (
            self.numer().to_i64(),
            self.denom().to_i64(),
            other.numer().to_i64(),
            other.denom().to_i64(),
        ) {
            (Some(a), Some(b), Some(c), Some(d)) => {
                (a as i128 * d as i128).cmp(&(c as i128 * b as i128))
            }
            _ => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "denominator must be nonzero");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Rational> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_integer(n: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Rational {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "cannot invert zero");
        Rational(self.0.recip())
    }

    /// 2^a 3^b as an exact rational, for any signs of a and b.
    pub fn two_three_power(a: i64, b: i64) -> Rational {
        let two = BigInt::from(2).pow(a.unsigned_abs() as u32);
        let three = BigInt::from(3).pow(b.unsigned_abs() as u32);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        if a >= 0 {
            num *= &two;
        } else {
            den *= &two;
        }
        if b >= 0 {
            num *= &three;
        } else {
            den *= &three;
        }
        Rational(BigRational::new(num, den))
    }

    /// The p-adic valuation: the exponent k with `self = p^k * u` where
    /// both parts of `u` are coprime to p. Zero has no valuation (the
    /// distinguished "infinite" case), reported as `None`.
    pub fn val_p(&self, p: Prime) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let pv = BigInt::from(p.value());
        // The fraction is reduced, so p divides at most one of the parts.
        if self.numer().is_multiple_of(&pv) {
            Some(int_val(self.numer(), p) as i64)
        } else if self.denom().is_multiple_of(&pv) {
            Some(-(int_val(self.denom(), p) as i64))
        } else {
            Some(0)
        }
    }

    /// The p-adic norm p^(-val); zero maps to zero.
    pub fn norm_p(&self, p: Prime) -> Rational {
        match self.val_p(p) {
            None => Rational::zero(),
            Some(v) => {
                let pw = BigInt::from(p.value()).pow(v.unsigned_abs() as u32);
                if v >= 0 {
                    Rational(BigRational::new(BigInt::one(), pw))
                } else {
                    Rational(BigRational::from_integer(pw))
                }
            }
        }
    }

    /// The norm at an arbitrary place (real absolute value or p-adic norm).
    pub fn norm_at(&self, place: Place) -> Rational {
        match place {
            Place::Real => self.abs(),
            Place::TwoAdic => self.norm_p(Prime::Two),
            Place::ThreeAdic => self.norm_p(Prime::Three),
        }
    }

    pub fn is_p_integral(&self, p: Prime) -> bool {
        self.val_p(p).map_or(true, |v| v >= 0)
    }

    /// The p-adic fractional part: the unique `t / p^j` in `[0, 1)` with
    /// `j = max(0, -val_p(self))` such that `self - t/p^j` is p-integral.
    /// Defined for every rational, including ones whose denominator mixes
    /// other primes.
    pub fn frac_p(&self, p: Prime) -> Rational {
        let j = match self.val_p(p) {
            Some(v) if v < 0 => v.unsigned_abs() as u32,
            _ => return Rational::zero(),
        };
        let pj = BigInt::from(p.power(j));
        // self * p^j is a p-adic unit over the remaining denominator d,
        // which is coprime to p; reduce num * d^{-1} modulo p^j.
        let scaled = Rational(&self.0 * BigRational::from_integer(pj.clone()));
        let t = scaled
            .residue_mod(p, j)
            .expect("scaled value is p-integral by construction");
        Rational(BigRational::new(BigInt::from(t), pj))
    }

    /// The canonical residue of a p-integral rational modulo p^exp,
    /// computed through the modular inverse of the denominator.
    pub fn residue_mod(&self, p: Prime, exp: u32) -> Result<BigUint> {
        if !self.is_p_integral(p) {
            return Err(Error::NotPIntegral {
                value: self.to_string(),
                p: p.value(),
            });
        }
        if exp == 0 {
            return Ok(BigUint::zero());
        }
        let modulus = BigInt::from(p.power(exp));
        let inv = mod_inverse(self.denom(), &modulus);
        let r = (self.numer() * inv).mod_floor(&modulus);
        Ok(r.to_biguint().expect("mod_floor of positive modulus"))
    }

    /// The n-th p-adic digit (in {0, ..., p-1}) of a p-integral rational.
    pub fn digit_p(&self, n: u32, p: Prime) -> Result<u8> {
        let r = self.residue_mod(p, n + 1)?;
        let digit = (r / p.power(n)) % p.big();
        Ok(digit.to_u32_digits().first().copied().unwrap_or(0) as u8)
    }

    /// Split into integer and fractional part, with floor toward minus
    /// infinity, so the fractional part is always in `[0, 1)`.
    pub fn floor_frac(&self) -> (BigInt, Rational) {
        let fl = self.numer().div_floor(self.denom());
        let frac = Rational(&self.0 - BigRational::from_integer(fl.clone()));
        (fl, frac)
    }

    pub fn floor(&self) -> BigInt {
        self.floor_frac().0
    }

    pub fn frac(&self) -> Rational {
        self.floor_frac().1
    }

    /// Compare `hi - lo` against `reference` without materializing the
    /// difference; machine-word arithmetic when all parts are small.
    pub fn diff_cmp(hi: &Rational, lo: &Rational, reference: &Rational) -> Ordering {
        const LIM: i64 = 1 << 31;
        let small = |r: &Rational| -> Option<(i64, i64)> {
            let n = r.numer().to_i64()?;
            let d = r.denom().to_i64()?;
            (n.abs() < LIM && d < LIM).then_some((n, d))
        };
        match (small(hi), small(lo), small(reference)) {
            (Some((hn, hd)), Some((ln, ld)), Some((rn, rd))) => {
                let diff = hn as i128 * ld as i128 - ln as i128 * hd as i128;
                (diff * rd as i128).cmp(&(rn as i128 * hd as i128 * ld as i128))
            }
            _ => (hi - lo).cmp(reference),
        }
    }

    /// True when the denominator is of the form 2^i 3^j, i.e. the value
    /// lies in the ring of 6-smooth-denominator rationals.
    pub fn has_six_smooth_denom(&self) -> bool {
        let mut d = self.denom().magnitude().clone();
        for p in [2u32, 3] {
            let pv = BigUint::from(p);
            while (&d % &pv).is_zero() {
                d /= &pv;
            }
        }
        d.is_one()
    }
}

/// Exact exponent of p in a nonzero integer.
fn int_val(n: &BigInt, p: Prime) -> u32 {
    debug_assert!(!n.is_zero());
    let mut m = n.magnitude().clone();
    let pv = p.big();
    let mut v = 0u32;
    loop {
        let (q, r) = m.div_rem(&pv);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Inverse of `a` modulo `m` for gcd(a, m) = 1.
fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    debug_assert!(g.gcd.is_one(), "inverse requires coprime inputs");
    g.x.mod_floor(m)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        let s = s.trim();
        let parse_err = || Error::ParseRational { input: s.to_string() };
        match s.split_once('/') {
            Some((n, d)) => {
                let num = BigInt::from_str(n.trim()).map_err(|_| parse_err())?;
                let den = BigInt::from_str(d.trim()).map_err(|_| parse_err())?;
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Rational(BigRational::new(num, den)))
            }
            None => {
                let num = BigInt::from_str(s).map_err(|_| parse_err())?;
                Ok(Rational(BigRational::from_integer(num)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Ordering against integer literals comes up constantly in interval code.
impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        *self == Rational::from_integer(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.partial_cmp(&Rational::from_integer(*other))
    }
}
