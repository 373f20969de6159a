//! Exact scalar arithmetic over prime fields GF(p) and the rationals.
//!
//! A [`Scalar`] always carries enough information to recover its field, so
//! mixing elements of different fields is detected at runtime. The `try_*`
//! methods report such mismatches as errors; the operator impls panic on
//! them, which is reserved for code paths where all operands provably come
//! from the same [`crate::Matrix`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// The field a matrix lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// GF(p) for a prime `p < 2^31`.
    Prime(u32),
    /// Arbitrary-precision rationals.
    Rationals,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// GF(p), checking that `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub const fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// The characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_integer(1)
    }

    pub fn minus_one(&self) -> Scalar {
        self.from_integer(-1)
    }

    /// Canonical image of an integer. In GF(p), `-1` maps to `p - 1`.
    pub fn from_integer(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Modular {
                    value: r.to_u32().expect("residue below modulus"),
                    modulus: p,
                }
            }
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
        }
    }

    /// The element `numer / denom`. Defined in every field as long as the
    /// denominator's image is nonzero.
    pub fn from_fraction(&self, numer: &BigInt, denom: &BigInt) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => {
                if denom.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(numer.clone(), denom.clone())))
            }
            FieldSpec::Prime(_) => self.from_bigint(numer).try_div(&self.from_bigint(denom)),
        }
    }

    pub fn is_char_two(&self) -> bool {
        self.characteristic() == 2
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "gf {p}"),
            FieldSpec::Rationals => f.write_str("q"),
        }
    }
}

/// Parses a field designator: `q` for the rationals, `gf <p>` (whitespace
/// optional) for a prime field.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |message: String| Error::Parse {
            line: 1,
            column: 1,
            message,
        };
        if s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let Some(rest) = s.strip_prefix("gf") else {
            return Err(bad(format!("unknown field designator `{s}`")));
        };
        let digits = rest.trim_start();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(format!("expected a prime after `gf`, got `{rest}`")));
        }
        let p: u64 = digits
            .parse()
            .map_err(|_| bad(format!("modulus `{digits}` is too large")))?;
        FieldSpec::prime(p).map_err(|e| bad(e.to_string()))
    }
}

/// An exact field element in canonical form: a residue in `[0, p)` or a
/// reduced fraction with positive denominator. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Modular { value: u32, modulus: u32 },
    Rational(BigRational),
}

fn mismatch(x: &Scalar, y: &Scalar) -> Error {
    Error::FieldMismatch {
        left: x.field().to_string(),
        right: y.field().to_string(),
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(x: u64, p: u64) -> u64 {
    debug_assert!(!x.is_multiple_of(p));
    pow_mod(x, p - 2, p)
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
            Scalar::Rational(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Modular { value, .. } => *value == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Modular { value, .. } => *value == 1,
            Scalar::Rational(q) => q.is_one(),
        }
    }

    pub fn is_minus_one(&self) -> bool {
        match self {
            Scalar::Modular { value, modulus } => *value == modulus - 1,
            Scalar::Rational(q) => q.is_integer() && *q.numer() == BigInt::from(-1),
        }
    }

    /// True for 0, 1 and -1.
    pub fn is_signed_unit_or_zero(&self) -> bool {
        self.is_zero() || self.is_one() || self.is_minus_one()
    }

    /// The integer `v` in `{-1, 0, 1}` this scalar equals, if any. In
    /// characteristic two, 1 reports as `1`.
    pub fn as_sign(&self) -> Option<i8> {
        if self.is_zero() {
            Some(0)
        } else if self.is_one() {
            Some(1)
        } else if self.is_minus_one() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Modular { value: x, modulus: p }, Scalar::Modular { value: y, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Modular {
                    value: ((*x as u64 + *y as u64) % *p as u64) as u32,
                    modulus: *p,
                })
            }
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x + y)),
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Modular { value: x, modulus: p }, Scalar::Modular { value: y, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Modular {
                    value: ((*x as u64 * *y as u64) % *p as u64) as u32,
                    modulus: *p,
                })
            }
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x * y)),
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(mismatch(self, other));
        }
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: inv_mod(*value as u64, *modulus as u64) as u32,
                modulus: *modulus,
            },
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Rational(q) => Scalar::Rational(-q),
        }
    }

    /// Integer representative closest to zero for GF(p) (e.g. `p - 1` as
    /// `-1`); numerator/denominator for rationals.
    pub(crate) fn balanced_string(&self) -> String {
        match self {
            Scalar::Modular { value, modulus } => {
                if *modulus > 2 && *value > modulus / 2 {
                    format!("-{}", modulus - value)
                } else {
                    value.to_string()
                }
            }
            Scalar::Rational(q) => format_rational(q),
        }
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Modular { value, .. } => write!(f, "{value}"),
            Scalar::Rational(q) => f.write_str(&format_rational(q)),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

/// Least common multiple of the denominators in `row`, used to clear
/// fractions before integer elimination.
pub(crate) fn denominator_lcm<'a>(row: impl Iterator<Item = &'a BigRational>) -> BigInt {
    row.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub(crate) fn abs_bits(n: &BigInt) -> u64 {
    n.abs().bits()
}
