//! Exact ordered-field arithmetic over ℚ and the quadratic extension ℚ(√5).
//!
//! Every decision procedure in this crate reduces to strict sign tests on
//! field elements, so all arithmetic is exact: rationals with
//! arbitrary-precision integers, and `a + b√5` pairs for the
//! non-crystallographic types (where the golden ratio τ = (1+√5)/2 lives).
//! Floating point never enters a decision path.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact sign of a scalar.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact element of an ordered field, with decidable sign and a canonical
/// string form.
///
/// The two implementations are [`BigRational`] (ℚ) and [`QuadScalar`]
/// (ℚ(√5)). All root-system and convexity code is generic over this trait,
/// so the crystallographic and H-type paths share one implementation.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + PartialOrd
    + Ord
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn sign(&self) -> Sign;

    fn from_int(n: i64) -> Self;

    /// Exact division, refusing a zero divisor.
    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError>;

    /// True iff the value lies in ℤ (for ℚ(√5): in ℤ with no √5 part).
    fn is_integer(&self) -> bool;

    /// Parse the canonical serialization, tolerating surrounding whitespace.
    fn parse(text: &str) -> Result<Self, ScalarError>;

    /// Canonical serialization with no whitespace.
    fn render(&self) -> String;

    fn is_positive(&self) -> bool {
        self.sign() == Sign::Pos
    }

    fn is_negative(&self) -> bool {
        self.sign() == Sign::Neg
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for BigRational {
    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.numer().is_negative() {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }

    fn is_integer(&self) -> bool {
        self.denom().is_one()
    }

    fn parse(text: &str) -> Result<Self, ScalarError> {
        BigRational::from_str(text.trim()).map_err(|_| ScalarError::Parse(text.to_owned()))
    }

    fn render(&self) -> String {
        // `Ratio` already prints "p/q", or "p" when q = 1.
        self.to_string()
    }
}

/// An element `a + b·√5` of ℚ(√5), componentwise-canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadScalar { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadScalar { a, b: BigRational::zero() }
    }

    /// √5 itself.
    pub fn root5() -> Self {
        QuadScalar { a: BigRational::zero(), b: BigRational::one() }
    }

    /// The golden ratio τ = (1 + √5)/2, satisfying τ² = τ + 1.
    pub fn tau() -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        QuadScalar { a: half.clone(), b: half }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True iff the value lies in ℤ[τ] = {x + y·τ : x, y ∈ ℤ}.
    ///
    /// Writing a + b√5 = (x + y/2) + (y/2)√5 shows membership is equivalent
    /// to 2b ∈ ℤ and a − b ∈ ℤ.
    pub fn in_golden_lattice(&self) -> bool {
        let two = BigRational::from_integer(BigInt::from(2));
        (&self.b * &two).is_integer() && (&self.a - &self.b).is_integer()
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.b.is_negative() {
            write!(f, "{}-{}*r5", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*r5", self.a, self.b)
        }
    }
}

impl Add for QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: QuadScalar) -> QuadScalar {
        QuadScalar { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: QuadScalar) -> QuadScalar {
        QuadScalar { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: QuadScalar) -> QuadScalar {
        // (a + b√5)(c + d√5) = ac + 5bd + (ad + bc)√5
        let five = BigRational::from_integer(BigInt::from(5));
        QuadScalar {
            a: &self.a * &rhs.a + five * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div for QuadScalar {
    type Output = QuadScalar;
    fn div(self, rhs: QuadScalar) -> QuadScalar {
        Scalar::checked_div(&self, &rhs).expect("division by zero in QuadScalar")
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -self.a, b: -self.b }
    }
}

impl Zero for QuadScalar {
    fn zero() -> Self {
        QuadScalar { a: BigRational::zero(), b: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadScalar {
    fn one() -> Self {
        QuadScalar { a: BigRational::one(), b: BigRational::zero() }
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.clone() - other.clone()).sign() {
            Sign::Neg => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Pos => std::cmp::Ordering::Greater,
        }
    }
}

impl Scalar for QuadScalar {
    /// Exact sign of a + b√5.
    ///
    /// When a and b agree in sign (or one vanishes) the answer is immediate.
    /// Otherwise the dominant term decides: compare a² against 5b² by exact
    /// integer arithmetic and take the sign of the larger magnitude side.
    /// Equality a² = 5b² with a, b ≠ 0 is impossible since √5 is irrational.
    fn sign(&self) -> Sign {
        let sa = Scalar::sign(&self.a);
        let sb = Scalar::sign(&self.b);
        match (sa, sb) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (Sign::Pos, Sign::Pos) => Sign::Pos,
            (Sign::Neg, Sign::Neg) => Sign::Neg,
            _ => {
                let a2 = &self.a * &self.a;
                let b2_5 = BigRational::from_integer(BigInt::from(5)) * &self.b * &self.b;
                debug_assert_ne!(a2, b2_5, "a² = 5b² is impossible for nonzero rational a, b");
                if a2 > b2_5 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    fn from_int(n: i64) -> Self {
        QuadScalar::from_rational(<BigRational as Scalar>::from_int(n))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // Multiply by the conjugate: (c + d√5)⁻¹ = (c − d√5)/(c² − 5d²).
        let five = BigRational::from_integer(BigInt::from(5));
        let norm = &rhs.a * &rhs.a - five * &rhs.b * &rhs.b;
        debug_assert!(!norm.is_zero());
        let num = self.clone() * QuadScalar { a: rhs.a.clone(), b: -&rhs.b };
        Ok(QuadScalar { a: num.a / &norm, b: num.b / &norm })
    }

    fn is_integer(&self) -> bool {
        self.b.is_zero() && Scalar::is_integer(&self.a)
    }

    fn parse(text: &str) -> Result<Self, ScalarError> {
        let s = text.trim();
        let err = || ScalarError::Parse(text.to_owned());
        let (body, has_r5) = match s.strip_suffix("*r5") {
            Some(body) => (body, true),
            None => (s, false),
        };
        if !has_r5 {
            return Ok(QuadScalar::from_rational(<BigRational as Scalar>::parse(body)?));
        }
        // body is "a+b", "a-b", or a bare "b" coefficient. The separator is
        // the last '+' or '-' not at position 0 and not following '/'.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let a = <BigRational as Scalar>::parse(&body[..i])?;
                let mag = <BigRational as Scalar>::parse(&body[i + 1..])?;
                let b = if bytes[i] == b'-' { -mag } else { mag };
                Ok(QuadScalar { a, b })
            }
            None => {
                let b = <BigRational as Scalar>::parse(body).map_err(|_| err())?;
                Ok(QuadScalar { a: BigRational::zero(), b })
            }
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }
}
