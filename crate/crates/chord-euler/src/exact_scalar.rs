//! Exact scalars: reduced rationals and the quadratic field `Q(sqrt 3)`.
//!
//! Every coordinate in the crate is a [`QSqrt3`]. Plain rational inputs embed
//! with a zero `sqrt 3` part, so all predicates share one code path and none of
//! them ever touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator, so derived equality and hashing are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rat, Error> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn int(v: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rat, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(&self.0 / &other.0))
    }

    /// Nearest `f64`, for rendering only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rat {
    fn from(v: BigRational) -> Rat {
        Rat(v)
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Rat {
        Rat::int(v)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(self.0, rhs.0))
            }
        }
    };
}
rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rat::new(n, d)
            }
            None => Ok(Rat::int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

/// The number `r + s*sqrt(3)`. The representation is unique because
/// `sqrt 3` is irrational.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QSqrt3 {
    pub r: Rat,
    pub s: Rat,
}

/// Exact sign of a value, as `-1`, `0` or `1`.
pub type Sign = i8;

impl QSqrt3 {
    pub fn new(r: Rat, s: Rat) -> QSqrt3 {
        QSqrt3 { r, s }
    }

    pub fn rational(r: Rat) -> QSqrt3 {
        QSqrt3 { r, s: Rat::zero() }
    }

    pub fn int(v: i64) -> QSqrt3 {
        QSqrt3::rational(Rat::int(v))
    }

    pub fn zero() -> QSqrt3 {
        QSqrt3::default()
    }

    pub fn one() -> QSqrt3 {
        QSqrt3::int(1)
    }

    pub fn sqrt3() -> QSqrt3 {
        QSqrt3::new(Rat::zero(), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    /// Exact sign of `r + s*sqrt 3`.
    ///
    /// When `r` and `s` disagree in sign, the larger of `r^2` and `3 s^2`
    /// decides.
    pub fn sign(&self) -> Sign {
        let (a, b) = (self.r.signum(), self.s.signum());
        if a == b || b == 0 {
            return a;
        }
        if a == 0 {
            return b;
        }
        let r2 = &self.r * &self.r;
        let s2 = &(&self.s * &self.s) * &Rat::int(3);
        match r2.cmp(&s2) {
            Ordering::Greater => a,
            Ordering::Less => b,
            // r^2 = 3 s^2 has no non-zero rational solution.
            Ordering::Equal => unreachable!("sqrt 3 is irrational"),
        }
    }

    pub fn conjugate(&self) -> QSqrt3 {
        QSqrt3::new(self.r.clone(), -&self.s)
    }

    /// Field norm `r^2 - 3 s^2`, non-zero for every non-zero element.
    pub fn norm(&self) -> Rat {
        &(&self.r * &self.r) - &(&(&self.s * &self.s) * &Rat::int(3))
    }

    pub fn checked_div(&self, other: &QSqrt3) -> Result<QSqrt3, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if other.is_rational() {
            return Ok(QSqrt3::new(
                self.r.checked_div(&other.r)?,
                self.s.checked_div(&other.r)?,
            ));
        }
        let n = other.norm();
        let num = self * &other.conjugate();
        Ok(QSqrt3::new(num.r.checked_div(&n)?, num.s.checked_div(&n)?))
    }

    pub fn scale(&self, k: &Rat) -> QSqrt3 {
        QSqrt3::new(&self.r * k, &self.s * k)
    }

    /// Nearest `f64`, for rendering only.
    pub fn to_f64(&self) -> f64 {
        self.r.to_f64() + self.s.to_f64() * 3f64.sqrt()
    }
}

impl PartialOrd for QSqrt3 {
    fn partial_cmp(&self, other: &QSqrt3) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt3 {
    fn cmp(&self, other: &QSqrt3) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl From<Rat> for QSqrt3 {
    fn from(r: Rat) -> QSqrt3 {
        QSqrt3::rational(r)
    }
}

impl From<i64> for QSqrt3 {
    fn from(v: i64) -> QSqrt3 {
        QSqrt3::int(v)
    }
}

impl Add<&QSqrt3> for &QSqrt3 {
    type Output = QSqrt3;
    fn add(self, rhs: &QSqrt3) -> QSqrt3 {
        if self.is_rational() && rhs.is_rational() {
            return QSqrt3::rational(&self.r + &rhs.r);
        }
        QSqrt3::new(&self.r + &rhs.r, &self.s + &rhs.s)
    }
}

impl Sub<&QSqrt3> for &QSqrt3 {
    type Output = QSqrt3;
    fn sub(self, rhs: &QSqrt3) -> QSqrt3 {
        if self.is_rational() && rhs.is_rational() {
            return QSqrt3::rational(&self.r - &rhs.r);
        }
        QSqrt3::new(&self.r - &rhs.r, &self.s - &rhs.s)
    }
}

impl Mul<&QSqrt3> for &QSqrt3 {
    type Output = QSqrt3;
    fn mul(self, rhs: &QSqrt3) -> QSqrt3 {
        if self.is_rational() && rhs.is_rational() {
            return QSqrt3::rational(&self.r * &rhs.r);
        }
        let three = Rat::int(3);
        let r = &(&self.r * &rhs.r) + &(&three * &(&self.s * &rhs.s));
        let s = &(&self.r * &rhs.s) + &(&self.s * &rhs.r);
        QSqrt3::new(r, s)
    }
}

macro_rules! qs_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<QSqrt3> for QSqrt3 {
            type Output = QSqrt3;
            fn $method(self, rhs: QSqrt3) -> QSqrt3 {
                $trait::$method(&self, &rhs)
            }
        }
    };
}
qs_owned!(Add, add);
qs_owned!(Sub, sub);
qs_owned!(Mul, mul);

impl Neg for &QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3::new(-&self.r, -&self.s)
    }
}

impl Neg for QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        -&self
    }
}

/// Arithmetic selector for [`qs_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn qs_arith(a: &QSqrt3, b: &QSqrt3, op: Op) -> Result<QSqrt3, Error> {
    Ok(match op {
        Op::Add => a + b,
        Op::Sub => a - b,
        Op::Mul => a * b,
        Op::Div => a.checked_div(b)?,
    })
}

pub fn qs_sign(a: &QSqrt3) -> Sign {
    a.sign()
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            return write!(f, "{}", self.r);
        }
        let op = if self.s.signum() < 0 { '-' } else { '+' };
        write!(f, "{}{}{}*sqrt3", self.r, op, self.s.abs())
    }
}

impl FromStr for QSqrt3 {
    type Err = Error;

    /// Accepts `p/q`, `p/q+r/t*sqrt3`, `p/q-r/t*sqrt3` and `r/t*sqrt3`;
    /// integers may drop the `/1`.
    fn from_str(text: &str) -> Result<QSqrt3, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix("*sqrt3") else {
            return Ok(QSqrt3::rational(s.parse()?));
        };
        // The separator is the last sign that is not in leading position.
        let split = body
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        match split {
            None => Ok(QSqrt3::new(Rat::zero(), body.parse()?)),
            Some(i) => {
                let r: Rat = body[..i].parse()?;
                let mut coef: Rat = body[i + 1..].parse()?;
                if &body[i..i + 1] == "-" {
                    coef = -coef;
                }
                if body[i + 1..].starts_with(['+', '-']) {
                    return Err(Error::Parse(format!("not a scalar: {text:?}")));
                }
                Ok(QSqrt3::new(r, coef))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(r: i64, s: i64) -> QSqrt3 {
        QSqrt3::new(Rat::int(r), Rat::int(s))
    }

    #[test]
    fn sign_of_mixed_terms() {
        assert_eq!(q(1, 0).sign(), 1);
        assert_eq!(q(0, -1).sign(), -1);
        // 27 > 25, so 3 sqrt3 outweighs -5.
        assert_eq!(q(-5, 3).sign(), 1);
        assert_eq!(q(5, -3).sign(), -1);
        assert_eq!(q(-6, 3).sign(), -1);
        assert_eq!(q(0, 0).sign(), 0);
    }

    #[test]
    fn products_and_quotients() {
        assert_eq!(&q(1, 0) * &q(0, 1), q(0, 1));
        assert_eq!(&q(0, 1) * &q(0, 1), q(3, 0));
        assert_eq!(q(1, 1).checked_div(&q(1, 1)).unwrap(), q(1, 0));
        assert!(matches!(q(1, 1).checked_div(&q(0, 0)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn text_round_trip() {
        for t in ["0", "3", "-1/2", "1/2+3/4*sqrt3", "-7-2/5*sqrt3", "1*sqrt3", "-1/3*sqrt3"] {
            let v: QSqrt3 = t.parse().unwrap();
            let back: QSqrt3 = v.to_string().parse().unwrap();
            assert_eq!(v, back, "{t}");
        }
        assert_eq!("2/4".parse::<QSqrt3>().unwrap().to_string(), "1/2");
        assert_eq!("0+1/1*sqrt3".parse::<QSqrt3>().unwrap(), q(0, 1));
        assert!("1/0".parse::<QSqrt3>().is_err());
        assert!("x".parse::<QSqrt3>().is_err());
        assert!("1+-2*sqrt3".parse::<QSqrt3>().is_err());
    }
}
