use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number. All endpoint arithmetic in this crate is exact;
/// repeated halving of gaps makes floating point unusable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds n/d. The denominator must be nonzero; sign is normalized.
    pub fn new(n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn half(&self) -> Self {
        Rational(&self.0 / BigInt::from(2))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an i64, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if !self.0.is_integer() {
            return None;
        }
        self.0.numer().to_i64()
    }

    /// Largest integer at most this value, if it fits an i64.
    pub fn floor_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.0.floor().numer().to_i64()
    }

    /// Smallest integer at least this value, if it fits an i64.
    pub fn ceil_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.0.ceil().numer().to_i64()
    }

    /// Parses "p", "-p", "p/q" or "-p/q" with q > 0 after normalization.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 0,
            msg: format!("{}: {:?}", msg, s),
        };
        let mut parts = s.splitn(2, '/');
        let num_str = parts.next().ok_or_else(|| bad("empty rational"))?;
        let num = BigInt::from_str(num_str).map_err(|_| bad("bad numerator"))?;
        match parts.next() {
            None => Ok(Rational(BigRational::from_integer(num))),
            Some(den_str) => {
                let den = BigInt::from_str(den_str).map_err(|_| bad("bad denominator"))?;
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Rational(BigRational::new(num, den)))
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "3", "-2", "1/2", "-7/3", "5/10"] {
            let r = Rational::parse(s).unwrap();
            let back = Rational::parse(&r.to_string()).unwrap();
            assert_eq!(r, back);
        }
        assert_eq!(Rational::parse("5/10").unwrap().to_string(), "1/2");
        assert_eq!(Rational::parse("4/2").unwrap().to_string(), "2");
        assert_eq!(Rational::parse("-3/6").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Rational::parse("").is_err());
        assert!(Rational::parse("a").is_err());
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("1/2/3").is_err());
        assert!(Rational::parse("1.5").is_err());
    }

    #[test]
    fn ordering_is_exact() {
        assert!(q(1, 3) < q(1, 2));
        assert!(q(-1, 2) < q(0, 1));
        assert_eq!(q(2, 4), q(1, 2));
    }

    #[test]
    fn halving_never_loses_precision() {
        let mut x = Rational::one();
        for _ in 0..100 {
            x = x.half();
        }
        let mut back = x;
        for _ in 0..100 {
            back = &back + &back;
        }
        assert_eq!(back, Rational::one());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(&q(1, 2) - &q(1, 3), q(1, 6));
        assert_eq!(&q(2, 3) * &q(3, 4), q(1, 2));
        assert_eq!(&q(1, 2) / &q(1, 4), q(2, 1));
        assert_eq!(q(3, 4).half(), q(3, 8));
        assert_eq!(q(-2, 3).abs(), q(2, 3));
    }
}
