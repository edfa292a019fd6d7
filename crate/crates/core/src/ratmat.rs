//! Exact 2x2 matrices over the rationals.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("cannot parse matrix `{0}`: expected `a,b;c,d`")]
    BadMatrix(String),
}

/// Builds the rational `num/den`; panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, MatrixError> {
    let s = s.trim();
    let bad = || MatrixError::BadRational(s.to_string());
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The matrix `(a b; c d)`, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMat2 {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl RatMat2 {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        RatMat2 { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        RatMat2::new(rat_int(a), rat_int(b), rat_int(c), rat_int(d))
    }

    pub fn identity() -> Self {
        RatMat2::from_ints(1, 0, 0, 1)
    }

    pub fn diag(x: Rat, y: Rat) -> Self {
        RatMat2::new(x, Rat::zero(), Rat::zero(), y)
    }

    pub fn entries(&self) -> [&Rat; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_integral(&self) -> bool {
        self.entries().iter().all(|e| e.is_integer())
    }

    pub fn inverse(&self) -> Result<RatMat2, MatrixError> {
        let det = self.det();
        if det.is_zero() {
            return Err(MatrixError::Singular);
        }
        Ok(RatMat2::new(
            &self.d / &det,
            -&self.b / &det,
            -&self.c / &det,
            &self.a / &det,
        ))
    }

    /// `T^{-1} * self * T`.
    pub fn conjugate_by(&self, t: &RatMat2) -> Result<RatMat2, MatrixError> {
        Ok(&(&t.inverse()? * self) * t)
    }

    pub fn pow(&self, mut e: u32) -> RatMat2 {
        let mut acc = RatMat2::identity();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order if it is at most `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let id = RatMat2::identity();
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc == id {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Least common multiple of the entry denominators.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.entries()
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    pub fn abs_det(&self) -> Rat {
        self.det().abs()
    }
}

impl Mul for &RatMat2 {
    type Output = RatMat2;
    fn mul(self, o: &RatMat2) -> RatMat2 {
        RatMat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Neg for &RatMat2 {
    type Output = RatMat2;
    fn neg(self) -> RatMat2 {
        RatMat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl fmt::Display for RatMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{};{},{}",
            fmt_rat(&self.a),
            fmt_rat(&self.b),
            fmt_rat(&self.c),
            fmt_rat(&self.d)
        )
    }
}

/// Row-major text form `a,b;c,d`.
impl FromStr for RatMat2 {
    type Err = MatrixError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MatrixError::BadMatrix(s.to_string());
        let (r0, r1) = s.split_once(';').ok_or_else(bad)?;
        let (a, b) = r0.split_once(',').ok_or_else(bad)?;
        let (c, d) = r1.split_once(',').ok_or_else(bad)?;
        Ok(RatMat2::new(
            parse_rat(a)?,
            parse_rat(b)?,
            parse_rat(c)?,
            parse_rat(d)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = RatMat2::new(rat(1, 2), rat(3, 1), rat(-2, 3), rat(5, 7));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMat2::identity());
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = RatMat2::from_ints(1, 2, 2, 4);
        assert_eq!(m.inverse(), Err(MatrixError::Singular));
    }

    #[test]
    fn parse_and_display() {
        let m: RatMat2 = "1/3, 0; 0, 1".parse().unwrap();
        assert_eq!(m, RatMat2::diag(rat(1, 3), rat_int(1)));
        assert_eq!(m.to_string(), "1/3,0;0,1");
        assert!("1,2,3".parse::<RatMat2>().is_err());
        assert!("1/0,0;0,1".parse::<RatMat2>().is_err());
    }

    #[test]
    fn order_of_rotation() {
        let r = RatMat2::from_ints(0, 1, -1, -1);
        assert_eq!(r.order(12), Some(3));
        assert_eq!((-&r).order(12), Some(6));
        assert_eq!(RatMat2::from_ints(2, 0, 0, 1).order(12), None);
    }
}
