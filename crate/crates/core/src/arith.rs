//! Exact arithmetic in real quadratic extensions `Q(√d)`.
//!
//! A [`Quad`] holds `a + b√d` with rational `a`, `b` and a nonnegative integer
//! radicand `d`. Radicands are kept as given (`√32` is not rewritten as `4√2`);
//! two radicands are compatible when their product is a perfect square, and
//! operations align them on the fly.
//!
//! Signs are decided with one squaring, never through floating point.

use std::cmp::Ordering;
use std::fmt;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::{BigInt, Error, Rational, Result};

/// Integer types usable as the base ring of [`Quad`].
pub trait ExactInt:
    Integer + Signed + Roots + Clone + FromPrimitive + fmt::Display + fmt::Debug
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Roots + Clone + FromPrimitive + fmt::Display + fmt::Debug
{
}

/// The value `a + b√d`.
#[derive(Clone, Debug)]
pub struct Quad<T: Clone + Integer> {
    a: Ratio<T>,
    b: Ratio<T>,
    d: T,
}

fn exact_sqrt<T: ExactInt>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if s.clone() * s.clone() == *n {
        Some(s)
    } else {
        None
    }
}

fn ratio_sign<T: ExactInt>(r: &Ratio<T>) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

impl<T: ExactInt> Quad<T> {
    /// Builds `a + b√d`. A perfect-square radicand is folded into `a`.
    pub fn new(a: Ratio<T>, b: Ratio<T>, d: T) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::OutOfRange(format!("negative radicand {d}")));
        }
        if !b.is_zero() {
            if let Some(s) = exact_sqrt(&d) {
                return Ok(Quad {
                    a: a + b * Ratio::from_integer(s),
                    b: Ratio::zero(),
                    d,
                });
            }
        }
        Ok(Quad { a, b, d })
    }

    pub fn rational(a: Ratio<T>) -> Self {
        Quad {
            a,
            b: Ratio::zero(),
            d: T::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::rational(Ratio::zero())
    }

    pub fn a(&self) -> &Ratio<T> {
        &self.a
    }

    pub fn b(&self) -> &Ratio<T> {
        &self.b
    }

    pub fn radicand(&self) -> &T {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() || self.d.is_zero()
    }

    /// The rational value, if the surd part vanishes.
    pub fn as_rational(&self) -> Option<Ratio<T>> {
        if self.is_rational() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    /// Exact sign of the represented real number.
    pub fn signum_exact(&self) -> i32 {
        qsign(self)
    }

    /// Rewrites `rhs` over the radicand of `self` (or vice versa) so both
    /// share one `d`. Returns `(d, b_self, b_rhs)`.
    fn align(&self, rhs: &Self) -> Result<(T, Ratio<T>, Ratio<T>)> {
        if rhs.is_rational() {
            return Ok((self.d.clone(), self.b.clone(), Ratio::zero()));
        }
        if self.is_rational() {
            return Ok((rhs.d.clone(), Ratio::zero(), rhs.b.clone()));
        }
        if self.d == rhs.d {
            return Ok((self.d.clone(), self.b.clone(), rhs.b.clone()));
        }
        // √d2 = (s / d1)·√d1 when d1·d2 = s².
        match exact_sqrt(&(self.d.clone() * rhs.d.clone())) {
            Some(s) => {
                let factor = Ratio::new(s, self.d.clone());
                Ok((self.d.clone(), self.b.clone(), rhs.b.clone() * factor))
            }
            None => Err(Error::MixedRadicands(
                self.d.to_string(),
                rhs.d.to_string(),
            )),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let (d, b1, b2) = self.align(rhs)?;
        Ok(Quad {
            a: self.a.clone() + rhs.a.clone(),
            b: b1 + b2,
            d,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let (d, b1, b2) = self.align(rhs)?;
        let dr = Ratio::from_integer(d.clone());
        Ok(Quad {
            a: self.a.clone() * rhs.a.clone() + b1.clone() * b2.clone() * dr,
            b: self.a.clone() * b2 + rhs.a.clone() * b1,
            d,
        })
    }

    pub fn neg(&self) -> Self {
        Quad {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, k: &Ratio<T>) -> Self {
        Quad {
            a: self.a.clone() * k.clone(),
            b: self.b.clone() * k.clone(),
            d: self.d.clone(),
        }
    }

    pub fn add_rational(&self, r: &Ratio<T>) -> Self {
        Quad {
            a: self.a.clone() + r.clone(),
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> T {
        if self.is_rational() {
            return self.a.floor().to_integer();
        }
        // b√d = ±√(numer(b)²·d) / denom(b); the integer square root gives an
        // estimate within one unit of the denominator, refined below.
        let bn = self.b.numer().clone();
        let bd = self.b.denom().clone();
        let s = (bn.clone() * bn.clone() * self.d.clone()).sqrt();
        let s = if bn.is_negative() { -s } else { s };
        let est = self.a.clone() + Ratio::new(s, bd);
        let mut n = est.floor().to_integer();
        while qsign(&self.add_rational(&-Ratio::from_integer(n.clone()))) < 0 {
            n = n - T::one();
        }
        loop {
            let next = n.clone() + T::one();
            if qsign(&self.add_rational(&-Ratio::from_integer(next.clone()))) >= 0 {
                n = next;
            } else {
                break;
            }
        }
        n
    }
}

impl<T: ExactInt> PartialEq for Quad<T> {
    fn eq(&self, other: &Self) -> bool {
        matches!(qcompare(self, other), Ok(Ordering::Equal))
    }
}

impl<T: ExactInt> From<Ratio<T>> for Quad<T> {
    fn from(a: Ratio<T>) -> Self {
        Quad::rational(a)
    }
}

impl<T: ExactInt> fmt::Display for Quad<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else if self.b.is_negative() {
            write!(f, "{} - {}√{}", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{} + {}√{}", self.a, self.b, self.d)
        }
    }
}

/// Exact sign of `a + b√d` in {−1, 0, +1}.
pub fn qsign<T: ExactInt>(x: &Quad<T>) -> i32 {
    let sa = ratio_sign(&x.a);
    let sb = if x.d.is_zero() { 0 } else { ratio_sign(&x.b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // Opposite signs: the term with the larger square wins.
    let lhs = x.a.clone() * x.a.clone();
    let rhs = x.b.clone() * x.b.clone() * Ratio::from_integer(x.d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// Orders two values. Radicands must agree up to square factors unless one
/// side is rational.
pub fn qcompare<T: ExactInt>(x: &Quad<T>, y: &Quad<T>) -> Result<Ordering> {
    let diff = x.checked_sub(y)?;
    Ok(qsign(&diff).cmp(&0))
}

/// Decimal expansion with `digits` places after the point, rounded half to
/// even.
pub fn qapprox<T: ExactInt>(x: &Quad<T>, digits: u32) -> String {
    assert!(digits <= 50, "at most 50 digits are supported");
    let ten = T::from_u32(10).expect("10 fits every integer type");
    let scale = Ratio::from_integer(num_traits::pow(ten, digits as usize));
    let z = x.scale(&scale);
    let n = z.floor();
    let half = Ratio::new(T::one(), T::one() + T::one());
    let frac = z.add_rational(&-(Ratio::from_integer(n.clone()) + half));
    let rounded = match qsign(&frac) {
        1 => n + T::one(),
        -1 => n,
        _ => {
            if n.is_even() {
                n
            } else {
                n + T::one()
            }
        }
    };
    format_scaled(&rounded, digits as usize)
}

fn format_scaled<T: ExactInt>(n: &T, digits: usize) -> String {
    let neg = n.is_negative();
    let mut s = n.abs().to_string();
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let split = s.len() - digits;
    let mut out = String::with_capacity(s.len() + 2);
    if neg {
        out.push('-');
    }
    out.push_str(&s[..split]);
    if digits > 0 {
        out.push('.');
        out.push_str(&s[split..]);
    }
    out
}

/// Parses `a/b` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `true` when `r` is an integer.
pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: Rational, b: Rational, d: i64) -> QuadValue {
        QuadValue::new(a, b, BigInt::from(d)).unwrap()
    }

    use crate::QuadValue;

    #[test]
    fn sign_examples() {
        assert_eq!(qsign(&q(int(0), int(0), 5)), 0);
        assert_eq!(qsign(&q(int(-3), int(2), 2)), -1);
        assert_eq!(qsign(&q(rat(3, 2), int(-1), 2)), 1);
    }

    #[test]
    fn compare_examples() {
        let x = q(rat(3, 2), int(0), 2);
        let y = q(int(0), int(1), 2);
        assert_eq!(qcompare(&x, &y).unwrap(), Ordering::Greater);
        assert_eq!(qcompare(&y, &y).unwrap(), Ordering::Equal);
        let lhs = q(rat(7, 16), int(0), 2);
        let rhs = q(rat(301, 800), rat(1, 80), 32);
        assert_eq!(qcompare(&lhs, &rhs).unwrap(), Ordering::Less);
    }

    #[test]
    fn compatible_radicands_align() {
        // 4√2 = √32
        let x = q(int(0), int(4), 2);
        let y = q(int(0), int(1), 32);
        assert_eq!(qcompare(&x, &y).unwrap(), Ordering::Equal);
        let z = q(int(0), int(1), 3);
        assert!(matches!(qcompare(&x, &z), Err(Error::MixedRadicands(..))));
    }

    #[test]
    fn perfect_square_radicand_folds() {
        let x = q(int(1), int(2), 9);
        assert!(x.is_rational());
        assert_eq!(x.as_rational(), Some(int(7)));
    }

    #[test]
    fn approx_examples() {
        assert_eq!(qapprox(&QuadValue::rational(rat(1, 2)), 3), "0.500");
        assert_eq!(qapprox(&q(rat(3, 2), rat(-1, 2), 5), 4), "0.3820");
        assert_eq!(qapprox(&q(int(0), int(1), 2), 5), "1.41421");
        assert_eq!(qapprox(&q(int(0), int(-1), 2), 5), "-1.41421");
        assert_eq!(qapprox(&QuadValue::rational(rat(-1, 8)), 2), "-0.12");
        assert_eq!(qapprox(&QuadValue::rational(rat(3, 8)), 2), "0.38");
        assert_eq!(qapprox(&QuadValue::rational(int(7)), 0), "7");
    }

    #[test]
    fn floor_of_surds() {
        assert_eq!(q(int(0), int(1), 2).floor(), BigInt::from(1));
        assert_eq!(q(int(0), int(-1), 2).floor(), BigInt::from(-2));
        assert_eq!(q(rat(3, 2), rat(-1, 2), 5).floor(), BigInt::from(0));
    }

    #[test]
    fn generic_over_machine_integers() {
        let x: Quad<i64> = Quad::new(Ratio::new(-3, 1), Ratio::new(2, 1), 2).unwrap();
        assert_eq!(qsign(&x), -1);
        let y: Quad<i128> = Quad::new(Ratio::new(3, 2), Ratio::new(-1, 1), 2).unwrap();
        assert_eq!(qsign(&y), 1);
        assert_eq!(qapprox(&y, 3), "0.086");
    }

    #[test]
    fn multiplication_in_one_field() {
        // (3 + √5)(3 − √5) = 4
        let x = q(int(3), int(1), 5);
        let y = q(int(3), int(-1), 5);
        assert_eq!(x.checked_mul(&y).unwrap().as_rational(), Some(int(4)));
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rational("-59/100").unwrap(), rat(-59, 100));
        assert_eq!(parse_rational("4/-2").unwrap(), int(-2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
