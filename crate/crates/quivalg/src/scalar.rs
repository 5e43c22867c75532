//! Exact complex scalars with rational real and imaginary parts.
//!
//! All algebraic decisions in the crate (radical membership, span
//! dimensions, character values) are made in this type; floating point
//! only enters in the Fock-space numerics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::traits::ToPrimitive;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rational = BigRational;

/// A complex number `re + im*i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(Rational::one(), Rational::zero())
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    /// `p/q` as a real scalar. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::new(
            Rational::new(BigInt::from(p), BigInt::from(q)),
            Rational::zero(),
        )
    }

    pub fn from_parts(re_p: i64, re_q: i64, im_p: i64, im_q: i64) -> Self {
        Scalar::new(
            Rational::new(BigInt::from(re_p), BigInt::from(re_q)),
            Rational::new(BigInt::from(im_p), BigInt::from(im_q)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re^2 + im^2`, exact.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact reciprocal. Panics on zero.
    pub fn recip(&self) -> Scalar {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero scalar");
        Scalar::new(&self.re / &n, -(&self.im / &n))
    }

    /// Modulus as `f64`.
    pub fn abs_f64(&self) -> f64 {
        self.norm_sq().to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Exact modulus, when the squared modulus is a perfect square.
    pub fn abs_exact(&self) -> Option<Rational> {
        sqrt_exact(&self.norm_sq())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Parses a rational from its display form: `p` or `p/q`.
    pub fn parse_rational(text: &str) -> Result<Rational, String> {
        text.trim()
            .parse::<Rational>()
            .map_err(|e| format!("bad rational {text:?}: {e}"))
    }

    pub fn format_rational(r: &Rational) -> String {
        r.to_string()
    }
}

/// Exact square root of a nonnegative rational, when both numerator and
/// denominator are perfect squares.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return write!(f, "i");
            }
            if (-self.im.clone()).is_one() {
                return write!(f, "-i");
            }
            return write!(f, "{}i", self.im);
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let im_abs = self.im.abs();
        if im_abs.is_one() {
            write!(f, "({}{}i)", self.re, sign)
        } else {
            write!(f, "({}{}{}i)", self.re, sign, im_abs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = Scalar::from_ratio(1, 3);
        let b = Scalar::from_ratio(1, 6);
        assert_eq!(a.clone() + b.clone(), Scalar::from_ratio(1, 2));
        assert_eq!(&a * &b, Scalar::from_ratio(1, 18));
        assert_eq!(a - b, Scalar::from_ratio(1, 6));
    }

    #[test]
    fn complex_product_and_conjugate() {
        let z = Scalar::from_parts(1, 1, 2, 1); // 1 + 2i
        let w = Scalar::from_parts(3, 1, -1, 1); // 3 - i
        assert_eq!(&z * &w, Scalar::from_parts(5, 1, 5, 1));
        assert_eq!(&z * &z.conj(), Scalar::from_int(5));
        assert_eq!(z.norm_sq(), Rational::from_integer(BigInt::from(5)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_ratio(1, 2).to_string(), "1/2");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!(Scalar::from_parts(1, 1, -3, 2).to_string(), "(1-3/2i)");
        assert_eq!(Scalar::from_int(-4).to_string(), "-4");
    }

    #[test]
    fn exact_square_roots() {
        let r = Rational::new(BigInt::from(9), BigInt::from(25));
        assert_eq!(
            sqrt_exact(&r),
            Some(Rational::new(BigInt::from(3), BigInt::from(5)))
        );
        assert_eq!(sqrt_exact(&Rational::from_integer(BigInt::from(2))), None);

        // 3-4-5 scaled scalars keep a rational modulus.
        let z = &Scalar::from_parts(3, 5, 4, 5) * &Scalar::from_ratio(7, 2);
        assert_eq!(
            z.abs_exact(),
            Some(Rational::new(BigInt::from(7), BigInt::from(2)))
        );
    }

    #[test]
    fn rational_roundtrip() {
        for s in ["3", "-5/7", "0", "12/5"] {
            let r = Scalar::parse_rational(s).unwrap();
            assert_eq!(Scalar::format_rational(&r), s);
        }
    }
}
