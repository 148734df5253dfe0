//! Exact arithmetic in the real quadratic field Q(√3).
//!
//! Every character value, inner product and matrix entry handled by the
//! workbench is a [`Scalar`] `a + b√3` with `a`, `b` arbitrary-precision
//! rationals. The field is real, so complex conjugation is the identity.
//!
//! Textual syntax (shared by every file format): `-4`, `7/81`, `r3`,
//! `1+2r3`, `-r3/12`, `(3+r3)/12`. Whitespace is ignored.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Returns the value as `i64` when the rational is an integer that fits.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// An element `rat + root3·√3` of Q(√3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    rat: Rational,
    root3: Rational,
}

impl Scalar {
    pub fn new(rat: Rational, root3: Rational) -> Self {
        Scalar { rat, root3 }
    }

    pub fn zero() -> Self {
        Scalar::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn sqrt3() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(rat_int(n), Rational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::new(rat(n, d), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::new(r, Rational::zero())
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn root3_part(&self) -> &Rational {
        &self.root3
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.root3.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.root3.is_zero()
    }

    /// True iff the value lies in Z.
    pub fn is_rational_integer(&self) -> bool {
        self.root3.is_zero() && self.rat.is_integer()
    }

    /// True iff the value is an algebraic integer of Q(√3), i.e. lies in Z[√3].
    pub fn is_algebraic_integer(&self) -> bool {
        self.rat.is_integer() && self.root3.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_rational_integer() {
            Some(self.rat.numer().clone())
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Like [`Scalar::to_i64`] but reports the offending value.
    pub fn expect_i64(&self) -> Result<i64> {
        self.to_i64()
            .ok_or_else(|| Error::NonIntegerValue(self.to_string()))
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.rat.clone())
        } else {
            None
        }
    }

    /// Field norm `a² − 3b²`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - rat_int(3) * &self.root3 * &self.root3
    }

    /// The non-trivial Galois conjugate `a − b√3`.
    pub fn galois_conjugate(&self) -> Scalar {
        Scalar::new(self.rat.clone(), -self.root3.clone())
    }

    /// Complex conjugation. Q(√3) is real, so this is the identity.
    pub fn complex_conjugate(&self) -> Scalar {
        self.clone()
    }

    pub fn inverse(&self) -> Result<Scalar> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(Scalar::new(&self.rat / &n, -(&self.root3 / &n)))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inverse()?)
    }

    /// Sign of the real number `a + b√3`, computed exactly.
    pub fn signum(&self) -> Ordering {
        let sa = self.rat.cmp(&Rational::zero());
        let sb = self.root3.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            (a, _) => {
                // opposite signs: compare a² with 3b²
                let lhs = &self.rat * &self.rat;
                let rhs = rat_int(3) * &self.root3 * &self.root3;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => a,
                    Ordering::Less => a.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Lossy conversion for display and sanity checks only.
    pub fn to_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        let b = self.root3.to_f64().unwrap_or(f64::NAN);
        a + b * 3f64.sqrt()
    }

    pub fn scale(&self, k: &Rational) -> Scalar {
        Scalar::new(&self.rat * k, &self.root3 * k)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Real-number order.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_rational(Rational::from_integer(n))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.rat + &rhs.rat, &self.root3 + &rhs.root3)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.rat - &rhs.rat, &self.root3 - &rhs.root3)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let three = rat_int(3);
        Scalar::new(
            &self.rat * &rhs.rat + three * &self.root3 * &rhs.root3,
            &self.rat * &rhs.root3 + &self.root3 * &rhs.rat,
        )
    }
}

/// Panics on division by zero, like integer division. Use
/// [`Scalar::checked_div`] when the divisor may vanish.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.rat.clone(), -self.root3.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.rat, -self.root3)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rat += &rhs.rat;
        self.root3 += &rhs.root3;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.rat -= &rhs.rat;
        self.root3 -= &rhs.root3;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders `a + b√3` in the canonical textual syntax:
/// `-4`, `7/81`, `r3`, `-r3/12`, `1+2r3`, `(3+r3)/12`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root3.is_zero() {
            return write_rational(f, &self.rat);
        }
        let den = self.rat.denom().lcm(self.root3.denom());
        let a = (&self.rat * Rational::from_integer(den.clone())).to_integer();
        let b = (&self.root3 * Rational::from_integer(den.clone())).to_integer();
        let root_term = |b: &BigInt| -> String {
            if b.is_one() {
                "r3".to_string()
            } else if *b == -BigInt::one() {
                "-r3".to_string()
            } else {
                format!("{}r3", b)
            }
        };
        let body = if a.is_zero() {
            root_term(&b)
        } else if b.is_negative() {
            format!("{}{}", a, root_term(&b))
        } else {
            format!("{}+{}", a, root_term(&b))
        };
        if den.is_one() {
            write!(f, "{}", body)
        } else if a.is_zero() {
            write!(f, "{}/{}", body, den)
        } else {
            write!(f, "({})/{}", body, den)
        }
    }
}

struct ScalarParser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> ScalarParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(0, format!("bad scalar `{}`: {}", self.src, msg))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().ok()
    }

    fn root_token(&mut self) -> bool {
        if self.peek() == Some('r') && self.chars.get(self.pos + 1) == Some(&'3') {
            self.pos += 2;
            true
        } else {
            false
        }
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Scalar> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc += t;
            } else if self.eat('-') {
                let t = self.term()?;
                acc -= &t;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := atom ('/' integer)*
    fn term(&mut self) -> Result<Scalar> {
        let mut value = self.atom()?;
        while self.eat('/') {
            let d = self.integer().ok_or_else(|| self.err("expected denominator"))?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            value = value.scale(&Rational::new(BigInt::one(), d));
        }
        Ok(value)
    }

    // atom := '(' expr ')' | integer ['*'] ['r3'] | 'r3'
    fn atom(&mut self) -> Result<Scalar> {
        if self.eat('(') {
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("unbalanced parenthesis"));
            }
            return Ok(inner);
        }
        if self.root_token() {
            return Ok(Scalar::sqrt3());
        }
        let n = self.integer().ok_or_else(|| self.err("expected a number or r3"))?;
        let star = self.eat('*');
        if self.root_token() {
            return Ok(Scalar::new(Rational::zero(), Rational::from_integer(n)));
        }
        if star {
            return Err(self.err("expected r3 after `*`"));
        }
        Ok(Scalar::from(n))
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = ScalarParser {
            chars,
            pos: 0,
            src: s,
        };
        if p.chars.is_empty() {
            return Err(p.err("empty"));
        }
        let v = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.err("trailing characters"));
        }
        Ok(v)
    }
}

/// Parses a scalar, attaching a line number to any error.
pub fn parse_scalar_at(token: &str, line: usize) -> Result<Scalar> {
    token.parse::<Scalar>().map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(Scalar::sqrt3() * Scalar::sqrt3(), Scalar::from_int(3));
        assert_eq!(s("1+r3") * s("1-r3"), Scalar::from_int(-2));
        assert_eq!(s("1/12") + s("1/36"), s("1/9"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Scalar::from_int(2).inverse().unwrap(), s("1/2"));
        assert_eq!(Scalar::sqrt3().inverse().unwrap(), s("r3/3"));
        let x = s("1+r3");
        let inv = x.inverse().unwrap();
        assert_eq!(inv, s("(-1+r3)/2"));
        assert_eq!(&x * &inv, Scalar::one());
        assert_eq!(Scalar::zero().inverse(), Err(Error::ZeroInverse));
    }

    #[test]
    fn integer_predicate() {
        assert!(s("-4").is_rational_integer());
        assert!(!s("r3").is_rational_integer());
        assert!(!s("7/81").is_rational_integer());
        assert!(s("2-3r3").is_algebraic_integer());
    }

    #[test]
    fn parses_every_documented_form() {
        assert_eq!(s("-4"), Scalar::from_int(-4));
        assert_eq!(s("7/81"), Scalar::from_ratio(7, 81));
        assert_eq!(s("r3"), Scalar::sqrt3());
        assert_eq!(s("1+2r3"), Scalar::new(rat_int(1), rat_int(2)));
        assert_eq!(s("-r3/12"), Scalar::new(rat_int(0), rat(-1, 12)));
        assert_eq!(s("(3+r3)/12"), Scalar::new(rat(1, 4), rat(1, 12)));
        assert_eq!(s(" -( 3 - r3 ) / 12 "), Scalar::new(rat(-1, 4), rat(1, 12)));
        assert_eq!(s("3r3/12"), s("r3/4"));
        assert_eq!(s("2*r3"), s("2r3"));
        assert!("".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("(1+r3".parse::<Scalar>().is_err());
        assert!("r2".parse::<Scalar>().is_err());
    }

    #[test]
    fn renders_canonically() {
        for text in ["-4", "7/81", "r3", "-r3", "-r3/12", "(3+r3)/12", "1+2r3", "(-1-r3)/2", "0"] {
            assert_eq!(s(text).to_string(), text);
        }
    }

    #[test]
    fn exact_sign() {
        assert!(s("2-r3").is_positive());
        assert!(s("1-r3").is_negative());
        assert!(s("-7+4r3").is_negative()); // 4√3 ≈ 6.93
        assert!(s("-6+4r3").is_positive());
        assert_eq!(Scalar::zero().signum(), Ordering::Equal);
        assert!(s("r3") > s("17/10"));
        assert!(s("r3") < s("7/4"));
    }
}
