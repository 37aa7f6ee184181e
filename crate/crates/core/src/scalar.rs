//! Gaussian rationals: complex numbers whose real and imaginary parts are
//! exact rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

/// An element of ℚ(i).
///
/// Both parts are kept in lowest terms with a positive denominator (the
/// invariant `BigRational` maintains), so structural equality is value
/// equality.
///
/// The derived `Ord` is lexicographic on `(re, im)`. It is not a field order
/// and exists only so that scalars can be sorted into canonical multisets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num / den` as a real scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `re + im·i` from integer parts.
    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True for a real scalar strictly greater than zero.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.re.is_positive()
    }

    /// True for a real scalar strictly less than zero.
    pub fn is_negative_real(&self) -> bool {
        self.is_real() && self.re.is_negative()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Integer parts of `self · den`; `den` must be a multiple of both
    /// denominators.
    pub(crate) fn scaled_parts(&self, den: &BigInt) -> (BigInt, BigInt) {
        let part = |r: &BigRational| r.numer() * (den / r.denom());
        (part(&self.re), part(&self.im))
    }

    /// `(re + im·i) / den`.
    pub(crate) fn from_scaled(re: BigInt, im: BigInt, den: &BigInt) -> Self {
        Scalar::new(
            BigRational::new(re, den.clone()),
            BigRational::new(im, den.clone()),
        )
    }

    /// Least common multiple of the two denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        num::integer::lcm(self.re.denom().clone(), self.im.denom().clone())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::new(r, BigRational::zero())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::new(&self.re * &rhs.re, BigRational::zero());
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like the integer types.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.recip().expect("division of a Scalar by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `3/4`, `-2`, `1/2+1/3i`, `0-1i`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.re)?;
        if !self.im.is_zero() {
            if self.im.is_negative() {
                f.write_str("-")?;
                write_rational(f, &-self.im.clone())?;
            } else {
                f.write_str("+")?;
                write_rational(f, &self.im)?;
            }
            f.write_str("i")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Why a single entry failed to parse. Position information is attached by
/// the matrix parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    Empty,
    Malformed(String),
    ZeroDenominator,
}

impl fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarParseError::Empty => f.write_str("empty entry"),
            ScalarParseError::Malformed(s) => write!(f, "malformed entry `{s}`"),
            ScalarParseError::ZeroDenominator => f.write_str("zero denominator"),
        }
    }
}

impl std::error::Error for ScalarParseError {}

fn parse_digits(s: &str, whole: &str) -> Result<BigInt, ScalarParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ScalarParseError::Malformed(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| ScalarParseError::Malformed(whole.to_string()))
}

/// `[-]?digits(/digits)?`
fn parse_rational(s: &str, whole: &str) -> Result<BigRational, ScalarParseError> {
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let n = parse_digits(n, whole)?;
            let d = parse_digits(d, whole)?;
            if d.is_zero() {
                return Err(ScalarParseError::ZeroDenominator);
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(parse_digits(body, whole)?),
    };
    Ok(if negative { -value } else { value })
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    /// Grammar: `R` or `R+Ri` or `R-Ri`, with `R = [-]?digits(/digits)?`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::from(parse_rational(s, s)?));
        };
        // The sign introducing the imaginary part is the last `+`/`-` that is
        // not the leading sign of the real part.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| ScalarParseError::Malformed(s.to_string()))?;
        let re = parse_rational(&body[..split], s)?;
        let im_text = &body[split + 1..];
        if im_text.starts_with('-') || im_text.starts_with('+') {
            return Err(ScalarParseError::Malformed(s.to_string()));
        }
        let mut im = parse_rational(im_text, s)?;
        if body.as_bytes()[split] == b'-' {
            im = -im;
        }
        Ok(Scalar::new(re, im))
    }
}
