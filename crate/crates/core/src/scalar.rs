//! Exact coefficient rings and the evaluation context.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Gaussian = Complex<BigRational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Rational,
    Gaussian,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Rational => "rational",
            RingKind::Gaussian => "gaussian",
        })
    }
}

impl FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(RingKind::Rational),
            "gaussian" => Ok(RingKind::Gaussian),
            other => Err(Error::parse(format!("unknown ring `{other}`"))),
        }
    }
}

/// Commutative Q-algebra with unit. Everything in the crate is generic over
/// this, so the same code runs on scalars and on polynomials in time.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    const RING: RingKind;

    fn from_bigint(n: BigInt) -> Self;

    /// Exact division by a nonzero integer.
    fn div_bigint(&self, n: &BigInt) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    fn mul_bigint(&self, n: &BigInt) -> Self {
        self.clone() * &Self::from_bigint(n.clone())
    }
}

/// A field of exact scalars with a canonical string form.
pub trait Scalar: Ring + for<'a> Div<&'a Self, Output = Self> {
    fn from_rational(q: Rational) -> Self;

    fn parse(s: &str) -> Result<Self>;

    fn render(&self) -> String;

    /// Small random value used by the property suites.
    fn random<G: Rng + ?Sized>(rng: &mut G) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num.into(), den.into()))
    }
}

impl Ring for Rational {
    const RING: RingKind = RingKind::Rational;

    fn from_bigint(n: BigInt) -> Self {
        Rational::from_integer(n)
    }

    fn div_bigint(&self, n: &BigInt) -> Self {
        self / Rational::from_integer(n.clone())
    }
}

impl Scalar for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }

    fn parse(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn render(&self) -> String {
        render_rational(self)
    }

    fn random<G: Rng + ?Sized>(rng: &mut G) -> Self {
        random_rational(rng)
    }
}

impl Ring for Gaussian {
    const RING: RingKind = RingKind::Gaussian;

    fn from_bigint(n: BigInt) -> Self {
        Complex::new(Rational::from_integer(n), Rational::zero())
    }

    fn div_bigint(&self, n: &BigInt) -> Self {
        let d = Rational::from_integer(n.clone());
        Complex::new(&self.re / &d, &self.im / &d)
    }
}

impl Scalar for Gaussian {
    fn from_rational(q: Rational) -> Self {
        Complex::new(q, Rational::zero())
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Complex::new(parse_rational(s)?, Rational::zero()));
        };
        // The imaginary part starts at the last sign that is not leading.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(i) => Ok(Complex::new(
                parse_rational(&body[..i])?,
                parse_rational(&body[i..])?,
            )),
            None => Ok(Complex::new(Rational::zero(), parse_rational(body)?)),
        }
    }

    fn render(&self) -> String {
        if self.im.is_zero() {
            return render_rational(&self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!(
            "{}{}{}i",
            render_rational(&self.re),
            sign,
            render_rational(&self.im.abs())
        )
    }

    fn random<G: Rng + ?Sized>(rng: &mut G) -> Self {
        let re = random_rational(rng);
        let im = if rng.gen_bool(0.5) {
            random_rational(rng)
        } else {
            Rational::zero()
        };
        Complex::new(re, im)
    }
}

/// Always `p/q` in lowest terms, with a leading `-` for negatives.
pub fn render_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    let bad = || Error::parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn random_rational<G: Rng + ?Sized>(rng: &mut G) -> Rational {
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=4);
    Rational::new(num.into(), den.into())
}

/// Dimension, truncation order and coefficient ring shared by a family of objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Context {
    dim: usize,
    order: usize,
    ring: RingKind,
}

impl Context {
    pub fn new(dim: usize, order: usize, ring: RingKind) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidContext("dim must be at least 1".into()));
        }
        if order == 0 {
            return Err(Error::InvalidContext("order must be at least 1".into()));
        }
        Ok(Context { dim, order, ring })
    }

    /// Context whose ring tag matches the coefficient type `R`.
    pub fn of<R: Ring>(dim: usize, order: usize) -> Result<Self> {
        Context::new(dim, order, R::RING)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ring(&self) -> RingKind {
        self.ring
    }

    pub fn with_order(&self, order: usize) -> Result<Self> {
        Context::new(self.dim, order, self.ring)
    }

    pub fn with_ring(&self, ring: RingKind) -> Self {
        Context { ring, ..*self }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(dim {}, order {}, {})", self.dim, self.order, self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_strings() {
        assert_eq!(render_rational(&q(3, 1)), "3/1");
        assert_eq!(render_rational(&q(-2, 4)), "-1/2");
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_rational("+7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gaussian_strings() {
        let z = Complex::new(q(1, 2), q(-3, 1));
        assert_eq!(z.render(), "1/2-3/1i");
        assert_eq!(Gaussian::parse("1/2-3/1i").unwrap(), z);
        assert_eq!(Gaussian::parse("-1/2+3i").unwrap(), Complex::new(q(-1, 2), q(3, 1)));
        assert_eq!(Gaussian::parse("-5i").unwrap(), Complex::new(q(0, 1), q(-5, 1)));
        assert_eq!(Gaussian::parse("4/3").unwrap().render(), "4/3");
    }

    #[test]
    fn context_validation() {
        assert!(Context::new(0, 3, RingKind::Rational).is_err());
        assert!(Context::new(1, 0, RingKind::Rational).is_err());
        let c = Context::of::<Gaussian>(2, 4).unwrap();
        assert_eq!(c.ring(), RingKind::Gaussian);
    }
}
