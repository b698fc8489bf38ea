//! Polynomials in a single time variable t, used as coefficients of exact flows.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{Ring, RingKind, Scalar};

/// Dense coefficients c_0 + c_1 t + ..., with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct TPoly<S>(Vec<S>);

impl<S: Scalar> TPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TPoly(coeffs)
    }

    pub fn constant(c: S) -> Self {
        TPoly::new(vec![c])
    }

    /// c·t^n
    pub fn monomial(c: S, n: usize) -> Self {
        let mut v = vec![S::zero(); n + 1];
        v[n] = c;
        TPoly::new(v)
    }

    pub fn t() -> Self {
        TPoly::monomial(S::one(), 1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.0
    }

    /// Degree in t; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, t: &S) -> S {
        self.0
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        TPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| S::from_int(n as i64) * c)
                .collect(),
        )
    }

    /// Antiderivative vanishing at t = 0.
    pub fn integral(&self) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(S::zero());
        for (n, c) in self.0.iter().enumerate() {
            v.push(c.clone() / &S::from_int(n as i64 + 1));
        }
        TPoly::new(v)
    }

    /// ∫₀¹ p(t) dt
    pub fn integral_unit(&self) -> S {
        let mut acc = S::zero();
        for (n, c) in self.0.iter().enumerate() {
            acc += &(c.clone() / &S::from_int(n as i64 + 1));
        }
        acc
    }

    pub fn scale(&self, c: &S) -> Self {
        TPoly::new(self.0.iter().map(|x| x.clone() * c).collect())
    }

    /// p(c·t)
    pub fn rescale_time(&self, c: &S) -> Self {
        let mut pow = S::one();
        let mut v = Vec::with_capacity(self.0.len());
        for x in &self.0 {
            v.push(x.clone() * &pow);
            pow = pow * c;
        }
        TPoly::new(v)
    }
}

impl<S: Scalar> Zero for TPoly<S> {
    fn zero() -> Self {
        TPoly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: Scalar> One for TPoly<S> {
    fn one() -> Self {
        TPoly(vec![S::one()])
    }
}

impl<'a, S: Scalar> AddAssign<&'a TPoly<S>> for TPoly<S> {
    fn add_assign(&mut self, rhs: &'a TPoly<S>) {
        if rhs.0.len() > self.0.len() {
            self.0.resize(rhs.0.len(), S::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
        *self = TPoly::new(std::mem::take(&mut self.0));
    }
}

impl<'a, S: Scalar> SubAssign<&'a TPoly<S>> for TPoly<S> {
    fn sub_assign(&mut self, rhs: &'a TPoly<S>) {
        if rhs.0.len() > self.0.len() {
            self.0.resize(rhs.0.len(), S::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
        *self = TPoly::new(std::mem::take(&mut self.0));
    }
}

impl<'a, S: Scalar> Add<&'a TPoly<S>> for TPoly<S> {
    type Output = TPoly<S>;

    fn add(mut self, rhs: &'a TPoly<S>) -> TPoly<S> {
        self += rhs;
        self
    }
}

impl<S: Scalar> Add for TPoly<S> {
    type Output = TPoly<S>;

    fn add(self, rhs: TPoly<S>) -> TPoly<S> {
        self + &rhs
    }
}

impl<'a, S: Scalar> Sub<&'a TPoly<S>> for TPoly<S> {
    type Output = TPoly<S>;

    fn sub(mut self, rhs: &'a TPoly<S>) -> TPoly<S> {
        self -= rhs;
        self
    }
}

impl<'a, S: Scalar> Mul<&'a TPoly<S>> for TPoly<S> {
    type Output = TPoly<S>;

    fn mul(self, rhs: &'a TPoly<S>) -> TPoly<S> {
        if self.0.is_empty() || rhs.0.is_empty() {
            return TPoly::zero();
        }
        let mut v = vec![S::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += &(a.clone() * b);
            }
        }
        TPoly::new(v)
    }
}

impl<S: Scalar> Mul for TPoly<S> {
    type Output = TPoly<S>;

    fn mul(self, rhs: TPoly<S>) -> TPoly<S> {
        self * &rhs
    }
}

impl<S: Scalar> Neg for TPoly<S> {
    type Output = TPoly<S>;

    fn neg(self) -> TPoly<S> {
        TPoly(self.0.into_iter().map(Neg::neg).collect())
    }
}

impl<S: Scalar> Ring for TPoly<S> {
    const RING: RingKind = S::RING;

    fn from_bigint(n: BigInt) -> Self {
        TPoly::constant(S::from_bigint(n))
    }

    fn div_bigint(&self, n: &BigInt) -> Self {
        TPoly(self.0.iter().map(|c| c.div_bigint(n)).collect())
    }
}
