//! The groups F₀(Φ) (multiplication), F₁(Φ) (substitution) and their
//! semidirect product S(Φ), together with exp/log, brackets and flows.

mod f0;
mod f1;
mod semidirect;

pub use f0::{f0_evolve, f0_exp, f0_flow, f0_inverse, f0_log, f0_residual};
pub use f1::{f1_bracket, f1_evolve, f1_exp, f1_flow, f1_inverse, f1_log, f1_residual, f1_time_flow};
pub use semidirect::{s_bracket, s_evolve, s_exp, s_flow, s_inverse, s_log, s_mul, s_residual, SeriesPair};

use crate::error::{same_context, Error, Result};
use crate::scalar::{Context, Ring, Scalar};
use crate::series::TensorSeries;
use crate::symtensor::BlockOp;
use crate::tpoly::TPoly;

/// Scalar series with constant term 1.
#[derive(Clone, Debug, PartialEq)]
pub struct F0Element<R> {
    series: TensorSeries<R>,
}

impl<R: Ring> F0Element<R> {
    pub fn new(series: TensorSeries<R>) -> Result<Self> {
        if series.target_degree() != 0 {
            return Err(Error::DegreeMismatch { expected: 0, found: series.target_degree() });
        }
        if series.constant_term().as_scalar() != R::one() {
            return Err(Error::Precondition("F0 element must have constant term 1".into()));
        }
        Ok(F0Element { series })
    }

    pub fn one(ctx: &Context) -> Self {
        F0Element { series: TensorSeries::one(ctx) }
    }

    pub fn series(&self) -> &TensorSeries<R> {
        &self.series
    }

    pub fn into_series(self) -> TensorSeries<R> {
        self.series
    }

    pub fn context(&self) -> &Context {
        self.series.context()
    }

    /// Group product A¹·A².
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(F0Element { series: self.series.mul(&other.series)? })
    }
}

/// Φ-valued series with B₀ = 0 and B₁ = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct F1Element<R> {
    series: TensorSeries<R>,
}

impl<R: Ring> F1Element<R> {
    pub fn new(series: TensorSeries<R>) -> Result<Self> {
        if series.target_degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: series.target_degree() });
        }
        let ctx = *series.context();
        if !series.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if series.homogeneous(1) != TensorSeries::identity(&ctx) {
            return Err(Error::Precondition("F1 element must have linear term 1".into()));
        }
        Ok(F1Element { series })
    }

    pub fn identity(ctx: &Context) -> Self {
        F1Element { series: TensorSeries::identity(ctx) }
    }

    pub fn series(&self) -> &TensorSeries<R> {
        &self.series
    }

    pub fn into_series(self) -> TensorSeries<R> {
        self.series
    }

    pub fn context(&self) -> &Context {
        self.series.context()
    }

    /// Group product B¹(B²(ξ)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(F1Element { series: self.series.compose(&other.series)? })
    }
}

/// Element (A, B) of S(Φ).
#[derive(Clone, Debug, PartialEq)]
pub struct SPair<R> {
    pub a: F0Element<R>,
    pub b: F1Element<R>,
}

impl<R: Ring> SPair<R> {
    pub fn new(a: F0Element<R>, b: F1Element<R>) -> Result<Self> {
        same_context(a.context(), b.context())?;
        Ok(SPair { a, b })
    }

    pub fn from_series(a: TensorSeries<R>, b: TensorSeries<R>) -> Result<Self> {
        SPair::new(F0Element::new(a)?, F1Element::new(b)?)
    }

    pub fn identity(ctx: &Context) -> Self {
        SPair { a: F0Element::one(ctx), b: F1Element::identity(ctx) }
    }

    pub fn context(&self) -> &Context {
        self.a.context()
    }
}

/// Element (α, β) of 𝒲(Φ): α₀ = 0, β vanishes below degree 2.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPair<R> {
    pub alpha: TensorSeries<R>,
    pub beta: TensorSeries<R>,
}

impl<R: Ring> AlgebraPair<R> {
    pub fn new(alpha: TensorSeries<R>, beta: TensorSeries<R>) -> Result<Self> {
        same_context(alpha.context(), beta.context())?;
        check_alpha(&alpha)?;
        check_beta(&beta)?;
        Ok(AlgebraPair { alpha, beta })
    }

    pub fn zero(ctx: &Context) -> Self {
        AlgebraPair { alpha: TensorSeries::zero(ctx, 0), beta: TensorSeries::zero(ctx, 1) }
    }

    pub fn context(&self) -> &Context {
        self.alpha.context()
    }

    pub fn scale(&self, c: &R) -> Self {
        AlgebraPair { alpha: self.alpha.scale(c), beta: self.beta.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_context(self.context(), other.context())?;
        Ok(AlgebraPair { alpha: &self.alpha + &other.alpha, beta: &self.beta + &other.beta })
    }

    /// Degree-k blocks α_k ∈ L(Φ^⊙k, F) for k = 0..=K.
    pub fn alpha_blocks(&self) -> Result<Vec<BlockOp<R>>> {
        crate::series::blockform::blocks(&self.alpha)
    }

    /// Degree-k blocks β_k ∈ L(Φ^⊙k, Φ) for k = 0..=K.
    pub fn beta_blocks(&self) -> Result<Vec<BlockOp<R>>> {
        crate::series::blockform::blocks(&self.beta)
    }
}

pub(crate) fn check_alpha<R: Ring>(alpha: &TensorSeries<R>) -> Result<()> {
    if alpha.target_degree() != 0 {
        return Err(Error::DegreeMismatch { expected: 0, found: alpha.target_degree() });
    }
    if !alpha.vanishes_below(1) {
        return Err(Error::Precondition("alpha must have zero constant term".into()));
    }
    Ok(())
}

pub(crate) fn check_beta<R: Ring>(beta: &TensorSeries<R>) -> Result<()> {
    if beta.target_degree() != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: beta.target_degree() });
    }
    if !beta.vanishes_below(2) {
        return Err(Error::Precondition("beta must start at degree 2".into()));
    }
    Ok(())
}

/// Maximal t-degree of the coefficients of a time-dependent object.
pub trait TDegree {
    fn t_degree(&self) -> usize;
}

impl<S: Scalar> TDegree for TensorSeries<TPoly<S>> {
    fn t_degree(&self) -> usize {
        self.terms()
            .flat_map(|(_, v)| v.terms().map(|(_, p)| p.degree()).collect::<Vec<_>>())
            .max()
            .unwrap_or(0)
    }
}

impl<S: Scalar> TDegree for AlgebraPair<TPoly<S>> {
    fn t_degree(&self) -> usize {
        self.alpha.t_degree().max(self.beta.t_degree())
    }
}

/// A curve t ↦ value(t) on [0,1] whose coefficients are polynomials in t of
/// degree at most `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeCurve<T> {
    value: T,
    bound: usize,
}

impl<T: TDegree> TimeCurve<T> {
    pub fn new(value: T, bound: usize) -> Result<Self> {
        let degree = value.t_degree();
        if degree > bound {
            return Err(Error::NonPolynomialCurve { degree, bound });
        }
        Ok(TimeCurve { value, bound })
    }

    /// Curve whose bound is its own t-degree.
    pub fn from_value(value: T) -> Self {
        let bound = value.t_degree();
        TimeCurve { value, bound }
    }

    pub fn value(&self) -> &T {
        &self.value
    }

    pub fn bound(&self) -> usize {
        self.bound
    }
}

/// Coefficients as constant polynomials in t.
pub fn lift<S: Scalar>(s: &TensorSeries<S>) -> TensorSeries<TPoly<S>> {
    s.map(s.context(), |c| TPoly::constant(c.clone()))
}

/// Evaluate every coefficient at time t.
pub fn eval_at<S: Scalar>(s: &TensorSeries<TPoly<S>>, t: &S) -> TensorSeries<S> {
    s.map(s.context(), |p| p.eval(t))
}

/// Coefficientwise ∫₀¹ dt.
pub fn integrate_unit<S: Scalar>(s: &TensorSeries<TPoly<S>>) -> TensorSeries<S> {
    s.map(s.context(), TPoly::integral_unit)
}

/// Coefficientwise ∫₀ᵗ.
pub fn integrate<S: Scalar>(s: &TensorSeries<TPoly<S>>) -> TensorSeries<TPoly<S>> {
    s.map(s.context(), TPoly::integral)
}

/// Coefficientwise d/dt.
pub fn time_derivative<S: Scalar>(s: &TensorSeries<TPoly<S>>) -> TensorSeries<TPoly<S>> {
    s.map(s.context(), TPoly::derivative)
}

/// Constant curve.
pub fn constant_curve<S: Scalar>(w: &AlgebraPair<S>) -> TimeCurve<AlgebraPair<TPoly<S>>> {
    TimeCurve::from_value(AlgebraPair { alpha: lift(&w.alpha), beta: lift(&w.beta) })
}

/// Homogeneous parts by degree, 0..=K.
pub(crate) fn graded<R: Ring>(s: &TensorSeries<R>) -> Vec<TensorSeries<R>> {
    (0..=s.order()).map(|k| s.homogeneous(k)).collect()
}
