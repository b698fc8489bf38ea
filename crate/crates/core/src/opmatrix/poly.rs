use std::ops::{Add, Sub};

use crate::error::{same_context, Error, Result};
use crate::scalar::{Context, Ring, Scalar};
use crate::series::TensorSeries;
use crate::symtensor::{enumerate, DualVector, MultiIndex, SymTensor};
use crate::tpoly::TPoly;
use num_traits::Zero;

/// p(ω) = Σ_k ⟨ω^⊗k, f^(k)⟩. Since ⟨ω^⊗k, e_⊙m⟩ = w^m, the coefficients of
/// f^(k) are exactly the coefficients of p in the coordinates w of ω.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyOnDual<R> {
    ctx: Context,
    components: Vec<SymTensor<R>>,
}

impl<R: Ring> PolyOnDual<R> {
    /// Missing trailing components are zero.
    pub fn new(ctx: &Context, mut components: Vec<SymTensor<R>>) -> Result<Self> {
        if components.len() > ctx.order() + 1 {
            return Err(Error::DegreeOverflow { degree: components.len() - 1, order: ctx.order() });
        }
        for (k, f) in components.iter().enumerate() {
            same_context(ctx, f.context())?;
            if f.degree() != k {
                return Err(Error::DegreeMismatch { expected: k, found: f.degree() });
            }
        }
        for k in components.len()..=ctx.order() {
            components.push(SymTensor::zero(ctx, k));
        }
        Ok(PolyOnDual { ctx: *ctx, components })
    }

    pub fn zero(ctx: &Context) -> Self {
        PolyOnDual { ctx: *ctx, components: (0..=ctx.order()).map(|k| SymTensor::zero(ctx, k)).collect() }
    }

    pub fn constant(ctx: &Context, c: R) -> Self {
        let mut p = PolyOnDual::zero(ctx);
        p.components[0] = SymTensor::scalar(ctx, c);
        p
    }

    /// c·w^m
    pub fn monomial(ctx: &Context, m: MultiIndex, c: R) -> Result<Self> {
        PolyOnDual::from_coefficients(ctx, [(m, c)])
    }

    pub fn from_coefficients(ctx: &Context, terms: impl IntoIterator<Item = (MultiIndex, R)>) -> Result<Self> {
        let mut p = PolyOnDual::zero(ctx);
        for (m, c) in terms {
            if m.dim() != ctx.dim() {
                return Err(Error::DegreeMismatch { expected: ctx.dim(), found: m.dim() });
            }
            let n = m.degree();
            if n > ctx.order() {
                return Err(Error::DegreeOverflow { degree: n, order: ctx.order() });
            }
            p.components[n].add_term(m, c);
        }
        Ok(p)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn components(&self) -> &[SymTensor<R>] {
        &self.components
    }

    pub fn coeff(&self, m: &MultiIndex) -> R {
        match self.components.get(m.degree()) {
            Some(f) => f.coeff(m),
            None => R::zero(),
        }
    }

    /// Nonzero coefficients, by degree then lex.
    pub fn coefficients(&self) -> impl Iterator<Item = (&MultiIndex, &R)> {
        self.components.iter().flat_map(SymTensor::terms)
    }

    pub fn degree(&self) -> Option<usize> {
        self.components.iter().rposition(|f| !f.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn scale(&self, c: &R) -> Self {
        PolyOnDual { ctx: self.ctx, components: self.components.iter().map(|f| f.scale(c)).collect() }
    }

    pub fn eval(&self, omega: &DualVector<R>) -> Result<R> {
        let mut acc = R::zero();
        for f in &self.components {
            if !f.is_zero() {
                acc += &f.pairing(omega)?;
            }
        }
        Ok(acc)
    }

    /// D_σ = Σ_j σ_j ∂/∂w_j
    pub fn dsigma(&self, sigma: &DualVector<R>) -> Result<Self> {
        same_context(&self.ctx, sigma.context())?;
        let mut out = PolyOnDual::zero(&self.ctx);
        for (m, c) in self.coefficients() {
            for (j, s) in sigma.components().iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                if let Some(q) = m.sub_unit(j) {
                    let x = c.mul_bigint(&m.get(j).into()) * s;
                    out.components[q.degree()].add_term(q, x);
                }
            }
        }
        Ok(out)
    }

    /// M(ξ)p = ⟨ω, ξ⟩·p; fails if p reaches degree K.
    pub fn mult(&self, xi: &[R]) -> Result<Self> {
        if xi.len() != self.ctx.dim() {
            return Err(Error::DegreeMismatch { expected: self.ctx.dim(), found: xi.len() });
        }
        let k = self.ctx.order();
        if !self.components[k].is_zero() {
            return Err(Error::DegreeOverflow { degree: k + 1, order: k });
        }
        let mut out = PolyOnDual::zero(&self.ctx);
        for (m, c) in self.coefficients() {
            for (j, x) in xi.iter().enumerate() {
                if !x.is_zero() {
                    let q = m.add_unit(j);
                    out.components[q.degree()].add_term(q, c.clone() * x);
                }
            }
        }
        Ok(out)
    }
}

/// ∇^k p as a Φ^⊙k-valued polynomial in w: the coefficient of w^(m−j)·e_⊙j
/// is multinomial(k; j)·(m)_j·p[m], which is (n)_k(ω^⊗(n−k) ⊙ 1_k)f^(n)
/// written in coordinates.
pub fn grad_pow<R: Ring>(p: &PolyOnDual<R>, k: usize) -> TensorSeries<R> {
    let ctx = p.ctx;
    let mut out = TensorSeries::zero(&ctx, k);
    let js = enumerate(ctx.dim(), k);
    for (m, c) in p.coefficients() {
        for j in &js {
            let Some(q) = m.checked_sub(j) else { continue };
            let w = m.falling(j) * j.multinomial();
            let mut v = SymTensor::zero(&ctx, k);
            v.add_term(j.clone(), c.mul_bigint(&w));
            out.add_term(q, v);
        }
    }
    out
}

/// D_σ^k p at ω, computed as k!·[t^k] p(ω + tσ), i.e. from
/// ⟨(ω + tσ)^⊗n, f^(n)⟩ without touching coordinates of p.
pub fn polarized_derivative<S: Scalar>(
    p: &PolyOnDual<S>,
    omega: &DualVector<S>,
    sigma: &DualVector<S>,
    k: usize,
) -> Result<S> {
    same_context(&p.ctx, omega.context())?;
    same_context(&p.ctx, sigma.context())?;
    let line: Vec<TPoly<S>> = omega
        .components()
        .iter()
        .zip(sigma.components())
        .map(|(w, s)| TPoly::new(vec![w.clone(), s.clone()]))
        .collect();
    let line = DualVector::new(&p.ctx, line)?;
    let mut acc = TPoly::zero();
    for f in &p.components {
        if !f.is_zero() {
            let lifted: SymTensor<TPoly<S>> = f.map(|c| TPoly::constant(c.clone()));
            let x = lifted.pairing(&line)?;
            acc += &x;
        }
    }
    let c = acc.coeffs().get(k).cloned().unwrap_or_else(S::zero);
    Ok(c.mul_bigint(&crate::combinat::factorial(k)))
}

impl<R: Ring> Add for &PolyOnDual<R> {
    type Output = PolyOnDual<R>;

    fn add(self, rhs: &PolyOnDual<R>) -> PolyOnDual<R> {
        assert_eq!(self.ctx, rhs.ctx, "context mismatch");
        let components = self.components.iter().zip(&rhs.components).map(|(a, b)| a + b).collect();
        PolyOnDual { ctx: self.ctx, components }
    }
}

impl<R: Ring> Sub for &PolyOnDual<R> {
    type Output = PolyOnDual<R>;

    fn sub(self, rhs: &PolyOnDual<R>) -> PolyOnDual<R> {
        assert_eq!(self.ctx, rhs.ctx, "context mismatch");
        let components = self.components.iter().zip(&rhs.components).map(|(a, b)| a - b).collect();
        PolyOnDual { ctx: self.ctx, components }
    }
}
