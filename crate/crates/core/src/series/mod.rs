//! Truncated formal tensor power series F(Φ; Φ^⊙i).
//!
//! A series is stored as a polynomial map: for each x-monomial x^m with
//! |m| ≤ K, the coefficient in Φ^⊙i. All outputs are exact in total degrees
//! ≤ K and higher terms are dropped eagerly.

pub mod blockform;
mod powers;

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};


use crate::error::{same_context, Error, Result};
use crate::scalar::{Context, Ring};
use crate::symtensor::{MultiIndex, SymTensor};

pub(crate) use powers::{Poly, Powers};

#[derive(Clone, Debug)]
pub struct TensorSeries<R> {
    ctx: Context,
    target: usize,
    start: usize,
    terms: BTreeMap<MultiIndex, SymTensor<R>>,
}

impl<R: PartialEq> PartialEq for TensorSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.target == other.target && self.terms == other.terms
    }
}

impl<R: Ring> TensorSeries<R> {
    pub fn zero(ctx: &Context, target: usize) -> Self {
        TensorSeries { ctx: *ctx, target, start: ctx.order() + 1, terms: BTreeMap::new() }
    }

    /// Scalar series with the single term c·x^m.
    pub fn scalar_monomial(ctx: &Context, m: MultiIndex, c: R) -> Self {
        let mut s = TensorSeries::zero(ctx, 0);
        s.add_term(m, SymTensor::scalar(ctx, c));
        s.start = s.valuation().unwrap_or(s.start);
        s
    }

    pub fn constant(ctx: &Context, c: R) -> Self {
        TensorSeries::scalar_monomial(ctx, MultiIndex::zero(ctx.dim()), c)
    }

    pub fn one(ctx: &Context) -> Self {
        TensorSeries::constant(ctx, R::one())
    }

    /// ξ as an element of F(Φ;Φ).
    pub fn identity(ctx: &Context) -> Self {
        let mut s = TensorSeries::zero(ctx, 1);
        for j in 0..ctx.dim() {
            let e = MultiIndex::unit(ctx.dim(), j);
            s.add_term(e.clone(), SymTensor::basis(ctx, e));
        }
        s.start = 1;
        s
    }

    pub fn from_terms(
        ctx: &Context,
        target: usize,
        terms: impl IntoIterator<Item = (MultiIndex, SymTensor<R>)>,
    ) -> Result<Self> {
        let mut s = TensorSeries::zero(ctx, target);
        for (m, v) in terms {
            if m.dim() != ctx.dim() {
                return Err(Error::parse(format!("multi-index {m:?} has wrong length")));
            }
            same_context(ctx, v.context())?;
            if v.degree() != target {
                return Err(Error::DegreeMismatch { expected: target, found: v.degree() });
            }
            if m.degree() > ctx.order() {
                return Err(Error::DegreeOverflow { degree: m.degree(), order: ctx.order() });
            }
            s.add_term(m, v);
        }
        s.start = s.valuation().unwrap_or(s.start);
        Ok(s)
    }

    pub fn from_scalar_terms(
        ctx: &Context,
        terms: impl IntoIterator<Item = (MultiIndex, R)>,
    ) -> Result<Self> {
        let c = *ctx;
        TensorSeries::from_terms(ctx, 0, terms.into_iter().map(|(m, x)| (m, SymTensor::scalar(&c, x))))
    }

    /// Φ-valued series from its N coordinate series.
    pub fn from_components(ctx: &Context, comps: &[TensorSeries<R>]) -> Result<Self> {
        if comps.len() != ctx.dim() {
            return Err(Error::DegreeMismatch { expected: ctx.dim(), found: comps.len() });
        }
        let mut s = TensorSeries::zero(ctx, 1);
        for (j, c) in comps.iter().enumerate() {
            same_context(ctx, &c.ctx)?;
            if c.target != 0 {
                return Err(Error::DegreeMismatch { expected: 0, found: c.target });
            }
            let e = SymTensor::basis(ctx, MultiIndex::unit(ctx.dim(), j));
            for (m, v) in &c.terms {
                s.add_term(m.clone(), e.scale(&v.as_scalar()));
            }
        }
        s.start = s.valuation().unwrap_or(s.start);
        Ok(s)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.ctx.order()
    }

    pub fn target_degree(&self) -> usize {
        self.target
    }

    /// Declared lower bound on the degrees of the stored terms.
    pub fn start_degree(&self) -> usize {
        self.start
    }

    /// Lowest degree that actually carries a nonzero term.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::degree).min()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &SymTensor<R>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &MultiIndex) -> SymTensor<R> {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| SymTensor::zero(&self.ctx, self.target))
    }

    /// Coefficient of x^m of a scalar series.
    pub fn scalar_coeff(&self, m: &MultiIndex) -> R {
        debug_assert_eq!(self.target, 0);
        self.terms.get(m).map(SymTensor::as_scalar).unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> SymTensor<R> {
        self.coeff(&MultiIndex::zero(self.ctx.dim()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: MultiIndex, v: SymTensor<R>) {
        if v.is_zero() || m.degree() > self.ctx.order() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_scaled(&v, &R::one());
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn with_start(mut self, start: usize) -> Self {
        self.start = start.min(self.ctx.order() + 1);
        if let Some(v) = self.valuation() {
            self.start = self.start.min(v);
        }
        self
    }

    /// Terms of total degree exactly k.
    pub fn homogeneous(&self, k: usize) -> Self {
        self.filter_degrees(|d| d == k).with_start(k)
    }

    /// Terms of total degree ≤ k.
    pub fn truncate(&self, k: usize) -> Self {
        let start = self.start;
        self.filter_degrees(|d| d <= k).with_start(start)
    }

    fn filter_degrees(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut s = TensorSeries::zero(&self.ctx, self.target);
        s.terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m.degree()))
            .map(|(m, v)| (m.clone(), v.clone()))
            .collect();
        s
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut s = TensorSeries::zero(&self.ctx, self.target);
        for (m, v) in &self.terms {
            s.add_term(m.clone(), v.scale(c));
        }
        s.with_start(self.start)
    }

    pub fn map<R2: Ring>(&self, ctx: &Context, mut f: impl FnMut(&R) -> R2) -> TensorSeries<R2> {
        let mut s = TensorSeries::zero(ctx, self.target);
        for (m, v) in &self.terms {
            s.add_term(m.clone(), v.map(&mut f).with_context(ctx));
        }
        s.with_start(self.start)
    }

    /// Coordinate series of a Φ-valued series.
    pub fn component(&self, j: usize) -> TensorSeries<R> {
        debug_assert_eq!(self.target, 1);
        let e = MultiIndex::unit(self.ctx.dim(), j);
        let mut s = TensorSeries::zero(&self.ctx, 0);
        for (m, v) in &self.terms {
            s.add_term(m.clone(), SymTensor::scalar(&self.ctx, v.coeff(&e)));
        }
        s.with_start(self.start)
    }

    pub(crate) fn component_polys(&self) -> Vec<Poly<R>> {
        let dim = self.ctx.dim();
        let mut out = vec![Poly::new(); dim];
        for (m, v) in &self.terms {
            for (e, c) in v.terms() {
                let j = e.first_nonzero().expect("degree-1 index");
                out[j].insert(m.clone(), c.clone());
            }
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        same_context(&self.ctx, &other.ctx)
    }

    fn require_no_constant(&self) -> Result<()> {
        if self.constant_term().is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    fn require_target(&self, target: usize) -> Result<()> {
        if self.target == target {
            Ok(())
        } else {
            Err(Error::DegreeMismatch { expected: target, found: self.target })
        }
    }

    /// Symmetric tensor product D_k = Σ B_l ⊙ C_{k−l}.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let order = self.ctx.order();
        let mut s = TensorSeries::zero(&self.ctx, self.target + other.target);
        for (m1, a) in &self.terms {
            let d1 = m1.degree();
            for (m2, b) in &other.terms {
                if d1 + m2.degree() <= order {
                    s.add_term(m1.add(m2), a.product_unchecked(b));
                }
            }
        }
        Ok(s.with_start(self.start + other.start))
    }

    /// Product of scalar series.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_target(0)?;
        other.require_target(0)?;
        self.tensor(other)
    }

    /// Substitution C(B(ξ)); B must have no constant term.
    pub fn compose(&self, b: &Self) -> Result<Self> {
        self.check_same(b)?;
        b.require_target(1)?;
        b.require_no_constant()?;
        let mut powers = Powers::from_series(b);
        let order = self.ctx.order();
        let mut s = TensorSeries::zero(&self.ctx, self.target);
        for (m, v) in &self.terms {
            for d in m.degree()..=order {
                for (q, c) in powers.part(m, d) {
                    s.add_term(q, v.scale(&c));
                }
            }
        }
        let bstart = b.start.max(1);
        Ok(s.with_start(self.start.saturating_mul(bstart)))
    }

    /// ∂/∂x_j applied to every coefficient.
    pub fn partial(&self, j: usize) -> Self {
        let mut s = TensorSeries::zero(&self.ctx, self.target);
        for (m, v) in &self.terms {
            if let Some(dm) = m.sub_unit(j) {
                s.add_term(dm, v.scale(&R::from_int(m.get(j) as i64)));
            }
        }
        s.with_start(self.start.saturating_sub(1))
    }

    /// D_ζ C = Σ_j ζ_j ∂C/∂x_j.
    pub fn dirderiv_vector(&self, zeta: &[R]) -> Result<Self> {
        if zeta.len() != self.ctx.dim() {
            return Err(Error::DegreeMismatch { expected: self.ctx.dim(), found: zeta.len() });
        }
        let mut s = TensorSeries::zero(&self.ctx, self.target);
        for (j, z) in zeta.iter().enumerate() {
            if !z.is_zero() {
                s = &s + &self.partial(j).scale(z);
            }
        }
        Ok(s.with_start(self.start.saturating_sub(1)))
    }

    /// D_B C = Σ_j B_j(x) ∂C/∂x_j, truncated at K.
    pub fn dirderiv_series(&self, b: &Self) -> Result<Self> {
        self.check_same(b)?;
        b.require_target(1)?;
        b.require_no_constant()?;
        let order = self.ctx.order();
        let comps = b.component_polys();
        let mut s = TensorSeries::zero(&self.ctx, self.target);
        for (m, v) in &self.terms {
            for (j, bj) in comps.iter().enumerate() {
                let Some(dm) = m.sub_unit(j) else { continue };
                let w = R::from_int(m.get(j) as i64);
                let base = dm.degree();
                for (q, c) in bj {
                    if base + q.degree() <= order {
                        s.add_term(dm.add(q), v.scale(&(c.clone() * &w)));
                    }
                }
            }
        }
        let start = (self.start + b.start.max(1)).saturating_sub(1);
        Ok(s.with_start(start))
    }

    /// Largest x-degree with a nonzero term.
    pub fn top_degree(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::degree).max()
    }
}

/// B = Σ q_l A^l for scalar A with A₀ = 0, evaluated by Horner's rule.
pub fn scalar_subst<R: Ring>(q: &[R], a: &TensorSeries<R>) -> Result<TensorSeries<R>> {
    a.require_target(0)?;
    a.require_no_constant()?;
    let ctx = *a.context();
    let top = q.len().min(ctx.order() + 1);
    let mut acc = TensorSeries::zero(&ctx, 0);
    for ql in q[..top].iter().rev() {
        acc = &acc.mul(a)? + &TensorSeries::constant(&ctx, ql.clone());
    }
    Ok(acc)
}

/// Exact rational 1/n! lifted into the ring.
pub(crate) fn inv_factorial<R: Ring>(n: usize) -> R {
    R::one().div_bigint(&crate::combinat::factorial(n))
}

impl<R: Ring> Add for &TensorSeries<R> {
    type Output = TensorSeries<R>;

    fn add(self, rhs: &TensorSeries<R>) -> TensorSeries<R> {
        assert_eq!(self.ctx, rhs.ctx, "context mismatch");
        assert_eq!(self.target, rhs.target, "target degree mismatch");
        let mut s = self.clone();
        for (m, v) in &rhs.terms {
            s.add_term(m.clone(), v.clone());
        }
        let start = self.start.min(rhs.start);
        s.with_start(start)
    }
}

impl<R: Ring> Sub for &TensorSeries<R> {
    type Output = TensorSeries<R>;

    fn sub(self, rhs: &TensorSeries<R>) -> TensorSeries<R> {
        self + &(-rhs)
    }
}

impl<R: Ring> Neg for &TensorSeries<R> {
    type Output = TensorSeries<R>;

    fn neg(self) -> TensorSeries<R> {
        self.scale(&-R::one())
    }
}

impl<R: Ring> TensorSeries<R> {
    /// True if every coefficient is zero in degrees below k.
    pub fn vanishes_below(&self, k: usize) -> bool {
        self.valuation().is_none_or(|v| v >= k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, RingKind};

    fn ctx(n: usize, k: usize) -> Context {
        Context::new(n, k, RingKind::Rational).unwrap()
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.iter().copied())
    }

    /// Scalar 1D series from coefficient list.
    fn s1(c: &Context, v: &[i64]) -> TensorSeries<Rational> {
        TensorSeries::from_scalar_terms(
            c,
            v.iter().enumerate().map(|(k, &x)| (mi(&[k as u32]), Rational::from_int(x))),
        )
        .unwrap()
    }

    /// Φ-valued 1D series from coefficient list.
    fn v1(c: &Context, v: &[i64]) -> TensorSeries<Rational> {
        TensorSeries::from_components(c, &[s1(c, v)]).unwrap()
    }

    #[test]
    fn products() {
        let c = ctx(1, 6);
        let a = s1(&c, &[1, 1]);
        assert_eq!(a.mul(&a).unwrap(), s1(&c, &[1, 2, 1]));
        let c2 = ctx(2, 4);
        let x1 = TensorSeries::scalar_monomial(&c2, mi(&[1, 0]), Rational::from_int(1));
        let x2 = TensorSeries::scalar_monomial(&c2, mi(&[0, 1]), Rational::from_int(1));
        let one = TensorSeries::one(&c2);
        let p = (&one + &x1).mul(&(&one + &x2)).unwrap();
        let x12 = TensorSeries::scalar_monomial(&c2, mi(&[1, 1]), Rational::from_int(1));
        assert_eq!(p, &(&(&one + &x1) + &x2) + &x12);
        let alt = s1(&c, &[1, -1, 1, -1, 1, -1, 1]);
        assert_eq!(a.mul(&alt).unwrap(), TensorSeries::one(&c));
    }

    #[test]
    fn tensor_square() {
        let c = ctx(1, 6);
        let b = v1(&c, &[0, 1, 1]);
        let sq = b.tensor(&b).unwrap();
        assert_eq!(sq.target_degree(), 2);
        let e2 = SymTensor::basis(&c, mi(&[2]));
        for (k, want) in [(2, 1), (3, 2), (4, 1)] {
            assert_eq!(sq.coeff(&mi(&[k])), e2.scale(&Rational::from_int(want)));
        }
        assert!(b.tensor(&TensorSeries::zero(&c, 1)).unwrap().is_zero());
    }

    #[test]
    fn composition() {
        let c = ctx(1, 6);
        let sq = s1(&c, &[0, 0, 1]);
        let b = v1(&c, &[0, 1, 1]);
        assert_eq!(sq.compose(&b).unwrap(), s1(&c, &[0, 0, 1, 2, 1]));
        assert_eq!(sq.compose(&TensorSeries::identity(&c)).unwrap(), sq);
        assert_eq!(
            sq.compose(&v1(&c, &[1, 1])).unwrap_err(),
            Error::NonzeroConstantTerm
        );

        let c2 = ctx(2, 5);
        let one = Rational::from_int(1);
        let x1x2 = TensorSeries::scalar_monomial(&c2, mi(&[1, 1]), one.clone());
        let b1 = TensorSeries::from_scalar_terms(&c2, [(mi(&[1, 0]), one.clone()), (mi(&[0, 2]), one.clone())]).unwrap();
        let b2 = TensorSeries::scalar_monomial(&c2, mi(&[0, 1]), one.clone());
        let b = TensorSeries::from_components(&c2, &[b1, b2]).unwrap();
        let want = TensorSeries::from_scalar_terms(&c2, [(mi(&[1, 1]), one.clone()), (mi(&[0, 3]), one)]).unwrap();
        assert_eq!(x1x2.compose(&b).unwrap(), want);
    }

    #[test]
    fn substitution() {
        let c = ctx(1, 6);
        let exp_q: Vec<Rational> = (0..=6).map(inv_factorial).collect();
        let e = scalar_subst(&exp_q, &s1(&c, &[0, 0, 1])).unwrap();
        assert_eq!(e.scalar_coeff(&mi(&[4])), Rational::new(1.into(), 2.into()));
        assert_eq!(e.scalar_coeff(&mi(&[6])), Rational::new(1.into(), 6.into()));
        assert_eq!(e.scalar_coeff(&mi(&[3])), Rational::from_int(0));
        let geo = scalar_subst(&vec![Rational::from_int(1); 7], &s1(&c, &[0, 1])).unwrap();
        assert_eq!(geo, s1(&c, &[1, 1, 1, 1, 1, 1, 1]));
        assert!(scalar_subst(&exp_q, &s1(&c, &[1, 1])).is_err());
    }

    #[test]
    fn derivatives() {
        let c = ctx(1, 6);
        let one = Rational::from_int(1);
        assert_eq!(s1(&c, &[0, 0, 0, 1]).dirderiv_vector(std::slice::from_ref(&one)).unwrap(), s1(&c, &[0, 0, 3]));
        let c2 = ctx(2, 5);
        let x1sq = TensorSeries::scalar_monomial(&c2, mi(&[2, 0]), one.clone());
        let zero = Rational::from_int(0);
        assert!(x1sq.dirderiv_vector(&[zero.clone(), one.clone()]).unwrap().is_zero());
        let x1x2 = TensorSeries::scalar_monomial(&c2, mi(&[1, 1]), one.clone());
        let x2 = TensorSeries::scalar_monomial(&c2, mi(&[0, 1]), one.clone());
        assert_eq!(x1x2.dirderiv_vector(&[one, zero]).unwrap(), x2);

        let sq = s1(&c, &[0, 0, 1]);
        assert_eq!(sq.dirderiv_series(&v1(&c, &[0, 1, 0, 1])).unwrap(), s1(&c, &[0, 0, 2, 0, 2]));
        assert_eq!(sq.dirderiv_series(&v1(&c, &[0, 0, 0, 1])).unwrap(), s1(&c, &[0, 0, 0, 0, 2]));
        let b = v1(&c, &[0, 2, 3, 0, 1]);
        assert_eq!(TensorSeries::identity(&c).dirderiv_series(&b).unwrap(), b);
    }
}
