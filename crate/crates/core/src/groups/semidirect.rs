use crate::error::{same_context, Result};
use crate::scalar::{Ring, Scalar};
use crate::series::{Powers, TensorSeries};
use crate::tpoly::TPoly;

use super::f1::field_flow;
use super::{
    check_alpha, eval_at, f0_exp, f0_inverse, f0_log, f1_inverse, f1_log, f1_time_flow, graded,
    integrate, time_derivative, AlgebraPair, F0Element, F1Element, SPair, TimeCurve,
};

/// (A¹, B¹) ∗ (A², B²) = (A¹(B²)·A², B¹(B²))
pub fn s_mul<R: Ring>(p1: &SPair<R>, p2: &SPair<R>) -> Result<SPair<R>> {
    same_context(p1.context(), p2.context())?;
    let b2 = p2.b.series();
    let a = p1.a.series().compose(b2)?.mul(p2.a.series())?;
    let b = p1.b.series().compose(b2)?;
    SPair::from_series(a, b)
}

/// (A, B)⁻¹ = (A⁻¹(B^⟨−1⟩), B^⟨−1⟩)
pub fn s_inverse<R: Ring>(p: &SPair<R>) -> SPair<R> {
    let binv = f1_inverse(&p.b);
    let ainv = f0_inverse(&p.a);
    let a = ainv.series().compose(binv.series()).expect("no constant term");
    SPair::new(F0Element::new(a).expect("constant term 1"), binv).expect("same context")
}

/// α = D_{β²}α¹ − D_{β¹}α², β = D_{β²}β¹ − D_{β¹}β²
pub fn s_bracket<R: Ring>(w1: &AlgebraPair<R>, w2: &AlgebraPair<R>) -> Result<AlgebraPair<R>> {
    same_context(w1.context(), w2.context())?;
    let alpha = &w1.alpha.dirderiv_series(&w2.beta)? - &w2.alpha.dirderiv_series(&w1.beta)?;
    let beta = &w1.beta.dirderiv_series(&w2.beta)? - &w2.beta.dirderiv_series(&w1.beta)?;
    AlgebraPair::new(alpha, beta)
}

/// ∫₀¹ θ(r)^m dr for every monomial of a scalar series, accumulated with its
/// coefficient; `only` restricts to one output degree.
fn integrate_along<S: Scalar>(
    alpha: &TensorSeries<S>,
    powers: &mut Powers<TPoly<S>>,
    only: Option<usize>,
) -> TensorSeries<S> {
    let ctx = *alpha.context();
    let mut out = TensorSeries::zero(&ctx, 0);
    for (m, v) in alpha.terms() {
        let c = v.as_scalar();
        let degrees = match only {
            Some(k) => k..=k,
            None => m.degree()..=ctx.order(),
        };
        for d in degrees {
            for (q, p) in powers.part(m, d) {
                out.add_term(q, crate::symtensor::SymTensor::scalar(&ctx, p.integral_unit() * &c));
            }
        }
    }
    out
}

/// EXP(α, β) = (exp[∫₀¹ α(Exp(rβ)) dr], Exp(β))
pub fn s_exp<S: Scalar>(w: &AlgebraPair<S>) -> Result<SPair<S>> {
    check_alpha(&w.alpha)?;
    let theta = f1_time_flow(&w.beta)?;
    let mut powers = Powers::from_series(&theta);
    let integral = integrate_along(&w.alpha, &mut powers, None);
    let a = f0_exp(&integral)?;
    let b = F1Element::new(eval_at(&theta, &S::one()))?;
    SPair::new(a, b)
}

/// LOG(A, B): β = Log B, then α_k = (log A)_k − Σ_{|m|<k} α[m]·[∫₀¹ θ^m]_k.
pub fn s_log<S: Scalar>(p: &SPair<S>) -> AlgebraPair<S> {
    let ctx = *p.context();
    let beta = f1_log(&p.b);
    let theta = f1_time_flow(&beta).expect("Log lies in the algebra");
    let mut powers = Powers::from_series(&theta);
    let log_a = f0_log(&p.a);
    let mut alpha = TensorSeries::zero(&ctx, 0);
    for k in 1..=ctx.order() {
        let correction = integrate_along(&alpha, &mut powers, Some(k));
        alpha = &alpha + &(&log_a.homogeneous(k) - &correction);
    }
    AlgebraPair::new(alpha, beta).expect("valid algebra pair")
}

/// (A(t), B(t)) with coefficients polynomial in t.
pub type SeriesPair<S> = (TensorSeries<TPoly<S>>, TensorSeries<TPoly<S>>);

/// (A(t), B(t)) solving A′ = D_β A + A·α, B′ = D_β B with A(0) = 1, B(0) = ξ.
pub fn s_flow<S: Scalar>(
    curve: &TimeCurve<AlgebraPair<TPoly<S>>>,
) -> Result<SeriesPair<S>> {
    let w = curve.value();
    check_alpha(&w.alpha)?;
    let ctx = *w.alpha.context();
    let b = field_flow(&w.beta)?;
    let al = graded(&w.alpha);
    let mut a = TensorSeries::one(&ctx);
    for k in 1..=ctx.order() {
        let mut rhs = a.dirderiv_series(&w.beta)?.homogeneous(k);
        for (l, part) in graded(&a).iter().enumerate().take(k) {
            rhs = &rhs + &part.mul(&al[k - l])?;
        }
        a = &a + &integrate(&rhs);
    }
    Ok((a, b))
}

pub fn s_evolve<S: Scalar>(curve: &TimeCurve<AlgebraPair<TPoly<S>>>) -> Result<SPair<S>> {
    let (a, b) = s_flow(curve)?;
    SPair::from_series(eval_at(&a, &S::one()), eval_at(&b, &S::one()))
}

/// (A′ − D_β A − A·α, B′ − D_β B)
pub fn s_residual<S: Scalar>(
    curve: &TimeCurve<AlgebraPair<TPoly<S>>>,
    flow: &SeriesPair<S>,
) -> Result<SeriesPair<S>> {
    let w = curve.value();
    let (a, b) = flow;
    let ra = &(&time_derivative(a) - &a.dirderiv_series(&w.beta)?) - &a.mul(&w.alpha)?;
    let rb = &time_derivative(b) - &b.dirderiv_series(&w.beta)?;
    Ok((ra, rb))
}
