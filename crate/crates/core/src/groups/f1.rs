use crate::error::{same_context, Result};
use crate::scalar::{Context, Ring, Scalar};
use crate::series::{Powers, TensorSeries};
use crate::tpoly::TPoly;

use super::{check_beta, eval_at, integrate, integrate_unit, lift, time_derivative, F1Element, TimeCurve};

/// Compositional inverse: with B̃₁ = ξ, B̃_k = −[B̃_{<k} ∘ B]_k.
pub fn f1_inverse<R: Ring>(b: &F1Element<R>) -> F1Element<R> {
    let ctx = *b.context();
    let mut powers = Powers::from_series(b.series());
    let mut inv = TensorSeries::identity(&ctx);
    for k in 2..=ctx.order() {
        let known: Vec<_> = inv.terms().map(|(m, v)| (m.clone(), v.clone())).collect();
        let mut part = TensorSeries::zero(&ctx, 1);
        for (m, v) in &known {
            for (q, c) in powers.part(m, k) {
                part.add_term(q, v.scale(&c));
            }
        }
        inv = &inv - &part;
    }
    F1Element::new(inv).expect("linear term is the identity")
}

/// [β₁, β₂] = D_{β₂}β₁ − D_{β₁}β₂
pub fn f1_bracket<R: Ring>(b1: &TensorSeries<R>, b2: &TensorSeries<R>) -> Result<TensorSeries<R>> {
    same_context(b1.context(), b2.context())?;
    check_beta(b1)?;
    check_beta(b2)?;
    Ok(&b1.dirderiv_series(b2)? - &b2.dirderiv_series(b1)?)
}

/// Builds the autonomous flow B(t) of a field β degree by degree.
///
/// At degree k the integrand [β(B(t))]_k splits into β_k (which contributes
/// t·β_k after integration) and a part that only involves β_{<k} and B_{<k}.
/// `next` receives k and that lower part and decides β_k; this lets Exp and
/// Log share one pass.
fn build_flow<S: Scalar>(
    ctx: &Context,
    mut next: impl FnMut(usize, &TensorSeries<TPoly<S>>) -> TensorSeries<S>,
) -> (TensorSeries<TPoly<S>>, TensorSeries<S>) {
    let id = TensorSeries::<TPoly<S>>::identity(ctx);
    let mut powers = Powers::new(ctx.dim());
    powers.push_degree(id.component_polys());
    let mut flow = id;
    let mut beta = TensorSeries::<S>::zero(ctx, 1);
    let mut beta_t = TensorSeries::<TPoly<S>>::zero(ctx, 1);
    for k in 2..=ctx.order() {
        let mut lower = TensorSeries::zero(ctx, 1);
        let known: Vec<_> = beta_t.terms().map(|(m, v)| (m.clone(), v.clone())).collect();
        for (m, v) in &known {
            for (q, c) in powers.part(m, k) {
                lower.add_term(q, v.scale(&c));
            }
        }
        let bk = next(k, &lower);
        let fk = &integrate(&lower) + &lift(&bk).scale(&TPoly::t());
        powers.push_degree(fk.component_polys());
        flow = &flow + &fk;
        beta = &beta + &bk;
        beta_t = lift(&beta);
    }
    (flow, beta)
}

/// B(t) = Exp(tβ), the solution of B′ = β(B), B(0) = ξ.
pub fn f1_time_flow<S: Scalar>(beta: &TensorSeries<S>) -> Result<TensorSeries<TPoly<S>>> {
    check_beta(beta)?;
    Ok(build_flow(beta.context(), |k, _| beta.homogeneous(k)).0)
}

pub fn f1_exp<S: Scalar>(beta: &TensorSeries<S>) -> Result<F1Element<S>> {
    F1Element::new(eval_at(&f1_time_flow(beta)?, &S::one()))
}

/// Log by the triangular recurrence: β_k = B_k − [Exp(β_{<k})]_k.
pub fn f1_log<S: Scalar>(b: &F1Element<S>) -> TensorSeries<S> {
    let target = b.series();
    build_flow(b.context(), |k, lower| &target.homogeneous(k) - &integrate_unit(lower)).1
}

/// Solution B(t) of B′ = D_{β(t)}B, B(0) = ξ, degree by degree.
pub fn f1_flow<S: Scalar>(curve: &TimeCurve<TensorSeries<TPoly<S>>>) -> Result<TensorSeries<TPoly<S>>> {
    field_flow(curve.value())
}

pub(super) fn field_flow<S: Scalar>(beta: &TensorSeries<TPoly<S>>) -> Result<TensorSeries<TPoly<S>>> {
    check_beta(beta)?;
    let ctx = *beta.context();
    let mut b = TensorSeries::identity(&ctx);
    for k in 2..=ctx.order() {
        let rhs = b.dirderiv_series(beta)?.homogeneous(k);
        b = &b + &integrate(&rhs);
    }
    Ok(b)
}

pub fn f1_evolve<S: Scalar>(curve: &TimeCurve<TensorSeries<TPoly<S>>>) -> Result<F1Element<S>> {
    F1Element::new(eval_at(&f1_flow(curve)?, &S::one()))
}

/// B′ − D_β B
pub fn f1_residual<S: Scalar>(
    curve: &TimeCurve<TensorSeries<TPoly<S>>>,
    flow: &TensorSeries<TPoly<S>>,
) -> Result<TensorSeries<TPoly<S>>> {
    Ok(&time_derivative(flow) - &flow.dirderiv_series(curve.value())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::symtensor::MultiIndex;

    fn ctx() -> Context {
        Context::of::<Rational>(1, 7).unwrap()
    }

    fn v(c: &[Rational]) -> TensorSeries<Rational> {
        let s = TensorSeries::from_scalar_terms(
            &ctx(),
            c.iter().enumerate().map(|(k, x)| (MultiIndex::new([k as u32]), x.clone())),
        )
        .unwrap();
        TensorSeries::from_components(&ctx(), &[s]).unwrap()
    }

    fn vi(c: &[i64]) -> TensorSeries<Rational> {
        v(&c.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn inverse_is_signed_catalan() {
        let b = F1Element::new(vi(&[0, 1, 1])).unwrap();
        let inv = f1_inverse(&b);
        assert_eq!(inv.series(), &vi(&[0, 1, -1, 2, -5, 14, -42, 132]));
        assert_eq!(inv.compose(&b).unwrap(), F1Element::<Rational>::identity(&ctx()));
        assert_eq!(b.compose(&inv).unwrap(), F1Element::<Rational>::identity(&ctx()));
    }

    #[test]
    fn bracket() {
        let r = f1_bracket(&vi(&[0, 0, 1]), &vi(&[0, 0, 0, 1])).unwrap();
        assert_eq!(r, vi(&[0, 0, 0, 0, -1]));
        let b = vi(&[0, 0, 2, 1]);
        assert!(f1_bracket(&b, &b).unwrap().is_zero());
        assert!(f1_bracket(&vi(&[0, 1]), &b).is_err());
    }

    #[test]
    fn exp_examples() {
        assert_eq!(f1_exp(&vi(&[0, 0, 1])).unwrap().series(), &vi(&[0, 1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(f1_exp(&TensorSeries::zero(&ctx(), 1)).unwrap(), F1Element::<Rational>::identity(&ctx()));
        let e = f1_exp(&vi(&[0, 0, 0, 1])).unwrap();
        let half = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let want = v(&[half(0, 1), half(1, 1), half(0, 1), half(1, 1), half(0, 1), half(3, 2), half(0, 1), half(5, 2)]);
        assert_eq!(e.series(), &want);
    }

    #[test]
    fn log_inverts_exp() {
        let beta = vi(&[0, 0, 1, -2, 3, 0, 1]);
        let b = f1_exp(&beta).unwrap();
        assert_eq!(f1_log(&b), beta);
    }

    #[test]
    fn evolve() {
        let beta = vi(&[0, 0, 1]);
        let lifted = lift(&beta);
        let curve = TimeCurve::from_value(lifted.clone());
        assert_eq!(f1_evolve(&curve).unwrap(), f1_exp(&beta).unwrap());
        let flow = f1_flow(&curve).unwrap();
        assert!(f1_residual(&curve, &flow).unwrap().is_zero());
        let scaled = TimeCurve::from_value(lifted.scale(&TPoly::monomial(Rational::from_int(3), 2)));
        assert_eq!(f1_evolve(&scaled).unwrap(), f1_exp(&beta).unwrap());
    }
}
