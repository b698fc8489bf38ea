use crate::error::Result;
use crate::scalar::{Ring, Scalar};
use crate::series::{inv_factorial, scalar_subst, TensorSeries};
use crate::tpoly::TPoly;

use super::{check_alpha, eval_at, graded, time_derivative, F0Element, TimeCurve};

/// Ã₀ = 1, Ã_k = −Σ_{l=1}^{k} A_l Ã_{k−l}.
pub fn f0_inverse<R: Ring>(a: &F0Element<R>) -> F0Element<R> {
    let ctx = *a.context();
    let parts = graded(a.series());
    let mut inv = vec![TensorSeries::one(&ctx)];
    for k in 1..=ctx.order() {
        let mut acc = TensorSeries::zero(&ctx, 0);
        for l in 1..=k {
            acc = &acc + &parts[l].mul(&inv[k - l]).expect("same context");
        }
        inv.push(-&acc);
    }
    let series = inv.iter().fold(TensorSeries::zero(&ctx, 0), |s, p| &s + p);
    F0Element::new(series).expect("constant term 1")
}

/// exp(α) = Σ αⁿ/n!
pub fn f0_exp<R: Ring>(alpha: &TensorSeries<R>) -> Result<F0Element<R>> {
    check_alpha(alpha)?;
    let q: Vec<R> = (0..=alpha.order()).map(inv_factorial).collect();
    F0Element::new(scalar_subst(&q, alpha)?)
}

/// log(A) = Σ (−1)^{n+1}(A−1)ⁿ/n
pub fn f0_log<R: Ring>(a: &F0Element<R>) -> TensorSeries<R> {
    let ctx = *a.context();
    let shifted = a.series() - &TensorSeries::one(&ctx);
    let q: Vec<R> = (0..=ctx.order())
        .map(|n| match n {
            0 => R::zero(),
            n => {
                let x = R::one().div_bigint(&num_bigint::BigInt::from(n));
                if n % 2 == 1 { x } else { -x }
            }
        })
        .collect();
    scalar_subst(&q, &shifted).expect("A − 1 has zero constant term")
}

/// The solution A(t) of A′ = A·α(t), A(0) = 1, built degree by degree:
/// A_k(t) = ∫₀ᵗ (α_k + Σ_{l=1}^{k−1} A_l α_{k−l}).
pub fn f0_flow<S: Scalar>(curve: &TimeCurve<TensorSeries<TPoly<S>>>) -> Result<TensorSeries<TPoly<S>>> {
    let alpha = curve.value();
    check_alpha(alpha)?;
    let ctx = *alpha.context();
    let al = graded(alpha);
    let mut parts = vec![TensorSeries::one(&ctx)];
    for k in 1..=ctx.order() {
        let mut rhs = TensorSeries::zero(&ctx, 0);
        for l in 0..k {
            rhs = &rhs + &parts[l].mul(&al[k - l])?;
        }
        parts.push(super::integrate(&rhs));
    }
    Ok(parts.iter().fold(TensorSeries::zero(&ctx, 0), |s, p| &s + p))
}

/// A(1) for the flow above.
pub fn f0_evolve<S: Scalar>(curve: &TimeCurve<TensorSeries<TPoly<S>>>) -> Result<F0Element<S>> {
    F0Element::new(eval_at(&f0_flow(curve)?, &S::one()))
}

/// A′ − A·α, identically zero for the exact flow.
pub fn f0_residual<S: Scalar>(
    curve: &TimeCurve<TensorSeries<TPoly<S>>>,
    flow: &TensorSeries<TPoly<S>>,
) -> Result<TensorSeries<TPoly<S>>> {
    Ok(&time_derivative(flow) - &flow.mul(curve.value())?)
}
