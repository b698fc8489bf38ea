use num_bigint::BigInt;
use rand::Rng;

use crate::combinat::factorial;
use crate::error::Result;
use crate::groups::*;
use crate::opmatrix::{
    commutator, grad_pow, nil_exp, opmat_evolve, opmat_flow, opmat_inverse, opmat_log, opmat_mul,
    opmat_residual, polarized_derivative, vector_field_op, zero_grad_op, BlockMatrix, NilMatrix, OpMatrix,
    PolyOnDual,
};
use crate::random::*;
use crate::scalar::{Context, Scalar};
use crate::series::{blockform, TensorSeries};
use crate::sheffer::*;
use crate::symtensor::{enumerate_upto, BlockOp, DualVector, MultiIndex};

use super::oracles::*;
use super::{ensure, lib, Check, Runner, Suite};

pub(super) fn run<S: Scalar>(suite: Suite, r: &mut Runner) -> Result<()> {
    match suite {
        Suite::Groups => groups::<S>(r),
        Suite::Explog => explog::<S>(r),
        Suite::Isomorphism => isomorphism::<S>(r),
        Suite::Rowgf => rowgf::<S>(r),
        Suite::Liealgebra => liealgebra::<S>(r),
        Suite::Weyl => weyl::<S>(r),
        Suite::Riordan => riordan::<S>(r),
        Suite::Flows => flows::<S>(r),
        Suite::Classical => classical::<S>(r),
        Suite::ClosedForms => closed_forms::<S>(r),
        Suite::Bch => bch_suite::<S>(r),
        Suite::Dual => dual::<S>(r),
        Suite::Membership => membership::<S>(r),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn same<T: PartialEq>(what: &str, a: &T, b: &T) -> Check {
    ensure(a == b, || format!("{what} differ"))
}

fn groups<S: Scalar>(r: &mut Runner) -> Result<()> {
    for ctx in r.contexts::<S>(&[(1, 8), (2, 5)])? {
        let c = &ctx;
        r.random("F0 associativity", c, 100, |g| {
            let (a, b, d) = (random_f0::<S, _>(c, g), random_f0(c, g), random_f0(c, g));
            same("(ab)c, a(bc)", &lib(lib(a.mul(&b))?.mul(&d))?, &lib(a.mul(&lib(b.mul(&d))?))?)
        });
        r.random("F0 identity and inverse", c, 100, |g| {
            let a = random_f0::<S, _>(c, g);
            let one = F0Element::one(c);
            same("a·1, a", &lib(a.mul(&one))?, &a)?;
            same("1·a, a", &lib(one.mul(&a))?, &a)?;
            let inv = f0_inverse(&a);
            same("a·a⁻¹, 1", &lib(a.mul(&inv))?, &one)?;
            same("a⁻¹·a, 1", &lib(inv.mul(&a))?, &one)
        });
        r.random("F1 associativity", c, 100, |g| {
            let (a, b, d) = (random_f1::<S, _>(c, g), random_f1(c, g), random_f1(c, g));
            same("(a∘b)∘c, a∘(b∘c)", &lib(lib(a.compose(&b))?.compose(&d))?, &lib(a.compose(&lib(b.compose(&d))?))?)
        });
        r.random("F1 identity and inverse", c, 100, |g| {
            let b = random_f1::<S, _>(c, g);
            let id = F1Element::identity(c);
            same("b∘ξ, b", &lib(b.compose(&id))?, &b)?;
            same("ξ∘b, b", &lib(id.compose(&b))?, &b)?;
            let inv = f1_inverse(&b);
            same("b∘b⁻¹, ξ", &lib(b.compose(&inv))?, &id)?;
            same("b⁻¹∘b, ξ", &lib(inv.compose(&b))?, &id)
        });
        r.random("S associativity", c, 100, |g| {
            let (a, b, d) = (random_spair::<S, _>(c, g), random_spair(c, g), random_spair(c, g));
            same("(pq)r, p(qr)", &lib(s_mul(&lib(s_mul(&a, &b))?, &d))?, &lib(s_mul(&a, &lib(s_mul(&b, &d))?))?)
        });
        r.random("S identity and inverse", c, 100, |g| {
            let p = random_spair::<S, _>(c, g);
            let id = SPair::identity(c);
            same("p·1, p", &lib(s_mul(&p, &id))?, &p)?;
            same("1·p, p", &lib(s_mul(&id, &p))?, &p)?;
            let inv = s_inverse(&p);
            same("p·p⁻¹, 1", &lib(s_mul(&p, &inv))?, &id)?;
            same("p⁻¹·p, 1", &lib(s_mul(&inv, &p))?, &id)
        });
        r.random("M associativity", c, 100, |g| {
            let (a, b, d) = (random_unipotent::<S, _>(c, g), random_unipotent(c, g), random_unipotent(c, g));
            same("(PQ)R, P(QR)", &lib(opmat_mul(&lib(opmat_mul(&a, &b))?, &d))?, &lib(opmat_mul(&a, &lib(opmat_mul(&b, &d))?))?)
        });
        r.random("M identity and inverse", c, 100, |g| {
            let p = random_unipotent::<S, _>(c, g);
            let id = OpMatrix::identity(c);
            same("P·1, P", &lib(opmat_mul(&p, &id))?, &p)?;
            same("1·P, P", &lib(opmat_mul(&id, &p))?, &p)?;
            let inv = lib(opmat_inverse(&p))?;
            same("P·P⁻¹, 1", &lib(opmat_mul(&p, &inv))?, &id)?;
            same("P⁻¹·P, 1", &lib(opmat_mul(&inv, &p))?, &id)
        });
    }
    Ok(())
}

fn explog<S: Scalar>(r: &mut Runner) -> Result<()> {
    for ctx in r.contexts::<S>(&[(1, 8), (2, 4)])? {
        let c = &ctx;
        r.random("f0 log∘exp and exp∘log", c, 50, |g| {
            let alpha = random_alpha::<S, _>(c, g);
            same("log exp α, α", &f0_log(&lib(f0_exp(&alpha))?), &alpha)?;
            let a = random_f0::<S, _>(c, g);
            same("exp log A, A", &lib(f0_exp(&f0_log(&a)))?, &a)
        });
        r.random("f1 log∘exp and exp∘log", c, 50, |g| {
            let beta = random_beta::<S, _>(c, g);
            same("Log Exp β, β", &f1_log(&lib(f1_exp(&beta))?), &beta)?;
            let b = random_f1::<S, _>(c, g);
            same("Exp Log B, B", &lib(f1_exp(&f1_log(&b)))?, &b)
        });
        r.random("S LOG∘EXP and EXP∘LOG", c, 50, |g| {
            let w = random_algebra_pair::<S, _>(c, g);
            same("LOG EXP w, w", &s_log(&lib(s_exp(&w))?), &w)?;
            let p = random_spair::<S, _>(c, g);
            same("EXP LOG p, p", &lib(s_exp(&s_log(&p)))?, &p)
        });
        r.random("nilpotent log∘exp and exp∘log", c, 50, |g| {
            let v = random_nil::<S, _>(c, g);
            same("log exp V, V", &lib(opmat_log(&nil_exp(&v)))?, &v)?;
            let p = random_unipotent::<S, _>(c, g);
            same("exp log P, P", &nil_exp(&lib(opmat_log(&p))?), &p)
        });
    }
    Ok(())
}

fn isomorphism<S: Scalar>(r: &mut Runner) -> Result<()> {
    for ctx in r.contexts::<S>(&[(1, 8), (2, 4)])? {
        let c = &ctx;
        r.random("build(p∗q) = build(p)·build(q)", c, 100, |g| {
            let (p, q) = (random_spair::<S, _>(c, g), random_spair(c, g));
            let lhs = sheffer_build(&lib(s_mul(&p, &q))?);
            same("matrices", &lhs, &lib(opmat_mul(&sheffer_build(&p), &sheffer_build(&q)))?)
        });
        r.random("build(p⁻¹) = build(p)⁻¹", c, 100, |g| {
            let p = random_spair::<S, _>(c, g);
            same("matrices", &sheffer_build(&s_inverse(&p)), &lib(opmat_inverse(&sheffer_build(&p)))?)
        });
    }
    Ok(())
}

/// (i!/k!)·P_ik (exponential) or P_ik (ordinary) read back as a series.
fn row_gf<S: Scalar>(m: &OpMatrix<S>, i: usize, exponential: bool) -> Result<TensorSeries<S>> {
    let ctx = *m.context();
    let blocks: Vec<BlockOp<S>> = (0..=ctx.order())
        .map(|k| {
            if k < i {
                BlockOp::zero(&ctx, k, i)
            } else if exponential {
                m.block(i, k).map(|c| c.mul_bigint(&factorial(i)).div_bigint(&factorial(k)))
            } else {
                m.block(i, k).clone()
            }
        })
        .collect();
    blockform::from_blocks(&ctx, i, &blocks)
}

fn row_gf_holds<S: Scalar>(p: &SPair<S>) -> Check {
    let ctx = *p.context();
    let m = sheffer_build(p);
    let rio = riordan_transform(&ShefferOp::from_pair(p.clone()));
    let mut power = p.a.series().clone();
    for i in 0..=ctx.order() {
        if i > 0 {
            power = lib(blockform::tensor(p.b.series(), &power))?;
        }
        ensure(lib(row_gf(&m, i, true))? == power, || format!("exponential row {i}"))?;
        ensure(lib(row_gf(rio.matrix(), i, false))? == power, || format!("Riordan row {i}"))?;
    }
    Ok(())
}

fn rowgf<S: Scalar>(r: &mut Runner) -> Result<()> {
    let catalog_ctx = match r.opts.context {
        Some((1, k)) => vec![Context::of::<S>(1, k)?],
        Some(_) => vec![],
        None => vec![Context::of::<S>(1, 8)?],
    };
    for c in &catalog_ctx {
        let outcomes = CATALOG_NAMES.iter().map(|name| row_gf_holds(&lib(catalog::<S>(name, c))?)).collect();
        r.cases("row generating functions, catalog", c, outcomes);
    }
    for ctx in r.contexts::<S>(&[(1, 8), (2, 4)])? {
        let c = &ctx;
        r.random("row generating functions, random", c, 50, |g| row_gf_holds(&random_spair::<S, _>(c, g)));
    }
    Ok(())
}

fn liealgebra<S: Scalar>(r: &mut Runner) -> Result<()> {
    for ctx in r.contexts::<S>(&[(1, 8), (2, 4)])? {
        let c = &ctx;
        r.random("log build EXP(w) = R(w) = α(∇)+M(β(∇))", c, 50, |g| {
            let w = random_algebra_pair::<S, _>(c, g);
            let v = lie_map(&w);
            same("log vs lie_map", &lib(opmat_log(&sheffer_build(&lib(s_exp(&w))?)))?, &v)?;
            same("lie_map vs vector_field_op", &v, &vector_field_op(&w))
        });
        r.random("R([w1,w2]) = [R(w1),R(w2)]", c, 50, |g| {
            let (w1, w2) = (random_algebra_pair::<S, _>(c, g), random_algebra_pair(c, g));
            let lhs = lie_map(&lib(s_bracket(&w1, &w2))?);
            same("bracket", &lhs, &lib(commutator(&lie_map(&w1), &lie_map(&w2)))?)
        });
    }
    Ok(())
}

fn weyl<S: Scalar>(r: &mut Runner) -> Result<()> {
    for ctx in r.contexts::<S>(&[(1, 8), (2, 5)])? {
        // room for two degree-raising steps above K − 1
        let big = ctx.with_order(ctx.order() + 1)?;
        let monomials: Vec<MultiIndex> = enumerate_upto(ctx.dim(), ctx.order().saturating_sub(1));
        let (c, big, monomials) = (&ctx, &big, &monomials);
        let vec = |g: &mut rand_chacha::ChaCha8Rng| (0..c.dim()).map(|_| S::random(g)).collect::<Vec<S>>();
        r.random("[D_σ, D_σ′] = 0", c, 20, |g| {
            let (s1, s2) = (random_dual::<S, _>(big, g), random_dual::<S, _>(big, g));
            for m in monomials {
                let p = lib(PolyOnDual::monomial(big, m.clone(), S::one()))?;
                let a = lib(lib(p.dsigma(&s2))?.dsigma(&s1))?;
                let b = lib(lib(p.dsigma(&s1))?.dsigma(&s2))?;
                ensure(a == b, || format!("on w^{m:?}"))?;
            }
            Ok(())
        });
        r.random("[M(ξ), M(ξ′)] = 0", c, 20, |g| {
            let (x1, x2) = (vec(g), vec(g));
            for m in monomials {
                let p = lib(PolyOnDual::monomial(big, m.clone(), S::one()))?;
                let a = lib(lib(p.mult(&x2))?.mult(&x1))?;
                let b = lib(lib(p.mult(&x1))?.mult(&x2))?;
                ensure(a == b, || format!("on w^{m:?}"))?;
            }
            Ok(())
        });
        r.random("[D_σ, M(ξ)] = ⟨σ,ξ⟩", c, 20, |g| {
            let (s, x) = (random_dual::<S, _>(big, g), vec(g));
            let pairing = s.components().iter().zip(&x).fold(S::zero(), |acc, (a, b)| acc + &(a.clone() * b));
            for m in monomials {
                let p = lib(PolyOnDual::monomial(big, m.clone(), S::one()))?;
                let a = lib(lib(p.mult(&x))?.dsigma(&s))?;
                let b = lib(lib(p.dsigma(&s))?.mult(&x))?;
                ensure(&a - &b == p.scale(&pairing), || format!("on w^{m:?}"))?;
            }
            Ok(())
        });
        r.random("D_σ coordinate = polarized, ∇^k pairing", c, 20, |g| {
            let p = random_poly::<S, _>(c, c.order(), g);
            let (omega, sigma) = (random_dual::<S, _>(c, g), random_dual::<S, _>(c, g));
            let d = lib(lib(p.dsigma(&sigma))?.eval(&omega))?;
            ensure(d == lib(polarized_derivative(&p, &omega, &sigma, 1))?, || "first derivative".into())?;
            for k in 0..=c.order() {
                let mut via = S::zero();
                for (m, v) in grad_pow(&p, k).terms() {
                    via += &(m.eval(omega.components()) * &lib(v.pairing(&sigma))?);
                }
                ensure(via == lib(polarized_derivative(&p, &omega, &sigma, k))?, || format!("∇^{k}"))?;
            }
            Ok(())
        });
    }
    Ok(())
}

fn riordan<S: Scalar>(r: &mut Runner) -> Result<()> {
    for ctx in r.contexts::<S>(&[(1, 8), (2, 4)])? {
        let c = &ctx;
        r.random("riordan transform is multiplicative", c, 50, |g| {
            let p = ShefferOp::from_pair(random_spair::<S, _>(c, g));
            let q = ShefferOp::from_pair(random_spair::<S, _>(c, g));
            let lhs = riordan_transform(&lib(sheffer_mul(&p, &q))?);
            same("𝔍(PQ), 𝔍P·𝔍Q", &lhs, &lib(riordan_transform(&p).mul(&riordan_transform(&q)))?)?;
            same("inverse transform", &lib(riordan_inverse_transform(&lhs))?, &lib(sheffer_mul(&p, &q))?)
        });
        r.random("log 𝔍 EXP(w) = α(∇₀)+N·M(β(∇₀))", c, 50, |g| {
            let w = random_algebra_pair::<S, _>(c, g);
            let v = riordan_lie_map(&w);
            let rio = riordan_transform(&ShefferOp::from_pair(lib(s_exp(&w))?));
            same("log vs riordan_lie_map", &lib(opmat_log(rio.matrix()))?, &v)?;
            same("riordan_lie_map vs zero_grad_op", &v, &zero_grad_op(&w))
        });
    }
    Ok(())
}

fn flows<S: Scalar>(r: &mut Runner) -> Result<()> {
    const BOUND: usize = 2;
    for ctx in r.contexts::<S>(&[(1, 6), (2, 4)])? {
        let c = &ctx;
        r.random("F0 flow residual, constant curve = exp", c, 25, |g| {
            let curve = lib(TimeCurve::new(random_time_series::<S, _>(c, 0, 1, BOUND, g), BOUND))?;
            let flow = lib(f0_flow(&curve))?;
            ensure(lib(f0_residual(&curve, &flow))?.is_zero(), || "residual".into())?;
            let alpha = random_alpha::<S, _>(c, g);
            same("evolve, exp", &lib(f0_evolve(&TimeCurve::from_value(lift(&alpha))))?, &lib(f0_exp(&alpha))?)
        });
        r.random("F1 flow residual, constant curve = Exp", c, 25, |g| {
            let curve = lib(TimeCurve::new(random_time_series::<S, _>(c, 1, 2, BOUND, g), BOUND))?;
            let flow = lib(f1_flow(&curve))?;
            ensure(lib(f1_residual(&curve, &flow))?.is_zero(), || "residual".into())?;
            let beta = random_beta::<S, _>(c, g);
            same("evolve, Exp", &lib(f1_evolve(&TimeCurve::from_value(lift(&beta))))?, &lib(f1_exp(&beta))?)
        });
        r.random("S flow residual, constant curve = EXP", c, 25, |g| {
            let w = lib(AlgebraPair::new(
                random_time_series::<S, _>(c, 0, 1, BOUND, g),
                random_time_series::<S, _>(c, 1, 2, BOUND, g),
            ))?;
            let curve = lib(TimeCurve::new(w, BOUND))?;
            let flow = lib(s_flow(&curve))?;
            let (ra, rb) = lib(s_residual(&curve, &flow))?;
            ensure(ra.is_zero() && rb.is_zero(), || "residual".into())?;
            let w = random_algebra_pair::<S, _>(c, g);
            same("evolve, EXP", &lib(s_evolve(&constant_curve(&w)))?, &lib(s_exp(&w))?)
        });
        r.random("operator flow residual, constant curve = exp", c, 25, |g| {
            let curve = lib(TimeCurve::new(random_time_nil::<S, _>(c, BOUND, g), BOUND))?;
            let flow = opmat_flow(&curve);
            ensure(opmat_residual(&curve, &flow).is_zero(), || "residual".into())?;
            let v = random_nil::<S, _>(c, g);
            let lifted = TimeCurve::from_value(crate::opmatrix::lift_nil(&v));
            same("evolve, exp", &opmat_evolve(&lifted), &nil_exp(&v))
        });
    }
    Ok(())
}

fn entry<S: Scalar>(m: &OpMatrix<S>, i: usize, k: usize) -> S {
    m.block(i, k).get(0, 0).clone()
}

fn table<S: Scalar>(what: &str, m: &OpMatrix<S>, want: impl Fn(usize, usize) -> S) -> Vec<Check> {
    let k_max = m.context().order();
    let mut out = Vec::new();
    for k in 0..=k_max {
        for i in 0..=k {
            out.push(ensure(entry(m, i, k) == want(i, k), || format!("{what} ({i},{k})")));
        }
    }
    out
}

fn classical<S: Scalar>(r: &mut Runner) -> Result<()> {
    let order = r.opts.context.map_or(10, |(_, k)| k);
    let dim = r.opts.context.map_or(1, |(d, _)| d);
    let c = &Context::of::<S>(dim, order)?;
    let big = |n: &BigInt| S::from_bigint(n.clone());
    let build = |name: &str| -> Result<ShefferOp<S>> { Ok(ShefferOp::from_pair(catalog::<S>(name, c)?)) };

    let hermite = build("hermite")?;
    let he = hermite_coeffs(order);
    r.cases("Hermite He_n coefficients", c, table("He", hermite.matrix(), |i, k| big(&he[k][i])));

    let bernoulli = build("bernoulli")?;
    let bn = bernoulli_numbers(order);
    let bern = |i: usize, k: usize| {
        let b = S::from_rational(bn[k - i].clone());
        b.mul_bigint(&crate::combinat::binomial(k, i))
    };
    r.cases("Bernoulli polynomial coefficients", c, table("B_n", bernoulli.matrix(), bern));

    let touchard = build("touchard")?;
    let s2 = stirling2(order);
    r.cases("Touchard P_ik = S(k,i)", c, table("S", touchard.matrix(), |i, k| big(&s2[k][i])));

    let falling = build("falling_factorial")?;
    let s1 = stirling1(order);
    r.cases("falling factorial P_ik = s(k,i)", c, table("s", falling.matrix(), |i, k| big(&s1[k][i])));

    let pascal = riordan_transform(&build("pascal")?);
    r.cases("Pascal Riordan R_ik = C(k,i)", c, table("C", pascal.matrix(), |i, k| big(&binomial_row(k)[i])));

    let id = OpMatrix::identity(c);
    let products = vec![
        same("Touchard·falling", &opmat_mul(touchard.matrix(), falling.matrix())?, &id),
        same("falling·Touchard", &opmat_mul(falling.matrix(), touchard.matrix())?, &id),
    ];
    r.cases("Stirling matrices are mutually inverse", c, products);
    Ok(())
}

fn superdiagonal<S: Scalar>(c: &Context, f: impl Fn(usize) -> i64) -> Result<NilMatrix<S>> {
    let mut m = BlockMatrix::zero(c);
    for i in 0..c.order() {
        m.set_block(i, i + 1, BlockOp::from_rows(c, i + 1, i, vec![vec![S::from_int(f(i))]])?)?;
    }
    NilMatrix::new(m)
}

fn closed_forms<S: Scalar>(r: &mut Runner) -> Result<()> {
    let order = r.opts.context.map_or(10, |(_, k)| k);
    let c = &Context::of::<S>(1, order)?;
    let xi = TensorSeries::scalar_monomial(c, MultiIndex::new([1]), S::one());
    let xi2 = TensorSeries::from_components(c, &[TensorSeries::scalar_monomial(c, MultiIndex::new([2]), S::one())])?;
    let w = AlgebraPair::new(xi, xi2)?;
    let pascal = catalog::<S>("pascal", c)?;
    r.cases("EXP(ξ, ξ²) = (1/(1−ξ), ξ/(1−ξ))", c, vec![same("pairs", &s_exp(&w)?, &pascal)]);

    let v = superdiagonal::<S>(c, |i| ((i + 1) * (i + 1)) as i64)?;
    let e = nil_exp(&v);
    let outcomes = (0..=order).map(|n| ensure(entry(&e, 0, n) == S::from_bigint(factorial(n)), || format!("(0,{n})"))).collect();
    r.cases("exp of superdiagonal (i+1)² has (0,n) = n!", c, outcomes);

    let p = ShefferOp::from_pair(pascal);
    let rio = riordan_transform(&p);
    let sq = rio.mul(&rio)?;
    let two = |n: usize| S::from_bigint(BigInt::from(2).pow(n as u32));
    let mut outcomes = table("Riordan Pascal²", sq.matrix(), |i, k| two(k - i).mul_bigint(&binomial_row(k)[i]));
    let p2 = sheffer_mul(&p, &p)?;
    outcomes.extend(table("Sheffer Pascal²", p2.matrix(), |i, k| {
        two(k - i).mul_bigint(&binomial_row(k)[i]).mul_bigint(&factorial(k)).div_bigint(&factorial(i))
    }));
    r.cases("Pascal² entries 2^(k−i)·C(k,i)", c, outcomes);
    Ok(())
}

fn depth4_vanish<S: Scalar>(v1: &NilMatrix<S>, v2: &NilMatrix<S>) -> Result<bool> {
    let mut words = vec![v1.clone(), v2.clone()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for a in [v1, v2] {
            for w in &words {
                next.push(commutator(a, w)?);
            }
        }
        words = next;
    }
    Ok(words.iter().all(NilMatrix::is_zero))
}

fn bch_suite<S: Scalar>(r: &mut Runner) -> Result<()> {
    for ctx in r.contexts::<S>(&[(1, 6), (2, 6)])? {
        let c = &ctx;
        r.random("exp(V1)exp(V2) = exp(bch(V1,V2))", c, 25, |g| {
            let (v1, v2) = (random_nil::<S, _>(c, g), random_nil::<S, _>(c, g));
            let lhs = lib(opmat_mul(&nil_exp(&v1), &nil_exp(&v2)))?;
            same("products", &lhs, &nil_exp(&lib(bch(&v1, &v2))?))
        });
        r.random("bch = partial sum when depth-4 brackets vanish", c, 25, |g| {
            let (v1, v2) = (random_nil_with_gap::<S, _>(c, 2, g), random_nil_with_gap::<S, _>(c, 2, g));
            if !lib(depth4_vanish(&v1, &v2))? {
                return Ok(());
            }
            same("bch, partial", &lib(bch(&v1, &v2))?, &lib(bch_partial(&v1, &v2, 3))?)
        });
        r.random("bch of commuting pair is the sum", c, 25, |g| {
            let v = random_nil::<S, _>(c, g);
            let s = S::random(g);
            same("bch(V, sV), (1+s)V", &lib(bch(&v, &v.scale(&s)))?, &v.scale(&(S::one() + &s)))
        });
    }
    Ok(())
}

fn dual<S: Scalar>(r: &mut Runner) -> Result<()> {
    for ctx in r.contexts::<S>(&[(2, 5)])? {
        let c = &ctx;
        r.random("composition: polynomial maps = block formula", c, 50, |g| {
            let target = g.gen_range(0..=1);
            let outer = random_series::<S, _>(c, target, 0, g);
            let inner = random_series::<S, _>(c, 1, 1, g);
            same("compose", &lib(outer.compose(&inner))?, &lib(blockform::compose(&outer, &inner))?)
        });
        r.random("products: polynomial maps = block formula", c, 50, |g| {
            let (a, b) = (random_series::<S, _>(c, 0, 0, g), random_series::<S, _>(c, 0, 0, g));
            same("mul", &lib(a.mul(&b))?, &lib(blockform::mul(&a, &b))?)?;
            let (u, v) = (random_series::<S, _>(c, 1, 0, g), random_series::<S, _>(c, 2, 0, g));
            same("tensor", &lib(u.tensor(&v))?, &lib(blockform::tensor(&u, &v))?)?;
            let q: Vec<S> = (0..=c.order()).map(|_| S::random(g)).collect();
            let x = random_series::<S, _>(c, 0, 1, g);
            same("scalar_subst", &lib(crate::series::scalar_subst(&q, &x))?, &lib(blockform::scalar_subst(&q, &x))?)
        });
        r.random("D_B: polynomial maps = block formula", c, 50, |g| {
            let target = g.gen_range(0..=1);
            let s = random_series::<S, _>(c, target, 0, g);
            let b = random_series::<S, _>(c, 1, 1, g);
            same("D_B", &lib(s.dirderiv_series(&b))?, &lib(blockform::dirderiv_series(&s, &b))?)?;
            let z: Vec<S> = (0..c.dim()).map(|_| S::random(g)).collect();
            same("D_ζ", &lib(s.dirderiv_vector(&z))?, &lib(blockform::dirderiv_vector(&s, &z))?)?;
            let blocks = lib(blockform::blocks(&s))?;
            same("blocks round trip", &lib(blockform::from_blocks(c, target, &blocks))?, &s)
        });
    }
    Ok(())
}

fn appell<S: Scalar, G: Rng + ?Sized>(c: &Context, g: &mut G) -> ShefferOp<S> {
    ShefferOp::from_pair(SPair::new(random_f0(c, g), F1Element::identity(c)).expect("same context"))
}

fn umbral<S: Scalar, G: Rng + ?Sized>(c: &Context, g: &mut G) -> ShefferOp<S> {
    ShefferOp::from_pair(SPair::new(F0Element::one(c), random_f1(c, g)).expect("same context"))
}

fn membership<S: Scalar>(r: &mut Runner) -> Result<()> {
    for ctx in r.contexts::<S>(&[(1, 8), (2, 4)])? {
        let c = &ctx;
        r.random("constructed members are accepted", c, 50, |g| {
            let p = sheffer_build(&random_spair::<S, _>(c, g));
            ensure(is_sheffer(&p), || "Sheffer rejected".into())?;
            let a = appell::<S, _>(c, g);
            ensure(is_sheffer(a.matrix()) && is_appell(a.matrix()), || "Appell rejected".into())?;
            let u = umbral::<S, _>(c, g);
            ensure(is_sheffer(u.matrix()) && is_umbral(u.matrix()), || "umbral rejected".into())
        });
        r.random("deep single-block perturbations are rejected", c, 50, |g| {
            let p = sheffer_build(&random_spair::<S, _>(c, g));
            if c.order() < 3 {
                return Ok(());
            }
            let k = g.gen_range(3..=c.order());
            let i = g.gen_range(2..k);
            let mut block = p.block(i, k).clone();
            let (rows, cols) = block.shape();
            let (row, col) = (g.gen_range(0..rows), g.gen_range(0..cols));
            let mut delta = S::random(g);
            while delta.is_zero() {
                delta = S::random(g);
            }
            block.set(row, col, block.get(row, col).clone() + &delta);
            let mut m = p.matrix().clone();
            lib(m.set_block(i, k, block))?;
            ensure(!is_sheffer(&OpMatrix::new(m)), || format!("perturbed block ({i},{k}) accepted"))
        });
        r.random("membership is stable under products and inverses", c, 50, |g| {
            let (p, q) = (ShefferOp::from_pair(random_spair::<S, _>(c, g)), ShefferOp::from_pair(random_spair::<S, _>(c, g)));
            ensure(is_sheffer(lib(sheffer_mul(&p, &q))?.matrix()), || "Sheffer product".into())?;
            ensure(is_sheffer(lib(sheffer_inverse(&p))?.matrix()), || "Sheffer inverse".into())?;
            let (a, b) = (appell::<S, _>(c, g), appell::<S, _>(c, g));
            let ab = lib(sheffer_mul(&a, &b))?;
            ensure(is_appell(ab.matrix()), || "Appell product".into())?;
            same("Appell commute", &ab, &lib(sheffer_mul(&b, &a))?)?;
            ensure(is_appell(lib(sheffer_inverse(&a))?.matrix()), || "Appell inverse".into())?;
            let (u, v) = (umbral::<S, _>(c, g), umbral::<S, _>(c, g));
            ensure(is_umbral(lib(sheffer_mul(&u, &v))?.matrix()), || "umbral product".into())?;
            ensure(is_umbral(lib(sheffer_inverse(&u))?.matrix()), || "umbral inverse".into())
        });
        r.random("Sheffer = Appell · umbral", c, 50, |g| {
            let p = random_spair::<S, _>(c, g);
            let binv = f1_inverse(&p.b);
            let a = lib(F0Element::new(lib(p.a.series().compose(binv.series()))?))?;
            let appell = ShefferOp::from_pair(lib(SPair::new(a, F1Element::identity(c)))?);
            let umbral = ShefferOp::from_pair(lib(SPair::new(F0Element::one(c), p.b.clone()))?);
            same("factorization", &lib(sheffer_mul(&appell, &umbral))?, &ShefferOp::from_pair(p))
        });
        r.random("umbral binomial identity", c, 50, |g| {
            let u = umbral::<S, _>(c, g);
            let xi: Vec<S> = (0..c.dim()).map(|_| S::random(g)).collect();
            let (w1, w2) = (random_dual::<S, _>(c, g), random_dual::<S, _>(c, g));
            let sum: Vec<S> = w1.components().iter().zip(w2.components()).map(|(a, b)| a.clone() + b).collect();
            let w12 = lib(DualVector::new(c, sum))?;
            let seq: Vec<PolyOnDual<S>> = (0..=c.order()).map(|n| lib(u.sequence(n, &xi))).collect::<std::result::Result<_, _>>()?;
            for n in 0..=c.order() {
                let lhs = lib(seq[n].eval(&w12))?;
                let mut rhs = S::zero();
                for k in 0..=n {
                    let t = lib(seq[k].eval(&w1))? * &lib(seq[n - k].eval(&w2))?;
                    rhs += &t.mul_bigint(&crate::combinat::binomial(n, k));
                }
                ensure(lhs == rhs, || format!("n = {n}"))?;
            }
            Ok(())
        });
    }
    Ok(())
}
