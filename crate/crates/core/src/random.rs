//! Random objects for the property suites. Coefficients are small exact
//! scalars and most of them are zero, which keeps the arithmetic cheap while
//! still exercising every block.

use rand::Rng;

use crate::groups::{AlgebraPair, F0Element, F1Element, SPair};
use crate::opmatrix::{BlockMatrix, NilMatrix, OpMatrix, PolyOnDual};
use crate::scalar::{Context, Scalar};
use crate::series::TensorSeries;
use crate::symtensor::{enumerate, BlockOp, DualVector, MultiIndex, SymTensor};
use crate::tpoly::TPoly;

const DENSITY: f64 = 0.6;

fn sparse<S: Scalar, G: Rng + ?Sized>(rng: &mut G) -> S {
    if rng.gen_bool(DENSITY) {
        S::random(rng)
    } else {
        S::zero()
    }
}

pub fn random_symtensor<S: Scalar, G: Rng + ?Sized>(ctx: &Context, degree: usize, rng: &mut G) -> SymTensor<S> {
    let terms: Vec<_> = enumerate(ctx.dim(), degree).into_iter().map(|m| (m, sparse(rng))).collect();
    SymTensor::from_terms(ctx, degree, terms).expect("valid degree")
}

/// Series with values in Φ^⊙target supported in degrees start..=K.
pub fn random_series<S: Scalar, G: Rng + ?Sized>(
    ctx: &Context,
    target: usize,
    start: usize,
    rng: &mut G,
) -> TensorSeries<S> {
    let mut terms = Vec::new();
    for d in start..=ctx.order() {
        for m in enumerate(ctx.dim(), d) {
            terms.push((m, random_symtensor(ctx, target, rng)));
        }
    }
    TensorSeries::from_terms(ctx, target, terms).expect("degrees within order")
}

pub fn random_alpha<S: Scalar, G: Rng + ?Sized>(ctx: &Context, rng: &mut G) -> TensorSeries<S> {
    random_series(ctx, 0, 1, rng)
}

pub fn random_beta<S: Scalar, G: Rng + ?Sized>(ctx: &Context, rng: &mut G) -> TensorSeries<S> {
    random_series(ctx, 1, 2, rng)
}

pub fn random_f0<S: Scalar, G: Rng + ?Sized>(ctx: &Context, rng: &mut G) -> F0Element<S> {
    F0Element::new(&TensorSeries::one(ctx) + &random_alpha(ctx, rng)).expect("constant term 1")
}

pub fn random_f1<S: Scalar, G: Rng + ?Sized>(ctx: &Context, rng: &mut G) -> F1Element<S> {
    F1Element::new(&TensorSeries::identity(ctx) + &random_beta(ctx, rng)).expect("linear term 1")
}

pub fn random_spair<S: Scalar, G: Rng + ?Sized>(ctx: &Context, rng: &mut G) -> SPair<S> {
    SPair::new(random_f0(ctx, rng), random_f1(ctx, rng)).expect("same context")
}

pub fn random_algebra_pair<S: Scalar, G: Rng + ?Sized>(ctx: &Context, rng: &mut G) -> AlgebraPair<S> {
    AlgebraPair::new(random_alpha(ctx, rng), random_beta(ctx, rng)).expect("valid pair")
}

pub fn random_block<S: Scalar, G: Rng + ?Sized>(ctx: &Context, src: usize, dst: usize, rng: &mut G) -> BlockOp<S> {
    let mut op = BlockOp::zero(ctx, src, dst);
    let (rows, cols) = op.shape();
    for r in 0..rows {
        for c in 0..cols {
            op.set(r, c, sparse(rng));
        }
    }
    op
}

/// Strictly upper matrix with nonzero blocks only where k − i ≥ gap.
pub fn random_nil_with_gap<S: Scalar, G: Rng + ?Sized>(ctx: &Context, gap: usize, rng: &mut G) -> NilMatrix<S> {
    let mut m = BlockMatrix::zero(ctx);
    for k in 1..=ctx.order() {
        for i in 0..k {
            if k - i >= gap.max(1) {
                m.set_block(i, k, random_block(ctx, k, i, rng)).expect("valid block");
            }
        }
    }
    NilMatrix::new(m).expect("strictly upper")
}

pub fn random_nil<S: Scalar, G: Rng + ?Sized>(ctx: &Context, rng: &mut G) -> NilMatrix<S> {
    random_nil_with_gap(ctx, 1, rng)
}

pub fn random_unipotent<S: Scalar, G: Rng + ?Sized>(ctx: &Context, rng: &mut G) -> OpMatrix<S> {
    OpMatrix::new(&BlockMatrix::identity(ctx) + random_nil(ctx, rng).matrix())
}

pub fn random_dual<S: Scalar, G: Rng + ?Sized>(ctx: &Context, rng: &mut G) -> DualVector<S> {
    DualVector::new(ctx, (0..ctx.dim()).map(|_| S::random(rng)).collect()).expect("dimension")
}

pub fn random_poly<S: Scalar, G: Rng + ?Sized>(ctx: &Context, degree: usize, rng: &mut G) -> PolyOnDual<S> {
    let comps = (0..=degree.min(ctx.order())).map(|k| random_symtensor(ctx, k, rng)).collect();
    PolyOnDual::new(ctx, comps).expect("degrees in range")
}

fn random_tpoly<S: Scalar, G: Rng + ?Sized>(bound: usize, rng: &mut G) -> TPoly<S> {
    TPoly::new((0..=bound).map(|_| sparse(rng)).collect())
}

/// Coefficients that are random polynomials in t of degree ≤ bound.
pub fn random_time_series<S: Scalar, G: Rng + ?Sized>(
    ctx: &Context,
    target: usize,
    start: usize,
    bound: usize,
    rng: &mut G,
) -> TensorSeries<TPoly<S>> {
    let mut s = TensorSeries::zero(ctx, target);
    for d in start..=ctx.order() {
        for m in enumerate(ctx.dim(), d) {
            let terms: Vec<(MultiIndex, TPoly<S>)> =
                enumerate(ctx.dim(), target).into_iter().map(|e| (e, random_tpoly(bound, rng))).collect();
            let v = SymTensor::from_terms(ctx, target, terms).expect("valid degree");
            s = &s + &TensorSeries::from_terms(ctx, target, [(m, v)]).expect("in range");
        }
    }
    s
}

pub fn random_time_nil<S: Scalar, G: Rng + ?Sized>(ctx: &Context, bound: usize, rng: &mut G) -> NilMatrix<TPoly<S>> {
    let mut m = BlockMatrix::zero(ctx);
    for k in 1..=ctx.order() {
        for i in 0..k {
            let mut op = BlockOp::zero(ctx, k, i);
            let (rows, cols) = op.shape();
            for r in 0..rows {
                for c in 0..cols {
                    op.set(r, c, random_tpoly(bound, rng));
                }
            }
            m.set_block(i, k, op).expect("valid block");
        }
    }
    NilMatrix::new(m).expect("strictly upper")
}
