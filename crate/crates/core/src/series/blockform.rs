//! The series operations written directly in terms of the homogeneous blocks
//! C_k ∈ L(Φ^⊙k, Φ^⊙i). These are deliberately naive and serve as an
//! independent route to cross-check the polynomial-map kernels.

use std::collections::BTreeMap;

use crate::error::{same_context, Result};
use crate::scalar::{Context, Ring};
use crate::symtensor::{BlockOp, MultiIndex, SymTensor};

use super::TensorSeries;

/// C_0, ..., C_K.
pub fn blocks<R: Ring>(s: &TensorSeries<R>) -> Result<Vec<BlockOp<R>>> {
    let ctx = s.context();
    let mut maps: Vec<BTreeMap<MultiIndex, SymTensor<R>>> = vec![BTreeMap::new(); ctx.order() + 1];
    for (m, v) in s.terms() {
        maps[m.degree()].insert(m.clone(), v.clone());
    }
    maps.iter()
        .enumerate()
        .map(|(k, map)| BlockOp::from_polymap(ctx, k, s.target_degree(), map))
        .collect()
}

pub fn from_blocks<R: Ring>(ctx: &Context, target: usize, blocks: &[BlockOp<R>]) -> Result<TensorSeries<R>> {
    let mut terms = Vec::new();
    for b in blocks.iter().take(ctx.order() + 1) {
        same_context(ctx, b.context())?;
        terms.extend(b.to_polymap());
    }
    TensorSeries::from_terms(ctx, target, terms)
}

fn sum<R: Ring>(ctx: &Context, src: usize, dst: usize, ops: impl IntoIterator<Item = BlockOp<R>>) -> BlockOp<R> {
    ops.into_iter().fold(BlockOp::zero(ctx, src, dst), |acc, x| &acc + &x)
}

/// D_k = Σ_l B_l ⊙ C_{k−l}
pub fn tensor<R: Ring>(b: &TensorSeries<R>, c: &TensorSeries<R>) -> Result<TensorSeries<R>> {
    let ctx = *b.context();
    let (bb, cb) = (blocks(b)?, blocks(c)?);
    let target = b.target_degree() + c.target_degree();
    let mut out = Vec::new();
    for k in 0..=ctx.order() {
        let mut acc = BlockOp::zero(&ctx, k, target);
        for l in 0..=k {
            acc = &acc + &bb[l].op_sym_product(&cb[k - l])?;
        }
        out.push(acc);
    }
    from_blocks(&ctx, target, &out)
}

/// A_k = Σ_l A¹_l ⊙ A²_{k−l}
pub fn mul<R: Ring>(a1: &TensorSeries<R>, a2: &TensorSeries<R>) -> Result<TensorSeries<R>> {
    tensor(a1, a2)
}

/// table[l][k] = Σ over compositions k = i_1 + ... + i_l (all i ≥ 1) of B_{i_1} ⊙ ... ⊙ B_{i_l}.
fn composition_table<R: Ring>(ctx: &Context, b: &[BlockOp<R>], dst_unit: usize) -> Result<Vec<Vec<BlockOp<R>>>> {
    let order = ctx.order();
    let mut table: Vec<Vec<BlockOp<R>>> = Vec::with_capacity(order + 1);
    table.push((0..=order).map(|k| {
        if k == 0 {
            BlockOp::identity(ctx, 0)
        } else {
            BlockOp::zero(ctx, k, 0)
        }
    }).collect());
    for l in 1..=order {
        let mut row = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = BlockOp::zero(ctx, k, l * dst_unit);
            for i in 1..=k {
                if k - i < l - 1 {
                    break;
                }
                acc = &acc + &b[i].op_sym_product(&table[l - 1][k - i])?;
            }
            row.push(acc);
        }
        table.push(row);
    }
    Ok(table)
}

/// D_k = Σ_l C_l Σ_{i_1+...+i_l = k} B_{i_1} ⊙ ... ⊙ B_{i_l}
pub fn compose<R: Ring>(c: &TensorSeries<R>, b: &TensorSeries<R>) -> Result<TensorSeries<R>> {
    let ctx = *c.context();
    let (cb, bb) = (blocks(c)?, blocks(b)?);
    let table = composition_table(&ctx, &bb, 1)?;
    let target = c.target_degree();
    let out: Result<Vec<_>> = (0..=ctx.order())
        .map(|k| {
            let terms: Result<Vec<_>> = (0..=k).map(|l| cb[l].compose(&table[l][k])).collect();
            Ok(sum(&ctx, k, target, terms?))
        })
        .collect();
    from_blocks(&ctx, target, &out?)
}

/// B_k = Σ_l q_l Σ_{i_1+...+i_l = k} A_{i_1} ⊙ ... ⊙ A_{i_l}
pub fn scalar_subst<R: Ring>(q: &[R], a: &TensorSeries<R>) -> Result<TensorSeries<R>> {
    let ctx = *a.context();
    let table = composition_table(&ctx, &blocks(a)?, 0)?;
    let out: Vec<_> = (0..=ctx.order())
        .map(|k| {
            sum(&ctx, k, 0, q.iter().enumerate().take(k + 1).map(|(l, ql)| table[l][k].scale(ql)))
        })
        .collect();
    from_blocks(&ctx, 0, &out)
}

/// D_k = Σ_l l·C_l(1_{l−1} ⊙ B_{k−l+1})
pub fn dirderiv_series<R: Ring>(c: &TensorSeries<R>, b: &TensorSeries<R>) -> Result<TensorSeries<R>> {
    let ctx = *c.context();
    let (cb, bb) = (blocks(c)?, blocks(b)?);
    let target = c.target_degree();
    let mut out = Vec::new();
    for k in 0..=ctx.order() {
        let mut acc = BlockOp::zero(&ctx, k, target);
        for l in 1..=k {
            let inner = BlockOp::identity(&ctx, l - 1).op_sym_product(&bb[k - l + 1])?;
            acc = &acc + &cb[l].compose(&inner)?.scale(&R::from_int(l as i64));
        }
        out.push(acc);
    }
    from_blocks(&ctx, target, &out)
}

/// D_ζ C with blocks (k+1)·C_{k+1}(1_k ⊙ ζ).
pub fn dirderiv_vector<R: Ring>(c: &TensorSeries<R>, zeta: &[R]) -> Result<TensorSeries<R>> {
    let ctx = *c.context();
    let cb = blocks(c)?;
    let z = BlockOp::from_rows(&ctx, 0, 1, zeta.iter().map(|x| vec![x.clone()]).rev().collect())?;
    let target = c.target_degree();
    let mut out = Vec::new();
    for k in 0..=ctx.order() {
        if k == ctx.order() {
            out.push(BlockOp::zero(&ctx, k, target));
            continue;
        }
        let inner = BlockOp::identity(&ctx, k).op_sym_product(&z)?;
        out.push(cb[k + 1].compose(&inner)?.scale(&R::from_int(k as i64 + 1)));
    }
    from_blocks(&ctx, target, &out)
}
