//! Truncated upper block-triangular operators on polynomials on Φ′.
//!
//! A matrix stores the blocks P_ik ∈ L(Φ^⊙k, Φ^⊙i) for 0 ≤ i ≤ k ≤ K. Upper
//! triangularity means no discarded block (k > K) can feed a kept one, so
//! products, inverses, exp and log are exact on this window.

mod fields;
mod poly;

pub use fields::{number_op, vector_field_op, zero_grad_op};
pub use poly::{grad_pow, polarized_derivative, PolyOnDual};

use std::ops::{Add, Sub};

use crate::error::{same_context, Error, Result};
use crate::groups::{TDegree, TimeCurve};
use crate::scalar::{Context, Ring, Scalar};
use crate::series::inv_factorial;
use crate::symtensor::BlockOp;
use crate::tpoly::TPoly;

fn idx(i: usize, k: usize) -> usize {
    k * (k + 1) / 2 + i
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockMatrix<R> {
    ctx: Context,
    blocks: Vec<BlockOp<R>>,
}

impl<R: Ring> BlockMatrix<R> {
    pub fn zero(ctx: &Context) -> Self {
        let mut blocks = Vec::new();
        for k in 0..=ctx.order() {
            for i in 0..=k {
                blocks.push(BlockOp::zero(ctx, k, i));
            }
        }
        BlockMatrix { ctx: *ctx, blocks }
    }

    pub fn identity(ctx: &Context) -> Self {
        let mut m = BlockMatrix::zero(ctx);
        for k in 0..=ctx.order() {
            m.blocks[idx(k, k)] = BlockOp::identity(ctx, k);
        }
        m
    }

    /// Block-diagonal matrix with c_k·1_k on the diagonal.
    pub fn diagonal(ctx: &Context, mut c: impl FnMut(usize) -> R) -> Self {
        let mut m = BlockMatrix::zero(ctx);
        for k in 0..=ctx.order() {
            m.blocks[idx(k, k)] = BlockOp::identity(ctx, k).scale(&c(k));
        }
        m
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.ctx.order()
    }

    /// P_ik; panics unless i ≤ k ≤ K.
    pub fn block(&self, i: usize, k: usize) -> &BlockOp<R> {
        assert!(i <= k && k <= self.order(), "block ({i},{k}) outside the window");
        &self.blocks[idx(i, k)]
    }

    pub fn set_block(&mut self, i: usize, k: usize, op: BlockOp<R>) -> Result<()> {
        same_context(&self.ctx, op.context())?;
        if i > k || k > self.order() {
            return Err(Error::Precondition(format!("block ({i},{k}) outside the window")));
        }
        if op.src() != k || op.dst() != i {
            return Err(Error::DegreeMismatch { expected: k, found: op.src() });
        }
        self.blocks[idx(i, k)] = op;
        Ok(())
    }

    /// All blocks as ((i, k), P_ik), column by column.
    pub fn blocks(&self) -> impl Iterator<Item = ((usize, usize), &BlockOp<R>)> {
        (0..=self.order())
            .flat_map(|k| (0..=k).map(move |i| (i, k)))
            .map(move |(i, k)| ((i, k), &self.blocks[idx(i, k)]))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_context(&self.ctx, &other.ctx)?;
        let mut out = BlockMatrix::zero(&self.ctx);
        for k in 0..=self.order() {
            for i in 0..=k {
                let acc = &mut out.blocks[idx(i, k)];
                for j in i..=k {
                    let (a, b) = (&self.blocks[idx(i, j)], &other.blocks[idx(j, k)]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc.add_assign_unchecked(&a.compose_unchecked(b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        BlockMatrix { ctx: self.ctx, blocks: self.blocks.iter().map(|b| b.scale(c)).collect() }
    }

    pub fn map<R2: Ring>(&self, mut f: impl FnMut(&R) -> R2) -> BlockMatrix<R2> {
        BlockMatrix { ctx: self.ctx, blocks: self.blocks.iter().map(|b| b.map(&mut f)).collect() }
    }

    /// Scale block (i, k) by w(i, k).
    pub fn weight(&self, mut w: impl FnMut(usize, usize) -> R) -> Self {
        let mut out = self.clone();
        for k in 0..=self.order() {
            for i in 0..=k {
                let b = &mut out.blocks[idx(i, k)];
                *b = b.scale(&w(i, k));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(BlockOp::is_zero)
    }

    pub fn is_unipotent(&self) -> bool {
        (0..=self.order()).all(|k| self.blocks[idx(k, k)].is_identity())
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..=self.order()).all(|k| self.blocks[idx(k, k)].is_zero())
    }

    /// The same operator seen at a smaller truncation order.
    pub fn restrict(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::DegreeOverflow { degree: order, order: self.order() });
        }
        let ctx = self.ctx.with_order(order)?;
        let blocks = (0..=order)
            .flat_map(|k| (0..=k).map(move |i| (i, k)))
            .map(|(i, k)| relabel(&self.blocks[idx(i, k)], &ctx))
            .collect();
        Ok(BlockMatrix { ctx, blocks })
    }

    pub fn apply(&self, p: &PolyOnDual<R>) -> Result<PolyOnDual<R>> {
        same_context(&self.ctx, p.context())?;
        let comps = (0..=self.order())
            .map(|i| {
                let mut acc = crate::symtensor::SymTensor::zero(&self.ctx, i);
                for k in i..=self.order() {
                    let f = &p.components()[k];
                    if !f.is_zero() {
                        acc = &acc + &self.blocks[idx(i, k)].apply(f)?;
                    }
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        PolyOnDual::new(&self.ctx, comps)
    }
}

fn relabel<R: Ring>(b: &BlockOp<R>, ctx: &Context) -> BlockOp<R> {
    let rows: Vec<Vec<R>> = b.rows().map(<[R]>::to_vec).collect();
    BlockOp::from_rows(ctx, b.src(), b.dst(), rows).expect("same shape")
}

impl<R: Ring> Add for &BlockMatrix<R> {
    type Output = BlockMatrix<R>;

    fn add(self, rhs: &BlockMatrix<R>) -> BlockMatrix<R> {
        assert_eq!(self.ctx, rhs.ctx, "context mismatch");
        BlockMatrix { ctx: self.ctx, blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a + b).collect() }
    }
}

impl<R: Ring> Sub for &BlockMatrix<R> {
    type Output = BlockMatrix<R>;

    fn sub(self, rhs: &BlockMatrix<R>) -> BlockMatrix<R> {
        assert_eq!(self.ctx, rhs.ctx, "context mismatch");
        BlockMatrix { ctx: self.ctx, blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a - b).collect() }
    }
}

/// Upper block-triangular operator; `unipotent` records P_kk = 1_k for all k.
#[derive(Clone, Debug, PartialEq)]
pub struct OpMatrix<R> {
    matrix: BlockMatrix<R>,
    unipotent: bool,
}

impl<R: Ring> OpMatrix<R> {
    pub fn new(matrix: BlockMatrix<R>) -> Self {
        let unipotent = matrix.is_unipotent();
        OpMatrix { matrix, unipotent }
    }

    pub fn identity(ctx: &Context) -> Self {
        OpMatrix { matrix: BlockMatrix::identity(ctx), unipotent: true }
    }

    pub fn matrix(&self) -> &BlockMatrix<R> {
        &self.matrix
    }

    pub fn into_matrix(self) -> BlockMatrix<R> {
        self.matrix
    }

    pub fn context(&self) -> &Context {
        self.matrix.context()
    }

    pub fn is_unipotent(&self) -> bool {
        self.unipotent
    }

    pub fn block(&self, i: usize, k: usize) -> &BlockOp<R> {
        self.matrix.block(i, k)
    }

    pub fn apply(&self, p: &PolyOnDual<R>) -> Result<PolyOnDual<R>> {
        self.matrix.apply(p)
    }
}

/// Strictly upper block-triangular matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct NilMatrix<R> {
    matrix: BlockMatrix<R>,
}

impl<R: Ring> NilMatrix<R> {
    pub fn new(matrix: BlockMatrix<R>) -> Result<Self> {
        if !matrix.is_strictly_upper() {
            return Err(Error::Precondition("diagonal blocks must vanish".into()));
        }
        Ok(NilMatrix { matrix })
    }

    pub fn zero(ctx: &Context) -> Self {
        NilMatrix { matrix: BlockMatrix::zero(ctx) }
    }

    pub fn matrix(&self) -> &BlockMatrix<R> {
        &self.matrix
    }

    pub fn context(&self) -> &Context {
        self.matrix.context()
    }

    pub fn block(&self, i: usize, k: usize) -> &BlockOp<R> {
        self.matrix.block(i, k)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, c: &R) -> Self {
        NilMatrix { matrix: self.matrix.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_context(self.context(), other.context())?;
        Ok(NilMatrix { matrix: &self.matrix + &other.matrix })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_context(self.context(), other.context())?;
        Ok(NilMatrix { matrix: &self.matrix - &other.matrix })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(NilMatrix { matrix: self.matrix.mul(&other.matrix)? })
    }

    pub fn apply(&self, p: &PolyOnDual<R>) -> Result<PolyOnDual<R>> {
        self.matrix.apply(p)
    }
}

impl<S: Scalar> TDegree for NilMatrix<TPoly<S>> {
    fn t_degree(&self) -> usize {
        self.matrix
            .blocks
            .iter()
            .flat_map(|b| b.rows().flat_map(|r| r.iter().map(TPoly::degree)).collect::<Vec<_>>())
            .max()
            .unwrap_or(0)
    }
}

/// P_ik = Σ_j P¹_ij P²_jk
pub fn opmat_mul<R: Ring>(p1: &OpMatrix<R>, p2: &OpMatrix<R>) -> Result<OpMatrix<R>> {
    Ok(OpMatrix::new(p1.matrix.mul(&p2.matrix)?))
}

/// Q_{i,i+1} = −P_{i,i+1}, Q_ik = −P_ik − Σ_{j=i+1}^{k−1} Q_ij P_jk
pub fn opmat_inverse<R: Ring>(p: &OpMatrix<R>) -> Result<OpMatrix<R>> {
    if !p.unipotent {
        return Err(Error::NotUnipotent);
    }
    let ctx = *p.context();
    let mut q = BlockMatrix::identity(&ctx);
    for k in 1..=ctx.order() {
        for i in (0..k).rev() {
            let mut acc = -p.block(i, k);
            for j in i + 1..k {
                acc = &acc - &q.blocks[idx(i, j)].compose_unchecked(p.block(j, k));
            }
            q.blocks[idx(i, k)] = acc;
        }
    }
    Ok(OpMatrix { matrix: q, unipotent: true })
}

/// exp(V) = Σ_{n≤K} Vⁿ/n!; higher powers vanish on the window.
pub fn nil_exp<R: Ring>(v: &NilMatrix<R>) -> OpMatrix<R> {
    let ctx = *v.context();
    let mut acc = BlockMatrix::identity(&ctx);
    let mut pow = BlockMatrix::identity(&ctx);
    for n in 1..=ctx.order() {
        pow = pow.mul(&v.matrix).expect("same context");
        acc = &acc + &pow.scale(&inv_factorial(n));
    }
    OpMatrix { matrix: acc, unipotent: true }
}

/// log(P) = Σ_{n≤K} (−1)^{n+1}(P−1)ⁿ/n
pub fn opmat_log<R: Ring>(p: &OpMatrix<R>) -> Result<NilMatrix<R>> {
    if !p.unipotent {
        return Err(Error::NotUnipotent);
    }
    let ctx = *p.context();
    let x = &p.matrix - &BlockMatrix::identity(&ctx);
    let mut acc = BlockMatrix::zero(&ctx);
    let mut pow = BlockMatrix::identity(&ctx);
    for n in 1..=ctx.order() {
        pow = pow.mul(&x)?;
        let c = R::one().div_bigint(&num_bigint::BigInt::from(n));
        let term = pow.scale(&c);
        acc = if n % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    NilMatrix::new(acc)
}

/// [V¹, V²] = V¹V² − V²V¹
pub fn commutator<R: Ring>(v1: &NilMatrix<R>, v2: &NilMatrix<R>) -> Result<NilMatrix<R>> {
    v1.mul(v2)?.sub(&v2.mul(v1)?)
}

/// P(t) = Σ_l I_l(t) with I_0 = 1 and I_l(t) = ∫₀ᵗ I_{l−1}(s)V(s) ds. The
/// series stops at l = K since I_l is supported l block-diagonals above the
/// diagonal.
pub fn opmat_flow<S: Scalar>(curve: &TimeCurve<NilMatrix<TPoly<S>>>) -> BlockMatrix<TPoly<S>> {
    let v = curve.value().matrix();
    let ctx = *v.context();
    let mut term = BlockMatrix::identity(&ctx);
    let mut acc = term.clone();
    for _ in 1..=ctx.order() {
        term = term.mul(v).expect("same context").map(TPoly::integral);
        acc = &acc + &term;
    }
    acc
}

pub fn opmat_evolve<S: Scalar>(curve: &TimeCurve<NilMatrix<TPoly<S>>>) -> OpMatrix<S> {
    OpMatrix::new(opmat_flow(curve).map(|p| p.eval(&S::one())))
}

/// P′ − PV
pub fn opmat_residual<S: Scalar>(
    curve: &TimeCurve<NilMatrix<TPoly<S>>>,
    flow: &BlockMatrix<TPoly<S>>,
) -> BlockMatrix<TPoly<S>> {
    &flow.map(TPoly::derivative) - &flow.mul(curve.value().matrix()).expect("same context")
}

/// Coefficients as constant polynomials in t.
pub fn lift_nil<S: Scalar>(v: &NilMatrix<S>) -> NilMatrix<TPoly<S>> {
    NilMatrix { matrix: v.matrix.map(|c| TPoly::constant(c.clone())) }
}

impl<S: Scalar> NilMatrix<TPoly<S>> {
    pub fn time_scaled(v: &NilMatrix<S>, p: &TPoly<S>) -> Self {
        NilMatrix { matrix: v.matrix.map(|c| p.scale(c)) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn ctx1(k: usize) -> Context {
        Context::of::<Rational>(1, k).unwrap()
    }

    /// 1D nilpotent matrix with V_{i,i+1} = f(i).
    fn superdiag(k: usize, f: impl Fn(usize) -> i64) -> NilMatrix<Rational> {
        let c = ctx1(k);
        let mut m = BlockMatrix::zero(&c);
        for i in 0..k {
            m.set_block(i, i + 1, BlockOp::from_rows(&c, i + 1, i, vec![vec![Rational::from_int(f(i))]]).unwrap())
                .unwrap();
        }
        NilMatrix::new(m).unwrap()
    }

    fn entry(m: &BlockMatrix<Rational>, i: usize, k: usize) -> Rational {
        m.block(i, k).get(0, 0).clone()
    }

    #[test]
    fn exp_of_superdiagonal_squares_gives_factorials() {
        let v = superdiag(6, |i| ((i + 1) * (i + 1)) as i64);
        let p = nil_exp(&v);
        for (k, want) in [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120), (6, 720)] {
            assert_eq!(entry(p.matrix(), 0, k), Rational::from_int(want));
        }
        assert_eq!(opmat_log(&p).unwrap(), v);
        assert_eq!(nil_exp(&NilMatrix::<Rational>::zero(&ctx1(4))), OpMatrix::identity(&ctx1(4)));
    }

    #[test]
    fn commutator_of_gradient_and_m_grad2() {
        let grad = superdiag(6, |i| (i + 1) as i64);
        let mgrad2 = superdiag(6, |i| ((i + 1) * i) as i64);
        let c = commutator(&grad, &mgrad2).unwrap();
        for k in 2..=6 {
            let i = k - 2;
            assert_eq!(entry(c.matrix(), i, k), Rational::from_int(((i + 2) * (i + 1)) as i64));
        }
        assert!(commutator(&grad, &grad).unwrap().is_zero());
    }

    #[test]
    fn inverse_and_flow() {
        let v = superdiag(5, |i| i as i64 + 2);
        let p = nil_exp(&v);
        let q = opmat_inverse(&p).unwrap();
        assert_eq!(opmat_mul(&p, &q).unwrap(), OpMatrix::identity(&ctx1(5)));
        assert_eq!(opmat_mul(&q, &p).unwrap(), OpMatrix::identity(&ctx1(5)));
        assert_eq!(q, nil_exp(&v.scale(&Rational::from_int(-1))));

        let constant = TimeCurve::from_value(lift_nil(&v));
        assert_eq!(opmat_evolve(&constant), p);
        let flow = opmat_flow(&constant);
        assert!(opmat_residual(&constant, &flow).is_zero());
        let linear = TimeCurve::from_value(NilMatrix::time_scaled(&v, &TPoly::t()));
        assert_eq!(opmat_evolve(&linear), nil_exp(&v.scale(&Rational::new(1.into(), 2.into()))));

        let diag = OpMatrix::new(BlockMatrix::diagonal(&ctx1(3), |k| Rational::from_int(k as i64 + 1)));
        assert_eq!(opmat_inverse(&diag).unwrap_err(), Error::NotUnipotent);
    }
}
