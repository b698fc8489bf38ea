//! Symmetric tensor algebra over Φ = F^N.
//!
//! The basis vector e_⊙m of Φ^⊙k is normalized so that e_⊙m ⊙ e_⊙m' = e_⊙(m+m')
//! and ⟨ω^⊗k, e_⊙m⟩ = w^m. With this choice Φ^⊙k is the space of homogeneous
//! degree-k polynomials in N variables and ⊙ is polynomial multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::combinat::{binomial, factorial, falling};
use crate::error::{same_context, Error, Result};
use crate::scalar::{Context, Ring};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Self {
        MultiIndex(exponents.into_iter().collect())
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, dim))
    }

    /// The j-th unit vector.
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut m = MultiIndex::zero(dim);
        m.0[j] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(MultiIndex)
    }

    pub fn add_unit(&self, j: usize) -> MultiIndex {
        let mut m = self.clone();
        m.0[j] += 1;
        m
    }

    pub fn sub_unit(&self, j: usize) -> Option<MultiIndex> {
        let mut m = self.clone();
        m.0[j] = m.0[j].checked_sub(1)?;
        Some(m)
    }

    /// First coordinate with a positive exponent.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// k! / (m_1! ... m_N!) with k = |m|.
    pub fn multinomial(&self) -> BigInt {
        let den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * factorial(e as usize));
        factorial(self.degree()) / den
    }

    /// ∏_r (m_r)_{j_r}: the coefficient of w^{m-j} in ∂^j w^m.
    pub fn falling(&self, j: &MultiIndex) -> BigInt {
        self.0
            .iter()
            .zip(&j.0)
            .fold(BigInt::one(), |acc, (&a, &b)| acc * falling(a as usize, b as usize))
    }

    /// ∏_r x_r^{m_r}
    pub fn eval<R: Ring>(&self, x: &[R]) -> R {
        let mut acc = R::one();
        for (xr, &e) in x.iter().zip(&self.0) {
            for _ in 0..e {
                acc = acc * xr;
            }
        }
        acc
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Number of degree-k multi-indices in `dim` variables.
pub fn basis_count(dim: usize, k: usize) -> usize {
    let c = binomial(k + dim - 1, dim - 1);
    usize::try_from(c).expect("basis size fits in usize")
}

/// All degree-k multi-indices in lexicographic order.
pub fn enumerate(dim: usize, k: usize) -> Vec<MultiIndex> {
    fn rec(prefix: &mut Vec<u32>, dim: usize, left: u32, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            out.push(MultiIndex::new(prefix.iter().copied()));
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(prefix, dim, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(basis_count(dim, k));
    rec(&mut Vec::with_capacity(dim), dim, k as u32, &mut out);
    out
}

pub fn enumerate_multiindices(ctx: &Context, k: usize) -> Vec<MultiIndex> {
    enumerate(ctx.dim(), k)
}

/// All multi-indices of total degree ≤ k, grouped by degree.
pub fn enumerate_upto(dim: usize, k: usize) -> Vec<MultiIndex> {
    (0..=k).flat_map(|d| enumerate(dim, d)).collect()
}

/// Position of m in `enumerate(m.dim(), m.degree())`.
pub fn rank(m: &MultiIndex) -> usize {
    let dim = m.dim();
    let mut left = m.degree();
    let mut pos = 0;
    for (j, &e) in m.exponents().iter().enumerate().take(dim - 1) {
        let rest = dim - j - 1;
        for v in 0..e as usize {
            pos += basis_count(rest, left - v);
        }
        left -= e as usize;
    }
    pos
}

/// Element of Φ^⊙k stored as a sparse map e_⊙m ↦ coefficient (zeros omitted).
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor<R> {
    ctx: Context,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, R>,
}

impl<R: Ring> SymTensor<R> {
    pub fn zero(ctx: &Context, degree: usize) -> Self {
        SymTensor { ctx: *ctx, degree, coeffs: BTreeMap::new() }
    }

    /// A degree-0 tensor is a scalar.
    pub fn scalar(ctx: &Context, c: R) -> Self {
        let mut t = SymTensor::zero(ctx, 0);
        t.add_term(MultiIndex::zero(ctx.dim()), c);
        t
    }

    pub fn basis(ctx: &Context, m: MultiIndex) -> Self {
        let mut t = SymTensor::zero(ctx, m.degree());
        t.add_term(m, R::one());
        t
    }

    pub fn from_terms(
        ctx: &Context,
        degree: usize,
        terms: impl IntoIterator<Item = (MultiIndex, R)>,
    ) -> Result<Self> {
        let mut t = SymTensor::zero(ctx, degree);
        for (m, c) in terms {
            if m.dim() != ctx.dim() {
                return Err(Error::parse(format!(
                    "multi-index {m:?} has length {}, expected {}",
                    m.dim(),
                    ctx.dim()
                )));
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: m.degree() });
            }
            t.add_term(m, c);
        }
        Ok(t)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, m: &MultiIndex) -> R {
        self.coeffs.get(m).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &R)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value of a degree-0 tensor.
    pub fn as_scalar(&self) -> R {
        debug_assert_eq!(self.degree, 0);
        self.coeff(&MultiIndex::zero(self.ctx.dim()))
    }

    pub(crate) fn add_term(&mut self, m: MultiIndex, c: R) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &SymTensor<R>, c: &R) {
        debug_assert_eq!(self.degree, other.degree);
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.coeffs {
            self.add_term(m.clone(), x.clone() * c);
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = SymTensor::zero(&self.ctx, self.degree);
        out.add_scaled(self, c);
        out
    }

    pub fn map<R2: Ring>(&self, mut f: impl FnMut(&R) -> R2) -> SymTensor<R2> {
        let mut out = SymTensor::zero(&self.ctx, self.degree);
        for (m, c) in &self.coeffs {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Re-tag the context (used when lifting coefficients to another ring).
    pub(crate) fn with_context(mut self, ctx: &Context) -> Self {
        self.ctx = *ctx;
        self
    }

    /// Coefficient convolution: the symmetric product in Φ^⊙(a+b).
    pub fn sym_product(&self, other: &SymTensor<R>) -> Result<Self> {
        same_context(&self.ctx, &other.ctx)?;
        Ok(self.product_unchecked(other))
    }

    pub(crate) fn product_unchecked(&self, other: &SymTensor<R>) -> Self {
        let mut out = SymTensor::zero(&self.ctx, self.degree + other.degree);
        for (m1, a) in &self.coeffs {
            for (m2, b) in &other.coeffs {
                out.add_term(m1.add(m2), a.clone() * b);
            }
        }
        out
    }

    /// ⟨ω^⊗k, f⟩ = Σ_m f(m) w^m
    pub fn pairing(&self, omega: &DualVector<R>) -> Result<R> {
        same_context(&self.ctx, &omega.ctx)?;
        let mut acc = R::zero();
        for (m, c) in &self.coeffs {
            acc += &(m.eval(&omega.components) * c);
        }
        Ok(acc)
    }

    /// Dense coefficient vector in lexicographic basis order.
    pub fn to_dense(&self) -> Vec<R> {
        let mut v = vec![R::zero(); basis_count(self.ctx.dim(), self.degree)];
        for (m, c) in &self.coeffs {
            v[rank(m)] = c.clone();
        }
        v
    }

    pub fn from_dense(ctx: &Context, degree: usize, v: &[R]) -> Self {
        let mut t = SymTensor::zero(ctx, degree);
        for (m, c) in enumerate(ctx.dim(), degree).into_iter().zip(v) {
            t.add_term(m, c.clone());
        }
        t
    }
}

impl<R: Ring> Add for &SymTensor<R> {
    type Output = SymTensor<R>;

    fn add(self, rhs: &SymTensor<R>) -> SymTensor<R> {
        assert_eq!(self.ctx, rhs.ctx, "context mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &R::one());
        out
    }
}

impl<R: Ring> Sub for &SymTensor<R> {
    type Output = SymTensor<R>;

    fn sub(self, rhs: &SymTensor<R>) -> SymTensor<R> {
        assert_eq!(self.ctx, rhs.ctx, "context mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &-R::one());
        out
    }
}

impl<R: Ring> Neg for &SymTensor<R> {
    type Output = SymTensor<R>;

    fn neg(self) -> SymTensor<R> {
        self.scale(&-R::one())
    }
}

/// Coordinates of ω ∈ Φ'.
#[derive(Clone, Debug, PartialEq)]
pub struct DualVector<R> {
    ctx: Context,
    components: Vec<R>,
}

impl<R: Ring> DualVector<R> {
    pub fn new(ctx: &Context, components: Vec<R>) -> Result<Self> {
        if components.len() != ctx.dim() {
            return Err(Error::DegreeMismatch { expected: ctx.dim(), found: components.len() });
        }
        Ok(DualVector { ctx: *ctx, components })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn components(&self) -> &[R] {
        &self.components
    }
}

/// Dense matrix of an operator Φ^⊙src → Φ^⊙dst in the monomial bases.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOp<R> {
    ctx: Context,
    src: usize,
    dst: usize,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> BlockOp<R> {
    pub fn zero(ctx: &Context, src: usize, dst: usize) -> Self {
        let rows = basis_count(ctx.dim(), dst);
        let cols = basis_count(ctx.dim(), src);
        BlockOp { ctx: *ctx, src, dst, rows, cols, data: vec![R::zero(); rows * cols] }
    }

    /// 1_k
    pub fn identity(ctx: &Context, k: usize) -> Self {
        let mut op = BlockOp::zero(ctx, k, k);
        for r in 0..op.rows {
            op.data[r * op.cols + r] = R::one();
        }
        op
    }

    pub fn from_rows(ctx: &Context, src: usize, dst: usize, rows: Vec<Vec<R>>) -> Result<Self> {
        let mut op = BlockOp::zero(ctx, src, dst);
        if rows.len() != op.rows || rows.iter().any(|r| r.len() != op.cols) {
            return Err(Error::parse(format!(
                "block {src}->{dst} must be {}x{}",
                op.rows, op.cols
            )));
        }
        op.data = rows.into_iter().flatten().collect();
        Ok(op)
    }

    /// Operator whose column for e_⊙m is `f(m)`.
    pub fn from_columns(
        ctx: &Context,
        src: usize,
        dst: usize,
        mut f: impl FnMut(&MultiIndex) -> SymTensor<R>,
    ) -> Self {
        let mut op = BlockOp::zero(ctx, src, dst);
        for (c, m) in enumerate(ctx.dim(), src).iter().enumerate() {
            let col = f(m);
            debug_assert_eq!(col.degree(), dst);
            for (r, x) in col.coeffs {
                let r = rank(&r);
                op.data[r * op.cols + c] = x;
            }
        }
        op
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: R) {
        self.data[r * self.cols + c] = x;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && *self == BlockOp::identity(&self.ctx, self.src)
    }

    /// A e_⊙m
    pub fn column(&self, m: &MultiIndex) -> SymTensor<R> {
        let c = rank(m);
        let mut t = SymTensor::zero(&self.ctx, self.dst);
        for (r, mr) in enumerate(self.ctx.dim(), self.dst).into_iter().enumerate() {
            t.add_term(mr, self.data[r * self.cols + c].clone());
        }
        t
    }

    pub fn apply(&self, f: &SymTensor<R>) -> Result<SymTensor<R>> {
        same_context(&self.ctx, f.context())?;
        if f.degree() != self.src {
            return Err(Error::DegreeMismatch { expected: self.src, found: f.degree() });
        }
        Ok(SymTensor::from_dense(&self.ctx, self.dst, &self.matvec(&f.to_dense())))
    }

    fn matvec(&self, v: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            for (c, x) in v.iter().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() && !x.is_zero() {
                    *o += &(a.clone() * x);
                }
            }
        }
        out
    }

    /// Operator composition self ∘ other.
    pub fn compose(&self, other: &BlockOp<R>) -> Result<Self> {
        same_context(&self.ctx, &other.ctx)?;
        if other.dst != self.src {
            return Err(Error::DegreeMismatch { expected: self.src, found: other.dst });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &BlockOp<R>) -> Self {
        let mut out = BlockOp::zero(&self.ctx, other.src, self.dst);
        for r in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[r * self.cols + j];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other.data[j * other.cols + c];
                    if !b.is_zero() {
                        out.data[r * out.cols + c] += &(a.clone() * b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = x.clone() * c;
        }
        out
    }

    pub fn map<R2: Ring>(&self, f: impl FnMut(&R) -> R2) -> BlockOp<R2> {
        BlockOp {
            ctx: self.ctx,
            src: self.src,
            dst: self.dst,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &BlockOp<R>) {
        debug_assert_eq!((self.src, self.dst), (other.src, other.dst));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    /// Polynomial-map view: m ↦ coefficient of x^m in A ξ^⊗k, i.e. multinomial(k;m)·A e_⊙m.
    pub fn to_polymap(&self) -> BTreeMap<MultiIndex, SymTensor<R>> {
        enumerate(self.ctx.dim(), self.src)
            .into_iter()
            .map(|m| {
                let w = R::from_bigint(m.multinomial());
                let col = self.column(&m).scale(&w);
                (m, col)
            })
            .collect()
    }

    /// Inverse of `to_polymap`; missing keys are zero.
    pub fn from_polymap(
        ctx: &Context,
        src: usize,
        dst: usize,
        map: &BTreeMap<MultiIndex, SymTensor<R>>,
    ) -> Result<Self> {
        for (m, v) in map {
            if m.degree() != src {
                return Err(Error::DegreeMismatch { expected: src, found: m.degree() });
            }
            if v.degree() != dst {
                return Err(Error::DegreeMismatch { expected: dst, found: v.degree() });
            }
            same_context(ctx, v.context())?;
        }
        Ok(BlockOp::from_columns(ctx, src, dst, |m| match map.get(m) {
            Some(v) => v.map(|c| c.div_bigint(&m.multinomial())),
            None => SymTensor::zero(ctx, dst),
        }))
    }

    /// A ⊙ B, defined by (A⊙B)ξ^⊗(a+b) = (Aξ^⊗a) ⊙ (Bξ^⊗b).
    pub fn op_sym_product(&self, other: &BlockOp<R>) -> Result<Self> {
        same_context(&self.ctx, &other.ctx)?;
        let pa = self.to_polymap();
        let pb = other.to_polymap();
        let mut prod: BTreeMap<MultiIndex, SymTensor<R>> = BTreeMap::new();
        for (m1, a) in &pa {
            if a.is_zero() {
                continue;
            }
            for (m2, b) in &pb {
                if b.is_zero() {
                    continue;
                }
                let term = a.product_unchecked(b);
                prod.entry(m1.add(m2))
                    .and_modify(|t| t.add_scaled(&term, &R::one()))
                    .or_insert(term);
            }
        }
        BlockOp::from_polymap(
            &self.ctx,
            self.src + other.src,
            self.dst + other.dst,
            &prod,
        )
    }
}

impl<R: Ring> Add for &BlockOp<R> {
    type Output = BlockOp<R>;

    fn add(self, rhs: &BlockOp<R>) -> BlockOp<R> {
        assert_eq!(self.ctx, rhs.ctx, "context mismatch");
        let mut out = self.clone();
        out.add_assign_unchecked(rhs);
        out
    }
}

impl<R: Ring> Sub for &BlockOp<R> {
    type Output = BlockOp<R>;

    fn sub(self, rhs: &BlockOp<R>) -> BlockOp<R> {
        assert_eq!(self.ctx, rhs.ctx, "context mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }
}

impl<R: Ring> Neg for &BlockOp<R> {
    type Output = BlockOp<R>;

    fn neg(self) -> BlockOp<R> {
        self.scale(&-R::one())
    }
}
