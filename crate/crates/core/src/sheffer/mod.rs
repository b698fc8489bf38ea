//! Sheffer operators: the matrix picture of S(Φ).
//!
//! A pair (A, B) corresponds to the operator whose rows have generating
//! functions i!·Σ_k P_ik ξ^⊗k/k! = B(ξ)^⊙i·A(ξ).

mod catalog;
mod lie;

pub use catalog::{catalog, CATALOG_NAMES};
pub use lie::{
    bch, bch_partial, lie_map, riordan_from_matrix, riordan_inverse_transform, riordan_lie_map, riordan_transform, RiordanOp,
};

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::groups::{f0_inverse, s_inverse, s_mul, F0Element, SPair};
use crate::opmatrix::{opmat_inverse, opmat_mul, BlockMatrix, OpMatrix, PolyOnDual};
use crate::scalar::{Context, Ring};
use crate::series::TensorSeries;
use crate::symtensor::{BlockOp, MultiIndex, SymTensor};

/// A Sheffer operator together with its pair (A, B).
#[derive(Clone, Debug, PartialEq)]
pub struct ShefferOp<R> {
    matrix: OpMatrix<R>,
    pair: SPair<R>,
}

impl<R: Ring> ShefferOp<R> {
    pub fn from_pair(pair: SPair<R>) -> Self {
        ShefferOp { matrix: sheffer_build(&pair), pair }
    }

    /// Fails unless `matrix` is a Sheffer operator.
    pub fn from_matrix(matrix: OpMatrix<R>) -> Result<Self> {
        let pair = sheffer_factor(&matrix, true)?;
        Ok(ShefferOp { matrix, pair })
    }

    pub fn identity(ctx: &Context) -> Self {
        ShefferOp { matrix: OpMatrix::identity(ctx), pair: SPair::identity(ctx) }
    }

    pub fn matrix(&self) -> &OpMatrix<R> {
        &self.matrix
    }

    pub fn pair(&self) -> &SPair<R> {
        &self.pair
    }

    pub fn context(&self) -> &Context {
        self.matrix.context()
    }

    /// Both views describe the same element.
    pub fn validate(&self) -> Result<()> {
        if sheffer_build(&self.pair) != self.matrix {
            return Err(Error::Consistency("matrix and pair disagree".into()));
        }
        Ok(())
    }

    /// The n-th member p_n(ω) = Σ_i ⟨ω^⊗i, P_in ξ^⊗n⟩ of the sequence.
    pub fn sequence(&self, n: usize, xi: &[R]) -> Result<PolyOnDual<R>> {
        self.matrix.apply(&linear_power(self.context(), xi, n)?)
    }
}

/// ⟨ω, ξ⟩ⁿ as a polynomial on Φ′.
pub fn linear_power<R: Ring>(ctx: &Context, xi: &[R], n: usize) -> Result<PolyOnDual<R>> {
    if xi.len() != ctx.dim() {
        return Err(Error::DegreeMismatch { expected: ctx.dim(), found: xi.len() });
    }
    let terms = crate::symtensor::enumerate(ctx.dim(), n)
        .into_iter()
        .map(|m| {
            let c = m.eval(xi).mul_bigint(&m.multinomial());
            (m, c)
        })
        .collect::<Vec<_>>();
    PolyOnDual::from_coefficients(ctx, terms)
}

/// P_kn = (n!/k!)·[B^⊙k A]_n read as a block operator.
pub fn sheffer_build<R: Ring>(p: &SPair<R>) -> OpMatrix<R> {
    let ctx = *p.context();
    let mut m = BlockMatrix::identity(&ctx);
    let mut row = p.a.series().clone();
    for k in 0..=ctx.order() {
        if k > 0 {
            row = p.b.series().tensor(&row).expect("same context");
        }
        for n in k + 1..=ctx.order() {
            let scale = factorial(n) / factorial(k);
            let part = homogeneous_map(&row, n);
            let op = BlockOp::from_polymap(&ctx, n, k, &part).expect("shape").map(|c| c.mul_bigint(&scale));
            m.set_block(k, n, op).expect("valid block");
        }
    }
    OpMatrix::new(m)
}

fn homogeneous_map<R: Ring>(s: &TensorSeries<R>, n: usize) -> BTreeMap<MultiIndex, SymTensor<R>> {
    s.terms().filter(|(m, _)| m.degree() == n).map(|(m, v)| (m.clone(), v.clone())).collect()
}

/// Σ_n (c/n!)·P_in ξ^⊗n as a series with values in Φ^⊙i.
fn row_series<R: Ring>(p: &OpMatrix<R>, i: usize) -> TensorSeries<R> {
    let ctx = *p.context();
    let mut s = TensorSeries::zero(&ctx, i);
    let fi = factorial(i);
    for n in i..=ctx.order() {
        let den = factorial(n);
        for (m, v) in p.block(i, n).to_polymap() {
            s = &s + &TensorSeries::from_terms(&ctx, i, [(m, v.map(|c| c.mul_bigint(&fi).div_bigint(&den)))]).expect("in range");
        }
    }
    s
}

/// A from row 0, then B = (row 1)·A⁻¹, which is the recurrence
/// B_n = P_1n/n! − Σ_{m<n} A_{n−m} B_m solved in one step. With `check`,
/// fails unless rebuilding from (A, B) reproduces P.
pub fn sheffer_factor<R: Ring>(p: &OpMatrix<R>, check: bool) -> Result<SPair<R>> {
    if !p.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let a = F0Element::new(row_series(p, 0))?;
    let b = row_series(p, 1).tensor(f0_inverse(&a).series())?;
    let pair = SPair::new(a, crate::groups::F1Element::new(b)?)?;
    if check && sheffer_build(&pair) != *p {
        return Err(Error::NotSheffer);
    }
    Ok(pair)
}

pub fn is_sheffer<R: Ring>(p: &OpMatrix<R>) -> bool {
    sheffer_factor(p, true).is_ok()
}

/// Sheffer with P_1n = n·P_{0,n−1}⊙1₁, i.e. B = ξ.
pub fn is_appell<R: Ring>(p: &OpMatrix<R>) -> bool {
    if !is_sheffer(p) {
        return false;
    }
    let ctx = *p.context();
    let one = BlockOp::identity(&ctx, 1);
    (2..=ctx.order()).all(|n| {
        let rhs = p.block(0, n - 1).op_sym_product(&one).expect("same context").map(|c| c.mul_bigint(&BigInt::from(n)));
        *p.block(1, n) == rhs
    })
}

/// Sheffer with P_0n = 0 for n ≥ 1, i.e. A = 1.
pub fn is_umbral<R: Ring>(p: &OpMatrix<R>) -> bool {
    is_sheffer(p) && (1..=p.context().order()).all(|n| p.block(0, n).is_zero())
}

pub fn sheffer_mul<R: Ring>(p1: &ShefferOp<R>, p2: &ShefferOp<R>) -> Result<ShefferOp<R>> {
    let out = ShefferOp { matrix: opmat_mul(&p1.matrix, &p2.matrix)?, pair: s_mul(&p1.pair, &p2.pair)? };
    if cfg!(debug_assertions) {
        out.validate()?;
    }
    Ok(out)
}

pub fn sheffer_inverse<R: Ring>(p: &ShefferOp<R>) -> Result<ShefferOp<R>> {
    let out = ShefferOp { matrix: opmat_inverse(&p.matrix)?, pair: s_inverse(&p.pair) };
    if cfg!(debug_assertions) {
        out.validate()?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn ctx() -> Context {
        Context::of::<Rational>(1, 6).unwrap()
    }

    fn entry(p: &OpMatrix<Rational>, i: usize, k: usize) -> Rational {
        p.block(i, k).get(0, 0).clone()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn hermite() {
        let h = ShefferOp::from_pair(catalog::<Rational>("hermite", &ctx()).unwrap());
        let m = h.matrix();
        assert_eq!(entry(m, 0, 2), q(-1));
        assert_eq!(entry(m, 1, 3), q(-3));
        assert_eq!(entry(m, 2, 3), q(0));
        assert!(is_sheffer(m) && is_appell(m) && !is_umbral(m));
        assert_eq!(sheffer_factor(m, true).unwrap(), *h.pair());
        let mut broken = m.matrix().clone();
        let mut b = broken.block(2, 3).clone();
        b.set(0, 0, q(1));
        broken.set_block(2, 3, b).unwrap();
        assert!(!is_sheffer(&OpMatrix::new(broken)));

        let z2 = PolyOnDual::monomial(&ctx(), MultiIndex::new([2]), q(1)).unwrap();
        let want = PolyOnDual::from_coefficients(&ctx(), [(MultiIndex::new([2]), q(1)), (MultiIndex::new([0]), q(-1))]).unwrap();
        assert_eq!(m.apply(&z2).unwrap(), want);
        assert_eq!(h.sequence(2, &[q(1)]).unwrap(), want);
    }

    #[test]
    fn touchard_is_stirling() {
        let t = ShefferOp::from_pair(catalog::<Rational>("touchard", &ctx()).unwrap());
        let m = t.matrix();
        assert_eq!(entry(m, 2, 4), q(7));
        assert_eq!(entry(m, 3, 5), q(25));
        assert!(is_sheffer(m) && is_umbral(m) && !is_appell(m));
        let f = ShefferOp::from_pair(catalog::<Rational>("falling_factorial", &ctx()).unwrap());
        assert_eq!(sheffer_mul(&t, &f).unwrap(), ShefferOp::identity(&ctx()));
    }

    #[test]
    fn identity_and_inverse() {
        let id = ShefferOp::<Rational>::from_pair(SPair::identity(&ctx()));
        assert_eq!(id.matrix(), &OpMatrix::identity(&ctx()));
        let p = ShefferOp::from_pair(catalog::<Rational>("pascal", &ctx()).unwrap());
        let inv = sheffer_inverse(&p).unwrap();
        assert_eq!(sheffer_mul(&p, &inv).unwrap(), id);
        let h = ShefferOp::from_pair(catalog::<Rational>("hermite", &ctx()).unwrap());
        let h2 = sheffer_mul(&h, &h).unwrap();
        assert!(is_appell(h2.matrix()));
        assert_eq!(h2.pair().a.series().scalar_coeff(&MultiIndex::new([2])), q(-1));
    }

    #[test]
    fn bernoulli_factor() {
        let b = ShefferOp::from_pair(catalog::<Rational>("bernoulli", &ctx()).unwrap());
        let pair = sheffer_factor(b.matrix(), true).unwrap();
        let r = |n, d| Rational::new(BigInt::from(n), BigInt::from(d));
        let want = [r(1, 1), r(-1, 2), r(1, 12), r(0, 1), r(-1, 720), r(0, 1), r(1, 30240)];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(&pair.a.series().scalar_coeff(&MultiIndex::new([n as u32])), w);
        }
        assert!(is_appell(b.matrix()));
    }
}
