use num_bigint::BigInt;

use crate::combinat::{factorial, falling};
use crate::error::{Error, Result};
use crate::groups::AlgebraPair;
use crate::opmatrix::{commutator, nil_exp, opmat_log, opmat_mul, BlockMatrix, NilMatrix, OpMatrix};
use crate::scalar::Ring;
use crate::symtensor::BlockOp;

use super::ShefferOp;

/// Upper block-triangular matrix with blocks (i!/k!)·P_ik, so that row i has
/// ordinary generating function Σ_k R_ik ξ^⊗k = B(ξ)^⊙i·A(ξ).
#[derive(Clone, Debug, PartialEq)]
pub struct RiordanOp<R> {
    matrix: OpMatrix<R>,
}

impl<R: Ring> RiordanOp<R> {
    pub fn matrix(&self) -> &OpMatrix<R> {
        &self.matrix
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(RiordanOp { matrix: opmat_mul(&self.matrix, &other.matrix)? })
    }
}

pub fn riordan_transform<R: Ring>(p: &ShefferOp<R>) -> RiordanOp<R> {
    let m = p.matrix().matrix().weight(|i, k| R::one().div_bigint(&(factorial(k) / factorial(i))));
    RiordanOp { matrix: OpMatrix::new(m) }
}

/// Accepts `m` only if it is the image of a Sheffer operator.
pub fn riordan_from_matrix<R: Ring>(m: OpMatrix<R>) -> Result<RiordanOp<R>> {
    let r = RiordanOp { matrix: m };
    riordan_inverse_transform(&r)?;
    Ok(r)
}

/// Undo the i!/k! scaling; fails if the result is not Sheffer.
pub fn riordan_inverse_transform<R: Ring>(r: &RiordanOp<R>) -> Result<ShefferOp<R>> {
    let m = r.matrix.matrix().weight(|i, k| R::from_bigint(factorial(k) / factorial(i)));
    ShefferOp::from_matrix(OpMatrix::new(m))
}

/// V_ik = c_β(i,k)·(β_{k−i+1}⊙1_{i−1}) + c_α(i,k)·(α_{k−i}⊙1_i)
fn assemble<R: Ring>(
    w: &AlgebraPair<R>,
    c_beta: impl Fn(usize, usize) -> BigInt,
    c_alpha: impl Fn(usize, usize) -> BigInt,
) -> NilMatrix<R> {
    let ctx = *w.context();
    let alpha = w.alpha_blocks().expect("scalar series");
    let beta = w.beta_blocks().expect("vector series");
    let mut m = BlockMatrix::zero(&ctx);
    for k in 1..=ctx.order() {
        for i in 0..k {
            let mut v = BlockOp::zero(&ctx, k, i);
            match beta.get(k - i + 1) {
                Some(b) if i >= 1 && !b.is_zero() => {
                    let t = b.op_sym_product(&BlockOp::identity(&ctx, i - 1)).expect("same context");
                    v = &v + &t.map(|c| c.mul_bigint(&c_beta(i, k)));
                }
                _ => {}
            }
            let a = &alpha[k - i];
            if !a.is_zero() {
                let t = a.op_sym_product(&BlockOp::identity(&ctx, i)).expect("same context");
                v = &v + &t.map(|c| c.mul_bigint(&c_alpha(i, k)));
            }
            m.set_block(i, k, v).expect("valid block");
        }
    }
    NilMatrix::new(m).expect("strictly upper")
}

/// The Lie map R(w) = log of the Sheffer operator of EXP(w).
pub fn lie_map<R: Ring>(w: &AlgebraPair<R>) -> NilMatrix<R> {
    assemble(w, |i, k| falling(k, k - i + 1), |i, k| falling(k, k - i))
}

pub fn riordan_lie_map<R: Ring>(w: &AlgebraPair<R>) -> NilMatrix<R> {
    assemble(w, |i, _| BigInt::from(i), |_, _| BigInt::from(1))
}

/// log(exp V¹ · exp V²)
pub fn bch<R: Ring>(v1: &NilMatrix<R>, v2: &NilMatrix<R>) -> Result<NilMatrix<R>> {
    opmat_log(&opmat_mul(&nil_exp(v1), &nil_exp(v2))?)
}

/// Partial sums V¹ + V² + ½[V¹,V²] + (1/12)([V¹,[V¹,V²]] − [V²,[V¹,V²]]) up
/// to bracket depth 1, 2 or 3.
pub fn bch_partial<R: Ring>(v1: &NilMatrix<R>, v2: &NilMatrix<R>, depth: usize) -> Result<NilMatrix<R>> {
    if !(1..=3).contains(&depth) {
        return Err(Error::Precondition(format!("bch depth must be 1, 2 or 3, got {depth}")));
    }
    let mut acc = v1.add(v2)?;
    if depth >= 2 {
        let c = commutator(v1, v2)?;
        acc = acc.add(&c.scale(&R::one().div_bigint(&BigInt::from(2))))?;
        if depth == 3 {
            let t = commutator(v1, &c)?.sub(&commutator(v2, &c)?)?;
            acc = acc.add(&t.scale(&R::one().div_bigint(&BigInt::from(12))))?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::s_exp;
    use crate::opmatrix::vector_field_op;
    use crate::scalar::{Context, Rational};
    use crate::series::TensorSeries;
    use crate::sheffer::catalog;
    use crate::symtensor::{MultiIndex, SymTensor};

    fn ctx(dim: usize, k: usize) -> Context {
        Context::of::<Rational>(dim, k).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn xi_pair(c: &Context) -> AlgebraPair<Rational> {
        let a = TensorSeries::scalar_monomial(c, MultiIndex::new([1]), q(1));
        AlgebraPair::new(a, TensorSeries::zero(c, 1)).unwrap()
    }

    fn xi2_pair(c: &Context) -> AlgebraPair<Rational> {
        let b = TensorSeries::from_terms(c, 1, [(MultiIndex::new([2]), SymTensor::basis(c, MultiIndex::new([1])))]).unwrap();
        AlgebraPair::new(TensorSeries::zero(c, 0), b).unwrap()
    }

    #[test]
    fn one_dimensional_lie_maps() {
        let c = ctx(1, 6);
        let v = lie_map(&xi2_pair(&c));
        let r = riordan_lie_map(&xi2_pair(&c));
        let g = lie_map(&xi_pair(&c));
        let g0 = riordan_lie_map(&xi_pair(&c));
        for i in 0..6 {
            assert_eq!(v.block(i, i + 1).get(0, 0), &q(((i + 1) * i) as i64));
            assert_eq!(r.block(i, i + 1).get(0, 0), &q(i as i64));
            assert_eq!(g.block(i, i + 1).get(0, 0), &q(i as i64 + 1));
            assert_eq!(g0.block(i, i + 1).get(0, 0), &q(1));
        }
        assert!(lie_map(&AlgebraPair::<Rational>::zero(&c)).is_zero());
        assert_eq!(v, vector_field_op(&xi2_pair(&c)));
    }

    #[test]
    fn log_of_exp_is_lie_map() {
        let c = ctx(1, 6);
        let w = xi_pair(&c).add(&xi2_pair(&c)).unwrap();
        let p = ShefferOp::from_pair(s_exp(&w).unwrap());
        assert_eq!(opmat_log(p.matrix()).unwrap(), lie_map(&w));
        let rio = riordan_transform(&p);
        assert_eq!(opmat_log(rio.matrix()).unwrap(), riordan_lie_map(&w));
        assert_eq!(riordan_inverse_transform(&rio).unwrap(), p);
    }

    #[test]
    fn riordan_examples() {
        let c = ctx(1, 6);
        let pascal = ShefferOp::from_pair(catalog::<Rational>("pascal", &c).unwrap());
        let r = riordan_transform(&pascal);
        for k in 0..=6 {
            for i in 0..=k {
                let want = crate::combinat::binomial(k, i);
                assert_eq!(r.matrix().block(i, k).get(0, 0), &Rational::from_integer(want));
            }
        }
        let e = nil_exp(&riordan_lie_map(&xi2_pair(&c)));
        for k in 1..=6 {
            for i in 1..=k {
                let want = crate::combinat::binomial(k - 1, i - 1);
                assert_eq!(e.block(i, k).get(0, 0), &Rational::from_integer(want));
            }
        }
    }

    #[test]
    fn bch_examples() {
        let c = ctx(1, 6);
        let v1 = lie_map(&xi_pair(&c));
        let v2 = lie_map(&xi2_pair(&c));
        let z = NilMatrix::zero(&c);
        assert_eq!(bch(&v1, &z).unwrap(), v1);
        assert_eq!(bch(&v1, &v1.scale(&q(2))).unwrap(), v1.scale(&q(3)));
        let full = bch(&v1, &v2).unwrap();
        assert_eq!(nil_exp(&full), opmat_mul(&nil_exp(&v1), &nil_exp(&v2)).unwrap());
        let partial = bch_partial(&v1, &v2, 3).unwrap();
        for k in 0..=6 {
            for i in 0..=k {
                if k - i <= 3 {
                    assert_eq!(full.block(i, k), partial.block(i, k), "block ({i},{k})");
                }
            }
        }
    }
}
