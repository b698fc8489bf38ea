use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::combinat::falling;
use crate::groups::AlgebraPair;
use crate::scalar::{Context, Ring};
use crate::symtensor::{enumerate, BlockOp, MultiIndex, SymTensor};

use super::{BlockMatrix, NilMatrix, OpMatrix};

/// Matrix of α(∇) + M(β(∇)), assembled column by column from its action on
/// monomials: ∂^j w^m = (m)_j w^(m−j), and β contributes w_r·∂^j.
pub fn vector_field_op<R: Ring>(w: &AlgebraPair<R>) -> NilMatrix<R> {
    build(w, false)
}

/// Matrix of α(∇₀) + N·M(β(∇₀)) where ∇₀^k acts on degree n as ∇^k/(n)_k.
pub fn zero_grad_op<R: Ring>(w: &AlgebraPair<R>) -> NilMatrix<R> {
    build(w, true)
}

/// N: multiplies the degree-n component by n.
pub fn number_op<R: Ring>(ctx: &Context) -> OpMatrix<R> {
    OpMatrix::new(BlockMatrix::diagonal(ctx, |n| R::from_int(n as i64)))
}

fn build<R: Ring>(w: &AlgebraPair<R>, zero_gradient: bool) -> NilMatrix<R> {
    let ctx = *w.context();
    let alpha: Vec<(MultiIndex, R)> = w.alpha.terms().map(|(j, v)| (j.clone(), v.as_scalar())).collect();
    let mut beta: Vec<(usize, MultiIndex, R)> = Vec::new();
    for (j, v) in w.beta.terms() {
        for (e, c) in v.terms() {
            let r = e.first_nonzero().expect("degree-1 basis");
            beta.push((r, j.clone(), c.clone()));
        }
    }

    let mut m_out = BlockMatrix::zero(&ctx);
    for n in 1..=ctx.order() {
        let mut cols: BTreeMap<usize, BTreeMap<MultiIndex, SymTensor<R>>> = BTreeMap::new();
        for m in enumerate(ctx.dim(), n) {
            // coefficient of ∂^j w^m, times the output degree for N·M(·)
            let weigh = |c: &R, j: &MultiIndex, out_degree: Option<usize>| -> R {
                if !zero_gradient {
                    return c.mul_bigint(&m.falling(j));
                }
                let mut x = c.mul_bigint(&m.falling(j)).div_bigint(&falling(n, j.degree()));
                if let Some(d) = out_degree {
                    x = x.mul_bigint(&BigInt::from(d));
                }
                x
            };
            let mut push = |q: MultiIndex, c: R| {
                let d = q.degree();
                let col = cols.entry(d).or_default();
                col.entry(m.clone()).or_insert_with(|| SymTensor::zero(&ctx, d)).add_term(q, c);
            };
            for (j, a) in &alpha {
                if let Some(q) = m.checked_sub(j) {
                    push(q, weigh(a, j, None));
                }
            }
            for (r, j, b) in &beta {
                if let Some(q) = m.checked_sub(j) {
                    let q = q.add_unit(*r);
                    let d = q.degree();
                    push(q, weigh(b, j, Some(d)));
                }
            }
        }
        for (i, col) in cols {
            let op = BlockOp::from_columns(&ctx, n, i, |m| col.get(m).cloned().unwrap_or_else(|| SymTensor::zero(&ctx, i)));
            m_out.set_block(i, n, op).expect("valid block");
        }
    }
    NilMatrix::new(m_out).expect("fields lower the degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::s_bracket;
    use crate::scalar::Rational;
    use crate::series::TensorSeries;

    fn ctx(dim: usize, k: usize) -> Context {
        Context::of::<Rational>(dim, k).unwrap()
    }

    fn pair(c: &Context, alpha: &[(Vec<u32>, i64)], beta: &[(usize, Vec<u32>, i64)]) -> AlgebraPair<Rational> {
        let a = TensorSeries::from_scalar_terms(c, alpha.iter().map(|(m, x)| (MultiIndex::new(m.clone()), Rational::from_int(*x))))
            .unwrap();
        let mut b = TensorSeries::zero(c, 1);
        for (r, m, x) in beta {
            let e = SymTensor::basis(c, MultiIndex::unit(c.dim(), *r)).scale(&Rational::from_int(*x));
            b = &b + &TensorSeries::from_terms(c, 1, [(MultiIndex::new(m.clone()), e)]).unwrap();
        }
        AlgebraPair::new(a, b).unwrap()
    }

    fn superdiag(v: &NilMatrix<Rational>, i: usize) -> Rational {
        v.block(i, i + 1).get(0, 0).clone()
    }

    #[test]
    fn one_dimensional_fields() {
        let c = ctx(1, 6);
        let grad = vector_field_op(&pair(&c, &[(vec![1], 1)], &[]));
        let mgrad2 = vector_field_op(&pair(&c, &[], &[(0, vec![2], 1)]));
        let zero = pair(&c, &[], &[(0, vec![2], 1)]);
        let nm = zero_grad_op(&zero);
        for i in 0..6 {
            assert_eq!(superdiag(&grad, i), Rational::from_int(i as i64 + 1));
            assert_eq!(superdiag(&mgrad2, i), Rational::from_int(((i + 1) * i) as i64));
            assert_eq!(superdiag(&nm, i), Rational::from_int(i as i64));
        }
        assert!(vector_field_op(&AlgebraPair::<Rational>::zero(&c)).is_zero());
        let grad0 = zero_grad_op(&pair(&c, &[(vec![1], 1)], &[]));
        for i in 0..6 {
            assert_eq!(superdiag(&grad0, i), Rational::from_int(1));
        }
        let n = number_op::<Rational>(&c);
        assert_eq!(n.block(3, 3).get(0, 0), &Rational::from_int(3));
        assert!(!n.is_unipotent());
    }

    #[test]
    fn m_beta_grad2_on_z2() {
        let c = ctx(1, 4);
        let v = vector_field_op(&pair(&c, &[], &[(0, vec![2], 1)]));
        let z2 = super::super::PolyOnDual::monomial(&c, MultiIndex::new([2]), Rational::from_int(1)).unwrap();
        let out = v.apply(&z2).unwrap();
        assert_eq!(out, super::super::PolyOnDual::monomial(&c, MultiIndex::new([1]), Rational::from_int(2)).unwrap());
    }

    #[test]
    fn bracket_realization_2d() {
        let c = ctx(2, 5);
        let w1 = pair(&c, &[(vec![1, 0], 2), (vec![1, 1], -1)], &[(0, vec![0, 2], 1), (1, vec![1, 1], 3)]);
        let w2 = pair(&c, &[(vec![0, 1], 1), (vec![2, 0], 1)], &[(1, vec![2, 0], -2), (0, vec![1, 2], 1)]);
        let lhs = crate::opmatrix::commutator(&vector_field_op(&w1), &vector_field_op(&w2)).unwrap();
        let rhs = vector_field_op(&s_bracket(&w1, &w2).unwrap());
        assert_eq!(lhs, rhs);
    }
}
