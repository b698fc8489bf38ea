//! JSON documents for every object. Scalars are strings in lowest terms
//! ("-3/2", "1/2+1/3i"); time-dependent coefficients are {"t_poly": [...]}.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::groups::{AlgebraPair, F0Element, F1Element, SPair, TimeCurve};
use crate::opmatrix::{BlockMatrix, NilMatrix, OpMatrix, PolyOnDual};
use crate::scalar::{Context, Gaussian, Rational, Ring, Scalar};
use crate::series::TensorSeries;
use crate::sheffer::{RiordanOp, ShefferOp};
use crate::symtensor::{BlockOp, MultiIndex, SymTensor};
use crate::tpoly::TPoly;

/// Coefficient types with a JSON form.
pub trait JsonCoeff: Ring {
    fn encode(&self) -> Value;
    fn decode(v: &Value) -> Result<Self>;
}

fn decode_scalar<S: Scalar>(v: &Value) -> Result<S> {
    match v {
        Value::String(s) => S::parse(s),
        Value::Number(n) if n.is_i64() => Ok(S::from_int(n.as_i64().expect("checked"))),
        _ => Err(Error::parse(format!("expected a scalar string, got {v}"))),
    }
}

macro_rules! scalar_coeff {
    ($t:ty) => {
        impl JsonCoeff for $t {
            fn encode(&self) -> Value {
                Value::String(self.render())
            }

            fn decode(v: &Value) -> Result<Self> {
                decode_scalar(v)
            }
        }

        impl JsonCoeff for TPoly<$t> {
            fn encode(&self) -> Value {
                json!({ "t_poly": self.coeffs().iter().map(|c| c.render()).collect::<Vec<_>>() })
            }

            fn decode(v: &Value) -> Result<Self> {
                match v.get("t_poly") {
                    Some(cs) => Ok(TPoly::new(array(cs)?.iter().map(decode_scalar).collect::<Result<_>>()?)),
                    None => Ok(TPoly::constant(decode_scalar(v)?)),
                }
            }
        }
    };
}

scalar_coeff!(Rational);
scalar_coeff!(Gaussian);

/// Objects with a JSON document form. Decoding checks that the document
/// matches `ctx`.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(ctx: &Context, v: &Value) -> Result<Self>;
}

pub(crate) fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::parse(format!("missing field `{key}`")))
}

pub(crate) fn array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(format!("expected an array, got {v}")))
}

pub(crate) fn natural(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| Error::parse(format!("expected a natural number, got {v}")))
}

fn kind(v: &Value) -> Option<&str> {
    v.get("kind").and_then(Value::as_str)
}

fn expect_kind(v: &Value, want: &str) -> Result<()> {
    match kind(v) {
        Some(k) if k == want => Ok(()),
        Some(k) => Err(Error::parse(format!("expected kind `{want}`, got `{k}`"))),
        None => Err(Error::parse(format!("missing field `kind` (expected `{want}`)"))),
    }
}

/// The document's dim/order must agree with the context.
fn check_shape(ctx: &Context, v: &Value) -> Result<()> {
    let dim = natural(field(v, "dim")?)?;
    let order = natural(field(v, "order")?)?;
    if dim != ctx.dim() || order != ctx.order() {
        let found = Context::new(dim, order, ctx.ring())?;
        return Err(Error::ContextMismatch { left: *ctx, right: found });
    }
    Ok(())
}

fn multi_index(ctx: &Context, v: &Value) -> Result<MultiIndex> {
    let m = array(v)?
        .iter()
        .map(|e| e.as_u64().map(|x| x as u32).ok_or_else(|| Error::parse(format!("bad exponent {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if m.len() != ctx.dim() {
        return Err(Error::parse(format!("multi-index {v} has length {}, dim is {}", m.len(), ctx.dim())));
    }
    Ok(MultiIndex::new(m))
}

impl<R: JsonCoeff> Json for SymTensor<R> {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms().map(|(m, c)| json!({ "m": m.exponents(), "c": c.encode() })).collect();
        json!({ "degree": self.degree(), "terms": terms })
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        let degree = natural(field(v, "degree")?)?;
        let terms = array(field(v, "terms")?)?
            .iter()
            .map(|t| Ok((multi_index(ctx, field(t, "m")?)?, R::decode(field(t, "c")?)?)))
            .collect::<Result<Vec<_>>>()?;
        SymTensor::from_terms(ctx, degree, terms)
    }
}

impl<R: JsonCoeff> Json for BlockOp<R> {
    fn to_json(&self) -> Value {
        let rows: Vec<Vec<Value>> = self.rows().map(|r| r.iter().map(JsonCoeff::encode).collect()).collect();
        json!({ "src": self.src(), "dst": self.dst(), "rows": rows })
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        let src = natural(field(v, "src")?)?;
        let dst = natural(field(v, "dst")?)?;
        let rows = array(field(v, "rows")?)?
            .iter()
            .map(|r| array(r)?.iter().map(R::decode).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        BlockOp::from_rows(ctx, src, dst, rows)
    }
}

impl<R: JsonCoeff> Json for TensorSeries<R> {
    fn to_json(&self) -> Value {
        let scalar = self.target_degree() == 0;
        let terms: Vec<Value> = self
            .terms()
            .map(|(m, v)| {
                let value = if scalar { v.as_scalar().encode() } else { v.to_json() };
                json!({ "m": m.exponents(), "value": value })
            })
            .collect();
        json!({
            "target_degree": self.target_degree(),
            "order": self.order(),
            "dim": self.context().dim(),
            "terms": terms,
        })
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        check_shape(ctx, v)?;
        let target = natural(field(v, "target_degree")?)?;
        let terms = array(field(v, "terms")?)?
            .iter()
            .map(|t| {
                let m = multi_index(ctx, field(t, "m")?)?;
                let value = field(t, "value")?;
                let value = if target == 0 && !value.is_object() {
                    SymTensor::scalar(ctx, R::decode(value)?)
                } else {
                    SymTensor::from_json(ctx, value)?
                };
                Ok((m, value))
            })
            .collect::<Result<Vec<_>>>()?;
        TensorSeries::from_terms(ctx, target, terms)
    }
}

impl<R: JsonCoeff> Json for F0Element<R> {
    fn to_json(&self) -> Value {
        json!({ "kind": "f0", "series": self.series().to_json() })
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        expect_kind(v, "f0")?;
        F0Element::new(TensorSeries::from_json(ctx, field(v, "series")?)?)
    }
}

impl<R: JsonCoeff> Json for F1Element<R> {
    fn to_json(&self) -> Value {
        json!({ "kind": "f1", "series": self.series().to_json() })
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        expect_kind(v, "f1")?;
        F1Element::new(TensorSeries::from_json(ctx, field(v, "series")?)?)
    }
}

impl<R: JsonCoeff> Json for SPair<R> {
    fn to_json(&self) -> Value {
        json!({ "kind": "spair", "a": self.a.series().to_json(), "b": self.b.series().to_json() })
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        expect_kind(v, "spair")?;
        SPair::from_series(
            TensorSeries::from_json(ctx, field(v, "a")?)?,
            TensorSeries::from_json(ctx, field(v, "b")?)?,
        )
    }
}

impl<R: JsonCoeff> Json for AlgebraPair<R> {
    fn to_json(&self) -> Value {
        json!({ "kind": "algebra_pair", "alpha": self.alpha.to_json(), "beta": self.beta.to_json() })
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        expect_kind(v, "algebra_pair")?;
        AlgebraPair::new(
            TensorSeries::from_json(ctx, field(v, "alpha")?)?,
            TensorSeries::from_json(ctx, field(v, "beta")?)?,
        )
    }
}

fn blocks_json<R: JsonCoeff>(kind: &str, m: &BlockMatrix<R>, strict: bool) -> Value {
    let blocks: Vec<Value> = m
        .blocks()
        .filter(|((i, k), _)| !strict || i < k)
        .map(|((i, k), op)| json!({ "i": i, "k": k, "op": op.to_json() }))
        .collect();
    json!({ "kind": kind, "order": m.order(), "dim": m.context().dim(), "blocks": blocks })
}

/// Blocks not listed are zero.
fn blocks_from_json<R: JsonCoeff>(ctx: &Context, v: &Value) -> Result<BlockMatrix<R>> {
    check_shape(ctx, v)?;
    let mut m = BlockMatrix::zero(ctx);
    for b in array(field(v, "blocks")?)? {
        let i = natural(field(b, "i")?)?;
        let k = natural(field(b, "k")?)?;
        let op = BlockOp::from_json(ctx, field(b, "op")?)?;
        m.set_block(i, k, op)?;
    }
    Ok(m)
}

impl<R: JsonCoeff> Json for OpMatrix<R> {
    fn to_json(&self) -> Value {
        blocks_json("opmatrix", self.matrix(), false)
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        expect_kind(v, "opmatrix")?;
        Ok(OpMatrix::new(blocks_from_json(ctx, v)?))
    }
}

impl<R: JsonCoeff> Json for NilMatrix<R> {
    fn to_json(&self) -> Value {
        blocks_json("nilmatrix", self.matrix(), true)
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        expect_kind(v, "nilmatrix")?;
        NilMatrix::new(blocks_from_json(ctx, v)?)
    }
}

impl<R: JsonCoeff> Json for PolyOnDual<R> {
    fn to_json(&self) -> Value {
        json!({ "components": self.components().iter().map(Json::to_json).collect::<Vec<_>>() })
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        let comps = array(field(v, "components")?)?
            .iter()
            .map(|c| SymTensor::from_json(ctx, c))
            .collect::<Result<Vec<_>>>()?;
        PolyOnDual::new(ctx, comps)
    }
}

impl<R: JsonCoeff> Json for ShefferOp<R> {
    fn to_json(&self) -> Value {
        json!({ "kind": "sheffer", "pair": self.pair().to_json(), "matrix": self.matrix().to_json() })
    }

    /// Either view may be omitted; when both are present they must agree.
    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        expect_kind(v, "sheffer")?;
        let pair = v.get("pair").map(|p| SPair::from_json(ctx, p)).transpose()?;
        let matrix = v.get("matrix").map(|m| OpMatrix::from_json(ctx, m)).transpose()?;
        match (pair, matrix) {
            (Some(p), Some(m)) => {
                let op = ShefferOp::from_pair(p);
                if op.matrix() != &m {
                    return Err(Error::Consistency("pair and matrix disagree".into()));
                }
                Ok(op)
            }
            (Some(p), None) => Ok(ShefferOp::from_pair(p)),
            (None, Some(m)) => ShefferOp::from_matrix(m),
            (None, None) => Err(Error::parse("sheffer document needs `pair` or `matrix`")),
        }
    }
}

impl<R: JsonCoeff> Json for RiordanOp<R> {
    fn to_json(&self) -> Value {
        json!({ "kind": "riordan", "matrix": self.matrix().to_json() })
    }

    fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        expect_kind(v, "riordan")?;
        let m = OpMatrix::from_json(ctx, field(v, "matrix")?)?;
        crate::sheffer::riordan_from_matrix(m)
    }
}

/// A time curve document: {"kind": "time_curve", "bound": d, ...} with
/// `alpha` (F0 flow), `beta` (F1 flow), both (S flow) or `nil` (operator flow).
#[derive(Clone, Debug, PartialEq)]
pub enum CurveDoc<S: Scalar> {
    F0(TimeCurve<TensorSeries<TPoly<S>>>),
    F1(TimeCurve<TensorSeries<TPoly<S>>>),
    S(TimeCurve<AlgebraPair<TPoly<S>>>),
    Nil(TimeCurve<NilMatrix<TPoly<S>>>),
}

fn curve_bound(v: &Value) -> Result<Option<usize>> {
    v.get("bound").map(natural).transpose()
}

fn make_curve<T: crate::groups::TDegree>(value: T, bound: Option<usize>) -> Result<TimeCurve<T>> {
    match bound {
        Some(b) => TimeCurve::new(value, b),
        None => Ok(TimeCurve::from_value(value)),
    }
}

impl<S: Scalar> CurveDoc<S>
where
    TPoly<S>: JsonCoeff,
{
    pub fn from_json(ctx: &Context, v: &Value) -> Result<Self> {
        expect_kind(v, "time_curve")?;
        let bound = curve_bound(v)?;
        if let Some(nil) = v.get("nil") {
            return Ok(CurveDoc::Nil(make_curve(NilMatrix::from_json(ctx, nil)?, bound)?));
        }
        let alpha = v.get("alpha").map(|a| TensorSeries::from_json(ctx, a)).transpose()?;
        let beta = v.get("beta").map(|b| TensorSeries::from_json(ctx, b)).transpose()?;
        match (alpha, beta) {
            (Some(a), Some(b)) => Ok(CurveDoc::S(make_curve(AlgebraPair::new(a, b)?, bound)?)),
            (Some(a), None) => Ok(CurveDoc::F0(make_curve(a, bound)?)),
            (None, Some(b)) => Ok(CurveDoc::F1(make_curve(b, bound)?)),
            (None, None) => Err(Error::parse("time_curve needs `alpha`, `beta` or `nil`")),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), "time_curve".into());
        match self {
            CurveDoc::F0(c) => {
                m.insert("bound".into(), c.bound().into());
                m.insert("alpha".into(), c.value().to_json());
            }
            CurveDoc::F1(c) => {
                m.insert("bound".into(), c.bound().into());
                m.insert("beta".into(), c.value().to_json());
            }
            CurveDoc::S(c) => {
                m.insert("bound".into(), c.bound().into());
                m.insert("alpha".into(), c.value().alpha.to_json());
                m.insert("beta".into(), c.value().beta.to_json());
            }
            CurveDoc::Nil(c) => {
                m.insert("bound".into(), c.bound().into());
                m.insert("nil".into(), c.value().to_json());
            }
        }
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheffer::catalog;

    #[test]
    fn scalars() {
        assert_eq!(Rational::new((-3).into(), 6.into()).encode(), json!("-1/2"));
        assert_eq!(Rational::decode(&json!("4/2")).unwrap(), Rational::from_int(2));
        assert_eq!(Rational::decode(&json!(3)).unwrap(), Rational::from_int(3));
        assert!(Rational::decode(&json!("1/0")).unwrap_err().is_usage());
        let g = Gaussian::new(Rational::new(1.into(), 2.into()), Rational::from_int(-1));
        assert_eq!(g.encode(), json!("1/2-1/1i"));
        assert_eq!(Gaussian::decode(&g.encode()).unwrap(), g);
    }

    #[test]
    fn round_trips() {
        let ctx = Context::of::<Rational>(1, 4).unwrap();
        let op = ShefferOp::from_pair(catalog::<Rational>("hermite", &ctx).unwrap());
        let doc = op.to_json();
        assert_eq!(ShefferOp::from_json(&ctx, &doc).unwrap(), op);
        let pair = op.pair().clone();
        assert_eq!(SPair::from_json(&ctx, &pair.to_json()).unwrap(), pair);
        let m = op.matrix().clone();
        assert_eq!(OpMatrix::from_json(&ctx, &m.to_json()).unwrap(), m);
        let wrong = Context::of::<Rational>(1, 5).unwrap();
        assert!(matches!(SPair::<Rational>::from_json(&wrong, &pair.to_json()), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn symtensor_schema() {
        let ctx = Context::of::<Rational>(2, 3).unwrap();
        let t = SymTensor::basis(&ctx, MultiIndex::new([1, 1])).scale(&Rational::from_int(-2));
        assert_eq!(t.to_json(), json!({"degree": 2, "terms": [{"m": [1, 1], "c": "-2/1"}]}));
        let b = BlockOp::<Rational>::identity(&ctx, 1);
        assert_eq!(b.to_json(), json!({"src": 1, "dst": 1, "rows": [["1/1", "0/1"], ["0/1", "1/1"]]}));
    }
}
