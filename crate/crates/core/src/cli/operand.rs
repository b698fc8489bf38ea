//! Operands: inline JSON, `@path`, or a catalog name.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{AlgebraPair, F0Element, F1Element, SPair};
use crate::json::{CurveDoc, Json, JsonCoeff};
use crate::opmatrix::{NilMatrix, OpMatrix, PolyOnDual};
use crate::scalar::{Context, Scalar};
use crate::series::TensorSeries;
use crate::sheffer::{catalog, RiordanOp, ShefferOp};
use crate::tpoly::TPoly;

pub(crate) enum Obj<S: Scalar> {
    Series(TensorSeries<S>),
    F0(F0Element<S>),
    F1(F1Element<S>),
    Pair(SPair<S>),
    Algebra(AlgebraPair<S>),
    Op(OpMatrix<S>),
    Nil(NilMatrix<S>),
    Sheffer(ShefferOp<S>),
    Riordan(RiordanOp<S>),
    Curve(CurveDoc<S>),
    Poly { n: Option<usize>, poly: PolyOnDual<S> },
    Membership { sheffer: bool, appell: bool, umbral: bool },
}

impl<S: Scalar + JsonCoeff> Obj<S>
where
    TPoly<S>: JsonCoeff,
{
    pub(crate) fn name(&self) -> &'static str {
        match self {
            Obj::Series(_) => "series",
            Obj::F0(_) => "f0",
            Obj::F1(_) => "f1",
            Obj::Pair(_) => "spair",
            Obj::Algebra(_) => "algebra_pair",
            Obj::Op(_) => "opmatrix",
            Obj::Nil(_) => "nilmatrix",
            Obj::Sheffer(_) => "sheffer",
            Obj::Riordan(_) => "riordan",
            Obj::Curve(_) => "time_curve",
            Obj::Poly { .. } => "polynomial",
            Obj::Membership { .. } => "membership",
        }
    }

    pub(crate) fn to_json(&self) -> Value {
        match self {
            Obj::Series(s) => s.to_json(),
            Obj::F0(a) => a.to_json(),
            Obj::F1(b) => b.to_json(),
            Obj::Pair(p) => p.to_json(),
            Obj::Algebra(w) => w.to_json(),
            Obj::Op(m) => m.to_json(),
            Obj::Nil(v) => v.to_json(),
            Obj::Sheffer(p) => p.to_json(),
            Obj::Riordan(r) => r.to_json(),
            Obj::Curve(c) => c.to_json(),
            Obj::Poly { n, poly } => {
                let mut v = json!({ "kind": "polynomial", "text": super::table::poly_text(poly), "poly": poly.to_json() });
                if let Some(n) = n {
                    v["n"] = json!(n);
                }
                v
            }
            Obj::Membership { sheffer, appell, umbral } => {
                json!({ "kind": "membership", "sheffer": sheffer, "appell": appell, "umbral": umbral })
            }
        }
    }
}

fn read(text: &str) -> Result<Option<Value>> {
    let raw = if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::parse(format!("cannot read `{path}`: {e}")))?
    } else if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        return Ok(None);
    };
    serde_json::from_str(&raw).map(Some).map_err(|e| Error::parse(format!("invalid JSON: {e}")))
}

pub(crate) fn load<S: Scalar + JsonCoeff>(ctx: &Context, text: &str) -> Result<Obj<S>>
where
    TPoly<S>: JsonCoeff,
{
    let Some(doc) = read(text)? else {
        return Ok(Obj::Sheffer(ShefferOp::from_pair(catalog(text, ctx)?)));
    };
    let obj = match doc.get("kind").and_then(Value::as_str) {
        Some("f0") => Obj::F0(Json::from_json(ctx, &doc)?),
        Some("f1") => Obj::F1(Json::from_json(ctx, &doc)?),
        Some("spair") => Obj::Pair(Json::from_json(ctx, &doc)?),
        Some("algebra_pair") => Obj::Algebra(Json::from_json(ctx, &doc)?),
        Some("opmatrix") => Obj::Op(Json::from_json(ctx, &doc)?),
        Some("nilmatrix") => Obj::Nil(Json::from_json(ctx, &doc)?),
        Some("sheffer") => Obj::Sheffer(Json::from_json(ctx, &doc)?),
        Some("riordan") => Obj::Riordan(Json::from_json(ctx, &doc)?),
        Some("time_curve") => Obj::Curve(CurveDoc::from_json(ctx, &doc)?),
        Some("polynomial") => {
            let n = doc.get("n").map(crate::json::natural).transpose()?;
            Obj::Poly { n, poly: PolyOnDual::from_json(ctx, crate::json::field(&doc, "poly")?)? }
        }
        Some(k) => return Err(Error::parse(format!("unsupported operand kind `{k}`"))),
        None if doc.get("target_degree").is_some() => Obj::Series(Json::from_json(ctx, &doc)?),
        None if doc.get("components").is_some() => Obj::Poly { n: None, poly: PolyOnDual::from_json(ctx, &doc)? },
        None => return Err(Error::parse("operand has no `kind`")),
    };
    Ok(obj)
}
