use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groups::{f0_exp, f0_inverse, F0Element, SPair};
use crate::scalar::{Context, Ring};
use crate::series::{inv_factorial, TensorSeries};
use crate::symtensor::MultiIndex;

pub const CATALOG_NAMES: [&str; 6] = ["identity", "hermite", "bernoulli", "touchard", "falling_factorial", "pascal"];

/// Classical one-dimensional pairs (A, B).
pub fn catalog<R: Ring>(name: &str, ctx: &Context) -> Result<SPair<R>> {
    if !CATALOG_NAMES.contains(&name) {
        return Err(Error::UnknownCatalog(name.to_string()));
    }
    if name == "identity" {
        return Ok(SPair::identity(ctx));
    }
    if ctx.dim() != 1 {
        return Err(Error::CatalogDim(name.to_string()));
    }
    let k = ctx.order();
    let scalar = |f: &dyn Fn(usize) -> R| {
        TensorSeries::from_scalar_terms(ctx, (0..=k).map(|n| (MultiIndex::new([n as u32]), f(n)))).expect("in range")
    };
    let vector = |f: &dyn Fn(usize) -> R| {
        TensorSeries::from_components(ctx, &[scalar(&|n| if n == 0 { R::zero() } else { f(n) })]).expect("one component")
    };
    let xi = || vector(&|n| if n == 1 { R::one() } else { R::zero() });
    let one = || scalar(&|n| if n == 0 { R::one() } else { R::zero() });
    let pair = match name {
        "hermite" => {
            let half = R::from_int(-1).div_bigint(&BigInt::from(2));
            let a = f0_exp(&scalar(&|n| if n == 2 { half.clone() } else { R::zero() }))?;
            SPair::new(a, crate::groups::F1Element::new(xi())?)?
        }
        "bernoulli" => {
            // (e^ξ − 1)/ξ = Σ ξⁿ/(n+1)!
            let g = F0Element::new(scalar(&|n| inv_factorial(n + 1)))?;
            SPair::new(f0_inverse(&g), crate::groups::F1Element::new(xi())?)?
        }
        "touchard" => SPair::from_series(one(), vector(&inv_factorial))?,
        "falling_factorial" => SPair::from_series(
            one(),
            vector(&|n| {
                let x = R::one().div_bigint(&BigInt::from(n));
                if n % 2 == 1 { x } else { -x }
            }),
        )?,
        "pascal" => SPair::from_series(scalar(&|_| R::one()), vector(&|_| R::one()))?,
        _ => unreachable!(),
    };
    Ok(pair)
}
