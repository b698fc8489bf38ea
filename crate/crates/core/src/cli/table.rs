//! Human-readable renderings for `--format table`.

use crate::groups::{AlgebraPair, SPair};
use crate::json::{CurveDoc, JsonCoeff};
use crate::opmatrix::{BlockMatrix, PolyOnDual};
use crate::scalar::{Context, Scalar};
use crate::series::TensorSeries;
use crate::symtensor::{basis_count, MultiIndex, SymTensor};
use crate::tpoly::TPoly;

use super::operand::Obj;

/// Drops the "/1" of integral rationals.
pub(crate) fn pretty(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let integral = b[i] == b'/' && b.get(i + 1) == Some(&b'1') && !b.get(i + 2).is_some_and(u8::is_ascii_digit);
        if integral {
            i += 2;
        } else {
            out.push(b[i] as char);
            i += 1;
        }
    }
    out
}

fn var_names(dim: usize, base: &str) -> Vec<String> {
    if dim == 1 {
        vec![base.to_string()]
    } else {
        (1..=dim).map(|j| format!("{base}{j}")).collect()
    }
}

fn monomial(m: &MultiIndex, vars: &[String]) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

/// Sum of c·x^m with the highest degree first, e.g. "z^3 - 3*z".
fn sum_text<S: Scalar>(mut terms: Vec<(MultiIndex, S)>, vars: &[String]) -> String {
    terms.retain(|(_, c)| !c.is_zero());
    terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.exponents().cmp(a.exponents())));
    let mut out = String::new();
    for (m, c) in &terms {
        let text = pretty(&c.render());
        let compound = text[1..].contains(['+', '-']);
        let (negative, mag) = match text.strip_prefix('-') {
            Some(rest) if !compound => (true, rest.to_string()),
            _ if compound => (false, format!("({text})")),
            _ => (false, text),
        };
        let mono = monomial(m, vars);
        let body = match (mono.is_empty(), mag.as_str()) {
            (true, _) => mag,
            (false, "1") => mono,
            (false, _) => format!("{mag}*{mono}"),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A polynomial on Φ′ in the variables z (N = 1) or z1..zN.
pub(crate) fn poly_text<S: Scalar>(p: &PolyOnDual<S>) -> String {
    let vars = var_names(p.context().dim(), "z");
    sum_text(p.coefficients().map(|(m, c)| (m.clone(), c.clone())).collect(), &vars)
}

fn tensor_text<S: Scalar>(t: &SymTensor<S>) -> String {
    if t.degree() == 0 {
        return pretty(&t.as_scalar().render());
    }
    let vars = var_names(t.context().dim(), "e");
    sum_text(t.terms().map(|(m, c)| (m.clone(), c.clone())).collect(), &vars)
}

/// Columns separated by two spaces, numbers right-aligned. With `label`
/// the first column is left-aligned.
fn aligned(rows: &[Vec<String>], label: bool) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0; cols];
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(j, (c, w))| if label && j == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub(crate) fn grid(rows: &[Vec<String>]) -> String {
    aligned(rows, false)
}

fn listing(rows: &[Vec<String>]) -> String {
    aligned(rows, true)
}

fn series_rows<S: Scalar>(label: &str, s: &TensorSeries<S>) -> Vec<Vec<String>> {
    let vars = var_names(s.context().dim(), "x");
    let mut rows = vec![vec![label.to_string(), String::new()]];
    let mut terms: Vec<_> = s.terms().filter(|(_, v)| !v.is_zero()).collect();
    terms.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| b.exponents().cmp(a.exponents())));
    for (m, v) in terms {
        let mono = monomial(m, &vars);
        rows.push(vec![if mono.is_empty() { "1".into() } else { mono }, tensor_text(v)]);
    }
    rows
}

fn pair_rows<S: Scalar>(p: &SPair<S>) -> Vec<Vec<String>> {
    let mut rows = series_rows("A", p.a.series());
    rows.extend(series_rows("B", p.b.series()));
    rows
}

fn algebra_rows<S: Scalar>(w: &AlgebraPair<S>) -> Vec<Vec<String>> {
    let mut rows = series_rows("alpha", &w.alpha);
    rows.extend(series_rows("beta", &w.beta));
    rows
}

/// Entry (row, col) of the matrix in the monomial basis of degrees 0..=K.
fn dense<S: Scalar>(m: &BlockMatrix<S>) -> Vec<Vec<String>> {
    let ctx: Context = *m.context();
    let offsets: Vec<usize> = (0..=ctx.order() + 1).map(|k| (0..k).map(|j| basis_count(ctx.dim(), j)).sum()).collect();
    let size = offsets[ctx.order() + 1];
    let mut out = vec![vec!["0".to_string(); size]; size];
    for ((i, k), op) in m.blocks() {
        let (rows, cols) = op.shape();
        for r in 0..rows {
            for c in 0..cols {
                out[offsets[i] + r][offsets[k] + c] = pretty(&op.get(r, c).render());
            }
        }
    }
    out
}

/// Transposed and cut at the diagonal, the layout of Riordan arrays in the
/// combinatorics literature.
pub(crate) fn lower_triangle<S: Scalar>(m: &BlockMatrix<S>) -> Vec<Vec<String>> {
    let d = dense(m);
    let n = d.len();
    (0..n).map(|r| (0..=r).map(|c| d[c][r].clone()).collect()).collect()
}

fn headed(title: &str, rows: Vec<Vec<String>>) -> String {
    format!("{title}\n{}", grid(&rows))
}

pub(crate) fn render<S: Scalar + JsonCoeff>(obj: &Obj<S>, transpose: bool) -> String
where
    TPoly<S>: JsonCoeff,
{
    let matrix = |m: &BlockMatrix<S>| if transpose { lower_triangle(m) } else { dense(m) };
    match obj {
        Obj::Series(s) => listing(&series_rows("series", s)),
        Obj::F0(a) => listing(&series_rows("f0", a.series())),
        Obj::F1(b) => listing(&series_rows("f1", b.series())),
        Obj::Pair(p) => listing(&pair_rows(p)),
        Obj::Algebra(w) => listing(&algebra_rows(w)),
        Obj::Op(m) => headed("opmatrix", matrix(m.matrix())),
        Obj::Nil(v) => headed("nilmatrix", matrix(v.matrix())),
        Obj::Sheffer(p) => format!("{}\n{}", listing(&pair_rows(p.pair())), headed("matrix", matrix(p.matrix().matrix()))),
        Obj::Riordan(r) => headed("riordan", matrix(r.matrix().matrix())),
        Obj::Curve(c) => match c {
            CurveDoc::F0(c) | CurveDoc::F1(c) => format!("time curve, bound {}\n", c.bound()),
            CurveDoc::S(c) => format!("time curve, bound {}\n", c.bound()),
            CurveDoc::Nil(c) => format!("time curve, bound {}\n", c.bound()),
        },
        Obj::Poly { n, poly } => match n {
            Some(n) => format!("p_{n} = {}\n", poly_text(poly)),
            None => format!("{}\n", poly_text(poly)),
        },
        Obj::Membership { sheffer, appell, umbral } => {
            let yes = |b: &bool| if *b { "yes".to_string() } else { "no".to_string() };
            let rows = vec![
                vec!["sheffer".to_string(), yes(sheffer)],
                vec!["appell".to_string(), yes(appell)],
                vec!["umbral".to_string(), yes(umbral)],
            ];
            listing(&rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gaussian, Rational};

    fn poly(dim: usize, terms: &[(&[u32], i64)]) -> PolyOnDual<Rational> {
        let ctx = Context::of::<Rational>(dim, 6).unwrap();
        let terms = terms.iter().map(|(m, c)| (MultiIndex::new(m.iter().copied()), Rational::from_integer((*c).into())));
        PolyOnDual::from_coefficients(&ctx, terms).unwrap()
    }

    #[test]
    fn polynomial_text() {
        assert_eq!(poly_text(&poly(1, &[(&[3], 1), (&[1], -3)])), "z^3 - 3*z");
        assert_eq!(poly_text(&poly(1, &[(&[2], -1), (&[0], 2)])), "-z^2 + 2");
        assert_eq!(poly_text(&poly(2, &[(&[1, 1], 2), (&[2, 0], 1), (&[0, 0], -1)])), "z1^2 + 2*z1*z2 - 1");
        assert_eq!(poly_text(&poly(1, &[])), "0");
        let ctx = Context::of::<Gaussian>(1, 3).unwrap();
        let c = Gaussian::new(Rational::from_integer(1.into()), Rational::from_integer((-2).into()));
        let p = PolyOnDual::from_coefficients(&ctx, [(MultiIndex::new([1]), c)]).unwrap();
        assert_eq!(poly_text(&p), "(1-2i)*z");
    }

    #[test]
    fn pretty_drops_unit_denominators() {
        assert_eq!(pretty("3/1"), "3");
        assert_eq!(pretty("-1/12"), "-1/12");
        assert_eq!(pretty("1/1+2/1i"), "1+2i");
        assert_eq!(pretty("1/10"), "1/10");
    }
}
