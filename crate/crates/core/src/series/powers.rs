use std::collections::{BTreeMap, HashMap};

use crate::scalar::Ring;
use crate::symtensor::MultiIndex;

use super::TensorSeries;

/// Scalar polynomial x^m ↦ c.
pub(crate) type Poly<R> = BTreeMap<MultiIndex, R>;

pub(crate) fn poly_add_scaled<R: Ring>(acc: &mut Poly<R>, p: &Poly<R>, c: &R) {
    for (m, x) in p {
        let v = x.clone() * c;
        match acc.get_mut(m) {
            Some(a) => {
                *a += &v;
                if a.is_zero() {
                    acc.remove(m);
                }
            }
            None if !v.is_zero() => {
                acc.insert(m.clone(), v);
            }
            None => {}
        }
    }
}

fn poly_mul<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
    let mut out = Poly::new();
    for (m1, x) in a {
        for (m2, y) in b {
            let v = x.clone() * y;
            let m = m1.add(m2);
            match out.get_mut(&m) {
                Some(o) => *o += &v,
                None => {
                    out.insert(m, v);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Homogeneous parts of the powers B^m of a substitution B = (b_1, ..., b_N)
/// with no constant term.
///
/// Components are supplied one degree at a time. The degree-d part of B^m only
/// needs component parts of degree ≤ d − |m| + 1, so flows can interleave
/// "compute the right-hand side at degree d" with "learn the degree-d part".
pub(crate) struct Powers<R> {
    dim: usize,
    /// parts[j][d]: degree-d part of b_j, known for d < parts[j].len().
    parts: Vec<Vec<Poly<R>>>,
    memo: HashMap<(MultiIndex, usize), Poly<R>>,
}

impl<R: Ring> Powers<R> {
    /// Empty table; degree 0 is known and zero.
    pub fn new(dim: usize) -> Self {
        Powers { dim, parts: vec![vec![Poly::new()]; dim], memo: HashMap::new() }
    }

    pub fn from_series(b: &TensorSeries<R>) -> Self {
        let dim = b.context().dim();
        let mut p = Powers::new(dim);
        let comps = b.component_polys();
        for d in 1..=b.order() {
            let layer = comps
                .iter()
                .map(|c| c.iter().filter(|(m, _)| m.degree() == d).map(|(m, x)| (m.clone(), x.clone())).collect())
                .collect();
            p.push_degree(layer);
        }
        p
    }

    /// Append the next degree of every component.
    pub fn push_degree(&mut self, layer: Vec<Poly<R>>) {
        debug_assert_eq!(layer.len(), self.dim);
        for (p, l) in self.parts.iter_mut().zip(layer) {
            p.push(l);
        }
    }

    /// Degree-d part of B^m.
    pub fn part(&mut self, m: &MultiIndex, d: usize) -> Poly<R> {
        let deg = m.degree();
        if deg == 0 {
            let mut p = Poly::new();
            if d == 0 {
                p.insert(MultiIndex::zero(self.dim), R::one());
            }
            return p;
        }
        if d < deg {
            return Poly::new();
        }
        let j = m.first_nonzero().expect("nonzero multi-index");
        if deg == 1 {
            return self.parts[j][d].clone();
        }
        if let Some(p) = self.memo.get(&(m.clone(), d)) {
            return p.clone();
        }
        let rest = m.sub_unit(j).expect("positive exponent");
        let mut acc = Poly::new();
        for d1 in deg - 1..d {
            let lower = self.part(&rest, d1);
            if lower.is_empty() {
                continue;
            }
            let prod = poly_mul(&lower, &self.parts[j][d - d1]);
            poly_add_scaled(&mut acc, &prod, &R::one());
        }
        self.memo.insert((m.clone(), d), acc.clone());
        acc
    }
}
