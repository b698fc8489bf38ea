//! One-variable cross-checks against a plain truncated-polynomial
//! implementation written here from scratch.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sheffer::groups::{f0_exp, f1_exp, f1_inverse, s_mul, SPair};
use sheffer::random::{random_alpha, random_beta, random_spair};
use sheffer::series::TensorSeries;
use sheffer::sheffer::{catalog, riordan_transform, ShefferOp};
use sheffer::symtensor::{basis_count, enumerate, MultiIndex};
use sheffer::{Context, Rational};

const K: usize = 7;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn fact(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, j| acc * q(j as i64))
}

/// Coefficients c_0..c_K of a power series truncated after x^K.
#[derive(Clone, Debug, PartialEq)]
struct P(Vec<Rational>);

impl P {
    fn zero() -> P {
        P(vec![Rational::zero(); K + 1])
    }

    fn one() -> P {
        let mut p = P::zero();
        p.0[0] = Rational::one();
        p
    }

    fn x() -> P {
        let mut p = P::zero();
        p.0[1] = Rational::one();
        p
    }

    fn add(&self, o: &P) -> P {
        P(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn scale(&self, c: &Rational) -> P {
        P(self.0.iter().map(|a| a * c).collect())
    }

    fn mul(&self, o: &P) -> P {
        let mut r = P::zero();
        for i in 0..=K {
            for j in 0..=K - i {
                r.0[i + j] += &self.0[i] * &o.0[j];
            }
        }
        r
    }

    fn pow(&self, n: usize) -> P {
        (0..n).fold(P::one(), |acc, _| acc.mul(self))
    }

    fn deriv(&self) -> P {
        let mut r = P::zero();
        for i in 1..=K {
            r.0[i - 1] = &self.0[i] * q(i as i64);
        }
        r
    }

    /// self(b(x)) for b without constant term, by Horner.
    fn compose(&self, b: &P) -> P {
        self.0.iter().rev().fold(P::zero(), |acc, c| acc.mul(b).add(&P::one().scale(c)))
    }

    fn exp(&self) -> P {
        (0..=K).fold(P::zero(), |acc, n| acc.add(&self.pow(n).scale(&fact(n).recip())))
    }
}

fn ctx() -> Context {
    Context::of::<Rational>(1, K).unwrap()
}

fn m(n: usize) -> MultiIndex {
    MultiIndex::new([n as u32])
}

fn scalar(s: &TensorSeries<Rational>) -> P {
    P((0..=K).map(|n| s.scalar_coeff(&m(n))).collect())
}

fn vector(s: &TensorSeries<Rational>) -> P {
    P((0..=K).map(|n| s.coeff(&m(n)).coeff(&m(1))).collect())
}

fn rngs() -> impl Iterator<Item = ChaCha8Rng> {
    (0..20).map(ChaCha8Rng::seed_from_u64)
}

#[test]
fn f0_exp_is_the_exponential_series() {
    for mut g in rngs() {
        let alpha = random_alpha::<Rational, _>(&ctx(), &mut g);
        assert_eq!(scalar(f0_exp(&alpha).unwrap().series()), scalar(&alpha).exp());
    }
}

#[test]
fn f1_exp_is_the_lie_series() {
    // Exp(β) = Σ_n (β·d/dx)^n x / n!
    for mut g in rngs() {
        let beta = random_beta::<Rational, _>(&ctx(), &mut g);
        let b = vector(&beta);
        let mut term = P::x();
        let mut sum = P::zero();
        for n in 0..=K {
            sum = sum.add(&term.scale(&fact(n).recip()));
            term = b.mul(&term.deriv());
        }
        assert_eq!(vector(f1_exp(&beta).unwrap().series()), sum);
    }
}

#[test]
fn composition_by_horner() {
    for mut g in rngs() {
        let p = random_spair::<Rational, _>(&ctx(), &mut g);
        let composed = p.a.series().compose(p.b.series()).unwrap();
        assert_eq!(scalar(&composed), scalar(p.a.series()).compose(&vector(p.b.series())));
        let bb = p.b.series().compose(p.b.series()).unwrap();
        assert_eq!(vector(&bb), vector(p.b.series()).compose(&vector(p.b.series())));
    }
}

#[test]
fn f1_inverse_by_lagrange_inversion() {
    // [x^n] B⁻¹ = (1/n)·[x^(n−1)] (x/B)^n
    for mut g in rngs() {
        let p = random_spair::<Rational, _>(&ctx(), &mut g);
        let b = vector(p.b.series());
        let b_over_x = P((0..=K).map(|n| if n < K { b.0[n + 1].clone() } else { Rational::zero() }).collect());
        // 1/(B/x) by the geometric series, valid since B/x = 1 + O(x)
        let rest = b_over_x.add(&P::one().scale(&q(-1)));
        let x_over_b = (0..=K).fold(P::zero(), |acc, n| acc.add(&rest.pow(n).scale(&q(if n % 2 == 0 { 1 } else { -1 }))));
        let inv = vector(f1_inverse(&p.b).series());
        for n in 1..=K {
            let want = &x_over_b.pow(n).0[n - 1] / q(n as i64);
            assert_eq!(inv.0[n], want, "coefficient {n}");
        }
    }
}

fn dense(s: &SPair<Rational>) -> Vec<Vec<Rational>> {
    // P_kn = (n!/k!)·[x^n] B^k A
    let (a, b) = (scalar(s.a.series()), vector(s.b.series()));
    (0..=K)
        .map(|k| {
            let row = b.pow(k).mul(&a);
            (0..=K).map(|n| if n < k { Rational::zero() } else { &row.0[n] * fact(n) / fact(k) }).collect()
        })
        .collect()
}

fn entries(p: &ShefferOp<Rational>) -> Vec<Vec<Rational>> {
    (0..=K)
        .map(|i| (0..=K).map(|k| if k < i { Rational::zero() } else { p.matrix().block(i, k).get(0, 0).clone() }).collect())
        .collect()
}

#[test]
fn build_and_product_against_dense_matrices() {
    for mut g in rngs() {
        let (p, r) = (random_spair::<Rational, _>(&ctx(), &mut g), random_spair::<Rational, _>(&ctx(), &mut g));
        let (dp, dr) = (dense(&p), dense(&r));
        assert_eq!(entries(&ShefferOp::from_pair(p.clone())), dp);
        let mut prod = vec![vec![Rational::zero(); K + 1]; K + 1];
        for i in 0..=K {
            for k in 0..=K {
                for j in 0..=K {
                    prod[i][k] += &dp[i][j] * &dr[j][k];
                }
            }
        }
        assert_eq!(dense(&s_mul(&p, &r).unwrap()), prod);
    }
}

#[test]
fn bernoulli_generating_function() {
    // A(x)·(eˣ − 1)/x = 1
    let a = scalar(catalog::<Rational>("bernoulli", &ctx()).unwrap().a.series());
    let e = P::x().exp();
    let quotient = P((0..=K).map(|n| if n < K { e.0[n + 1].clone() } else { Rational::zero() }).collect());
    let prod = a.mul(&quotient);
    // the top coefficient of the quotient is lost to truncation
    assert_eq!(prod.0[..K], P::one().0[..K]);
}

#[test]
fn touchard_is_stirling_second_kind() {
    let mut s = vec![vec![0i64; K + 1]; K + 1];
    s[0][0] = 1;
    for n in 1..=K {
        for k in 1..=n {
            s[n][k] = k as i64 * s[n - 1][k] + s[n - 1][k - 1];
        }
    }
    let t = ShefferOp::from_pair(catalog::<Rational>("touchard", &ctx()).unwrap());
    let e = entries(&t);
    for n in 0..=K {
        for k in 0..=n {
            assert_eq!(e[k][n], q(s[n][k]), "S({n},{k})");
        }
    }
}

#[test]
fn pascal_riordan_is_binomial() {
    let p = ShefferOp::from_pair(catalog::<Rational>("pascal", &ctx()).unwrap());
    let r = riordan_transform(&p);
    let mut row = vec![1i64];
    for k in 0..=K {
        for (i, c) in row.iter().enumerate() {
            assert_eq!(r.matrix().block(i, k).get(0, 0), &q(*c), "C({k},{i})");
        }
        let mut next = vec![1i64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
}

#[test]
fn hermite_from_its_recurrence() {
    // He_{n+1} = z·He_n − n·He_{n−1}
    let mut h: Vec<Vec<i64>> = vec![vec![1], vec![0, 1]];
    for n in 1..K {
        let mut next = vec![0i64; n + 2];
        for (i, c) in h[n].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in h[n - 1].iter().enumerate() {
            next[i] -= n as i64 * c;
        }
        h.push(next);
    }
    let e = entries(&ShefferOp::from_pair(catalog::<Rational>("hermite", &ctx()).unwrap()));
    for (n, he) in h.iter().enumerate() {
        for (i, c) in he.iter().enumerate() {
            assert_eq!(e[i][n], q(*c), "He_{n} coefficient {i}");
        }
    }
}

#[test]
fn symmetric_power_dimensions() {
    let binom = |n: usize, k: usize| -> BigInt { (0..k).fold(BigInt::one(), |acc, j| acc * (n - j) / (j + 1)) };
    for dim in 1..=4 {
        for k in 0..=6 {
            let want = binom(dim + k - 1, k);
            assert_eq!(BigInt::from(basis_count(dim, k)), want);
            let basis = enumerate(dim, k);
            assert_eq!(basis.len(), basis_count(dim, k));
            let distinct: std::collections::BTreeSet<_> = basis.iter().map(|m| m.exponents().to_vec()).collect();
            assert_eq!(distinct.len(), basis.len());
            assert!(basis.iter().all(|m| m.degree() == k));
        }
    }
}
