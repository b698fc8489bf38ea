//! Closed-form tables computed by their own recurrences, with no reference
//! to the operator machinery.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::binomial;
use crate::scalar::Rational;

/// S(n, k) for 0 ≤ k ≤ n ≤ max: S(n,k) = k·S(n−1,k) + S(n−1,k−1).
pub fn stirling2(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); max + 1]; max + 1];
    s[0][0] = BigInt::one();
    for n in 1..=max {
        for k in 1..=n {
            s[n][k] = &s[n - 1][k] * k + &s[n - 1][k - 1];
        }
    }
    s
}

/// Signed s(n, k): s(n,k) = s(n−1,k−1) − (n−1)·s(n−1,k).
pub fn stirling1(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); max + 1]; max + 1];
    s[0][0] = BigInt::one();
    for n in 1..=max {
        for k in 1..=n {
            s[n][k] = &s[n - 1][k - 1] - &s[n - 1][k] * (n - 1);
        }
    }
    s
}

/// B_0..B_max with B_1 = −1/2, from Σ_{k≤n} C(n+1,k) B_k = 0.
pub fn bernoulli_numbers(max: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for n in 1..=max {
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(n + 1, k)) * bk;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Coefficients (constant first) of He_0..He_max from
/// He_{n+1} = z·He_n − n·He_{n−1}.
pub fn hermite_coeffs(max: usize) -> Vec<Vec<BigInt>> {
    let mut h: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    if max >= 1 {
        h.push(vec![BigInt::zero(), BigInt::one()]);
    }
    for n in 1..max {
        let mut next = vec![BigInt::zero(); n + 2];
        for (i, c) in h[n].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in h[n - 1].iter().enumerate() {
            next[i] -= c * n;
        }
        h.push(next);
    }
    h
}

/// Row k of Pascal's triangle by additive recurrence.
pub fn binomial_row(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..k {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}
