//! Integer combinatorics shared by the block formulas and the test corpus.

use num_bigint::BigInt;
use num_traits::One;

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Pochhammer (falling) symbol (n)_k = n(n-1)...(n-k+1); zero when k > n.
pub fn falling(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (n - k + 1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    falling(n, k) / factorial(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::from(0));
        assert_eq!(binomial(10, 3), BigInt::from(120));
    }
}
