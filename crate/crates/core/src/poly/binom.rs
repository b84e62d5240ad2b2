//! Exact binomial coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The binomial coefficient C(n, k) with the convention C(n, k) = 0
/// whenever k < 0 or n < k. Exact big-integer arithmetic throughout.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    // Here 0 <= k <= n.
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(-2, 1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        for n in 0..20 {
            assert_eq!(binomial(n, 0), BigInt::one());
        }
    }

    #[test]
    fn pascal_recurrence() {
        for n in 1..40i64 {
            for k in 0..=n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "Pascal fails at ({n}, {k})"
                );
            }
        }
    }

    /// The summation identity behind length bookkeeping of symmetric
    /// powers: sum_i C(nu-i+r-2, r-2) * C(i+d, d) = C(nu+d+r-1, d+r-1).
    #[test]
    fn convolution_identity_grid() {
        for nu in 0..=30i64 {
            for r in 2..=5i64 {
                for d in 1..=5i64 {
                    let lhs: BigInt = (0..=nu)
                        .map(|i| binomial(nu - i + r - 2, r - 2) * binomial(i + d, d))
                        .sum();
                    assert_eq!(lhs, binomial(nu + d + r - 1, d + r - 1));
                }
            }
        }
    }
}
