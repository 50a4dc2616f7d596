//! Exact-arithmetic comparison helpers. Every threshold in the lemma
//! preconditions is compared as an exact rational; big-integer powers are
//! used where the exponents (4k, 5k, 10k, 81000k, ...) overflow machine
//! words.

use num_bigint::BigUint;
use num_rational::Ratio;

pub type Rational = Ratio<i64>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// `value >= 2^exp`, exact for any exponent.
pub fn ge_pow2(value: u64, exp: u64) -> bool {
    if exp >= 64 {
        return false;
    }
    value >= (1u64 << exp)
}

/// `a * 2^shift >= b`, exact for any shift.
pub fn shifted_ge(a: u64, shift: u64, b: u64) -> bool {
    if a == 0 {
        return b == 0;
    }
    if shift >= 64 {
        return true; // a >= 1, so a * 2^shift >= 2^64 > b
    }
    (u128::from(a) << shift) >= u128::from(b)
}

/// `count >= ratio^exp * scale`, exact via big integers.
pub fn ge_ratio_pow_scaled(count: u64, ratio: Rational, exp: u32, scale: u64) -> bool {
    debug_assert!(*ratio.numer() >= 0 && *ratio.denom() > 0);
    let num = BigUint::from(*ratio.numer() as u64).pow(exp);
    let den = BigUint::from(*ratio.denom() as u64).pow(exp);
    BigUint::from(count) * den >= num * BigUint::from(scale)
}

/// `value >= ratio^(-exp)`, i.e. `value * ratio^exp >= 1`, exact.
pub fn ge_inverse_ratio_pow(value: u64, ratio: Rational, exp: u32) -> bool {
    let num = BigUint::from(*ratio.numer() as u64).pow(exp);
    let den = BigUint::from(*ratio.denom() as u64).pow(exp);
    BigUint::from(value) * num >= den
}

/// `count >= threshold * scale` for a rational threshold, exact.
pub fn ge_ratio_scaled(count: u64, threshold: Rational, scale: u64) -> bool {
    let num = *threshold.numer();
    debug_assert!(num >= 0);
    u128::from(count) * u128::from(*threshold.denom() as u64)
        >= u128::from(num as u64) * u128::from(scale)
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(u128::from(n - i)) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Largest `s >= 0` with `(1/beta)^s <= x`, i.e. `floor(log_{1/beta} x)`.
pub fn floor_log_inv(beta: Rational, x: u64) -> u32 {
    debug_assert!(*beta.numer() > 0 && beta < Rational::new(1, 1));
    let num = BigUint::from(*beta.numer() as u64);
    let den = BigUint::from(*beta.denom() as u64);
    let target = BigUint::from(x);
    let mut s = 0u32;
    // den^(s+1) <= x * num^(s+1) means (1/beta)^(s+1) <= x
    let mut dp = den.clone();
    let mut np = num.clone();
    while dp <= &target * &np {
        s += 1;
        dp *= &den;
        np *= &num;
        if s > 4096 {
            break; // beta == 1 guarded above; this is unreachable in practice
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow2_comparisons() {
        assert!(ge_pow2(8, 3));
        assert!(!ge_pow2(7, 3));
        assert!(!ge_pow2(u64::MAX, 64));
        assert!(ge_pow2(1, 0));
    }

    #[test]
    fn shifted_comparisons() {
        assert!(shifted_ge(3, 2, 12));
        assert!(!shifted_ge(2, 2, 9));
        assert!(shifted_ge(1, 200, u64::MAX));
        assert!(!shifted_ge(0, 200, 1));
    }

    #[test]
    fn ratio_pow_scaled() {
        // 4 >= (1/2)^8 * 1024 = 4
        assert!(ge_ratio_pow_scaled(4, rat(1, 2), 8, 1024));
        assert!(!ge_ratio_pow_scaled(3, rat(1, 2), 8, 1024));
        // huge exponent: nothing desk-sized passes
        assert!(!ge_inverse_ratio_pow(1 << 40, rat(1, 4), 41000));
        assert!(ge_inverse_ratio_pow(16, rat(1, 2), 4));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(1024, 2), 523776);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn floor_log() {
        assert_eq!(floor_log_inv(rat(1, 2), 1024), 10);
        assert_eq!(floor_log_inv(rat(1, 2), 1023), 9);
        assert_eq!(floor_log_inv(rat(1, 4), 17), 2);
        assert_eq!(floor_log_inv(rat(1, 2), 1), 0);
    }
}
