//! Exact integer helpers: checked lcm/pow, deterministic primality,
//! trial-division factorization.

use alloc::vec::Vec;

pub use num_integer::gcd;

/// Least common multiple, `None` on u64 overflow. `lcm(0, _)` is 0.
pub fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// `base^exp` in u64, `None` on overflow.
pub fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    match base {
        0 => Some(if exp == 0 { 1 } else { 0 }),
        1 => Some(1),
        _ => {
            let exp = u32::try_from(exp).ok()?;
            base.checked_pow(exp)
        }
    }
}

/// Largest power of `p` dividing `n` (as a value, not an exponent).
pub fn p_part(mut n: u64, p: u64) -> u64 {
    debug_assert!(p >= 2);
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// `1 + p + … + p^(k-1)`; the empty sum 0 when `k = 0`.
pub fn geometric_sum(p: i128, k: u32) -> i128 {
    let mut sum = 0;
    let mut term = 1;
    for _ in 0..k {
        sum += term;
        term *= p;
    }
    sum
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin over the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    // This witness set decides primality for every n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization `n = Π p_i^{e_i}` with `p_i` ascending, by trial
/// division. Fine for the small inputs this crate sees; `factorize(1)` is
/// empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            factors.push((p, e));
        }
    };
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        push(p, e);
    }
    let mut p = 7u64;
    let steps = [4u64, 2, 4, 2, 4, 6, 2, 6]; // wheel mod 30
    let mut step = 0;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        push(p, e);
        p += steps[step];
        step = (step + 1) % steps.len();
    }
    if n > 1 {
        push(n, 1);
    }
    factors
}

/// Tiny deterministic generator for sampling checks; not meant to be a
/// statistically serious RNG.
#[derive(Clone)]
pub(crate) struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next() % bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_lcm_basics() {
        assert_eq!(gcd(12u64, 18), 6);
        assert_eq!(checked_lcm(4, 6), Some(12));
        assert_eq!(checked_lcm(u64::MAX, 2), None);
        assert_eq!(checked_lcm(0, 5), Some(0));
    }

    #[test]
    fn pow_edge_cases() {
        assert_eq!(checked_pow(1, u64::MAX), Some(1));
        assert_eq!(checked_pow(2, 63), Some(1 << 63));
        assert_eq!(checked_pow(2, 64), None);
        assert_eq!(checked_pow(0, 0), Some(1));
        assert_eq!(checked_pow(0, 9), Some(0));
    }

    #[test]
    fn primality_against_trial_division() {
        fn slow(n: u64) -> bool {
            n >= 2
                && (2..n)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        }
        for n in 0..2000 {
            assert_eq!(is_prime(n), slow(n), "n = {n}");
        }
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn factorization_round_trips() {
        for n in 1..2000u64 {
            let f = factorize(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn geometric_sums() {
        assert_eq!(geometric_sum(2, 0), 0);
        assert_eq!(geometric_sum(2, 1), 1);
        assert_eq!(geometric_sum(2, 3), 7);
        assert_eq!(geometric_sum(3, 2), 4);
    }

    #[test]
    fn p_parts() {
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(p_part(48, 3), 3);
        assert_eq!(p_part(48, 5), 1);
    }
}
