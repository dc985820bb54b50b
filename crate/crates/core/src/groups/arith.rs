//! Small integer helpers.

use num_bigint::BigUint;
use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `q = p^t` with `p` prime, `t ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let mut r = q;
    let mut t = 0;
    while r.is_multiple_of(p) {
        r /= p;
        t += 1;
    }
    (r == 1).then_some((p, t))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

pub fn big_pow(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// Natural logarithm of an arbitrary-size natural number.
pub fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        let digits = n.to_u64_digits();
        let mut x = 0f64;
        for d in digits.iter().rev() {
            x = x * 18446744073709551616.0 + *d as f64;
        }
        return x.ln();
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    let top = top.to_u64_digits().first().copied().unwrap_or(0) as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Partitions of `n` (as nonincreasing part lists), visited depth-first.
pub fn for_each_partition(n: u32, mut f: impl FnMut(&[u32])) {
    fn rec(rem: u32, max: u32, parts: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if rem == 0 {
            f(parts);
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            parts.push(k);
            rec(rem - k, k, parts, f);
            parts.pop();
        }
    }
    rec(n, n, &mut Vec::new(), &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn partition_count() {
        let mut count = 0;
        for_each_partition(10, |_| count += 1);
        assert_eq!(count, 42);
    }

    #[test]
    fn big_logs() {
        let x = big_pow(3, 2000);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_big(&x) - expected).abs() < 1e-9 * expected);
        assert!((ln_big(&big(60)) - 60f64.ln()).abs() < 1e-12);
    }
}
