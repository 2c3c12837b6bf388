//! Small integer helpers shared across modules.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Splits `q` as `p^k`; `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Combines invariant factors given per prime (as lists of exponents) into
/// a single ascending list `d_1 | d_2 | ...`.
pub fn invariant_factors(per_prime: &[(u64, Vec<u32>)]) -> Vec<u64> {
    let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, exps) in per_prime {
        let mut exps = exps.clone();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (i, e) in exps.iter().enumerate() {
            out[len - 1 - i] *= p.pow(*e);
        }
    }
    out.retain(|d| *d > 1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(31) && !is_prime(1) && !is_prime(27));
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod(2, 5), Some(3));
        assert_eq!(inv_mod(3, 8), Some(3));
        assert_eq!(inv_mod(2, 8), None);
    }

    #[test]
    fn combine_invariant_factors() {
        // Z/2 + Z/4 + Z/3
        let f = invariant_factors(&[(2, vec![1, 2]), (3, vec![1])]);
        assert_eq!(f, vec![2, 12]);
        assert!(invariant_factors(&[]).is_empty());
    }
}
