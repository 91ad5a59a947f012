//! Small integer number theory used throughout: primality, factorisation,
//! multiplicative orders and l-regular parts.

/// Deterministic trial-division primality test. Inputs here are tiny
/// (field characteristics and cyclic group orders).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
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
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
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
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Inverse of `a` modulo `m`, if it exists.
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

/// Multiplicative order of `a` modulo `n` (requires `gcd(a, n) = 1`).
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(a, n) != 1 {
        return None;
    }
    // order divides phi(n); strip prime factors of phi(n) greedily
    let phi = euler_phi(n);
    let mut ord = phi;
    for (p, _) in factorize(phi) {
        while ord % p == 0 && pow_mod(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    Some(ord)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Largest divisor of `n` coprime to the prime `ell`.
pub fn ell_regular_part(mut n: u64, ell: u64) -> u64 {
    assert!(ell >= 2, "ell must be a prime");
    while n % ell == 0 && n > 0 {
        n /= ell;
    }
    n
}

/// The `ell`-adic valuation of `n`.
pub fn valuation(mut n: u64, ell: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % ell == 0 {
        n /= ell;
        v += 1;
    }
    v
}

/// Writes `q = p^e` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_regular_parts() {
        assert_eq!(ell_regular_part(24, 2), 3);
        assert_eq!(ell_regular_part(48, 3), 16);
        assert_eq!(ell_regular_part(58, 29), 2);
    }

    #[test]
    fn orders_match_direct_powering() {
        for n in 2..300u64 {
            for a in 2..12u64 {
                if gcd(a, n) != 1 {
                    assert_eq!(multiplicative_order(a, n), None);
                    continue;
                }
                let mut k = 1;
                let mut x = a % n;
                while x != 1 {
                    x = x * a % n;
                    k += 1;
                }
                assert_eq!(multiplicative_order(a, n), Some(k), "a={a} n={n}");
            }
        }
    }

    #[test]
    fn factorisation_roundtrip() {
        for n in 1..2000u64 {
            let prod: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 5), Some(3));
        assert_eq!(inv_mod(4, 8), None);
    }
}
