//! Word-sized modular arithmetic and small-integer number theory.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
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

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q - 1))
}

/// Multiplicative order of `a` modulo `n` (requires `gcd(a, n) = 1`).
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if a.gcd(&n) != 1 {
        return None;
    }
    let phi = euler_phi(n);
    let mut ord = phi;
    for q in prime_factors(phi) {
        while ord % q == 0 && pow_mod(a, ord / q, n) == 1 {
            ord /= q;
        }
    }
    Some(ord)
}

pub fn is_primitive_root(g: u64, p: u64) -> bool {
    g % p != 0 && multiplicative_order(g % p, p) == Some(p - 1)
}

/// Smallest positive primitive root modulo the prime `p`.
pub fn smallest_primitive_root(p: u64) -> u64 {
    (1..p)
        .find(|&g| is_primitive_root(g, p))
        .expect("a prime has a primitive root")
}

/// Largest primes below `2^62`, in decreasing order, for multi-modular work.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Incremental Chinese remaindering into a symmetric-range integer.
#[derive(Clone, Debug)]
pub struct Crt {
    value: BigInt,
    modulus: BigInt,
}

impl Default for Crt {
    fn default() -> Self {
        Crt {
            value: BigInt::zero(),
            modulus: BigInt::one(),
        }
    }
}

impl Crt {
    pub fn add(&mut self, residue: u64, q: u64) {
        let qb = BigInt::from(q);
        let cur = (&self.value).mod_floor(&qb);
        let cur = u64::try_from(cur).unwrap();
        let diff = (residue % q + q - cur) % q;
        let mmod = u64::try_from((&self.modulus).mod_floor(&qb)).unwrap();
        let t = mul_mod(diff, inv_mod(mmod, q).expect("moduli are coprime"), q);
        self.value += &self.modulus * BigInt::from(t);
        self.modulus *= qb;
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// The representative in `(-M/2, M/2]`.
    pub fn symmetric(&self) -> BigInt {
        let v = self.value.mod_floor(&self.modulus);
        if &v * 2 > self.modulus {
            v - &self.modulus
        } else {
            v
        }
    }
}

/// `x mod q` as a word.
pub fn reduce_big(x: &BigInt, q: u64) -> u64 {
    u64::try_from(x.mod_floor(&BigInt::from(q))).unwrap()
}

/// Exponent of the prime `ell` in the nonzero integer `x`.
pub fn valuation(x: &BigInt, ell: u64) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let l = BigInt::from(ell);
    let mut v = 0;
    let mut y = x.abs();
    loop {
        let (q, r) = y.div_rem(&l);
        if !r.is_zero() {
            return v;
        }
        y = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_and_roots() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_prime(3215031751));
        assert!(is_prime((1u64 << 61) - 1));
        assert_eq!(smallest_primitive_root(3), 2);
        assert_eq!(smallest_primitive_root(7), 3);
        assert_eq!(smallest_primitive_root(23), 5);
        assert_eq!(smallest_primitive_root(41), 6);
        assert_eq!(multiplicative_order(3, 22), Some(5));
        assert_eq!(multiplicative_order(3, 4), Some(2));
    }

    #[test]
    fn crt_recovers_negative_values() {
        let target = BigInt::parse_bytes(b"-123456789012345678901234567890", 10).unwrap();
        let mut crt = Crt::default();
        for q in large_primes(3) {
            crt.add(reduce_big(&target, q), q);
        }
        assert_eq!(crt.symmetric(), target);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(-72), 2), 3);
        assert_eq!(valuation(&BigInt::from(-72), 3), 2);
        assert_eq!(valuation(&BigInt::from(7), 5), 0);
    }
}
