//! Exact arithmetic in the prime field `F_p`.
//!
//! A [`Prime`] is a validated modulus `2 <= p < 2^31`; elements are canonical
//! representatives in `[0, p)` stored as `u32`, so every product fits in a
//! `u64` intermediate and no big-integer arithmetic is needed.

use crate::error::{Error, Result};

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    /// Validates primality by trial division. `p` must satisfy `2 <= p < 2^31`.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Canonical representative of an integer.
    pub fn reduce_i64(self, n: i64) -> u32 {
        let p = self.0 as i64;
        (((n % p) + p) % p) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.0 as u64;
        if s >= p { (s - p) as u32 } else { s as u32 }
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 { 0 } else { self.0 - a }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// Multiplicative inverse of a nonzero element, by Fermat's little theorem.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.0 as u64 - 2)
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc: u32 = 1;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `(-1)^k`.
    pub fn sign(self, k: i64) -> u32 {
        if k.rem_euclid(2) == 0 { 1 } else { self.neg(1) }
    }

    /// Binomial coefficient mod p via Lucas' theorem.
    pub fn binomial(self, n: u64, k: u64) -> u32 {
        if k > n {
            return 0;
        }
        let p = self.0 as u64;
        let (mut n, mut k) = (n, k);
        let mut acc = 1u32;
        while n > 0 || k > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, self.small_binomial(nd as u32, kd as u32));
            n /= p;
            k /= p;
        }
        acc
    }

    fn small_binomial(self, n: u32, k: u32) -> u32 {
        let mut acc = 1u32;
        for i in 0..k {
            acc = self.mul(acc, n - i);
            acc = self.mul(acc, self.inv(i + 1));
        }
        acc
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
