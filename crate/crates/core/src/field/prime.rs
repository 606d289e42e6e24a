use crate::error::{Error, Result};

/// Largest prime accepted; keeps every GF(p) coefficient in one byte.
pub const MAX_PRIME: u32 = 251;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic context for GF(p), p an odd prime.
///
/// Elements are plain `u32` values in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    /// `ceil(2^64 / p)`, for division-free remainders.
    magic: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p == 2 || !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(Self {
            p,
            magic: u64::MAX / p as u64 + 1,
        })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Canonical representative of an arbitrary integer.
    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// `a mod p` for any `u32`, without a hardware division.
    #[inline]
    pub fn rem(&self, a: u32) -> u32 {
        let low = self.magic.wrapping_mul(a as u64);
        ((low as u128 * self.p as u128) >> 64) as u32
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        v < self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.rem(a * b)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::NonInvertible);
        }
        Ok(self.pow(a, (self.p - 2) as u64))
    }

    /// Representative in `{-(p-1)/2, ..., (p-1)/2}`.
    #[inline]
    pub fn centered(&self, a: u32) -> i32 {
        let half = (self.p - 1) / 2;
        if a > half {
            a as i32 - self.p as i32
        } else {
            a as i32
        }
    }

    pub fn mult_order(&self, a: u32) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::NotAUnit);
        }
        Ok(super::order_in_group((self.p - 1) as u64, |e| {
            self.pow(a, e) == 1
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_remainder_matches_division() {
        for p in (3..=MAX_PRIME).filter(|&p| is_prime(p as u64)) {
            let f = PrimeField::new(p).unwrap();
            let edge = [u32::MAX, u32::MAX - 1, p * p, p * p - 1, 1 << 21, 0];
            for a in (0..70_000)
                .chain((0..1000).map(|i| i * 4_294_967))
                .chain(edge)
            {
                assert_eq!(f.rem(a), a % p, "{a} mod {p}");
            }
        }
    }

    #[test]
    fn rejects_non_primes_and_two() {
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(2), Err(Error::NotPrime(2)));
        assert_eq!(PrimeField::new(257), Err(Error::UnsupportedPrime(257)));
        assert!(PrimeField::new(251).is_ok());
    }

    #[test]
    fn basic_arithmetic_gf5() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(4, 3), 2);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.inv(0), Err(Error::NonInvertible));
        assert_eq!(f.reduce(-7), 3);
    }

    #[test]
    fn orders_in_gf5() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mult_order(2).unwrap(), 4);
        assert_eq!(f.mult_order(3).unwrap(), 4);
        assert_eq!(f.mult_order(4).unwrap(), 2);
        assert_eq!(f.mult_order(1).unwrap(), 1);
        assert_eq!(f.mult_order(0), Err(Error::NotAUnit));
    }

    #[test]
    fn centered_representatives() {
        let f = PrimeField::new(5).unwrap();
        let c: Vec<i32> = (0..5).map(|a| f.centered(a)).collect();
        assert_eq!(c, vec![0, 1, 2, -2, -1]);
    }
}
