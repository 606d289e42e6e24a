//! Small integer number theory shared by the field and coset code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
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

pub fn smallest_prime_factor(n: u64) -> u64 {
    factorize(n).first().map(|&(q, _)| q).unwrap_or(n)
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exact order of a group element given an exponent `n` of the group
/// (`x^n = 1`) and a predicate testing `x^e = 1`.
pub fn order_in_group(n: u64, is_identity_at: impl Fn(u64) -> bool) -> u64 {
    let mut t = n;
    for (q, _) in factorize(n) {
        while t.is_multiple_of(q) && is_identity_at(t / q) {
            t /= q;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_divisors() {
        assert_eq!(factorize(48), vec![(2, 4), (3, 1)]);
        assert_eq!(factorize(26), vec![(2, 1), (13, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(smallest_prime_factor(91), 7);
        assert_eq!(smallest_prime_factor(13), 13);
    }

    #[test]
    fn order_by_brute_force() {
        // multiplicative group of integers mod 13
        for x in 1..13u64 {
            let brute = (1..=12).find(|&t| {
                let mut acc = 1;
                for _ in 0..t {
                    acc = acc * x % 13;
                }
                acc == 1
            });
            let fast = order_in_group(12, |e| {
                let mut acc = 1;
                for _ in 0..e {
                    acc = acc * x % 13;
                }
                acc == 1
            });
            assert_eq!(Some(fast), brute);
        }
    }
}
