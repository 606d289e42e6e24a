//! Cyclotomic cosets of spectrum indices and the Möbius counting formulas.
//!
//! A Fourier coset is an orbit of `k -> p k (mod N)`, a Hartley coset an
//! orbit of `k -> -p k (mod N)`. Each orbit is stored in walk order starting
//! at its leader (the smallest member), so `C1=(1,23,9,25,3,17)` for the
//! Hartley table of N = 26 over GF(3).
//!
//! `count_irreducibles` is the Möbius inversion count of monic irreducible
//! (not necessarily primitive) polynomials of degree k over GF(q).

use std::fmt;

use crate::error::{Error, Result};
use crate::numth::{divisors, factorize, gcd};
use crate::transform::Kind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub kind: Kind,
    pub n: usize,
    pub p: u32,
    /// Orbits in walk order from their leader, sorted by leader.
    pub cosets: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn new(kind: Kind, n: usize, p: u32) -> Result<Self> {
        if n == 0 || gcd(n as u64, p as u64) != 1 {
            return Err(Error::NotCoprime { n, p });
        }
        let mult = multiplier(kind, n, p);
        let mut seen = vec![false; n];
        let mut cosets = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                orbit.push(k);
                k = (k * mult) % n;
            }
            cosets.push(orbit);
        }
        Ok(Self { kind, n, p, cosets })
    }

    /// Number of cosets, the count of coefficients transmitted per frame.
    pub fn nu(&self) -> usize {
        self.cosets.len()
    }

    pub fn leaders(&self) -> Vec<usize> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    /// The index map generating the orbits.
    pub fn step(&self, k: usize) -> usize {
        (k * multiplier(self.kind, self.n, self.p)) % self.n
    }

    /// Position of the coset holding index `k`.
    pub fn coset_of(&self, k: usize) -> Option<usize> {
        self.cosets.iter().position(|c| c.contains(&k))
    }
}

impl fmt::Display for CosetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for coset in &self.cosets {
            let body: Vec<String> = coset.iter().map(|k| k.to_string()).collect();
            writeln!(f, "C{}=({})", coset[0], body.join(","))?;
        }
        Ok(())
    }
}

fn multiplier(kind: Kind, n: usize, p: u32) -> usize {
    let p = p as usize % n;
    match kind {
        Kind::Fourier => p,
        Kind::Hartley => (n - p) % n,
    }
}

pub fn fourier_cosets(n: usize, p: u32) -> Result<CosetTable> {
    CosetTable::new(Kind::Fourier, n, p)
}

pub fn hartley_cosets(n: usize, p: u32) -> Result<CosetTable> {
    CosetTable::new(Kind::Hartley, n, p)
}

pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius is defined for n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of monic irreducible polynomials of degree `k` over GF(q):
/// `(1/k) sum_{d | k} mu(d) q^(k/d)`.
pub fn count_irreducibles(k: u64, q: u64) -> u64 {
    let total: i128 = divisors(k)
        .into_iter()
        .map(|d| moebius(d) as i128 * (q as i128).pow((k / d) as u32))
        .sum();
    (total / k as i128) as u64
}

/// Number of Fourier cosets for N = p^m - 1: `sum_{d | m} I_d(p) - 1`.
pub fn nu_g_formula(p: u32, m: usize) -> u64 {
    divisors(m as u64)
        .into_iter()
        .map(|d| count_irreducibles(d, p as u64))
        .sum::<u64>()
        - 1
}

/// `(nu_G + (N mod 2)) / 2 + 1`, integer division.
pub fn nu_h_formula(nu_g: u64, n: u64) -> u64 {
    (nu_g + n % 2) / 2 + 1
}

/// Rule-of-thumb estimates `(ceil(N/m), ceil(ceil(N/m)/2 + 1))`.
pub fn approx_nu(n: u64, m: u64) -> (u64, u64) {
    let g = n.div_ceil(m);
    // ceil(g/2 + 1) = ceil(g/2) + 1
    (g, g.div_ceil(2) + 1)
}

/// Formula values next to the brute-force coset counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountDiagnostic {
    pub n: usize,
    pub nu_g_brute: usize,
    pub nu_h_brute: usize,
    /// `None` unless N = p^m - 1.
    pub nu_g_formula: Option<u64>,
    pub nu_h_formula: u64,
    pub approx: (u64, u64),
}

impl CountDiagnostic {
    pub fn nu_g_matches(&self) -> bool {
        self.nu_g_formula
            .is_none_or(|f| f == self.nu_g_brute as u64)
    }

    pub fn nu_h_matches(&self) -> bool {
        self.nu_h_formula == self.nu_h_brute as u64
    }
}

pub fn count_diagnostic(p: u32, m: usize, n: usize) -> Result<CountDiagnostic> {
    let g = fourier_cosets(n, p)?.nu();
    let h = hartley_cosets(n, p)?.nu();
    let full = (p as u64).pow(m as u32) - 1 == n as u64;
    Ok(CountDiagnostic {
        n,
        nu_g_brute: g,
        nu_h_brute: h,
        nu_g_formula: full.then(|| nu_g_formula(p, m)),
        nu_h_formula: nu_h_formula(g as u64, n as u64),
        approx: approx_nu(n as u64, m as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<usize>) -> Vec<usize> {
        v.sort_unstable();
        v
    }

    #[test]
    fn fourier_26_3() {
        let t = fourier_cosets(26, 3).unwrap();
        assert_eq!(t.nu(), 10);
        assert_eq!(t.cosets[1], vec![1, 3, 9]);
        assert_eq!(t.cosets[2], vec![2, 6, 18]);
        assert_eq!(t.leaders(), vec![0, 1, 2, 4, 5, 7, 8, 13, 14, 17]);
    }

    #[test]
    fn hartley_26_3() {
        let t = hartley_cosets(26, 3).unwrap();
        assert_eq!(t.nu(), 6);
        assert_eq!(t.cosets[1], vec![1, 23, 9, 25, 3, 17]);
        assert_eq!(t.cosets[3], vec![4, 14, 10, 22, 12, 16]);
        assert_eq!(t.cosets[5], vec![13]);
    }

    #[test]
    fn small_tables() {
        let f = fourier_cosets(4, 5).unwrap();
        assert_eq!(f.cosets, vec![vec![0], vec![1], vec![2], vec![3]]);
        let h = hartley_cosets(4, 5).unwrap();
        assert_eq!(h.cosets, vec![vec![0], vec![1, 3], vec![2]]);
        assert_eq!(fourier_cosets(1, 7).unwrap().cosets, vec![vec![0]]);
    }

    #[test]
    fn not_coprime() {
        assert_eq!(fourier_cosets(6, 3), Err(Error::NotCoprime { n: 6, p: 3 }));
        assert!(hartley_cosets(10, 5).is_err());
    }

    #[test]
    fn display_layout() {
        let t = hartley_cosets(26, 3).unwrap().to_string();
        assert!(t.starts_with("C0=(0)\nC1=(1,23,9,25,3,17)\n"));
        assert!(t.ends_with("C13=(13)\n"));
    }

    #[test]
    fn moebius_values() {
        let mu: Vec<i64> = (1..=12).map(moebius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(count_irreducibles(3, 3), 8);
        assert_eq!(count_irreducibles(1, 7), 7);
        assert_eq!(count_irreducibles(2, 2), 1);
        assert_eq!(count_irreducibles(4, 2), 3);
        assert_eq!(count_irreducibles(6, 3), 116);
    }

    #[test]
    fn counting_formulas() {
        assert_eq!(nu_g_formula(3, 3), 10);
        assert_eq!(nu_g_formula(5, 1), 4);
        assert_eq!(nu_g_formula(3, 1), 2);
        assert_eq!(nu_h_formula(10, 26), 6);
        assert_eq!(nu_h_formula(4, 4), 3);
        assert_eq!(nu_h_formula(2, 2), 2);
        assert_eq!(approx_nu(26, 3), (9, 6));
        assert_eq!(approx_nu(4, 1), (4, 3));
        assert_eq!(approx_nu(2, 1), (2, 2));
    }

    #[test]
    fn step_walks_orbits() {
        let t = hartley_cosets(26, 3).unwrap();
        for c in &t.cosets {
            for w in c.windows(2) {
                assert_eq!(t.step(w[0]), w[1]);
            }
            assert_eq!(t.step(*c.last().unwrap()), c[0]);
        }
        assert_eq!(t.coset_of(17), Some(1));
        assert_eq!(sorted(t.cosets[2].clone()), vec![2, 6, 8, 18, 20, 24]);
    }
}
