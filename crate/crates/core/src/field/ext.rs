use std::fmt::Write as _;

use super::prime::PrimeField;
use crate::error::{Error, Result};
use crate::numth::order_in_group;

/// Largest extension degree: 3^12 is the biggest odd-characteristic field
/// below [`MAX_FIELD_SIZE`].
pub const MAX_DEGREE: usize = 12;

/// Upper bound on p^m.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Element of GF(p^m) in the polynomial basis, constant coefficient first.
///
/// Coefficients beyond the field's degree are always zero, so derived
/// equality and hashing are sound within one context.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ExtElem {
    coeffs: [u8; MAX_DEGREE],
}

impl ExtElem {
    #[inline]
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0) as u32
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime subfield.
    #[inline]
    pub fn is_base(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn raw(&self) -> &[u8; MAX_DEGREE] {
        &self.coeffs
    }
}

impl std::fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.coeffs.iter().rposition(|&c| c != 0).unwrap_or(0);
        f.debug_list().entries(&self.coeffs[..=last]).finish()
    }
}

/// GF(p^m) = GF(p)[x]/(f(x)) for a monic irreducible `f` of degree m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    fp: PrimeField,
    m: usize,
    /// f(x) = x^m + modulus[m-1] x^(m-1) + ... + modulus[0]
    modulus: [u8; MAX_DEGREE],
    size: u64,
    /// x^(p*i) mod f for i < m; the Frobenius map is linear in this basis.
    frob_basis: Vec<ExtElem>,
}

impl ExtField {
    /// Builds GF(p^m). `modulus` lists the non-leading coefficients of the
    /// reduction polynomial, constant term first; when absent, the
    /// lexicographically smallest monic irreducible is used.
    pub fn new(p: u32, m: usize, modulus: Option<&[u32]>) -> Result<Self> {
        let fp = PrimeField::new(p)?;
        let size = field_size(p, m)?;
        let low = match modulus {
            Some(c) => {
                if c.len() != m {
                    return Err(Error::BadPolynomial(format!(
                        "expected {m} coefficients, got {}",
                        c.len()
                    )));
                }
                if let Some(&bad) = c.iter().find(|&&v| v >= p) {
                    return Err(Error::BadCoefficient { value: bad, p });
                }
                if !is_irreducible(&fp, c) {
                    return Err(Error::ReduciblePolynomial(p));
                }
                c.to_vec()
            }
            None => smallest_irreducible(&fp, m),
        };
        let mut packed = [0u8; MAX_DEGREE];
        for (dst, &src) in packed.iter_mut().zip(&low) {
            *dst = src as u8;
        }
        let mut field = Self {
            fp,
            m,
            modulus: packed,
            size,
            frob_basis: Vec::new(),
        };
        let x = field.monomial(1.min(m - 1));
        let xp = if m == 1 {
            field.one()
        } else {
            field.pow_slow(&x, p as u64)
        };
        let mut basis = Vec::with_capacity(m);
        let mut acc = field.one();
        for _ in 0..m {
            basis.push(acc);
            acc = field.mul(&acc, &xp);
        }
        field.frob_basis = basis;
        Ok(field)
    }

    #[inline]
    pub fn prime_field(&self) -> &PrimeField {
        &self.fp
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.fp.modulus()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.m
    }

    /// Number of elements, p^m.
    #[inline]
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Non-leading coefficients of the reduction polynomial, constant first.
    pub fn modulus(&self) -> Vec<u32> {
        self.modulus[..self.m].iter().map(|&c| c as u32).collect()
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem::default()
    }

    pub fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    pub fn from_base(&self, c: u32) -> ExtElem {
        let mut e = ExtElem::default();
        e.coeffs[0] = self.fp.rem(c) as u8;
        e
    }

    fn monomial(&self, i: usize) -> ExtElem {
        let mut e = ExtElem::default();
        e.coeffs[i] = 1;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<ExtElem> {
        if coeffs.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: coeffs.len(),
            });
        }
        let mut e = ExtElem::default();
        for (i, &c) in coeffs.iter().enumerate() {
            if !self.fp.contains(c) {
                return Err(Error::BadCoefficient {
                    value: c,
                    p: self.fp.modulus(),
                });
            }
            e.coeffs[i] = c as u8;
        }
        Ok(e)
    }

    pub fn coeffs(&self, e: &ExtElem) -> Vec<u32> {
        (0..self.m).map(|i| e.coeff(i)).collect()
    }

    /// Element with base-p digits of `index`, constant coefficient fastest.
    pub fn from_index(&self, mut index: u64) -> ExtElem {
        let p = self.fp.modulus() as u64;
        let mut e = ExtElem::default();
        for i in 0..self.m {
            e.coeffs[i] = (index % p) as u8;
            index /= p;
        }
        e
    }

    pub fn index(&self, e: &ExtElem) -> u64 {
        let p = self.fp.modulus() as u64;
        (0..self.m)
            .rev()
            .fold(0, |acc, i| acc * p + e.coeff(i) as u64)
    }

    /// All elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.size).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let mut out = ExtElem::default();
        for i in 0..self.m {
            out.coeffs[i] = self.fp.add(a.coeffs[i] as u32, b.coeffs[i] as u32) as u8;
        }
        out
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let mut out = ExtElem::default();
        for i in 0..self.m {
            out.coeffs[i] = self.fp.sub(a.coeffs[i] as u32, b.coeffs[i] as u32) as u8;
        }
        out
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        let mut out = ExtElem::default();
        for i in 0..self.m {
            out.coeffs[i] = self.fp.neg(a.coeffs[i] as u32) as u8;
        }
        out
    }

    /// Multiplication by a GF(p) scalar.
    pub fn scale(&self, a: &ExtElem, c: u32) -> ExtElem {
        let mut out = ExtElem::default();
        if c == 0 {
            return out;
        }
        for i in 0..self.m {
            out.coeffs[i] = self.fp.mul(a.coeffs[i] as u32, c) as u8;
        }
        out
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let p = self.fp.modulus();
        let m = self.m;
        if m == 1 {
            return self.from_base(a.coeffs[0] as u32 * b.coeffs[0] as u32);
        }
        // Entries stay below 2m(p-1)^2 < 2^21 before the final reduction.
        let mut t = [0u32; 2 * MAX_DEGREE - 1];
        for i in 0..m {
            let ai = a.coeffs[i] as u32;
            if ai == 0 {
                continue;
            }
            for j in 0..m {
                t[i + j] += ai * b.coeffs[j] as u32;
            }
        }
        for d in (m..2 * m - 1).rev() {
            let c = self.fp.rem(t[d]);
            if c == 0 {
                continue;
            }
            // x^m = -(f_0 + f_1 x + ... + f_{m-1} x^{m-1})
            for i in 0..m {
                let fi = self.modulus[i] as u32;
                if fi != 0 {
                    t[d - m + i] += (p - fi) * c;
                }
            }
        }
        let mut out = ExtElem::default();
        for (o, &ti) in out.coeffs[..m].iter_mut().zip(&t) {
            *o = self.fp.rem(ti) as u8;
        }
        out
    }

    pub fn square(&self, a: &ExtElem) -> ExtElem {
        self.mul(a, a)
    }

    fn pow_slow(&self, a: &ExtElem, mut e: u64) -> ExtElem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: &ExtElem, e: u64) -> ExtElem {
        self.pow_slow(a, e)
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if a.is_zero() {
            return Err(Error::NonInvertible);
        }
        Ok(self.pow(a, self.size - 2))
    }

    /// The p-th power map.
    pub fn frobenius(&self, a: &ExtElem) -> ExtElem {
        if self.m == 1 {
            return *a;
        }
        let mut out = self.zero();
        for i in 0..self.m {
            let c = a.coeffs[i] as u32;
            if c != 0 {
                out = self.add(&out, &self.scale(&self.frob_basis[i], c));
            }
        }
        out
    }

    pub fn mult_order(&self, a: &ExtElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::NotAUnit);
        }
        let one = self.one();
        Ok(order_in_group(self.size - 1, |e| self.pow(a, e) == one))
    }

    /// First element in canonical order whose multiplicative order is
    /// exactly `n`.
    pub fn find_root_of_unity(&self, n: u64) -> Result<ExtElem> {
        let group = self.size - 1;
        if n == 0 || !group.is_multiple_of(n) {
            return Err(Error::NoSuchRoot {
                n,
                group_order: group,
            });
        }
        let one = self.one();
        self.elements()
            .skip(1)
            .find(|e| {
                // x^n = 1 and no proper divisor works
                self.pow(e, n) == one && self.mult_order(e).map(|t| t == n).unwrap_or(false)
            })
            .ok_or(Error::NoSuchRoot {
                n,
                group_order: group,
            })
    }

    /// Smallest `x` (canonical order) with `x^2 = -1`, if any.
    pub fn sqrt_of_minus_one(&self) -> Option<ExtElem> {
        if self.size % 4 != 1 {
            return None;
        }
        let minus_one = self.neg(&self.one());
        self.elements().find(|e| self.square(e) == minus_one)
    }

    /// `c0` for m = 1, `c0,c1,...` otherwise.
    pub fn format(&self, e: &ExtElem) -> String {
        let mut s = String::new();
        for i in 0..self.m {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}", e.coeff(i));
        }
        s
    }

    pub fn parse(&self, text: &str) -> Result<ExtElem> {
        let parts: Vec<u32> = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<_>>()?;
        self.from_coeffs(&parts)
    }
}

fn field_size(p: u32, m: usize) -> Result<u64> {
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::UnsupportedDegree { p, m });
    }
    let mut size: u64 = 1;
    for _ in 0..m {
        size *= p as u64;
        if size > MAX_FIELD_SIZE {
            return Err(Error::UnsupportedDegree { p, m });
        }
    }
    Ok(size)
}

/// Remainder of `a` modulo the monic polynomial `b` (both low-first,
/// `b` includes its leading 1).
fn poly_rem(fp: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = fp.sub(r[shift + i], fp.mul(lead, bi));
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=m/2.
pub(crate) fn is_irreducible(fp: &PrimeField, low: &[u32]) -> bool {
    let m = low.len();
    if m == 1 {
        return true;
    }
    let p = fp.modulus() as u64;
    let mut f = low.to_vec();
    f.push(1);
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                g.push((k % p) as u32);
                k /= p;
            }
            g.push(1);
            if poly_rem(fp, &f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `m`, searched
/// with the constant term varying fastest.
pub(crate) fn smallest_irreducible(fp: &PrimeField, m: usize) -> Vec<u32> {
    let p = fp.modulus() as u64;
    let mut idx = 0u64;
    loop {
        let mut k = idx;
        let low: Vec<u32> = (0..m)
            .map(|_| {
                let c = (k % p) as u32;
                k /= p;
                c
            })
            .collect();
        if is_irreducible(fp, &low) {
            return low;
        }
        idx += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(ExtField::new(3, 3, None).unwrap().modulus(), vec![1, 2, 0]);
        assert_eq!(ExtField::new(7, 2, None).unwrap().modulus(), vec![1, 0]);
        assert_eq!(ExtField::new(5, 1, None).unwrap().modulus(), vec![0]);
        // x^2 + 2 is the first irreducible quadratic over GF(5)
        assert_eq!(ExtField::new(5, 2, None).unwrap().modulus(), vec![2, 0]);
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert_eq!(
            ExtField::new(3, 3, Some(&[1, 1, 0])),
            Err(Error::ReduciblePolynomial(3))
        );
        assert!(matches!(
            ExtField::new(3, 3, Some(&[1, 2])),
            Err(Error::BadPolynomial(_))
        ));
        assert!(matches!(
            ExtField::new(3, 2, Some(&[1, 3])),
            Err(Error::BadCoefficient { .. })
        ));
    }

    #[test]
    fn size_limits() {
        assert!(ExtField::new(3, 12, None).is_ok());
        assert!(ExtField::new(3, 13, None).is_err());
        assert!(ExtField::new(251, 3, None).is_err());
        assert!(ExtField::new(3, 0, None).is_err());
    }

    #[test]
    fn gf27_reduction() {
        let f = ExtField::new(3, 3, Some(&[1, 2, 0])).unwrap();
        let x = f.from_coeffs(&[0, 1, 0]).unwrap();
        let x2 = f.from_coeffs(&[0, 0, 1]).unwrap();
        // x^3 = -2x - 1 = x + 2
        assert_eq!(f.coeffs(&f.mul(&x, &x2)), vec![2, 1, 0]);
    }

    #[test]
    fn frobenius_matches_power() {
        for (p, m) in [(3, 3), (5, 2), (7, 2), (3, 4)] {
            let f = ExtField::new(p, m, None).unwrap();
            for e in f.elements() {
                assert_eq!(f.frobenius(&e), f.pow(&e, p as u64));
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let f = ExtField::new(5, 2, None).unwrap();
        for i in 0..f.size() {
            assert_eq!(f.index(&f.from_index(i)), i);
        }
        assert_eq!(f.coeffs(&f.from_index(7)), vec![2, 1]);
    }

    #[test]
    fn roots_of_unity() {
        let f5 = ExtField::new(5, 1, None).unwrap();
        assert_eq!(f5.coeffs(&f5.find_root_of_unity(4).unwrap()), vec![2]);
        assert_eq!(
            f5.find_root_of_unity(3),
            Err(Error::NoSuchRoot {
                n: 3,
                group_order: 4
            })
        );
        let f3 = ExtField::new(3, 1, None).unwrap();
        assert_eq!(f3.coeffs(&f3.find_root_of_unity(2).unwrap()), vec![2]);
        assert_eq!(f3.find_root_of_unity(1).unwrap(), f3.one());
    }

    #[test]
    fn root_search_is_deterministic_and_exact() {
        let f = ExtField::new(3, 3, None).unwrap();
        let a = f.find_root_of_unity(26).unwrap();
        let b = f.find_root_of_unity(26).unwrap();
        assert_eq!(a, b);
        assert_eq!(f.mult_order(&a).unwrap(), 26);
        // every earlier element has a different order
        let idx = f.index(&a);
        for i in 1..idx {
            assert_ne!(f.mult_order(&f.from_index(i)).unwrap(), 26);
        }
    }

    #[test]
    fn square_roots_of_minus_one() {
        let c = |p, m| {
            let f = ExtField::new(p, m, None).unwrap();
            f.sqrt_of_minus_one().map(|e| f.coeffs(&e))
        };
        assert_eq!(c(5, 1), Some(vec![2]));
        assert_eq!(c(13, 1), Some(vec![5]));
        assert_eq!(c(3, 1), None);
        assert_eq!(c(7, 1), None);
        // 9 = 1 mod 4: x^2 + 1 is the modulus, so x itself works but 0,1,2 first fail
        let f9 = ExtField::new(3, 2, None).unwrap();
        let r = f9.sqrt_of_minus_one().unwrap();
        assert_eq!(f9.square(&r), f9.neg(&f9.one()));
    }

    #[test]
    fn text_format() {
        let f = ExtField::new(3, 3, None).unwrap();
        let e = f.from_coeffs(&[1, 0, 2]).unwrap();
        assert_eq!(f.format(&e), "1,0,2");
        assert_eq!(f.parse("1,0,2").unwrap(), e);
        assert!(f.parse("1,0").is_err());
        assert!(f.parse("1,x,0").is_err());
    }
}
