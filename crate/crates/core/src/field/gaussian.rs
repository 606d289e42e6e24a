use super::ext::{ExtElem, ExtField};
use crate::error::{Error, Result};
use crate::numth::order_in_group;

/// `re + j*im` with `j^2 = -1`, both parts in GF(p^m).
///
/// `j` is kept formal even when -1 already has a square root in GF(p^m).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Debug)]
pub struct GaloisInt {
    pub re: ExtElem,
    pub im: ExtElem,
}

impl GaloisInt {
    #[inline]
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True when the value is a GF(p) element (no imaginary part, no
    /// higher-degree coefficients).
    #[inline]
    pub fn is_ground(&self) -> bool {
        self.im.is_zero() && self.re.is_base()
    }
}

/// GI(p^m). A field when p^m = 3 (mod 4), otherwise a ring with zero
/// divisors in which only elements of nonzero norm are invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRing {
    ext: ExtField,
    /// j^p = j when p = 1 (mod 4), -j when p = 3 (mod 4).
    j_fixed_by_frobenius: bool,
}

impl GaussianRing {
    pub fn new(ext: ExtField) -> Self {
        let j_fixed_by_frobenius = ext.characteristic() % 4 == 1;
        Self {
            ext,
            j_fixed_by_frobenius,
        }
    }

    #[inline]
    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.ext.characteristic()
    }

    pub fn is_field(&self) -> bool {
        self.ext.size() % 4 == 3
    }

    pub fn zero(&self) -> GaloisInt {
        GaloisInt::default()
    }

    pub fn one(&self) -> GaloisInt {
        self.from_ext(self.ext.one())
    }

    pub fn j(&self) -> GaloisInt {
        GaloisInt {
            re: self.ext.zero(),
            im: self.ext.one(),
        }
    }

    pub fn from_ext(&self, re: ExtElem) -> GaloisInt {
        GaloisInt {
            re,
            im: self.ext.zero(),
        }
    }

    pub fn from_base(&self, c: u32) -> GaloisInt {
        self.from_ext(self.ext.from_base(c))
    }

    /// `a + b j` with `a, b` in GF(p); handy for m = 1.
    pub fn from_pair(&self, a: u32, b: u32) -> GaloisInt {
        GaloisInt {
            re: self.ext.from_base(a),
            im: self.ext.from_base(b),
        }
    }

    pub fn add(&self, a: &GaloisInt, b: &GaloisInt) -> GaloisInt {
        GaloisInt {
            re: self.ext.add(&a.re, &b.re),
            im: self.ext.add(&a.im, &b.im),
        }
    }

    pub fn sub(&self, a: &GaloisInt, b: &GaloisInt) -> GaloisInt {
        GaloisInt {
            re: self.ext.sub(&a.re, &b.re),
            im: self.ext.sub(&a.im, &b.im),
        }
    }

    pub fn neg(&self, a: &GaloisInt) -> GaloisInt {
        GaloisInt {
            re: self.ext.neg(&a.re),
            im: self.ext.neg(&a.im),
        }
    }

    pub fn mul(&self, a: &GaloisInt, b: &GaloisInt) -> GaloisInt {
        let f = &self.ext;
        GaloisInt {
            re: f.sub(&f.mul(&a.re, &b.re), &f.mul(&a.im, &b.im)),
            im: f.add(&f.mul(&a.re, &b.im), &f.mul(&a.im, &b.re)),
        }
    }

    /// Product with an element of GF(p^m).
    pub fn mul_ext(&self, a: &GaloisInt, b: &ExtElem) -> GaloisInt {
        GaloisInt {
            re: self.ext.mul(&a.re, b),
            im: self.ext.mul(&a.im, b),
        }
    }

    /// Product with a GF(p) scalar.
    pub fn scale(&self, a: &GaloisInt, c: u32) -> GaloisInt {
        GaloisInt {
            re: self.ext.scale(&a.re, c),
            im: self.ext.scale(&a.im, c),
        }
    }

    pub fn conj(&self, a: &GaloisInt) -> GaloisInt {
        GaloisInt {
            re: a.re,
            im: self.ext.neg(&a.im),
        }
    }

    /// `re^2 + im^2`, multiplicative, zero exactly on non-units.
    pub fn norm(&self, a: &GaloisInt) -> ExtElem {
        let f = &self.ext;
        f.add(&f.square(&a.re), &f.square(&a.im))
    }

    pub fn is_unit(&self, a: &GaloisInt) -> bool {
        !self.norm(a).is_zero()
    }

    pub fn inv(&self, a: &GaloisInt) -> Result<GaloisInt> {
        let n = self.norm(a);
        let n_inv = self.ext.inv(&n).map_err(|_| Error::NonInvertible)?;
        Ok(self.mul_ext(&self.conj(a), &n_inv))
    }

    pub fn pow(&self, a: &GaloisInt, mut e: u64) -> GaloisInt {
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

    /// `z^p`, computed as `frob(re) + j^p frob(im)`.
    pub fn frobenius(&self, a: &GaloisInt) -> GaloisInt {
        let re = self.ext.frobenius(&a.re);
        let im = self.ext.frobenius(&a.im);
        GaloisInt {
            re,
            im: if self.j_fixed_by_frobenius {
                im
            } else {
                self.ext.neg(&im)
            },
        }
    }

    /// `frob(re) - j frob(im)`: the Frobenius map on the coordinates
    /// followed by `j -> -j`. It equals [`frobenius`](Self::frobenius) when
    /// p = 3 (mod 4) and `conj(z^p)` when p = 1 (mod 4).
    pub fn conj_frobenius(&self, a: &GaloisInt) -> GaloisInt {
        GaloisInt {
            re: self.ext.frobenius(&a.re),
            im: self.ext.neg(&self.ext.frobenius(&a.im)),
        }
    }

    /// Exponent of the unit group: q^2 - 1 in the field case, q - 1 when
    /// GI(q) splits as GF(q) x GF(q).
    fn unit_exponent(&self) -> u64 {
        let q = self.ext.size();
        if self.is_field() {
            q * q - 1
        } else {
            q - 1
        }
    }

    pub fn mult_order(&self, a: &GaloisInt) -> Result<u64> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let one = self.one();
        Ok(order_in_group(self.unit_exponent(), |e| {
            self.pow(a, e) == one
        }))
    }

    /// Canonical text form `a+bj`; parts are comma-separated coefficient
    /// lists when m > 1.
    pub fn format(&self, a: &GaloisInt) -> String {
        format!("{}+{}j", self.ext.format(&a.re), self.ext.format(&a.im))
    }

    /// Parses the canonical form; a bare real part is also accepted.
    pub fn parse(&self, text: &str) -> Result<GaloisInt> {
        let t = text.trim();
        match t.strip_suffix('j') {
            Some(body) => {
                let (re, im) = body
                    .rsplit_once('+')
                    .ok_or_else(|| Error::Parse(format!("expected a+bj, got {t:?}")))?;
                Ok(GaloisInt {
                    re: self.ext.parse(re)?,
                    im: self.ext.parse(im)?,
                })
            }
            None => Ok(self.from_ext(self.ext.parse(t)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(p: u32, m: usize) -> GaussianRing {
        GaussianRing::new(ExtField::new(p, m, None).unwrap())
    }

    #[test]
    fn zero_divisors_in_gi5() {
        let r = gi(5, 1);
        let a = r.from_pair(1, 2);
        let b = r.from_pair(1, 3);
        assert_eq!(r.mul(&a, &b), r.zero());
        assert_eq!(r.inv(&a), Err(Error::NonInvertible));
        assert_eq!(r.mult_order(&a), Err(Error::NotAUnit));
        assert!(!r.is_field());
        assert!(gi(3, 1).is_field());
    }

    #[test]
    fn conjugation() {
        let r = gi(5, 1);
        assert_eq!(r.conj(&r.from_pair(3, 4)), r.from_pair(3, 1));
        assert_eq!(r.conj(&r.from_base(2)), r.from_base(2));
        assert_eq!(r.conj(&r.j()), r.neg(&r.j()));
    }

    #[test]
    fn frobenius_on_gi3() {
        let r = gi(3, 1);
        for a in 0..3 {
            for b in 0..3 {
                let z = r.from_pair(a, b);
                assert_eq!(r.frobenius(&z), r.from_pair(a, (3 - b) % 3));
                assert_eq!(r.frobenius(&z), r.pow(&z, 3));
            }
        }
    }

    #[test]
    fn frobenius_fixes_ground_components() {
        let r = gi(5, 1);
        let z = r.from_pair(3, 4);
        assert_eq!(r.frobenius(&z), z);
        assert_eq!(r.pow(&z, 5), z);
        assert_eq!(r.conj_frobenius(&z), r.from_pair(3, 1));
    }

    #[test]
    fn frobenius_order_divides_2m() {
        let r = gi(3, 3);
        let ext = r.ext().clone();
        for (i, re) in ext.elements().enumerate().step_by(5) {
            let im = ext.from_index((i as u64 * 7 + 3) % ext.size());
            let z = GaloisInt { re, im };
            let mut w = z;
            for _ in 0..6 {
                w = r.frobenius(&w);
            }
            assert_eq!(w, z);
        }
    }

    #[test]
    fn inverse_of_units() {
        let r = gi(7, 1);
        for a in 0..7 {
            for b in 0..7 {
                let z = r.from_pair(a, b);
                if z.is_zero() {
                    assert!(r.inv(&z).is_err());
                } else {
                    assert_eq!(r.mul(&z, &r.inv(&z).unwrap()), r.one());
                }
            }
        }
    }

    #[test]
    fn unit_orders() {
        let r = gi(3, 1);
        // GI(3) = GF(9): j has order 4, 1+j generates
        assert_eq!(r.mult_order(&r.j()).unwrap(), 4);
        assert_eq!(r.mult_order(&r.from_pair(1, 1)).unwrap(), 8);
        let r5 = gi(5, 1);
        assert_eq!(r5.mult_order(&r5.from_base(2)).unwrap(), 4);
        assert_eq!(r5.mult_order(&r5.one()).unwrap(), 1);
    }

    #[test]
    fn text_round_trip() {
        let r = gi(5, 1);
        let z = r.from_pair(3, 4);
        assert_eq!(r.format(&z), "3+4j");
        assert_eq!(r.parse("3+4j").unwrap(), z);
        assert_eq!(r.parse("2").unwrap(), r.from_base(2));
        let r27 = gi(3, 3);
        let w = r27.parse("1,0,2+0,1,0j").unwrap();
        assert_eq!(r27.format(&w), "1,0,2+0,1,0j");
        assert!(r.parse("3+4").is_err());
    }
}
