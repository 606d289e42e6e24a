//! One GDM system: the field GF(p^m), its Gaussian ring, the block length
//! N and a root of unity of order exactly N.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, GaloisInt, GaussianRing};
use crate::trig;

/// Resolved, plain-data description of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemParams {
    pub p: u32,
    pub m: usize,
    pub n: usize,
    /// Non-leading reduction polynomial coefficients, constant term first.
    pub modulus: Vec<u32>,
    /// Coefficients of the root of unity of order `n`.
    pub zeta: Vec<u32>,
}

/// Shared, immutable system context. Cheap to clone.
#[derive(Debug, Clone)]
pub struct GaloisSystem {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    ring: GaussianRing,
    n: usize,
    zeta: ExtElem,
    /// zeta^e for e in 0..n
    zeta_pows: Vec<ExtElem>,
    /// cas(e) for e in 0..n; cas_i(k) depends only on ik mod n.
    cas: Vec<GaloisInt>,
    inv_n: u32,
}

impl GaloisSystem {
    /// Builds the system for (p, m, N), picking the default reduction
    /// polynomial when `modulus` is `None` and the first root of unity of
    /// order N in canonical element order.
    pub fn new(p: u32, m: usize, n: usize, modulus: Option<&[u32]>) -> Result<Self> {
        let ext = ExtField::new(p, m, modulus)?;
        let zeta = ext.find_root_of_unity(n as u64)?;
        Self::with_root(ext, n, zeta)
    }

    /// Builds the system around a caller-chosen root, which must have
    /// order exactly `n`.
    pub fn with_root(ext: ExtField, n: usize, zeta: ExtElem) -> Result<Self> {
        let group = ext.size() - 1;
        if n == 0 || !group.is_multiple_of(n as u64) {
            return Err(Error::NoSuchRoot {
                n: n as u64,
                group_order: group,
            });
        }
        let order = ext.mult_order(&zeta)?;
        if order != n as u64 {
            return Err(Error::InvalidArgument(format!(
                "root has order {order}, expected {n}"
            )));
        }
        let mut zeta_pows = Vec::with_capacity(n);
        let mut acc = ext.one();
        for _ in 0..n {
            zeta_pows.push(acc);
            acc = ext.mul(&acc, &zeta);
        }
        let fp = *ext.prime_field();
        let inv_n = fp.inv(fp.reduce(n as i64))?;
        let ring = GaussianRing::new(ext);
        let cas = trig::cas_table(&ring, &zeta_pows)?;
        Ok(Self {
            inner: Arc::new(Inner {
                ring,
                n,
                zeta,
                zeta_pows,
                cas,
                inv_n,
            }),
        })
    }

    pub fn from_params(params: &SystemParams) -> Result<Self> {
        let ext = ExtField::new(params.p, params.m, Some(&params.modulus))?;
        let zeta = ext.from_coeffs(&params.zeta)?;
        Self::with_root(ext, params.n, zeta)
    }

    #[inline]
    pub fn ring(&self) -> &GaussianRing {
        &self.inner.ring
    }

    #[inline]
    pub fn ext(&self) -> &ExtField {
        self.inner.ring.ext()
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.ext().characteristic()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.ext().degree()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.n
    }

    #[inline]
    pub fn zeta(&self) -> &ExtElem {
        &self.inner.zeta
    }

    /// zeta^e, exponent taken mod N.
    #[inline]
    pub fn zeta_pow(&self, e: i64) -> &ExtElem {
        &self.inner.zeta_pows[e.rem_euclid(self.inner.n as i64) as usize]
    }

    pub(crate) fn zeta_pows(&self) -> &[ExtElem] {
        &self.inner.zeta_pows
    }

    /// cas(e) for an exponent taken mod N.
    #[inline]
    pub fn cas_at(&self, e: i64) -> &GaloisInt {
        &self.inner.cas[e.rem_euclid(self.inner.n as i64) as usize]
    }

    /// N^{-1} in GF(p).
    #[inline]
    pub fn inv_n(&self) -> u32 {
        self.inner.inv_n
    }

    pub fn params(&self) -> SystemParams {
        SystemParams {
            p: self.p(),
            m: self.m(),
            n: self.n(),
            modulus: self.ext().modulus(),
            zeta: self.ext().coeffs(self.zeta()),
        }
    }

    /// Checks that a time block has length N and GF(p) entries.
    pub fn check_block(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        let p = self.p();
        if let Some((index, &value)) = v.iter().enumerate().find(|(_, &x)| x >= p) {
            return Err(Error::SymbolOutOfRange { index, value, p });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_one_system() {
        let s = GaloisSystem::new(5, 1, 4, None).unwrap();
        assert_eq!(s.params().zeta, vec![2]);
        assert_eq!(s.inv_n(), 4);
        assert_eq!(s.zeta_pow(-1), &s.ext().from_base(3));
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(matches!(
            GaloisSystem::new(5, 1, 3, None),
            Err(Error::NoSuchRoot { .. })
        ));
        assert!(matches!(
            GaloisSystem::new(5, 1, 5, None),
            Err(Error::NoSuchRoot { .. })
        ));
    }

    #[test]
    fn params_round_trip() {
        let s = GaloisSystem::new(3, 3, 26, None).unwrap();
        let again = GaloisSystem::from_params(&s.params()).unwrap();
        assert_eq!(again.params(), s.params());
    }

    #[test]
    fn wrong_order_root_rejected() {
        let ext = ExtField::new(5, 1, None).unwrap();
        let four = ext.from_base(4);
        assert!(GaloisSystem::with_root(ext, 4, four).is_err());
    }

    #[test]
    fn block_validation() {
        let s = GaloisSystem::new(5, 1, 4, None).unwrap();
        assert!(s.check_block(&[4, 0, 1, 2]).is_ok());
        assert!(matches!(
            s.check_block(&[4, 0, 1]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            s.check_block(&[4, 0, 5, 2]),
            Err(Error::SymbolOutOfRange { index: 2, .. })
        ));
    }
}
