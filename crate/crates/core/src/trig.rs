//! Finite-field trigonometry: `cos_i k`, `sin_i k`, the `cas` kernel and the
//! carrier (spreading) sequences built from it.
//!
//! With a root `zeta` of order N,
//!
//! ```text
//! cos(e) = (zeta^e + zeta^-e) / 2
//! sin(e) = (zeta^e - zeta^-e) / 2j
//! cas_i(k) = cos(ik) + sin(ik)
//! ```
//!
//! Carriers are orthogonal with equal energy N under the bilinear form
//! `sum x_k y_k`, which is what the inverse transform relies on. Under the
//! Hermitian form `sum x_k conj(y_k)` carrier `i` pairs with carrier `-i`
//! instead, because `conj(cas(e)) = cas(-e)`.

use crate::error::{Error, Result};
use crate::field::{ExtElem, GaloisInt, GaussianRing};
use crate::system::GaloisSystem;

pub(crate) fn cas_table(ring: &GaussianRing, zeta_pows: &[ExtElem]) -> Result<Vec<GaloisInt>> {
    let n = zeta_pows.len();
    let two = ring.from_base(2);
    let inv2 = ring.inv(&two)?;
    let inv2j = ring.inv(&ring.mul(&two, &ring.j()))?;
    Ok((0..n)
        .map(|e| {
            let fwd = ring.from_ext(zeta_pows[e]);
            let back = ring.from_ext(zeta_pows[(n - e) % n]);
            let cos = ring.mul(&ring.add(&fwd, &back), &inv2);
            let sin = ring.mul(&ring.sub(&fwd, &back), &inv2j);
            ring.add(&cos, &sin)
        })
        .collect())
}

pub fn cos(sys: &GaloisSystem, i: usize, k: usize) -> GaloisInt {
    let ring = sys.ring();
    let e = (i * k) as i64;
    let sum = sys.ext().add(sys.zeta_pow(e), sys.zeta_pow(-e));
    ring.mul(&ring.from_ext(sum), &ring.inv(&ring.from_base(2)).unwrap())
}

pub fn sin(sys: &GaloisSystem, i: usize, k: usize) -> GaloisInt {
    let ring = sys.ring();
    let e = (i * k) as i64;
    let diff = sys.ext().sub(sys.zeta_pow(e), sys.zeta_pow(-e));
    let two_j = ring.mul(&ring.from_base(2), &ring.j());
    ring.mul(&ring.from_ext(diff), &ring.inv(&two_j).unwrap())
}

/// `cas_i(k) = cos_i(k) + sin_i(k)`.
#[inline]
pub fn cas(sys: &GaloisSystem, i: usize, k: usize) -> GaloisInt {
    *sys.cas_at((i * k % sys.n()) as i64)
}

/// Spreading sequence of user `index`: `samples[k] = cas_index(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    pub index: usize,
    pub samples: Vec<GaloisInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarrierMatrix {
    pub rows: Vec<Carrier>,
}

impl CarrierMatrix {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, k: usize) -> &GaloisInt {
        &self.rows[i].samples[k]
    }

    pub fn column(&self, k: usize) -> Vec<GaloisInt> {
        self.rows.iter().map(|r| r.samples[k]).collect()
    }
}

pub fn carrier(sys: &GaloisSystem, index: usize) -> Carrier {
    Carrier {
        index,
        samples: (0..sys.n()).map(|k| cas(sys, index, k)).collect(),
    }
}

pub fn carrier_matrix(sys: &GaloisSystem) -> CarrierMatrix {
    CarrierMatrix {
        rows: (0..sys.n()).map(|i| carrier(sys, i)).collect(),
    }
}

/// Substitutes `j := sqrt(-1)` in GF(p) and maps every entry to its
/// centered integer. Only defined for m = 1 with p = 1 (mod 4), where the
/// carriers collapse to one-dimensional (Walsh-type) sequences.
pub fn rationalize_walsh(sys: &GaloisSystem, matrix: &CarrierMatrix) -> Result<Vec<Vec<i32>>> {
    let ext = sys.ext();
    let unsupported = Error::NoRationalization {
        p: sys.p(),
        m: sys.m(),
    };
    if sys.m() != 1 {
        return Err(unsupported);
    }
    let root = ext.sqrt_of_minus_one().ok_or(unsupported)?;
    let fp = ext.prime_field();
    Ok(matrix
        .rows
        .iter()
        .map(|row| {
            row.samples
                .iter()
                .map(|z| {
                    let v = ext.add(&z.re, &ext.mul(&z.im, &root));
                    fp.centered(v.coeff(0))
                })
                .collect()
        })
        .collect())
}

/// Proves `C C = N I` (bilinear) for the system's carrier matrix in O(N).
///
/// Writing `cas(e) = A zeta^e + B zeta^-e`, the Gram matrix is
/// `N (2AB [i = i'] + (A^2 + B^2) [i = -i'])` because zeta has order exactly
/// N. It is therefore enough that the decomposition holds entrywise with
/// `2AB = 1` and `A^2 + B^2 = 0`.
pub fn carriers_orthogonal(sys: &GaloisSystem) -> bool {
    let ring = sys.ring();
    let (Ok(inv2), Ok(inv_j)) = (ring.inv(&ring.from_base(2)), ring.inv(&ring.j())) else {
        return false;
    };
    let a = ring.mul(&ring.add(&ring.one(), &inv_j), &inv2);
    let b = ring.mul(&ring.sub(&ring.one(), &inv_j), &inv2);
    let two_ab = ring.scale(&ring.mul(&a, &b), 2);
    let sum_sq = ring.add(&ring.mul(&a, &a), &ring.mul(&b, &b));
    two_ab == ring.one()
        && sum_sq.is_zero()
        && (0..sys.n() as i64).all(|e| {
            let fwd = ring.mul_ext(&a, sys.zeta_pow(e));
            let back = ring.mul_ext(&b, sys.zeta_pow(-e));
            *sys.cas_at(e) == ring.add(&fwd, &back)
        })
}

fn check_lengths(x: &[GaloisInt], y: &[GaloisInt]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(())
}

/// Hermitian inner product `sum x_k conj(y_k)`.
pub fn inner_product(ring: &GaussianRing, x: &[GaloisInt], y: &[GaloisInt]) -> Result<GaloisInt> {
    check_lengths(x, y)?;
    Ok(x.iter().zip(y).fold(ring.zero(), |acc, (a, b)| {
        ring.add(&acc, &ring.mul(a, &ring.conj(b)))
    }))
}

/// Bilinear product `sum x_k y_k`.
pub fn bilinear_product(
    ring: &GaussianRing,
    x: &[GaloisInt],
    y: &[GaloisInt],
) -> Result<GaloisInt> {
    check_lengths(x, y)?;
    Ok(x.iter()
        .zip(y)
        .fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b))))
}

/// Outcome of checking a carrier matrix against both forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orthogonality {
    /// Rows pairwise orthogonal under the bilinear form.
    pub rows_orthogonal: bool,
    /// Columns pairwise orthogonal under the bilinear form.
    pub columns_orthogonal: bool,
    /// Every row has bilinear energy N.
    pub equal_energy: bool,
    /// Pairs `(i, i')`, `i != i'`, with nonzero Hermitian product.
    pub hermitian_partners: Vec<(usize, usize)>,
}

impl Orthogonality {
    pub fn is_orthogonal(&self) -> bool {
        self.rows_orthogonal && self.columns_orthogonal && self.equal_energy
    }
}

pub fn check_orthogonality(sys: &GaloisSystem, matrix: &CarrierMatrix) -> Orthogonality {
    let ring = sys.ring();
    let n = matrix.n();
    let energy = ring.from_base((n % sys.p() as usize) as u32);
    let mut rows_orthogonal = true;
    let mut columns_orthogonal = true;
    let mut equal_energy = true;
    let mut hermitian_partners = Vec::new();
    let columns: Vec<Vec<GaloisInt>> = (0..n).map(|k| matrix.column(k)).collect();
    for i in 0..n {
        let ri = &matrix.rows[i].samples;
        for i2 in 0..n {
            let r2 = &matrix.rows[i2].samples;
            let b = bilinear_product(ring, ri, r2).unwrap();
            if i == i2 {
                equal_energy &= b == energy;
            } else {
                rows_orthogonal &= b.is_zero();
                columns_orthogonal &= bilinear_product(ring, &columns[i], &columns[i2])
                    .unwrap()
                    .is_zero();
                if !inner_product(ring, ri, r2).unwrap().is_zero() {
                    hermitian_partners.push((i, i2));
                }
            }
        }
    }
    Orthogonality {
        rows_orthogonal,
        columns_orthogonal,
        equal_energy,
        hermitian_partners,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_one() -> GaloisSystem {
        GaloisSystem::new(5, 1, 4, None).unwrap()
    }

    #[test]
    fn table_one_entries() {
        let s = table_one();
        let r = s.ring();
        assert_eq!(cas(&s, 1, 1), r.from_pair(0, 3));
        assert_eq!(cas(&s, 1, 2), r.from_base(4));
        assert_eq!(cas(&s, 3, 3), r.from_pair(0, 3));
        for k in 0..4 {
            assert_eq!(cas(&s, 0, k), r.one());
        }
    }

    #[test]
    fn cos_plus_sin_is_cas() {
        let s = GaloisSystem::new(3, 3, 26, None).unwrap();
        let r = s.ring();
        for i in 0..26 {
            for k in 0..26 {
                assert_eq!(r.add(&cos(&s, i, k), &sin(&s, i, k)), cas(&s, i, k));
            }
        }
    }

    #[test]
    fn carriers_of_table_one() {
        let s = table_one();
        let r = s.ring();
        assert_eq!(
            carrier(&s, 1).samples,
            vec![
                r.one(),
                r.from_pair(0, 3),
                r.from_base(4),
                r.from_pair(0, 2)
            ]
        );
        assert_eq!(
            carrier(&s, 2).samples,
            vec![r.one(), r.from_base(4), r.one(), r.from_base(4)]
        );
        assert!(carrier(&s, 0).samples.iter().all(|z| *z == r.one()));
    }

    #[test]
    fn walsh_rows() {
        let s = table_one();
        let w = rationalize_walsh(&s, &carrier_matrix(&s)).unwrap();
        assert_eq!(w[1], vec![1, 1, -1, -1]);
        assert_eq!(w[3], vec![1, -1, -1, 1]);
        let s3 = GaloisSystem::new(3, 1, 2, None).unwrap();
        assert_eq!(
            rationalize_walsh(&s3, &carrier_matrix(&s3)),
            Err(Error::NoRationalization { p: 3, m: 1 })
        );
    }

    #[test]
    fn inner_products() {
        let s = table_one();
        let r = s.ring();
        let c = carrier_matrix(&s);
        assert!(inner_product(r, &c.rows[1].samples, &c.rows[2].samples)
            .unwrap()
            .is_zero());
        let zeros = vec![r.zero(); 4];
        assert!(inner_product(r, &zeros, &c.rows[3].samples)
            .unwrap()
            .is_zero());
        assert!(inner_product(r, &zeros, &zeros[..3]).is_err());
        // Hermitian pairing of carrier 1 with carrier 3 = -1
        assert_eq!(
            inner_product(r, &c.rows[1].samples, &c.rows[3].samples).unwrap(),
            r.from_base(4)
        );
        assert!(inner_product(r, &c.rows[1].samples, &c.rows[1].samples)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn certificate_agrees_with_gram_matrix() {
        for (p, m, n) in [(5, 1, 4), (3, 3, 26), (7, 2, 48), (3, 2, 8), (13, 1, 12)] {
            let s = GaloisSystem::new(p, m, n, None).unwrap();
            assert!(carriers_orthogonal(&s));
            assert!(check_orthogonality(&s, &carrier_matrix(&s)).is_orthogonal());
        }
    }

    #[test]
    fn orthogonality_report() {
        let s = table_one();
        let o = check_orthogonality(&s, &carrier_matrix(&s));
        assert!(o.is_orthogonal());
        assert_eq!(o.hermitian_partners, vec![(1, 3), (3, 1)]);
    }
}
