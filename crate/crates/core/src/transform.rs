//! Finite-field Fourier (FFFT) and Hartley (FFHT) transforms of length N.
//!
//! ```text
//! FFFT:  V_k = sum_i v_i zeta^(ik)      v_i = N^-1 sum_k V_k zeta^(-ik)
//! FFHT:  V_k = sum_i v_i cas_k(i)       v_i = N^-1 sum_k V_k cas_i(k)
//! ```
//!
//! The `*_forward` / `*_inverse` functions evaluate those sums directly in
//! O(N^2). [`fast_transform`] and [`fast_inverse`] produce identical output
//! through a mixed-radix decimation over the prime factors of N; the
//! Hartley case reuses the Fourier recursion via
//! `cas(e) = A zeta^e + B zeta^-e` with `A = 1/2 + 1/2j`, `B = 1/2 - 1/2j`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, GaloisInt, GaussianRing};
use crate::numth::smallest_prime_factor;
use crate::system::GaloisSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Kind {
    Fourier,
    #[default]
    Hartley,
}

impl Kind {
    pub fn wire_code(self) -> u8 {
        match self {
            Kind::Fourier => 0,
            Kind::Hartley => 1,
        }
    }

    pub fn from_wire_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Kind::Fourier),
            1 => Some(Kind::Hartley),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Fourier => "fourier",
            Kind::Hartley => "hartley",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fourier" | "ffft" => Ok(Kind::Fourier),
            "hartley" | "ffht" => Ok(Kind::Hartley),
            other => Err(Error::Parse(format!("unknown transform kind {other:?}"))),
        }
    }
}

/// A full Galois spectrum of N values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumBlock {
    pub kind: Kind,
    pub values: Vec<GaloisInt>,
}

fn ground(sys: &GaloisSystem, v: &[u32]) -> Result<()> {
    sys.check_block(v)
}

/// Scales by N^-1 and checks every value lies in GF(p).
fn to_time_block(sys: &GaloisSystem, acc: Vec<GaloisInt>) -> Result<Vec<u32>> {
    let ring = sys.ring();
    acc.into_iter()
        .enumerate()
        .map(|(index, z)| {
            let z = ring.scale(&z, sys.inv_n());
            if z.is_ground() {
                Ok(z.re.coeff(0))
            } else {
                Err(Error::NotGroundField { index })
            }
        })
        .collect()
}

fn check_spectrum(sys: &GaloisSystem, spectrum: &SpectrumBlock, kind: Kind) -> Result<()> {
    if spectrum.kind != kind {
        return Err(Error::InvalidArgument(format!(
            "expected a {kind} spectrum, got {}",
            spectrum.kind
        )));
    }
    if spectrum.values.len() != sys.n() {
        return Err(Error::LengthMismatch {
            expected: sys.n(),
            found: spectrum.values.len(),
        });
    }
    Ok(())
}

pub fn ffht_forward(sys: &GaloisSystem, v: &[u32]) -> Result<SpectrumBlock> {
    ground(sys, v)?;
    let ring = sys.ring();
    let n = sys.n();
    let values = (0..n)
        .map(|k| {
            v.iter().enumerate().fold(ring.zero(), |acc, (i, &vi)| {
                ring.add(&acc, &ring.scale(sys.cas_at((i * k) as i64), vi))
            })
        })
        .collect();
    Ok(SpectrumBlock {
        kind: Kind::Hartley,
        values,
    })
}

pub fn ffht_inverse(sys: &GaloisSystem, spectrum: &SpectrumBlock) -> Result<Vec<u32>> {
    check_spectrum(sys, spectrum, Kind::Hartley)?;
    let ring = sys.ring();
    let n = sys.n();
    let acc = (0..n)
        .map(|i| {
            spectrum
                .values
                .iter()
                .enumerate()
                .fold(ring.zero(), |acc, (k, vk)| {
                    ring.add(&acc, &ring.mul(vk, sys.cas_at((i * k) as i64)))
                })
        })
        .collect();
    to_time_block(sys, acc)
}

pub fn ffft_forward(sys: &GaloisSystem, v: &[u32]) -> Result<SpectrumBlock> {
    ground(sys, v)?;
    let ring = sys.ring();
    let ext = sys.ext();
    let n = sys.n();
    let values = (0..n)
        .map(|k| {
            let re = v.iter().enumerate().fold(ext.zero(), |acc, (i, &vi)| {
                ext.add(&acc, &ext.scale(sys.zeta_pow((i * k) as i64), vi))
            });
            ring.from_ext(re)
        })
        .collect();
    Ok(SpectrumBlock {
        kind: Kind::Fourier,
        values,
    })
}

pub fn ffft_inverse(sys: &GaloisSystem, spectrum: &SpectrumBlock) -> Result<Vec<u32>> {
    check_spectrum(sys, spectrum, Kind::Fourier)?;
    let ring = sys.ring();
    let n = sys.n();
    let acc = (0..n)
        .map(|i| {
            spectrum
                .values
                .iter()
                .enumerate()
                .fold(ring.zero(), |acc, (k, vk)| {
                    ring.add(&acc, &ring.mul_ext(vk, sys.zeta_pow(-((i * k) as i64))))
                })
        })
        .collect();
    to_time_block(sys, acc)
}

/// Direct forward transform of either kind.
pub fn forward(sys: &GaloisSystem, kind: Kind, v: &[u32]) -> Result<SpectrumBlock> {
    match kind {
        Kind::Fourier => ffft_forward(sys, v),
        Kind::Hartley => ffht_forward(sys, v),
    }
}

/// Direct inverse transform; the kind is taken from the spectrum.
pub fn inverse(sys: &GaloisSystem, spectrum: &SpectrumBlock) -> Result<Vec<u32>> {
    match spectrum.kind {
        Kind::Fourier => ffft_inverse(sys, spectrum),
        Kind::Hartley => ffht_inverse(sys, spectrum),
    }
}

/// `X_k = sum_i x_i w^(ik)` where `w = zeta^(+-step)` has order `x.len()`.
fn dft(
    ext: &ExtField,
    x: &[ExtElem],
    pows: &[ExtElem],
    step: usize,
    inverse: bool,
) -> Vec<ExtElem> {
    let n = x.len();
    if n == 1 {
        return x.to_vec();
    }
    let total = pows.len();
    let tw = |e: usize| {
        let idx = (e % n) * step;
        if inverse {
            &pows[(total - idx) % total]
        } else {
            &pows[idx]
        }
    };
    let r = smallest_prime_factor(n as u64) as usize;
    if r == n {
        return (0..n)
            .map(|k| {
                x.iter().enumerate().fold(ext.zero(), |acc, (i, xi)| {
                    ext.add(&acc, &ext.mul(xi, tw(i * k)))
                })
            })
            .collect();
    }
    let m = n / r;
    let subs: Vec<Vec<ExtElem>> = (0..r)
        .map(|s| {
            let sub: Vec<ExtElem> = x.iter().skip(s).step_by(r).copied().collect();
            dft(ext, &sub, pows, step * r, inverse)
        })
        .collect();
    (0..n)
        .map(|k| {
            let mut acc = subs[0][k % m];
            for (s, sub) in subs.iter().enumerate().skip(1) {
                acc = ext.add(&acc, &ext.mul(&sub[k % m], tw(s * k)));
            }
            acc
        })
        .collect()
}

fn dft_gaussian(sys: &GaloisSystem, x: &[GaloisInt], inverse: bool) -> Vec<GaloisInt> {
    let ext = sys.ext();
    let re: Vec<ExtElem> = x.iter().map(|z| z.re).collect();
    let im: Vec<ExtElem> = x.iter().map(|z| z.im).collect();
    let re = dft(ext, &re, sys.zeta_pows(), 1, inverse);
    let im = dft(ext, &im, sys.zeta_pows(), 1, inverse);
    re.into_iter()
        .zip(im)
        .map(|(re, im)| GaloisInt { re, im })
        .collect()
}

/// `(A, B)` with `cas(e) = A zeta^e + B zeta^-e`.
fn hartley_weights(ring: &GaussianRing) -> (GaloisInt, GaloisInt) {
    let two = ring.from_base(2);
    let inv2 = ring.inv(&two).expect("2 is a unit for odd p");
    let inv2j = ring
        .inv(&ring.mul(&two, &ring.j()))
        .expect("2j is a unit for odd p");
    (ring.add(&inv2, &inv2j), ring.sub(&inv2, &inv2j))
}

/// Combines a Fourier-type sum `F` into `A F_k + B F_-k`.
fn fold_hartley(ring: &GaussianRing, f: &[GaloisInt]) -> Vec<GaloisInt> {
    let (a, b) = hartley_weights(ring);
    let n = f.len();
    (0..n)
        .map(|k| ring.add(&ring.mul(&a, &f[k]), &ring.mul(&b, &f[(n - k) % n])))
        .collect()
}

/// Forward transform through the mixed-radix recursion; bit-identical to
/// [`forward`].
pub fn fast_transform(sys: &GaloisSystem, kind: Kind, v: &[u32]) -> Result<SpectrumBlock> {
    ground(sys, v)?;
    let ext = sys.ext();
    let x: Vec<ExtElem> = v.iter().map(|&c| ext.from_base(c)).collect();
    let ring = sys.ring();
    let fourier: Vec<GaloisInt> = dft(ext, &x, sys.zeta_pows(), 1, false)
        .into_iter()
        .map(|e| ring.from_ext(e))
        .collect();
    let values = match kind {
        Kind::Fourier => fourier,
        Kind::Hartley => fold_hartley(ring, &fourier),
    };
    Ok(SpectrumBlock { kind, values })
}

/// Inverse transform through the mixed-radix recursion; bit-identical to
/// [`inverse`], including its error behaviour.
pub fn fast_inverse(sys: &GaloisSystem, spectrum: &SpectrumBlock) -> Result<Vec<u32>> {
    check_spectrum(sys, spectrum, spectrum.kind)?;
    let acc = match spectrum.kind {
        Kind::Fourier => dft_gaussian(sys, &spectrum.values, true),
        Kind::Hartley => fold_hartley(sys.ring(), &dft_gaussian(sys, &spectrum.values, false)),
    };
    to_time_block(sys, acc)
}
