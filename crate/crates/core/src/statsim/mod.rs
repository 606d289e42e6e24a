//! Monte-Carlo checks of the statistics of multiplexed streams: whiteness
//! of the Galois-domain sequence after complex embedding, and the power
//! spectral density of the pulse-shaped baseband signal.

mod acf;
mod psd;

pub use acf::{galois_acf, write_acf_csv, AcfEstimate, AcfReport};
pub use psd::{
    psd_estimate, synthesize_envelope, write_psd_csv, Envelope, PsdConfig, PsdEstimate, PsdFit,
    PulseShape, SampledPulse, SymbolModel, MAIN_LOBE,
};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{GaloisInt, GaussianRing, PrimeField};

/// A point of the two-dimensional constellation: centered representatives
/// of the real and imaginary parts.
pub type ConstellationPoint = Complex64;

/// Deterministic i.i.d. uniform GF(p) symbols.
#[derive(Debug, Clone)]
pub struct SymbolSource {
    field: PrimeField,
    rng: ChaCha8Rng,
}

impl SymbolSource {
    pub fn new(p: u32, seed: u64) -> Result<Self> {
        Ok(Self {
            field: PrimeField::new(p)?,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Independent source for parallel work item `stream` under `seed`.
    pub fn with_stream(p: u32, seed: u64, stream: u64) -> Result<Self> {
        let mut s = Self::new(p, seed)?;
        s.rng.set_stream(stream);
        Ok(s)
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    /// Next symbol as a residue in `0..p`.
    pub fn next_residue(&mut self) -> u32 {
        self.rng.random_range(0..self.field.modulus())
    }

    /// Next symbol as a centered integer in `-(p-1)/2..=(p-1)/2`.
    pub fn next_centered(&mut self) -> i32 {
        let r = self.next_residue();
        self.field.centered(r)
    }

    pub fn fill(&mut self, block: &mut [u32]) {
        block.iter_mut().for_each(|x| *x = self.next_residue());
    }

    pub(crate) fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl Iterator for SymbolSource {
    type Item = i32;

    fn next(&mut self) -> Option<i32> {
        Some(self.next_centered())
    }
}

/// `(1/p) sum a^2` over the centered alphabet: the power of a uniform
/// symbol, `(p^2 - 1) / 12`.
pub fn symbol_power(p: u32) -> f64 {
    (p as f64 * p as f64 - 1.0) / 12.0
}

/// Maps a GI(p) value to the plane through centered representatives.
pub fn embed(ring: &GaussianRing, z: &GaloisInt) -> Result<ConstellationPoint> {
    let ext = ring.ext();
    if ext.degree() != 1 {
        return Err(Error::ExtensionNotEmbeddable(ext.degree()));
    }
    let fp = ext.prime_field();
    Ok(Complex64::new(
        fp.centered(z.re.coeff(0)) as f64,
        fp.centered(z.im.coeff(0)) as f64,
    ))
}
