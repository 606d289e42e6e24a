//! Redundancy of ground-field spectra.
//!
//! For `v` in GF(p)^N the Fourier spectrum satisfies `V_{pk} = V_k^p`. The
//! Hartley spectrum satisfies `V_{-pk} = tau(V_k)` where `tau` applies the
//! Frobenius map to both coordinates and sends `j -> -j`. When p = 3 (mod 4)
//! `tau(z) = z^p`; when p = 1 (mod 4) the p-th power fixes `j` and
//! `tau(z) = conj(z^p)` instead.
//!
//! Both maps are additive and fix GF(p), so a rule that holds on the
//! transform kernel (the spectra of the unit impulses) holds for every
//! ground-field input. [`rule_holds`] checks exactly that.

use crate::field::{GaloisInt, GaussianRing};
use crate::system::GaloisSystem;
use crate::transform::{Kind, SpectrumBlock};

/// Value map applied when stepping along a coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjugacyMap {
    /// `z -> z^p`
    Frobenius,
    /// `re + j im -> re^p - j im^p`
    ConjFrobenius,
}

impl ConjugacyMap {
    /// The map under which spectra of `kind` are redundant for every p.
    pub fn for_kind(kind: Kind) -> Self {
        match kind {
            Kind::Fourier => ConjugacyMap::Frobenius,
            Kind::Hartley => ConjugacyMap::ConjFrobenius,
        }
    }

    #[inline]
    pub fn apply(self, ring: &GaussianRing, z: &GaloisInt) -> GaloisInt {
        match self {
            ConjugacyMap::Frobenius => ring.frobenius(z),
            ConjugacyMap::ConjFrobenius => ring.conj_frobenius(z),
        }
    }
}

/// Index map of the coset walk: `k -> pk` (Fourier) or `k -> -pk` (Hartley).
pub fn index_step(kind: Kind, n: usize, p: u32, k: usize) -> usize {
    let p = p as usize % n;
    let mult = match kind {
        Kind::Fourier => p,
        Kind::Hartley => (n - p) % n,
    };
    k * mult % n
}

/// True when `V_{step(k)} = map(V_k)` holds for every ground-field input.
pub fn rule_holds(sys: &GaloisSystem, kind: Kind, map: ConjugacyMap) -> bool {
    let ring = sys.ring();
    let n = sys.n();
    (0..n).all(|e| {
        let target = index_step(kind, n, sys.p(), e);
        match kind {
            Kind::Fourier => {
                let z = ring.from_ext(*sys.zeta_pow(e as i64));
                ring.from_ext(*sys.zeta_pow(target as i64)) == map.apply(ring, &z)
            }
            Kind::Hartley => *sys.cas_at(target as i64) == map.apply(ring, sys.cas_at(e as i64)),
        }
    })
}

/// First index `k` at which a concrete spectrum breaks the rule.
pub fn first_violation(
    sys: &GaloisSystem,
    spectrum: &SpectrumBlock,
    map: ConjugacyMap,
) -> Option<usize> {
    let ring = sys.ring();
    let n = sys.n();
    (0..n).find(|&k| {
        let t = index_step(spectrum.kind, n, sys.p(), k);
        spectrum.values[t] != map.apply(ring, &spectrum.values[k])
    })
}
