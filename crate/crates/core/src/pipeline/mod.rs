//! The multiplexer: transform a block of N users' symbols, keep only the
//! coset-leader coefficients, and rebuild the full spectrum from them at the
//! receiver before inverting.
//!
//! One frame carries one GF(p) symbol from each of the N users and emits ν
//! coefficients, so the mux symbol clock is ν per user-symbol period and
//! `B_GDM = ν B_1`.

mod crosstalk;
mod metrics;
mod stream;
mod wire;

pub use crosstalk::{crosstalk_probe, CrosstalkReport};
pub use metrics::{capacity_check, metrics, CapacityCheck, MuxMetrics};
pub use stream::{demux_stream, format_symbol_line, mux_stream, parse_symbol_line};
pub use wire::{decode_frame, deserialize, serialize, MAGIC};

use crate::conjugacy::{rule_holds, ConjugacyMap};
use crate::cyclotomic::CosetTable;
use crate::error::{Error, Result};
use crate::field::GaloisInt;
use crate::system::GaloisSystem;
use crate::transform::{fast_inverse, fast_transform, Kind, SpectrumBlock};
use crate::trig::carriers_orthogonal;

/// Parameters a frame was produced under; carried in every frame header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameHeader {
    pub p: u32,
    pub m: usize,
    pub n: usize,
    pub kind: Kind,
    /// Non-leading reduction polynomial coefficients, constant first.
    pub modulus: Vec<u32>,
}

/// The ν coset-leader coefficients of one frame, in ascending leader order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedFrame {
    pub header: FrameHeader,
    pub leaders: Vec<GaloisInt>,
}

#[derive(Debug, Clone)]
pub struct Multiplexer {
    sys: GaloisSystem,
    kind: Kind,
    table: CosetTable,
    map: ConjugacyMap,
}

impl Multiplexer {
    /// Validates the system for multiplexing: carriers must be orthogonal, the
    /// conjugacy rule must hold on the transform kernel, ν coefficients must
    /// be able to carry N symbols, and N must fit the wire format.
    pub fn new(sys: GaloisSystem, kind: Kind) -> Result<Self> {
        let n = sys.n();
        if n > u16::MAX as usize {
            return Err(Error::UnsupportedParams(format!(
                "N = {n} does not fit the frame header"
            )));
        }
        let map = ConjugacyMap::for_kind(kind);
        if !rule_holds(&sys, kind, map) {
            return Err(Error::UnsupportedParams(format!(
                "{kind} conjugacy rule fails for p = {}, m = {}, N = {n}",
                sys.p(),
                sys.m()
            )));
        }
        if !carriers_orthogonal(&sys) {
            return Err(Error::UnsupportedParams(
                "carrier matrix is not orthogonal".into(),
            ));
        }
        let table = CosetTable::new(kind, n, sys.p())?;
        if 2 * sys.m() * table.nu() < n {
            return Err(Error::UnsupportedParams(format!(
                "{} coefficients of {} GF(p) coordinates cannot carry {n} symbols",
                table.nu(),
                2 * sys.m()
            )));
        }
        Ok(Self {
            sys,
            kind,
            table,
            map,
        })
    }

    pub fn system(&self) -> &GaloisSystem {
        &self.sys
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn cosets(&self) -> &CosetTable {
        &self.table
    }

    pub fn nu(&self) -> usize {
        self.table.nu()
    }

    pub fn conjugacy_map(&self) -> ConjugacyMap {
        self.map
    }

    pub fn header(&self) -> FrameHeader {
        FrameHeader {
            p: self.sys.p(),
            m: self.sys.m(),
            n: self.sys.n(),
            kind: self.kind,
            modulus: self.sys.ext().modulus(),
        }
    }

    pub fn metrics(&self) -> MuxMetrics {
        metrics(self.sys.n(), self.nu(), self.sys.p())
    }

    /// Keeps the coset-leader values of a full spectrum.
    pub fn compress(&self, spectrum: &SpectrumBlock) -> Result<CompressedFrame> {
        if spectrum.kind != self.kind || spectrum.values.len() != self.sys.n() {
            return Err(Error::ParamMismatch(
                "spectrum does not match multiplexer".into(),
            ));
        }
        Ok(CompressedFrame {
            header: self.header(),
            leaders: self
                .table
                .cosets
                .iter()
                .map(|c| spectrum.values[c[0]])
                .collect(),
        })
    }

    pub fn mux(&self, v: &[u32]) -> Result<CompressedFrame> {
        let spectrum = fast_transform(&self.sys, self.kind, v)?;
        self.compress(&spectrum)
    }

    fn check_frame(&self, frame: &CompressedFrame) -> Result<()> {
        let expected = self.header();
        if frame.header != expected {
            return Err(Error::ParamMismatch(format!(
                "frame header {:?} != multiplexer {:?}",
                frame.header, expected
            )));
        }
        if frame.leaders.len() != self.nu() {
            return Err(Error::ParamMismatch(format!(
                "frame carries {} coefficients, expected {}",
                frame.leaders.len(),
                self.nu()
            )));
        }
        Ok(())
    }

    /// Fills every coset by walking it from the leader, applying the
    /// conjugacy map once per step.
    pub fn reconstruct_spectrum(&self, frame: &CompressedFrame) -> Result<SpectrumBlock> {
        self.check_frame(frame)?;
        let ring = self.sys.ring();
        let mut values = vec![ring.zero(); self.sys.n()];
        for (coset, leader_value) in self.table.cosets.iter().zip(&frame.leaders) {
            let mut z = *leader_value;
            for &k in coset {
                values[k] = z;
                z = self.map.apply(ring, &z);
            }
            if z != *leader_value {
                return Err(Error::InconsistentFrame { index: coset[0] });
            }
        }
        Ok(SpectrumBlock {
            kind: self.kind,
            values,
        })
    }

    pub fn demux(&self, frame: &CompressedFrame) -> Result<Vec<u32>> {
        let spectrum = self.reconstruct_spectrum(frame)?;
        fast_inverse(&self.sys, &spectrum)
    }
}
