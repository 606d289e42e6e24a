//! Galois-Division Multiplex: finite-field Hartley and Fourier transforms
//! over Gaussian integers of GF(p^m), cyclotomic-coset compression of the
//! Galois spectrum, and the statistical tooling around it.
//!
//! ```
//! use gdm_core::{GaloisSystem, Kind, Multiplexer};
//!
//! let sys = GaloisSystem::new(5, 1, 4, None).unwrap();
//! let mux = Multiplexer::new(sys, Kind::Hartley).unwrap();
//! let frame = mux.mux(&[4, 0, 1, 2]).unwrap();
//! assert_eq!(frame.leaders.len(), 3);
//! assert_eq!(mux.demux(&frame).unwrap(), vec![4, 0, 1, 2]);
//! ```

pub mod conjugacy;
pub mod cyclotomic;
mod error;
pub mod exec;
pub mod field;
pub mod golden;
pub mod numth;
pub mod pipeline;
pub mod statsim;
pub mod system;
pub mod transform;
pub mod trig;

pub use error::{Error, Result};
pub use exec::Exec;
pub use field::{ExtElem, ExtField, GaloisInt, GaussianRing, PrimeField};
pub use pipeline::{CompressedFrame, FrameHeader, Multiplexer, MuxMetrics};
pub use system::{GaloisSystem, SystemParams};
pub use transform::{Kind, SpectrumBlock};
