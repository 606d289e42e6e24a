//! Exact arithmetic in GF(p), GF(p^m) and the Gaussian-integer ring
//! GI(p^m) = GF(p^m)[j]/(j^2 + 1).
//!
//! Contexts ([`PrimeField`], [`ExtField`], [`GaussianRing`]) own the
//! parameters and are immutable once built; elements are small `Copy`
//! values that only make sense together with the context that produced them.

mod ext;
mod gaussian;
mod prime;

pub use ext::{ExtElem, ExtField, MAX_DEGREE, MAX_FIELD_SIZE};
pub use gaussian::{GaloisInt, GaussianRing};
pub use prime::{PrimeField, MAX_PRIME};

pub(crate) use crate::numth::order_in_group;
