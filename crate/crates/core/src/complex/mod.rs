//! Simplicial complexes, pairs, maps, and (co)chains.

mod chain;
#[allow(clippy::module_inception)]
mod complex;
mod map;
mod simplex;

pub use chain::{Chain, Cochain};
pub use complex::{CollapseCertificate, SimplicialComplex};
pub use map::{SimplicialMap, SubcomplexPair};
pub use simplex::{Simplex, Vertex};
