//! Spin and spin^c structures on finite simplicial complexes.
//!
//! The crate computes simplicial cohomology over the integers and over
//! `Z/2`, the characteristic classes `w2` and `W3` of closed oriented
//! 4-complexes, the torsors of spin and spin^c structures with their Chern
//! class arithmetic, and the transport of spin^c structures along simplicial
//! maps using relative Chern lifts over neighborhoods of 1-skeleta.

pub mod cohomology;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod structures;
pub mod transport;

pub use complex::{Chain, Cochain, Simplex, SimplicialComplex, SimplicialMap, SubcomplexPair, Vertex};
pub use error::{Error, Result};
pub use linalg::{AbelianGroup, GroupElement, Matrix};
pub use scalar::{EuclideanRing, Gf2, Integer, Ring};

/// Matrices over arbitrary-precision integers.
pub type IntMatrix = Matrix<Integer>;
/// Matrices over the two-element field.
pub type F2Matrix = Matrix<Gf2>;
