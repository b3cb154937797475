//! Bundled triangulations.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        /// Names of the bundled complexes.
        pub const NAMES: &[&str] = &[$($name),*];

        /// `.scx` text of a bundled complex.
        pub fn source(name: &str) -> Option<&'static str> {
            match name {
                $($name => Some(include_str!(concat!("../corpus/", $name, ".scx"))),)*
                _ => None,
            }
        }
    };
}

corpus!("s1", "s1_6", "s2", "s3", "s4", "rp2", "t2", "klein", "cp2", "rp3", "s2xs2", "t4", "rp3xs1");

/// Closed oriented 4-dimensional members of the corpus.
pub const FOUR_MANIFOLDS: &[&str] = &["s4", "cp2", "s2xs2", "t4", "rp3xs1"];

pub fn load(name: &str) -> Result<SimplicialComplex> {
    let text = source(name).ok_or_else(|| Error::Mismatch(format!("no bundled complex named '{name}'")))?;
    SimplicialComplex::parse(text)
}
