//! Simplicial cohomology of complexes and pairs, with the operations needed
//! for characteristic classes: cup products, pullbacks, reduction mod 2, the
//! Bockstein, integral lifts and the Wu class.

mod group;
mod ops;
mod reduce;

pub use group::{CohomologyClass, CohomologyGroup, Space};
pub use ops::{
    bockstein, bockstein_hom, cup, evaluate, induced_hom, integral_lift, pairing_matrix, pullback, pullback_cochain,
    reduce_mod2, relative_to_absolute, restriction_hom, w3, wu_class_w2,
};
