//! Slices of `N^(k)`, their pullbacks and sections, and level sets of
//! standardizable morphisms.

mod level_set;
mod slice;

pub use level_set::{level_set, LevelSetResult};
pub use slice::{borel_preimage, ideal_membership, make_slice, slice_pullback, SliceSpec};
