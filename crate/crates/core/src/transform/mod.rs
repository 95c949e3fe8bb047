//! Transformations of ramification data, families and witnesses.

mod compose;
mod edges;
mod split;

pub use compose::{compose, BaseMap, ComposeError, Fiber};
pub use edges::{add_edges, add_edges_witness, EdgeError};
pub use split::{exceptional_type, split_2222, SplitError, SplitOutcome, EXCEPTIONAL_TYPES};

use crate::ramcore::{FamilySpec, RamError};

/// Slotwise union of the irregular parts.
pub fn merge_families(f1: &FamilySpec, f2: &FamilySpec) -> Result<FamilySpec, RamError> {
    f1.merge(f2)
}
