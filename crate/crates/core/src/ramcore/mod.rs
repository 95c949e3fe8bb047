//! Ramification data: partitions, genus, almost-regular families and their enumeration.

mod enumerate;
mod family;
mod grammar;
mod partition;

pub use enumerate::enumerate_families;
pub use family::{is_euclidean, DegreeProgression, FamilySpec, EUCLIDEAN_BASES};
pub use grammar::{parse_family, parse_ram_data, ParseError};
pub use partition::{GenusRejection, Partition, RamData};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RamError {
    #[error("partition is empty")]
    EmptyPartition,
    #[error("partition entries must be positive")]
    ZeroEntry,
    #[error("need at least 2 partitions, got {0}")]
    TooFewPartitions(usize),
    #[error("partition {slot} sums to {found}, expected {expected}")]
    DegreeMismatch { slot: usize, expected: u32, found: u32 },
    #[error("partition {slot} is trivial (all entries 1)")]
    TrivialPartition { slot: usize },
    #[error("base has {base} slots but {irregular} irregular parts were given")]
    SlotCountMismatch { base: usize, irregular: usize },
    #[error("base entry {k} in slot {slot} must be at least 2")]
    BaseEntryTooSmall { slot: usize, k: u32 },
    #[error("irregular part of slot {slot} contains its regular value {k}")]
    RegularEntryInIrregular { slot: usize, k: u32 },
    #[error("base {0:?} is not Euclidean")]
    UnsupportedBase(Vec<u32>),
    #[error(transparent)]
    GenusRejected(#[from] GenusRejection),
    #[error("degree {degree} is invalid at slot {slot}: {reason}")]
    InvalidDegree { degree: u32, slot: usize, reason: &'static str },
    #[error("bases differ: {0:?} vs {1:?}")]
    BaseMismatch(Vec<u32>, Vec<u32>),
}
