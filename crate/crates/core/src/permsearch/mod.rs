//! Permutations, constellations and the exhaustive realizability search.

mod constellation;
mod nonexistence;
mod perm;
mod search;

pub use constellation::{verify, Constellation, VerifyReport, Violation};
pub use nonexistence::{check_nonexistence, NonexistenceError, NonexistenceReport, Verdict};
pub use perm::{involution_product_profile, Perm, PermError};
pub use search::{
    canonical_representative, class_size, realize, SearchConfig, SearchError, SearchOutcome, UnsatCertificate,
    DEFAULT_BUDGET, DEFAULT_CENTRALIZER_THRESHOLD,
};
