use serde::Serialize;

use super::search::{realize, SearchConfig, SearchError, SearchOutcome};
use crate::ramcore::{FamilySpec, RamError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NonexistenceError {
    #[error("degree {0} is not a valid degree of the family")]
    InvalidDegree(u32, #[source] RamError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every degree was exhausted without a witness.
    AllUnsat,
    /// At least one degree has a witness.
    Realized,
    /// No witness, but some degree ran out of budget.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonexistenceReport {
    pub family: String,
    pub per_degree: Vec<(u32, SearchOutcome)>,
    pub verdict: Verdict,
}

/// Runs the exhaustive search on the member of every listed degree.
pub fn check_nonexistence(
    f: &FamilySpec,
    degrees: &[u32],
    cfg: &SearchConfig,
) -> Result<NonexistenceReport, NonexistenceError> {
    let mut per_degree = Vec::with_capacity(degrees.len());
    for &n in degrees {
        let member = f.member(n).map_err(|e| NonexistenceError::InvalidDegree(n, e))?;
        per_degree.push((n, realize(&member, cfg)?));
    }
    let verdict = if per_degree.iter().any(|(_, o)| matches!(o, SearchOutcome::Witness { .. })) {
        Verdict::Realized
    } else if per_degree.iter().any(|(_, o)| matches!(o, SearchOutcome::Unknown { .. })) {
        Verdict::Unknown
    } else {
        Verdict::AllUnsat
    };
    Ok(NonexistenceReport { family: f.to_string(), per_degree, verdict })
}
