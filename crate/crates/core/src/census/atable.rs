//! Counts of denominators with a single attractor, as a function of depth.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::phenomena::admissible_range;
use super::search::SearchState;
use crate::error::CensusError;

/// `A(N)`: admissible `k <= k_max` whose depth-`N` search found exactly one
/// attractor and no undecided orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ATablePoint {
    pub depth: u64,
    #[serde(rename = "A")]
    pub a: u64,
    pub denominators: u64,
    /// Denominators excluded from `A` because some orbit hit the step cap.
    pub undecided_denominators: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Single,
    Several,
    Undecided,
}

/// Per-`k` status at each depth, reusing one search state as depth grows.
fn statuses(k: u64, depths: &[u64], step_cap: u64) -> Result<Vec<Status>, CensusError> {
    let mut state = SearchState::new(k, step_cap)?;
    Ok(depths
        .iter()
        .map(|&d| {
            state.extend_to(d);
            if state.undecided_count() > 0 {
                Status::Undecided
            } else if state.attractor_count() == 1 {
                Status::Single
            } else {
                Status::Several
            }
        })
        .collect())
}

pub fn a_table(k_max: u64, depths: &[u64], step_cap: u64) -> Result<Vec<ATablePoint>, CensusError> {
    if k_max == 0 {
        return Err(CensusError::NonPositive("k_max"));
    }
    if depths.is_empty() || depths[0] == 0 {
        return Err(CensusError::NonPositive("depth"));
    }
    if depths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CensusError::DepthsNotIncreasing);
    }
    let ks: Vec<u64> = admissible_range(1, k_max).collect();
    let per_k: Vec<Vec<Status>> = ks
        .par_iter()
        .map(|&k| statuses(k, depths, step_cap))
        .collect::<Result<_, _>>()?;
    Ok(depths
        .iter()
        .enumerate()
        .map(|(i, &depth)| {
            let count = |want| per_k.iter().filter(|s| s[i] == want).count() as u64;
            ATablePoint {
                depth,
                a: count(Status::Single),
                denominators: ks.len() as u64,
                undecided_denominators: count(Status::Undecided),
            }
        })
        .collect())
}
