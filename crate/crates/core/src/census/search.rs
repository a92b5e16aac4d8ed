//! Depth-`N` searches of `D_k`.
//!
//! Every surveyed numerator `j` is iterated under `T` until it reaches a value
//! already known to lie in the basin of a registered attractor, closes a new
//! cycle, or exceeds the step cap. The basin memo persists across `j` and
//! across calls to [`SearchState::extend_to`], so deepening a search only
//! pays for the new starting points.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::record::{is_admissible, AttractorRecord};
use crate::error::CensusError;

/// A numerator, kept in 128 bits until it outgrows them.
///
/// Values that fit in a `u128` are always `Small`, so equality and hashing
/// agree across the two representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Numer {
    Small(u128),
    Big(BigUint),
}

impl Numer {
    fn normalize(n: BigUint) -> Numer {
        match n.to_u128() {
            Some(s) => Numer::Small(s),
            None => Numer::Big(n),
        }
    }

    fn step(&self, k: u64) -> Numer {
        match self {
            Numer::Small(n) if n & 1 == 0 => Numer::Small(n >> 1),
            Numer::Small(n) => match n.checked_mul(3).and_then(|t| t.checked_add(u128::from(k))) {
                Some(t) => Numer::Small(t >> 1),
                None => Numer::normalize((BigUint::from(*n) * 3u32 + k) >> 1u32),
            },
            Numer::Big(n) => Numer::normalize(super::record::step_numerator(n, k)),
        }
    }

    fn to_biguint(&self) -> BigUint {
        match self {
            Numer::Small(n) => BigUint::from(*n),
            Numer::Big(n) => n.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Basin(u32),
    OnPath(u32),
}

/// Everything found by a search of `D_k` to some depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorReport {
    pub k: u64,
    pub depth: u64,
    pub step_cap: u64,
    /// Sorted by smallest numerator.
    pub attractors: Vec<AttractorRecord>,
    /// How many surveyed numerators fell into each attractor, aligned with `attractors`.
    pub basin_hits: Vec<u64>,
    pub undecided_numerators: Vec<u64>,
    /// Number of `j <= depth` coprime to `k`.
    pub surveyed: u64,
}

impl DenominatorReport {
    pub fn is_single_attractor(&self) -> bool {
        self.attractors.len() == 1 && self.undecided_numerators.is_empty()
    }
}

/// Incremental search state for one denominator.
pub struct SearchState {
    k: u64,
    step_cap: u64,
    depth: u64,
    memo: HashMap<Numer, Slot>,
    attractors: Vec<AttractorRecord>,
    hits: Vec<u64>,
    undecided: Vec<u64>,
    surveyed: u64,
}

pub fn check_denominator(k: u64) -> Result<(), CensusError> {
    if is_admissible(k) {
        Ok(())
    } else {
        Err(CensusError::BadResidue(k))
    }
}

impl SearchState {
    pub fn new(k: u64, step_cap: u64) -> Result<Self, CensusError> {
        check_denominator(k)?;
        if step_cap == 0 {
            return Err(CensusError::NonPositive("step_cap"));
        }
        Ok(SearchState {
            k,
            step_cap,
            depth: 0,
            memo: HashMap::new(),
            attractors: Vec::new(),
            hits: Vec::new(),
            undecided: Vec::new(),
            surveyed: 0,
        })
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    pub fn attractor_count(&self) -> usize {
        self.attractors.len()
    }

    pub fn undecided_count(&self) -> usize {
        self.undecided.len()
    }

    /// Surveys `j/k` for every new `j <= depth` coprime to `k`. Shallower
    /// depths are a no-op.
    pub fn extend_to(&mut self, depth: u64) {
        while self.depth < depth {
            self.depth += 1;
            let j = self.depth;
            if j.gcd(&self.k) == 1 {
                self.surveyed += 1;
                self.survey(j);
            }
        }
    }

    fn survey(&mut self, j: u64) {
        let k = self.k;
        let mut path: Vec<Numer> = Vec::new();
        let mut x = Numer::Small(u128::from(j));
        let id = loop {
            match self.memo.get(&x) {
                Some(&Slot::Basin(id)) => break id,
                Some(&Slot::OnPath(pos)) => break self.register(&path[pos as usize..]),
                None => {}
            }
            if path.len() as u64 >= self.step_cap {
                for p in &path {
                    self.memo.remove(p);
                }
                self.undecided.push(j);
                return;
            }
            self.memo.insert(x.clone(), Slot::OnPath(path.len() as u32));
            let next = x.step(k);
            path.push(x);
            x = next;
        };
        self.hits[id as usize] += 1;
        for p in path {
            self.memo.insert(p, Slot::Basin(id));
        }
    }

    fn register(&mut self, cycle: &[Numer]) -> u32 {
        let numerators = cycle.iter().map(Numer::to_biguint).collect();
        let record = AttractorRecord::from_cycle(self.k, numerators)
            .expect("first revisit along a T-orbit closes a cycle");
        self.attractors.push(record);
        self.hits.push(0);
        (self.attractors.len() - 1) as u32
    }

    pub fn report(&self) -> DenominatorReport {
        let mut order: Vec<usize> = (0..self.attractors.len()).collect();
        order.sort_by(|&a, &b| {
            self.attractors[a]
                .min_numerator()
                .cmp(self.attractors[b].min_numerator())
        });
        DenominatorReport {
            k: self.k,
            depth: self.depth,
            step_cap: self.step_cap,
            attractors: order.iter().map(|&i| self.attractors[i].clone()).collect(),
            basin_hits: order.iter().map(|&i| self.hits[i]).collect(),
            undecided_numerators: self.undecided.clone(),
            surveyed: self.surveyed,
        }
    }
}

/// Surveys `j/k` for `1 <= j <= depth`, `gcd(j, k) = 1`.
pub fn search_denominator(k: u64, depth: u64, step_cap: u64) -> Result<DenominatorReport, CensusError> {
    if depth == 0 {
        return Err(CensusError::NonPositive("depth"));
    }
    let mut state = SearchState::new(k, step_cap)?;
    state.extend_to(depth);
    Ok(state.report())
}

/// A search that succeeds only with exactly one attractor and no undecided orbit.
pub fn deep_verify(k: u64, depth: u64, step_cap: u64) -> Result<(bool, DenominatorReport), CensusError> {
    let report = search_denominator(k, depth, step_cap)?;
    Ok((report.is_single_attractor(), report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mins(report: &DenominatorReport) -> Vec<(u64, usize, usize)> {
        report
            .attractors
            .iter()
            .map(|a| (a.min_numerator().to_u64().unwrap(), a.lambda(), a.omega()))
            .collect()
    }

    #[test]
    fn rejects_bad_residues() {
        assert_eq!(search_denominator(9, 10, 10).unwrap_err(), CensusError::BadResidue(9));
        assert_eq!(search_denominator(4, 10, 10).unwrap_err(), CensusError::BadResidue(4));
        assert!(search_denominator(7, 0, 10).is_err());
        assert!(search_denominator(7, 10, 0).is_err());
    }

    #[test]
    fn integers_reach_one_two() {
        let r = search_denominator(1, 1000, 100_000).unwrap();
        assert_eq!(mins(&r), vec![(1, 2, 1)]);
        assert_eq!(r.surveyed, 1000);
        assert_eq!(r.basin_hits, vec![1000]);
    }

    #[test]
    fn seven_has_one_attractor() {
        let r = search_denominator(7, 500, 100_000).unwrap();
        assert_eq!(mins(&r), vec![(5, 4, 2)]);
        assert!(r.is_single_attractor());
    }

    #[test]
    fn undecided_orbits_are_kept() {
        let r = search_denominator(1, 30, 5).unwrap();
        assert!(!r.undecided_numerators.is_empty());
        assert!(r.undecided_numerators.contains(&27));
        assert!(!r.is_single_attractor());
        let decided: u64 = r.basin_hits.iter().sum();
        assert_eq!(decided + r.undecided_numerators.len() as u64, r.surveyed);
    }

    #[test]
    fn extending_matches_fresh_search() {
        let mut state = SearchState::new(13, 100_000).unwrap();
        state.extend_to(100);
        let shallow = state.report();
        state.extend_to(500);
        state.extend_to(300);
        assert_eq!(state.report(), search_denominator(13, 500, 100_000).unwrap());
        for a in &shallow.attractors {
            assert!(state.report().attractors.contains(a));
        }
    }

    #[test]
    fn big_fallback_matches_small_path() {
        let near = u128::MAX - 10;
        let n = if near % 2 == 0 { near + 1 } else { near };
        let stepped = Numer::Small(n).step(7);
        let expected = (BigUint::from(n) * 3u32 + 7u32) >> 1u32;
        assert_eq!(stepped, Numer::Big(expected.clone()));
        // and back down again once it fits
        let down = Numer::Big(BigUint::from(u128::MAX) * 2u32).step(7);
        assert_eq!(down, Numer::Small(u128::MAX));
    }
}
