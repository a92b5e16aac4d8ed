//! Scaling, repetition and covariance among the attractors of one `D_k`.
//!
//! * Scaling: `c1` shorter than `c2` with `lambda1/omega1 = lambda2/omega2`.
//!   Pairs whose ratios `lambda2/lambda1` and `omega2/omega1` are also integers
//!   go to `scaling_pairs`; equal-ratio pairs without integral ratios (for
//!   example `(24, 12)` against `(36, 18)`) are kept apart in
//!   `nonintegral_ratio_pairs`.
//! * Repetition: two or more attractors sharing `(lambda, omega)`.
//! * Covariance exception: `(lambda1 - lambda2)(omega1 - omega2) <= 0` with the
//!   two invariant pairs distinct.
//!
//! All comparisons are exact integer arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::search::{check_denominator, search_denominator, DenominatorReport};
use crate::error::CensusError;

/// The parts of an attractor the phenomena care about.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttractorKey {
    pub min_numerator: BigUint,
    pub lambda: usize,
    pub omega: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhenomenaReport {
    pub k: u64,
    /// `(shorter, longer)` pairs.
    pub scaling_pairs: Vec<(AttractorKey, AttractorKey)>,
    /// `(shorter, longer)` pairs with equal `lambda/omega` whose length ratio
    /// is not an integer.
    pub nonintegral_ratio_pairs: Vec<(AttractorKey, AttractorKey)>,
    pub repetition_groups: Vec<Vec<AttractorKey>>,
    pub covariance_exceptions: Vec<(AttractorKey, AttractorKey)>,
}

impl PhenomenaReport {
    /// Some two attractors of different length share `lambda/omega`.
    pub fn has_scaling(&self) -> bool {
        !self.scaling_pairs.is_empty() || !self.nonintegral_ratio_pairs.is_empty()
    }

    /// Some equal-ratio pair also has integral length and odd-count ratios.
    pub fn has_integral_scaling(&self) -> bool {
        !self.scaling_pairs.is_empty()
    }

    pub fn has_repetition(&self) -> bool {
        !self.repetition_groups.is_empty()
    }
}

fn same_ratio(a: &AttractorKey, b: &AttractorKey) -> bool {
    a.lambda * b.omega == b.lambda * a.omega
}

/// Whether `(a, b)` is a scaling pair with `a` the shorter cycle.
pub fn is_scaling_pair(a: &AttractorKey, b: &AttractorKey) -> bool {
    a.lambda < b.lambda
        && a.omega > 0
        && same_ratio(a, b)
        && b.lambda.is_multiple_of(a.lambda)
        && b.omega.is_multiple_of(a.omega)
}

pub fn is_covariance_exception(a: &AttractorKey, b: &AttractorKey) -> bool {
    let dl = a.lambda as i64 - b.lambda as i64;
    let dw = a.omega as i64 - b.omega as i64;
    (dl, dw) != (0, 0) && dl * dw <= 0
}

pub fn detect_phenomena(report: &DenominatorReport) -> Result<PhenomenaReport, CensusError> {
    if report.attractors.is_empty() {
        return Err(CensusError::NoAttractors);
    }
    let mut keys: Vec<AttractorKey> = report
        .attractors
        .iter()
        .map(|a| AttractorKey {
            min_numerator: a.min_numerator().clone(),
            lambda: a.lambda(),
            omega: a.omega(),
        })
        .collect();
    keys.sort_by(|a, b| a.min_numerator.cmp(&b.min_numerator));

    let mut out = PhenomenaReport {
        k: report.k,
        ..Default::default()
    };
    for (i, a) in keys.iter().enumerate() {
        for b in &keys[i + 1..] {
            let (short, long) = if a.lambda <= b.lambda { (a, b) } else { (b, a) };
            if short.lambda < long.lambda && short.omega > 0 && same_ratio(short, long) {
                let pair = (short.clone(), long.clone());
                if is_scaling_pair(short, long) {
                    out.scaling_pairs.push(pair);
                } else {
                    out.nonintegral_ratio_pairs.push(pair);
                }
            }
            if is_covariance_exception(a, b) {
                out.covariance_exceptions.push((a.clone(), b.clone()));
            }
        }
    }
    let by_numerators = |x: &(AttractorKey, AttractorKey), y: &(AttractorKey, AttractorKey)| {
        (&x.0.min_numerator, &x.1.min_numerator).cmp(&(&y.0.min_numerator, &y.1.min_numerator))
    };
    out.scaling_pairs.sort_by(by_numerators);
    out.nonintegral_ratio_pairs.sort_by(by_numerators);

    let mut groups: BTreeMap<(usize, usize), Vec<AttractorKey>> = BTreeMap::new();
    for key in &keys {
        groups.entry((key.lambda, key.omega)).or_default().push(key.clone());
    }
    out.repetition_groups = groups.into_values().filter(|g| g.len() >= 2).collect();
    out.repetition_groups
        .sort_by(|x, y| x[0].min_numerator.cmp(&y[0].min_numerator));
    Ok(out)
}

/// Tallies over a sweep of denominators, in two counting units: denominators
/// showing a phenomenon, and raw pair or group counts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhenomenaCensus {
    pub denominators: u64,
    /// Denominators with an equal-ratio pair of different lengths.
    pub scaling_denominators: u64,
    pub repetition_denominators: u64,
    /// Denominators with both scaling and repetition.
    pub both_denominators: u64,
    /// As `scaling_denominators`, counting only pairs with integral ratios.
    pub integral_scaling_denominators: u64,
    pub integral_both_denominators: u64,
    /// Equal-ratio pairs of all kinds.
    pub ratio_pairs: u64,
    /// Equal-ratio pairs with integral ratios.
    pub scaling_pairs: u64,
    pub repetition_groups: u64,
    /// Attractors belonging to some repetition group.
    pub repeated_attractors: u64,
    pub covariance_exception_denominators: u64,
    pub undecided_denominators: u64,
}

/// Admissible denominators `k_min <= k <= k_max` in increasing order.
pub fn admissible_range(k_min: u64, k_max: u64) -> impl Iterator<Item = u64> {
    (k_min.max(1)..=k_max).filter(|&k| check_denominator(k).is_ok())
}

/// Searches every admissible `k` in range, in parallel; output sorted by `k`.
pub fn sweep(k_min: u64, k_max: u64, depth: u64, step_cap: u64) -> Result<Vec<DenominatorReport>, CensusError> {
    let ks: Vec<u64> = admissible_range(k_min, k_max).collect();
    ks.into_par_iter()
        .map(|k| search_denominator(k, depth, step_cap))
        .collect()
}

/// Phenomena over every admissible `k_min <= k <= k_max`.
pub fn phenomena_census(
    k_min: u64,
    k_max: u64,
    depth: u64,
    step_cap: u64,
) -> Result<(PhenomenaCensus, Vec<PhenomenaReport>), CensusError> {
    let reports = sweep(k_min, k_max, depth, step_cap)?;
    let mut census = PhenomenaCensus::default();
    let mut details = Vec::with_capacity(reports.len());
    for report in &reports {
        census.denominators += 1;
        if !report.undecided_numerators.is_empty() {
            census.undecided_denominators += 1;
        }
        let ph = detect_phenomena(report)?;
        census.scaling_pairs += ph.scaling_pairs.len() as u64;
        census.ratio_pairs += (ph.scaling_pairs.len() + ph.nonintegral_ratio_pairs.len()) as u64;
        census.repetition_groups += ph.repetition_groups.len() as u64;
        census.repeated_attractors += ph.repetition_groups.iter().map(|g| g.len() as u64).sum::<u64>();
        census.scaling_denominators += u64::from(ph.has_scaling());
        census.repetition_denominators += u64::from(ph.has_repetition());
        census.both_denominators += u64::from(ph.has_scaling() && ph.has_repetition());
        census.integral_scaling_denominators += u64::from(ph.has_integral_scaling());
        census.integral_both_denominators += u64::from(ph.has_integral_scaling() && ph.has_repetition());
        census.covariance_exception_denominators += u64::from(!ph.covariance_exceptions.is_empty());
        details.push(ph);
    }
    Ok((census, details))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(m: u64, lambda: usize, omega: usize) -> AttractorKey {
        AttractorKey {
            min_numerator: BigUint::from(m),
            lambda,
            omega,
        }
    }

    #[test]
    fn pair_predicates() {
        assert!(is_scaling_pair(&key(211, 8, 5), &key(131, 24, 15)));
        assert!(!is_scaling_pair(&key(131, 24, 15), &key(211, 8, 5)));
        assert!(!is_scaling_pair(&key(1, 8, 5), &key(2, 8, 5)));
        assert!(!is_scaling_pair(&key(1, 6, 4), &key(2, 9, 6)));
        assert!(is_covariance_exception(&key(11, 54, 24), &key(293, 45, 24)));
        assert!(is_covariance_exception(&key(43, 84, 37), &key(85, 84, 46)));
        assert!(is_covariance_exception(&key(1, 10, 4), &key(2, 12, 3)));
        assert!(!is_covariance_exception(&key(1, 8, 5), &key(2, 8, 5)));
        assert!(!is_covariance_exception(&key(1, 8, 5), &key(2, 24, 15)));
    }

    #[test]
    fn empty_report_rejected() {
        let report = DenominatorReport {
            k: 7,
            depth: 1,
            step_cap: 1,
            attractors: vec![],
            basin_hits: vec![],
            undecided_numerators: vec![1],
            surveyed: 1,
        };
        assert_eq!(detect_phenomena(&report), Err(CensusError::NoAttractors));
    }

    #[test]
    fn thirteen_scales_and_repeats() {
        let report = search_denominator(13, 500, 100_000).unwrap();
        let ph = detect_phenomena(&report).unwrap();
        assert_eq!(ph.scaling_pairs.len(), 7);
        for (short, long) in &ph.scaling_pairs {
            assert_eq!((short.lambda, short.omega), (8, 5));
            assert_eq!(long, &key(131, 24, 15));
        }
        assert_eq!(ph.repetition_groups.len(), 1);
        assert_eq!(ph.repetition_groups[0].len(), 7);
        assert!(ph.nonintegral_ratio_pairs.is_empty());
    }

    #[test]
    fn seven_has_nothing() {
        let (census, _) = phenomena_census(7, 7, 500, 100_000).unwrap();
        assert_eq!(census.denominators, 1);
        assert_eq!(
            (census.scaling_denominators, census.repetition_denominators, census.both_denominators),
            (0, 0, 0)
        );
        // k = 5 repeats (5, 3) at 19 and 23
        let (census, _) = phenomena_census(1, 7, 500, 100_000).unwrap();
        assert_eq!(census.denominators, 3);
        assert_eq!(census.repetition_denominators, 1);
        assert_eq!(census.scaling_denominators, 0);
    }

    #[test]
    fn thirteen_census_counts() {
        let (census, _) = phenomena_census(13, 13, 500, 100_000).unwrap();
        assert_eq!(
            (census.scaling_denominators, census.repetition_denominators, census.both_denominators),
            (1, 1, 1)
        );
        assert_eq!(census.scaling_pairs, 7);
        assert_eq!(census.repetition_groups, 1);
    }
}
