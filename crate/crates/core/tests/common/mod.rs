#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use qcycles::parity::enumerate_vectors;
use qcycles::{orbit, Rational2};

/// Largest |numerator| among the closed-form points of primitive length-`n`
/// vectors, per denominator. Used only to size the brute-force search.
pub fn numerator_bounds(n: usize) -> BTreeMap<u64, u64> {
    let mut bounds = BTreeMap::new();
    for v in enumerate_vectors(n, true).unwrap() {
        let x = v.periodic_point();
        let k = x.denom().to_u64().unwrap();
        let m = x.numer().abs().to_u64().unwrap();
        let e = bounds.entry(k).or_insert(0);
        *e = (*e).max(m);
    }
    bounds
}

/// Distinct cycles of minimal period `n` through `j/k`, `|j| <= bound`,
/// found by iterating `T` alone.
pub fn brute_force_cycles(k: u64, n: usize, bound: u64) -> BTreeSet<Vec<Rational2>> {
    let mut found = BTreeSet::new();
    let bound = bound as i64;
    for j in -bound..=bound {
        if j.gcd(&(k as i64)) != 1 {
            continue;
        }
        let x = Rational2::new(BigInt::from(j), BigInt::from(k)).unwrap();
        let out = orbit(&x, n as u64);
        if out.decided && out.tail.is_empty() && out.cycle.len() == n {
            found.insert(out.cycle);
        }
    }
    found
}
