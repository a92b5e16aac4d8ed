//! Parity vectors, the closed-form periodic point they determine, and the
//! Möbius counting identities for irreducible cycles.
//!
//! For a 0-1 vector `v` of length `n` with `w` ones put
//! `rho(v) = sum_j v_j 3^(v_{j+1} + ... + v_{n-1}) 2^j` and `J = 2^n - 3^w`.
//! Then `x(v) = rho / J` is the unique rational with odd denominator that is
//! periodic of period `n` under `T` and whose parity sequence starts with `v`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::VectorError;
use crate::rational::{parity_sequence, Rational2};

/// Longest vector the bitmask enumerators handle.
pub const MAX_MASK_LEN: usize = 63;
/// Longest vector length for exhaustive `2^n` censuses.
pub const MAX_CENSUS_LEN: usize = 28;
/// Longest vector whose `rho` and `J` fit comfortably in 128-bit arithmetic.
const FAST_LEN: usize = 48;

/// A nonempty 0-1 vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ParityVector {
    bits: Vec<u8>,
}

/// `lambda`, `omega`, `rho` and `J = 2^lambda - 3^omega` of a parity vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleInvariants {
    pub lambda: usize,
    pub omega: usize,
    pub rho: BigUint,
    pub big_j: BigInt,
}

impl ParityVector {
    pub fn new(bits: Vec<u8>) -> Result<Self, VectorError> {
        if bits.is_empty() {
            return Err(VectorError::Empty);
        }
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(VectorError::NonBinary(char::from(b'0' + b.min(9))));
        }
        Ok(ParityVector { bits })
    }

    /// Reads the low `len` bits of `mask`, most significant first, so that
    /// counting `mask` upward walks vectors in lexicographic order.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!((1..=MAX_MASK_LEN).contains(&len));
        let bits = (0..len).map(|i| ((mask >> (len - 1 - i)) & 1) as u8).collect();
        ParityVector { bits }
    }

    /// Inverse of [`ParityVector::from_mask`]; `None` for vectors longer than 63.
    pub fn to_mask(&self) -> Option<u64> {
        if self.len() > MAX_MASK_LEN {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b)))
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lambda(&self) -> usize {
        self.bits.len()
    }

    pub fn omega(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Computes `lambda`, `omega`, `rho` and `J` exactly.
    pub fn invariants(&self) -> CycleInvariants {
        // R_j = v_j 3^{s_j} + 2 R_{j+1}, with s_j the number of ones after j
        let mut rho = BigUint::zero();
        let mut pow3 = BigUint::one();
        for &b in self.bits.iter().rev() {
            rho <<= 1u32;
            if b == 1 {
                rho += &pow3;
                pow3 *= 3u32;
            }
        }
        let lambda = self.len();
        let omega = self.omega();
        let big_j = (BigInt::one() << lambda) - BigInt::from(pow3);
        CycleInvariants {
            lambda,
            omega,
            rho,
            big_j,
        }
    }

    /// The periodic point `rho / (2^lambda - 3^omega)` in lowest terms.
    pub fn periodic_point(&self) -> Rational2 {
        let inv = self.invariants();
        Rational2::new(BigInt::from(inv.rho), inv.big_j).expect("2^n - 3^w is odd and nonzero")
    }

    /// Denominator of [`ParityVector::periodic_point`]: `|J| / gcd(rho, |J|)`.
    pub fn denominator(&self) -> BigUint {
        let inv = self.invariants();
        let abs_j = inv.big_j.magnitude().clone();
        let g = inv.rho.gcd(&abs_j);
        abs_j / g
    }

    /// Checks `T^lambda(x) = x` and that the parity sequence of `x` starts with
    /// this vector, iterating the map directly.
    pub fn verify_closed_form(&self) -> bool {
        let x = self.periodic_point();
        if parity_sequence(&x, self.len()) != self.bits {
            return false;
        }
        let mut y = x.clone();
        for _ in 0..self.len() {
            y = y.t_map();
        }
        y == x
    }

    pub fn rotate(&self, shift: usize) -> ParityVector {
        let mut bits = self.bits.clone();
        bits.rotate_left(shift % self.len());
        ParityVector { bits }
    }

    /// All `lambda` cyclic rotations, by increasing shift.
    pub fn rotations(&self) -> Vec<ParityVector> {
        (0..self.len()).map(|s| self.rotate(s)).collect()
    }

    /// Smallest `p` dividing the length with `v_i = v_{i+p}` throughout.
    pub fn minimal_period(&self) -> usize {
        let n = self.len();
        (1..=n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| (p..n).all(|i| self.bits[i] == self.bits[i - p]))
            .unwrap_or(n)
    }

    /// True when the vector is not a repetition of a shorter block.
    pub fn is_primitive(&self) -> bool {
        self.minimal_period() == self.len()
    }
}

impl fmt::Display for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ParityVector {
    type Err = VectorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(VectorError::NonBinary(other)),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        ParityVector::new(bits)
    }
}

/// Parity vector read off a cycle.
pub fn parity_vector_of(cycle: &[Rational2]) -> Result<ParityVector, VectorError> {
    ParityVector::new(cycle.iter().map(Rational2::parity).collect())
}

fn check_len(n: usize, max: usize) -> Result<(), VectorError> {
    if n == 0 || n > max {
        Err(VectorError::Length(n, max))
    } else {
        Ok(())
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Prime factors of `n`, each once.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Precomputed primitivity test for `n`-bit masks: a vector is imprimitive iff
/// it is invariant under rotation by `n/p` for some prime `p | n`.
#[derive(Clone)]
struct PrimitiveTest {
    len: usize,
    shifts: Vec<usize>,
}

impl PrimitiveTest {
    fn new(len: usize) -> Self {
        let shifts = prime_factors(len as u64)
            .into_iter()
            .map(|p| len / p as usize)
            .collect();
        PrimitiveTest { len, shifts }
    }

    fn is_primitive(&self, mask: u64) -> bool {
        let full = full_mask(self.len);
        self.shifts.iter().all(|&d| {
            let rotated = ((mask << d) | (mask >> (self.len - d))) & full;
            rotated != mask
        })
    }
}

/// `rho` of the vector encoded by `mask` (most significant bit first).
fn mask_rho_u128(mask: u64, len: usize) -> u128 {
    let mut rho: u128 = 0;
    let mut pow3: u128 = 1;
    for i in 0..len {
        // position len-1-i, read right to left
        rho <<= 1;
        if (mask >> i) & 1 == 1 {
            rho += pow3;
            pow3 *= 3;
        }
    }
    rho
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Denominator of `x(v)` for a mask of length at most 48.
fn mask_denominator_fast(mask: u64, len: usize) -> u128 {
    debug_assert!(len <= FAST_LEN);
    let omega = mask.count_ones();
    let abs_j = (1i128 << len).abs_diff(3i128.pow(omega));
    abs_j / gcd_u128(mask_rho_u128(mask, len), abs_j)
}

/// Lexicographic stream of length-`n` vectors, optionally only primitive ones.
pub fn enumerate_vectors(
    n: usize,
    primitive_only: bool,
) -> Result<impl Iterator<Item = ParityVector>, VectorError> {
    check_len(n, MAX_MASK_LEN)?;
    let test = PrimitiveTest::new(n);
    let end = 1u64 << n;
    Ok((0..end)
        .filter(move |&m| !primitive_only || test.is_primitive(m))
        .map(move |m| ParityVector::from_mask(m, n)))
}

/// Möbius function by trial division.
pub fn mobius(d: u64) -> i8 {
    assert!(d >= 1, "mobius is defined for d >= 1");
    let mut n = d;
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `sum_{d | n} mu(d) 2^{n/d}`, the number of aperiodic binary strings of length `n`.
pub fn mobius_sum(n: u64) -> BigUint {
    assert!(n >= 1);
    let mut total = BigInt::zero();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        match mobius(d) {
            1 => total += BigInt::one() << (n / d),
            -1 => total -= BigInt::one() << (n / d),
            _ => {}
        }
    }
    total.to_biguint().expect("aperiodic count is nonnegative")
}

/// Number of irreducible cycles of length `n`: `mobius_sum(n) / n`.
pub fn irreducible_count(n: u64) -> BigUint {
    let total = mobius_sum(n);
    let (q, r) = total.div_rem(&BigUint::from(n));
    debug_assert!(r.is_zero());
    q
}

/// For each denominator `k`, the number of primitive length-`n` vectors whose
/// periodic point has denominator `k`.
pub fn nu_census(n: usize) -> Result<BTreeMap<u64, u64>, VectorError> {
    census_masks(n, true)
}

/// Same as [`nu_census`] but counting every vector, imprimitive ones included.
pub fn nu_census_all(n: usize) -> Result<BTreeMap<u64, u64>, VectorError> {
    census_masks(n, false)
}

fn census_masks(n: usize, primitive_only: bool) -> Result<BTreeMap<u64, u64>, VectorError> {
    check_len(n, MAX_CENSUS_LEN)?;
    let test = PrimitiveTest::new(n);
    let end = 1u64 << n;
    let chunk = (end / 256).max(1);
    let starts: Vec<u64> = (0..end).step_by(chunk as usize).collect();
    let merged = starts
        .into_par_iter()
        .map(|start| {
            let mut local = BTreeMap::new();
            for m in start..(start + chunk).min(end) {
                if primitive_only && !test.is_primitive(m) {
                    continue;
                }
                let k = mask_denominator_fast(m, n) as u64;
                *local.entry(k).or_insert(0u64) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, merge_counts);
    Ok(merged)
}

fn merge_counts(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (k, c) in b {
        *a.entry(k).or_insert(0) += c;
    }
    a
}

/// Checks that the census total equals the count of aperiodic strings.
pub fn verify_census_totals(n: usize) -> Result<bool, VectorError> {
    let total: u64 = nu_census(n)?.values().sum();
    Ok(BigUint::from(total) == mobius_sum(n as u64))
}

/// Primitive vectors with the given length, number of ones and denominator,
/// in lexicographic order.
///
/// `k` must divide `|2^lambda - 3^omega|`.
pub fn vectors_with_invariants(
    lambda: usize,
    omega: usize,
    k: u64,
) -> Result<Vec<ParityVector>, VectorError> {
    check_len(lambda, MAX_MASK_LEN)?;
    if omega > lambda {
        return Err(VectorError::OmegaTooLarge { lambda, omega });
    }
    let big_j = (BigInt::one() << lambda) - BigInt::from(3u32).pow(omega as u32);
    let abs_j = big_j.magnitude().clone();
    if k == 0 || !(&abs_j % k).is_zero() {
        return Err(VectorError::NotADivisor {
            k,
            lambda,
            omega,
            j: big_j.to_string(),
        });
    }
    let test = PrimitiveTest::new(lambda);
    let target_gcd = &abs_j / k;
    let mut out = Vec::new();
    for mask in masks_with_popcount(lambda, omega) {
        if !test.is_primitive(mask) {
            continue;
        }
        let hit = if lambda <= FAST_LEN {
            let target = target_gcd.to_u128().expect("fits for lambda <= 48");
            let abs_j = abs_j.to_u128().expect("fits for lambda <= 48");
            gcd_u128(mask_rho_u128(mask, lambda), abs_j) == target
        } else {
            let v = ParityVector::from_mask(mask, lambda);
            v.invariants().rho.gcd(&abs_j) == target_gcd
        };
        if hit {
            out.push(ParityVector::from_mask(mask, lambda));
        }
    }
    Ok(out)
}

/// Masks of `len` bits with exactly `ones` set, in increasing order.
fn masks_with_popcount(len: usize, ones: usize) -> impl Iterator<Item = u64> {
    let limit = full_mask(len);
    let first = if ones == 0 { Some(0) } else { Some(full_mask(ones)) };
    std::iter::successors(first, move |&m| {
        if m == 0 {
            return None;
        }
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m.checked_add(c)?;
        let next = (((r ^ m) >> 2) / c) | r;
        (next <= limit).then_some(next)
    })
    .filter(move |&m| m <= limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ParityVector {
        s.parse().unwrap()
    }

    #[test]
    fn invariants_examples() {
        let inv = v("1100").invariants();
        assert_eq!((inv.lambda, inv.omega), (4, 2));
        assert_eq!(inv.rho, BigUint::from(5u32));
        assert_eq!(inv.big_j, BigInt::from(7));

        let inv = v("10").invariants();
        assert_eq!((inv.lambda, inv.omega), (2, 1));
        assert_eq!(inv.rho, BigUint::from(1u32));
        assert_eq!(inv.big_j, BigInt::from(1));

        let inv = v("000").invariants();
        assert_eq!((inv.lambda, inv.omega), (3, 0));
        assert!(inv.rho.is_zero());
        // 2^3 - 3^0
        assert_eq!(inv.big_j, BigInt::from(7));
    }

    #[test]
    fn periodic_point_examples() {
        assert_eq!(v("1100").periodic_point().to_string(), "5/7");
        for n in 1..20 {
            let ones = "1".repeat(n);
            assert_eq!(v(&ones).periodic_point().to_string(), "-1");
        }
        assert_eq!(v("0").periodic_point(), Rational2::zero());
        assert_eq!(v("100").periodic_point().to_string(), "1/5");
    }

    #[test]
    fn denominator_examples() {
        assert_eq!(v("1100").denominator(), BigUint::from(7u32));
        assert_eq!(v("1010").denominator(), BigUint::from(1u32));
        assert_eq!(v("1").denominator(), BigUint::from(1u32));
        assert_eq!(v("0000").denominator(), BigUint::from(1u32));
    }

    #[test]
    fn verify_closed_form_examples() {
        assert!(v("1100").verify_closed_form());
        assert!(v("100").verify_closed_form());
    }

    #[test]
    fn rotations_and_primitivity() {
        assert_eq!(v("10").rotations(), vec![v("10"), v("01")]);
        assert_eq!(v("11").rotations(), vec![v("11"), v("11")]);
        let r = v("100").rotations();
        assert_eq!(r, vec![v("100"), v("001"), v("010")]);
        assert!(!v("1010").is_primitive());
        assert_eq!(v("1010").minimal_period(), 2);
        assert!(v("1100").is_primitive());
        assert!(v("0").is_primitive());
        assert!(!v("11").is_primitive());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!("".parse::<ParityVector>(), Err(VectorError::Empty));
        assert_eq!("10a".parse::<ParityVector>(), Err(VectorError::NonBinary('a')));
        assert!(ParityVector::new(vec![0, 2]).is_err());
    }

    #[test]
    fn enumeration_order_and_counts() {
        let two: Vec<String> = enumerate_vectors(2, true).unwrap().map(|v| v.to_string()).collect();
        assert_eq!(two, vec!["01", "10"]);
        let one: Vec<String> = enumerate_vectors(1, false).unwrap().map(|v| v.to_string()).collect();
        assert_eq!(one, vec!["0", "1"]);
        assert_eq!(enumerate_vectors(6, true).unwrap().count(), 54);
        assert_eq!(enumerate_vectors(6, false).unwrap().count(), 64);
        assert!(enumerate_vectors(0, false).is_err());
    }

    #[test]
    fn mask_primitivity_matches_vector_primitivity() {
        for n in 1..=12 {
            let test = PrimitiveTest::new(n);
            for m in 0..(1u64 << n) {
                let vec = ParityVector::from_mask(m, n);
                assert_eq!(test.is_primitive(m), vec.is_primitive(), "{vec}");
                assert_eq!(vec.to_mask(), Some(m));
            }
        }
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &mu) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), mu, "mu({})", i + 1);
        }
    }

    #[test]
    fn irreducible_count_examples() {
        assert_eq!(irreducible_count(1), BigUint::from(2u32));
        assert_eq!(irreducible_count(2), BigUint::from(1u32));
        assert_eq!(irreducible_count(6), BigUint::from(9u32));
    }

    #[test]
    fn nu_census_small() {
        let c2 = nu_census(2).unwrap();
        assert_eq!(c2, BTreeMap::from([(1, 2)]));
        assert!(nu_census(0).is_err());
        assert!(nu_census(MAX_CENSUS_LEN + 1).is_err());
    }

    #[test]
    fn nu_census_four_by_brute_force() {
        // group every primitive vector of length 4 by its BigInt denominator
        let mut expected = BTreeMap::new();
        for vec in enumerate_vectors(4, true).unwrap() {
            let k = vec.denominator().to_u64().unwrap();
            *expected.entry(k).or_insert(0u64) += 1;
        }
        let census = nu_census(4).unwrap();
        assert_eq!(census, expected);
        assert_eq!(census[&7], 4);
        // 1000 and its rotations: rho in {1, 2, 4, 8}, J = 13
        assert_eq!(census[&13], 4);
        assert_eq!(census.values().sum::<u64>(), 12);
    }

    #[test]
    fn nu_census_all_counts_every_vector() {
        assert_eq!(nu_census_all(6).unwrap().values().sum::<u64>(), 64);
    }

    #[test]
    fn census_totals_small() {
        assert!(verify_census_totals(1).unwrap());
        assert!(verify_census_totals(8).unwrap());
        assert_eq!(mobius_sum(8), BigUint::from(240u32));
        assert!(verify_census_totals(12).unwrap());
        assert_eq!(mobius_sum(12), BigUint::from(4020u32));
    }

    #[test]
    fn popcount_masks_are_exhaustive_and_ordered() {
        for len in 1..=10 {
            for ones in 0..=len {
                let got: Vec<u64> = masks_with_popcount(len, ones).collect();
                let want: Vec<u64> = (0..(1u64 << len))
                    .filter(|m| m.count_ones() as usize == ones)
                    .collect();
                assert_eq!(got, want, "len {len} ones {ones}");
            }
        }
    }

    #[test]
    fn vectors_with_invariants_examples() {
        let got = vectors_with_invariants(4, 2, 7).unwrap();
        let mut want = v("1100").rotations();
        want.sort();
        assert_eq!(got, want);

        assert_eq!(vectors_with_invariants(8, 5, 13).unwrap().len(), 56);

        let got = vectors_with_invariants(3, 1, 5).unwrap();
        assert_eq!(got, vec![v("001"), v("010"), v("100")]);

        assert!(matches!(
            vectors_with_invariants(4, 2, 5),
            Err(VectorError::NotADivisor { .. })
        ));
        assert!(vectors_with_invariants(3, 4, 1).is_err());
    }

    #[test]
    fn fast_denominator_agrees_with_bigint() {
        for n in 1..=10 {
            for m in 0..(1u64 << n) {
                let vec = ParityVector::from_mask(m, n);
                assert_eq!(
                    BigUint::from(mask_denominator_fast(m, n)),
                    vec.denominator(),
                    "{vec}"
                );
            }
        }
    }
}
