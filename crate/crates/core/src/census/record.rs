//! Attracting cycles of `D_k` in canonical form, and their JSON-lines registry.

use std::io::{BufRead, Write};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::RecordError;
use crate::orbit::rotate_to_min;
use crate::parity::ParityVector;
use crate::rational::Rational2;

/// `T` on numerators over a denominator `k` coprime to 6.
pub fn step_numerator(n: &BigUint, k: u64) -> BigUint {
    if n.is_even() {
        n >> 1u32
    } else {
        (n * 3u32 + k) >> 1u32
    }
}

pub fn is_admissible(k: u64) -> bool {
    matches!(k % 6, 1 | 5)
}

/// One attracting cycle of `D_k`, listed by numerators starting at the smallest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AttractorRecord {
    k: u64,
    cycle_numerators: Vec<BigUint>,
    omega: usize,
}

impl AttractorRecord {
    /// Validates that the numerators form a `T`-cycle on `D_k` and rotates it
    /// to canonical form.
    pub fn from_cycle(k: u64, mut numerators: Vec<BigUint>) -> Result<Self, RecordError> {
        if !is_admissible(k) {
            return Err(RecordError::BadResidue(k));
        }
        if numerators.is_empty() {
            return Err(RecordError::Empty);
        }
        let kk = BigUint::from(k);
        for n in &numerators {
            if n.is_zero() || !n.gcd(&kk).is_one() {
                return Err(RecordError::BadNumerator(n.to_string(), k));
            }
        }
        let len = numerators.len();
        for i in 0..len {
            if step_numerator(&numerators[i], k) != numerators[(i + 1) % len] {
                return Err(RecordError::NotACycle(k));
            }
        }
        let mut sorted = numerators.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != len {
            return Err(RecordError::Repeated(k));
        }
        rotate_to_min(&mut numerators);
        let omega = numerators.iter().filter(|n| n.is_odd()).count();
        Ok(AttractorRecord {
            k,
            cycle_numerators: numerators,
            omega,
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn cycle_numerators(&self) -> &[BigUint] {
        &self.cycle_numerators
    }

    pub fn min_numerator(&self) -> &BigUint {
        &self.cycle_numerators[0]
    }

    pub fn lambda(&self) -> usize {
        self.cycle_numerators.len()
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    pub fn parity_vector(&self) -> ParityVector {
        ParityVector::new(
            self.cycle_numerators
                .iter()
                .map(|n| u8::from(n.is_odd()))
                .collect(),
        )
        .expect("cycle is nonempty")
    }

    /// The smallest cycle element as a fraction.
    pub fn start(&self) -> Rational2 {
        Rational2::new(
            num_bigint::BigInt::from(self.min_numerator().clone()),
            self.k,
        )
        .expect("k is odd")
    }

    /// Whether the closed form of the cycle's parity vector lands on the
    /// cycle's first element with denominator `k`.
    pub fn agrees_with_closed_form(&self) -> bool {
        let v = self.parity_vector();
        v.periodic_point() == self.start() && v.denominator() == BigUint::from(self.k)
    }

    /// Rational cycle elements.
    pub fn cycle(&self) -> Vec<Rational2> {
        self.cycle_numerators
            .iter()
            .map(|n| Rational2::new(num_bigint::BigInt::from(n.clone()), self.k).expect("k is odd"))
            .collect()
    }
}

/// One line of the attractor registry file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryLine {
    pub k: u64,
    pub min_numerator: String,
    pub lambda: usize,
    pub omega: usize,
    pub cycle_numerators: Vec<String>,
    pub depth: u64,
    pub step_cap: u64,
}

impl RegistryLine {
    pub fn new(record: &AttractorRecord, depth: u64, step_cap: u64) -> Self {
        RegistryLine {
            k: record.k,
            min_numerator: record.min_numerator().to_string(),
            lambda: record.lambda(),
            omega: record.omega(),
            cycle_numerators: record.cycle_numerators.iter().map(|n| n.to_string()).collect(),
            depth,
            step_cap,
        }
    }

    /// Rebuilds the record, rechecking the cycle and the stored summary fields.
    pub fn to_record(&self) -> Result<AttractorRecord, RecordError> {
        let numerators = self
            .cycle_numerators
            .iter()
            .map(|s| {
                s.parse::<BigUint>()
                    .map_err(|_| RecordError::BadNumerator(s.clone(), self.k))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let record = AttractorRecord::from_cycle(self.k, numerators)?;
        let checks = [
            ("min_numerator", self.min_numerator.clone(), record.min_numerator().to_string()),
            ("lambda", self.lambda.to_string(), record.lambda().to_string()),
            ("omega", self.omega.to_string(), record.omega().to_string()),
        ];
        for (field, stored, computed) in checks {
            if stored != computed {
                return Err(RecordError::Mismatch {
                    field,
                    stored,
                    computed,
                });
            }
        }
        Ok(record)
    }
}

pub fn write_registry<'a, W: Write>(
    mut out: W,
    lines: impl IntoIterator<Item = &'a RegistryLine>,
) -> Result<(), RecordError> {
    for line in lines {
        serde_json::to_writer(&mut out, line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads registry lines, skipping blank ones.
pub fn read_registry<R: BufRead>(input: R) -> Result<Vec<RegistryLine>, RecordError> {
    let mut lines = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        lines.push(serde_json::from_str(&line)?);
    }
    Ok(lines)
}
