//! Exact 3x+1 dynamics on rationals with a fixed odd denominator.
//!
//! * [`rational`] and [`orbit`]: the ring of fractions with odd denominator,
//!   the map `T`, and cycle detection.
//! * [`parity`]: parity vectors, the closed-form periodic point of a vector,
//!   necklace enumeration and Möbius counting.
//! * [`census`]: depth-`N` attractor searches over `D_k`, scaling, repetition
//!   and covariance detection, the single-attractor table and its fit.

pub mod census;
pub mod error;
pub mod orbit;
pub mod parity;
pub mod rational;

pub use error::{CensusError, FitError, ParseRationalError, RecordError, VectorError};
pub use orbit::{orbit, OrbitOutcome, DEFAULT_STEP_CAP};
pub use parity::{CycleInvariants, ParityVector};
pub use rational::{parity_sequence, Rational2};
