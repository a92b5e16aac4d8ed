//! Rationals with odd denominator and the 3x+1 map on them.
//!
//! A [`Rational2`] is always stored in lowest terms with a positive odd
//! denominator; the sign lives in the numerator and zero is `0/1`. The parity
//! of such a fraction is the parity of its numerator, which is what makes the
//! map `T` well defined on this ring.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ParseRationalError;

/// A fraction `j/k` in lowest terms with `k` odd and positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational2 {
    numer: BigInt,
    denom: BigInt,
}

impl Rational2 {
    /// Builds `numer/denom`, reducing to lowest terms.
    ///
    /// Fails if `denom` is zero or if the reduced denominator is even.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ParseRationalError> {
        let mut numer = numer.into();
        let mut denom = denom.into();
        if denom.is_zero() {
            return Err(ParseRationalError::ZeroDenominator);
        }
        if denom.is_negative() {
            numer = -numer;
            denom = -denom;
        }
        let g = numer.gcd(&denom);
        if !g.is_one() {
            numer /= &g;
            denom /= &g;
        }
        if denom.is_even() {
            return Err(ParseRationalError::EvenDenominator(denom.to_string()));
        }
        Ok(Rational2 { numer, denom })
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational2 {
            numer: n.into(),
            denom: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }

    /// 1 if the numerator is odd, 0 otherwise.
    pub fn parity(&self) -> u8 {
        u8::from(self.numer.is_odd())
    }

    /// One application of the 3x+1 map: `x/2` for even `x`, `(3x+1)/2` for odd `x`.
    pub fn t_map(&self) -> Rational2 {
        if self.numer.is_even() {
            // gcd(j/2, k) = 1 because k is odd
            Rational2 {
                numer: &self.numer >> 1u32,
                denom: self.denom.clone(),
            }
        } else {
            // (3j/k + 1)/2 = ((3j + k)/2)/k; 3j + k is even since j and k are odd
            let numer: BigInt = (&self.numer * 3u32 + &self.denom) >> 1u32;
            let g = numer.gcd(&self.denom);
            if g.is_one() {
                Rational2 {
                    numer,
                    denom: self.denom.clone(),
                }
            } else {
                Rational2 {
                    numer: numer / &g,
                    denom: &self.denom / &g,
                }
            }
        }
    }
}

impl Ord for Rational2 {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.denom == other.denom {
            return self.numer.cmp(&other.numer);
        }
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl PartialOrd for Rational2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl FromStr for Rational2 {
    type Err = ParseRationalError;

    /// Accepts `j` or `j/k` with optional sign on either part.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |part: &str| {
            BigInt::from_str(part.trim()).map_err(|_| ParseRationalError::Malformed(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational2::new(parse(n)?, parse(d)?),
            None => Ok(Rational2::from_integer(parse(s)?)),
        }
    }
}

impl From<i64> for Rational2 {
    fn from(n: i64) -> Self {
        Rational2::from_integer(n)
    }
}

/// Parities of `x, T(x), ..., T^{n-1}(x)`.
pub fn parity_sequence(x: &Rational2, n: usize) -> Vec<u8> {
    let mut bits = Vec::with_capacity(n);
    let mut cur = x.clone();
    for i in 0..n {
        bits.push(cur.parity());
        if i + 1 < n {
            cur = cur.t_map();
        }
    }
    bits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational2 {
        s.parse().unwrap()
    }

    #[test]
    fn parity_reads_numerator() {
        assert_eq!(q("5/7").parity(), 1);
        assert_eq!(q("20/7").parity(), 0);
        assert_eq!(q("0").parity(), 0);
    }

    #[test]
    fn t_map_examples() {
        assert_eq!(q("5/7").t_map(), q("11/7"));
        assert_eq!(q("1").t_map(), q("2"));
        assert_eq!(q("2").t_map(), q("1"));
        assert_eq!(q("-1").t_map(), q("-1"));
        assert_eq!(q("0").t_map(), q("0"));
    }

    #[test]
    fn t_map_reduces_when_three_divides_denominator() {
        // (3·(1/3) + 1)/2 = 1
        assert_eq!(q("1/3").t_map(), q("1"));
        // (15/9 + 1)/2 = 12/9 = 4/3
        assert_eq!(q("5/9").t_map(), q("4/3"));
    }

    #[test]
    fn constructor_normalizes() {
        let x = Rational2::new(-10, -14).unwrap();
        assert_eq!(x.to_string(), "5/7");
        let z = Rational2::new(0, 9).unwrap();
        assert_eq!(z.denom(), &BigInt::one());
        assert_eq!(Rational2::new(3, -5).unwrap().to_string(), "-3/5");
        assert_eq!(Rational2::new(4, 2).unwrap().to_string(), "2");
    }

    #[test]
    fn even_denominator_rejected() {
        assert!(matches!(
            "1/4".parse::<Rational2>(),
            Err(ParseRationalError::EvenDenominator(_))
        ));
        assert!(matches!(
            "3/0".parse::<Rational2>(),
            Err(ParseRationalError::ZeroDenominator)
        ));
        assert!(matches!(
            "x/3".parse::<Rational2>(),
            Err(ParseRationalError::Malformed(_))
        ));
    }

    #[test]
    fn ordering_crosses_denominators() {
        assert!(q("1/3") < q("2/5"));
        assert!(q("-1/3") < q("-1/5"));
        assert_eq!(q("3/5").cmp(&q("3/5")), Ordering::Equal);
    }

    #[test]
    fn parity_sequence_examples() {
        assert_eq!(parity_sequence(&q("5/7"), 4), vec![1, 1, 0, 0]);
        assert_eq!(parity_sequence(&q("1"), 2), vec![1, 0]);
        assert_eq!(parity_sequence(&q("0"), 3), vec![0, 0, 0]);
    }
}
