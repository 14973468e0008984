//! The unnormalized Walsh–Hadamard transform on `(Z/2)^s` and the
//! dictionary between spectra and eigensheaf degrees.
//!
//! `d̂(χ) = Σ_x d(x)(-1)^{χ·x}`.  The inverse divides by `2^s`; that division
//! is checked and a non-integral quotient is reported as an error, because
//! the classification uses non-integrality as a certificate of
//! infeasibility.
//!
//! Spectra are stored as `i128`: for `s <= 16` and 64-bit inputs no partial
//! sum of the butterfly can leave that range.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::gf2::{GroupFunction, Rank};
use crate::Rational;

/// Errors raised when leaving the spectral side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalshError {
    /// `2^{-s} Σ_χ S(χ)(-1)^{χ·x}` is not an integer at `x`.
    NonIntegral { element: u32, numerator: i128 },
    /// The recovered value does not fit in 64 bits.
    OutOfRange { element: u32 },
    /// A value table does not have `2^s` entries.
    LengthMismatch { expected: usize, found: usize },
}

impl fmt::Display for WalshError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalshError::NonIntegral { element, numerator } => write!(
                f,
                "inverse transform is not integral at element {element:#b} (numerator {numerator})"
            ),
            WalshError::OutOfRange { element } => {
                write!(f, "inverse transform overflows 64 bits at element {element:#b}")
            }
            WalshError::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} spectral values, found {found}")
            }
        }
    }
}

impl core::error::Error for WalshError {}

/// The unnormalized transform `d̂`, indexed by character encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spectrum {
    rank: Rank,
    values: Vec<i128>,
}

impl Spectrum {
    /// Wraps a full table of spectral values.
    pub fn new(rank: Rank, values: Vec<i128>) -> Result<Self, WalshError> {
        if values.len() != rank.order() {
            return Err(WalshError::LengthMismatch {
                expected: rank.order(),
                found: values.len(),
            });
        }
        Ok(Spectrum { rank, values })
    }

    /// The rank of the underlying group.
    pub fn rank(&self) -> Rank {
        self.rank
    }

    /// All values, indexed by character encoding.
    pub fn values(&self) -> &[i128] {
        &self.values
    }

    /// The value at character `chi`.
    pub fn get(&self, chi: u32) -> i128 {
        self.values[chi as usize]
    }
}

/// In-place unnormalized butterfly; applying it twice multiplies by `2^s`.
pub(crate) fn butterfly(values: &mut [i128]) {
    let n = values.len();
    let mut half = 1;
    while half < n {
        for block in (0..n).step_by(2 * half) {
            for i in block..block + half {
                let (a, b) = (values[i], values[i + half]);
                values[i] = a + b;
                values[i + half] = a - b;
            }
        }
        half *= 2;
    }
}

/// `d̂(χ) = Σ_x d(x)(-1)^{χ·x}` via the `s`-stage butterfly.
pub fn forward(d: &GroupFunction) -> Spectrum {
    let mut values: Vec<i128> = d.values().iter().map(|&v| v as i128).collect();
    butterfly(&mut values);
    Spectrum {
        rank: d.rank(),
        values,
    }
}

/// `d(x) = 2^{-s} Σ_χ S(χ)(-1)^{χ·x}`, rejecting non-integral results.
pub fn inverse(spectrum: &Spectrum) -> Result<GroupFunction, WalshError> {
    let mut values = spectrum.values.clone();
    butterfly(&mut values);
    let shift = spectrum.rank.get();
    let mask = (1i128 << shift) - 1;
    let mut out = Vec::with_capacity(values.len());
    for (x, &v) in values.iter().enumerate() {
        if v & mask != 0 {
            return Err(WalshError::NonIntegral {
                element: x as u32,
                numerator: v,
            });
        }
        let q = v >> shift;
        let q = i64::try_from(q).map_err(|_| WalshError::OutOfRange { element: x as u32 })?;
        out.push(q);
    }
    Ok(GroupFunction::new(spectrum.rank, out).expect("length preserved by the butterfly"))
}

/// `l(χ) = (S(0) - S(χ))/4` for `χ ≠ 0` and `l(0) = 0`, as exact rationals.
///
/// Non-integral values are returned as they are; callers decide whether
/// they are acceptable.
pub fn degrees_from_spectrum(spectrum: &Spectrum) -> Vec<Rational> {
    let zero = spectrum.values[0];
    spectrum
        .values
        .iter()
        .enumerate()
        .map(|(chi, &v)| {
            if chi == 0 {
                Rational::zero()
            } else {
                Rational::new(BigInt::from(zero - v), BigInt::from(4))
            }
        })
        .collect()
}

/// `2^{-s} Σ_χ S(χ)^3`.
///
/// For `S = d̂` this is `Σ_{x+y+z=0} d(x)d(y)d(z)`, a nonnegative integer
/// whenever `d >= 0`; a negative value certifies that no such `d` exists.
pub fn triple_convolution_at_zero(spectrum: &Spectrum) -> Rational {
    let sum: BigInt = spectrum
        .values
        .iter()
        .map(|&v| {
            let b = BigInt::from(v);
            &b * &b * &b
        })
        .sum();
    Rational::new(sum, BigInt::from(1u64) << spectrum.rank.get())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rank(s: u32) -> Rank {
        Rank::new(s).unwrap()
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn forward_of_zero_is_zero() {
        let spec = forward(&GroupFunction::zero(rank(4)));
        assert!(spec.values().iter().all(|&v| v == 0));
    }

    #[test]
    fn forward_of_affine_hyperplane_indicator() {
        // χ0 = (0,1) is bit 1; its nontrivial half is {(0,1),(1,1)} = {2,3}.
        let d = GroupFunction::from_nonzero(rank(2), &[0, 1, 1]).unwrap();
        assert_eq!(forward(&d).values(), &[2, 0, -2, 0]);
    }

    #[test]
    fn forward_of_definition_six_a() {
        let r = rank(4);
        let d = GroupFunction::from_fn(r, |g| if g & 1 == 1 { 2 } else { 0 });
        let spec = forward(&d);
        assert_eq!(spec.get(0), 16);
        assert_eq!(spec.get(1), -16);
        assert!((2..16).all(|chi| spec.get(chi) == 0));
        let l = degrees_from_spectrum(&spec);
        assert_eq!(l[1], int(8));
        assert!((2..16).all(|chi| l[chi] == int(4)));
    }

    #[test]
    fn inverse_codimension_two_complement() {
        let r = rank(4);
        let mut values = vec![0i128; 16];
        values[0] = 12;
        for chi in [0b0001, 0b0010, 0b0011] {
            values[chi] = -4;
        }
        let d = inverse(&Spectrum::new(r, values).unwrap()).unwrap();
        assert!(d.values().iter().all(|&v| v == 0 || v == 1));
        assert_eq!(d.total(), 12);
        assert_eq!(d.get(0), 0);
    }

    #[test]
    fn inverse_rejects_half_integers() {
        let r = rank(4);
        let mut values = vec![0i128; 16];
        values[0] = 12;
        values[0b0001] = -4;
        values[0b0010] = -8;
        assert!(matches!(
            inverse(&Spectrum::new(r, values).unwrap()),
            Err(WalshError::NonIntegral { .. })
        ));
    }

    #[test]
    fn degrees_match_half_sums_for_s2() {
        let d = GroupFunction::from_nonzero(rank(2), &[2, 6, 6]).unwrap();
        let spec = forward(&d);
        assert_eq!(spec.get(0), 14);
        let l = degrees_from_spectrum(&spec);
        assert_eq!(&l[1..], &[int(4), int(6), int(4)]);
    }

    #[test]
    fn cubic_moment_certificate() {
        let r = rank(6);
        let mut values = vec![1i128; 64];
        values[0] = 9;
        for chi in 1..=9 {
            values[chi] = -7;
        }
        let c = triple_convolution_at_zero(&Spectrum::new(r, values).unwrap());
        assert_eq!(c, int(-36));
    }

    #[test]
    fn cubic_moment_vanishes_on_affine_coset() {
        let d = GroupFunction::from_nonzero(rank(2), &[1, 0, 1]).unwrap();
        assert_eq!(triple_convolution_at_zero(&forward(&d)), int(0));
    }
}
