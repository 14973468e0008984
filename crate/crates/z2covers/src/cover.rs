//! The building-data calculus of a `(Z/2)^s`-cover.
//!
//! A cover of `P(a0..a3)` is determined numerically by the branch degrees
//! `d(g)`, `g ≠ 0`.  The eigensheaf degrees are the half-sums
//! `l(χ) = ½ Σ_{χ·g=1} d(g)`; they exist exactly when every half-sum is
//! even, and the cover is flat exactly when `L = lcm(a_i)` divides every
//! `l(χ)`.
//!
//! Genericity of the branch divisors (well-formed, quasi-smooth, normal
//! crossings) is an assumed hypothesis and is never checked.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::gf2::{parity_vector, Character, GroupElement, GroupFunction, Rank};
use crate::walsh;
use crate::wps::{well_formed, Weights};
use crate::Rational;

/// Largest accepted branch degree.  With this cap every spectral value,
/// product of three degrees and sum of such products fits in `i128`.
pub const MAX_BRANCH_DEGREE: i64 = 1 << 31;

/// Errors raised by the building-data calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverError {
    /// `d(0)` must vanish.
    NonzeroAtIdentity(i64),
    /// A branch degree is negative.
    NegativeDegree { element: u32, degree: i64 },
    /// A branch degree exceeds [`MAX_BRANCH_DEGREE`].
    DegreeTooLarge { element: u32, degree: i64 },
    /// All branch degrees vanish.
    EmptyBranchLocus,
    /// The half-sum `Σ_{χ·g=1} d(g)` is odd for this character.
    NonIntegral(Character),
    /// The count of half-points is not an integer.
    FractionalHalfPoints(Rational),
    /// Branch data and weights come from different covers.
    RankMismatch { left: u32, right: u32 },
}

impl fmt::Display for CoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverError::NonzeroAtIdentity(v) => {
                write!(f, "branch degree at the identity must be 0, got {v}")
            }
            CoverError::NegativeDegree { element, degree } => {
                write!(f, "branch degree {degree} at {element:#b} is negative")
            }
            CoverError::DegreeTooLarge { element, degree } => write!(
                f,
                "branch degree {degree} at {element:#b} exceeds {MAX_BRANCH_DEGREE}"
            ),
            CoverError::EmptyBranchLocus => write!(f, "all branch degrees are zero"),
            CoverError::NonIntegral(chi) => write!(
                f,
                "half-sum for character {:#b} is odd, so its eigensheaf degree is not an integer",
                chi.0
            ),
            CoverError::FractionalHalfPoints(q) => write!(
                f,
                "half-point count {q} is not an integer; the genericity hypotheses fail"
            ),
            CoverError::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for CoverError {}

/// Validated branch degrees: `d(0) = 0`, `0 <= d(g) <= MAX_BRANCH_DEGREE`
/// and `D = Σ d(g) > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BranchData {
    d: GroupFunction,
}

impl BranchData {
    /// Validates a group function as branch data.
    pub fn new(d: GroupFunction) -> Result<Self, CoverError> {
        if d.get(0) != 0 {
            return Err(CoverError::NonzeroAtIdentity(d.get(0)));
        }
        for (g, &v) in d.values().iter().enumerate() {
            if v < 0 {
                return Err(CoverError::NegativeDegree {
                    element: g as u32,
                    degree: v,
                });
            }
            if v > MAX_BRANCH_DEGREE {
                return Err(CoverError::DegreeTooLarge {
                    element: g as u32,
                    degree: v,
                });
            }
        }
        if d.total() == 0 {
            return Err(CoverError::EmptyBranchLocus);
        }
        Ok(BranchData { d })
    }

    /// Branch data from the values on nonzero elements in integer order.
    pub fn from_nonzero(rank: Rank, nonzero: &[i64]) -> Result<Self, CoverError> {
        let d = GroupFunction::from_nonzero(rank, nonzero).map_err(|_| {
            CoverError::RankMismatch {
                left: rank.get(),
                right: nonzero.len() as u32,
            }
        })?;
        BranchData::new(d)
    }

    /// The rank `s`.
    pub fn rank(&self) -> Rank {
        self.d.rank()
    }

    /// The branch-degree function.
    pub fn degrees(&self) -> &GroupFunction {
        &self.d
    }

    /// `d(g)`.
    pub fn get(&self, g: u32) -> i64 {
        self.d.get(g)
    }

    /// `D = Σ_g d(g)`.
    pub fn total(&self) -> i128 {
        self.d.total()
    }

    /// `Σ_g d(g)²`.
    pub fn sum_of_squares(&self) -> i128 {
        self.d.values().iter().map(|&v| v as i128 * v as i128).sum()
    }
}

/// Integral eigensheaf degrees `l(χ)`, indexed by character, `l(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EigensheafDegrees {
    rank: Rank,
    l: Vec<i128>,
}

impl EigensheafDegrees {
    /// The rank `s`.
    pub fn rank(&self) -> Rank {
        self.rank
    }

    /// All values, indexed by character encoding.
    pub fn values(&self) -> &[i128] {
        &self.l
    }

    /// Values on nonzero characters in integer order.
    pub fn nonzero_values(&self) -> &[i128] {
        &self.l[1..]
    }

    /// `l(χ)`.
    pub fn get(&self, chi: u32) -> i128 {
        self.l[chi as usize]
    }

    /// Smallest value over nonzero characters.
    pub fn min_nonzero(&self) -> i128 {
        self.l[1..].iter().copied().min().unwrap_or(0)
    }

    /// The values over nonzero characters, sorted ascending.
    pub fn sorted(&self) -> Vec<i128> {
        let mut v = self.l[1..].to_vec();
        v.sort_unstable();
        v
    }
}

/// `l(χ) = ½ Σ_{χ·g=1} d(g)` via the Walsh transform.
///
/// Fails with the first character (in integer order) whose half-sum is odd.
pub fn eigensheaf_degrees(b: &BranchData) -> Result<EigensheafDegrees, CoverError> {
    half_sum_degrees(&b.d)
}

pub(crate) fn half_sum_degrees(d: &GroupFunction) -> Result<EigensheafDegrees, CoverError> {
    let spectrum = walsh::forward(d);
    let total = spectrum.get(0);
    let mut l = Vec::with_capacity(spectrum.values().len());
    for (chi, &v) in spectrum.values().iter().enumerate() {
        // Σ_{χ·g=1} d(g) = (d̂(0) - d̂(χ))/2.
        let half_sum = (total - v) / 2;
        if half_sum & 1 != 0 {
            return Err(CoverError::NonIntegral(Character(chi as u32)));
        }
        l.push(half_sum / 2);
    }
    Ok(EigensheafDegrees { rank: d.rank(), l })
}

/// A validated cover: well-formed weights, branch data with integral
/// eigensheaf degrees (cached).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverSpec {
    weights: Weights,
    branch: BranchData,
    l: EigensheafDegrees,
}

impl CoverSpec {
    /// Combines weights and branch data, failing on odd half-sums.
    pub fn new(weights: Weights, branch: BranchData) -> Result<Self, CoverError> {
        let l = eigensheaf_degrees(&branch)?;
        Ok(CoverSpec {
            weights,
            branch,
            l,
        })
    }

    /// The base weights.
    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    /// The branch data.
    pub fn branch(&self) -> &BranchData {
        &self.branch
    }

    /// The eigensheaf degrees.
    pub fn eigensheaf_degrees(&self) -> &EigensheafDegrees {
        &self.l
    }

    /// The rank `s`.
    pub fn rank(&self) -> Rank {
        self.branch.rank()
    }

    /// `D = Σ d(g)`.
    pub fn total_degree(&self) -> i128 {
        self.branch.total()
    }
}

/// True iff `L` divides `l(χ)` for every `χ ≠ 0`.
pub fn is_flat(c: &CoverSpec) -> bool {
    let lcm = c.weights.lcm() as i128;
    c.l.nonzero_values().iter().all(|&l| l % lcm == 0)
}

/// `½D - W`, the coefficient of `K_Y + D_Hur` in multiples of `O(1)`.
pub fn hurwitz_degree(c: &CoverSpec) -> Rational {
    Rational::new(
        BigInt::from(c.total_degree()) - BigInt::from(2 * c.weights.sum()),
        BigInt::from(2),
    )
}

/// `Σ_{p+q+r=0} d_p d_q d_r` over unordered triples of distinct nonzero
/// elements.
///
/// Degenerate ordered triples always involve `d(0) = 0`, so the ordered
/// count `2^{-s} Σ_χ d̂(χ)³` is exactly six times this sum.
pub fn zero_sum_triple_sum(d: &GroupFunction) -> BigInt {
    let ordered = walsh::triple_convolution_at_zero(&walsh::forward(d));
    debug_assert!(ordered.is_integer());
    let ordered = ordered.to_integer();
    debug_assert!((&ordered % BigInt::from(6)).is_zero());
    ordered / BigInt::from(6)
}

/// Number of `½(1,1,1)` points: `Σ_{p+q+r=0} d_p d_q d_r / A`.
pub fn half_point_count(c: &CoverSpec) -> Result<BigInt, CoverError> {
    let numerator = zero_sum_triple_sum(c.branch.degrees());
    let a = BigInt::from(c.weights.product());
    let (q, r) = numerator.div_rem(&a);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(CoverError::FractionalHalfPoints(Rational::new(numerator, a)))
    }
}

/// Outcome of [`validate`]; failures are entries, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// The weights sorted ascending.
    pub weights: [u64; 4],
    /// Whether every three weights are coprime.
    pub weights_well_formed: bool,
    /// `Σ_g d(g)·g`; zero exactly when all eigensheaf degrees are integral.
    pub parity_vector: GroupElement,
    /// Whether all half-sums are even.
    pub parity_ok: bool,
    /// First character with an odd half-sum, if any.
    pub parity_failure: Option<Character>,
    /// Flatness, when the cover is valid.
    pub flat: Option<bool>,
    /// `½D - W`.
    pub hurwitz: Rational,
    /// Sign of `½D - W`: general-type candidate, Calabi–Yau threshold or
    /// Fano type.
    pub hurwitz_sign: Ordering,
    /// Half-point count or the reason it is not defined.
    pub half_points: Result<BigInt, CoverError>,
    /// Genericity of the branch divisors is assumed, never verified.
    pub genericity_assumed: bool,
}

impl ValidationReport {
    /// True when weights are well-formed and all half-sums are even.
    pub fn passes(&self) -> bool {
        self.weights_well_formed && self.parity_ok
    }
}

/// Checks raw weights and branch data and reports every finding.
pub fn validate(raw_weights: [u64; 4], branch: &BranchData) -> ValidationReport {
    let mut sorted = raw_weights;
    sorted.sort_unstable();
    let weights_well_formed = well_formed(sorted) && sorted[3] <= crate::wps::MAX_WEIGHT;
    let parity = parity_vector(branch.degrees());
    let parity_failure = match eigensheaf_degrees(branch) {
        Err(CoverError::NonIntegral(chi)) => Some(chi),
        _ => None,
    };
    let weight_sum: u128 = sorted.iter().map(|&a| a as u128).sum();
    let hurwitz = Rational::new(
        BigInt::from(branch.total()) - BigInt::from(2 * weight_sum),
        BigInt::from(2),
    );
    let hurwitz_sign = if hurwitz.is_positive() {
        Ordering::Greater
    } else if hurwitz.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    };
    let spec = Weights::new(sorted)
        .ok()
        .and_then(|w| CoverSpec::new(w, branch.clone()).ok());
    let flat = spec.as_ref().map(is_flat);
    let half_points = {
        let numerator = zero_sum_triple_sum(branch.degrees());
        let a = BigInt::from(sorted.iter().map(|&a| a as u128).product::<u128>());
        if a.is_zero() {
            Err(CoverError::FractionalHalfPoints(Rational::zero()))
        } else {
            let (q, r) = numerator.div_rem(&a);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(CoverError::FractionalHalfPoints(Rational::new(numerator, a)))
            }
        }
    };
    ValidationReport {
        weights: sorted,
        weights_well_formed,
        parity_vector: parity,
        parity_ok: parity.0 == 0,
        parity_failure,
        flat,
        hurwitz,
        hurwitz_sign,
        half_points,
        genericity_assumed: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank(s: u32) -> Rank {
        Rank::new(s).unwrap()
    }

    fn branch(s: u32, d: &[i64]) -> BranchData {
        BranchData::from_nonzero(rank(s), d).unwrap()
    }

    fn spec(a: [u64; 4], s: u32, d: &[i64]) -> CoverSpec {
        CoverSpec::new(Weights::new(a).unwrap(), branch(s, d)).unwrap()
    }

    fn q(n: i64, m: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(m))
    }

    #[test]
    fn branch_data_validation() {
        let r = rank(2);
        assert!(matches!(
            BranchData::from_nonzero(r, &[0, 0, 0]),
            Err(CoverError::EmptyBranchLocus)
        ));
        assert!(matches!(
            BranchData::from_nonzero(r, &[1, -1, 0]),
            Err(CoverError::NegativeDegree { element: 2, .. })
        ));
        let d = GroupFunction::new(r, alloc::vec![1, 1, 1, 1]).unwrap();
        assert_eq!(BranchData::new(d), Err(CoverError::NonzeroAtIdentity(1)));
    }

    #[test]
    fn eigensheaf_degree_examples() {
        let l = eigensheaf_degrees(&branch(2, &[6, 6, 6])).unwrap();
        assert_eq!(l.nonzero_values(), &[6, 6, 6]);
        let l = eigensheaf_degrees(&branch(2, &[2, 6, 6])).unwrap();
        assert_eq!(l.nonzero_values(), &[4, 6, 4]);
        assert_eq!(
            eigensheaf_degrees(&branch(2, &[1, 2, 2])),
            Err(CoverError::NonIntegral(Character(1)))
        );
    }

    #[test]
    fn flatness_examples() {
        let s5: Vec<i64> = (1..32u32).map(|g| (g & 1) as i64).collect();
        let c = spec([1, 1, 2, 2], 5, &s5);
        assert_eq!(c.eigensheaf_degrees().sorted().first(), Some(&4));
        assert!(is_flat(&c));

        let s4: Vec<i64> = (1..16u32).map(|g| if g == 1 { 2 } else { 4 }).collect();
        let c = spec([1, 1, 1, 4], 4, &s4);
        let mut values = c.eigensheaf_degrees().sorted();
        values.dedup();
        assert_eq!(values, alloc::vec![15, 16]);
        assert!(!is_flat(&c));

        assert!(is_flat(&spec([1, 1, 1, 1], 2, &[3, 3, 3])));
        assert!(is_flat(&spec([1, 1, 1, 1], 2, &[4, 4, 2])));
    }

    #[test]
    fn hurwitz_examples() {
        assert_eq!(hurwitz_degree(&spec([1; 4], 1, &[10])), q(1, 1));
        assert_eq!(hurwitz_degree(&spec([1; 4], 2, &[2, 4, 2])), q(0, 1));
    }

    #[test]
    fn half_point_examples() {
        assert_eq!(
            half_point_count(&spec([1; 4], 2, &[3, 3, 3])),
            Ok(BigInt::from(27))
        );
        let c = spec([1, 1, 1, 2], 2, &[1, 1, 1]);
        assert!(matches!(
            half_point_count(&c),
            Err(CoverError::FractionalHalfPoints(_))
        ));
        assert_eq!(
            half_point_count(&spec([1; 4], 3, &[2; 7])),
            Ok(BigInt::from(56))
        );
        assert_eq!(half_point_count(&spec([1; 4], 1, &[10])), Ok(BigInt::from(0)));
    }

    #[test]
    fn validation_reports() {
        let r = validate([1, 1, 3, 3], &branch(2, &[6, 6, 6]));
        assert!(r.passes());
        assert_eq!(r.flat, Some(true));
        assert_eq!(r.hurwitz, q(1, 1));
        assert_eq!(r.hurwitz_sign, Ordering::Greater);

        let r = validate([1; 4], &branch(2, &[1, 2, 2]));
        assert!(!r.parity_ok);
        assert_eq!(r.parity_failure, Some(Character(1)));
        assert!(!r.passes());

        let r = validate([2, 2, 1, 1], &branch(2, &[8, 8, 8]));
        assert_eq!(r.weights, [1, 1, 2, 2]);
        assert!(r.passes());
    }
}
