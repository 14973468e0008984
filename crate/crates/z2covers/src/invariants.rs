//! Exact invariants of a cover and the Chern-ratio geography functionals.
//!
//! For a cover `X → P(a0..a3)` with branch degrees `d` the crate computes
//!
//! * `K³ = 2^s/A · (D/2 - W)³`;
//! * `χ(O_X) = Σ_χ χ(O(-l(χ)))` via the eigensheaf decomposition, exact
//!   under the vanishing of the middle cohomology of `O(n)` on the base;
//! * `e(X)` by stratifying the branch locus, exact over `P³` and the
//!   orbifold value otherwise.
//!
//! The asymptotic geography depends only on the ratio vector
//! `r_g = d_g / D`; [`geography_point`] evaluates the limiting Chern ratios
//! `(x, y)` and the smooth-complete-intersection functional
//! `SCI = y(3x + 1) - 4` in exact rational arithmetic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cover::{zero_sum_triple_sum, CoverSpec};
use crate::gf2::{pairing, Rank};
use crate::wps::euler_char_line;
use crate::Rational;

/// Errors raised by the geography functionals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantsError {
    /// A ratio vector has the wrong length.
    LengthMismatch { expected: usize, found: usize },
    /// `r(0)` must vanish.
    NonzeroAtIdentity,
    /// A ratio is negative.
    NegativeRatio(u32),
    /// The ratios do not sum to one.
    NotNormalized(Rational),
    /// The almost-uniform family needs `s >= 3`.
    RankTooSmall(u32),
    /// The parameter `t` of the almost-uniform family is outside `[0, 1]`.
    ParameterOutOfRange(Rational),
}

impl fmt::Display for InvariantsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantsError::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} ratios, found {found}")
            }
            InvariantsError::NonzeroAtIdentity => write!(f, "the ratio at the identity must be 0"),
            InvariantsError::NegativeRatio(g) => write!(f, "ratio at {g:#b} is negative"),
            InvariantsError::NotNormalized(sum) => write!(f, "ratios sum to {sum}, not 1"),
            InvariantsError::RankTooSmall(s) => {
                write!(f, "the almost-uniform family needs s >= 3, got s = {s}")
            }
            InvariantsError::ParameterOutOfRange(t) => write!(f, "t = {t} is outside [0, 1]"),
        }
    }
}

impl core::error::Error for InvariantsError {}

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn pow2(e: i64) -> Rational {
    if e >= 0 {
        int(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// Whether the computed `e(X)` is the true Euler number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EulerExactness {
    /// All weights are 1, so no singular-locus correction is needed.
    Exact,
    /// Weighted base: the orbifold Euler numbers of the strata are used
    /// and the correction from singular points of the divisors is omitted.
    OrbifoldOnly,
}

/// The invariants of one cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    /// `K_X³`.
    pub k3: Rational,
    /// `χ(O_X)`, exact under the vanishing hypothesis on the base.
    pub chi: i128,
    /// `e(X)`.
    pub euler: Rational,
    /// Whether `euler` is exact.
    pub euler_exactness: EulerExactness,
    /// `e(X)/(24 χ)` when `χ ≠ 0`.
    pub x: Option<Rational>,
    /// `-K³/(24 χ)` when `χ ≠ 0`.
    pub y: Option<Rational>,
}

/// `K_X³ = 2^s/A · (D/2 - W)³`.
pub fn volume(c: &CoverSpec) -> Rational {
    let h = crate::cover::hurwitz_degree(c);
    let s = c.rank().get() as i64;
    pow2(s) * &h * &h * &h / int(c.weights().product())
}

/// `χ(O_X) = Σ_χ χ(O(-l(χ)))`, with `l(0) = 0` contributing `1`.
pub fn holomorphic_euler(c: &CoverSpec) -> i128 {
    let mut l = c.eigensheaf_degrees().values().to_vec();
    l.sort_unstable();
    let w = c.weights();
    let mut total = 0i128;
    let mut i = 0;
    while i < l.len() {
        let mut j = i;
        while j < l.len() && l[j] == l[i] {
            j += 1;
        }
        total += (j - i) as i128 * euler_char_line(w, -l[i]);
        i = j;
    }
    total
}

/// The leading cubic term `-(1/48A) Σ_χ (Σ_{χ·g=1} d_g)³` of `χ(O_X)`.
pub fn holomorphic_euler_leading(c: &CoverSpec) -> Rational {
    let cubes: BigInt = c
        .eigensheaf_degrees()
        .values()
        .iter()
        .map(|&l| {
            let h = BigInt::from(2 * l);
            &h * &h * &h
        })
        .sum();
    -Rational::new(cubes, BigInt::from(48u32) * BigInt::from(c.weights().product()))
}

/// `e(X)` from the stratification of the branch locus.
///
/// `e(X) = 2^s·4 - 2^{s-1} Σ_p e(D_p) + 2^{s-2} Σ_{p<q} e(D_{pq})
/// - 2^{s-3} Σ_{p<q<r, p+q+r≠0} e(D_{pqr})` with
/// `e(D_p) = d_p(d_p² - d_p W + σ2)/A`, `e(D_{pq}) = d_p d_q (W - d_p - d_q)/A`
/// and `e(D_{pqr}) = d_p d_q d_r / A`; the power sums make this linear in
/// the group order.
pub fn topological_euler(c: &CoverSpec) -> (Rational, EulerExactness) {
    let s = c.rank().get() as i64;
    let w = c.weights();
    let big_w = BigInt::from(w.sum());
    let sigma2 = BigInt::from(w.pair_sum());
    let a = int(w.product());

    let (mut p1, mut p2, mut p3) = (BigInt::zero(), BigInt::zero(), BigInt::zero());
    for &v in c.branch().degrees().values() {
        let v = BigInt::from(v);
        p1 += &v;
        p2 += &v * &v;
        p3 += &v * &v * &v;
    }
    let e2 = (&p1 * &p1 - &p2) / BigInt::from(2);
    let e3 = (&p1 * &p1 * &p1 - BigInt::from(3) * &p1 * &p2 + BigInt::from(2) * &p3)
        / BigInt::from(6);
    let zero_sum = zero_sum_triple_sum(c.branch().degrees());

    let divisors = &p3 - &big_w * &p2 + &sigma2 * &p1;
    let pairs = &big_w * &e2 - (&p2 * &p1 - &p3);
    let triples = e3 - zero_sum;

    let euler = pow2(s) * int(4)
        - pow2(s - 1) * int(divisors) / &a
        + pow2(s - 2) * int(pairs) / &a
        - pow2(s - 3) * int(triples) / &a;
    let exactness = if w.get() == [1; 4] {
        EulerExactness::Exact
    } else {
        EulerExactness::OrbifoldOnly
    };
    (euler, exactness)
}

/// All invariants of `c`.
pub fn invariant_report(c: &CoverSpec) -> InvariantReport {
    let k3 = volume(c);
    let chi = holomorphic_euler(c);
    let (euler, euler_exactness) = topological_euler(c);
    let (x, y) = if chi != 0 {
        let denom = int(24 * chi);
        (Some(&euler / &denom), Some(-&k3 / &denom))
    } else {
        (None, None)
    };
    InvariantReport {
        k3,
        chi,
        euler,
        euler_exactness,
        x,
        y,
    }
}

/// A point of the degree simplex: `r(0) = 0`, `r ≥ 0`, `Σ r = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatioVector {
    rank: Rank,
    r: Vec<Rational>,
}

impl RatioVector {
    /// Validates a full table of ratios indexed by element encoding.
    pub fn new(rank: Rank, r: Vec<Rational>) -> Result<Self, InvariantsError> {
        if r.len() != rank.order() {
            return Err(InvariantsError::LengthMismatch {
                expected: rank.order(),
                found: r.len(),
            });
        }
        if !r[0].is_zero() {
            return Err(InvariantsError::NonzeroAtIdentity);
        }
        if let Some(g) = r.iter().position(|x| x.is_negative()) {
            return Err(InvariantsError::NegativeRatio(g as u32));
        }
        let sum: Rational = r.iter().sum();
        if !sum.is_one() {
            return Err(InvariantsError::NotNormalized(sum));
        }
        Ok(RatioVector { rank, r })
    }

    /// Builds the vector from its values on nonzero elements.
    pub fn from_nonzero(rank: Rank, nonzero: Vec<Rational>) -> Result<Self, InvariantsError> {
        let mut r = Vec::with_capacity(nonzero.len() + 1);
        r.push(Rational::zero());
        r.extend(nonzero);
        RatioVector::new(rank, r)
    }

    /// `r_g = d_g / D` for branch degrees `d`.
    pub fn from_degrees(rank: Rank, d: &[i64]) -> Result<Self, InvariantsError> {
        let total: i128 = d.iter().map(|&v| v as i128).sum();
        if total <= 0 {
            return Err(InvariantsError::NotNormalized(Rational::zero()));
        }
        let r = d
            .iter()
            .map(|&v| Rational::new(BigInt::from(v), BigInt::from(total)))
            .collect();
        RatioVector::new(rank, r)
    }

    /// The vertex with `r_g = 1`.
    pub fn vertex(rank: Rank, g: u32) -> Self {
        let mut r = vec![Rational::zero(); rank.order()];
        r[g as usize] = Rational::one();
        RatioVector { rank, r }
    }

    /// The barycenter `r_g = 1/(2^s - 1)`.
    pub fn barycenter(rank: Rank) -> Self {
        let n = rank.order() - 1;
        let mut r = vec![Rational::new(BigInt::one(), BigInt::from(n)); rank.order()];
        r[0] = Rational::zero();
        RatioVector { rank, r }
    }

    /// The rank `s`.
    pub fn rank(&self) -> Rank {
        self.rank
    }

    /// All ratios indexed by element encoding.
    pub fn values(&self) -> &[Rational] {
        &self.r
    }
}

/// The limiting geography of a ratio vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeographyPoint {
    /// `Σ r³`.
    pub a: Rational,
    /// `Σ r²`.
    pub b: Rational,
    /// `Σ r_p r_q r_h` over ordered triples of distinct elements with
    /// `p + q + h = 0`.
    pub t: Rational,
    /// `Σ r_p r_q r_h` over ordered triples of distinct elements with
    /// `p + q + h ≠ 0`.
    pub s_idp: Rational,
    /// `Q = Σ_χ A_χ³`, `A_χ = Σ_{χ·g=1} r_g`.
    pub q: Rational,
    /// `Φ = 2^{3-s} Q`.
    pub phi: Rational,
    /// `x = (14a + 6b + Φ)/(3Φ)`.
    pub x: Rational,
    /// `y = 2/Φ`.
    pub y: Rational,
    /// `y(3x + 1) - 4`.
    pub sci: Rational,
}

/// Evaluates the geography functionals exactly.
///
/// The ratios are brought to a common denominator `N` so the inner sums
/// run over big integers.  `Q` is computed from the half-sums `A_χ` and `T`
/// from a direct sum over zero-sum pairs; the identity `Φ = 3b - T + 1`
/// relating the two is asserted.
pub fn geography_point(r: &RatioVector) -> GeographyPoint {
    let s = r.rank.get() as i64;
    let n = r.rank.order();
    let denom = r
        .r
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num: Vec<BigInt> = r
        .r
        .iter()
        .map(|x| x.numer() * (&denom / x.denom()))
        .collect();
    let d2 = &denom * &denom;
    let d3 = &d2 * &denom;

    let a_num: BigInt = num.iter().map(|v| v * v * v).sum();
    let b_num: BigInt = num.iter().map(|v| v * v).sum();
    let mut t_num = BigInt::zero();
    for p in 1..n {
        if num[p].is_zero() {
            continue;
        }
        for q in (p + 1)..n {
            let h = p ^ q;
            if h > q {
                t_num += &num[p] * &num[q] * &num[h];
            }
        }
    }
    t_num *= BigInt::from(6);

    let mut q_num = BigInt::zero();
    for chi in 1..n as u32 {
        let a_chi: BigInt = (1..n as u32)
            .filter(|&g| pairing(chi, g))
            .map(|g| &num[g as usize])
            .sum();
        q_num += &a_chi * &a_chi * &a_chi;
    }

    let a = Rational::new(a_num, d3.clone());
    let b = Rational::new(b_num, d2);
    let t = Rational::new(t_num, d3.clone());
    let q = Rational::new(q_num, d3);
    let phi = pow2(3 - s) * &q;
    assert_eq!(
        phi,
        int(3) * &b - &t + int(1),
        "cubic identity Φ = 3b - T + 1 failed"
    );
    let s_idp = int(1) + int(2) * &a - int(3) * &b - &t;
    let x = (int(14) * &a + int(6) * &b + &phi) / (int(3) * &phi);
    let y = int(2) / &phi;
    let sci = &y * (int(3) * &x + int(1)) - int(4);
    GeographyPoint {
        a,
        b,
        t,
        s_idp,
        q,
        phi,
        x,
        y,
        sci,
    }
}

/// The almost-uniform vector: `r = t` at `g0 = e_0`, `(1-t)/(2^{s-1}-1)` at
/// the other elements with first coordinate 1, and `0` elsewhere.
pub fn almost_uniform(rank: Rank, t: &Rational) -> Result<RatioVector, InvariantsError> {
    let s = rank.get();
    if s < 3 {
        return Err(InvariantsError::RankTooSmall(s));
    }
    if t.is_negative() || *t > Rational::one() {
        return Err(InvariantsError::ParameterOutOfRange(t.clone()));
    }
    let others = BigInt::from((1u64 << (s - 1)) - 1);
    let rest = (Rational::one() - t) / Rational::from_integer(others);
    let r = (0..rank.order() as u32)
        .map(|g| {
            if g == 1 {
                t.clone()
            } else if g & 1 == 1 {
                rest.clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    RatioVector::new(rank, r)
}

/// `F(m, t) = (-9m²t⁴ + 7m²t³ + 22mt³ - 18mt² - 15t² + 15t - 2)/(m - 1)²`,
/// the closed form of `7a - 9b²` on the almost-uniform vectors with
/// `m = 2^{s-1}` support points.
pub fn hunt_f_closed_form(m: u64, t: &Rational) -> Rational {
    let m = int(m);
    let t2 = t * t;
    let t3 = &t2 * t;
    let t4 = &t3 * t;
    let m2 = &m * &m;
    let numerator = -int(9) * &m2 * &t4 + int(7) * &m2 * &t3 + int(22) * &m * &t3
        - int(18) * &m * &t2
        - int(15) * &t2
        + int(15) * t
        - int(2);
    let m1 = &m - int(1);
    numerator / (&m1 * &m1)
}

/// Evaluates `F = 7a - 9b²` and the geography point of the almost-uniform
/// vector.  Since `T = 0` there, `SCI = 4F/Φ²`, so `F > 0` places the
/// limit point above the smooth-complete-intersection curve.
pub fn hunt_scan(rank: Rank, t: &Rational) -> Result<(Rational, GeographyPoint), InvariantsError> {
    let r = almost_uniform(rank, t)?;
    let point = geography_point(&r);
    let f = int(7) * &point.a - int(9) * &point.b * &point.b;
    Ok((f, point))
}

/// Proven bounds on the geography functionals for a given rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeographyBounds {
    /// `-1/2`.
    pub sci_min: Rational,
    /// `8/3`.
    pub sci_max: Rational,
    /// `2`.
    pub x_max: Rational,
    /// `(3·2^{2s-2} - 2^{s+1} - 1)/(3(2^s + 1)²)`, the bound the proof
    /// derives.
    pub x_min_proof: Rational,
    /// `(3·2^{2s-2} + 2^{s+1} - 1)/(3(2^s - 1)²)`, the bound as stated.
    pub x_min_stated: Rational,
    /// `1/2`.
    pub y_min: Rational,
    /// `2 - 2^{2-s} + 2^{1-2s}`, attained at the barycenter.
    pub y_max: Rational,
}

/// The bounds for rank `s`.
pub fn geography_bounds(rank: Rank) -> GeographyBounds {
    let s = rank.get() as i64;
    let two_s = pow2(s);
    let x_min_proof = (int(3) * pow2(2 * s - 2) - pow2(s + 1) - int(1))
        / (int(3) * (&two_s + int(1)) * (&two_s + int(1)));
    let x_min_stated = (int(3) * pow2(2 * s - 2) + pow2(s + 1) - int(1))
        / (int(3) * (&two_s - int(1)) * (&two_s - int(1)));
    GeographyBounds {
        sci_min: Rational::new(BigInt::from(-1), BigInt::from(2)),
        sci_max: Rational::new(BigInt::from(8), BigInt::from(3)),
        x_max: int(2),
        x_min_proof,
        x_min_stated,
        y_min: Rational::new(BigInt::one(), BigInt::from(2)),
        y_max: int(2) - pow2(2 - s) + pow2(1 - 2 * s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::BranchData;
    use crate::wps::Weights;

    fn q(n: i64, m: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(m))
    }

    fn rank(s: u32) -> Rank {
        Rank::new(s).unwrap()
    }

    fn p3(s: u32, d: &[i64]) -> CoverSpec {
        CoverSpec::new(
            Weights::projective_space(),
            BranchData::from_nonzero(rank(s), d).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn spot_checks_on_projective_space() {
        let r = invariant_report(&p3(1, &[10]));
        assert_eq!((r.k3, r.chi, r.euler), (q(2, 1), -3, q(-652, 1)));
        assert_eq!(r.euler_exactness, EulerExactness::Exact);

        let r = invariant_report(&p3(2, &[3, 3, 3]));
        assert_eq!((r.k3, r.chi, r.euler), (q(1, 2), 1, q(-92, 1)));

        let r = invariant_report(&p3(1, &[2]));
        assert_eq!((r.chi, r.euler), (1, q(4, 1)));
        assert_eq!(r.k3, q(-54, 1));
    }

    #[test]
    fn volume_vanishes_at_threshold() {
        assert_eq!(volume(&p3(1, &[8])), q(0, 1));
    }

    #[test]
    fn weighted_base_is_flagged() {
        let c = CoverSpec::new(
            Weights::new([1, 1, 3, 3]).unwrap(),
            BranchData::from_nonzero(rank(2), &[6, 6, 6]).unwrap(),
        )
        .unwrap();
        assert_eq!(topological_euler(&c).1, EulerExactness::OrbifoldOnly);
    }

    #[test]
    fn vertex_and_barycenter() {
        for s in 2..=5 {
            let p = geography_point(&RatioVector::vertex(rank(s), 1));
            assert_eq!((p.x, p.y, p.sci), (q(2, 1), q(1, 2), q(-1, 2)));
        }
        let p = geography_point(&RatioVector::barycenter(rank(2)));
        assert_eq!((p.q, p.y, p.x), (q(8, 9), q(9, 8), q(1, 1)));
        for s in 2..=6 {
            let p = geography_point(&RatioVector::barycenter(rank(s)));
            assert_eq!(p.y, geography_bounds(rank(s)).y_max);
        }
    }

    #[test]
    fn hunt_values() {
        let (f, p) = hunt_scan(rank(3), &q(3, 5)).unwrap();
        assert_eq!(f, q(136, 5625));
        assert_eq!(f, hunt_f_closed_form(4, &q(3, 5)));
        assert!(p.sci > Rational::zero());
        assert!(p.t.is_zero());
        let (f, _) = hunt_scan(rank(3), &q(1, 1)).unwrap();
        assert_eq!(f, q(-2, 1));
        assert!(hunt_scan(rank(2), &q(1, 2)).is_err());
    }

    #[test]
    fn ratio_vector_validation() {
        assert!(RatioVector::from_nonzero(rank(2), alloc::vec![q(1, 2), q(1, 2), q(1, 2)]).is_err());
        assert!(RatioVector::from_nonzero(rank(2), alloc::vec![q(3, 2), q(-1, 2), q(0, 1)]).is_err());
        assert!(RatioVector::from_degrees(rank(2), &[0, 3, 3, 3]).is_ok());
    }
}
