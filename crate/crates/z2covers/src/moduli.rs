//! Numeric deformation criteria and the example families.
//!
//! A cover of a weighted projective space whose deformations all remain
//! abelian covers of the same base is detected by two inequalities:
//! `d(g) < l(χ)` for every `g ≠ 0` and nontrivial `χ` with `χ·g = 0`, and
//! `Σ d(g) > 2W`.  Genericity of the branch divisors is an assumption and
//! is reported as such.
//!
//! The generators build the explicit families used to show that non-flat
//! pluricanonical covers exist in every rank and that some covers define
//! new components of their moduli space.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::classify::{is_pluricanonical, PluricanonicalReport};
use crate::cover::{is_flat, BranchData, CoverSpec};
use crate::gf2::{affine_hyperplane_min_intersection, pairing, GroupElement, GroupFunction, Rank, MAX_RANK};
use crate::wps::Weights;

/// Errors raised by the generators and configuration checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuliError {
    /// The rank is outside the range the construction needs.
    RankOutOfRange { s: u32, min: u32 },
    /// The parameter `M` of the new-component family must be even and > 2.
    BadParameter(u64),
    /// The subspace dimension is outside `2..s`.
    SubspaceDimension { dim: u32, s: u32 },
    /// A closed-form quantity that should be integral is not.
    NotIntegral(&'static str),
}

impl fmt::Display for ModuliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuliError::RankOutOfRange { s, min } => {
                write!(f, "rank {s} is out of range (need at least {min})")
            }
            ModuliError::BadParameter(m) => write!(f, "M = {m} must be even and greater than 2"),
            ModuliError::SubspaceDimension { dim, s } => {
                write!(f, "subspace dimension {dim} must lie in 2..{s}")
            }
            ModuliError::NotIntegral(what) => write!(f, "{what} is not an integer"),
        }
    }
}

impl core::error::Error for ModuliError {}

/// Outcome of the numeric deformation criteria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationReport {
    /// Whether `d(g) < l(χ)` for all `g ≠ 0`, `χ ≠ 0` with `χ·g = 0`.
    pub pairwise_ok: bool,
    /// The failing pairs `(g, χ)`.
    pub failures: Vec<(u32, u32)>,
    /// Whether `Σ d(g) > 2W`.
    pub total_degree_ok: bool,
    /// Whether the weights are pairwise coprime, where the criteria apply.
    pub weights_pairwise_coprime: bool,
    /// Genericity of the branch divisors is assumed, never checked.
    pub genericity_assumed: bool,
    /// Stability is inferred from the numeric criteria only.
    pub stability: &'static str,
}

/// How stability is reported: only the ampleness proxy `½D > W` is checked.
pub const STABILITY_NOTE: &str = "stable by pair criterion, not verified";

impl DeformationReport {
    /// Both numeric conditions hold.
    pub fn passes(&self) -> bool {
        self.pairwise_ok && self.total_degree_ok
    }
}

fn pairwise_coprime(w: &Weights) -> bool {
    let a = w.get();
    (0..4).all(|i| ((i + 1)..4).all(|j| a[i].gcd(&a[j]) == 1))
}

/// Pairs `(g, χ)` with `g ≠ 0`, `χ ≠ 0`, `χ·g = 0` and `d(g) >= l(χ)`.
///
/// `l` is a full table indexed by character; it is taken as given so the
/// criterion can be evaluated on any candidate degrees.
pub fn pairwise_failures(d: &GroupFunction, l: &[i128]) -> Vec<(u32, u32)> {
    let size = d.rank().order() as u32;
    let mut failures = Vec::new();
    for g in 1..size {
        let dg = d.get(g) as i128;
        for chi in 1..size {
            if !pairing(chi, g) && dg >= l[chi as usize] {
                failures.push((g, chi));
            }
        }
    }
    failures
}

/// Evaluates both numeric deformation conditions exactly.
pub fn deformation_criteria(c: &CoverSpec) -> DeformationReport {
    let failures = pairwise_failures(c.branch().degrees(), c.eigensheaf_degrees().values());
    DeformationReport {
        pairwise_ok: failures.is_empty(),
        failures,
        total_degree_ok: c.total_degree() > 2 * c.weights().sum() as i128,
        weights_pairwise_coprime: pairwise_coprime(c.weights()),
        genericity_assumed: true,
        stability: STABILITY_NOTE,
    }
}

/// Which hyperplane-arrangement configuration to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperplaneConfig {
    /// `d = 1` on every nonzero element (`s >= 3`).
    AllNonzero,
    /// `d = 1` off a subspace of the given dimension (`s >= 4`, dim `>= 2`).
    OffSubspace(u32),
}

/// Outcome of [`hyperplane_config_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneReport {
    /// `2W < |support|`.
    pub weight_inequality: bool,
    /// Smallest intersection of the support with an affine hyperplane
    /// avoiding `0`.
    pub min_affine_intersection: usize,
    /// `weight_inequality` and `min_affine_intersection >= 4`.
    pub passes: bool,
}

/// Support of a configuration: `G ∖ {0}` or `G ∖ span(e_0..e_{dim-1})`.
pub fn config_support(s: u32, config: HyperplaneConfig) -> Result<Vec<u32>, ModuliError> {
    let size = 1u32 << s;
    match config {
        HyperplaneConfig::AllNonzero => {
            if s < 3 {
                return Err(ModuliError::RankOutOfRange { s, min: 3 });
            }
            Ok((1..size).collect())
        }
        HyperplaneConfig::OffSubspace(dim) => {
            if s < 4 {
                return Err(ModuliError::RankOutOfRange { s, min: 4 });
            }
            if dim < 2 || dim >= s {
                return Err(ModuliError::SubspaceDimension { dim, s });
            }
            Ok((1..size).filter(|g| g >> dim != 0).collect())
        }
    }
}

/// Checks `W < |support|/2` and that every affine hyperplane avoiding `0`
/// meets the support in at least four points.
pub fn hyperplane_config_check(
    s: u32,
    weights: &Weights,
    config: HyperplaneConfig,
) -> Result<HyperplaneReport, ModuliError> {
    if s > MAX_RANK {
        return Err(ModuliError::RankOutOfRange { s, min: 3 });
    }
    let support = config_support(s, config)?;
    let rank = Rank::new(s).map_err(|_| ModuliError::RankOutOfRange { s, min: 3 })?;
    let elements: Vec<GroupElement> = support.iter().map(|&g| GroupElement(g)).collect();
    let min_affine_intersection = affine_hyperplane_min_intersection(&elements, rank);
    let weight_inequality = 2 * weights.sum() < support.len() as u128;
    Ok(HyperplaneReport {
        weight_inequality,
        min_affine_intersection,
        passes: weight_inequality && min_affine_intersection >= 4,
    })
}

/// The new-component example: `P(1,1,1,M)`, `s = 4`, `d(g_0) = 2` at
/// `g_0 = e_0` and `d = M` elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewComponent {
    /// The cover.
    pub cover: CoverSpec,
    /// `1 + 7M/2`, the value of `l` on characters with `χ·g_0 = 1`.
    pub l_odd: i128,
    /// `4M`, the value of `l` on the other nontrivial characters.
    pub l_even: i128,
    /// Whether the cover is flat (it never is).
    pub flat: bool,
    /// The deformation criteria.
    pub deformation: DeformationReport,
}

/// Builds the new-component example for even `M > 2`.
pub fn gen_new_component(m: u64) -> Result<NewComponent, ModuliError> {
    if m <= 2 || m % 2 != 0 || m > crate::cover::MAX_BRANCH_DEGREE as u64 {
        return Err(ModuliError::BadParameter(m));
    }
    let rank = Rank::new(4).expect("rank 4");
    let d = GroupFunction::from_fn(rank, |g| match g {
        0 => 0,
        1 => 2,
        _ => m as i64,
    });
    let weights = Weights::new([1, 1, 1, m]).map_err(|_| ModuliError::BadParameter(m))?;
    let branch = BranchData::new(d).map_err(|_| ModuliError::BadParameter(m))?;
    let cover = CoverSpec::new(weights, branch).map_err(|_| ModuliError::NotIntegral("l"))?;
    let deformation = deformation_criteria(&cover);
    Ok(NewComponent {
        l_odd: 1 + 7 * m as i128 / 2,
        l_even: 4 * m as i128,
        flat: is_flat(&cover),
        deformation,
        cover,
    })
}

/// The two unbounded non-flat families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnboundedKind {
    /// Canonical covers of `P(1,1,L,L)`.
    Canonical,
    /// Bicanonical covers of `P(1,1,L,L)`.
    Bicanonical,
}

impl UnboundedKind {
    /// The plurigenus index.
    pub fn m(self) -> u32 {
        match self {
            UnboundedKind::Canonical => 1,
            UnboundedKind::Bicanonical => 2,
        }
    }
}

/// One member of an unbounded family, with its closed-form data.
///
/// `d` equals `value` on the affine hyperplane `{g : g_0 = 1}` and
/// vanishes elsewhere; `χ_0 = e_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnboundedFamily {
    /// Which family.
    pub kind: UnboundedKind,
    /// The rank.
    pub s: u32,
    /// The base is `P(1,1,L,L)`.
    pub l_lcm: u64,
    /// The constant value of `d` on the hyperplane.
    pub value: u64,
    /// `D = value · 2^{s-1}`.
    pub d_total: u128,
    /// `l(χ_0) = D/2`.
    pub l_chi0: u128,
    /// `l(χ) = D/4` for the other nontrivial characters.
    pub l_other: u128,
    /// `M = (m/2)D - mW`.
    pub big_m: u128,
    /// `k = M/L`.
    pub k: u128,
    /// Whether `L` divides both `l`-values (true only at boundary ranks).
    pub flat: bool,
    /// Whether the closed-form pluricanonical test passes: `M = kL` and
    /// `M < l` everywhere.
    pub structural_ok: bool,
    /// The explicit cover, for `s <= 16`.
    pub cover: Option<CoverSpec>,
    /// The full pluricanonical report, for `s <= 16`.
    pub report: Option<PluricanonicalReport>,
}

/// `t` for the bicanonical family.
pub fn bicanonical_t(s: u32) -> u64 {
    match s {
        3 => 6,
        4 => 3,
        _ => match s % 4 {
            0 => 3,
            1 => 4,
            2 => 2,
            _ => 1,
        },
    }
}

/// Builds the member of rank `s` of an unbounded family.
///
/// Canonical: `s` even `>= 4` with `d = 2`, `L = (2^s - 4)/6`, or `s` odd
/// `>= 5` with `d = 1`, `L = (2^{s-1} - 4)/6`.  Bicanonical: `s >= 3`,
/// `d = t`, `L = (t 2^{s-1} - 4)/5`.  Ranks up to 16 also build the
/// explicit cover and run the full criterion; above that the closed forms
/// are checked.
pub fn gen_unbounded(s: u32, kind: UnboundedKind) -> Result<UnboundedFamily, ModuliError> {
    if s > 62 {
        return Err(ModuliError::RankOutOfRange { s, min: 3 });
    }
    let (value, numerator, divisor) = match kind {
        UnboundedKind::Canonical => {
            if s < 4 || (s % 2 == 1 && s < 5) {
                return Err(ModuliError::RankOutOfRange { s, min: 4 });
            }
            if s % 2 == 0 {
                (2u64, (1u128 << s) - 4, 6u128)
            } else {
                (1u64, (1u128 << (s - 1)) - 4, 6u128)
            }
        }
        UnboundedKind::Bicanonical => {
            if s < 3 {
                return Err(ModuliError::RankOutOfRange { s, min: 3 });
            }
            let t = bicanonical_t(s);
            (t, t as u128 * (1u128 << (s - 1)) - 4, 5u128)
        }
    };
    if numerator % divisor != 0 {
        return Err(ModuliError::NotIntegral("L"));
    }
    let l_lcm = u64::try_from(numerator / divisor).map_err(|_| ModuliError::NotIntegral("L"))?;
    let d_total = value as u128 * (1u128 << (s - 1));
    if d_total % 4 != 0 {
        return Err(ModuliError::NotIntegral("l"));
    }
    let l_chi0 = d_total / 2;
    let l_other = d_total / 4;
    let m = kind.m() as u128;
    let w = 2 * l_lcm as u128 + 2;
    let big_m = m * d_total / 2 - m * w;
    let lc = l_lcm as u128;
    let structural_ok = big_m > 0 && big_m % lc == 0 && big_m < l_other && big_m < l_chi0;
    let flat = l_chi0 % lc == 0 && l_other % lc == 0;
    let (cover, report) = if s <= MAX_RANK {
        let rank = Rank::new(s).expect("rank checked");
        let d = GroupFunction::from_fn(rank, |g| if g & 1 == 1 { value as i64 } else { 0 });
        let weights = Weights::new([1, 1, l_lcm, l_lcm]).map_err(|_| ModuliError::NotIntegral("L"))?;
        let branch = BranchData::new(d).map_err(|_| ModuliError::NotIntegral("d"))?;
        let cover = CoverSpec::new(weights, branch).map_err(|_| ModuliError::NotIntegral("l"))?;
        let report = is_pluricanonical(&cover, kind.m());
        (Some(cover), report)
    } else {
        (None, None)
    };
    Ok(UnboundedFamily {
        kind,
        s,
        l_lcm,
        value,
        d_total,
        l_chi0,
        l_other,
        big_m,
        k: big_m / lc,
        flat,
        structural_ok,
        cover,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(a: [u64; 4], s: u32, d: &[i64]) -> CoverSpec {
        CoverSpec::new(
            Weights::new(a).unwrap(),
            BranchData::from_nonzero(Rank::new(s).unwrap(), d).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn deformation_examples() {
        let nc = gen_new_component(4).unwrap();
        assert!(nc.deformation.passes());
        assert_eq!(nc.cover.total_degree(), 58);

        let r = deformation_criteria(&cover([1, 1, 1, 1], 2, &[6, 6, 6]));
        assert!(!r.pairwise_ok);
        assert!(r.failures.contains(&(3, 3)));

        // D = 8 = 2W exactly.
        let r = deformation_criteria(&cover([1, 1, 1, 1], 2, &[4, 2, 2]));
        assert!(!r.total_degree_ok);
    }

    #[test]
    fn hyperplane_examples() {
        let r = hyperplane_config_check(4, &Weights::projective_space(), HyperplaneConfig::AllNonzero).unwrap();
        assert!(r.passes);
        assert_eq!(r.min_affine_intersection, 8);
        let w = Weights::new([1, 1, 1, 2]).unwrap();
        let r = hyperplane_config_check(4, &w, HyperplaneConfig::OffSubspace(2)).unwrap();
        assert!(r.passes);
        assert_eq!(r.min_affine_intersection, 6);
        let w = Weights::new([1, 1, 2, 3]).unwrap();
        assert!(!hyperplane_config_check(3, &w, HyperplaneConfig::AllNonzero).unwrap().passes);
        assert!(hyperplane_config_check(2, &w, HyperplaneConfig::AllNonzero).is_err());
        assert!(hyperplane_config_check(4, &w, HyperplaneConfig::OffSubspace(1)).is_err());
    }

    #[test]
    fn new_component_values() {
        let nc = gen_new_component(4).unwrap();
        assert_eq!((nc.l_odd, nc.l_even, nc.flat), (15, 16, false));
        let l = nc.cover.eigensheaf_degrees();
        assert!((1..16u32).all(|chi| l.get(chi) == if chi & 1 == 1 { 15 } else { 16 }));
        let nc = gen_new_component(6).unwrap();
        assert_eq!((nc.l_odd, nc.l_even, nc.flat), (22, 24, false));
        assert!(gen_new_component(5).is_err());
        assert!(gen_new_component(2).is_err());
    }

    #[test]
    fn unbounded_examples() {
        let f = gen_unbounded(7, UnboundedKind::Canonical).unwrap();
        assert_eq!((f.l_lcm, f.l_chi0, f.l_other, f.flat), (10, 32, 16, false));
        assert!(f.report.is_some() && f.structural_ok);

        let f = gen_unbounded(3, UnboundedKind::Bicanonical).unwrap();
        assert_eq!((f.l_lcm, f.d_total, f.l_chi0, f.l_other), (4, 24, 12, 6));
        assert_eq!((f.big_m, f.k, f.flat), (4, 1, false));
        assert!(f.report.is_some());

        let f = gen_unbounded(5, UnboundedKind::Canonical).unwrap();
        assert_eq!((f.l_lcm, f.l_chi0, f.l_other, f.flat), (2, 8, 4, true));

        assert!(gen_unbounded(3, UnboundedKind::Canonical).is_err());
        assert!(gen_unbounded(2, UnboundedKind::Bicanonical).is_err());
    }
}
