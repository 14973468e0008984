//! Classification of flat pluricanonical covers.
//!
//! A cover of `P(a0..a3)` with branch degrees `d` is `m`-canonical when
//! `M = (m/2)D - mW` is a positive multiple `kL` of `L = lcm(a_i)` and
//! `h^0(O(M - l(χ))) = 0` for every nonzero character.  The engine here
//! enumerates all such covers (up to `GL_s(F_2)`) by
//!
//! 1. bounding `(k, L, W)` with the inequalities `W <= 2L + 2` (for
//!    `L >= 2`) and `W/L >= (k+1)(2 - 2^{1-s}) - k/m`, and using the
//!    identity `D = 2W + 2kL/m`;
//! 2. enumerating multiplicity profiles `n_i = #{χ ≠ 0 : l(χ) = i}`
//!    satisfying the first-moment, Plancherel and cubic-moment constraints
//!    of the Walsh transform ([`l_distribution_candidates`]);
//! 3. placing the exceptional `l`-values on characters up to symmetry and
//!    inverting the spectrum `d̂(χ) = D - 4l(χ)` ([`reconstruct_branch`]);
//!    non-integral inverses are discarded.
//!
//! Over `P(1,1,1,1)` a direct basis-normalised search over branch
//! functions replaces step 3 whenever the number of placements is too
//! large; both routes are filtered by the same moment constraints.
//!
//! Double covers (`s = 1`) have a trivial character group and are handled
//! in closed form by [`enumerate_s1`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::cover::{is_flat, BranchData, CoverSpec, EigensheafDegrees};
use crate::gf2::{canonicalize, orbit_key, GroupFunction, OrbitKey, Rank, MAX_EXACT_ORBIT_RANK};
use crate::walsh::{inverse, Spectrum};
use crate::wps::{monomial_count, well_formed, Weights};
use crate::Rational;

/// Placement counts above this threshold switch the `P(1,1,1,1)` pipeline
/// to the direct search.
pub const PLACEMENT_THRESHOLD: u128 = 2_000_000;

/// Largest `t` used when instantiating the unbounded double-cover families.
pub const DEFAULT_T_MAX: u64 = 10;

/// The data certifying that a cover is `m`-canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PluricanonicalReport {
    /// The plurigenus index `m`.
    pub m: u32,
    /// `D = Σ d(g)`.
    pub d_total: i128,
    /// `M = (m/2)D - mW`.
    pub big_m: i128,
    /// `k = M/L`.
    pub k: i128,
    /// The eigensheaf degrees.
    pub l: EigensheafDegrees,
    /// `p_m = h^0(O(M))`.
    pub plurigenus: u128,
    /// Whether `L` divides every `l(χ)`.
    pub flat: bool,
}

/// Checks the pluricanonical criterion with exact section vanishing.
///
/// Returns the report iff `M = (m/2)D - mW` is a positive integer divisible
/// by `L` and `h^0(O(M - l(χ))) = 0` for every `χ ≠ 0`.
pub fn is_pluricanonical(c: &CoverSpec, m: u32) -> Option<PluricanonicalReport> {
    if m == 0 {
        return None;
    }
    let w = c.weights();
    let d_total = c.total_degree();
    let twice_m = m as i128 * d_total - 2 * m as i128 * w.sum() as i128;
    if twice_m <= 0 || twice_m % 2 != 0 {
        return None;
    }
    let big_m = twice_m / 2;
    let lcm = w.lcm() as i128;
    if big_m % lcm != 0 {
        return None;
    }
    let l = c.eigensheaf_degrees();
    let distinct: BTreeSet<i128> = l.nonzero_values().iter().copied().collect();
    if distinct
        .iter()
        .any(|&value| monomial_count(w, big_m - value) != 0)
    {
        return None;
    }
    Some(PluricanonicalReport {
        m,
        d_total,
        big_m,
        k: big_m / lcm,
        l: l.clone(),
        plurigenus: monomial_count(w, big_m),
        flat: is_flat(c),
    })
}

/// `β = 2 - 2^{1-s}` as a rational.
fn beta(s: u32) -> Rational {
    Rational::new(
        BigInt::from((1u64 << s) - 1),
        BigInt::from(1u64 << (s - 1)),
    )
}

/// `(k+1)(2 - 2^{1-s}) - k/m`, the lower bound on `W/L`.
pub fn weight_ratio_lower_bound(s: u32, m: u32, k: u64) -> Rational {
    beta(s) * Rational::from_integer(BigInt::from(k + 1))
        - Rational::new(BigInt::from(k), BigInt::from(m))
}

/// The combinatorial bounds for flat solutions: `W <= 2L + 2` (when
/// `L >= 2`) and `W/L >= (k+1)(2 - 2^{1-s}) - k/m`.  The second bound is
/// the statement that `Σ_χ l(χ) = 2^{s-2}D` can carry the minimum
/// `l(χ) >= (k+1)L` on all `2^s - 1` characters.
pub fn bound_prune(s: u32, m: u32, l: u64, w: u64, k: u64) -> bool {
    if s == 0 || m == 0 || l == 0 || k == 0 {
        return false;
    }
    if l >= 2 && w > 2 * l + 2 {
        return false;
    }
    Rational::new(BigInt::from(w), BigInt::from(l)) >= weight_ratio_lower_bound(s, m, k)
}

/// Pairs `(s, m)` for which no flat solution with `L >= 2` exists.
pub fn forbidden_flat(s: u32, m: u32) -> bool {
    (s >= 2 && m >= 4) || (s >= 3 && m >= 3) || (s >= 4 && m >= 2) || s >= 6
}

/// `C - p + 1`: if every half-sum of a nonnegative function with total `C`
/// is at least `p`, every `t`-subset of its support with `t < s` carries
/// weight at most `C - p`, so the rank `s` is at most `C - p + 1`.
pub fn support_bound(total: u64, p: u64) -> u64 {
    total + 1 - p
}

/// Multiplicity profiles of a function: `m_i = #{g ≠ 0 : d(g) = i}` and
/// `n_i = #{χ ≠ 0 : l(χ) = i}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistributionCounts {
    /// Branch-degree multiplicities over nonzero elements (zero included).
    pub m_counts: BTreeMap<i64, u64>,
    /// Eigensheaf-degree multiplicities over nonzero characters.
    pub n_counts: BTreeMap<i128, u64>,
}

/// The multiplicity profiles of a cover.
pub fn distribution_counts(d: &GroupFunction, l: &EigensheafDegrees) -> DistributionCounts {
    let mut m_counts = BTreeMap::new();
    for &v in d.nonzero_values() {
        *m_counts.entry(v).or_insert(0) += 1;
    }
    DistributionCounts {
        m_counts,
        n_counts: n_counts_of(l.nonzero_values()),
    }
}

fn n_counts_of(values: &[i128]) -> BTreeMap<i128, u64> {
    let mut n = BTreeMap::new();
    for &v in values {
        *n.entry(v).or_insert(0) += 1;
    }
    n
}

/// `2^{-s}(D³ + Σ_i (D - 4i)³ n_i)`, the ordered zero-sum triple count of
/// any function with these eigensheaf degrees.
pub fn cubic_moment(s: u32, d_total: i128, n: &BTreeMap<i128, u64>) -> Rational {
    let d = BigInt::from(d_total);
    let mut sum = &d * &d * &d;
    for (&i, &count) in n {
        let v = BigInt::from(d_total - 4 * i);
        sum += &v * &v * &v * BigInt::from(count);
    }
    Rational::new(sum, BigInt::one() << s as usize)
}

/// All `n`-profiles over `2^s - 1` characters with values in
/// `[min_l, D/2]` that satisfy
///
/// * `Σ n_i = 2^s - 1`,
/// * `Σ i n_i = 2^{s-2} D` (first moment),
/// * `Σ (D - 4i)² n_i = 2^s Σd² - D²` (Plancherel),
/// * `2^{-s}(D³ + Σ (D - 4i)³ n_i) >= 0` (cubic moment).
pub fn l_distribution_candidates(
    s: u32,
    d_total: u64,
    min_l: u64,
    sum_d_squared: u64,
) -> Vec<BTreeMap<i128, u64>> {
    let d = d_total as i128;
    let plancherel = (1i128 << s) * sum_d_squared as i128 - d * d;
    let values: Vec<i128> = (min_l as i128..=d / 2).collect();
    let mut out = Vec::new();
    let targets = Targets {
        count: (1i128 << s) - 1,
        first: (d << s) / 4,
        second: Some(plancherel),
    };
    let mut current = vec![0u64; values.len()];
    profile_search(&values, d, &targets, 0, 0, 0, 0, &mut current, &mut out);
    out.retain(|n| !cubic_moment(s, d, n).is_negative());
    out
}

/// Profiles with values restricted to `values` satisfying the count and
/// first-moment constraints only (used for flat cells, where `Σd²` is
/// not fixed in advance).
fn flat_l_candidates(s: u32, d_total: i128, values: &[i128]) -> Vec<BTreeMap<i128, u64>> {
    let targets = Targets {
        count: (1i128 << s) - 1,
        first: (d_total << s) / 4,
        second: None,
    };
    let mut out = Vec::new();
    let mut current = vec![0u64; values.len()];
    profile_search(values, d_total, &targets, 0, 0, 0, 0, &mut current, &mut out);
    out.retain(|n| !cubic_moment(s, d_total, n).is_negative());
    out
}

struct Targets {
    count: i128,
    first: i128,
    second: Option<i128>,
}

#[allow(clippy::too_many_arguments)]
fn profile_search(
    values: &[i128],
    d: i128,
    targets: &Targets,
    index: usize,
    count: i128,
    first: i128,
    second: i128,
    current: &mut Vec<u64>,
    out: &mut Vec<BTreeMap<i128, u64>>,
) {
    let remaining = targets.count - count;
    if index == values.len() {
        if remaining == 0
            && first == targets.first
            && targets.second.is_none_or(|t| t == second)
        {
            let n = values
                .iter()
                .zip(current.iter())
                .filter(|(_, &c)| c > 0)
                .map(|(&v, &c)| (v, c))
                .collect();
            out.push(n);
        }
        return;
    }
    let rest = &values[index..];
    // Bounds on what the remaining characters can still contribute.
    let lo = rest[0];
    let hi = rest[rest.len() - 1];
    if first + remaining * lo > targets.first || first + remaining * hi < targets.first {
        return;
    }
    if let Some(t) = targets.second {
        let min_sq = rest.iter().map(|&v| (d - 4 * v).pow(2)).min().unwrap_or(0);
        if second + remaining * min_sq > t {
            return;
        }
        let max_sq = rest.iter().map(|&v| (d - 4 * v).pow(2)).max().unwrap_or(0);
        if second + remaining * max_sq < t {
            return;
        }
    }
    let v = values[index];
    let sq = (d - 4 * v).pow(2);
    let max_here = if index + 1 == values.len() {
        remaining
    } else {
        remaining.min(if v > 0 { (targets.first - first) / v } else { remaining })
    };
    let start = if index + 1 == values.len() { remaining } else { 0 };
    let mut c = start;
    while c <= max_here {
        current[index] = c as u64;
        profile_search(
            values,
            d,
            targets,
            index + 1,
            count + c,
            first + c * v,
            second + c * sq,
            current,
            out,
        );
        c += 1;
    }
    current[index] = 0;
}

/// A representative of an orbit: the canonical form when available.
fn representative(d: GroupFunction) -> GroupFunction {
    canonicalize(&d).unwrap_or(d)
}

/// Orbit key together with a representative, canonicalising only once.
fn keyed(d: GroupFunction) -> (OrbitKey, GroupFunction) {
    match orbit_key(&d) {
        OrbitKey::Exact(c) => (OrbitKey::Exact(c.clone()), c),
        key => (key, d),
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Background value and exceptional classes ordered by `(count, value)`.
fn split_profile(n: &BTreeMap<i128, u64>) -> (i128, Vec<(i128, u64)>) {
    let (&background, _) = n
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .expect("nonempty profile");
    let mut classes: Vec<(i128, u64)> = n
        .iter()
        .filter(|(&v, _)| v != background)
        .map(|(&v, &c)| (v, c))
        .collect();
    classes.sort_by_key(|&(v, c)| (c, v));
    (background, classes)
}

/// Number of symmetry-reduced placements of the exceptional values.
pub fn placement_count(s: u32, n: &BTreeMap<i128, u64>) -> u128 {
    let (_, classes) = split_profile(n);
    let mut free = (1u128 << s) - 1;
    let mut fixed = 0u128;
    let mut total: u128 = 1;
    for (_, count) in classes {
        let mut c = count as u128;
        while fixed < 2 && c > 0 {
            fixed += 1;
            c -= 1;
            free -= 1;
        }
        total = total.saturating_mul(binomial(free, c));
        free -= c;
    }
    total
}

/// All `GL`-orbits of branch functions with `Σ d = D` and the prescribed
/// `l`-profile.
///
/// The most frequent value is the background; exceptional values are
/// placed on characters with the first two positions fixed to `χ = 1`
/// and `χ = 2` (the group acts transitively on ordered pairs of distinct
/// nonzero characters).  Each placement gives `d̂(χ) = D - 4l(χ)`; the
/// inverse transform must be integral and nonnegative.  Outputs are
/// canonical forms (orbit signatures decide equality above rank 5),
/// sorted.
pub fn reconstruct_branch(s: u32, d_total: u64, n: &BTreeMap<i128, u64>) -> Vec<GroupFunction> {
    let rank = match Rank::new(s) {
        Ok(r) => r,
        Err(_) => return Vec::new(),
    };
    let size = rank.order();
    let total: u64 = n.values().sum();
    if total as usize != size - 1 {
        return Vec::new();
    }
    let (background, classes) = split_profile(n);
    let mut assignment = vec![background; size];
    assignment[0] = 0;
    let mut used = vec![false; size];
    used[0] = true;
    let mut found: BTreeMap<OrbitKey, GroupFunction> = BTreeMap::new();
    let mut state = Placement {
        rank,
        d_total: d_total as i128,
        classes: &classes,
        assignment: &mut assignment,
        used: &mut used,
        background,
        found: &mut found,
    };
    state.place(0, 0, 0, 1);
    found.into_values().collect()
}

struct Placement<'a> {
    rank: Rank,
    d_total: i128,
    classes: &'a [(i128, u64)],
    assignment: &'a mut Vec<i128>,
    used: &'a mut Vec<bool>,
    background: i128,
    found: &'a mut BTreeMap<OrbitKey, GroupFunction>,
}

impl Placement<'_> {
    /// Places the `placed`-th element of class `class`, choosing positions
    /// at or after `start`; `fixed` counts the symmetry-fixed positions
    /// used so far.
    fn place(&mut self, class: usize, placed: u64, fixed: u32, start: usize) {
        if class == self.classes.len() {
            self.evaluate();
            return;
        }
        let (value, count) = self.classes[class];
        if placed == count {
            self.place(class + 1, 0, fixed, 1);
            return;
        }
        if fixed < 2 {
            // χ = 1 then χ = 2.
            let chi = fixed as usize + 1;
            self.assignment[chi] = value;
            self.used[chi] = true;
            self.place(class, placed + 1, fixed + 1, chi + 1);
            self.used[chi] = false;
            self.assignment[chi] = self.background;
            return;
        }
        let size = self.assignment.len();
        for chi in start..size {
            if self.used[chi] {
                continue;
            }
            self.assignment[chi] = value;
            self.used[chi] = true;
            self.place(class, placed + 1, fixed, chi + 1);
            self.used[chi] = false;
            self.assignment[chi] = self.background;
        }
    }

    fn evaluate(&mut self) {
        let values: Vec<i128> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(chi, &l)| if chi == 0 { self.d_total } else { self.d_total - 4 * l })
            .collect();
        let spectrum = Spectrum::new(self.rank, values).expect("full table");
        let Ok(d) = inverse(&spectrum) else {
            return;
        };
        if d.get(0) != 0 || d.values().iter().any(|&v| v < 0) {
            return;
        }
        let (key, rep) = keyed(d);
        self.found.entry(key).or_insert(rep);
    }
}

/// Exhaustive search over branch functions on `P(1,1,1,1)` with
/// `Σ d = D`, every half-sum at least `2 min_l` and every value at most
/// `D - 2 min_l`, normalised so that the standard basis lies in the
/// support with `d(e_0) >= d(e_1) >= … >= 1` (the support spans `G`, and
/// permutations of a basis are linear).  Results are filtered by
/// `accept` on the sorted nonzero `l`-values and deduplicated by orbit.
pub fn direct_search(
    s: u32,
    d_total: u64,
    min_l: u64,
    accept: &dyn Fn(&BTreeMap<i128, u64>) -> bool,
) -> Vec<GroupFunction> {
    let rank = match Rank::new(s) {
        Ok(r) => r,
        Err(_) => return Vec::new(),
    };
    let size = rank.order();
    let cap = d_total as i64 - 2 * min_l as i64;
    if cap < 1 || (d_total as usize) < s as usize {
        return Vec::new();
    }
    let mut order: Vec<u32> = (0..s).map(|i| 1u32 << i).collect();
    order.extend((1..size as u32).filter(|g| !g.is_power_of_two()));
    let mut search = Direct {
        s,
        order,
        values: vec![0i64; size],
        half: vec![0i64; size],
        need: 2 * min_l as i64,
        cap,
        accept,
        found: BTreeMap::new(),
    };
    search.go(0, d_total as i64, cap);
    search.found.into_values().collect()
}

struct Direct<'a> {
    s: u32,
    order: Vec<u32>,
    values: Vec<i64>,
    half: Vec<i64>,
    need: i64,
    cap: i64,
    accept: &'a dyn Fn(&BTreeMap<i128, u64>) -> bool,
    found: BTreeMap<OrbitKey, GroupFunction>,
}

impl Direct<'_> {
    fn add(&mut self, g: u32, v: i64) {
        for chi in 1..self.half.len() {
            if (chi as u32 & g).count_ones() & 1 == 1 {
                self.half[chi] += v;
            }
        }
    }

    fn feasible(&self, remaining: i64) -> bool {
        self.half[1..].iter().all(|&h| h + remaining >= self.need)
    }

    fn go(&mut self, pos: usize, remaining: i64, prev_basis: i64) {
        if !self.feasible(remaining) {
            return;
        }
        if remaining == 0 {
            self.emit();
            return;
        }
        if pos == self.order.len() {
            return;
        }
        let g = self.order[pos];
        let is_basis = pos < self.s as usize;
        // Basis elements must still leave one unit for each later basis
        // element.
        let later_basis = (self.s as usize).saturating_sub(pos + 1) as i64;
        let (lo, hi) = if is_basis {
            (1, prev_basis.min(remaining - later_basis).min(self.cap))
        } else {
            (0, remaining.min(self.cap))
        };
        let mut v = hi;
        while v >= lo {
            self.values[g as usize] = v;
            self.add(g, v);
            let next_prev = if is_basis { v } else { prev_basis };
            self.go(pos + 1, remaining - v, next_prev);
            self.add(g, -v);
            self.values[g as usize] = 0;
            v -= 1;
        }
    }

    fn emit(&mut self) {
        if self.half[1..].iter().any(|&h| h & 1 != 0) {
            return;
        }
        let l: Vec<i128> = self.half[1..].iter().map(|&h| (h / 2) as i128).collect();
        if !(self.accept)(&n_counts_of(&l)) {
            return;
        }
        let rank = Rank::new(self.s).expect("validated rank");
        let d = GroupFunction::new(rank, self.values.clone()).expect("full table");
        let (key, rep) = keyed(d);
        self.found.entry(key).or_insert(rep);
    }
}

/// Why a solution carries a note.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SolutionNote {
    /// The `(m, k, D) = (1, 1, 10)` case over `P(1,1,1,1)`, which has no
    /// tabulated listing to compare against.
    DeferredCase,
    /// The all-ones orbit with nine nonzero values for `s = 4`, `m = 2`,
    /// `D = 9`: it exists but the itemised listing records only the other
    /// orbit.
    UnlistedOrbit,
}

impl SolutionNote {
    /// A short human-readable description.
    pub fn describe(self) -> &'static str {
        match self {
            SolutionNote::DeferredCase => "no reference listing to compare",
            SolutionNote::UnlistedOrbit => "present in the case analysis, absent from the item listing",
        }
    }
}

/// One classified pluricanonical cover, up to `GL_s(F_2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleSolution {
    /// The base weights.
    pub weights: Weights,
    /// The rank `s`.
    pub rank: Rank,
    /// The plurigenus index.
    pub m: u32,
    /// `k = M/L`.
    pub k: i128,
    /// Canonical branch function (exact canonical form for `s <= 5`).
    pub d: GroupFunction,
    /// Eigensheaf degrees of `d`.
    pub l: EigensheafDegrees,
    /// `p_m = h^0(O(kL))`.
    pub plurigenus: u128,
    /// Whether the cover is flat.
    pub flat: bool,
    /// Whether `d` is an exact canonical form (false above rank 5).
    pub exact_orbit: bool,
    /// Optional provenance note.
    pub note: Option<SolutionNote>,
}

impl AdmissibleSolution {
    /// Builds a solution from a cover that passes the criterion.
    pub fn from_cover(c: &CoverSpec, m: u32) -> Option<Self> {
        let report = is_pluricanonical(c, m)?;
        let exact = c.rank().get() <= MAX_EXACT_ORBIT_RANK;
        let d = representative(c.branch().degrees().clone());
        Some(AdmissibleSolution {
            weights: *c.weights(),
            rank: c.rank(),
            m,
            k: report.k,
            d,
            l: report.l,
            plurigenus: report.plurigenus,
            flat: report.flat,
            exact_orbit: exact,
            note: None,
        })
    }

    /// The cover this solution describes.
    pub fn cover(&self) -> CoverSpec {
        CoverSpec::new(
            self.weights,
            BranchData::new(self.d.clone()).expect("solutions carry valid branch data"),
        )
        .expect("solutions carry integral eigensheaf degrees")
    }

    /// `D = Σ d(g)`.
    pub fn d_total(&self) -> i128 {
        self.d.total()
    }

    /// The orbit-defining characters of the canonical representative:
    /// those whose `l`-value differs from the most frequent one (for
    /// instance the distinguished `χ_0` of an almost-uniform solution).
    pub fn exceptional_characters(&self) -> Vec<u32> {
        let n = n_counts_of(self.l.nonzero_values());
        let Some((&background, _)) = n.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))) else {
            return Vec::new();
        };
        (1..self.rank.order() as u32)
            .filter(|&chi| self.l.get(chi) != background)
            .collect()
    }

    fn sort_key(&self) -> (u32, u32, [u64; 4], i128, Vec<i64>) {
        (
            self.rank.get(),
            self.m,
            self.weights.get(),
            self.k,
            self.d.values().to_vec(),
        )
    }
}

/// Sorts solutions canonically by `(s, m, weights, k, d)` and removes
/// duplicates, so merged results do not depend on evaluation order.
pub fn sort_solutions(v: &mut Vec<AdmissibleSolution>) {
    v.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    v.dedup_by(|a, b| a.sort_key() == b.sort_key());
}

/// Solutions of `Σ_{i=1}^{terms} 1/b_i = num/den` with `b` nondecreasing.
pub fn egyptian_decompositions(num: u64, den: u64, terms: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(terms);
    egyptian_rec(num as u128, den as u128, terms, 1, &mut prefix, &mut out);
    out
}

fn egyptian_rec(
    num: u128,
    den: u128,
    terms: usize,
    min_b: u128,
    prefix: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if num == 0 {
        return;
    }
    let g = num.gcd(&den);
    let (num, den) = (num / g, den / g);
    if terms == 1 {
        if num == 1 && den >= min_b {
            prefix.push(den as u64);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    // 1/b <= num/den  and  terms/b >= num/den.
    let lo = min_b.max(den.div_ceil(num));
    let hi = (terms as u128 * den) / num;
    for b in lo..=hi {
        // num/den - 1/b = (num b - den)/(den b)
        let n2 = num * b;
        if n2 < den {
            continue;
        }
        let rest = n2 - den;
        prefix.push(b as u64);
        if rest == 0 {
            // Remaining terms would have to vanish.
        } else {
            egyptian_rec(rest, den * b, terms - 1, b, prefix, out);
        }
        prefix.pop();
    }
}

/// Well-formed weights with `W/L = num/den`: for each solution `b` of
/// `Σ 1/b_i = num/den` with `gcd(b) = 1`, `a_i = lcm(b)/b_i`.
pub fn weights_with_ratio(num: u64, den: u64) -> Vec<Weights> {
    let mut out: BTreeSet<Weights> = BTreeSet::new();
    for b in egyptian_decompositions(num, den, 4) {
        let l = b.iter().fold(1u64, |acc, &x| acc.lcm(&x));
        let mut a = [0u64; 4];
        for i in 0..4 {
            a[i] = l / b[i];
        }
        if a.iter().fold(1u64, |acc, &x| acc.lcm(&x)) != l {
            continue;
        }
        if let Ok(w) = Weights::new(a) {
            out.insert(w);
        }
    }
    out.into_iter().collect()
}

/// Well-formed weights with `lcm = l` and `sum = w`.
pub fn weights_with_lcm_and_sum(l: u64, w: u64) -> Vec<Weights> {
    let divisors: Vec<u64> = (1..=l).filter(|x| l % x == 0).collect();
    let mut out = Vec::new();
    let n = divisors.len();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let partial = divisors[i] + divisors[j] + divisors[k];
                if partial >= w {
                    continue;
                }
                let last = w - partial;
                if last < divisors[k] || l % last != 0 {
                    continue;
                }
                let a = [divisors[i], divisors[j], divisors[k], last];
                if a.iter().fold(1u64, |acc, &x| acc.lcm(&x)) != l || !well_formed(a) {
                    continue;
                }
                out.push(Weights::new(a).expect("checked well-formed"));
            }
        }
    }
    out
}

/// A double-cover family `d = 2Lt` over a fixed base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct S1Family {
    /// The base weights.
    pub weights: Weights,
    /// The plurigenus index.
    pub m: u32,
    /// `mW/L` (an integer since `L | mW`).
    pub j: u64,
    /// Smallest admissible `t`.
    pub t_min: u64,
    /// Largest admissible `t`; `None` for the unbounded `m = 1` families.
    pub t_max: Option<u64>,
    /// Whether the tuple satisfies the divisibility filter `m - 1 | 2W`.
    pub passes_divisibility: bool,
}

impl S1Family {
    /// `2L`, so that `d = 2Lt`.
    pub fn degree_coefficient(&self) -> u128 {
        2 * self.weights.lcm()
    }

    /// `k = mt - mW/L`.
    pub fn k(&self, t: u64) -> i128 {
        self.m as i128 * t as i128 - self.j as i128
    }

    /// The solution at parameter `t`.
    pub fn instantiate(&self, t: u64) -> Option<AdmissibleSolution> {
        let rank = Rank::new(1).expect("rank 1");
        let d = i64::try_from(self.degree_coefficient() * t as u128).ok()?;
        let branch = BranchData::from_nonzero(rank, &[d]).ok()?;
        let cover = CoverSpec::new(self.weights, branch).ok()?;
        AdmissibleSolution::from_cover(&cover, self.m)
    }
}

/// Double covers (`s = 1`): flat `m`-canonical families.
///
/// With `l = d/2`, flatness forces `d = 2Lt`, and then
/// `M = m(Lt - W)` must be a positive multiple of `L`, i.e. `L | mW` and
/// `t > W/L`.  For `m = 1` every `t > W/L` works (`M - l = -W < 0`); for
/// `m >= 2` the vanishing `M < l` bounds `t < mW/((m-1)L)`.  `W/L <= 4`
/// always, and the weights come from 4-term Egyptian-fraction expansions
/// of `W/L`.  Families failing `m - 1 | 2W` are returned with
/// `passes_divisibility = false` so callers can report them separately.
pub fn enumerate_s1(m: u32) -> Vec<S1Family> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let m64 = m as u64;
    for j in 1..=4 * m64 {
        // W/L = j/m; t must lie strictly between j/m and j/(m-1).
        let t_min = j / m64 + 1;
        let t_max = if m == 1 {
            None
        } else {
            let upper = j / (m64 - 1) - u64::from(j % (m64 - 1) == 0);
            if upper < t_min {
                continue;
            }
            Some(upper)
        };
        if m == 1 && j > 4 {
            continue;
        }
        for w in weights_with_ratio(j, m64) {
            let passes = m == 1 || (2 * w.sum()) % (m as u128 - 1) == 0;
            out.push(S1Family {
                weights: w,
                m,
                j,
                t_min,
                t_max,
                passes_divisibility: passes,
            });
        }
    }
    out.sort_by_key(|f| (f.weights, f.j));
    out
}

/// Instantiated double-cover solutions for `t <= t_max`, restricted by the
/// predicate on weights.
fn s1_solutions(m: u32, t_max: u64, keep: impl Fn(&Weights) -> bool) -> Vec<AdmissibleSolution> {
    let mut out = Vec::new();
    for family in enumerate_s1(m) {
        if !family.passes_divisibility || !keep(&family.weights) {
            continue;
        }
        let hi = family.t_max.unwrap_or(t_max).min(t_max);
        for t in family.t_min..=hi {
            if let Some(sol) = family.instantiate(t) {
                out.push(sol);
            }
        }
    }
    sort_solutions(&mut out);
    out
}

/// One `(k, L, W)` cell of the flat search.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlatCell {
    /// The rank.
    pub s: u32,
    /// The plurigenus index.
    pub m: u32,
    /// `k = M/L`.
    pub k: u64,
    /// `L`.
    pub l: u64,
    /// `W`.
    pub w: u64,
}

impl FlatCell {
    /// `D = 2W + 2kL/m`, when integral.
    pub fn d_total(&self) -> Option<u64> {
        let num = 2 * self.k * self.l;
        if num % self.m as u64 != 0 {
            return None;
        }
        Some(2 * self.w + num / self.m as u64)
    }
}

/// The provenance of a flat search: the inequalities and the cells they
/// leave.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatBounds {
    /// The rank.
    pub s: u32,
    /// The plurigenus index.
    pub m: u32,
    /// Per `k`: the lower bound `c_k` on `W/L`.
    pub ratio_bounds: Vec<(u64, Rational)>,
    /// All cells `(k, L, W)` left by the bounds.
    pub cells: Vec<FlatCell>,
    /// Human-readable statement of every rule used.
    pub rules: Vec<String>,
}

/// The finite set of `(k, L, W)` cells for flat solutions with `L >= 2`.
///
/// With `c = (k+1)(2 - 2^{1-s}) - k/m` we need `cL <= W <= 2L + 2`.
/// `c` increases with `k` and is at least 2; `c <= 3` bounds `k`.  For
/// `c > 2` this bounds `L <= 2/(c - 2)`.  `c = 2` happens only for
/// `(s, m, k) = (2, 1, 1)`: then `W = 2L` comes from `Σ 1/b_i = 2`, and
/// `W = 2L + j` (`j = 1, 2`) needs `L | D = 6L + 2j`, so `L | 2j`.
pub fn flat_bounds(s: u32, m: u32) -> FlatBounds {
    let mut ratio_bounds = Vec::new();
    let mut cells = Vec::new();
    let mut rules = vec![
        String::from("W <= 2L + 2 for L >= 2, hence W/L <= 3"),
        String::from("W/L >= (k+1)(2 - 2^(1-s)) - k/m  (sum of l over characters is 2^(s-2) D, each l >= (k+1)L)"),
        String::from("D = 2W + 2kL/m must be an integer"),
        String::from("L | l for every character (flatness); s = 2 forces L | D"),
    ];
    if s < 2 || m == 0 {
        rules.push(String::from("s = 1 is handled in closed form"));
        return FlatBounds {
            s,
            m,
            ratio_bounds,
            cells,
            rules,
        };
    }
    let three = Rational::from_integer(BigInt::from(3));
    let two = Rational::from_integer(BigInt::from(2));
    let mut k = 1u64;
    loop {
        let c = weight_ratio_lower_bound(s, m, k);
        if c > three {
            break;
        }
        ratio_bounds.push((k, c.clone()));
        if c == two {
            for w in weights_with_ratio(2, 1) {
                let l = w.lcm() as u64;
                cells.push(FlatCell { s, m, k, l, w: 2 * l });
            }
            for j in 1..=2u64 {
                for l in 2..=2 * j {
                    if (2 * j) % l == 0 {
                        cells.push(FlatCell { s, m, k, l, w: 2 * l + j });
                    }
                }
            }
            rules.push(format!(
                "k = {k}: c = 2, W = 2L from 1/b sums equal to 2; W = 2L + j needs L | 2j"
            ));
        } else {
            let excess = &c - &two;
            let l_max = (&two / &excess).floor().to_integer();
            let l_max: u64 = l_max.try_into().unwrap_or(0);
            for l in 2..=l_max {
                let w_min = (&c * Rational::from_integer(BigInt::from(l)))
                    .ceil()
                    .to_integer();
                let w_min: u64 = w_min.try_into().unwrap_or(u64::MAX);
                for w in w_min..=2 * l + 2 {
                    cells.push(FlatCell { s, m, k, l, w });
                }
            }
            rules.push(format!("k = {k}: c = {c}, 2 <= L <= {l_max}, ceil(cL) <= W <= 2L + 2"));
        }
        k += 1;
    }
    cells.sort();
    cells.dedup();
    cells.retain(|cell| bound_prune(s, m, cell.l, cell.w, cell.k));
    FlatBounds {
        s,
        m,
        ratio_bounds,
        cells,
        rules,
    }
}

/// Solutions in one flat cell.
pub fn solve_flat_cell(cell: &FlatCell) -> Vec<AdmissibleSolution> {
    let mut out = Vec::new();
    let Some(d_total) = cell.d_total() else {
        return out;
    };
    let s = cell.s;
    let l = cell.l as i128;
    let d = d_total as i128;
    let sum_l = (d << s) / 4;
    if (d << s) % 4 != 0 || sum_l % l != 0 {
        return out;
    }
    if s == 2 {
        debug_assert!(d % l == 0);
    }
    let weights = weights_with_lcm_and_sum(cell.l, cell.w);
    if weights.is_empty() {
        return out;
    }
    let min_l = (cell.k as i128 + 1) * l;
    let values: Vec<i128> = (min_l..=d / 2).filter(|v| v % l == 0).collect();
    if values.is_empty() {
        return out;
    }
    for n in flat_l_candidates(s, d, &values) {
        for branch in reconstruct_branch(s, d_total, &n) {
            let Ok(branch) = BranchData::new(branch) else {
                continue;
            };
            for w in &weights {
                let Ok(cover) = CoverSpec::new(*w, branch.clone()) else {
                    continue;
                };
                if let Some(sol) = AdmissibleSolution::from_cover(&cover, cell.m) {
                    if sol.flat && sol.k == cell.k as i128 {
                        out.push(sol);
                    }
                }
            }
        }
    }
    out
}

/// All flat `m`-canonical covers of rank `s` over bases with `L >= 2`.
///
/// For `s = 1` the double-cover families are instantiated for
/// `t <= DEFAULT_T_MAX`.
pub fn enumerate_flat(s: u32, m: u32) -> Vec<AdmissibleSolution> {
    if s == 1 {
        return s1_solutions(m, DEFAULT_T_MAX, |w| w.lcm() >= 2);
    }
    let mut out: Vec<AdmissibleSolution> = flat_bounds(s, m)
        .cells
        .iter()
        .flat_map(solve_flat_cell)
        .collect();
    sort_solutions(&mut out);
    out
}

/// One case of the `P(1,1,1,1)` analysis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct L1Case {
    /// The plurigenus index.
    pub m: u32,
    /// `k = M`.
    pub k: u64,
    /// `D = 8 + 2k/m`.
    pub d_total: u64,
    /// Smallest rank (always 2; `s = 1` is closed form).
    pub s_min: u32,
    /// Largest rank allowed by `(k+1)(2 - 2^{1-s}) - k/m <= 4`, if that
    /// inequality bounds `s` at all.
    pub s_max_ratio: Option<u32>,
    /// `D - 2(k+1) + 1`, from the support argument.
    pub s_max_support: u32,
}

impl L1Case {
    /// The effective largest rank.
    pub fn s_max(&self) -> u32 {
        self.s_max_ratio
            .map_or(self.s_max_support, |r| r.min(self.s_max_support))
    }

    /// `min l = k + 1`.
    pub fn min_l(&self) -> u64 {
        self.k + 1
    }
}

/// The `(m, k, D)` cases over `P(1,1,1,1)` for `s >= 2`: `m | 2k`,
/// `D = 8 + 2k/m`, `l >= k + 1` with `l <= D/2`, and
/// `(k+1)(2 - 2^{1-s}) - k/m <= 4` for some `s >= 2`.
pub fn l1_cases() -> Vec<L1Case> {
    let four = Rational::from_integer(BigInt::from(4));
    let mut out = Vec::new();
    // At s = 2 the bound reads (k+1)·3/2 - k/m <= 4, so k <= 5 for every
    // m; the loops below are generous and filtered exactly.
    for m in 1..=16u32 {
        for k in 1..=16u64 {
            if (2 * k) % m as u64 != 0 {
                continue;
            }
            let d_total = 8 + 2 * k / m as u64;
            if 2 * (k + 1) > d_total {
                continue;
            }
            if weight_ratio_lower_bound(2, m, k) > four {
                continue;
            }
            // Limit as s → ∞ is 2(k+1) - k/m.
            let limit = Rational::from_integer(BigInt::from(2 * (k + 1)))
                - Rational::new(BigInt::from(k), BigInt::from(m));
            let s_max_ratio = if limit <= four {
                None
            } else {
                let mut s = 2;
                while weight_ratio_lower_bound(s + 1, m, k) <= four {
                    s += 1;
                }
                Some(s)
            };
            let s_max_support = support_bound(d_total, 2 * (k + 1)) as u32;
            out.push(L1Case {
                m,
                k,
                d_total,
                s_min: 2,
                s_max_ratio,
                s_max_support,
            });
        }
    }
    out.sort();
    out
}

/// Partitions of `total` into parts (descending) with between `min_parts`
/// and `max_parts` parts whose largest `top` parts sum to at most
/// `top_cap`.
pub fn branch_profiles(
    total: u64,
    min_parts: usize,
    max_parts: usize,
    top: usize,
    top_cap: u64,
) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    partitions(total, total, max_parts, &mut current, &mut out);
    out.retain(|p| {
        p.len() >= min_parts && p.iter().take(top).sum::<u64>() <= top_cap
    });
    out
}

fn partitions(rest: u64, max_part: u64, max_parts: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    if cur.len() == max_parts {
        return;
    }
    let mut p = max_part.min(rest);
    while p >= 1 {
        cur.push(p);
        partitions(rest - p, p, max_parts, cur, out);
        cur.pop();
        p -= 1;
    }
}

/// The `l`-profiles admissible for a `P(1,1,1,1)` case at rank `s`, over
/// all branch profiles allowed by the support argument.
pub fn l1_candidate_profiles(case: &L1Case, s: u32) -> BTreeSet<BTreeMap<i128, u64>> {
    let min_l = case.min_l();
    let max_parts = ((1u64 << s) - 1).min(case.d_total) as usize;
    let profiles = branch_profiles(
        case.d_total,
        s as usize,
        max_parts,
        (s - 1) as usize,
        case.d_total - 2 * min_l,
    );
    let mut all = BTreeSet::new();
    for p in profiles {
        let sq: u64 = p.iter().map(|x| x * x).sum();
        for n in l_distribution_candidates(s, case.d_total, min_l, sq) {
            all.insert(n);
        }
    }
    all
}

fn l1_note(case: &L1Case, s: u32, d: &GroupFunction) -> Option<SolutionNote> {
    if case.m == 1 && case.k == 1 {
        return Some(SolutionNote::DeferredCase);
    }
    if case.m == 2 && case.k == 1 && s == 4 && d.nonzero_values().iter().all(|&v| v <= 1) {
        return Some(SolutionNote::UnlistedOrbit);
    }
    None
}

/// Solutions of one `P(1,1,1,1)` case at rank `s`.
pub fn solve_l1_case(case: &L1Case, s: u32) -> Vec<AdmissibleSolution> {
    let mut out = Vec::new();
    if s < case.s_min || s > case.s_max() {
        return out;
    }
    let candidates = l1_candidate_profiles(case, s);
    if candidates.is_empty() {
        return out;
    }
    let total_placements: u128 = candidates
        .iter()
        .map(|n| placement_count(s, n))
        .fold(0u128, |a, b| a.saturating_add(b));
    let branches: Vec<GroupFunction> = if total_placements <= PLACEMENT_THRESHOLD {
        let mut found: BTreeMap<OrbitKey, GroupFunction> = BTreeMap::new();
        for n in &candidates {
            for d in reconstruct_branch(s, case.d_total, n) {
                let (key, rep) = keyed(d);
                found.entry(key).or_insert(rep);
            }
        }
        found.into_values().collect()
    } else {
        direct_search(s, case.d_total, case.min_l(), &|n| candidates.contains(n))
    };
    let p3 = Weights::projective_space();
    for d in branches {
        let Ok(branch) = BranchData::new(d) else {
            continue;
        };
        let Ok(cover) = CoverSpec::new(p3, branch) else {
            continue;
        };
        if let Some(mut sol) = AdmissibleSolution::from_cover(&cover, case.m) {
            if sol.k == case.k as i128 {
                sol.note = l1_note(case, s, &sol.d);
                out.push(sol);
            }
        }
    }
    out
}

/// All `m`-canonical covers of `P(1,1,1,1)` of rank `s`.
///
/// For `s = 1` the double covers `d = 2t` are instantiated for
/// `t <= DEFAULT_T_MAX`.
pub fn enumerate_l1(s: u32, m: u32) -> Vec<AdmissibleSolution> {
    if s == 1 {
        return s1_solutions(m, DEFAULT_T_MAX, |w| w.lcm() == 1);
    }
    let mut out: Vec<AdmissibleSolution> = l1_cases()
        .iter()
        .filter(|c| c.m == m)
        .flat_map(|c| solve_l1_case(c, s))
        .collect();
    sort_solutions(&mut out);
    out
}

/// A compact description of the bounds used by a classification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    /// The flat-search bounds.
    pub flat: FlatBounds,
    /// The `P(1,1,1,1)` cases whose rank window contains `s`.
    pub l1_cases: Vec<L1Case>,
    /// Whether `(s, m)` is a forbidden flat pair.
    pub forbidden_flat: bool,
}

/// Bounds used for `(s, m)`.
pub fn bounds_report(s: u32, m: u32) -> BoundsReport {
    BoundsReport {
        flat: flat_bounds(s, m),
        l1_cases: l1_cases()
            .into_iter()
            .filter(|c| c.m == m && s >= c.s_min && s <= c.s_max())
            .collect(),
        forbidden_flat: forbidden_flat(s, m),
    }
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bounds for s = {}, m = {}", self.flat.s, self.flat.m)?;
        writeln!(f, "forbidden flat pair (L >= 2): {}", self.forbidden_flat)?;
        for rule in &self.flat.rules {
            writeln!(f, "rule: {rule}")?;
        }
        for (k, c) in &self.flat.ratio_bounds {
            writeln!(f, "k = {k}: W/L >= {c}")?;
        }
        writeln!(f, "flat cells (k, L, W): {}", self.flat.cells.len())?;
        for cell in &self.flat.cells {
            writeln!(f, "  ({}, {}, {})", cell.k, cell.l, cell.w)?;
        }
        writeln!(f, "P(1,1,1,1) cases (m, k, D, s range):")?;
        for c in &self.l1_cases {
            writeln!(
                f,
                "  ({}, {}, {}, {}..={})  ratio bound {:?}, support bound {}",
                c.m,
                c.k,
                c.d_total,
                c.s_min,
                c.s_max(),
                c.s_max_ratio,
                c.s_max_support
            )?;
        }
        Ok(())
    }
}

/// Exact rational helper used by callers that want `W/L`.
pub fn weight_ratio(w: &Weights) -> Rational {
    Rational::new(BigInt::from(w.sum()), BigInt::from(w.lcm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank(s: u32) -> Rank {
        Rank::new(s).unwrap()
    }

    fn cover(a: [u64; 4], s: u32, d: &[i64]) -> CoverSpec {
        CoverSpec::new(
            Weights::new(a).unwrap(),
            BranchData::from_nonzero(rank(s), d).unwrap(),
        )
        .unwrap()
    }

    fn n(pairs: &[(i128, u64)]) -> BTreeMap<i128, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn pluricanonical_examples() {
        let r = is_pluricanonical(&cover([1, 1, 3, 3], 2, &[6, 6, 6]), 3).unwrap();
        assert_eq!((r.big_m, r.k, r.plurigenus), (3, 1, 6));
        let r = is_pluricanonical(&cover([1, 1, 1, 1], 2, &[3, 3, 3]), 4).unwrap();
        assert_eq!((r.big_m, r.k, r.plurigenus), (2, 2, 10));
        let r = is_pluricanonical(&cover([1, 1, 2, 2], 2, &[8, 8, 8]), 1).unwrap();
        assert_eq!((r.big_m, r.k, r.plurigenus), (6, 3, 30));
        assert!(is_pluricanonical(&cover([1, 1, 1, 1], 2, &[3, 3, 3]), 1).is_none());
    }

    #[test]
    fn bound_prune_examples() {
        assert!(bound_prune(2, 3, 3, 8, 1));
        assert!(!(5..=7).any(|w| bound_prune(4, 2, 2, w, 1)));
        assert!(!(2..=10).any(|l| (1..=2 * l + 2).any(|w| bound_prune(2, 1, l, w, 4))));
        assert!(bound_prune(2, 1, 2, 6, 3));
    }

    #[test]
    fn forbidden_pairs() {
        assert!(forbidden_flat(2, 4));
        assert!(!forbidden_flat(5, 1));
        assert!(forbidden_flat(6, 1));
        assert!(!forbidden_flat(3, 2));
    }

    #[test]
    fn support_bound_examples() {
        assert_eq!(support_bound(12, 3), 10);
        assert_eq!(support_bound(9, 2), 8);
        assert_eq!(support_bound(7, 7), 1);
    }

    #[test]
    fn l_distribution_examples() {
        assert_eq!(
            l_distribution_candidates(4, 9, 2, 11),
            vec![n(&[(2, 10), (3, 4), (4, 1)])]
        );
        assert!(l_distribution_candidates(5, 9, 2, 9).is_empty());
        assert_eq!(
            cubic_moment(5, 9, &n(&[(2, 24), (3, 4), (4, 3)])),
            Rational::from_integer(BigInt::from(-12))
        );
        assert_eq!(
            l_distribution_candidates(4, 12, 3, 12),
            vec![n(&[(3, 12), (4, 3)])]
        );
    }

    #[test]
    fn reconstruction_examples() {
        let one = reconstruct_branch(4, 9, &n(&[(2, 10), (3, 4), (4, 1)]));
        assert_eq!(one.len(), 1);
        let mut values = one[0].nonzero_values().to_vec();
        values.sort_unstable();
        assert_eq!(values.iter().filter(|&&v| v == 1).count(), 7);
        assert_eq!(values.iter().filter(|&&v| v == 2).count(), 1);

        let nine = reconstruct_branch(4, 9, &n(&[(2, 9), (3, 6)]));
        assert_eq!(nine.len(), 1);
        assert_eq!(nine[0].nonzero_values().iter().filter(|&&v| v == 1).count(), 9);

        let twelve = reconstruct_branch(4, 12, &n(&[(3, 12), (4, 3)]));
        assert_eq!(twelve.len(), 1);
        assert_eq!(twelve[0].nonzero_values().iter().filter(|&&v| v == 1).count(), 12);
    }

    #[test]
    fn egyptian_fractions() {
        assert_eq!(egyptian_decompositions(1, 1, 4).len(), 14);
        let two = weights_with_ratio(2, 1);
        let got: Vec<[u64; 4]> = two.iter().map(|w| w.get()).collect();
        assert_eq!(got, vec![[1, 1, 1, 3], [1, 1, 2, 4], [1, 2, 3, 6]]);
        assert_eq!(weights_with_ratio(4, 1), vec![Weights::projective_space()]);
    }

    #[test]
    fn weights_by_lcm_and_sum() {
        let got: Vec<[u64; 4]> = weights_with_lcm_and_sum(2, 6).iter().map(|w| w.get()).collect();
        assert_eq!(got, vec![[1, 1, 2, 2]]);
        let got: Vec<[u64; 4]> = weights_with_lcm_and_sum(4, 10).iter().map(|w| w.get()).collect();
        assert_eq!(got, vec![[1, 1, 4, 4]]);
    }

    #[test]
    fn flat_examples() {
        let sols = enumerate_flat(2, 3);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].weights.get(), [1, 1, 3, 3]);
        assert_eq!(sols[0].d.nonzero_values(), &[6, 6, 6]);
        assert_eq!((sols[0].k, sols[0].plurigenus), (1, 6));

        let sols = enumerate_flat(3, 2);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].weights.get(), [1, 1, 2, 2]);
        assert_eq!(sols[0].d.nonzero_values(), &[2; 7]);
        assert_eq!((sols[0].k, sols[0].plurigenus), (1, 5));

        assert!(enumerate_flat(2, 4).is_empty());
    }

    #[test]
    fn l1_examples() {
        let sols = enumerate_l1(2, 4);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].d.nonzero_values(), &[3, 3, 3]);
        let sols = enumerate_l1(3, 1);
        assert!(sols
            .iter()
            .any(|s| s.k == 3 && s.d.nonzero_values() == [2; 7]));
        assert!(solve_l1_case(
            l1_cases().iter().find(|c| c.m == 2 && c.k == 1).unwrap(),
            5
        )
        .is_empty());
    }

    #[test]
    fn nine_cases() {
        let cases = l1_cases();
        let per_rank: usize = cases
            .iter()
            .map(|c| if c.s_max_ratio.is_none() { 1 } else { (c.s_max() - 1) as usize })
            .sum();
        assert_eq!(per_rank, 9);
        assert_eq!(cases.len(), 8);
    }

    #[test]
    fn s1_families() {
        let fams = enumerate_s1(1);
        assert_eq!(fams.len(), 14);
        let f = fams.iter().find(|f| f.weights.get() == [1, 1, 4, 6]).unwrap();
        assert_eq!((f.degree_coefficient(), f.t_min, f.k(5)), (24, 2, 4));
        assert!(fams.iter().any(|f| f.weights.get() == [2, 3, 10, 15]));
        let two = enumerate_s1(2);
        assert!(two.iter().all(|f| f.t_max.is_some()));
    }
}
