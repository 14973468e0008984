//! Bit-level arithmetic on the elementary abelian group `G = (Z/2)^s`.
//!
//! Group elements and characters are both encoded as machine integers whose
//! bit `i` is coordinate `i` (the first coordinate is bit 0).  The pairing
//! `χ·g` is the parity of `popcount(χ & g)`, and `χ(g) = -1` exactly when
//! that parity is odd.
//!
//! The module also provides `GL_s(F_2)` orbit canonicalization of integer
//! functions on `G`.  For `s <= 5` the canonical form is computed exactly by
//! a pruned traversal of all ordered bases; for larger ranks an
//! orbit-invariant [`OrbitSignature`] is available instead.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Largest supported exponent `s`.
pub const MAX_RANK: u32 = 16;

/// Largest exponent for which [`canonicalize`] performs the exact orbit
/// traversal (`|GL_5(F_2)| = 9_999_360`).
pub const MAX_EXACT_ORBIT_RANK: u32 = 5;

/// Errors raised by the group-level helpers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gf2Error {
    /// `s` is outside `1..=MAX_RANK`.
    RankOutOfRange(u32),
    /// A bit vector does not fit in the group of the given rank.
    ElementOutOfRange { bits: u32, rank: u32 },
    /// A value table does not have `2^s` entries.
    LengthMismatch { expected: usize, found: usize },
    /// Two operands live in groups of different rank.
    RankMismatch { left: u32, right: u32 },
    /// Exact orbit traversal was requested above [`MAX_EXACT_ORBIT_RANK`].
    OrbitRankTooLarge(u32),
    /// A list of vectors meant to be a basis is not linearly independent.
    NotABasis,
    /// A bit string contains characters other than `0` and `1`.
    InvalidBitString,
}

impl fmt::Display for Gf2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gf2Error::RankOutOfRange(s) => {
                write!(f, "rank s = {s} is outside 1..={MAX_RANK}")
            }
            Gf2Error::ElementOutOfRange { bits, rank } => {
                write!(f, "bit vector {bits:#b} does not fit in (Z/2)^{rank}")
            }
            Gf2Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} values, found {found}")
            }
            Gf2Error::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
            Gf2Error::OrbitRankTooLarge(s) => write!(
                f,
                "exact GL orbit traversal is capped at s = {MAX_EXACT_ORBIT_RANK}, got s = {s}"
            ),
            Gf2Error::NotABasis => write!(f, "vectors are not linearly independent"),
            Gf2Error::InvalidBitString => write!(f, "bit strings may only contain 0 and 1"),
        }
    }
}

impl core::error::Error for Gf2Error {}

/// The exponent `s` of `G = (Z/2)^s`, with `1 <= s <= 16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(u32);

impl Rank {
    /// Validates `1 <= s <= MAX_RANK`.
    pub fn new(s: u32) -> Result<Self, Gf2Error> {
        if (1..=MAX_RANK).contains(&s) {
            Ok(Rank(s))
        } else {
            Err(Gf2Error::RankOutOfRange(s))
        }
    }

    /// The exponent `s`.
    pub const fn get(self) -> u32 {
        self.0
    }

    /// The group order `2^s`.
    pub const fn order(self) -> usize {
        1usize << self.0
    }

    /// Checks that `bits` encodes an element of this group.
    pub fn element(self, bits: u32) -> Result<GroupElement, Gf2Error> {
        self.check(bits).map(GroupElement)
    }

    /// Checks that `bits` encodes a character of this group.
    pub fn character(self, bits: u32) -> Result<Character, Gf2Error> {
        self.check(bits).map(Character)
    }

    /// Range-checked pairing `χ·g`.
    pub fn dot(self, chi: Character, g: GroupElement) -> Result<u8, Gf2Error> {
        self.check(chi.0)?;
        self.check(g.0)?;
        Ok(dot(chi, g))
    }

    /// Iterates over the encodings of the nonzero elements in integer order.
    pub fn nonzero(self) -> impl Iterator<Item = u32> {
        1..(1u32 << self.0)
    }

    fn check(self, bits: u32) -> Result<u32, Gf2Error> {
        if (bits as usize) < self.order() {
            Ok(bits)
        } else {
            Err(Gf2Error::ElementOutOfRange { bits, rank: self.0 })
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element `g` of `G`, bit `i` being coordinate `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(pub u32);

/// A character `χ` of `G`, acting by `χ(g) = (-1)^(χ·g)`; zero is trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character(pub u32);

/// The pairing `χ·g = Σ χ_i g_i mod 2`.
#[inline]
pub fn dot(chi: Character, g: GroupElement) -> u8 {
    pairing(chi.0, g.0) as u8
}

/// Raw-bit form of [`dot`]: `true` exactly when `χ(g) = -1`.
#[inline]
pub fn pairing(chi: u32, g: u32) -> bool {
    (chi & g).count_ones() & 1 == 1
}

/// Renders a group element as a length-`s` bit string, first coordinate
/// first (the convention used for branch-data keys).
pub fn bitstring(rank: Rank, g: u32) -> alloc::string::String {
    (0..rank.get())
        .map(|i| if g >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a bit string written first coordinate first.
pub fn parse_bitstring(rank: Rank, text: &str) -> Result<u32, Gf2Error> {
    let s = rank.get() as usize;
    if text.len() != s {
        return Err(Gf2Error::LengthMismatch {
            expected: s,
            found: text.len(),
        });
    }
    let mut bits = 0u32;
    for (i, c) in text.chars().enumerate() {
        match c {
            '0' => {}
            '1' => bits |= 1 << i,
            _ => return Err(Gf2Error::InvalidBitString),
        }
    }
    Ok(bits)
}

/// An integer-valued function on all `2^s` elements of `G`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupFunction {
    rank: Rank,
    values: Vec<i64>,
}

impl GroupFunction {
    /// Wraps a full value table indexed by element encoding.
    pub fn new(rank: Rank, values: Vec<i64>) -> Result<Self, Gf2Error> {
        if values.len() != rank.order() {
            return Err(Gf2Error::LengthMismatch {
                expected: rank.order(),
                found: values.len(),
            });
        }
        Ok(GroupFunction { rank, values })
    }

    /// Builds a function with `d(0) = 0` from its values on the nonzero
    /// elements listed in integer order (for `s = 2` this is
    /// `(d10, d01, d11)`).
    pub fn from_nonzero(rank: Rank, nonzero: &[i64]) -> Result<Self, Gf2Error> {
        if nonzero.len() != rank.order() - 1 {
            return Err(Gf2Error::LengthMismatch {
                expected: rank.order() - 1,
                found: nonzero.len(),
            });
        }
        let mut values = Vec::with_capacity(rank.order());
        values.push(0);
        values.extend_from_slice(nonzero);
        Ok(GroupFunction { rank, values })
    }

    /// The zero function.
    pub fn zero(rank: Rank) -> Self {
        GroupFunction {
            rank,
            values: vec![0; rank.order()],
        }
    }

    /// Tabulates `f` over all elements.
    pub fn from_fn(rank: Rank, mut f: impl FnMut(u32) -> i64) -> Self {
        GroupFunction {
            rank,
            values: (0..rank.order() as u32).map(&mut f).collect(),
        }
    }

    /// The rank of the underlying group.
    pub fn rank(&self) -> Rank {
        self.rank
    }

    /// The full value table, indexed by element encoding.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Values on the nonzero elements in integer order.
    pub fn nonzero_values(&self) -> &[i64] {
        &self.values[1..]
    }

    /// The value at `g`.
    pub fn get(&self, g: u32) -> i64 {
        self.values[g as usize]
    }

    /// Elements with a nonzero value, in integer order.
    pub fn support(&self) -> Vec<u32> {
        (0..self.values.len() as u32)
            .filter(|&g| self.values[g as usize] != 0)
            .collect()
    }

    /// Sum of all values, widened so it cannot overflow.
    pub fn total(&self) -> i128 {
        self.values.iter().map(|&v| v as i128).sum()
    }
}

/// `Σ_g d(g)·g` over `F_2`: the XOR of all elements carrying an odd value.
///
/// The result is zero exactly when every half-sum `Σ_{χ·g=1} d(g)` is even.
pub fn parity_vector(d: &GroupFunction) -> GroupElement {
    let bits = d
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v & 1 != 0)
        .fold(0u32, |acc, (g, _)| acc ^ g as u32);
    GroupElement(bits)
}

/// All elements of the span of `vectors` (including 0), in discovery order.
pub fn span(vectors: &[u32]) -> Vec<u32> {
    let mut elements = vec![0u32];
    for &v in vectors {
        if elements.contains(&v) {
            continue;
        }
        let shifted: Vec<u32> = elements.iter().map(|&e| e ^ v).collect();
        elements.extend(shifted);
    }
    elements
}

/// True when `vectors` are linearly independent over `F_2`.
pub fn is_independent(vectors: &[u32]) -> bool {
    span(vectors).len() == 1usize << vectors.len()
}

/// Relabels `d` by an ordered basis: the result is `x ↦ d(Σ_i x_i v_i)`.
///
/// Every function `d∘T⁻¹` with `T ∈ GL_s(F_2)` arises this way, with the
/// columns of `T⁻¹` as the basis.
pub fn compose_with_basis(d: &GroupFunction, basis: &[u32]) -> Result<GroupFunction, Gf2Error> {
    let rank = d.rank;
    if basis.len() != rank.get() as usize {
        return Err(Gf2Error::LengthMismatch {
            expected: rank.get() as usize,
            found: basis.len(),
        });
    }
    for &v in basis {
        rank.check(v)?;
    }
    if !is_independent(basis) {
        return Err(Gf2Error::NotABasis);
    }
    let n = rank.order();
    let mut image = vec![0u32; n];
    for (j, &v) in basis.iter().enumerate() {
        let lo = 1usize << j;
        for y in 0..lo {
            image[lo + y] = image[y] ^ v;
        }
    }
    Ok(GroupFunction {
        rank,
        values: image.iter().map(|&g| d.values[g as usize]).collect(),
    })
}

/// The lexicographically least function in the `GL_s(F_2)` orbit of `d`.
///
/// Functions are compared as sequences `(d(1), d(2), …, d(2^s - 1))` in the
/// integer order of the element encodings.  The traversal chooses basis
/// images one at a time; the block of values on `[2^j, 2^{j+1})` depends
/// only on the first `j + 1` images, so any branch whose prefix already
/// exceeds the best known prefix is abandoned.
pub fn canonicalize(d: &GroupFunction) -> Result<GroupFunction, Gf2Error> {
    let s = d.rank.get();
    if s > MAX_EXACT_ORBIT_RANK {
        return Err(Gf2Error::OrbitRankTooLarge(s));
    }
    let n = d.rank.order();
    let mut search = OrbitSearch {
        source: &d.values,
        s,
        best: d.values.clone(),
        current: vec![0; n],
        image: vec![0; n],
        in_span: vec![false; n],
    };
    search.current[0] = d.values[0];
    search.in_span[0] = true;
    search.descend(0);
    Ok(GroupFunction {
        rank: d.rank,
        values: search.best,
    })
}

struct OrbitSearch<'a> {
    source: &'a [i64],
    s: u32,
    best: Vec<i64>,
    current: Vec<i64>,
    image: Vec<u32>,
    in_span: Vec<bool>,
}

impl OrbitSearch<'_> {
    fn descend(&mut self, level: u32) {
        if level == self.s {
            if self.current[1..] < self.best[1..] {
                self.best.copy_from_slice(&self.current);
            }
            return;
        }
        let lo = 1usize << level;
        let n = self.current.len();
        for v in 1..n as u32 {
            if self.in_span[v as usize] {
                continue;
            }
            for y in 0..lo {
                let g = self.image[y] ^ v;
                self.image[lo + y] = g;
                self.current[lo + y] = self.source[g as usize];
            }
            if self.current[1..2 * lo].cmp(&self.best[1..2 * lo]) == Ordering::Greater {
                continue;
            }
            for y in 0..lo {
                self.in_span[self.image[lo + y] as usize] = true;
            }
            self.descend(level + 1);
            for y in 0..lo {
                self.in_span[self.image[lo + y] as usize] = false;
            }
        }
    }
}

/// An orbit invariant for ranks where exact canonicalization is too costly.
///
/// Equal orbits always give equal signatures; the converse is not
/// guaranteed, so deduplication by signature is "signature-level".
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitSignature {
    /// Sorted values on nonzero elements.
    pub values: Vec<i64>,
    /// Sorted half-sums `Σ_{χ·g=1} d(g)` over nonzero characters
    /// (twice the eigensheaf degrees).
    pub half_sums: Vec<i128>,
    /// Sorted sums of `d` over the nonzero points of each 2-dimensional
    /// subspace.
    pub plane_sums: Vec<i128>,
}

/// Computes the [`OrbitSignature`] of `d`.
pub fn orbit_signature(d: &GroupFunction) -> OrbitSignature {
    let n = d.rank.order();
    let mut values: Vec<i64> = d.values[1..].to_vec();
    values.sort_unstable();

    let spectrum = crate::walsh::forward(d);
    let total = spectrum.values()[0];
    let mut half_sums: Vec<i128> = spectrum.values()[1..]
        .iter()
        .map(|&v| (total - v) / 2)
        .collect();
    half_sums.sort_unstable();

    let mut plane_sums = Vec::new();
    for p in 1..n as u32 {
        for q in (p + 1)..n as u32 {
            let r = p ^ q;
            if r > q {
                plane_sums.push(
                    d.values[p as usize] as i128
                        + d.values[q as usize] as i128
                        + d.values[r as usize] as i128,
                );
            }
        }
    }
    plane_sums.sort_unstable();
    OrbitSignature {
        values,
        half_sums,
        plane_sums,
    }
}

/// Orbit identity used for deduplication: exact below the traversal cap,
/// signature-level above it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitKey {
    /// The exact canonical form.
    Exact(GroupFunction),
    /// An orbit invariant; distinct orbits may collide.
    Signature(OrbitSignature),
}

/// Returns the exact canonical form when `s <= 5`, otherwise the signature.
pub fn orbit_key(d: &GroupFunction) -> OrbitKey {
    match canonicalize(d) {
        Ok(c) => OrbitKey::Exact(c),
        Err(_) => OrbitKey::Signature(orbit_signature(d)),
    }
}

/// `min_{u ≠ 0} |A ∩ {x : u·x = 1}|`; zero for an empty set.
pub fn affine_hyperplane_min_intersection(set: &[GroupElement], rank: Rank) -> usize {
    if set.is_empty() {
        return 0;
    }
    rank.nonzero()
        .map(|u| set.iter().filter(|g| pairing(u, g.0)).count())
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank(s: u32) -> Rank {
        Rank::new(s).unwrap()
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(Character(0b11), GroupElement(0b01)), 1);
        assert_eq!(dot(Character(0), GroupElement(0b1011)), 0);
        assert_eq!(dot(Character(0b101), GroupElement(0b111)), 0);
    }

    #[test]
    fn rank_checks() {
        assert!(Rank::new(0).is_err());
        assert!(Rank::new(17).is_err());
        let r = rank(2);
        assert!(r.dot(Character(4), GroupElement(1)).is_err());
        assert_eq!(r.dot(Character(3), GroupElement(1)), Ok(1));
    }

    #[test]
    fn parity_vector_examples() {
        let r = rank(2);
        let d = GroupFunction::from_nonzero(r, &[6, 6, 6]).unwrap();
        assert_eq!(parity_vector(&d), GroupElement(0));
        let d = GroupFunction::from_nonzero(r, &[1, 2, 2]).unwrap();
        assert_eq!(parity_vector(&d), GroupElement(0b01));
        assert_eq!(parity_vector(&GroupFunction::zero(rank(5))), GroupElement(0));
    }

    #[test]
    fn canonicalize_s2_example() {
        let d = GroupFunction::from_nonzero(rank(2), &[6, 2, 6]).unwrap();
        let c = canonicalize(&d).unwrap();
        assert_eq!(c.nonzero_values(), &[2, 6, 6]);
        assert_eq!(canonicalize(&c).unwrap(), c);
    }

    #[test]
    fn canonicalize_rejects_large_rank() {
        let d = GroupFunction::zero(rank(6));
        assert_eq!(canonicalize(&d), Err(Gf2Error::OrbitRankTooLarge(6)));
    }

    #[test]
    fn bitstrings_round_trip() {
        let r = rank(3);
        for g in 0..8 {
            assert_eq!(parse_bitstring(r, &bitstring(r, g)), Ok(g));
        }
        assert_eq!(bitstring(r, 0b001), "100");
        assert!(parse_bitstring(r, "10").is_err());
    }

    #[test]
    fn affine_intersection_examples() {
        let r = rank(4);
        let all: Vec<GroupElement> = r.nonzero().map(GroupElement).collect();
        assert_eq!(affine_hyperplane_min_intersection(&all, r), 8);
        let plane = span(&[1, 2]);
        let off: Vec<GroupElement> = r
            .nonzero()
            .filter(|g| !plane.contains(g))
            .map(GroupElement)
            .collect();
        assert_eq!(off.len(), 12);
        assert_eq!(affine_hyperplane_min_intersection(&off, r), 6);
        assert_eq!(affine_hyperplane_min_intersection(&[], rank(3)), 0);
    }
}
