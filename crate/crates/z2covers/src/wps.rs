//! Numerics of a weighted projective threefold `P(a0, a1, a2, a3)`.
//!
//! Weights are stored sorted ascending together with `L = lcm`, `W = sum`
//! and `A = product`.  [`monomial_count`] is `h^0(O(n))`, the number of
//! monomials of weighted degree `n`, and [`euler_char_line`] is the exact
//! Euler characteristic `χ(O(n)) = P(n) - P(-n - W)` obtained from Serre
//! duality with dualizing degree `-W` and the vanishing of the middle
//! cohomology of `O(n)` on weighted projective space.

use core::fmt;

use num_integer::Integer;

/// Largest accepted weight; keeps `L`, `W` and `A` inside `u128`.
pub const MAX_WEIGHT: u64 = u32::MAX as u64;

/// Errors raised when building [`Weights`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WpsError {
    /// A weight is zero.
    ZeroWeight,
    /// A weight exceeds [`MAX_WEIGHT`].
    WeightTooLarge(u64),
    /// Some three of the weights share a common factor.
    NotWellFormed([u64; 4]),
}

impl fmt::Display for WpsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WpsError::ZeroWeight => write!(f, "weights must be positive"),
            WpsError::WeightTooLarge(a) => write!(f, "weight {a} exceeds {MAX_WEIGHT}"),
            WpsError::NotWellFormed(a) => write!(
                f,
                "weights ({}, {}, {}, {}) are not well-formed: some three share a factor",
                a[0], a[1], a[2], a[3]
            ),
        }
    }
}

impl core::error::Error for WpsError {}

/// The sorted, well-formed weights of the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weights {
    a: [u64; 4],
}

impl Weights {
    /// Sorts the weights and checks positivity and well-formedness.
    pub fn new(mut a: [u64; 4]) -> Result<Self, WpsError> {
        a.sort_unstable();
        if a[0] == 0 {
            return Err(WpsError::ZeroWeight);
        }
        if a[3] > MAX_WEIGHT {
            return Err(WpsError::WeightTooLarge(a[3]));
        }
        if !well_formed(a) {
            return Err(WpsError::NotWellFormed(a));
        }
        Ok(Weights { a })
    }

    /// `P(1,1,1,1)`.
    pub fn projective_space() -> Self {
        Weights { a: [1; 4] }
    }

    /// The weights in ascending order.
    pub fn get(&self) -> [u64; 4] {
        self.a
    }

    /// `L = lcm(a0, a1, a2, a3)`.
    pub fn lcm(&self) -> u128 {
        self.a.iter().fold(1u128, |acc, &x| acc.lcm(&(x as u128)))
    }

    /// `W = a0 + a1 + a2 + a3`.
    pub fn sum(&self) -> u128 {
        self.a.iter().map(|&x| x as u128).sum()
    }

    /// `A = a0 a1 a2 a3`.
    pub fn product(&self) -> u128 {
        self.a.iter().map(|&x| x as u128).product()
    }

    /// `σ2 = Σ_{i<j} a_i a_j`.
    pub fn pair_sum(&self) -> u128 {
        let mut total = 0u128;
        for i in 0..4 {
            for j in (i + 1)..4 {
                total += self.a[i] as u128 * self.a[j] as u128;
            }
        }
        total
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = self.a;
        write!(f, "({a0},{a1},{a2},{a3})")
    }
}

/// True when every three of the four (positive) weights are coprime.
pub fn well_formed(a: [u64; 4]) -> bool {
    if a.contains(&0) {
        return false;
    }
    (0..4).all(|skip| {
        let g = (0..4)
            .filter(|&i| i != skip)
            .fold(0u64, |acc, i| acc.gcd(&a[i]));
        g == 1
    })
}

/// `#{(x, y) ∈ Z≥0² : a x + b y = r}` for positive `a`, `b`.
fn two_variable_count(a: i128, b: i128, r: i128) -> u128 {
    if r < 0 {
        return 0;
    }
    let g = a.gcd(&b);
    if r % g != 0 {
        return 0;
    }
    let (a, b, r) = (a / g, b / g, r / g);
    if b == 1 {
        return (r / a + 1) as u128;
    }
    // x ≡ r·a⁻¹ (mod b) and y = (r - a x)/b ≥ 0.
    let inv = a.extended_gcd(&b).x.rem_euclid(b);
    let x0 = ((r % b) * inv).rem_euclid(b);
    if a * x0 > r {
        0
    } else {
        ((r - a * x0) / (a * b) + 1) as u128
    }
}

/// `h^0(O(n)) = #{e ∈ Z≥0⁴ : Σ e_i a_i = n}`; zero for negative `n`.
///
/// The two largest exponents are looped over and the remaining
/// two-variable count is evaluated in closed form.
pub fn monomial_count(w: &Weights, n: i128) -> u128 {
    if n < 0 {
        return 0;
    }
    let [a0, a1, a2, a3] = w.a.map(|x| x as i128);
    let mut total = 0u128;
    let mut r3 = n;
    while r3 >= 0 {
        let mut r2 = r3;
        while r2 >= 0 {
            total += two_variable_count(a0, a1, r2);
            r2 -= a2;
        }
        r3 -= a3;
    }
    total
}

/// `χ(O(n)) = P(n) - P(-n - W)`.
pub fn euler_char_line(w: &Weights, n: i128) -> i128 {
    monomial_count(w, n) as i128 - monomial_count(w, -n - w.sum() as i128) as i128
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: [u64; 4]) -> Weights {
        Weights::new(a).unwrap()
    }

    #[test]
    fn well_formedness_examples() {
        assert!(well_formed([1, 1, 2, 2]));
        assert!(!well_formed([2, 2, 2, 1]));
        assert!(well_formed([1, 6, 14, 21]));
        assert!(!well_formed([0, 1, 1, 1]));
        assert!(matches!(Weights::new([2, 4, 6, 1]), Err(WpsError::NotWellFormed(_))));
    }

    #[test]
    fn weights_are_sorted_with_derived_numbers() {
        let x = w([2, 2, 1, 1]);
        assert_eq!(x.get(), [1, 1, 2, 2]);
        assert_eq!((x.lcm(), x.sum(), x.product()), (2, 6, 4));
        assert_eq!(w([2, 3, 10, 15]).lcm(), 30);
        assert_eq!(w([1, 1, 2, 3]).pair_sum(), 1 + 2 + 3 + 2 + 3 + 6);
    }

    #[test]
    fn monomial_count_examples() {
        assert_eq!(monomial_count(&w([1, 1, 1, 1]), 2), 10);
        assert_eq!(monomial_count(&w([1, 1, 3, 3]), 3), 6);
        assert_eq!(monomial_count(&w([1, 1, 2, 2]), 2), 5);
        assert_eq!(monomial_count(&w([1, 1, 2, 2]), 6), 30);
        assert_eq!(monomial_count(&w([1, 1, 2, 2]), -1), 0);
        assert_eq!(monomial_count(&w([2, 3, 10, 15]), 1), 0);
        assert_eq!(monomial_count(&w([2, 3, 10, 15]), 0), 1);
    }

    #[test]
    fn euler_characteristic_examples() {
        let p3 = Weights::projective_space();
        assert_eq!(euler_char_line(&p3, -5), -4);
        assert_eq!(euler_char_line(&p3, 0), 1);
        assert_eq!(euler_char_line(&p3, -3), 0);
        assert_eq!(euler_char_line(&w([1, 6, 14, 21]), 0), 1);
    }
}
