//! Scaled-integer arithmetic for the sign-pattern enumeration.
//!
//! A measure with masses `n_i / den` over a common denominator turns the
//! whole enumeration into integer arithmetic: character values are
//! `sum ±n_i` over `den`, and every reconstructed candidate is an
//! integer over `8 den` (for `l = 3`). The enumeration runs on `i128`
//! whenever the common denominator fits with headroom, and falls back to
//! `BigInt` otherwise; both paths share this one implementation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::group::{add_indices, group_order, pairing_by_index};
use crate::measure::Measure;

pub(crate) trait EngineInt: Clone + Ord + Sized {
    fn zero() -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn times(&self, factor: u32) -> Self;
    fn is_negative(&self) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl EngineInt for i128 {
    fn zero() -> Self {
        0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, factor: u32) -> Self {
        self * factor as i128
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl EngineInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, factor: u32) -> Self {
        self * factor
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Numerators of the masses over their least common denominator.
pub(crate) fn scale_measure(mu: &Measure) -> (Vec<BigInt>, BigInt) {
    let den = mu
        .masses()
        .iter()
        .fold(BigInt::one(), |acc: BigInt, m| acc.lcm(m.denom()));
    let nums = mu
        .masses()
        .iter()
        .map(|m| m.numer() * (&den / m.denom()))
        .collect();
    (nums, den)
}

/// Headroom bound: candidates scale numerators by at most
/// `2^l * 2^l = 256`, so anything below `i128::MAX / 1024` is safe.
pub(crate) fn downcast(nums: &[BigInt], den: &BigInt) -> Option<(Vec<i128>, i128)> {
    let bound: i128 = i128::MAX / 1024;
    let den = den.to_i128().filter(|&d| d < bound)?;
    let mut out = Vec::with_capacity(nums.len());
    for n in nums {
        out.push(n.to_i128()?);
    }
    Some((out, den))
}

/// Character transform of scaled numerators: entry `y` is
/// `sum_i ±nums[i]` with the sign taken from the pairing.
pub(crate) fn char_values<T: EngineInt>(l: u32, nums: &[T]) -> Vec<T> {
    let n = group_order(l);
    (0..n)
        .map(|y| {
            let mut acc = T::zero();
            for (i, v) in nums.iter().enumerate() {
                if pairing_by_index(l, i, y) > 0 {
                    acc = acc.add_ref(v);
                } else {
                    acc = acc.sub_ref(v);
                }
            }
            acc
        })
        .collect()
}

/// Candidate numerators for one sign pattern, scaled by `2^l * den`:
/// `b[i] = sum_y sign(y) * (x_i, y) * t[y]` where bit `y-1` of
/// `pattern_mask` selects sign `-1` at character `y`.
pub(crate) fn candidate_scaled<T: EngineInt>(l: u32, t: &[T], pattern_mask: usize) -> Vec<T> {
    let n = group_order(l);
    (0..n)
        .map(|i| {
            let mut acc = T::zero();
            for (y, v) in t.iter().enumerate() {
                let mut sign = pairing_by_index(l, i, y);
                if y > 0 && pattern_mask >> (y - 1) & 1 == 1 {
                    sign = -sign;
                }
                if sign > 0 {
                    acc = acc.add_ref(v);
                } else {
                    acc = acc.sub_ref(v);
                }
            }
            acc
        })
        .collect()
}

pub(crate) fn all_nonnegative<T: EngineInt>(values: &[T]) -> bool {
    values.iter().all(|v| !v.is_negative())
}

/// Whether candidate numerators (scaled by `2^l * den`) equal some shift
/// of the measure. `scaled_masses` must hold `2^l * nums[i]`.
pub(crate) fn is_shift_of<T: EngineInt>(l: u32, candidate: &[T], scaled_masses: &[T]) -> bool {
    let n = group_order(l);
    (0..n).any(|j| (0..n).all(|i| candidate[i] == scaled_masses[add_indices(l, i, j)]))
}

/// Lexicographically smallest vector among all shifts; the canonical
/// representative used to deduplicate equivalence classes.
pub(crate) fn canonical_shift<T: EngineInt>(l: u32, values: &[T]) -> Vec<T> {
    let n = group_order(l);
    (0..n)
        .map(|j| (0..n).map(|i| values[add_indices(l, i, j)].clone()).collect::<Vec<T>>())
        .min()
        .expect("at least the identity shift exists")
}
