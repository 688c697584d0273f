//! Ground-truth TEC decision by exhaustive sign-pattern enumeration.
//!
//! Two measures are equivalent exactly when their characteristic
//! functions agree in absolute value, so every measure equivalent to
//! `mu` arises from flipping signs of `mu`'s characteristic function at
//! some subset of the nontrivial characters and transforming back. For
//! `Z_2^l` that is `2^(2^l - 1)` candidate linear systems (128 at
//! `l = 3`); a candidate is a measure when all reconstructed masses are
//! nonnegative, and `mu` has a trivial equivalence class exactly when
//! every such candidate is one of its shifts.
//!
//! This module also carries the closed forms of the four solution
//! families the 128 systems fall into, and [`classify_systems`], which
//! re-derives that partition by exact matrix matching.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::classifier::{TecVerdict, TecWitness};
use crate::error::Error;
use crate::group::{
    add_indices, group_order, pairing_by_index, sigma, GroupElement, IndexPermutation,
};
use crate::measure::Measure;
use crate::rational::{rat, Rational};
use crate::scaled::{self, EngineInt};

/// A choice of sign at every character, `+1` at the trivial one (the
/// equation at the trivial character reads `sum b_i = 1` and admits no
/// sign freedom). Patterns are ordered by index: bit `y - 1` of the
/// index selects sign `-1` at character `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern {
    l: u32,
    mask: u32,
}

impl SignPattern {
    pub fn from_index(l: u32, index: usize) -> Self {
        assert!(index < Self::count(l), "pattern index {index} out of range for l={l}");
        Self { l, mask: index as u32 }
    }

    /// Number of sign patterns for `Z_2^l`.
    pub fn count(l: u32) -> usize {
        1 << (group_order(l) - 1)
    }

    pub fn all(l: u32) -> impl Iterator<Item = SignPattern> {
        (0..Self::count(l)).map(move |i| Self::from_index(l, i))
    }

    /// The pattern realizing the shift by `x`: sign `(x, y)` at every
    /// character.
    pub fn character_row(x: GroupElement) -> Self {
        let l = x.l();
        let mut mask = 0u32;
        for y in 1..group_order(l) {
            if pairing_by_index(l, x.index(), y) < 0 {
                mask |= 1 << (y - 1);
            }
        }
        Self { l, mask }
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn index(&self) -> usize {
        self.mask as usize
    }

    /// Sign at character `y`, `+1` or `-1`.
    pub fn sign(&self, y: usize) -> i32 {
        assert!(y < group_order(self.l));
        if y == 0 || self.mask >> (y - 1) & 1 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> Vec<i32> {
        (0..group_order(self.l)).map(|y| self.sign(y)).collect()
    }
}

impl std::fmt::Display for SignPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for y in 0..group_order(self.l) {
            write!(f, "{}", if self.sign(y) > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// A reconstructed solution of one sign-pattern system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSolution {
    pub pattern: SignPattern,
    /// Solution values `b_i`; they sum to 1 for every pattern but may be
    /// negative, in which case the system has no measure solution.
    pub values: Vec<Rational>,
    /// All values nonnegative (zero allowed).
    pub valid: bool,
    /// Valid and equal to some shift of the input measure.
    pub trivial: bool,
}

/// Solves the system selected by `eps`: the candidate characteristic
/// function is `eps ⊙ mu_hat`, transformed back to masses.
pub fn candidate(mu: &Measure, eps: &SignPattern) -> CandidateSolution {
    assert_eq!(mu.l(), eps.l(), "pattern and measure sizes differ");
    let spectrum = mu.char_fn();
    let flipped: Vec<Rational> = spectrum
        .values()
        .iter()
        .enumerate()
        .map(|(y, v)| if eps.sign(y) > 0 { v.clone() } else { -v.clone() })
        .collect();
    let values = crate::group::walsh_inverse(&flipped);
    let valid = values.iter().all(|v| *v >= Rational::zero());
    let trivial = valid
        && GroupElement::all(mu.l()).any(|x| mu.shift(x).masses() == values.as_slice());
    CandidateSolution { pattern: *eps, values, valid, trivial }
}

/// Brute-force TEC verdict: `mu` has a trivial equivalence class exactly
/// when every valid candidate over all sign patterns is a shift of `mu`.
/// The witness for a negative verdict is the nontrivial valid candidate
/// with the smallest pattern index.
pub fn is_tec_bruteforce(mu: &Measure) -> TecVerdict {
    let (nums, den) = scaled::scale_measure(mu);
    let counterexample = match scaled::downcast(&nums, &den) {
        Some((small, small_den)) => {
            scan_for_counterexample(mu.l(), &small).map(|(pattern, values)| {
                rebuild_measure(mu.l(), &values, &BigInt::from(small_den), pattern)
            })
        }
        None => scan_for_counterexample(mu.l(), &nums)
            .map(|(pattern, values)| rebuild_measure(mu.l(), &values, &den, pattern)),
    };
    match counterexample {
        None => TecVerdict {
            tec: true,
            witness: TecWitness::ExhaustiveTrivial,
            normalizing_shift: GroupElement::identity(mu.l()),
        },
        Some((pattern, measure)) => TecVerdict {
            tec: false,
            witness: TecWitness::Counterexample { pattern, measure },
            normalizing_shift: GroupElement::identity(mu.l()),
        },
    }
}

/// First (smallest pattern index) valid nontrivial candidate, as
/// numerators scaled by `2^l * den`.
fn scan_for_counterexample<T: EngineInt>(l: u32, nums: &[T]) -> Option<(usize, Vec<T>)> {
    let t = scaled::char_values(l, nums);
    let scaled_masses: Vec<T> = nums.iter().map(|n| n.times(group_order(l) as u32)).collect();
    for pattern in 0..SignPattern::count(l) {
        let b = scaled::candidate_scaled(l, &t, pattern);
        if scaled::all_nonnegative(&b) && !scaled::is_shift_of(l, &b, &scaled_masses) {
            return Some((pattern, b));
        }
    }
    None
}

fn rebuild_measure<T: EngineInt>(
    l: u32,
    scaled_values: &[T],
    den: &BigInt,
    pattern: usize,
) -> (SignPattern, Measure) {
    let full_den: BigInt = den * group_order(l) as u32;
    let masses: Vec<Rational> = scaled_values
        .iter()
        .map(|v| Rational::new(v.to_bigint(), full_den.clone()))
        .collect();
    let measure = Measure::new(l, masses).expect("valid candidates are measures");
    (SignPattern::from_index(l, pattern), measure)
}

/// The full equivalence class of `mu`: every valid candidate,
/// deduplicated modulo shift. Each class member is reported by its
/// canonical representative (lexicographically smallest mass vector
/// among its shifts), in ascending order. The class of `mu` itself is
/// always present, so the result has length 1 exactly when `mu` is TEC.
pub fn equivalence_class(mu: &Measure) -> Vec<Measure> {
    let l = mu.l();
    let (nums, den) = scaled::scale_measure(mu);
    match scaled::downcast(&nums, &den) {
        Some((small, small_den)) => collect_class(l, &small, &BigInt::from(small_den)),
        None => collect_class(l, &nums, &den),
    }
}

fn collect_class<T: EngineInt>(l: u32, nums: &[T], den: &BigInt) -> Vec<Measure> {
    let t = scaled::char_values(l, nums);
    let mut reps: std::collections::BTreeSet<Vec<T>> = Default::default();
    for pattern in 0..SignPattern::count(l) {
        let b = scaled::candidate_scaled(l, &t, pattern);
        if scaled::all_nonnegative(&b) {
            reps.insert(scaled::canonical_shift(l, &b));
        }
    }
    let full_den: BigInt = den * group_order(l) as u32;
    reps.into_iter()
        .map(|values| {
            let masses = values
                .iter()
                .map(|v| Rational::new(v.to_bigint(), full_den.clone()))
                .collect();
            Measure::new(l, masses).expect("valid candidates are measures")
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Closed forms of the four solution families (l = 3).

/// Coefficient matrix of the base `C` family, times 2: row `i` gives
/// `2 c_i` as a signed sum of masses. Rows 0,2,3,6 combine the masses on
/// `K_1 = {x0,x2,x3,x6}`; rows 1,4,5,7 the masses on its coset.
const C1_TIMES_2: [[i64; 8]; 8] = [
    [-1, 0, 1, 1, 0, 0, 1, 0],
    [0, -1, 0, 0, 1, 1, 0, 1],
    [1, 0, -1, 1, 0, 0, 1, 0],
    [1, 0, 1, -1, 0, 0, 1, 0],
    [0, 1, 0, 0, -1, 1, 0, 1],
    [0, 1, 0, 0, 1, -1, 0, 1],
    [1, 0, 1, 1, 0, 0, -1, 0],
    [0, 1, 0, 0, 1, 1, 0, -1],
];

fn assert_l3(mu: &Measure) {
    assert_eq!(mu.l(), 3, "closed forms are specific to Z_2^3");
}

fn shift_vector(values: &[Rational], j: usize) -> Vec<Rational> {
    (0..values.len()).map(|i| values[add_indices(3, i, j)].clone()).collect()
}

/// `B` family solution: the shift by `x_j` of the vector `1/4 - a_i`.
/// A measure exactly when `a_max <= 1/4`.
pub fn closed_form_b(mu: &Measure, j: usize) -> Vec<Rational> {
    assert_l3(mu);
    let base: Vec<Rational> = mu.masses().iter().map(|a| rat(1, 4) - a).collect();
    shift_vector(&base, j)
}

fn c_base(masses: &[Rational]) -> Vec<Rational> {
    (0..8)
        .map(|i| {
            let mut acc = Rational::zero();
            for (m, a) in masses.iter().enumerate() {
                match C1_TIMES_2[i][m] {
                    1 => acc += a,
                    -1 => acc -= a,
                    _ => {}
                }
            }
            acc / rat(2, 1)
        })
        .collect()
}

/// Conjugation of the base `C` coefficients by the substitution
/// `sigma_k`, applied to the indices of the masses and of the outputs
/// alike.
fn c_family(masses: &[Rational], k: usize) -> Vec<Rational> {
    let s: IndexPermutation = sigma(k);
    let pulled: Vec<Rational> = (0..8).map(|i| masses[s.apply(i)].clone()).collect();
    let base = c_base(&pulled);
    let mut out = vec![Rational::zero(); 8];
    for (i, v) in base.into_iter().enumerate() {
        out[s.apply(i)] = v;
    }
    out
}

/// `C_k` family solution shifted by `x_j`.
pub fn closed_form_c(mu: &Measure, k: usize, j: usize) -> Vec<Rational> {
    assert_l3(mu);
    shift_vector(&c_family(mu.masses(), k), j)
}

/// `D_k` family solution shifted by `x_j`: `d_i = 1/4 - c_i` before the
/// shift.
pub fn closed_form_d(mu: &Measure, k: usize, j: usize) -> Vec<Rational> {
    assert_l3(mu);
    let d: Vec<Rational> =
        c_family(mu.masses(), k).into_iter().map(|c| rat(1, 4) - c).collect();
    shift_vector(&d, j)
}

// ---------------------------------------------------------------------------
// The partition of the 128 systems.

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyTag {
    A,
    B,
    /// `C_k`, `k = 1..=7`.
    C(usize),
    /// `D_k`, `k = 1..=7`.
    D(usize),
}

/// The family a sign-pattern system belongs to, together with the shift
/// index of its solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemFamily {
    pub tag: FamilyTag,
    pub shift: usize,
}

impl std::fmt::Display for SystemFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.tag {
            FamilyTag::A => write!(f, "A j={}", self.shift),
            FamilyTag::B => write!(f, "B j={}", self.shift),
            FamilyTag::C(k) => write!(f, "C{} j={}", k, self.shift),
            FamilyTag::D(k) => write!(f, "D{} j={}", k, self.shift),
        }
    }
}

/// 8x8 integer matrix, scaled by 8: entry `[i][m]` is `8 b_i` on the
/// point mass at `x_m`. Every family solution is linear on the simplex
/// once the constant `1/4` is read as `(1/4) sum a_m`, so these columns
/// pin the family exactly.
type ScaledMatrix = [[i64; 8]; 8];

#[allow(clippy::needless_range_loop)]
fn family_matrix(tag: FamilyTag, j: usize) -> ScaledMatrix {
    let mut out = [[0i64; 8]; 8];
    for i in 0..8 {
        let src = add_indices(3, i, j);
        for m in 0..8 {
            out[i][m] = match tag {
                FamilyTag::A => {
                    if src == m {
                        8
                    } else {
                        0
                    }
                }
                FamilyTag::B => 2 - if src == m { 8 } else { 0 },
                FamilyTag::C(k) => {
                    let s = sigma(k);
                    4 * C1_TIMES_2[s.apply(src)][s.apply(m)]
                }
                FamilyTag::D(k) => {
                    let s = sigma(k);
                    2 - 4 * C1_TIMES_2[s.apply(src)][s.apply(m)]
                }
            };
        }
    }
    out
}

#[allow(clippy::needless_range_loop)]
fn pattern_matrix(pattern: &SignPattern) -> ScaledMatrix {
    let mut out = [[0i64; 8]; 8];
    for m in 0..8 {
        // 8 b_i = sum_y sign(y) (x_i, y)(x_m, y)
        for i in 0..8 {
            let mut acc = 0i64;
            for y in 0..8 {
                let s = pattern.sign(y) * pairing_by_index(3, i, y) * pairing_by_index(3, m, y);
                acc += s as i64;
            }
            out[i][m] = acc;
        }
    }
    out
}

fn all_families() -> Vec<SystemFamily> {
    let mut tags = vec![FamilyTag::A, FamilyTag::B];
    tags.extend((1..=7).map(FamilyTag::C));
    tags.extend((1..=7).map(FamilyTag::D));
    tags.into_iter()
        .flat_map(|tag| (0..8).map(move |shift| SystemFamily { tag, shift }))
        .collect()
}

/// Assigns each of the 128 sign patterns to its solution family by
/// exact matrix matching. Fails if any pattern matches zero or several
/// families, which would falsify the partition.
pub fn classify_systems() -> Result<Vec<(SignPattern, SystemFamily)>, Error> {
    let mut by_matrix: BTreeMap<ScaledMatrix, SystemFamily> = BTreeMap::new();
    for family in all_families() {
        let matrix = family_matrix(family.tag, family.shift);
        if let Some(previous) = by_matrix.insert(matrix, family) {
            return Err(Error::Internal(format!(
                "families {previous} and {family} share a solution matrix"
            )));
        }
    }
    let mut out = Vec::with_capacity(SignPattern::count(3));
    for pattern in SignPattern::all(3) {
        match by_matrix.get(&pattern_matrix(&pattern)) {
            Some(family) => out.push((pattern, *family)),
            None => {
                return Err(Error::Internal(format!(
                    "pattern {pattern} matches no solution family"
                )))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::walsh_inverse;
    use num_traits::One;

    fn flat_bump() -> Measure {
        // a0 = 3/10, the rest 1/10.
        let mut masses = vec![rat(1, 10); 8];
        masses[0] = rat(3, 10);
        Measure::new(3, masses).unwrap()
    }

    #[test]
    fn character_row_patterns_give_shifts() {
        let mu = flat_bump();
        for x in GroupElement::all(3) {
            let eps = SignPattern::character_row(x);
            let sol = candidate(&mu, &eps);
            assert!(sol.valid);
            assert!(sol.trivial);
            assert_eq!(sol.values, mu.shift(x).masses());
        }
    }

    #[test]
    fn haar_candidates_all_collapse_to_haar() {
        let haar = Measure::haar(3);
        for eps in SignPattern::all(3) {
            let sol = candidate(&haar, &eps);
            assert!(sol.trivial);
            assert_eq!(sol.values, haar.masses());
        }
    }

    #[test]
    fn candidate_values_sum_to_one_even_when_invalid() {
        let mu = Measure::point_mass(GroupElement::new(3, 2));
        for eps in SignPattern::all(3) {
            let sol = candidate(&mu, &eps);
            let total: Rational = sol.values.iter().sum();
            assert!(total.is_one());
        }
    }

    #[test]
    fn flat_bump_has_the_documented_nontrivial_candidate() {
        // a0 = 3/10, rest 1/10: the C_1 family at j = 0 produces
        // (0, 1/10, 2/10, 2/10, 1/10, 1/10, 2/10, 1/10).
        let mu = flat_bump();
        let expected = vec![
            rat(0, 1),
            rat(1, 10),
            rat(2, 10),
            rat(2, 10),
            rat(1, 10),
            rat(1, 10),
            rat(2, 10),
            rat(1, 10),
        ];
        assert_eq!(closed_form_c(&mu, 1, 0), expected);

        let verdict = is_tec_bruteforce(&mu);
        assert!(!verdict.tec);
        let nu = match &verdict.witness {
            TecWitness::Counterexample { measure, .. } => measure.clone(),
            other => panic!("expected a counterexample, got {other:?}"),
        };
        assert!(crate::measure::equivalent(&mu, &nu));
        assert!(GroupElement::all(3).all(|x| mu.shift(x) != nu));

        let class = equivalence_class(&mu);
        assert!(class.len() >= 2);
        let expected_measure = Measure::new(3, expected).unwrap();
        assert!(crate::measure::equivalent(&mu, &expected_measure));
        let canon = equivalence_class(&expected_measure);
        assert!(class.contains(&canon[0]) || class.contains(&canon[canon.len() - 1]));
    }

    #[test]
    fn haar_and_point_masses_are_tec() {
        assert!(is_tec_bruteforce(&Measure::haar(3)).tec);
        for x in GroupElement::all(3) {
            assert!(is_tec_bruteforce(&Measure::point_mass(x)).tec);
        }
        assert_eq!(equivalence_class(&Measure::haar(3)).len(), 1);
    }

    #[test]
    fn example5_at_zero_is_tec() {
        let mu = Measure::from_numerators(3, &[8, 7, 2, 2, 1, 1, 2, 1], 24).unwrap();
        assert!(is_tec_bruteforce(&mu).tec);
    }

    #[test]
    fn heavy_atom_is_tec() {
        let mut masses = vec![rat(1, 70); 8];
        masses[0] = rat(9, 10);
        let mu = Measure::new(3, masses).unwrap();
        assert!(is_tec_bruteforce(&mu).tec);
    }

    #[test]
    fn verdict_is_shift_invariant() {
        let mu = flat_bump();
        for x in GroupElement::all(3) {
            assert!(!is_tec_bruteforce(&mu.shift(x)).tec);
        }
        let nu = Measure::from_numerators(3, &[8, 7, 2, 2, 1, 1, 2, 1], 24).unwrap();
        for x in GroupElement::all(3) {
            assert!(is_tec_bruteforce(&nu.shift(x)).tec);
        }
    }

    #[test]
    fn closed_form_b_examples() {
        let haar = Measure::haar(3);
        assert_eq!(closed_form_b(&haar, 0), haar.masses());

        let mu = Measure::from_numerators(3, &[2, 1, 1, 1, 1, 1, 1, 0], 8).unwrap();
        assert!(closed_form_b(&mu, 0)[0].is_zero(), "a0 = 1/4 forces b0 = 0");
        for j in 0..8 {
            let total: Rational = closed_form_b(&mu, j).iter().sum();
            assert!(total.is_one());
        }
    }

    #[test]
    fn closed_form_c_and_d_identities() {
        let haar = Measure::haar(3);
        assert_eq!(closed_form_c(&haar, 1, 0), haar.masses());
        assert_eq!(closed_form_d(&haar, 1, 0), haar.masses());

        let mu = flat_bump();
        for k in 1..=7 {
            let c = closed_form_c(&mu, k, 0);
            let d = closed_form_d(&mu, k, 0);
            for i in 0..8 {
                assert_eq!(&c[i] + &d[i], rat(1, 4));
            }
            for j in 0..8 {
                let total: Rational = closed_form_c(&mu, k, j).iter().sum();
                assert!(total.is_one(), "C_{k} shift {j}");
                let total: Rational = closed_form_d(&mu, k, j).iter().sum();
                assert!(total.is_one(), "D_{k} shift {j}");
            }
        }
    }

    #[test]
    fn closed_forms_agree_with_their_characteristic_functions() {
        // B family: spectrum of the solution must be (x_j, y) times the
        // spectrum of the vector (1/4 - a_i).
        let mu = flat_bump();
        for j in 0..8 {
            let b = closed_form_b(&mu, j);
            let direct: Vec<Rational> =
                mu.masses().iter().map(|a| rat(1, 4) - a).collect();
            let spectrum = crate::group::walsh_forward(&b);
            let base = crate::group::walsh_forward(&direct);
            for y in 0..8 {
                let sign = pairing_by_index(3, j, y);
                assert_eq!(spectrum[y], rat(sign as i64, 1) * &base[y]);
            }
        }
    }

    #[test]
    fn partition_counts_and_representatives() {
        let classified = classify_systems().unwrap();
        assert_eq!(classified.len(), 128);

        let mut a = 0;
        let mut b = 0;
        let mut c = [0usize; 8];
        let mut d = [0usize; 8];
        for (_, family) in &classified {
            match family.tag {
                FamilyTag::A => a += 1,
                FamilyTag::B => b += 1,
                FamilyTag::C(k) => c[k] += 1,
                FamilyTag::D(k) => d[k] += 1,
            }
        }
        assert_eq!(a, 8);
        assert_eq!(b, 8);
        assert_eq!(c[1..].iter().sum::<usize>(), 56);
        assert_eq!(d[1..].iter().sum::<usize>(), 56);
        assert!(c[1..].iter().all(|&n| n == 8));
        assert!(d[1..].iter().all(|&n| n == 8));

        // The all-plus pattern is the identity shift.
        let (first, family) = &classified[0];
        assert_eq!(first.index(), 0);
        assert_eq!(family.tag, FamilyTag::A);
        assert_eq!(family.shift, 0);

        // Character rows land in A with the matching shift.
        for x in GroupElement::all(3) {
            let eps = SignPattern::character_row(x);
            let family = classified[eps.index()].1;
            assert_eq!(family.tag, FamilyTag::A);
            assert_eq!(family.shift, x.index());
        }
    }

    #[test]
    fn every_candidate_matches_its_family_closed_form() {
        let classified = classify_systems().unwrap();
        for mu in [flat_bump(), Measure::haar(3), Measure::from_numerators(3, &[5, 3, 2, 6, 1, 4, 2, 1], 24).unwrap()] {
            for (pattern, family) in &classified {
                let sol = candidate(&mu, pattern);
                let expected = match family.tag {
                    FamilyTag::A => mu.shift(GroupElement::new(3, family.shift)).masses().to_vec(),
                    FamilyTag::B => closed_form_b(&mu, family.shift),
                    FamilyTag::C(k) => closed_form_c(&mu, k, family.shift),
                    FamilyTag::D(k) => closed_form_d(&mu, k, family.shift),
                };
                assert_eq!(sol.values, expected, "pattern {pattern} family {family}");
            }
        }
    }

    #[test]
    fn candidate_agrees_with_direct_inversion() {
        let mu = Measure::from_numerators(3, &[4, 0, 3, 6, 1, 4, 2, 4], 24).unwrap();
        for eps in SignPattern::all(3) {
            let sol = candidate(&mu, &eps);
            let flipped: Vec<Rational> = mu
                .char_fn()
                .values()
                .iter()
                .enumerate()
                .map(|(y, v)| rat(eps.sign(y) as i64, 1) * v)
                .collect();
            assert_eq!(sol.values, walsh_inverse(&flipped));
        }
    }

    #[test]
    fn l2_oracle_works() {
        let haar2 = Measure::haar(2);
        assert!(is_tec_bruteforce(&haar2).tec);
        let mu = Measure::from_numerators(2, &[4, 2, 1, 1], 8).unwrap();
        assert!(!is_tec_bruteforce(&mu).tec);
    }

    #[test]
    fn l4_oracle_handles_32768_patterns() {
        assert_eq!(SignPattern::count(4), 32_768);
        assert!(is_tec_bruteforce(&Measure::haar(4)).tec);
        assert!(is_tec_bruteforce(&Measure::point_mass(GroupElement::new(4, 9))).tec);
        // Two-point measure with unequal masses: the only equivalent
        // measures are supported on shifted two-point cosets.
        let mut masses = vec![Rational::zero(); 16];
        masses[0] = rat(2, 3);
        masses[5] = rat(1, 3);
        let mu = Measure::new(4, masses).unwrap();
        assert!(is_tec_bruteforce(&mu).tec);
        assert_eq!(equivalence_class(&mu).len(), 1);
    }

    #[test]
    fn integer_engines_agree() {
        // The i128 fast path and the BigInt fallback must walk the
        // pattern space identically.
        for nums in [[5u64, 3, 2, 6, 1, 4, 2, 1], [1, 0, 0, 7, 3, 3, 3, 7], [24, 0, 0, 0, 0, 0, 0, 0]] {
            let mu = Measure::from_numerators(3, &nums, 24).unwrap();
            let (big, den) = crate::scaled::scale_measure(&mu);
            let (small, _) = crate::scaled::downcast(&big, &den).unwrap();
            let fast = scan_for_counterexample(3, &small);
            let slow = scan_for_counterexample(3, &big);
            match (fast, slow) {
                (None, None) => {}
                (Some((p1, v1)), Some((p2, v2))) => {
                    assert_eq!(p1, p2);
                    let v1: Vec<BigInt> = v1.iter().map(|v| v.to_bigint()).collect();
                    assert_eq!(v1, v2);
                }
                other => panic!("engines disagree: {other:?}"),
            }
            assert_eq!(
                collect_class(3, &small, &den),
                collect_class(3, &big, &den),
                "class enumeration must not depend on the integer width"
            );
        }
    }

    #[test]
    fn big_denominator_falls_back_to_bigint() {
        // Denominators around 2^121 exceed the i128 headroom bound.
        let huge: i128 = 1 << 121;
        let masses = vec![
            Rational::new(BigInt::from(huge / 2 + 1), BigInt::from(huge)),
            Rational::new(BigInt::from(huge / 2 - 1), BigInt::from(huge)),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        let mu = Measure::new(3, masses).unwrap();
        // Supported on a two-element coset: TEC by the brute force.
        assert!(is_tec_bruteforce(&mu).tec);
    }
}
