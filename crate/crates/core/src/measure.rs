//! Probability measures on `Z_2^l` with exact rational masses, together
//! with the set predicates the classification conditions are built
//! from: the dominant-mass condition `U(E)`, the heavy-complement
//! condition `V(E)`, and the paired-sum condition `W(H, K)`.

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::group::{
    self, add_indices, group_order, overgroups, GroupElement, IndexPermutation, Subgroup,
};
use crate::rational::{rat, Rational};

/// A probability measure on `Z_2^l`: one nonnegative rational mass per
/// group element, summing to 1 exactly. Immutable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Measure {
    l: u32,
    masses: Vec<Rational>,
}

/// The characteristic function of a measure, one rational per character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharFnValues {
    l: u32,
    values: Vec<Rational>,
}

impl Measure {
    pub fn new(l: u32, masses: Vec<Rational>) -> Result<Self, Error> {
        if !(1..=group::MAX_EXPONENT).contains(&l) {
            return Err(Error::UnsupportedExponent { l, context: "measures" });
        }
        let n = group_order(l);
        if masses.len() != n {
            return Err(Error::MassCount { l, expected: n, got: masses.len() });
        }
        for (i, m) in masses.iter().enumerate() {
            if m < &Rational::zero() {
                return Err(Error::NegativeMass(m.clone(), i));
            }
        }
        let total: Rational = masses.iter().sum();
        if !total.is_one() {
            return Err(Error::MassSum(total));
        }
        Ok(Self { l, masses })
    }

    /// Measure with masses `numerators[i] / denominator`.
    pub fn from_numerators(l: u32, numerators: &[u64], denominator: u64) -> Result<Self, Error> {
        let masses = numerators
            .iter()
            .map(|&n| Rational::new((n as i64).into(), (denominator as i64).into()))
            .collect();
        Self::new(l, masses)
    }

    /// The uniform (Haar) measure.
    pub fn haar(l: u32) -> Self {
        let n = group_order(l) as i64;
        Self::new(l, (0..n).map(|_| rat(1, n)).collect()).expect("uniform masses are valid")
    }

    /// Unit mass at a single element.
    pub fn point_mass(x: GroupElement) -> Self {
        let mut masses = vec![Rational::zero(); group_order(x.l())];
        masses[x.index()] = Rational::one();
        Self::new(x.l(), masses).expect("a point mass is valid")
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    pub fn mass(&self, index: usize) -> &Rational {
        &self.masses[index]
    }

    /// Total mass of a set of element indices.
    pub fn mass_of(&self, indices: &[usize]) -> Rational {
        indices.iter().map(|&i| &self.masses[i]).sum()
    }

    pub fn mass_of_subgroup(&self, s: &Subgroup) -> Rational {
        s.member_indices().map(|i| &self.masses[i]).sum()
    }

    /// Shift by `x`: the result gives mass `mu({x_i + x})` to `x_i`.
    /// Shifting twice by the same element is the identity.
    pub fn shift(&self, x: GroupElement) -> Measure {
        assert_eq!(self.l, x.l(), "shift by an element of a different group");
        let masses = (0..self.masses.len())
            .map(|i| self.masses[add_indices(self.l, i, x.index())].clone())
            .collect();
        Measure { l: self.l, masses }
    }

    /// Relabels masses along an index permutation:
    /// `result[perm(i)] = self[i]`.
    pub fn permute(&self, perm: &IndexPermutation) -> Measure {
        assert_eq!(self.l, perm.l(), "permutation for a different group");
        Measure { l: self.l, masses: perm.push_forward(&self.masses) }
    }

    /// The characteristic function (character transform of the masses).
    pub fn char_fn(&self) -> CharFnValues {
        CharFnValues { l: self.l, values: group::walsh_forward(&self.masses) }
    }

    /// Indices carrying positive mass.
    pub fn support(&self) -> Vec<usize> {
        (0..self.masses.len()).filter(|&i| !self.masses[i].is_zero()).collect()
    }

    /// The largest single mass.
    pub fn a_max(&self) -> &Rational {
        self.masses.iter().max().expect("measures are nonempty")
    }

    /// Smallest index attaining the largest mass.
    pub fn argmax(&self) -> usize {
        let m = self.a_max().clone();
        self.masses.iter().position(|v| *v == m).expect("max exists")
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, m) in self.masses.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl CharFnValues {
    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, y: usize) -> &Rational {
        &self.values[y]
    }
}

/// Equivalence of measures: the absolute values of their characteristic
/// functions agree at every character.
pub fn equivalent(mu: &Measure, nu: &Measure) -> bool {
    assert_eq!(mu.l(), nu.l(), "measures on different groups");
    mu.char_fn()
        .values()
        .iter()
        .zip(nu.char_fn().values())
        .all(|(a, b)| a.abs() == b.abs())
}

/// Largest mass among the given element indices.
pub fn u_max(mu: &Measure, indices: &[usize]) -> Result<Rational, Error> {
    indices.iter().map(|&i| mu.mass(i)).max().cloned().ok_or(Error::EmptySet)
}

/// Smallest mass among the given element indices.
pub fn v_min(mu: &Measure, indices: &[usize]) -> Result<Rational, Error> {
    indices.iter().map(|&i| mu.mass(i)).min().cloned().ok_or(Error::EmptySet)
}

/// `mu` lies in `U(E)`: twice the largest mass on `E` strictly exceeds
/// `mu(E)` (one element outweighs the rest of the set).
pub fn in_u(mu: &Measure, indices: &[usize]) -> bool {
    let max = u_max(mu, indices).expect("U(E) needs a nonempty set");
    rat(2, 1) * max > mu.mass_of(indices)
}

/// `mu` lies in `V(E)`: `1/2` plus twice the smallest mass on `E` stays
/// strictly below `mu(E)`.
pub fn in_v(mu: &Measure, indices: &[usize]) -> bool {
    let min = v_min(mu, indices).expect("V(E) needs a nonempty set");
    rat(1, 2) + rat(2, 1) * min < mu.mass_of(indices)
}

/// `mu` lies in `W(H, K)` for an order-2 subgroup `H = {0, g}` and a
/// complementary order-4 subgroup `K`: writing the three overgroups of
/// `H` as `L_i = {0, g, s_i, t_i}` with `s_i` in `K` and `t_i = g + s_i`
/// in the coset of `K`, all three equalities
/// `mu({0, t_i}) = mu({g, s_i})` hold exactly.
pub fn in_w(mu: &Measure, h: &Subgroup, k: &Subgroup) -> Result<bool, Error> {
    if h.order() != 2 || k.order() != 4 {
        return Err(Error::Precondition("W(H,K) needs |H|=2 and |K|=4".into()));
    }
    if !h.intersects_trivially(k) {
        return Err(Error::Precondition("W(H,K) needs H and K to intersect trivially".into()));
    }
    let g = h.generator().index();
    for l_i in overgroups(h) {
        let s_i = l_i
            .member_indices()
            .find(|&i| i != 0 && k.contains_index(i))
            .expect("each overgroup meets K in exactly one nonzero element");
        let t_i = add_indices(3, g, s_i);
        let lhs = mu.mass(0) + mu.mass(t_i);
        let rhs = mu.mass(g) + mu.mass(s_i);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projection of `mu` onto `X_2` parallel to `X_1`: the mass at
/// `s` in `X_2` is `mu({s, s + g})` with `g` the nonzero element of
/// `X_1`. Returned in member order of `X_2`.
pub fn project_onto(mu: &Measure, x2: &Subgroup, x1: &Subgroup) -> Vec<Rational> {
    assert_eq!(x1.order(), 2, "X1 must have order 2");
    let g = x1.generator().index();
    x2.member_indices()
        .map(|s| mu.mass(s) + mu.mass(add_indices(mu.l(), s, g)))
        .collect()
}
