//! Arithmetic and combinatorics of the elementary abelian groups `Z_2^l`,
//! `l = 1..=4`: elements, characters, the pairing, the subgroup lattice,
//! the character (Walsh) transform, and the index substitutions used by
//! the 128-system partition.
//!
//! Elements carry a canonical index `0..2^l`. For `l = 3` the index
//! assignment is pinned to the ordering
//!
//! ```text
//! x0=(0,0,0)  x1=(1,0,0)  x2=(0,1,0)  x3=(0,0,1)
//! x4=(1,1,0)  x5=(1,0,1)  x6=(0,1,1)  x7=(1,1,1)
//! ```
//!
//! which orders elements by Hamming weight rather than by binary value
//! (index 3 is `(0,0,1)`, index 4 is `(1,1,0)`). Every subgroup table,
//! substitution, and closed form in this crate is stated in these
//! indices, so the assignment must never change. For `l != 3` the index
//! is the plain coordinate bitmask (first coordinate = least significant
//! bit).

use std::sync::OnceLock;

use crate::error::Error;
use crate::rational::Rational;
use num_traits::Zero;

/// Largest supported group exponent. Brute-force enumeration over sign
/// patterns is 2^(2^l - 1) systems, which is still fine at l = 4 and
/// hopeless beyond it.
pub const MAX_EXPONENT: u32 = 4;

/// Number of elements of `Z_2^l`.
pub fn group_order(l: u32) -> usize {
    assert!((1..=MAX_EXPONENT).contains(&l), "unsupported exponent l={l}");
    1 << l
}

/// An element of `Z_2^l`, identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    l: u32,
    index: u8,
}

/// A character of `Z_2^l`. The group is self-dual, so characters share
/// the element index space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    l: u32,
    index: u8,
}

impl GroupElement {
    pub fn new(l: u32, index: usize) -> Self {
        assert!(index < group_order(l), "element index {index} out of range for l={l}");
        Self { l, index: index as u8 }
    }

    pub fn identity(l: u32) -> Self {
        Self::new(l, 0)
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn index(&self) -> usize {
        self.index as usize
    }

    /// Coordinate bitmask; bit k is the (k+1)-th coordinate.
    pub fn coords(&self) -> usize {
        tables(self.l).index_to_mask[self.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.index == 0
    }

    /// Component-wise addition mod 2. Every element is its own inverse.
    pub fn add(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.l, other.l, "elements from different groups");
        GroupElement::new(self.l, add_indices(self.l, self.index(), other.index()))
    }

    /// The character with the same canonical index (self-duality).
    pub fn as_character(&self) -> Character {
        Character { l: self.l, index: self.index }
    }

    pub fn all(l: u32) -> impl Iterator<Item = GroupElement> {
        (0..group_order(l)).map(move |i| GroupElement::new(l, i))
    }
}

impl Character {
    pub fn new(l: u32, index: usize) -> Self {
        assert!(index < group_order(l), "character index {index} out of range for l={l}");
        Self { l, index: index as u8 }
    }

    pub fn trivial(l: u32) -> Self {
        Self::new(l, 0)
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn index(&self) -> usize {
        self.index as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    pub fn all(l: u32) -> impl Iterator<Item = Character> {
        (0..group_order(l)).map(move |i| Character::new(l, i))
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x{}", self.index)
    }
}

/// `(x, y) = (-1)^{<x, y>}` with the inner product of coordinate vectors
/// taken mod 2. Returns `+1` or `-1`.
pub fn pairing(x: GroupElement, y: Character) -> i32 {
    assert_eq!(x.l, y.l, "element and character from different groups");
    tables(x.l).pairing[x.index() * group_order(x.l) + y.index()] as i32
}

/// Index form of [`pairing`].
pub fn pairing_by_index(l: u32, i: usize, y: usize) -> i32 {
    tables(l).pairing[i * group_order(l) + y] as i32
}

/// Index form of element addition.
pub fn add_indices(l: u32, i: usize, j: usize) -> usize {
    tables(l).add[i * group_order(l) + j] as usize
}

/// A subgroup of `Z_2^l`, stored as the sorted set of member indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    l: u32,
    members: Vec<u8>,
}

impl Subgroup {
    /// Builds a subgroup from member indices, checking closure.
    pub fn new(l: u32, members: &[usize]) -> Result<Self, Error> {
        let mut sorted: Vec<u8> = members.iter().map(|&i| i as u8).collect();
        sorted.sort_unstable();
        sorted.dedup();
        let s = Self { l, members: sorted };
        if !s.contains_index(0) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in &s.members {
            for &b in &s.members {
                let c = add_indices(l, a as usize, b as usize);
                if !s.contains_index(c) {
                    return Err(Error::NotASubgroup(format!(
                        "not closed: x{a} + x{b} = x{c} escapes the set"
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn member_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&i| i as usize)
    }

    pub fn members(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.members.iter().map(move |&i| GroupElement::new(self.l, i as usize))
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.members.binary_search(&(index as u8)).is_ok()
    }

    pub fn contains(&self, x: GroupElement) -> bool {
        self.l == x.l && self.contains_index(x.index())
    }

    /// True when `self` and `other` intersect only in the identity.
    pub fn intersects_trivially(&self, other: &Subgroup) -> bool {
        self.member_indices()
            .filter(|&i| i != 0)
            .all(|i| !other.contains_index(i))
    }

    /// The nonzero member of an order-2 subgroup.
    pub fn generator(&self) -> GroupElement {
        assert_eq!(self.order(), 2, "generator() is for order-2 subgroups");
        GroupElement::new(self.l, self.members[1] as usize)
    }

    /// The complement `Z_2^l \ K`. For an index-2 subgroup this is its
    /// nontrivial coset.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..group_order(self.l)).filter(|&i| !self.contains_index(i)).collect()
    }
}

impl std::fmt::Display for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (n, &i) in self.members.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{i}")?;
        }
        write!(f, "}}")
    }
}

/// A direct-sum splitting `Z_2^3 = X_1 (+) X_2` with `X_1` of order 2 and
/// `X_2` of order 4. There are exactly 28 of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    x1: Subgroup,
    x2: Subgroup,
}

impl Decomposition {
    pub fn new(x1: Subgroup, x2: Subgroup) -> Result<Self, Error> {
        if x1.l() != 3 || x2.l() != 3 {
            return Err(Error::UnsupportedExponent { l: x1.l(), context: "decompositions" });
        }
        if x1.order() != 2 || x2.order() != 4 || !x1.intersects_trivially(&x2) {
            return Err(Error::NotADecomposition);
        }
        Ok(Self { x1, x2 })
    }

    pub fn x1(&self) -> &Subgroup {
        &self.x1
    }

    pub fn x2(&self) -> &Subgroup {
        &self.x2
    }

    /// All 28 decompositions, in `(H_i, K_j)` index order.
    pub fn enumerate() -> Vec<Decomposition> {
        all_decompositions().clone()
    }
}

/// Cached form of [`Decomposition::enumerate`].
pub(crate) fn all_decompositions() -> &'static Vec<Decomposition> {
    static ALL: OnceLock<Vec<Decomposition>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut out = Vec::with_capacity(28);
        for h in enumerate_a1() {
            for k in complements(&h) {
                out.push(Decomposition { x1: h.clone(), x2: k });
            }
        }
        out
    })
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let h = self.x1.members[1];
        let k = a2_position(&self.x2) + 1;
        write!(f, "H{h}+K{k}")
    }
}

/// Position of an order-4 subgroup within the pinned `K_1..K_7` list.
pub(crate) fn a2_position(k: &Subgroup) -> usize {
    enumerate_a2()
        .iter()
        .position(|c| c == k)
        .expect("order-4 subgroup missing from the K table")
}

/// Lattice index tables for `Z_2^3`, keyed by the pinned `K` order and
/// by the generator of an order-2 subgroup.
pub(crate) struct L3Lattice {
    /// `K` table positions of the three overgroups of `H_g`, per `g - 1`.
    pub overgroups_of: [[usize; 3]; 7],
    /// `K` table positions of the four complements of `H_g`, per `g - 1`.
    pub complements_of: [[usize; 4]; 7],
    /// Member indices of the nontrivial coset of `K_i`, per table position.
    pub cosets: [[usize; 4]; 7],
}

pub(crate) fn l3_lattice() -> &'static L3Lattice {
    static LATTICE: OnceLock<L3Lattice> = OnceLock::new();
    LATTICE.get_or_init(|| {
        let a2 = enumerate_a2();
        let mut overgroups_of = [[0usize; 3]; 7];
        let mut complements_of = [[0usize; 4]; 7];
        for g in 1..8 {
            let over: Vec<usize> =
                (0..7).filter(|&i| a2[i].contains_index(g)).collect();
            let comp: Vec<usize> =
                (0..7).filter(|&i| !a2[i].contains_index(g)).collect();
            overgroups_of[g - 1].copy_from_slice(&over);
            complements_of[g - 1].copy_from_slice(&comp);
        }
        let mut cosets = [[0usize; 4]; 7];
        for (i, k) in a2.iter().enumerate() {
            cosets[i].copy_from_slice(&complement_coset(k));
        }
        L3Lattice { overgroups_of, complements_of, cosets }
    })
}

/// A bijection of the canonical index space `{0..2^l - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexPermutation {
    l: u32,
    perm: Vec<u8>,
}

impl IndexPermutation {
    pub fn new(l: u32, perm: &[usize]) -> Self {
        let n = group_order(l);
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut seen = vec![false; n];
        for &p in perm {
            assert!(p < n && !seen[p], "not a bijection");
            seen[p] = true;
        }
        Self { l, perm: perm.iter().map(|&p| p as u8).collect() }
    }

    pub fn identity(l: u32) -> Self {
        Self::new(l, &(0..group_order(l)).collect::<Vec<_>>())
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn apply(&self, index: usize) -> usize {
        self.perm[index] as usize
    }

    pub fn is_involution(&self) -> bool {
        (0..self.perm.len()).all(|i| self.apply(self.apply(i)) == i)
    }

    /// Push-forward of a vector indexed by group elements:
    /// `result[perm(i)] = values[i]`.
    pub fn push_forward<T: Clone>(&self, values: &[T]) -> Vec<T> {
        assert_eq!(values.len(), self.perm.len());
        let mut out = values.to_vec();
        for (i, v) in values.iter().enumerate() {
            out[self.apply(i)] = v.clone();
        }
        out
    }

    pub fn apply_to_set(&self, indices: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = indices.iter().map(|&i| self.apply(i)).collect();
        out.sort_unstable();
        out
    }
}

// ---------------------------------------------------------------------------
// Cached per-l tables.

struct Tables {
    index_to_mask: Vec<usize>,
    mask_to_index: Vec<usize>,
    /// add[i * n + j] = canonical index of x_i + x_j.
    add: Vec<u8>,
    /// pairing[i * n + y] = (x_i, y) in {+1, -1}.
    pairing: Vec<i8>,
}

fn build_tables(l: u32) -> Tables {
    let n = group_order(l);
    // The pinned l=3 numbering deviates from binary order in one place:
    // index 3 <-> mask 4 and index 4 <-> mask 3.
    let index_to_mask: Vec<usize> = if l == 3 {
        vec![0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]
    } else {
        (0..n).collect()
    };
    let mut mask_to_index = vec![0usize; n];
    for (i, &m) in index_to_mask.iter().enumerate() {
        mask_to_index[m] = i;
    }
    let mut add = vec![0u8; n * n];
    let mut pairing = vec![0i8; n * n];
    for i in 0..n {
        for j in 0..n {
            add[i * n + j] = mask_to_index[index_to_mask[i] ^ index_to_mask[j]] as u8;
            let dot = (index_to_mask[i] & index_to_mask[j]).count_ones();
            pairing[i * n + j] = if dot.is_multiple_of(2) { 1 } else { -1 };
        }
    }
    Tables { index_to_mask, mask_to_index, add, pairing }
}

fn tables(l: u32) -> &'static Tables {
    static TABLES: OnceLock<[Tables; MAX_EXPONENT as usize]> = OnceLock::new();
    let all = TABLES.get_or_init(|| [build_tables(1), build_tables(2), build_tables(3), build_tables(4)]);
    assert!((1..=MAX_EXPONENT).contains(&l), "unsupported exponent l={l}");
    &all[(l - 1) as usize]
}

// ---------------------------------------------------------------------------
// Subgroup lattice.

/// All subgroups of `Z_2^l`, found by brute force over subsets closed
/// under addition, grouped by order. Cached.
fn all_subgroups(l: u32) -> &'static Vec<Subgroup> {
    static CACHE: OnceLock<[Vec<Subgroup>; MAX_EXPONENT as usize]> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        let mut per_l: [Vec<Subgroup>; MAX_EXPONENT as usize] = Default::default();
        for l in 1..=MAX_EXPONENT {
            let n = group_order(l);
            let mut found = Vec::new();
            // Subsets containing the identity, tested for closure.
            for bits in 0..(1u32 << n) {
                if bits & 1 == 0 {
                    continue;
                }
                let members: Vec<usize> = (0..n).filter(|&i| bits >> i & 1 == 1).collect();
                let closed = members.iter().all(|&a| {
                    members.iter().all(|&b| bits >> add_indices(l, a, b) & 1 == 1)
                });
                if closed {
                    found.push(Subgroup::new(l, &members).expect("closure already verified"));
                }
            }
            found.sort();
            per_l[(l - 1) as usize] = found;
        }
        per_l
    });
    &all[(l - 1) as usize]
}

/// Subgroups of the given order, sorted by member list.
pub fn subgroups_of_order(l: u32, order: usize) -> Vec<Subgroup> {
    all_subgroups(l).iter().filter(|s| s.order() == order).cloned().collect()
}

/// The family `A_1`: the seven order-2 subgroups `H_i = {x0, x_i}` of
/// `Z_2^3`, in index order.
pub fn enumerate_a1() -> Vec<Subgroup> {
    (1..8)
        .map(|i| Subgroup::new(3, &[0, i]).expect("order-2 sets are closed"))
        .collect()
}

/// Member indices of `K_1..K_7`.
const A2_TABLE: [[usize; 4]; 7] = [
    [0, 2, 3, 6],
    [0, 1, 3, 5],
    [0, 1, 2, 4],
    [0, 1, 6, 7],
    [0, 3, 4, 7],
    [0, 2, 5, 7],
    [0, 4, 5, 6],
];

/// The family `A_2`: the seven order-4 subgroups `K_1..K_7` of `Z_2^3`,
/// in the pinned table order.
pub fn enumerate_a2() -> &'static Vec<Subgroup> {
    static A2: OnceLock<Vec<Subgroup>> = OnceLock::new();
    A2.get_or_init(|| {
        let pinned: Vec<Subgroup> = A2_TABLE
            .iter()
            .map(|m| Subgroup::new(3, m).expect("K table rows are subgroups"))
            .collect();
        // The pinned table must agree with brute-force enumeration.
        let mut sorted = pinned.clone();
        sorted.sort();
        assert_eq!(sorted, subgroups_of_order(3, 4), "K table out of sync with the lattice");
        pinned
    })
}

/// The complement `Z_2^3 \ K` of an order-4 subgroup (its nontrivial
/// coset), as sorted indices.
pub fn complement_coset(k: &Subgroup) -> Vec<usize> {
    assert_eq!(k.order(), 4, "complement_coset expects an order-4 subgroup");
    k.complement_indices()
}

/// The three members of `A_2` containing the order-2 subgroup `h`, in
/// `K` table order.
pub fn overgroups(h: &Subgroup) -> Vec<Subgroup> {
    assert_eq!(h.l(), 3, "the subgroup families are specific to Z_2^3");
    assert_eq!(h.order(), 2, "overgroups expects an order-2 subgroup");
    let g = h.generator().index();
    let a2 = enumerate_a2();
    l3_lattice().overgroups_of[g - 1].iter().map(|&i| a2[i].clone()).collect()
}

/// The four members of `A_2` meeting the order-2 subgroup `h` only in
/// the identity, in `K` table order.
pub fn complements(h: &Subgroup) -> Vec<Subgroup> {
    assert_eq!(h.l(), 3, "the subgroup families are specific to Z_2^3");
    assert_eq!(h.order(), 2, "complements expects an order-2 subgroup");
    let g = h.generator().index();
    let a2 = enumerate_a2();
    l3_lattice().complements_of[g - 1].iter().map(|&i| a2[i].clone()).collect()
}

/// The unique element `z` of the coset of `k_j` with `z` outside `h` and
/// outside `k_j0`.
pub fn lemma1_z(h: &Subgroup, k_j0: &Subgroup, k_j: &Subgroup) -> Result<GroupElement, Error> {
    if h.order() != 2 || k_j0.order() != 4 || k_j.order() != 4 {
        return Err(Error::Precondition("lemma1_z: need |h|=2 and |k|=4".into()));
    }
    if !h.intersects_trivially(k_j0) || !h.intersects_trivially(k_j) {
        return Err(Error::Precondition("lemma1_z: subgroups must be complementary to h".into()));
    }
    if k_j0 == k_j {
        return Err(Error::Precondition("lemma1_z: the two complements must differ".into()));
    }
    let g = h.generator().index();
    let candidates: Vec<usize> = complement_coset(k_j)
        .into_iter()
        .filter(|&z| z != g && !k_j0.contains_index(z))
        .collect();
    match candidates.as_slice() {
        [z] => Ok(GroupElement::new(3, *z)),
        _ => Err(Error::Precondition(format!(
            "lemma1_z: expected a unique candidate, found {}",
            candidates.len()
        ))),
    }
}

// ---------------------------------------------------------------------------
// Character transform.

/// Character transform: value at character `y` is
/// `sum_i masses[i] * (x_i, y)`.
pub fn walsh_forward(masses: &[Rational]) -> Vec<Rational> {
    let l = exponent_for_len(masses.len());
    let n = group_order(l);
    (0..n)
        .map(|y| {
            let mut acc = Rational::zero();
            for (i, m) in masses.iter().enumerate() {
                if pairing_by_index(l, i, y) > 0 {
                    acc += m;
                } else {
                    acc -= m;
                }
            }
            acc
        })
        .collect()
}

/// Inverse of [`walsh_forward`], normalized by `1/2^l`. Exact:
/// `walsh_inverse(walsh_forward(a)) == a`.
pub fn walsh_inverse(values: &[Rational]) -> Vec<Rational> {
    let l = exponent_for_len(values.len());
    let scale = Rational::new(1.into(), (group_order(l) as i64).into());
    walsh_forward(values).into_iter().map(|v| v * &scale).collect()
}

fn exponent_for_len(len: usize) -> u32 {
    for l in 1..=MAX_EXPONENT {
        if group_order(l) == len {
            return l;
        }
    }
    panic!("vector length {len} is not 2^l for l=1..={MAX_EXPONENT}");
}

// ---------------------------------------------------------------------------
// Substitutions and automorphisms.

/// Cycle notation of the substitutions `sigma_1..sigma_7`; `sigma_k`
/// carries `K_1` onto `K_k`.
const SIGMA_TABLE: [[usize; 8]; 7] = [
    [0, 1, 2, 3, 4, 5, 6, 7], // e
    [0, 2, 1, 3, 4, 6, 5, 7], // (12)(56)
    [0, 3, 2, 1, 6, 5, 4, 7], // (13)(46)
    [0, 2, 1, 7, 4, 5, 6, 3], // (12)(37)
    [0, 1, 4, 3, 2, 5, 7, 6], // (24)(67)
    [0, 1, 2, 5, 4, 3, 7, 6], // (35)(67)
    [0, 1, 4, 5, 2, 3, 6, 7], // (24)(35)
];

/// The index substitution `sigma_k`, `k = 1..=7`.
pub fn sigma(k: usize) -> IndexPermutation {
    assert!((1..=7).contains(&k), "sigma index {k} out of range");
    IndexPermutation::new(3, &SIGMA_TABLE[k - 1])
}

/// All automorphisms of `Z_2^l` as index permutations (invertible linear
/// maps on coordinates; 168 of them for l = 3). Cached.
pub fn automorphisms(l: u32) -> &'static Vec<IndexPermutation> {
    static CACHE: OnceLock<[Vec<IndexPermutation>; MAX_EXPONENT as usize]> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        let mut per_l: [Vec<IndexPermutation>; MAX_EXPONENT as usize] = Default::default();
        for l in 1..=MAX_EXPONENT {
            let n = group_order(l);
            let lb = l as usize;
            let mut perms = Vec::new();
            // A linear map is a choice of l column masks; keep the invertible ones.
            let mut cols = vec![0usize; lb];
            loop {
                let image = |mask: usize| -> usize {
                    (0..lb).filter(|&b| mask >> b & 1 == 1).fold(0, |acc, b| acc ^ cols[b])
                };
                let mut hit = vec![false; n];
                let mut bijective = true;
                for m in 0..n {
                    let im = image(m);
                    if hit[im] {
                        bijective = false;
                        break;
                    }
                    hit[im] = true;
                }
                if bijective {
                    let t = tables(l);
                    let perm: Vec<usize> =
                        (0..n).map(|i| t.mask_to_index[image(t.index_to_mask[i])]).collect();
                    perms.push(IndexPermutation::new(l, &perm));
                }
                // Odometer over the l column masks.
                let mut carry = 0;
                loop {
                    cols[carry] += 1;
                    if cols[carry] < n {
                        break;
                    }
                    cols[carry] = 0;
                    carry += 1;
                    if carry == lb {
                        break;
                    }
                }
                if carry == lb {
                    break;
                }
            }
            perms.sort_by(|a, b| a.perm.cmp(&b.perm));
            per_l[(l - 1) as usize] = perms;
        }
        per_l
    });
    &all[(l - 1) as usize]
}
