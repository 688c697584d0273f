//! Closed-form TEC decision for `Z_2^3` with witness output.
//!
//! After shifting the largest mass to the identity, a measure has a
//! trivial equivalence class exactly when one of seven condition
//! branches holds: for `a_max <= 1/4`, some direct-sum decomposition
//! satisfies the projection condition I.1 together with one of
//! I.2(a)/(b)/(c); for `a_max > 1/4`, either the decomposition-free
//! condition II.1 holds or some decomposition satisfies one of
//! II.2/II.3/II.4. The verdict names the first satisfied branch in a
//! fixed scan order — II.1 first, then decompositions in `(H_i, K_j)`
//! index order with the sub-branches tried in order at each one — so
//! output is reproducible byte-for-byte.

use num_traits::One;

use crate::group::{Decomposition, GroupElement, Subgroup};
use crate::measure::{in_w, u_max, v_min, Measure};
use crate::oracle::{self, SignPattern};
use crate::rational::{rat, Rational};

/// Which of the three I.2 requirements held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchISub {
    A,
    B,
    C,
}

/// Which of the four II conditions held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchIISub {
    One,
    Two,
    Three,
    Four,
}

/// The evidence behind a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TecWitness {
    /// `a_max <= 1/4`: condition I.1 plus the named I.2 requirement held
    /// at this decomposition.
    BranchI { decomposition: Decomposition, sub: BranchISub },
    /// `a_max > 1/4`: the named II condition held; II.1 consults no
    /// decomposition.
    BranchII { decomposition: Option<Decomposition>, sub: BranchIISub },
    /// The `a_max > 5/6` sufficient condition.
    Corollary1,
    /// Brute force: every valid sign-pattern candidate is a shift.
    ExhaustiveTrivial,
    /// A nontrivial equivalent measure.
    Counterexample { pattern: SignPattern, measure: Measure },
}

/// TEC verdict with witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TecVerdict {
    pub tec: bool,
    pub witness: TecWitness,
    /// Shift applied to move the largest mass to the identity.
    pub normalizing_shift: GroupElement,
}

impl std::fmt::Display for BranchISub {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BranchISub::A => write!(f, "I.2a"),
            BranchISub::B => write!(f, "I.2b"),
            BranchISub::C => write!(f, "I.2c"),
        }
    }
}

impl std::fmt::Display for BranchIISub {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BranchIISub::One => write!(f, "II.1"),
            BranchIISub::Two => write!(f, "II.2"),
            BranchIISub::Three => write!(f, "II.3"),
            BranchIISub::Four => write!(f, "II.4"),
        }
    }
}

impl std::fmt::Display for TecWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TecWitness::BranchI { decomposition, sub } => {
                write!(f, "branch-I {sub} {decomposition}")
            }
            TecWitness::BranchII { decomposition: Some(d), sub } => {
                write!(f, "branch-II {sub} {d}")
            }
            TecWitness::BranchII { decomposition: None, sub } => {
                write!(f, "branch-II {sub} none")
            }
            TecWitness::Corollary1 => write!(f, "corollary-1"),
            TecWitness::ExhaustiveTrivial => write!(f, "exhaustive-trivial"),
            TecWitness::Counterexample { pattern, measure } => {
                write!(f, "counterexample pattern={pattern} masses={measure}")
            }
        }
    }
}

/// Shifts the smallest-index element attaining the largest mass to the
/// identity. Returns the normalized measure and the shift used.
pub fn normalize(mu: &Measure) -> (Measure, GroupElement) {
    let shift = GroupElement::new(mu.l(), mu.argmax());
    (mu.shift(shift), shift)
}

/// Per-measure evaluation context: the `U`/`V` verdicts and extremal
/// masses on every order-4 subgroup and its coset, computed once, plus
/// lazy results for the conditions that depend only on `X_1`. The
/// condition tree consults these values across all 28 decompositions,
/// and the public `cond_*` functions delegate here, so each condition
/// has exactly one implementation.
struct ScanContext<'a> {
    mu: &'a Measure,
    /// `mu(K_i)`, per `K` table position.
    sub_sum: Vec<Rational>,
    /// `U(K_i)` and `U` of its coset.
    u_sub: Vec<bool>,
    u_coset: Vec<bool>,
    /// `V(K_i)` and `V` of its coset.
    v_sub: Vec<bool>,
    v_coset: Vec<bool>,
    /// Largest mass on the coset of `K_i`.
    coset_max: Vec<Rational>,
    /// Conditions that depend only on the generator of `X_1`,
    /// memoized per generator (slot `g - 1`).
    i1_by_h: [Option<bool>; 7],
    i2c_by_h: [Option<bool>; 7],
    ii2_by_h: [Option<bool>; 7],
}

impl<'a> ScanContext<'a> {
    fn new(mu: &'a Measure) -> Self {
        assert_eq!(mu.l(), 3, "the condition tree is specific to Z_2^3");
        let a2 = crate::group::enumerate_a2();
        let lattice = crate::group::l3_lattice();
        let half = rat(1, 2);
        let two = rat(2, 1);
        let n = a2.len();
        let mut ctx = ScanContext {
            mu,
            sub_sum: Vec::with_capacity(n),
            u_sub: Vec::with_capacity(n),
            u_coset: Vec::with_capacity(n),
            v_sub: Vec::with_capacity(n),
            v_coset: Vec::with_capacity(n),
            coset_max: Vec::with_capacity(n),
            i1_by_h: [None; 7],
            i2c_by_h: [None; 7],
            ii2_by_h: [None; 7],
        };
        for (pos, k) in a2.iter().enumerate() {
            let members: Vec<usize> = k.member_indices().collect();
            let coset = &lattice.cosets[pos];
            let sub_sum = mu.mass_of(&members);
            let coset_sum = Rational::one() - &sub_sum;
            let sub_max = u_max(mu, &members).expect("subgroups are nonempty");
            let sub_min = v_min(mu, &members).expect("subgroups are nonempty");
            let coset_max = u_max(mu, coset).expect("cosets are nonempty");
            let coset_min = v_min(mu, coset).expect("cosets are nonempty");
            ctx.u_sub.push(&two * &sub_max > sub_sum);
            ctx.u_coset.push(&two * &coset_max > coset_sum);
            ctx.v_sub.push(&half + &two * &sub_min < sub_sum);
            ctx.v_coset.push(&half + &two * &coset_min < coset_sum);
            ctx.sub_sum.push(sub_sum);
            ctx.coset_max.push(coset_max);
        }
        ctx
    }

    fn u_either(&self, pos: usize) -> bool {
        self.u_sub[pos] || self.u_coset[pos]
    }

    fn v_either(&self, pos: usize) -> bool {
        self.v_sub[pos] || self.v_coset[pos]
    }

    fn x2_position(d: &Decomposition) -> usize {
        crate::group::a2_position(d.x2())
    }

    /// I.1 holds exactly when all four cosets of `X_1` carry mass 1/4;
    /// any complementary `X_2` picks one representative per coset, so
    /// the condition depends only on `X_1`.
    fn i1(&mut self, d: &Decomposition) -> bool {
        let g = d.x1().generator().index();
        if let Some(v) = self.i1_by_h[g - 1] {
            return v;
        }
        let quarter = rat(1, 4);
        let v = d
            .x2()
            .member_indices()
            .all(|s| self.mu.mass(s) + self.mu.mass(crate::group::add_indices(3, s, g)) == quarter);
        self.i1_by_h[g - 1] = Some(v);
        v
    }

    fn i2a(&self, d: &Decomposition) -> bool {
        self.sub_sum[Self::x2_position(d)] == rat(1, 2)
    }

    fn i2b(&self, d: &Decomposition) -> bool {
        let m: Vec<&Rational> = d.x2().member_indices().map(|i| self.mu.mass(i)).collect();
        m[0] + m[1] == m[2] + m[3] || m[0] + m[2] == m[1] + m[3] || m[0] + m[3] == m[1] + m[2]
    }

    fn i2c(&mut self, d: &Decomposition) -> bool {
        let g = d.x1().generator().index();
        if let Some(v) = self.i2c_by_h[g - 1] {
            return v;
        }
        let v = self.compute_i2c(d.x1(), g);
        self.i2c_by_h[g - 1] = Some(v);
        v
    }

    fn compute_i2c(&self, x1: &Subgroup, g: usize) -> bool {
        let a2 = crate::group::enumerate_a2();
        let comps = &crate::group::l3_lattice().complements_of[g - 1];
        'candidates: for &j0 in comps {
            if !self.u_sub[j0] {
                continue;
            }
            for &j in comps {
                if j == j0 {
                    continue;
                }
                let z = crate::group::lemma1_z(x1, &a2[j0], &a2[j])
                    .expect("complements of X1 satisfy the lattice preconditions");
                if self.coset_max[j] != *self.mu.mass(z.index()) {
                    continue 'candidates;
                }
            }
            return true;
        }
        false
    }

    fn ii1(&self) -> bool {
        (0..7).all(|pos| self.u_either(pos) && self.v_either(pos))
    }

    fn ii2(&mut self, d: &Decomposition) -> bool {
        let g = d.x1().generator().index();
        if let Some(v) = self.ii2_by_h[g - 1] {
            return v;
        }
        let a2 = crate::group::enumerate_a2();
        let comps = &crate::group::l3_lattice().complements_of[g - 1];
        let v = comps.iter().all(|&pos| self.u_either(pos))
            && comps.iter().any(|&pos| {
                in_w(self.mu, d.x1(), &a2[pos]).expect("complements satisfy the W preconditions")
            });
        self.ii2_by_h[g - 1] = Some(v);
        v
    }

    fn ii3(&self, d: &Decomposition) -> bool {
        let x2_pos = Self::x2_position(d);
        if !(0..7).filter(|&pos| pos != x2_pos).all(|pos| self.u_either(pos)) {
            return false;
        }
        let members: Vec<usize> = d.x2().member_indices().collect();
        let g = d.x1().generator().index();
        let splits = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
        splits.iter().any(|&[p, q, r, s]| {
            let balanced = |shift: usize| {
                let at = |i: usize| self.mu.mass(crate::group::add_indices(3, members[i], shift));
                at(p) + at(q) == at(r) + at(s)
            };
            balanced(0) && balanced(g)
        })
    }

    fn ii4(&self, d: &Decomposition) -> bool {
        let x2_pos = Self::x2_position(d);
        self.i2a(d)
            && (0..7).filter(|&pos| pos != x2_pos).all(|pos| self.v_either(pos))
            && (0..7).all(|pos| self.u_either(pos))
    }
}

/// I.1: the projection of `mu` onto `X_2` parallel to `X_1` is the Haar
/// measure of `X_2`.
pub fn cond_i1(mu: &Measure, d: &Decomposition) -> bool {
    ScanContext::new(mu).i1(d)
}

/// I.2(a) (also II.4(a)): the projection onto `X_1` parallel to `X_2`
/// is the Haar measure of `X_1`, i.e. `mu(X_2) = 1/2`.
pub fn cond_i2a(mu: &Measure, d: &Decomposition) -> bool {
    ScanContext::new(mu).i2a(d)
}

/// I.2(b): the four masses on `X_2` split into two pairs with equal
/// sums.
pub fn cond_i2b(mu: &Measure, d: &Decomposition) -> bool {
    ScanContext::new(mu).i2b(d)
}

/// I.2(c): among the four subgroups `K^(j)` not containing `X_1`, some
/// `K^(j0)` has a dominant mass, and for every other `j` the largest
/// mass on the coset of `K^(j)` sits exactly at the element `z_j`
/// singled out by the lattice (outside `X_1` and outside `K^(j0)`).
pub fn cond_i2c(mu: &Measure, d: &Decomposition) -> bool {
    ScanContext::new(mu).i2c(d)
}

/// II.1: for every `K` in the order-4 family, `U` holds on `K` or its
/// coset, and `V` holds on `K` or its coset. Consults no decomposition.
pub fn cond_ii1(mu: &Measure) -> bool {
    ScanContext::new(mu).ii1()
}

/// II.2: `mu` lies in `W(X_1, K)` for at least one complement `K` of
/// `X_1`, and `U` holds on every complement or its coset.
pub fn cond_ii2(mu: &Measure, d: &Decomposition) -> bool {
    ScanContext::new(mu).ii2(d)
}

/// II.3: some two-point subset `E` of `X_2` balances its complement in
/// `X_2` along both cosets of `X_1`, and `U` holds on every `K != X_2`
/// or its coset.
pub fn cond_ii3(mu: &Measure, d: &Decomposition) -> bool {
    ScanContext::new(mu).ii3(d)
}

/// II.4: the I.2(a) projection condition, `V` on every `K != X_2` or
/// its coset, and `U` on every `K` or its coset.
pub fn cond_ii4(mu: &Measure, d: &Decomposition) -> bool {
    ScanContext::new(mu).ii4(d)
}

/// Scans the condition tree of an already-normalized measure
/// (`mu.mass(0)` must be the largest mass). Returns the first satisfied
/// branch, or `None` when no branch is satisfiable.
pub fn theorem4_conditions(mu: &Measure) -> Option<TecWitness> {
    assert_eq!(mu.l(), 3, "the condition tree is specific to Z_2^3");
    assert_eq!(mu.mass(0), mu.a_max(), "measure must be normalized first");
    let mut ctx = ScanContext::new(mu);
    let decompositions = crate::group::all_decompositions();
    if *mu.a_max() <= rat(1, 4) {
        for d in decompositions {
            if !ctx.i1(d) {
                continue;
            }
            if ctx.i2a(d) {
                return Some(TecWitness::BranchI { decomposition: d.clone(), sub: BranchISub::A });
            }
            if ctx.i2b(d) {
                return Some(TecWitness::BranchI { decomposition: d.clone(), sub: BranchISub::B });
            }
            if ctx.i2c(d) {
                return Some(TecWitness::BranchI { decomposition: d.clone(), sub: BranchISub::C });
            }
        }
        None
    } else {
        if ctx.ii1() {
            return Some(TecWitness::BranchII { decomposition: None, sub: BranchIISub::One });
        }
        for d in decompositions {
            if ctx.ii2(d) {
                return Some(TecWitness::BranchII {
                    decomposition: Some(d.clone()),
                    sub: BranchIISub::Two,
                });
            }
            if ctx.ii3(d) {
                return Some(TecWitness::BranchII {
                    decomposition: Some(d.clone()),
                    sub: BranchIISub::Three,
                });
            }
            if ctx.ii4(d) {
                return Some(TecWitness::BranchII {
                    decomposition: Some(d.clone()),
                    sub: BranchIISub::Four,
                });
            }
        }
        None
    }
}

/// Every satisfied branch of the normalized measure, in scan order.
/// Useful when the first witness is not the one of interest.
pub fn enumerate_witnesses(mu: &Measure) -> Vec<TecWitness> {
    let (normalized, _) = normalize(mu);
    let mut out = Vec::new();
    let mut ctx = ScanContext::new(&normalized);
    let decompositions = crate::group::all_decompositions();
    if *normalized.a_max() <= rat(1, 4) {
        for d in decompositions {
            if !ctx.i1(d) {
                continue;
            }
            if ctx.i2a(d) {
                out.push(TecWitness::BranchI { decomposition: d.clone(), sub: BranchISub::A });
            }
            if ctx.i2b(d) {
                out.push(TecWitness::BranchI { decomposition: d.clone(), sub: BranchISub::B });
            }
            if ctx.i2c(d) {
                out.push(TecWitness::BranchI { decomposition: d.clone(), sub: BranchISub::C });
            }
        }
    } else {
        if ctx.ii1() {
            out.push(TecWitness::BranchII { decomposition: None, sub: BranchIISub::One });
        }
        for d in decompositions {
            if ctx.ii2(d) {
                out.push(TecWitness::BranchII {
                    decomposition: Some(d.clone()),
                    sub: BranchIISub::Two,
                });
            }
            if ctx.ii3(d) {
                out.push(TecWitness::BranchII {
                    decomposition: Some(d.clone()),
                    sub: BranchIISub::Three,
                });
            }
            if ctx.ii4(d) {
                out.push(TecWitness::BranchII {
                    decomposition: Some(d.clone()),
                    sub: BranchIISub::Four,
                });
            }
        }
    }
    out
}

/// Closed-form TEC verdict. Normalizes, scans the condition tree, and
/// on a negative verdict delegates one brute-force run to attach a
/// constructive counterexample for the original measure.
pub fn is_tec_theorem4(mu: &Measure) -> TecVerdict {
    let (normalized, shift) = normalize(mu);
    match theorem4_conditions(&normalized) {
        Some(witness) => TecVerdict { tec: true, witness, normalizing_shift: shift },
        None => {
            let verdict = oracle::is_tec_bruteforce(mu);
            TecVerdict { tec: false, witness: verdict.witness, normalizing_shift: shift }
        }
    }
}

/// Sufficient condition shortcut: a mass above `5/6` settles the
/// verdict without touching the condition tree. `None` means no
/// decision.
pub fn corollary1_fast(mu: &Measure) -> Option<bool> {
    assert_eq!(mu.l(), 3);
    if *mu.a_max() > rat(5, 6) {
        Some(true)
    } else {
        None
    }
}
