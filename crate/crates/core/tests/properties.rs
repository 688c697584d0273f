//! Property tests for the structural invariants: transform identities,
//! shift and automorphism equivariance, candidate algebra, and
//! agreement between the closed-form classifier and the brute-force
//! enumeration on random measures.

use proptest::prelude::*;

use tec_core::group::{automorphisms, pairing_by_index, walsh_forward, walsh_inverse};
use tec_core::measure::{equivalent, in_u, in_v, in_w, project_onto};
use tec_core::oracle::{candidate, closed_form_c, closed_form_d};
use tec_core::{
    classify_systems, enumerate_a1, enumerate_a2, is_tec_bruteforce, is_tec_theorem4, rat,
    Decomposition, FamilyTag, GroupElement, Measure, Rational, SignPattern,
};

fn measure_strategy() -> impl Strategy<Value = Measure> {
    proptest::collection::vec(0u64..40, 8)
        .prop_filter("needs positive total mass", |v| v.iter().sum::<u64>() > 0)
        .prop_map(|nums| {
            let total: u64 = nums.iter().sum();
            Measure::from_numerators(3, &nums, total).expect("composition masses are valid")
        })
}

fn rational_vec_strategy() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-50i64..50, 1i64..30), 8)
        .prop_map(|pairs| pairs.into_iter().map(|(n, d)| rat(n, d)).collect())
}

proptest! {
    #[test]
    fn walsh_round_trip_is_exact(values in rational_vec_strategy()) {
        prop_assert_eq!(walsh_inverse(&walsh_forward(&values)), values.clone());
        prop_assert_eq!(walsh_forward(&walsh_inverse(&values)), values);
    }

    #[test]
    fn parseval_identity(values in rational_vec_strategy()) {
        let spectrum = walsh_forward(&values);
        let lhs: Rational = spectrum.iter().map(|v| v * v).sum();
        let rhs: Rational = rat(8, 1) * values.iter().map(|v| v * v).sum::<Rational>();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_preserves_mass_multiset(mu in measure_strategy(), j in 0usize..8) {
        let nu = mu.shift(GroupElement::new(3, j));
        let mut a = mu.masses().to_vec();
        let mut b = nu.masses().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(nu.shift(GroupElement::new(3, j)), mu);
    }

    #[test]
    fn equivalence_is_reflexive_symmetric_and_shift_invariant(
        mu in measure_strategy(),
        nu in measure_strategy(),
        j in 0usize..8,
    ) {
        prop_assert!(equivalent(&mu, &mu));
        prop_assert_eq!(equivalent(&mu, &nu), equivalent(&nu, &mu));
        let shifted = nu.shift(GroupElement::new(3, j));
        prop_assert_eq!(equivalent(&mu, &nu), equivalent(&mu, &shifted));
    }

    #[test]
    fn spectrum_of_shift_is_a_character_multiple(mu in measure_strategy(), j in 0usize..8) {
        let base = mu.char_fn();
        let shifted = mu.shift(GroupElement::new(3, j)).char_fn();
        for y in 0..8 {
            let sign = rat(pairing_by_index(3, j, y) as i64, 1);
            prop_assert_eq!(shifted.value(y).clone(), sign * base.value(y));
        }
    }

    #[test]
    fn predicates_are_automorphism_equivariant(
        mu in measure_strategy(),
        phi_index in 0usize..168,
    ) {
        let phi = &automorphisms(3)[phi_index];
        let relabeled = mu.permute(phi);
        for k in enumerate_a2() {
            let original: Vec<usize> = k.member_indices().collect();
            let image = phi.apply_to_set(&original);
            prop_assert_eq!(in_u(&mu, &original), in_u(&relabeled, &image));
            prop_assert_eq!(in_v(&mu, &original), in_v(&relabeled, &image));
        }
        for h in enumerate_a1() {
            for k in tec_core::complements(&h) {
                let h_img = tec_core::Subgroup::new(
                    3,
                    &phi.apply_to_set(&h.member_indices().collect::<Vec<_>>()),
                )
                .expect("automorphisms carry subgroups to subgroups");
                let k_img = tec_core::Subgroup::new(
                    3,
                    &phi.apply_to_set(&k.member_indices().collect::<Vec<_>>()),
                )
                .expect("automorphisms carry subgroups to subgroups");
                prop_assert_eq!(
                    in_w(&mu, &h, &k).unwrap(),
                    in_w(&relabeled, &h_img, &k_img).unwrap()
                );
            }
        }
    }

    #[test]
    fn projection_sums_to_one_for_every_decomposition(mu in measure_strategy()) {
        for d in Decomposition::enumerate() {
            let proj = project_onto(&mu, d.x2(), d.x1());
            let total: Rational = proj.iter().sum();
            prop_assert_eq!(total, rat(1, 1));
        }
    }

    #[test]
    fn candidates_sum_to_one_and_family_a_is_trivial(mu in measure_strategy()) {
        for x in GroupElement::all(3) {
            let sol = candidate(&mu, &SignPattern::character_row(x));
            prop_assert!(sol.valid && sol.trivial);
        }
        for index in [0usize, 1, 17, 63, 127] {
            let sol = candidate(&mu, &SignPattern::from_index(3, index));
            let total: Rational = sol.values.iter().sum();
            prop_assert_eq!(total, rat(1, 1));
        }
    }

    #[test]
    fn candidates_match_their_family_closed_forms(mu in measure_strategy()) {
        let classified = classify_systems().expect("the partition is exact");
        for (pattern, family) in &classified {
            let sol = candidate(&mu, pattern);
            let expected = match family.tag {
                FamilyTag::A => mu.shift(GroupElement::new(3, family.shift)).masses().to_vec(),
                FamilyTag::B => tec_core::closed_form_b(&mu, family.shift),
                FamilyTag::C(k) => closed_form_c(&mu, k, family.shift),
                FamilyTag::D(k) => closed_form_d(&mu, k, family.shift),
            };
            prop_assert_eq!(sol.values, expected);
        }
    }

    #[test]
    fn family_validity_matches_the_uv_predicates(mu in measure_strategy()) {
        // Family-level semantics of the solution families: the B family
        // yields measures exactly when a_max <= 1/4; the C_k family has
        // no measure solution exactly when the dominant-mass condition
        // holds on K_k or its coset; the D_k family likewise with the
        // heavy-complement condition.
        let negative = |v: &[Rational]| v.iter().any(|m| *m < rat(0, 1));
        let b_valid = !negative(&tec_core::closed_form_b(&mu, 0));
        prop_assert_eq!(b_valid, *mu.a_max() <= rat(1, 4));
        for (pos, k_sub) in enumerate_a2().iter().enumerate() {
            let k = pos + 1;
            let inside: Vec<usize> = k_sub.member_indices().collect();
            let coset = tec_core::complement_coset(k_sub);
            let c_invalid = negative(&closed_form_c(&mu, k, 0));
            prop_assert_eq!(c_invalid, in_u(&mu, &inside) || in_u(&mu, &coset), "C_{}", k);
            let d_invalid = negative(&closed_form_d(&mu, k, 0));
            prop_assert_eq!(d_invalid, in_v(&mu, &inside) || in_v(&mu, &coset), "D_{}", k);
        }
    }

    #[test]
    fn all_b_solutions_trivial_exactly_under_the_projection_condition(mu in measure_strategy()) {
        // Every B solution is a shift of mu exactly when some
        // decomposition satisfies I.1 (equivalently, the reflected
        // vector 1/4 - a is itself a shift of the masses).
        let reflected = tec_core::closed_form_b(&mu, 0);
        let b_trivial = GroupElement::all(3)
            .any(|x| mu.shift(x).masses() == reflected.as_slice());
        let i1_somewhere =
            Decomposition::enumerate().iter().any(|d| tec_core::classifier::cond_i1(&mu, d));
        prop_assert_eq!(b_trivial, i1_somewhere);
    }

    #[test]
    fn class_is_a_singleton_exactly_for_tec(mu in measure_strategy()) {
        let class = tec_core::equivalence_class(&mu);
        let verdict = is_tec_bruteforce(&mu);
        prop_assert_eq!(class.len() == 1, verdict.tec);
        prop_assert!(!class.is_empty());
    }

    #[test]
    fn both_verdicts_are_shift_invariant(mu in measure_strategy(), j in 0usize..8) {
        let shifted = mu.shift(GroupElement::new(3, j));
        prop_assert_eq!(is_tec_bruteforce(&mu).tec, is_tec_bruteforce(&shifted).tec);
        prop_assert_eq!(is_tec_theorem4(&mu).tec, is_tec_theorem4(&shifted).tec);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classifier_agrees_with_bruteforce(mu in measure_strategy()) {
        prop_assert_eq!(is_tec_theorem4(&mu).tec, is_tec_bruteforce(&mu).tec);
    }

    #[test]
    fn verdicts_are_automorphism_invariant(
        mu in measure_strategy(),
        phi_index in 0usize..168,
    ) {
        let phi = &automorphisms(3)[phi_index];
        let relabeled = mu.permute(phi);
        prop_assert_eq!(is_tec_bruteforce(&mu).tec, is_tec_bruteforce(&relabeled).tec);
        prop_assert_eq!(is_tec_theorem4(&mu).tec, is_tec_theorem4(&relabeled).tec);
    }
}
