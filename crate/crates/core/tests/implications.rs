mod common;

use attrex::{check_closure_laws, ClosureOperator, Implication};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lclosure_matches_rescan((n, pairs) in arb_implications(8, 10), a in any::<u64>()) {
        let u = universe(n);
        let ls = implications(&u, &pairs);
        let clipped: Vec<(u64, u64)> = pairs.iter().map(|&(p, c)| (p & full_mask(n), c & full_mask(n))).collect();
        let a = a & full_mask(n);
        prop_assert_eq!(ls.closure(&set(&u, a)).to_mask(), naive_lclosure(&clipped, a));
    }

    #[test]
    fn lclosure_is_a_closure_operator((n, pairs) in arb_implications(5, 8)) {
        let u = universe(n);
        let report = check_closure_laws(&ClosureOperator::from_implications(implications(&u, &pairs)), 5);
        prop_assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn entailment_matches_models(
        (n, pairs) in arb_implications(5, 6),
        a in any::<u64>(),
        b in any::<u64>(),
    ) {
        let u = universe(n);
        let ls = implications(&u, &pairs);
        let (a, b) = (a & full_mask(n), b & full_mask(n));
        let semantic = (0..1u64 << n)
            .filter(|&x| ls.is_model(&set(&u, x)) && x & a == a)
            .all(|x| x & b == b);
        prop_assert_eq!(ls.entails(&Implication::new(set(&u, a), set(&u, b))), semantic);
    }

    #[test]
    fn model_iff_fixpoint((n, pairs) in arb_implications(5, 6), x in any::<u64>()) {
        let u = universe(n);
        let ls = implications(&u, &pairs);
        let x = set(&u, x);
        prop_assert_eq!(ls.is_model(&x), ls.closure(&x) == x);
    }

    #[test]
    fn reflexivity_and_augmentation(
        (n, pairs) in arb_implications(5, 6),
        a in any::<u64>(),
        b in any::<u64>(),
        extra in any::<u64>(),
    ) {
        let u = universe(n);
        let ls = implications(&u, &pairs);
        prop_assert!(ls.entails(&Implication::new(set(&u, a), set(&u, a))));
        let imp = Implication::new(set(&u, a), set(&u, b));
        if ls.entails(&imp) {
            let aug = Implication::new(set(&u, a | extra), set(&u, b | extra));
            prop_assert!(ls.entails(&aug));
        }
    }

    #[test]
    fn base_iff_same_closures(
        (n, pairs) in arb_implications(4, 5),
        more in prop::collection::vec((any::<u64>(), any::<u64>()), 0..3),
    ) {
        let u = universe(n);
        let ls = implications(&u, &pairs);
        let mut all = pairs.clone();
        all.extend(more);
        let bigger = implications(&u, &all);
        let same = (0..1u64 << n).all(|x| ls.closure(&set(&u, x)) == bigger.closure(&set(&u, x)));
        prop_assert_eq!(ls.is_base_for(&bigger), same);
        prop_assert!(bigger.is_sound_for(&bigger) && bigger.is_complete_for(&ls));
    }

    #[test]
    fn nonredundancy_means_every_rule_is_needed((n, pairs) in arb_implications(4, 5)) {
        let u = universe(n);
        let ls = implications(&u, &pairs);
        let needed = (0..ls.len()).all(|k| !ls.without(k).is_base_for(&ls));
        prop_assert_eq!(ls.is_nonredundant_base_for(&ls).unwrap(), needed);
    }
}
