mod common;

use attrex::{
    check_closure_laws, lectic_cmp, next_closed, AttrSet, ClosureOperator, Implication,
    PartialContext, PartialObjectDescription,
};
use common::*;
use proptest::prelude::*;
use std::cmp::Ordering;

/// Reference lectic order: compare bit-reversed masks, since index 0 is the
/// most significant position.
fn reference_cmp(n: usize, a: u64, b: u64) -> Ordering {
    if n == 0 {
        return Ordering::Equal;
    }
    let rev = |x: u64| x.reverse_bits() >> (64 - n);
    rev(a).cmp(&rev(b))
}

#[test]
fn lectic_order_is_a_strict_total_order() {
    for n in 0..=4 {
        let s = |x: u64| AttrSet::from_mask(n, x);
        for a in 0..1u64 << n {
            for b in 0..1u64 << n {
                let ab = lectic_cmp(&s(a), &s(b));
                assert_eq!(ab, reference_cmp(n, a, b));
                assert_eq!(ab, lectic_cmp(&s(b), &s(a)).reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
                for c in 0..1u64 << n {
                    if ab == Ordering::Less && lectic_cmp(&s(b), &s(c)) == Ordering::Less {
                        assert_eq!(lectic_cmp(&s(a), &s(c)), Ordering::Less);
                    }
                }
            }
        }
    }
}

#[test]
fn lectic_order_extends_inclusion() {
    let n = 5;
    for a in 0..1u64 << n {
        for b in (0..1u64 << n).filter(|b| a & b == a && *b != a) {
            assert_eq!(
                lectic_cmp(&AttrSet::from_mask(n, a), &AttrSet::from_mask(n, b)),
                Ordering::Less
            );
        }
    }
}

fn pctx(u: &attrex::Universe, pairs: &[(u64, u64)]) -> PartialContext {
    PartialContext::from_descriptions(
        u.clone(),
        pairs
            .iter()
            .map(|&(c, d)| PartialObjectDescription::new(set(u, c), set(u, d)).unwrap()),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn next_closed_is_the_lectic_successor_among_closed_sets(
        (n, rows) in arb_context(5, 5),
        from in any::<u64>(),
    ) {
        let u = universe(n);
        let c = ClosureOperator::from_context(context(&u, &rows));
        let table = closure_table(&c);
        let from = from & full_mask(n);
        let expected = (0..1u64 << n)
            .filter(|&x| table[x as usize] == x && reference_cmp(n, from, x) == Ordering::Less)
            .min_by(|&x, &y| reference_cmp(n, x, y));
        prop_assert_eq!(next_closed(&c, &set(&u, from)).map(|s| s.to_mask()), expected);
    }

    #[test]
    fn consistent_closure_is_extensive_and_monotone(pods in arb_partial(5, 5)) {
        let u = universe(5);
        let op = ClosureOperator::from_partial_context(pctx(&u, &pods));
        let report = check_closure_laws(&op, 5);
        prop_assert!(report.extensive_and_monotone(), "{:?}", report.violations);
    }

    #[test]
    fn refuted_iff_conclusion_escapes_consistent_closure(
        pods in arb_partial(4, 4),
        a in 0u64..16,
        b in 0u64..16,
    ) {
        let u = universe(4);
        let p = pctx(&u, &pods);
        let imp = Implication::new(set(&u, a), set(&u, b));
        prop_assert_eq!(p.refutes(&imp), !imp.conclusion.is_subset(&p.consistent_closure(&imp.premise)));
    }

    #[test]
    fn normalize_keeps_refutations_and_is_idempotent(
        pods in arb_partial(4, 4),
        pairs in prop::collection::vec((0u64..16, 0u64..16), 0..4),
    ) {
        let u = universe(4);
        let p = pctx(&u, &pods);
        let c = ClosureOperator::from_implications(implications(&u, &pairs));
        match p.normalize(&c) {
            Ok(n1) => {
                let n2 = n1.normalize(&c).unwrap();
                prop_assert_eq!(n1.descriptions(), n2.descriptions());
                for a in 0..16 {
                    for b in 0..16 {
                        let imp = Implication::new(set(&u, a), set(&u, b));
                        if p.refutes(&imp) {
                            prop_assert!(n1.refutes(&imp));
                        }
                    }
                }
                for pod in n1.descriptions() {
                    prop_assert!(c.is_closed(pod.positive()));
                }
            }
            Err(_) => {
                let clash = p.descriptions().iter().any(|pod| c.close(pod.positive()).intersects(pod.negative()));
                prop_assert!(clash);
            }
        }
    }
}
