mod common;

use attrex::exploration::{events_from_log, parse_trace, replay, write_trace};
use attrex::{
    canonical_base, explore_classical, explore_general, oracle_full, oracle_partial,
    relative_pseudoclosed, ClosureOperator, ExplorationResult, ExplorationState, ExploreOptions,
    FormalContext, ImplicationSet, MaskedExpert, Strategy as Ask,
};
use common::verify::{self, least_closed};
use common::*;
use proptest::prelude::*;

/// A hidden context, background rules valid in it, an upper bound built from
/// some of its objects, and a mask of attributes the expert keeps quiet on.
#[derive(Debug, Clone)]
struct Setup {
    n: usize,
    rows: Vec<u64>,
    background: Vec<(u64, u64)>,
    upper: Option<u64>,
    mask: u64,
    strategy: Ask,
}

struct Run {
    res: ExplorationResult,
    cert0: Vec<u64>,
    univ0: Vec<u64>,
    theory: Vec<u64>,
}

fn arb_setup(max_attrs: usize, max_objects: usize) -> impl Strategy<Value = Setup> {
    arb_context(max_attrs, max_objects).prop_flat_map(|(n, rows)| {
        let all = 1u64 << n;
        (
            Just(n),
            Just(rows),
            prop::collection::vec((0..all, 0..all), 0..3),
            prop::option::of(any::<u64>()),
            prop_oneof![Just(0u64), 0..all],
            prop_oneof![Just(Ask::Minimal), Just(Ask::MaxConclusion)],
        )
            .prop_map(|(n, rows, picks, upper, mask, strategy)| {
                let clipped: Vec<u64> = rows.iter().map(|r| r & full_mask(n)).collect();
                let background = picks
                    .into_iter()
                    .map(|(p, t)| (p, (naive_intent(n, &clipped, p) & t) | p))
                    .collect();
                Setup { n, rows: clipped, background, upper, mask, strategy }
            })
    })
}

fn identity_table(n: usize) -> Vec<u64> {
    (0..1u64 << n).collect()
}

fn run(s: &Setup) -> Run {
    let n = s.n;
    let u = universe(n);
    let hidden = context(&u, &s.rows);
    let cert = ClosureOperator::from_implications(implications(&u, &s.background));
    let cert0 = (0..1u64 << n)
        .map(|x| least_closed(&identity_table(n), &s.background, x))
        .collect();
    let (univ, univ0) = match s.upper {
        None => (ClosureOperator::top(u.clone()), vec![full_mask(n); 1 << n]),
        Some(keep) => {
            let kept: Vec<u64> = s
                .rows
                .iter()
                .enumerate()
                .filter(|(k, _)| keep >> k & 1 == 1)
                .map(|(_, &r)| r)
                .collect();
            let table = (0..1u64 << n).map(|x| naive_intent(n, &kept, x)).collect();
            (ClosureOperator::from_context(context(&u, &kept)), table)
        }
    };
    let theory = (0..1u64 << n).map(|x| naive_intent(n, &s.rows, x)).collect();
    let mut expert = MaskedExpert::new(oracle_partial(hidden), set(&u, s.mask));
    let res = explore_general(cert, univ, &mut expert, s.strategy, ExploreOptions::default())
        .expect("exploration finishes");
    Run { res, cert0, univ0, theory }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn finished_runs_satisfy_all_correctness_claims(s in arb_setup(6, 6)) {
        let r = run(&s);
        verify::claims(s.n, &r.res, &r.cert0, &r.univ0, &r.theory).map_err(TestCaseError::fail)?;
        verify::termination(s.n, &r.res).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn every_question_is_undecided_when_asked(s in arb_setup(6, 6)) {
        let r = run(&s);
        verify::questions(s.n, &r.res.trace, &r.cert0, &r.univ0).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn adversarial_experts_split_on_every_question(s in arb_setup(5, 5)) {
        let r = run(&s);
        let asked = r.res.trace.states.len() - 1;
        for k in 0..asked {
            verify::adversarial(s.n, &r.res.trace, k).map_err(TestCaseError::fail)?;
        }
    }

    #[test]
    fn minimal_strategy_confirms_exactly_the_relative_pseudoclosed_sets(
        s in arb_setup(6, 6).prop_map(|s| Setup { upper: None, strategy: Ask::Minimal, ..s })
    ) {
        let r = run(&s);
        verify::minimal_confirmation(s.n, &r.res, &r.cert0).map_err(TestCaseError::fail)?;
        let u = universe(s.n);
        let cert = ClosureOperator::from_implications(implications(&u, &s.background));
        let fam = relative_pseudoclosed(&cert, &r.res.final_operator);
        prop_assert_eq!(fam.len(), r.res.confirmed.len());
    }

    #[test]
    fn identity_start_confirms_the_canonical_base((n, rows) in arb_context(6, 6)) {
        let u = universe(n);
        let hidden = context(&u, &rows);
        let res = explore_general(
            ClosureOperator::identity(u.clone()),
            ClosureOperator::top(u.clone()),
            &mut oracle_partial(hidden.clone()),
            Ask::Minimal,
            ExploreOptions::default(),
        ).unwrap();
        let base = canonical_base(&hidden);
        let got: Vec<(u64, u64)> = res.confirmed.iter().map(|i| (i.premise.to_mask(), i.conclusion.to_mask())).collect();
        let mut want: Vec<(u64, u64)> = base.implications.iter().map(|i| (i.premise.to_mask(), i.conclusion.to_mask())).collect();
        let mut sorted = got.clone();
        sorted.sort();
        want.sort();
        prop_assert_eq!(sorted, want);
    }

    #[test]
    fn classical_exploration_is_the_general_one_from_the_top(
        s in arb_setup(5, 5).prop_map(|s| Setup { upper: None, mask: 0, strategy: Ask::Minimal, ..s })
    ) {
        let u = universe(s.n);
        let hidden = context(&u, &s.rows);
        let background = implications(&u, &s.background);
        let classical = explore_classical(
            FormalContext::empty(u.clone()),
            background.clone(),
            &mut oracle_full(hidden.clone()),
            ExploreOptions::default(),
        ).unwrap();
        let general = run(&s).res;
        let classical_confirmed: Vec<_> = classical.confirmed.iter().cloned().collect();
        let general_confirmed: Vec<_> = general.confirmed.iter().cloned().collect();
        prop_assert_eq!(classical_confirmed, general_confirmed);
        let rows: Vec<u64> = classical.context.rows().iter().map(|r| r.to_mask()).collect();
        let positives: Vec<u64> = general.final_context.descriptions().iter().map(|d| d.positive().to_mask()).collect();
        prop_assert_eq!(rows, positives);
        let expected: ImplicationSet = background;
        prop_assert!(classical.implications.iter().take(expected.len()).eq(expected.iter()));
    }

    #[test]
    fn replaying_a_written_trace_reproduces_the_run(s in arb_setup(5, 5)) {
        let r = run(&s);
        let u = universe(s.n);
        let last = r.res.trace.last().unwrap();
        let text = write_trace(&events_from_log(&u, last.log()));
        let events = parse_trace(&text).unwrap();
        let mut fresh = ExplorationState::new(
            last.initial_certain().clone(),
            last.initial_universal().clone(),
            s.strategy,
        ).unwrap();
        replay(&mut fresh, &events).unwrap();
        prop_assert_eq!(fresh.log(), last.log());
        prop_assert_eq!(fresh.confirmed().iter().collect::<Vec<_>>(), last.confirmed().iter().collect::<Vec<_>>());
        prop_assert_eq!(fresh.working().descriptions(), last.working().descriptions());
        prop_assert_eq!(closure_table(fresh.certain()), closure_table(last.certain()));
        prop_assert!(fresh.is_finished());
    }
}

#[test]
fn k1_from_identity_and_top_satisfies_every_claim() {
    // h1 = {a}, h2 = {b}
    let s = Setup {
        n: 3,
        rows: vec![0b001, 0b010],
        background: vec![],
        upper: None,
        mask: 0,
        strategy: Ask::Minimal,
    };
    let r = run(&s);
    verify::claims(3, &r.res, &r.cert0, &r.univ0, &r.theory).unwrap();
    verify::termination(3, &r.res).unwrap();
    verify::minimal_confirmation(3, &r.res, &r.cert0).unwrap();
    let premises: Vec<u64> = r.res.confirmed.iter().map(|i| i.premise.to_mask()).collect();
    assert_eq!(premises, vec![0b100, 0b011]);
    let c = closure_table(&r.res.final_operator);
    let closed: Vec<u64> = (0..8).filter(|&x| c[x as usize] == x).collect();
    assert_eq!(closed, vec![0b000, 0b001, 0b010, 0b111]);
}

#[test]
fn an_expert_confirming_everything_ends_at_the_top() {
    let u = universe(1);
    let hidden = context(&u, &[]);
    let res = explore_general(
        ClosureOperator::identity(u.clone()),
        ClosureOperator::top(u.clone()),
        &mut oracle_partial(hidden),
        Ask::Minimal,
        ExploreOptions::default(),
    )
    .unwrap();
    assert_eq!(res.confirmed.len(), 1);
    assert_eq!(res.trace.last().unwrap().log().len(), 1);
    assert!(res.final_operator.close(&u.empty_set()).is_full());
}

#[test]
fn a_tight_cap_aborts_and_the_default_never_binds() {
    let u = universe(4);
    let hidden = context(&u, &[0b0011, 0b0110, 0b1100, 0b1001]);
    let err = explore_general(
        ClosureOperator::identity(u.clone()),
        ClosureOperator::top(u.clone()),
        &mut oracle_partial(hidden.clone()),
        Ask::Minimal,
        ExploreOptions { max_iterations: Some(2) },
    )
    .unwrap_err();
    assert!(matches!(err, attrex::Error::IterationCap(2)));
    for strategy in [Ask::Minimal, Ask::MaxConclusion] {
        let res = explore_general(
            ClosureOperator::identity(u.clone()),
            ClosureOperator::top(u.clone()),
            &mut oracle_partial(hidden.clone()),
            strategy,
            ExploreOptions { max_iterations: Some(81) },
        )
        .unwrap();
        assert!(res.trace.last().unwrap().log().len() <= 81);
    }
}
