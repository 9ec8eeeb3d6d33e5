//! Exhaustive checks of finished exploration runs, computed over masks from
//! the run's recorded data rather than from the library's operators.

use super::{closure_table, full_mask, naive_intent, naive_lclosure, naive_pseudoclosed};
use attrex::{
    adversarial_pair, audit_consistency, check_termination_condition, malformed_entries, AttrSet,
    ExplorationResult, ExplorationTrace, ExpertLog, Implication, Outcome, PartialContext,
};

type Check = Result<(), String>;

/// `M \ ⋃{D | X ⊆ C}`.
pub fn naive_consistent(n: usize, p: &PartialContext, x: u64) -> u64 {
    p.descriptions()
        .iter()
        .filter(|d| d.positive().to_mask() & x == x)
        .fold(full_mask(n), |acc, d| acc & !d.negative().to_mask())
}

/// Least superset of `x` closed under the closure `base` and the rules.
pub fn least_closed(base: &[u64], rules: &[(u64, u64)], x: u64) -> u64 {
    let mut cur = x;
    loop {
        let next = naive_lclosure(rules, base[cur as usize]);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn pair(imp: &Implication) -> (u64, u64) {
    (imp.premise.to_mask(), imp.conclusion.to_mask())
}

/// The final operator matches the hidden theory, the meet with the final
/// partial context, the least closure over the confirmed rules, and the
/// positive-part context, for every `X ⊆ M`.
pub fn claims(n: usize, res: &ExplorationResult, cert0: &[u64], univ0: &[u64], theory: &[u64]) -> Check {
    let c = closure_table(&res.final_operator);
    let confirmed: Vec<(u64, u64)> = res.confirmed.iter().map(pair).collect();
    let positives: Vec<u64> = res
        .final_context
        .descriptions()
        .iter()
        .map(|d| d.positive().to_mask())
        .collect();
    for x in 0..1u64 << n {
        let cx = c[x as usize];
        let expected = [
            ("theory", theory[x as usize]),
            ("universal meet", univ0[x as usize] & naive_consistent(n, &res.final_context, x)),
            ("least closed", least_closed(cert0, &confirmed, x)),
            ("positive context", univ0[x as usize] & naive_intent(n, &positives, x)),
        ];
        for (claim, want) in expected {
            if cx != want {
                return Err(format!("{claim}: c({x:#b}) = {cx:#b}, expected {want:#b}"));
            }
        }
    }
    Ok(())
}

/// Per-question checks against the state the question was asked in: the
/// premise is closed, the question is neither entailed by what was confirmed
/// so far nor refuted by the counterexamples so far, and the state's two
/// operators agree with recomputation.
pub fn questions(n: usize, trace: &ExplorationTrace, cert0: &[u64], univ0: &[u64]) -> Check {
    let last = trace.last().ok_or("empty trace")?;
    let entries = last.log().entries();
    if trace.states.len() != entries.len() + 1 {
        return Err("trace and log lengths disagree".into());
    }
    let mut so_far: Vec<(u64, u64)> = Vec::new();
    for (k, e) in entries.iter().enumerate() {
        let st = &trace.states[k];
        let (a, b) = pair(&e.question);
        let cert = least_closed(cert0, &so_far, a);
        let univ = univ0[a as usize] & naive_consistent(n, st.working(), a);
        if cert != a {
            return Err(format!("question {k}: premise {a:#b} is not closed"));
        }
        if b & cert == b {
            return Err(format!("question {k}: {a:#b} -> {b:#b} already follows"));
        }
        if b & univ != b {
            return Err(format!("question {k}: {a:#b} -> {b:#b} is already refuted"));
        }
        let x = AttrSet::from_mask(n, a);
        if st.certain().close(&x).to_mask() != cert || st.universal().close(&x).to_mask() != univ {
            return Err(format!("question {k}: state operators disagree with recomputation"));
        }
        if e.reply.is_confirm() {
            so_far.push((a, b));
        }
    }
    Ok(())
}

/// The run finished within `3^|M|` interactions, left nothing undecided, and
/// its log is well formed and self-consistent.
pub fn termination(n: usize, res: &ExplorationResult) -> Check {
    let last = res.trace.last().ok_or("empty trace")?;
    if res.trace.outcome != Outcome::Finished {
        return Err("run did not finish".into());
    }
    if last.log().len() > 3usize.pow(n as u32) {
        return Err(format!("{} interactions exceed 3^{n}", last.log().len()));
    }
    if !check_termination_condition(last.certain(), last.universal()) {
        return Err("an undecided set remains".into());
    }
    if !malformed_entries(last.log(), last.universe()).is_empty() {
        return Err("malformed counterexample in the log".into());
    }
    if !audit_consistency(last.log()).is_empty() {
        return Err("log contradicts itself".into());
    }
    Ok(())
}

/// Confirmed premises are exactly the sets pseudoclosed relative to `cert0`
/// under the final operator.
pub fn minimal_confirmation(n: usize, res: &ExplorationResult, cert0: &[u64]) -> Check {
    let c = closure_table(&res.final_operator);
    let base = |x: u64| cert0[x as usize];
    let expected = naive_pseudoclosed(n, |x| c[x as usize], Some(&base));
    let mut got: Vec<u64> = res.confirmed.iter().map(|i| i.premise.to_mask()).collect();
    got.sort_by_key(|x| (x.count_ones(), *x));
    if got != expected {
        return Err(format!("confirmed premises {got:?}, pseudoclosed {expected:?}"));
    }
    Ok(())
}

/// For the question at log position `k` and the first attribute `m` of its
/// conclusion outside `c_cert(A)`, the adversarial experts repeat the
/// history, split on `A → {m}`, stay consistent, and have theories between
/// the two operators of that moment.
pub fn adversarial(n: usize, trace: &ExplorationTrace, k: usize) -> Check {
    let st = &trace.states[k];
    let entries = trace.last().ok_or("empty trace")?.log().entries();
    let q = &entries[k].question;
    let m = (&q.conclusion - &st.certain().close(&q.premise))
        .min()
        .ok_or(format!("question {k} has nothing undecided"))?;
    let prefix = ExplorationTrace {
        states: trace.states[..=k].to_vec(),
        outcome: Outcome::Running,
    };
    let (e1, e2) = adversarial_pair(&prefix, q, m).map_err(|e| format!("question {k}: {e}"))?;
    let single = Implication::new(q.premise.clone(), AttrSet::from_indices(n, [m]));
    if e1.reply(&single).is_confirm() || !e2.reply(&single).is_confirm() {
        return Err(format!("question {k}: the pair does not split on attribute {m}"));
    }
    let cert = closure_table(st.certain());
    let univ = closure_table(st.universal());
    for (which, e) in [("first", &e1), ("second", &e2)] {
        let mut log = ExpertLog::new();
        for prev in &entries[..k] {
            let r = e.reply(&prev.question);
            if r != prev.reply {
                return Err(format!("question {k}: {which} expert rewrites history"));
            }
            log.push(prev.question.clone(), r);
        }
        log.push(single.clone(), e.reply(&single));
        if !audit_consistency(&log).is_empty() {
            return Err(format!("question {k}: {which} expert contradicts itself"));
        }
        let t = closure_table(e.theory());
        for x in 0..1usize << n {
            if cert[x] & t[x] != cert[x] || t[x] & univ[x] != t[x] {
                return Err(format!("question {k}: {which} theory leaves the interval at {x:#b}"));
            }
        }
    }
    Ok(())
}

/// Size of the smallest rule set that, together with `cert`, generates `c`.
/// Any such set can be rewritten rule by rule into `P → c(P)` with `P`
/// closed under `cert` and not under `c`, so only those rules are searched.
pub fn smallest_generating_set(n: usize, cert: &[u64], c: &[u64]) -> usize {
    let candidates: Vec<(u64, u64)> = (0..1u64 << n)
        .filter(|&p| cert[p as usize] == p && c[p as usize] != p)
        .map(|p| (p, c[p as usize]))
        .collect();
    assert!(candidates.len() <= 16, "search space too large");
    (0..1u32 << candidates.len())
        .filter(|pick| {
            let rules: Vec<(u64, u64)> = candidates
                .iter()
                .enumerate()
                .filter(|(k, _)| pick >> k & 1 == 1)
                .map(|(_, &r)| r)
                .collect();
            (0..1u64 << n).all(|x| least_closed(cert, &rules, x) == c[x as usize])
        })
        .map(u32::count_ones)
        .min()
        .expect("taking every candidate generates c") as usize
}
