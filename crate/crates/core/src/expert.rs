//! Expert answer contracts, context-backed oracle experts, log auditing, and
//! the adversarial expert pair used to certify that questions are
//! non-redundant.

use std::sync::Arc;

use crate::closure::ClosureOperator;
use crate::context::FormalContext;
use crate::error::{Error, Rejection, Result};
use crate::exploration::ExplorationTrace;
use crate::implication::Implication;
use crate::partial::PartialObjectDescription;
use crate::set::AttrSet;
use crate::universe::AttributeUniverse;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpertReply {
    Confirm,
    /// An object with exactly these attributes.
    FullCounterexample(AttrSet),
    PartialCounterexample(PartialObjectDescription),
}

impl ExpertReply {
    pub fn is_confirm(&self) -> bool {
        matches!(self, ExpertReply::Confirm)
    }

    /// The counterexample as a partial object description.
    pub fn description(&self) -> Option<PartialObjectDescription> {
        match self {
            ExpertReply::Confirm => None,
            ExpertReply::FullCounterexample(row) => {
                Some(PartialObjectDescription::full(row.clone()))
            }
            ExpertReply::PartialCounterexample(pod) => Some(pod.clone()),
        }
    }

    /// Checks that a counterexample actually refutes `question`.
    pub fn check_shape(&self, question: &Implication, universe: &AttributeUniverse) -> Result<(), Rejection> {
        let Some(pod) = self.description() else {
            return Ok(());
        };
        let overlap = pod.positive() & pod.negative();
        if !overlap.is_empty() {
            return Err(Rejection::Overlap(universe.names_of(&overlap)));
        }
        let missing = &question.premise - pod.positive();
        if !missing.is_empty() {
            return Err(Rejection::PremiseNotCovered(universe.names_of(&missing)));
        }
        if !question.conclusion.intersects(pod.negative()) {
            return Err(Rejection::ConclusionNotContradicted);
        }
        Ok(())
    }
}

/// Anything that can answer exploration questions.
pub trait Expert {
    fn answer(&mut self, question: &Implication) -> ExpertReply;
}

impl<F> Expert for F
where
    F: FnMut(&Implication) -> ExpertReply,
{
    fn answer(&mut self, question: &Implication) -> ExpertReply {
        self(question)
    }
}

/// An expert whose knowledge is a hidden formal context. Counterexamples are
/// the first witnessing object in declaration order.
#[derive(Debug, Clone)]
pub struct ContextOracle {
    hidden: FormalContext,
    partial: bool,
}

impl ContextOracle {
    pub fn hidden(&self) -> &FormalContext {
        &self.hidden
    }

    pub fn reply(&self, question: &Implication) -> ExpertReply {
        match self.hidden.first_witness(question) {
            None => ExpertReply::Confirm,
            Some(g) => {
                let row = self.hidden.row(g).clone();
                if self.partial {
                    ExpertReply::PartialCounterexample(PartialObjectDescription::full(row))
                } else {
                    ExpertReply::FullCounterexample(row)
                }
            }
        }
    }
}

impl Expert for ContextOracle {
    fn answer(&mut self, question: &Implication) -> ExpertReply {
        self.reply(question)
    }
}

/// Full-object counterexamples from a hidden context.
pub fn oracle_full(hidden: FormalContext) -> ContextOracle {
    ContextOracle {
        hidden,
        partial: false,
    }
}

/// Full object descriptions `(g′, M \ g′)` as partial counterexamples.
pub fn oracle_partial(hidden: FormalContext) -> ContextOracle {
    ContextOracle {
        hidden,
        partial: true,
    }
}

/// Wraps an expert and hides `mask` from its counterexamples, as long as the
/// reply stays a valid counterexample: premise attributes stay positive and
/// at least one conclusion attribute stays negative.
pub struct MaskedExpert<E> {
    inner: E,
    mask: AttrSet,
}

impl<E: Expert> MaskedExpert<E> {
    pub fn new(inner: E, mask: AttrSet) -> Self {
        MaskedExpert { inner, mask }
    }
}

impl<E: Expert> Expert for MaskedExpert<E> {
    fn answer(&mut self, question: &Implication) -> ExpertReply {
        let reply = self.inner.answer(question);
        let Some(pod) = reply.description() else {
            return reply;
        };
        let positive = &(pod.positive() - &self.mask) | &question.premise;
        let mut negative = pod.negative() - &self.mask;
        if !negative.intersects(&question.conclusion) {
            let keep = (&question.conclusion & pod.negative())
                .min()
                .expect("inner reply refutes the question");
            negative.insert(keep);
        }
        ExpertReply::PartialCounterexample(
            PartialObjectDescription::new(positive, negative).expect("subsets of a disjoint pair"),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogEntry {
    pub question: Implication,
    pub reply: ExpertReply,
}

/// Every question asked in a run, with its answer, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpertLog {
    entries: Vec<LogEntry>,
}

impl ExpertLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, question: Implication, reply: ExpertReply) {
        self.entries.push(LogEntry { question, reply });
    }

    pub fn entries(&self) -> &[LogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn confirmations(&self) -> impl Iterator<Item = &Implication> {
        self.entries
            .iter()
            .filter(|e| e.reply.is_confirm())
            .map(|e| &e.question)
    }

    pub fn counterexamples(&self) -> usize {
        self.entries.iter().filter(|e| !e.reply.is_confirm()).count()
    }

    pub fn lookup(&self, question: &Implication) -> Option<&ExpertReply> {
        self.entries
            .iter()
            .find(|e| e.question == *question)
            .map(|e| &e.reply)
    }
}

/// A counterexample that contradicts a confirmed implication. Both fields
/// are log indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditViolation {
    pub confirmed: usize,
    pub counterexample: usize,
}

/// Finds counterexamples that contradict confirmed implications anywhere in
/// the log, regardless of order. A full counterexample contradicts `A → B`
/// if it is not closed under it; a partial one if it refutes it.
pub fn audit_consistency(log: &ExpertLog) -> Vec<AuditViolation> {
    let mut out = Vec::new();
    for (i, conf) in log.entries.iter().enumerate() {
        if !conf.reply.is_confirm() {
            continue;
        }
        for (j, cex) in log.entries.iter().enumerate() {
            let clash = match &cex.reply {
                ExpertReply::Confirm => false,
                ExpertReply::FullCounterexample(row) => !conf.question.respected_by(row),
                ExpertReply::PartialCounterexample(pod) => pod.refutes(&conf.question),
            };
            if clash {
                out.push(AuditViolation {
                    confirmed: i,
                    counterexample: j,
                });
            }
        }
    }
    out
}

/// Log entries whose counterexample does not refute the question it answers.
pub fn malformed_entries(log: &ExpertLog, universe: &AttributeUniverse) -> Vec<(usize, Rejection)> {
    log.entries
        .iter()
        .enumerate()
        .filter_map(|(k, e)| e.reply.check_shape(&e.question, universe).err().map(|r| (k, r)))
        .collect()
}

type Fallback = dyn Fn(&Implication) -> ExpertReply + Send + Sync;

/// An expert that replays a recorded history and answers everything else by
/// a fixed rule. Built by [`adversarial_pair`].
#[derive(Clone)]
pub struct ScriptedExpert {
    history: ExpertLog,
    fallback: Arc<Fallback>,
    theory: ClosureOperator,
}

impl ScriptedExpert {
    /// The closure operator of the implications this expert confirms.
    pub fn theory(&self) -> &ClosureOperator {
        &self.theory
    }

    pub fn reply(&self, question: &Implication) -> ExpertReply {
        match self.history.lookup(question) {
            Some(reply) => reply.clone(),
            None => (self.fallback)(question),
        }
    }
}

impl Expert for ScriptedExpert {
    fn answer(&mut self, question: &Implication) -> ExpertReply {
        self.reply(question)
    }
}

/// Two experts that agree with everything recorded in `trace` yet disagree
/// on `question.premise → {m}`: the first rejects it, the second confirms it.
///
/// The first expert's theory is the current certain knowledge. The second
/// one's is the current universal knowledge intersected with the theory of
/// a context built from the working descriptions, where `(C, D)` has the
/// attributes `c_cert(C ∪ {m})` if `m ∉ D` and `C` otherwise.
pub fn adversarial_pair(
    trace: &ExplorationTrace,
    question: &Implication,
    m: usize,
) -> Result<(ScriptedExpert, ScriptedExpert)> {
    let state = trace
        .last()
        .ok_or_else(|| Error::Precondition("empty trace".into()))?;
    let universe = state.universe().clone();
    universe.check(&question.premise)?;
    universe.check(&question.conclusion)?;
    if let Some(pending) = state.pending() {
        if pending != question {
            return Err(Error::Precondition(
                "trace is waiting on a different question".into(),
            ));
        }
    }
    let cert = state.certain().clone();
    let univ = state.universal().clone();
    let premise = &question.premise;
    if !question.conclusion.contains(m) {
        return Err(Error::Precondition(format!(
            "attribute {m} is not in the conclusion"
        )));
    }
    if cert.close(premise).contains(m) {
        return Err(Error::Precondition(
            "the question is already decided by the confirmed implications".into(),
        ));
    }
    if !question.conclusion.is_subset(&univ.close(premise)) {
        return Err(Error::Precondition(
            "the conclusion exceeds what the counterexamples allow".into(),
        ));
    }

    let full = universe.full_set();
    let history = state.log().clone();

    let first = {
        let cert = cert.clone();
        let full = full.clone();
        ScriptedExpert {
            history: history.clone(),
            theory: cert.clone(),
            fallback: Arc::new(move |q: &Implication| {
                let closed = cert.close(&q.premise);
                if q.conclusion.is_subset(&closed) {
                    ExpertReply::Confirm
                } else {
                    let negative = &full - &closed;
                    ExpertReply::PartialCounterexample(
                        PartialObjectDescription::new(closed, negative).expect("complement"),
                    )
                }
            }),
        }
    };

    let rows = state.working().descriptions().iter().enumerate().map(|(k, pod)| {
        let row = if pod.negative().contains(m) {
            pod.positive().clone()
        } else {
            cert.close(&pod.positive().clone().with(m))
        };
        (format!("o{}", k + 1), row)
    });
    let aux = FormalContext::new(universe.clone(), rows)?;
    let theory = ClosureOperator::from_context(aux).meet(&univ)?;
    let second = {
        let theory = theory.clone();
        ScriptedExpert {
            history,
            theory: theory.clone(),
            fallback: Arc::new(move |q: &Implication| {
                let closed = theory.close(&q.premise);
                if q.conclusion.is_subset(&closed) {
                    ExpertReply::Confirm
                } else {
                    let negative = &full - &closed;
                    ExpertReply::PartialCounterexample(
                        PartialObjectDescription::new(closed, negative).expect("complement"),
                    )
                }
            }),
        }
    };
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::{AttributeUniverse, Universe};

    fn universe() -> Universe {
        AttributeUniverse::new(["a", "b", "c"]).unwrap()
    }

    fn k0(u: &Universe) -> FormalContext {
        FormalContext::from_named_rows(
            u.clone(),
            &[("g1", &["a", "b"][..]), ("g2", &["a", "c"]), ("g3", &["a"])],
        )
        .unwrap()
    }

    fn k1(u: &Universe) -> FormalContext {
        FormalContext::from_named_rows(u.clone(), &[("h1", &["a"][..]), ("h2", &["b"])]).unwrap()
    }

    fn imp(u: &Universe, p: &[&str], c: &[&str]) -> Implication {
        Implication::new(u.set(p).unwrap(), u.set(c).unwrap())
    }

    fn pod(u: &Universe, c: &[&str], d: &[&str]) -> PartialObjectDescription {
        PartialObjectDescription::new(u.set(c).unwrap(), u.set(d).unwrap()).unwrap()
    }

    #[test]
    fn full_oracle_examples() {
        let u = universe();
        let o = oracle_full(k0(&u));
        assert_eq!(o.reply(&imp(&u, &[], &["a"])), ExpertReply::Confirm);
        assert_eq!(
            o.reply(&imp(&u, &["b"], &["c"])),
            ExpertReply::FullCounterexample(u.set(["a", "b"]).unwrap())
        );
        assert_eq!(o.reply(&imp(&u, &["a"], &["a"])), ExpertReply::Confirm);
    }

    #[test]
    fn partial_oracle_examples() {
        let u = universe();
        let o1 = oracle_partial(k1(&u));
        assert_eq!(o1.reply(&imp(&u, &["c"], &["a"])), ExpertReply::Confirm);
        assert_eq!(
            o1.reply(&imp(&u, &[], &["a"])),
            ExpertReply::PartialCounterexample(pod(&u, &["b"], &["a", "c"]))
        );
        let o0 = oracle_partial(k0(&u));
        assert_eq!(
            o0.reply(&imp(&u, &["a"], &["b"])),
            ExpertReply::PartialCounterexample(pod(&u, &["a", "c"], &["b"]))
        );
    }

    #[test]
    fn masking_keeps_replies_legal() {
        let u = universe();
        let mut masked = MaskedExpert::new(oracle_partial(k0(&u)), u.full_set());
        let q = imp(&u, &["a"], &["b"]);
        let reply = masked.answer(&q);
        assert_eq!(reply, ExpertReply::PartialCounterexample(pod(&u, &["a"], &["b"])));
        assert!(reply.check_shape(&q, &u).is_ok());
    }

    #[test]
    fn audit_examples() {
        let u = universe();
        let mut log = ExpertLog::new();
        log.push(imp(&u, &["a"], &["b"]), ExpertReply::Confirm);
        log.push(
            imp(&u, &["a"], &["c"]),
            ExpertReply::FullCounterexample(u.set(["a", "c"]).unwrap()),
        );
        assert_eq!(
            audit_consistency(&log),
            vec![AuditViolation {
                confirmed: 0,
                counterexample: 1
            }]
        );
        assert_eq!(malformed_entries(&log, &u).len(), 1);

        let mut only_confirms = ExpertLog::new();
        only_confirms.push(imp(&u, &["a"], &["b"]), ExpertReply::Confirm);
        only_confirms.push(imp(&u, &[], &["c"]), ExpertReply::Confirm);
        assert!(audit_consistency(&only_confirms).is_empty());

        let mut partial = ExpertLog::new();
        partial.push(imp(&u, &["a"], &["b"]), ExpertReply::Confirm);
        partial.push(
            imp(&u, &["a"], &["c"]),
            ExpertReply::PartialCounterexample(pod(&u, &["a"], &["c"])),
        );
        assert!(audit_consistency(&partial).is_empty());
    }

    #[test]
    fn shape_rejections_name_the_condition() {
        let u = universe();
        let q = imp(&u, &["b"], &["c"]);
        let r = ExpertReply::PartialCounterexample(pod(&u, &["a"], &["c"]));
        assert_eq!(
            r.check_shape(&q, &u),
            Err(Rejection::PremiseNotCovered(vec!["b".into()]))
        );
        let r = ExpertReply::PartialCounterexample(pod(&u, &["b"], &["a"]));
        assert_eq!(r.check_shape(&q, &u), Err(Rejection::ConclusionNotContradicted));
    }
}
