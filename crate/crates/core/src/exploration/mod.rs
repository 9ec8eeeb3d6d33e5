//! Attribute exploration loops.
//!
//! [`ExplorationState`] is the general algorithm as a step-wise state machine
//! over two closure operators: `certain` (what definitely follows) and
//! `universal` (what may follow). Questions come from a [`Strategy`];
//! answers either refine `certain` by a confirmed implication or add a
//! counterexample that shrinks `universal`. The run ends when both
//! operators coincide.
//!
//! [`ClassicalExplorer`] is the formal-context special case with background
//! implications and full counterexamples.

mod classical;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use classical::{explore_classical, ClassicalExplorer, ClassicalOutcome};
pub use trace::{events_from_log, parse_trace, replay, write_trace, TraceEvent};

use crate::closure::ClosureOperator;
use crate::error::{Error, Rejection, Result};
use crate::expert::{Expert, ExpertLog, ExpertReply};
use crate::implication::{Implication, ImplicationSet};
use crate::lectic::{enumerate_closed, next_closed};
use crate::partial::{PartialContext, PartialObjectDescription};
use crate::set::{powerset, AttrSet};
use crate::universe::Universe;

/// How the next undecided implication is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Ask `A → universal(A)` for the lectically first certain-closed set A
    /// that is still undecided. Lectic order extends ⊆, so A is ⊆-minimal,
    /// and the number of confirmed questions is as small as possible.
    #[default]
    Minimal,
    /// Ask `A → universal(A)` for the lectically last undecided
    /// certain-closed set. Conclusions are still ⊆-maximal, but no bound on
    /// the number of confirmations holds.
    MaxConclusion,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Minimal => "minimal",
            Strategy::MaxConclusion => "max-conclusion",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimal" => Ok(Strategy::Minimal),
            "max-conclusion" => Ok(Strategy::MaxConclusion),
            other => Err(Error::Precondition(format!("unknown strategy `{other}`"))),
        }
    }
}

/// Default bound on expert interactions: 3^|M|, saturating.
pub fn default_iteration_cap(universe_len: usize) -> usize {
    3usize.saturating_pow(universe_len.min(u32::MAX as usize) as u32)
}

#[derive(Debug, Clone)]
pub struct ExplorationState {
    universe: Universe,
    initial_certain: ClosureOperator,
    initial_universal: ClosureOperator,
    certain: ClosureOperator,
    universal: ClosureOperator,
    working: PartialContext,
    confirmed: ImplicationSet,
    log: ExpertLog,
    pending: Option<Implication>,
    strategy: Strategy,
    /// Premise of the last question; the minimal strategy resumes here.
    cursor: Option<AttrSet>,
}

impl ExplorationState {
    /// Starts a run. The caller asserts `certain ⊆ Th(expert) ⊆ universal`.
    pub fn new(
        certain: ClosureOperator,
        universal: ClosureOperator,
        strategy: Strategy,
    ) -> Result<Self> {
        certain.universe().check_same(universal.universe())?;
        let universe = certain.universe().clone();
        let certain = certain.memoized();
        let universal = universal.memoized();
        Ok(ExplorationState {
            working: PartialContext::new(universe.clone()),
            confirmed: ImplicationSet::new(universe.clone()),
            universe,
            initial_certain: certain.clone(),
            initial_universal: universal.clone(),
            certain,
            universal,
            log: ExpertLog::new(),
            pending: None,
            strategy,
            cursor: None,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn certain(&self) -> &ClosureOperator {
        &self.certain
    }

    pub fn universal(&self) -> &ClosureOperator {
        &self.universal
    }

    pub fn initial_certain(&self) -> &ClosureOperator {
        &self.initial_certain
    }

    pub fn initial_universal(&self) -> &ClosureOperator {
        &self.initial_universal
    }

    pub fn working(&self) -> &PartialContext {
        &self.working
    }

    pub fn confirmed(&self) -> &ImplicationSet {
        &self.confirmed
    }

    pub fn log(&self) -> &ExpertLog {
        &self.log
    }

    pub fn pending(&self) -> Option<&Implication> {
        self.pending.as_ref()
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn interactions(&self) -> usize {
        self.log.len()
    }

    fn is_undecided(&self, closed: &AttrSet) -> bool {
        !self.universal.is_closed(closed)
    }

    fn question_for(&self, premise: AttrSet) -> Implication {
        let conclusion = self.universal.close(&premise);
        Implication::new(premise, conclusion)
    }

    /// The question the strategy would ask now, without recording it.
    pub fn peek_question(&self) -> Option<Implication> {
        if let Some(p) = &self.pending {
            return Some(p.clone());
        }
        let premise = match self.strategy {
            Strategy::Minimal => {
                let mut candidate = match &self.cursor {
                    None => Some(self.certain.close(&self.universe.empty_set())),
                    Some(c) if self.certain.is_closed(c) => Some(c.clone()),
                    Some(c) => next_closed(&self.certain, c),
                };
                while let Some(a) = candidate {
                    if self.is_undecided(&a) {
                        return Some(self.question_for(a));
                    }
                    candidate = next_closed(&self.certain, &a);
                }
                None
            }
            Strategy::MaxConclusion => enumerate_closed(&self.certain)
                .filter(|a| self.is_undecided(a))
                .last(),
        };
        premise.map(|a| self.question_for(a))
    }

    /// The pending question, computing and recording a new one if none is
    /// pending. `None` means the run is finished.
    pub fn next_question(&mut self) -> Option<Implication> {
        if self.pending.is_none() {
            self.pending = self.peek_question();
        }
        self.pending.clone()
    }

    pub fn is_finished(&self) -> bool {
        self.peek_question().is_none()
    }

    /// Checks that a counterexample is admissible for the pending question:
    /// it refutes the question, refutes no confirmed implication, and does not
    /// contradict what follows from certain knowledge.
    pub fn check_counterexample(&self, pod: &PartialObjectDescription) -> Result<(), Rejection> {
        let question = self.pending.as_ref().ok_or(Rejection::NoPendingQuestion)?;
        ExpertReply::PartialCounterexample(pod.clone()).check_shape(question, &self.universe)?;
        if let Some(conf) = self.confirmed.iter().find(|imp| pod.refutes(imp)) {
            return Err(Rejection::RefutesConfirmed(conf.display(&self.universe).to_string()));
        }
        let closed = self.certain.close(pod.positive());
        let clash = &closed & pod.negative();
        if !clash.is_empty() {
            return Err(Rejection::ContradictsCertain(format!(
                "{} implies {}, which is marked absent",
                self.universe.display(pod.positive()),
                self.universe.display(&clash)
            )));
        }
        Ok(())
    }

    /// Absorbs an answer to the pending question. On error the state is
    /// left untouched.
    pub fn apply_answer(&mut self, reply: ExpertReply) -> Result<()> {
        let question = self
            .pending
            .clone()
            .ok_or(Error::Rejected(Rejection::NoPendingQuestion))?;
        let (certain, working) = match reply.description() {
            None => {
                let certain = self.certain.refine_with_implication(&question)?;
                let working = self.working.normalize(&certain).map_err(|e| {
                    Error::Rejected(Rejection::ContradictsCertain(format!(
                        "confirming {} contradicts an earlier counterexample: {e}",
                        question.display(&self.universe)
                    )))
                })?;
                (certain, working)
            }
            Some(pod) => {
                self.check_counterexample(&pod).map_err(Error::Rejected)?;
                let working = self
                    .working
                    .add_description(pod)?
                    .normalize(&self.certain)?;
                (self.certain.clone(), working)
            }
        };
        let universal = self
            .initial_universal
            .meet(&ClosureOperator::from_partial_context(working.clone()))?;

        if !certain
            .close(&question.premise)
            .is_subset(&universal.close(&question.premise))
        {
            return Err(Error::Inconsistent(format!(
                "certain knowledge exceeds universal knowledge at {}",
                self.universe.display(&question.premise)
            )));
        }
        if cfg!(debug_assertions) && self.universe.len() <= 5 {
            debug_assert!(
                powerset(self.universe.len()).all(|x| certain.close(&x).is_subset(&universal.close(&x))),
                "certain knowledge exceeds universal knowledge"
            );
        }

        if reply.is_confirm() {
            self.confirmed.push(question.clone())?;
        }
        self.certain = certain;
        self.universal = universal;
        self.working = working;
        self.log.push(question.clone(), reply);
        self.cursor = Some(question.premise);
        self.pending = None;
        Ok(())
    }

    pub fn result(&self, trace: ExplorationTrace) -> ExplorationResult {
        ExplorationResult {
            final_operator: self.certain.clone(),
            final_context: self.working.clone(),
            confirmed: self.confirmed.clone(),
            trace,
        }
    }
}

/// The step interface shared by both exploration loops, used for replay.
pub trait Explorer {
    fn universe(&self) -> &Universe;
    fn next_question(&mut self) -> Option<Implication>;
    fn apply_answer(&mut self, reply: ExpertReply) -> Result<()>;
    fn log(&self) -> &ExpertLog;
}

impl Explorer for ExplorationState {
    fn universe(&self) -> &Universe {
        &self.universe
    }

    fn next_question(&mut self) -> Option<Implication> {
        ExplorationState::next_question(self)
    }

    fn apply_answer(&mut self, reply: ExpertReply) -> Result<()> {
        ExplorationState::apply_answer(self, reply)
    }

    fn log(&self) -> &ExpertLog {
        &self.log
    }
}

/// Whether nothing is left undecided: every set closed under `certain` is a
/// fixpoint of `universal`. Given `certain ⊆ universal` pointwise, which
/// exploration maintains, this is pointwise equality of the two operators.
/// `universal` need not be idempotent.
pub fn check_termination_condition(certain: &ClosureOperator, universal: &ClosureOperator) -> bool {
    certain.universe().same_as(universal.universe())
        && enumerate_closed(certain).all(|a| universal.is_closed(&a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Running,
    Finished,
}

/// Snapshots of a run, one per expert interaction plus the initial state.
#[derive(Debug, Clone)]
pub struct ExplorationTrace {
    pub states: Vec<ExplorationState>,
    pub outcome: Outcome,
}

impl ExplorationTrace {
    pub fn start(state: &ExplorationState) -> Self {
        ExplorationTrace {
            states: vec![state.clone()],
            outcome: Outcome::Running,
        }
    }

    pub fn record(&mut self, state: &ExplorationState) {
        self.states.push(state.clone());
    }

    pub fn last(&self) -> Option<&ExplorationState> {
        self.states.last()
    }
}

#[derive(Debug, Clone)]
pub struct ExplorationResult {
    pub final_operator: ClosureOperator,
    pub final_context: PartialContext,
    pub confirmed: ImplicationSet,
    pub trace: ExplorationTrace,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExploreOptions {
    pub max_iterations: Option<usize>,
}

pub(crate) fn expert_violation(universe: &Universe, q: &Implication, e: Error) -> Error {
    match e {
        Error::Rejected(r) => Error::Inconsistent(format!(
            "reply to {} violates the expert contract: {r}",
            q.display(universe)
        )),
        other => other,
    }
}

/// Runs the general exploration to completion against an automated expert.
pub fn explore_general<E: Expert + ?Sized>(
    certain: ClosureOperator,
    universal: ClosureOperator,
    expert: &mut E,
    strategy: Strategy,
    options: ExploreOptions,
) -> Result<ExplorationResult> {
    let mut state = ExplorationState::new(certain, universal, strategy)?;
    let cap = options
        .max_iterations
        .unwrap_or_else(|| default_iteration_cap(state.universe.len()));
    let mut trace = ExplorationTrace::start(&state);
    while let Some(question) = state.next_question() {
        if state.interactions() >= cap {
            return Err(Error::IterationCap(cap));
        }
        let reply = expert.answer(&question);
        state
            .apply_answer(reply)
            .map_err(|e| expert_violation(&state.universe, &question, e))?;
        trace.record(&state);
    }
    trace.outcome = Outcome::Finished;
    Ok(state.result(trace))
}
