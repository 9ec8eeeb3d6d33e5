//! Exploration of a formal context with background implications and
//! full counterexamples.

use crate::context::FormalContext;
use crate::error::{Error, Rejection, Result};
use crate::expert::{Expert, ExpertLog, ExpertReply};
use crate::implication::{Implication, ImplicationSet};
use crate::lectic::next_closed_with;
use crate::set::AttrSet;
use crate::universe::Universe;

use super::{default_iteration_cap, expert_violation, ExploreOptions, Explorer};

/// Step-wise classical exploration.
///
/// The cursor walks the sets closed under the known implications in lectic
/// order. A cursor that is an intent of the current context is skipped; any
/// other cursor `P` yields the question `P → P''`. A confirmation adds it to
/// the known implications and moves on; a counterexample becomes a new object
/// and `P` is looked at again.
#[derive(Debug, Clone)]
pub struct ClassicalExplorer {
    context: FormalContext,
    background: ImplicationSet,
    known: ImplicationSet,
    confirmed: ImplicationSet,
    log: ExpertLog,
    cursor: Option<AttrSet>,
    pending: Option<Implication>,
    added: usize,
}

#[derive(Debug, Clone)]
pub struct ClassicalOutcome {
    /// Background followed by the confirmed implications.
    pub implications: ImplicationSet,
    pub confirmed: ImplicationSet,
    pub context: FormalContext,
    pub log: ExpertLog,
}

impl ClassicalExplorer {
    pub fn new(context: FormalContext, background: ImplicationSet) -> Result<Self> {
        context.universe().check_same(background.universe())?;
        let universe = context.universe().clone();
        let cursor = Some(background.closure(&universe.empty_set()));
        Ok(ClassicalExplorer {
            known: background.clone(),
            confirmed: ImplicationSet::new(universe),
            context,
            background,
            log: ExpertLog::new(),
            cursor,
            pending: None,
            added: 0,
        })
    }

    pub fn universe(&self) -> &Universe {
        self.context.universe()
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn background(&self) -> &ImplicationSet {
        &self.background
    }

    pub fn known(&self) -> &ImplicationSet {
        &self.known
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

    fn advance(&self, from: &AttrSet) -> Option<AttrSet> {
        next_closed_with(self.universe().len(), |x| self.known.closure(x), from)
    }

    /// Moves the cursor to the next set that is not an intent and returns the
    /// question for it.
    pub fn next_question(&mut self) -> Option<Implication> {
        if self.pending.is_some() {
            return self.pending.clone();
        }
        while let Some(p) = self.cursor.clone() {
            let closed = self.context.intent_closure(&p);
            if closed != p {
                self.pending = Some(Implication::new(p, closed));
                return self.pending.clone();
            }
            self.cursor = self.advance(&p);
        }
        None
    }

    pub fn is_finished(&self) -> bool {
        self.pending.is_none() && self.clone().next_question().is_none()
    }

    /// Accepts `Confirm` or a counterexample row. A partial description is
    /// accepted only when it is full.
    pub fn apply_answer(&mut self, reply: ExpertReply) -> Result<()> {
        let question = self
            .pending
            .clone()
            .ok_or(Error::Rejected(Rejection::NoPendingQuestion))?;
        match reply {
            ExpertReply::Confirm => {
                self.known.push(question.clone())?;
                self.confirmed.push(question.clone())?;
                self.cursor = self.advance(&question.premise);
                self.log.push(question, ExpertReply::Confirm);
            }
            other => {
                let pod = other.description().expect("not a confirmation");
                if !pod.is_full() {
                    return Err(Error::Rejected(Rejection::NotAFullDescription));
                }
                ExpertReply::PartialCounterexample(pod.clone())
                    .check_shape(&question, self.universe())
                    .map_err(Error::Rejected)?;
                let row = pod.positive().clone();
                if let Some(imp) = self.known.iter().find(|imp| !imp.respected_by(&row)) {
                    return Err(Error::Rejected(Rejection::RefutesConfirmed(
                        imp.display(self.universe()).to_string(),
                    )));
                }
                let mut k = self.added + 1;
                let name = loop {
                    let name = format!("x{k}");
                    if !self.context.objects().contains(&name) {
                        break name;
                    }
                    k += 1;
                };
                self.context = self.context.with_object(name, row.clone())?;
                self.added = k;
                self.log.push(question, ExpertReply::FullCounterexample(row));
            }
        }
        self.pending = None;
        Ok(())
    }

    pub fn outcome(&self) -> ClassicalOutcome {
        ClassicalOutcome {
            implications: self.known.clone(),
            confirmed: self.confirmed.clone(),
            context: self.context.clone(),
            log: self.log.clone(),
        }
    }
}

impl Explorer for ClassicalExplorer {
    fn universe(&self) -> &Universe {
        ClassicalExplorer::universe(self)
    }

    fn next_question(&mut self) -> Option<Implication> {
        ClassicalExplorer::next_question(self)
    }

    fn apply_answer(&mut self, reply: ExpertReply) -> Result<()> {
        ClassicalExplorer::apply_answer(self, reply)
    }

    fn log(&self) -> &ExpertLog {
        &self.log
    }
}

/// Runs the classical exploration to completion. The caller asserts that
/// the background holds for the expert and that the expert's theory holds
/// in `context`.
pub fn explore_classical<E: Expert + ?Sized>(
    context: FormalContext,
    background: ImplicationSet,
    expert: &mut E,
    options: ExploreOptions,
) -> Result<ClassicalOutcome> {
    let mut explorer = ClassicalExplorer::new(context, background)?;
    let cap = options
        .max_iterations
        .unwrap_or_else(|| default_iteration_cap(explorer.universe().len()));
    while let Some(question) = explorer.next_question() {
        if explorer.log.len() >= cap {
            return Err(Error::IterationCap(cap));
        }
        let reply = expert.answer(&question);
        explorer
            .apply_answer(reply)
            .map_err(|e| expert_violation(explorer.universe(), &question, e))?;
    }
    Ok(explorer.outcome())
}
