//! Pseudointents and canonical (Duquenne–Guigues) bases, absolute and
//! relative to a base operator.
//!
//! Pseudoclosed sets are found with Next-Closure over the operator
//! `X ↦ fixpoint(base, L•)`, where `L•` applies only implications whose
//! premise is a proper subset of the current set. Each set visited is either
//! closed for the target operator or the next pseudoclosed set, whose
//! implication is then added to `L`.

use serde::{Deserialize, Serialize};

use crate::closure::{sort_family, ClosureOperator, PseudoclosedFamily};
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::implication::{Implication, ImplicationSet};
use crate::lectic::next_closed_with;
use crate::set::AttrSet;

#[derive(Debug, Clone)]
pub struct CanonicalBase {
    pub implications: ImplicationSet,
    pub premises: PseudoclosedFamily,
}

impl CanonicalBase {
    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    pub fn report(&self) -> BaseReport {
        let u = self.implications.universe();
        BaseReport {
            pseudo_intents: self.premises.sets.iter().map(|p| u.names_of(p)).collect(),
            base_size: self.implications.len(),
        }
    }
}

/// Summary printed by the `base --report` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseReport {
    pub pseudo_intents: Vec<Vec<String>>,
    pub base_size: usize,
}

/// `X ∪ ⋃{B | A → B ∈ L, A ⊊ X}`, iterated to a fixpoint.
fn saturate_strict(rules: &[Implication], x: &AttrSet) -> AttrSet {
    let mut cur = x.clone();
    loop {
        let mut grown = false;
        for imp in rules {
            if imp.premise.is_proper_subset(&cur) && !imp.conclusion.is_subset(&cur) {
                cur.union_with(&imp.conclusion);
                grown = true;
            }
        }
        if !grown {
            return cur;
        }
    }
}

/// Pseudoclosed sets of `c`, relative to `base` if given (sets must then be
/// `base`-closed). Returns the premises in lectic order.
fn pseudoclosed_by_next_closure(base: Option<&ClosureOperator>, c: &ClosureOperator) -> Vec<AttrSet> {
    let n = c.universe().len();
    let mut rules: Vec<Implication> = Vec::new();
    let close = |rules: &[Implication], x: &AttrSet| -> AttrSet {
        let mut cur = x.clone();
        loop {
            let next = match base {
                Some(b) => saturate_strict(rules, &b.close(&cur)),
                None => saturate_strict(rules, &cur),
            };
            if next == cur {
                return cur;
            }
            cur = next;
        }
    };
    let mut premises = Vec::new();
    let mut current = Some(close(&rules, &c.universe().empty_set()));
    while let Some(a) = current {
        let closed = c.close(&a);
        if closed != a {
            premises.push(a.clone());
            rules.push(Implication::new(a.clone(), closed));
        }
        current = next_closed_with(n, |x| close(&rules, x), &a);
    }
    premises
}

fn family(sets: Vec<AttrSet>, c: &ClosureOperator, base: Option<&ClosureOperator>) -> PseudoclosedFamily {
    PseudoclosedFamily {
        sets: sort_family(sets),
        against: c.clone(),
        relative_to: base.cloned(),
    }
}

fn base_from(premises: PseudoclosedFamily) -> Result<CanonicalBase> {
    let c = &premises.against;
    let implications = ImplicationSet::from_implications(
        c.universe().clone(),
        premises.sets.iter().map(|p| Implication::new(p.clone(), c.close(p))),
    )?;
    Ok(CanonicalBase {
        implications,
        premises,
    })
}

pub fn pseudo_intents(ctx: &FormalContext) -> PseudoclosedFamily {
    let c = ClosureOperator::from_context(ctx.clone());
    family(pseudoclosed_by_next_closure(None, &c), &c, None)
}

/// Pseudoclosed sets of an arbitrary closure operator.
pub fn pseudoclosed_of(c: &ClosureOperator) -> PseudoclosedFamily {
    family(pseudoclosed_by_next_closure(None, c), c, None)
}

/// `{P → P'' | P pseudointent}`, premises by ascending size.
pub fn canonical_base(ctx: &FormalContext) -> CanonicalBase {
    base_from(pseudo_intents(ctx)).expect("premises share the context universe")
}

/// `{P → c(P) | P c_cert-pseudoclosed under c}`. Requires `c_cert ⊆ c`
/// pointwise.
pub fn relative_canonical_base(c_cert: &ClosureOperator, c: &ClosureOperator) -> Result<CanonicalBase> {
    c_cert.universe().check_same(c.universe())?;
    if !c_cert.is_below(c) {
        return Err(Error::Precondition(
            "the base operator is not pointwise contained in the target operator".into(),
        ));
    }
    let sets = pseudoclosed_by_next_closure(Some(c_cert), c);
    base_from(family(sets, c, Some(c_cert)))
}
