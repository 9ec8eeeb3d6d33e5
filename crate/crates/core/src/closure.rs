//! Closure operators on subsets of M and pseudoclosed-set machinery.
//!
//! A [`ClosureOperator`] is a cheap-to-clone handle over one of several
//! concrete constructions: the intent closure of a formal context, the
//! closure under an implication set, the consistent closure of a partial
//! context, identity, constant top, pointwise meets, refinements by
//! implications, and arbitrary user functions. All of them evaluate
//! eagerly on demand; [`ClosureOperator::memoized`] adds a shared cache.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::context::FormalContext;
use crate::error::Result;
use crate::implication::{Implication, ImplicationSet};
use crate::lectic::{self, enumerate_closed};
use crate::partial::PartialContext;
use crate::set::{powerset, subsets_by_cardinality, AttrSet};
use crate::universe::Universe;

type ClosureFn = dyn Fn(&AttrSet) -> AttrSet + Send + Sync;

#[derive(Clone)]
pub struct ClosureOperator {
    universe: Universe,
    kind: Arc<Kind>,
}

enum Kind {
    Context(FormalContext),
    Implications(ImplicationSet),
    Partial(PartialContext),
    Identity,
    Top,
    Meet(ClosureOperator, ClosureOperator),
    /// Closed sets are those closed under `base` and under every rule.
    Refined {
        base: ClosureOperator,
        rules: ImplicationSet,
    },
    Function(Box<ClosureFn>),
    Memo {
        inner: ClosureOperator,
        cache: Mutex<HashMap<AttrSet, AttrSet>>,
    },
}

impl fmt::Debug for ClosureOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &*self.kind {
            Kind::Context(_) => "context",
            Kind::Implications(_) => "implications",
            Kind::Partial(_) => "partial-context",
            Kind::Identity => "identity",
            Kind::Top => "top",
            Kind::Meet(..) => "meet",
            Kind::Refined { .. } => "refined",
            Kind::Function(_) => "function",
            Kind::Memo { .. } => "memo",
        };
        write!(f, "ClosureOperator({name}, |M|={})", self.universe.len())
    }
}

/// The carriers [`ClosureOperator::make`] accepts.
pub enum OperatorSource {
    Context(FormalContext),
    Implications(ImplicationSet),
    PartialContext(PartialContext),
    Identity(Universe),
    Top(Universe),
}

impl ClosureOperator {
    fn with_kind(universe: Universe, kind: Kind) -> Self {
        ClosureOperator {
            universe,
            kind: Arc::new(kind),
        }
    }

    pub fn make(source: OperatorSource) -> Self {
        match source {
            OperatorSource::Context(ctx) => Self::from_context(ctx),
            OperatorSource::Implications(ls) => Self::from_implications(ls),
            OperatorSource::PartialContext(p) => Self::from_partial_context(p),
            OperatorSource::Identity(u) => Self::identity(u),
            OperatorSource::Top(u) => Self::top(u),
        }
    }

    /// `X ↦ X″` in the given context.
    pub fn from_context(ctx: FormalContext) -> Self {
        Self::with_kind(ctx.universe().clone(), Kind::Context(ctx))
    }

    /// `X ↦` the closure of X under the implications.
    pub fn from_implications(ls: ImplicationSet) -> Self {
        Self::with_kind(ls.universe().clone(), Kind::Implications(ls))
    }

    /// `X ↦` the largest unrefuted conclusion of X.
    ///
    /// Extensive and monotone, but idempotent only for special partial
    /// contexts, for instance ones made of full descriptions:
    /// with the single description `(∅, {b})` over `{a, b}`, `∅` maps to
    /// `{a}` and `{a}` maps to `{a, b}`.
    pub fn from_partial_context(pctx: PartialContext) -> Self {
        Self::with_kind(pctx.universe().clone(), Kind::Partial(pctx))
    }

    pub fn identity(universe: Universe) -> Self {
        Self::with_kind(universe, Kind::Identity)
    }

    pub fn top(universe: Universe) -> Self {
        Self::with_kind(universe, Kind::Top)
    }

    /// Wraps an arbitrary function. The closure laws are the caller's
    /// responsibility; [`check_closure_laws`] can audit them.
    pub fn from_fn<F>(universe: Universe, f: F) -> Self
    where
        F: Fn(&AttrSet) -> AttrSet + Send + Sync + 'static,
    {
        Self::with_kind(universe, Kind::Function(Box::new(f)))
    }

    /// Same operator with results cached per input set.
    pub fn memoized(&self) -> Self {
        if matches!(&*self.kind, Kind::Memo { .. }) {
            return self.clone();
        }
        Self::with_kind(
            self.universe.clone(),
            Kind::Memo {
                inner: self.clone(),
                cache: Mutex::new(HashMap::new()),
            },
        )
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn close(&self, x: &AttrSet) -> AttrSet {
        match &*self.kind {
            Kind::Context(ctx) => ctx.intent_closure(x),
            Kind::Implications(ls) => ls.closure(x),
            Kind::Partial(p) => p.consistent_closure(x),
            Kind::Identity => x.clone(),
            Kind::Top => self.universe.full_set(),
            Kind::Meet(a, b) => &a.close(x) & &b.close(x),
            Kind::Refined { base, rules } => {
                let mut cur = x.clone();
                loop {
                    let closed = base.close(&cur);
                    let next = rules.closure(&closed);
                    if next == closed {
                        return closed;
                    }
                    cur = next;
                }
            }
            Kind::Function(f) => f(x),
            Kind::Memo { inner, cache } => {
                if let Some(hit) = cache.lock().unwrap().get(x) {
                    return hit.clone();
                }
                let value = inner.close(x);
                cache.lock().unwrap().insert(x.clone(), value.clone());
                value
            }
        }
    }

    pub fn is_closed(&self, x: &AttrSet) -> bool {
        self.close(x) == *x
    }

    /// `X ↦ c1(X) ∩ c2(X)`. A closure operator when both inputs are; with
    /// a partial-context operator as input only extensivity and
    /// monotonicity are guaranteed.
    pub fn meet(&self, other: &ClosureOperator) -> Result<Self> {
        self.universe.check_same(&other.universe)?;
        let op = Self::with_kind(
            self.universe.clone(),
            Kind::Meet(self.clone(), other.clone()),
        );
        if cfg!(debug_assertions) && op.universe.len() <= 5 {
            let report = check_closure_laws(&op, 5);
            debug_assert!(report.extensive_and_monotone(), "meet breaks closure laws: {report:?}");
        }
        Ok(op)
    }

    /// The operator whose closed sets are the closed sets of `self` that also
    /// respect `imp`. Refining an already refined operator extends its rule
    /// set instead of nesting.
    pub fn refine_with_implication(&self, imp: &Implication) -> Result<Self> {
        self.universe.check(&imp.premise)?;
        self.universe.check(&imp.conclusion)?;
        let (base, mut rules) = match &*self.kind {
            Kind::Refined { base, rules } => (base.clone(), rules.clone()),
            _ => (self.clone(), ImplicationSet::new(self.universe.clone())),
        };
        rules.push(imp.clone())?;
        let op = Self::with_kind(self.universe.clone(), Kind::Refined { base, rules });
        debug_guard(&op);
        Ok(op)
    }

    /// Whether `self(X) ⊆ other(X)` for every X, decided by checking that
    /// every closed set of `other` is closed under `self`. Exact when both
    /// are closure operators.
    pub fn is_below(&self, other: &ClosureOperator) -> bool {
        self.universe.same_as(&other.universe)
            && enumerate_closed(other).all(|x| self.is_closed(&x))
    }

    /// Pointwise equality, decided by comparing closed-set families.
    pub fn same_as(&self, other: &ClosureOperator) -> bool {
        self.is_below(other) && other.is_below(self)
    }
}

fn debug_guard(op: &ClosureOperator) {
    if cfg!(debug_assertions) && op.universe.len() <= 5 {
        let report = check_closure_laws(op, 5);
        debug_assert!(report.passed(), "constructed operator breaks closure laws: {report:?}");
    }
}

/// Which closure axiom failed, and where.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawViolation {
    Extensive { input: AttrSet, output: AttrSet },
    Monotone { smaller: AttrSet, larger: AttrSet },
    Idempotent { input: AttrSet, once: AttrSet, twice: AttrSet },
}

#[derive(Debug, Clone, Default)]
pub struct LawReport {
    pub exhaustive: bool,
    pub checked: usize,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// No extensivity or monotonicity violations; idempotence may fail.
    pub fn extensive_and_monotone(&self) -> bool {
        self.violations
            .iter()
            .all(|v| matches!(v, LawViolation::Idempotent { .. }))
    }
}

/// Audits extensivity, monotonicity and idempotence.
///
/// For `|M| <= exhaustive_limit` every subset is checked, with monotonicity
/// tested on all one-element extensions (which implies it for all pairs).
/// Larger universes are sampled deterministically: all sets of at most two
/// elements, their complements, and their one-element extensions.
pub fn check_closure_laws(c: &ClosureOperator, exhaustive_limit: usize) -> LawReport {
    let n = c.universe.len();
    let exhaustive = n <= exhaustive_limit.min(20);
    let inputs: Vec<AttrSet> = if exhaustive {
        powerset(n).collect()
    } else {
        let small: Vec<AttrSet> = subsets_by_cardinality(n)
            .take_while(|s| s.len() <= 2)
            .collect();
        let mut all = small.clone();
        all.extend(small.iter().map(AttrSet::complement));
        all
    };
    let mut report = LawReport {
        exhaustive,
        ..LawReport::default()
    };
    for x in &inputs {
        report.checked += 1;
        let once = c.close(x);
        if !x.is_subset(&once) {
            report.violations.push(LawViolation::Extensive {
                input: x.clone(),
                output: once.clone(),
            });
        }
        let twice = c.close(&once);
        if twice != once {
            report.violations.push(LawViolation::Idempotent {
                input: x.clone(),
                once: once.clone(),
                twice,
            });
        }
        for m in 0..n {
            if x.contains(m) {
                continue;
            }
            let larger = x.clone().with(m);
            if !once.is_subset(&c.close(&larger)) {
                report.violations.push(LawViolation::Monotone {
                    smaller: x.clone(),
                    larger,
                });
            }
        }
    }
    report
}

/// Pseudoclosed sets listed by ascending cardinality (ties in lectic order).
#[derive(Debug, Clone)]
pub struct PseudoclosedFamily {
    pub sets: Vec<AttrSet>,
    pub against: ClosureOperator,
    pub relative_to: Option<ClosureOperator>,
}

impl PseudoclosedFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &AttrSet) -> bool {
        self.sets.contains(set)
    }

    /// Re-checks the recursive definition member by member, and that no
    /// set outside the family satisfies it. Returns the first offending set.
    pub fn replay(&self) -> Option<AttrSet> {
        let c = &self.against;
        let n = c.universe.len();
        let mut found: Vec<AttrSet> = Vec::new();
        for p in subsets_by_cardinality(n) {
            let base_closed = self.relative_to.as_ref().is_none_or(|c1| c1.is_closed(&p));
            let qualifies = base_closed
                && !c.is_closed(&p)
                && found
                    .iter()
                    .filter(|q| q.is_proper_subset(&p))
                    .all(|q| c.close(q).is_subset(&p));
            if qualifies != self.contains(&p) {
                return Some(p);
            }
            if qualifies {
                found.push(p);
            }
        }
        None
    }
}

/// The sets P with `c(P) ≠ P` such that every pseudoclosed `Q ⊊ P` has
/// `c(Q) ⊆ P`, found by a cardinality-ascending scan of the powerset.
pub fn pseudoclosed_sets(c: &ClosureOperator) -> PseudoclosedFamily {
    let n = c.universe.len();
    let mut family: Vec<(AttrSet, AttrSet)> = Vec::new();
    for p in subsets_by_cardinality(n) {
        let closed = c.close(&p);
        if closed == p {
            continue;
        }
        if family
            .iter()
            .filter(|(q, _)| q.is_proper_subset(&p))
            .all(|(_, cq)| cq.is_subset(&p))
        {
            family.push((p, closed));
        }
    }
    PseudoclosedFamily {
        sets: sort_family(family.into_iter().map(|(p, _)| p).collect()),
        against: c.clone(),
        relative_to: None,
    }
}

/// The sets P closed under `c1`, not closed under `c2`, such that every
/// such set `Q ⊊ P` already found has `c2(Q) ⊆ P`. Only the closed sets of
/// `c1` are visited.
pub fn relative_pseudoclosed(c1: &ClosureOperator, c2: &ClosureOperator) -> PseudoclosedFamily {
    let mut candidates: Vec<AttrSet> = enumerate_closed(c1).collect();
    candidates.sort_by_key(AttrSet::len);
    let mut family: Vec<(AttrSet, AttrSet)> = Vec::new();
    for p in candidates {
        let closed = c2.close(&p);
        if closed == p {
            continue;
        }
        if family
            .iter()
            .filter(|(q, _)| q.is_proper_subset(&p))
            .all(|(_, cq)| cq.is_subset(&p))
        {
            family.push((p, closed));
        }
    }
    PseudoclosedFamily {
        sets: sort_family(family.into_iter().map(|(p, _)| p).collect()),
        against: c2.clone(),
        relative_to: Some(c1.clone()),
    }
}

pub(crate) fn sort_family(mut sets: Vec<AttrSet>) -> Vec<AttrSet> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| lectic::lectic_cmp(a, b)));
    sets
}
