//! Implications on M, closure under implication sets, and entailment.

use std::fmt;

use crate::error::{Error, Result};
use crate::set::AttrSet;
use crate::universe::{AttributeUniverse, Universe};

/// `premise → conclusion`. The conclusion is stored as given; it need not
/// contain the premise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Implication {
    pub premise: AttrSet,
    pub conclusion: AttrSet,
}

impl Implication {
    pub fn new(premise: AttrSet, conclusion: AttrSet) -> Self {
        Implication {
            premise,
            conclusion,
        }
    }

    /// Whether `attrs` respects this implication.
    pub fn respected_by(&self, attrs: &AttrSet) -> bool {
        !self.premise.is_subset(attrs) || self.conclusion.is_subset(attrs)
    }

    pub fn display<'a>(&'a self, universe: &'a AttributeUniverse) -> DisplayImplication<'a> {
        DisplayImplication {
            universe,
            imp: self,
        }
    }
}

pub struct DisplayImplication<'a> {
    universe: &'a AttributeUniverse,
    imp: &'a Implication,
}

impl fmt::Display for DisplayImplication<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}",
            self.universe.display(&self.imp.premise),
            self.universe.display(&self.imp.conclusion)
        )
    }
}

/// A duplicate-free collection of implications over one universe.
#[derive(Debug, Clone)]
pub struct ImplicationSet {
    universe: Universe,
    items: Vec<Implication>,
}

impl ImplicationSet {
    pub fn new(universe: Universe) -> Self {
        ImplicationSet {
            universe,
            items: Vec::new(),
        }
    }

    pub fn from_implications<I>(universe: Universe, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = Implication>,
    {
        let mut set = Self::new(universe);
        for imp in items {
            set.push(imp)?;
        }
        Ok(set)
    }

    /// Adds an implication; returns false if it was already present.
    pub fn push(&mut self, imp: Implication) -> Result<bool> {
        self.universe.check(&imp.premise)?;
        self.universe.check(&imp.conclusion)?;
        if self.items.contains(&imp) {
            return Ok(false);
        }
        self.items.push(imp);
        Ok(true)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Implication> {
        self.items.iter()
    }

    pub fn contains(&self, imp: &Implication) -> bool {
        self.items.contains(imp)
    }

    /// A copy without the item at `index`.
    pub fn without(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.items.remove(index);
        out
    }

    /// The smallest superset of `attrs` closed under every implication.
    ///
    /// Linear-time forward chaining: each implication keeps a count of
    /// premise attributes not yet derived and fires exactly once, when the
    /// count reaches zero.
    pub fn closure(&self, attrs: &AttrSet) -> AttrSet {
        let n = self.universe.len();
        let mut result = attrs.clone();
        let mut missing: Vec<usize> = Vec::with_capacity(self.items.len());
        let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut queue: Vec<usize> = Vec::new();
        let fire = |k: usize, result: &mut AttrSet, queue: &mut Vec<usize>| {
            for m in &self.items[k].conclusion {
                if result.insert(m) {
                    queue.push(m);
                }
            }
        };

        for (k, imp) in self.items.iter().enumerate() {
            let pending = (&imp.premise - attrs).len();
            missing.push(pending);
            for m in &imp.premise {
                if !attrs.contains(m) {
                    watchers[m].push(k);
                }
            }
        }
        for (k, &count) in missing.iter().enumerate() {
            if count == 0 {
                fire(k, &mut result, &mut queue);
            }
        }
        while let Some(m) = queue.pop() {
            for &k in &watchers[m] {
                missing[k] -= 1;
                if missing[k] == 0 {
                    fire(k, &mut result, &mut queue);
                }
            }
        }
        result
    }

    /// Whether `attrs` is closed under every implication.
    pub fn is_model(&self, attrs: &AttrSet) -> bool {
        self.items.iter().all(|imp| imp.respected_by(attrs))
    }

    pub fn entails(&self, imp: &Implication) -> bool {
        imp.conclusion.is_subset(&self.closure(&imp.premise))
    }

    /// Every member of `self` is entailed by `reference` (soundness).
    pub fn is_sound_for(&self, reference: &ImplicationSet) -> bool {
        self.items.iter().all(|imp| reference.entails(imp))
    }

    /// Every member of `reference` is entailed by `self` (completeness).
    pub fn is_complete_for(&self, reference: &ImplicationSet) -> bool {
        reference.items.iter().all(|imp| self.entails(imp))
    }

    /// Sound and complete: both sets generate the same closure operator.
    pub fn is_base_for(&self, reference: &ImplicationSet) -> bool {
        self.universe.same_as(&reference.universe)
            && self.is_sound_for(reference)
            && self.is_complete_for(reference)
    }

    /// A base from which no single member can be dropped.
    pub fn is_nonredundant_base_for(&self, reference: &ImplicationSet) -> Result<bool> {
        if !self.is_base_for(reference) {
            return Err(Error::Precondition(
                "candidate is not a base for the reference set".into(),
            ));
        }
        Ok((0..self.items.len()).all(|k| !self.without(k).is_base_for(reference)))
    }
}

impl<'a> IntoIterator for &'a ImplicationSet {
    type Item = &'a Implication;
    type IntoIter = std::slice::Iter<'a, Implication>;
    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}
