//! Formal contexts and their derivation operators.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::implication::Implication;
use crate::set::{AttrSet, ObjSet};
use crate::universe::Universe;

/// A formal context (G, M, I). Immutable once built.
#[derive(Debug, Clone)]
pub struct FormalContext {
    universe: Universe,
    objects: Vec<String>,
    rows: Vec<AttrSet>,
}

impl FormalContext {
    /// A context without objects. Every attribute set closes to M.
    pub fn empty(universe: Universe) -> Self {
        FormalContext {
            universe,
            objects: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn new<I, S>(universe: Universe, objects: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, AttrSet)>,
        S: Into<String>,
    {
        let mut ctx = Self::empty(universe);
        let mut seen = HashSet::new();
        for (name, row) in objects {
            let name = name.into();
            ctx.universe.check(&row)?;
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateName(name));
            }
            ctx.objects.push(name);
            ctx.rows.push(row);
        }
        Ok(ctx)
    }

    /// Convenience constructor from attribute-name rows.
    pub fn from_named_rows<S: AsRef<str>>(
        universe: Universe,
        rows: &[(S, &[S])],
    ) -> Result<Self> {
        let objects = rows
            .iter()
            .map(|(g, attrs)| Ok((g.as_ref().to_owned(), universe.set(attrs.iter())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, objects)
    }

    /// Returns a copy extended by one object.
    pub fn with_object(&self, name: impl Into<String>, row: AttrSet) -> Result<Self> {
        let name = name.into();
        self.universe.check(&row)?;
        if self.objects.contains(&name) {
            return Err(Error::DuplicateName(name));
        }
        let mut next = self.clone();
        next.objects.push(name);
        next.rows.push(row);
        Ok(next)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn rows(&self) -> &[AttrSet] {
        &self.rows
    }

    /// The object intent g′.
    pub fn row(&self, g: usize) -> &AttrSet {
        &self.rows[g]
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_set<I, S>(&self, names: I) -> Result<ObjSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = ObjSet::empty(self.objects.len());
        for name in names {
            let name = name.as_ref();
            let g = self
                .objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| Error::UnknownObject(name.to_owned()))?;
            set.insert(g);
        }
        Ok(set)
    }

    pub fn object_names(&self, set: &ObjSet) -> Vec<String> {
        set.iter().map(|g| self.objects[g].clone()).collect()
    }

    /// A′: the attributes shared by every object in `objs`.
    pub fn derive_attributes(&self, objs: &ObjSet) -> AttrSet {
        let mut out = self.universe.full_set();
        for g in objs {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// B′: the objects having every attribute in `attrs`.
    pub fn derive_objects(&self, attrs: &AttrSet) -> ObjSet {
        ObjSet::from_indices(
            self.objects.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, row)| attrs.is_subset(row))
                .map(|(g, _)| g),
        )
    }

    /// B″, computed in one pass over the rows.
    pub fn intent_closure(&self, attrs: &AttrSet) -> AttrSet {
        let mut out = self.universe.full_set();
        for row in &self.rows {
            if attrs.is_subset(row) {
                out.intersect_with(row);
            }
        }
        out
    }

    /// A″ for a set of objects.
    pub fn extent_closure(&self, objs: &ObjSet) -> ObjSet {
        self.derive_objects(&self.derive_attributes(objs))
    }

    pub fn is_intent(&self, attrs: &AttrSet) -> bool {
        self.intent_closure(attrs) == *attrs
    }

    /// Whether the implication is valid in this context.
    pub fn holds(&self, imp: &Implication) -> bool {
        imp.conclusion.is_subset(&self.intent_closure(&imp.premise))
    }

    /// The first object (in declaration order) that has the premise but not the
    /// whole conclusion.
    pub fn first_witness(&self, imp: &Implication) -> Option<usize> {
        self.rows
            .iter()
            .position(|row| imp.premise.is_subset(row) && !imp.conclusion.is_subset(row))
    }
}
