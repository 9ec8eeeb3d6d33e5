use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::set::AttrSet;

/// The finite attribute set M together with its total order.
///
/// Position in the declaration list is the order: index 0 is the smallest
/// attribute. Shared between contexts, implication sets and operators via
/// [`Universe`].
#[derive(Debug)]
pub struct AttributeUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub type Universe = Arc<AttributeUniverse>;

impl AttributeUniverse {
    pub fn new<I, S>(names: I) -> Result<Universe>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyName);
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(Arc::new(AttributeUniverse { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAttribute(name.to_owned()))
    }

    pub fn empty_set(&self) -> AttrSet {
        AttrSet::empty(self.len())
    }

    pub fn full_set(&self) -> AttrSet {
        AttrSet::full(self.len())
    }

    /// Resolves attribute names to a set.
    pub fn set<I, S>(&self, names: I) -> Result<AttrSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = self.empty_set();
        for name in names {
            set.insert(self.index_of(name.as_ref())?);
        }
        Ok(set)
    }

    /// Member names in attribute order.
    pub fn names_of(&self, set: &AttrSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    /// `{a, b}` style rendering of a set.
    pub fn display<'a>(&'a self, set: &'a AttrSet) -> DisplaySet<'a> {
        DisplaySet {
            universe: self,
            set,
        }
    }

    pub fn check(&self, set: &AttrSet) -> Result<()> {
        if set.width() != self.len() {
            return Err(Error::UniverseMismatch {
                expected: self.len(),
                found: set.width(),
            });
        }
        Ok(())
    }

    pub fn same_as(&self, other: &AttributeUniverse) -> bool {
        std::ptr::eq(self, other) || self.names == other.names
    }

    pub(crate) fn check_same(&self, other: &AttributeUniverse) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: self.len(),
                found: other.len(),
            })
        }
    }
}

impl PartialEq for AttributeUniverse {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

pub struct DisplaySet<'a> {
    universe: &'a AttributeUniverse,
    set: &'a AttrSet,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.set.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(self.universe.name(i))?;
        }
        f.write_str("}")
    }
}
