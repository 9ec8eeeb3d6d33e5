//! Partial contexts: collections of anonymous partial object descriptions.

use crate::closure::ClosureOperator;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::implication::Implication;
use crate::set::AttrSet;
use crate::universe::{AttributeUniverse, Universe};

/// `(C, D)`: attributes an object definitely has and definitely lacks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialObjectDescription {
    positive: AttrSet,
    negative: AttrSet,
}

impl PartialObjectDescription {
    pub fn new(positive: AttrSet, negative: AttrSet) -> Result<Self> {
        if positive.width() != negative.width() {
            return Err(Error::UniverseMismatch {
                expected: positive.width(),
                found: negative.width(),
            });
        }
        let overlap = &positive & &negative;
        if !overlap.is_empty() {
            return Err(Error::Overlap(format!("{overlap:?}")));
        }
        Ok(PartialObjectDescription { positive, negative })
    }

    /// The full description `(row, M \ row)` of an object.
    pub fn full(row: AttrSet) -> Self {
        let negative = row.complement();
        PartialObjectDescription {
            positive: row,
            negative,
        }
    }

    pub fn positive(&self) -> &AttrSet {
        &self.positive
    }

    pub fn negative(&self) -> &AttrSet {
        &self.negative
    }

    pub fn is_full(&self) -> bool {
        (&self.positive | &self.negative).is_full()
    }

    /// `premise ⊆ C` and `conclusion ∩ D ≠ ∅`.
    pub fn refutes(&self, imp: &Implication) -> bool {
        imp.premise.is_subset(&self.positive) && imp.conclusion.intersects(&self.negative)
    }
}

/// A set of partial object descriptions over one universe. Duplicates are
/// collapsed; insertion order is kept for stable output.
#[derive(Debug, Clone)]
pub struct PartialContext {
    universe: Universe,
    descriptions: Vec<PartialObjectDescription>,
}

impl PartialContext {
    pub fn new(universe: Universe) -> Self {
        PartialContext {
            universe,
            descriptions: Vec::new(),
        }
    }

    pub fn from_descriptions<I>(universe: Universe, descriptions: I) -> Result<Self>
    where
        I: IntoIterator<Item = PartialObjectDescription>,
    {
        let mut pctx = Self::new(universe);
        for pod in descriptions {
            pctx.insert(pod)?;
        }
        Ok(pctx)
    }

    /// Full descriptions of every object of a formal context.
    pub fn from_context(ctx: &FormalContext) -> Self {
        let mut pctx = Self::new(ctx.universe().clone());
        for row in ctx.rows() {
            let pod = PartialObjectDescription::full(row.clone());
            if !pctx.descriptions.contains(&pod) {
                pctx.descriptions.push(pod);
            }
        }
        pctx
    }

    fn insert(&mut self, pod: PartialObjectDescription) -> Result<()> {
        self.universe.check(&pod.positive)?;
        if !self.descriptions.contains(&pod) {
            self.descriptions.push(pod);
        }
        Ok(())
    }

    /// Returns a copy extended by `pod`; adding a present description is a no-op.
    pub fn add_description(&self, pod: PartialObjectDescription) -> Result<Self> {
        let mut next = self.clone();
        next.insert(pod)?;
        Ok(next)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn descriptions(&self) -> &[PartialObjectDescription] {
        &self.descriptions
    }

    pub fn len(&self) -> usize {
        self.descriptions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.descriptions.is_empty()
    }

    pub fn refutes(&self, imp: &Implication) -> bool {
        self.descriptions.iter().any(|pod| pod.refutes(imp))
    }

    /// The largest B such that `attrs → B` is not refuted:
    /// M minus every D whose C contains `attrs`.
    pub fn consistent_closure(&self, attrs: &AttrSet) -> AttrSet {
        let mut out = self.universe.full_set();
        for pod in &self.descriptions {
            if attrs.is_subset(&pod.positive) {
                out.difference_with(&pod.negative);
            }
        }
        out
    }

    /// Closes every description's positive part under `c_cert` and grows the
    /// negative part by each attribute that would force a known-absent one.
    ///
    /// Fails when some `c_cert(C)` meets `D`, which can only happen if the
    /// expert contradicted its own confirmations.
    pub fn normalize(&self, c_cert: &ClosureOperator) -> Result<Self> {
        self.universe.check_same(c_cert.universe())?;
        let mut out = Self::new(self.universe.clone());
        for (k, pod) in self.descriptions.iter().enumerate() {
            let closed = c_cert.close(&pod.positive);
            let clash = &closed & &pod.negative;
            if !clash.is_empty() {
                return Err(Error::Inconsistent(format!(
                    "description #{k} ({} | {}) closes to {}, which contains excluded {}",
                    self.universe.display(&pod.positive),
                    self.universe.display(&pod.negative),
                    self.universe.display(&closed),
                    self.universe.display(&clash),
                )));
            }
            let mut negative = pod.negative.clone();
            for m in 0..self.universe.len() {
                if !pod.negative.contains(m)
                    && c_cert.close(&pod.positive.clone().with(m)).intersects(&pod.negative)
                {
                    negative.insert(m);
                }
            }
            out.insert(PartialObjectDescription {
                positive: closed,
                negative,
            })?;
        }
        Ok(out)
    }

    /// The formal context whose objects are the descriptions and whose
    /// incidence is membership in the positive part.
    pub fn positive_context(&self) -> FormalContext {
        FormalContext::new(
            self.universe.clone(),
            self.descriptions
                .iter()
                .enumerate()
                .map(|(k, pod)| (format!("o{}", k + 1), pod.positive.clone())),
        )
        .expect("generated object names are distinct")
    }

    pub fn display_description<'a>(
        universe: &'a AttributeUniverse,
        pod: &'a PartialObjectDescription,
    ) -> String {
        format!(
            "({} | {})",
            universe.display(&pod.positive),
            universe.display(&pod.negative)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::implication::ImplicationSet;
    use crate::set::powerset;
    use crate::universe::AttributeUniverse;

    fn universe() -> Universe {
        AttributeUniverse::new(["a", "b", "c"]).unwrap()
    }

    fn pod(u: &Universe, c: &[&str], d: &[&str]) -> PartialObjectDescription {
        PartialObjectDescription::new(u.set(c).unwrap(), u.set(d).unwrap()).unwrap()
    }

    fn p0(u: &Universe) -> PartialContext {
        PartialContext::from_descriptions(u.clone(), [pod(u, &["a"], &["c"])]).unwrap()
    }

    fn imp(u: &Universe, p: &[&str], c: &[&str]) -> Implication {
        Implication::new(u.set(p).unwrap(), u.set(c).unwrap())
    }

    #[test]
    fn refutation_examples() {
        let u = universe();
        let p = p0(&u);
        assert!(p.refutes(&imp(&u, &["a"], &["c"])));
        assert!(!p.refutes(&imp(&u, &["a"], &["b"])));
        assert!(!p.refutes(&imp(&u, &["a", "b"], &["c"])));
    }

    #[test]
    fn consistent_closure_examples() {
        let u = universe();
        let p = p0(&u);
        assert_eq!(u.names_of(&p.consistent_closure(&u.set(["a"]).unwrap())), ["a", "b"]);
        assert_eq!(
            u.names_of(&p.consistent_closure(&u.set(["b"]).unwrap())),
            ["a", "b", "c"]
        );
        let empty = PartialContext::new(u.clone());
        for x in powerset(3) {
            assert!(empty.consistent_closure(&x).is_full());
        }
    }

    #[test]
    fn add_description_examples() {
        let u = universe();
        let p = PartialContext::new(u.clone())
            .add_description(pod(&u, &["a"], &["c"]))
            .unwrap();
        assert_eq!(p.descriptions(), p0(&u).descriptions());
        let again = p.add_description(pod(&u, &["a"], &["c"])).unwrap();
        assert_eq!(again.len(), 1);
        assert!(matches!(
            PartialObjectDescription::new(u.set(["a"]).unwrap(), u.set(["a"]).unwrap()),
            Err(Error::Overlap(_))
        ));
    }

    #[test]
    fn normalize_examples() {
        let u = universe();
        let p = p0(&u);
        let rules = |items: &[(&[&str], &[&str])]| {
            ClosureOperator::from_implications(
                ImplicationSet::from_implications(
                    u.clone(),
                    items.iter().map(|(a, b)| imp(&u, a, b)),
                )
                .unwrap(),
            )
        };

        let n = p.normalize(&rules(&[(&["b"], &["c"])])).unwrap();
        assert_eq!(n.descriptions(), [pod(&u, &["a"], &["b", "c"])]);

        let n = p.normalize(&rules(&[(&["a"], &["b"])])).unwrap();
        assert_eq!(n.descriptions(), [pod(&u, &["a", "b"], &["c"])]);

        let n = p.normalize(&ClosureOperator::identity(u.clone())).unwrap();
        assert_eq!(n.descriptions(), p.descriptions());
    }

    #[test]
    fn normalize_reports_broken_expert() {
        let u = universe();
        let c = ClosureOperator::from_implications(
            ImplicationSet::from_implications(u.clone(), [imp(&u, &["a"], &["c"])]).unwrap(),
        );
        assert!(matches!(p0(&u).normalize(&c), Err(Error::Inconsistent(_))));
    }
}
