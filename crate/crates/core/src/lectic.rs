//! Lectic order on subsets of M and Next-Closure enumeration.
//!
//! `A ≺ B` iff the smallest attribute on which A and B differ belongs to B.
//! Next-Closure walks the closed sets of any closure operator in strictly
//! ascending lectic order.

use std::cmp::Ordering;

use crate::closure::ClosureOperator;
use crate::set::AttrSet;

/// Lectic comparison. Both sets must come from the same universe.
pub fn lectic_cmp(a: &AttrSet, b: &AttrSet) -> Ordering {
    match (a ^ b).min() {
        None => Ordering::Equal,
        Some(i) if b.contains(i) => Ordering::Less,
        Some(_) => Ordering::Greater,
    }
}

/// `A ≺_i B`: A and B agree below `i`, and `i ∈ B \ A`.
pub fn lectic_less_at(a: &AttrSet, b: &AttrSet, i: usize) -> bool {
    b.contains(i) && !a.contains(i) && a.agrees_below(b, i)
}

/// The lectically smallest set closed under `close` that is strictly greater
/// than `a`, or `None` if there is none.
///
/// `a` need not be closed. Candidates `close((A ∩ {j < i}) ∪ {i})` are tried
/// for `i` from the largest attribute down; the first one that adds nothing
/// below `i` is the answer.
pub fn next_closed_with<F>(width: usize, close: F, a: &AttrSet) -> Option<AttrSet>
where
    F: Fn(&AttrSet) -> AttrSet,
{
    for i in (0..width).rev() {
        if a.contains(i) {
            continue;
        }
        let candidate = close(&a.below(i).with(i));
        if candidate.agrees_below(a, i) {
            return Some(candidate);
        }
    }
    None
}

pub fn next_closed(c: &ClosureOperator, a: &AttrSet) -> Option<AttrSet> {
    next_closed_with(c.universe().len(), |x| c.close(x), a)
}

/// Iterator over the closed sets of an operator in lectic order, starting at
/// `c(∅)`.
pub struct ClosedSets<'a> {
    op: &'a ClosureOperator,
    next: Option<AttrSet>,
}

impl Iterator for ClosedSets<'_> {
    type Item = AttrSet;

    fn next(&mut self) -> Option<AttrSet> {
        let current = self.next.take()?;
        self.next = next_closed(self.op, &current);
        Some(current)
    }
}

pub fn enumerate_closed(c: &ClosureOperator) -> ClosedSets<'_> {
    ClosedSets {
        op: c,
        next: Some(c.close(&c.universe().empty_set())),
    }
}
