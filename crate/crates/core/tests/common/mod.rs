//! Test helpers: random instances and brute-force oracles that work on raw
//! `u64` masks, independent of the library's closure code.
#![allow(dead_code)]

use attrex::{
    AttrSet, AttributeUniverse, ClosureOperator, FormalContext, Implication, ImplicationSet,
    Universe,
};
use proptest::prelude::*;

pub const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

pub fn universe(n: usize) -> Universe {
    AttributeUniverse::new(NAMES[..n].iter().copied()).unwrap()
}

pub fn set(u: &Universe, mask: u64) -> AttrSet {
    AttrSet::from_mask(u.len(), mask)
}

pub fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

pub fn context(u: &Universe, rows: &[u64]) -> FormalContext {
    FormalContext::new(
        u.clone(),
        rows.iter().enumerate().map(|(k, &r)| (format!("g{}", k + 1), set(u, r & full_mask(u.len())))),
    )
    .unwrap()
}

pub fn implications(u: &Universe, pairs: &[(u64, u64)]) -> ImplicationSet {
    let full = full_mask(u.len());
    ImplicationSet::from_implications(
        u.clone(),
        pairs
            .iter()
            .map(|&(p, c)| Implication::new(set(u, p & full), set(u, c & full))),
    )
    .unwrap()
}

/// `B''` over masks.
pub fn naive_intent(n: usize, rows: &[u64], b: u64) -> u64 {
    rows.iter()
        .filter(|&&r| r & b == b)
        .fold(full_mask(n), |acc, &r| acc & r)
}

/// Repeats `A ↦ A ∪ ⋃{Y | X ⊆ A}` until nothing changes.
pub fn naive_lclosure(pairs: &[(u64, u64)], a: u64) -> u64 {
    let mut cur = a;
    loop {
        let next = pairs
            .iter()
            .filter(|(x, _)| x & cur == *x)
            .fold(cur, |acc, (_, y)| acc | y);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Pseudoclosed sets of a closure given as a mask function, straight from
/// the recursive definition, optionally restricted to sets closed under `base`.
pub fn naive_pseudoclosed(
    n: usize,
    close: impl Fn(u64) -> u64,
    base: Option<&dyn Fn(u64) -> u64>,
) -> Vec<u64> {
    let mut all: Vec<u64> = (0..1u64 << n).collect();
    all.sort_by_key(|x| (x.count_ones(), *x));
    let mut found: Vec<u64> = Vec::new();
    for p in all {
        if base.is_some_and(|b| b(p) != p) || close(p) == p {
            continue;
        }
        if found
            .iter()
            .filter(|&&q| q & p == q && q != p)
            .all(|&q| close(q) & p == close(q))
        {
            found.push(p);
        }
    }
    found
}

pub fn closure_table(c: &ClosureOperator) -> Vec<u64> {
    let n = c.universe().len();
    (0..1u64 << n)
        .map(|x| c.close(&AttrSet::from_mask(n, x)).to_mask())
        .collect()
}

pub fn masks(family: &[AttrSet]) -> Vec<u64> {
    let mut v: Vec<u64> = family.iter().map(AttrSet::to_mask).collect();
    v.sort_by_key(|x| (x.count_ones(), *x));
    v
}

/// `(|M|, rows)` with up to `max_objects` rows.
pub fn arb_context(max_attrs: usize, max_objects: usize) -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1..=max_attrs).prop_flat_map(move |n| {
        (
            Just(n),
            prop::collection::vec(0..(1u64 << n), 0..=max_objects),
        )
    })
}

/// `(|M|, premise/conclusion pairs)`; premises are kept small so that rules fire.
pub fn arb_implications(max_attrs: usize, max_rules: usize) -> impl Strategy<Value = (usize, Vec<(u64, u64)>)> {
    (1..=max_attrs).prop_flat_map(move |n| {
        let sparse = prop::collection::vec(0..n, 0..=2)
            .prop_map(|ix| ix.into_iter().fold(0u64, |m, i| m | 1 << i));
        (
            Just(n),
            prop::collection::vec((sparse, 0..(1u64 << n)), 0..=max_rules),
        )
    })
}

/// A partial context as `(positive, negative)` mask pairs, made disjoint.
pub fn arb_partial(n: usize, max_descriptions: usize) -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((0..(1u64 << n), 0..(1u64 << n)), 0..=max_descriptions)
        .prop_map(|v| v.into_iter().map(|(c, d)| (c, d & !c)).collect())
}

pub mod verify;
