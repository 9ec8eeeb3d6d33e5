//! JSON documents for implication lists and partial contexts. Attribute
//! names are resolved against a universe supplied by the caller.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::implication::{Implication, ImplicationSet};
use crate::partial::{PartialContext, PartialObjectDescription};
use crate::universe::{AttributeUniverse, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImplicationRecord {
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptionRecord {
    pub positive: Vec<String>,
    pub negative: Vec<String>,
}

impl ImplicationRecord {
    pub fn from_implication(universe: &AttributeUniverse, imp: &Implication) -> Self {
        ImplicationRecord {
            premise: universe.names_of(&imp.premise),
            conclusion: universe.names_of(&imp.conclusion),
        }
    }

    pub fn resolve(&self, universe: &AttributeUniverse) -> Result<Implication> {
        Ok(Implication::new(
            universe.set(&self.premise)?,
            universe.set(&self.conclusion)?,
        ))
    }
}

impl DescriptionRecord {
    pub fn from_description(universe: &AttributeUniverse, pod: &PartialObjectDescription) -> Self {
        DescriptionRecord {
            positive: universe.names_of(pod.positive()),
            negative: universe.names_of(pod.negative()),
        }
    }

    pub fn resolve(&self, universe: &AttributeUniverse) -> Result<PartialObjectDescription> {
        PartialObjectDescription::new(universe.set(&self.positive)?, universe.set(&self.negative)?)
    }
}

pub fn implication_records(ls: &ImplicationSet) -> Vec<ImplicationRecord> {
    ls.iter()
        .map(|imp| ImplicationRecord::from_implication(ls.universe(), imp))
        .collect()
}

pub fn implications_from_records(universe: &Universe, records: &[ImplicationRecord]) -> Result<ImplicationSet> {
    let items = records
        .iter()
        .map(|r| r.resolve(universe))
        .collect::<Result<Vec<_>>>()?;
    ImplicationSet::from_implications(universe.clone(), items)
}

pub fn parse_implications(universe: &Universe, text: &str) -> Result<ImplicationSet> {
    let records: Vec<ImplicationRecord> = serde_json::from_str(text)?;
    implications_from_records(universe, &records)
}

pub fn write_implications(ls: &ImplicationSet) -> String {
    serde_json::to_string_pretty(&implication_records(ls)).expect("records serialize")
}

pub fn description_records(pctx: &PartialContext) -> Vec<DescriptionRecord> {
    pctx.descriptions()
        .iter()
        .map(|pod| DescriptionRecord::from_description(pctx.universe(), pod))
        .collect()
}

pub fn partial_context_from_records(universe: &Universe, records: &[DescriptionRecord]) -> Result<PartialContext> {
    let items = records
        .iter()
        .map(|r| r.resolve(universe))
        .collect::<Result<Vec<_>>>()?;
    PartialContext::from_descriptions(universe.clone(), items)
}

pub fn parse_partial_context(universe: &Universe, text: &str) -> Result<PartialContext> {
    let records: Vec<DescriptionRecord> = serde_json::from_str(text)?;
    partial_context_from_records(universe, &records)
}

pub fn write_partial_context(pctx: &PartialContext) -> String {
    serde_json::to_string_pretty(&description_records(pctx)).expect("records serialize")
}
