//! Session configuration and its validation into engine inputs.

use attrex::io::{DescriptionRecord, ImplicationRecord};
use attrex::{
    AttributeUniverse, ClosureOperator, FormalContext, ImplicationSet, PartialContext,
    PartialObjectDescription, Strategy, Universe,
};
use serde::{Deserialize, Serialize};

use crate::error::{FieldError, Result, ServiceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Classical,
    #[default]
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectRecord {
    pub name: String,
    pub attributes: Vec<String>,
}

/// Examples known before the session starts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PriorExamples {
    Context { objects: Vec<ObjectRecord> },
    Partial { descriptions: Vec<DescriptionRecord> },
}

impl PriorExamples {
    pub fn from_context(ctx: &FormalContext) -> Self {
        PriorExamples::Context {
            objects: ctx
                .objects()
                .iter()
                .zip(ctx.rows())
                .map(|(name, row)| ObjectRecord {
                    name: name.clone(),
                    attributes: ctx.universe().names_of(row),
                })
                .collect(),
        }
    }

    pub fn from_partial(pctx: &PartialContext) -> Self {
        PriorExamples::Partial {
            descriptions: attrex::io::description_records(pctx),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub universe: Vec<String>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub strategy: Strategy,
    #[serde(default)]
    pub background: Vec<ImplicationRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior_examples: Option<PriorExamples>,
    #[serde(default)]
    pub label: String,
}

impl SessionConfig {
    pub fn new(universe: &AttributeUniverse) -> Self {
        SessionConfig {
            universe: universe.names().to_vec(),
            mode: Mode::default(),
            strategy: Strategy::default(),
            background: Vec::new(),
            prior_examples: None,
            label: String::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Examples {
    Context(FormalContext),
    Partial(PartialContext),
}

/// A configuration resolved against its universe.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub universe: Universe,
    pub background: ImplicationSet,
    pub examples: Option<Examples>,
}

fn has_line_break(s: &str) -> bool {
    s.contains(['\n', '\r'])
}

/// Resolves every name and collects all problems instead of stopping at
/// the first one.
pub fn prepare(config: &SessionConfig) -> Result<Prepared> {
    let mut errors = Vec::new();
    for (k, name) in config.universe.iter().enumerate() {
        if has_line_break(name) {
            errors.push(FieldError::new(format!("universe[{k}]"), "contains a line break"));
        }
    }
    let universe = match AttributeUniverse::new(config.universe.iter().cloned()) {
        Ok(u) if errors.is_empty() => u,
        Ok(_) => return Err(ServiceError::InvalidConfig(errors)),
        Err(e) => {
            errors.push(FieldError::new("universe", e.to_string()));
            return Err(ServiceError::InvalidConfig(errors));
        }
    };

    let mut background = ImplicationSet::new(universe.clone());
    for (k, rec) in config.background.iter().enumerate() {
        let premise = universe.set(&rec.premise);
        let conclusion = universe.set(&rec.conclusion);
        if let Err(e) = &premise {
            errors.push(FieldError::new(format!("background[{k}].premise"), e.to_string()));
        }
        if let Err(e) = &conclusion {
            errors.push(FieldError::new(format!("background[{k}].conclusion"), e.to_string()));
        }
        if let (Ok(p), Ok(c)) = (premise, conclusion) {
            background
                .push(attrex::Implication::new(p, c))
                .expect("same universe");
        }
    }

    let examples = match &config.prior_examples {
        None => None,
        Some(PriorExamples::Context { objects }) => {
            let mut rows = Vec::new();
            for (k, obj) in objects.iter().enumerate() {
                let field = format!("prior_examples.objects[{k}]");
                if obj.name.is_empty() || has_line_break(&obj.name) {
                    errors.push(FieldError::new(
                        format!("{field}.name"),
                        "object names must be non-empty single lines",
                    ));
                }
                match universe.set(&obj.attributes) {
                    Ok(row) => rows.push((obj.name.clone(), row)),
                    Err(e) => errors.push(FieldError::new(format!("{field}.attributes"), e.to_string())),
                }
            }
            match FormalContext::new(universe.clone(), rows) {
                Ok(ctx) => Some(Examples::Context(ctx)),
                Err(e) => {
                    errors.push(FieldError::new("prior_examples.objects", e.to_string()));
                    None
                }
            }
        }
        Some(PriorExamples::Partial { descriptions }) => {
            let mut pods = Vec::new();
            for (k, rec) in descriptions.iter().enumerate() {
                let field = format!("prior_examples.descriptions[{k}]");
                let pos = universe.set(&rec.positive);
                let neg = universe.set(&rec.negative);
                if let Err(e) = &pos {
                    errors.push(FieldError::new(format!("{field}.positive"), e.to_string()));
                }
                if let Err(e) = &neg {
                    errors.push(FieldError::new(format!("{field}.negative"), e.to_string()));
                }
                if let (Ok(p), Ok(n)) = (pos, neg) {
                    match PartialObjectDescription::new(p, n) {
                        Ok(pod) => pods.push(pod),
                        Err(e) => errors.push(FieldError::new(field, e.to_string())),
                    }
                }
            }
            Some(Examples::Partial(
                PartialContext::from_descriptions(universe.clone(), pods).expect("same universe"),
            ))
        }
    };

    if config.mode == Mode::Classical {
        if config.strategy != Strategy::Minimal {
            errors.push(FieldError::new(
                "strategy",
                "classical sessions always ask in lectic order; use `minimal`",
            ));
        }
        if matches!(examples, Some(Examples::Partial(_))) {
            errors.push(FieldError::new(
                "prior_examples",
                "classical sessions need a formal context, not partial descriptions",
            ));
        }
    }

    // Examples must not contradict the background, or certain knowledge
    // would exceed what the examples allow.
    if errors.is_empty() {
        let cert = ClosureOperator::from_implications(background.clone());
        match &examples {
            Some(Examples::Context(ctx)) => {
                for (k, row) in ctx.rows().iter().enumerate() {
                    if let Some(imp) = background.iter().find(|imp| !imp.respected_by(row)) {
                        errors.push(FieldError::new(
                            format!("prior_examples.objects[{k}]"),
                            format!("violates background implication {}", imp.display(&universe)),
                        ));
                    }
                }
            }
            Some(Examples::Partial(pctx)) => {
                for (k, pod) in pctx.descriptions().iter().enumerate() {
                    let clash = &cert.close(pod.positive()) & pod.negative();
                    if !clash.is_empty() {
                        errors.push(FieldError::new(
                            format!("prior_examples.descriptions[{k}]"),
                            format!(
                                "the background implies {}, which is marked absent",
                                universe.display(&clash)
                            ),
                        ));
                    }
                }
            }
            None => {}
        }
    }

    if errors.is_empty() {
        Ok(Prepared {
            universe,
            background,
            examples,
        })
    } else {
        Err(ServiceError::InvalidConfig(errors))
    }
}
