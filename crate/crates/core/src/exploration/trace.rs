//! JSON-lines run traces: one event object per line.
//!
//! ```text
//! {"event":"question","premise":[],"conclusion":["a","b","c"]}
//! {"event":"counterexample","positive":["a"],"negative":["b","c"]}
//! {"event":"finished","confirmed":2,"counterexamples":3}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expert::{ExpertLog, ExpertReply};
use crate::implication::Implication;
use crate::partial::PartialObjectDescription;
use crate::universe::AttributeUniverse;

use super::Explorer;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case", deny_unknown_fields)]
pub enum TraceEvent {
    Question {
        premise: Vec<String>,
        conclusion: Vec<String>,
    },
    Confirm,
    Counterexample {
        positive: Vec<String>,
        negative: Vec<String>,
    },
    Finished {
        confirmed: usize,
        counterexamples: usize,
    },
}

impl TraceEvent {
    pub fn question(universe: &AttributeUniverse, q: &Implication) -> Self {
        TraceEvent::Question {
            premise: universe.names_of(&q.premise),
            conclusion: universe.names_of(&q.conclusion),
        }
    }

    pub fn answer(universe: &AttributeUniverse, reply: &ExpertReply) -> Self {
        match reply.description() {
            None => TraceEvent::Confirm,
            Some(pod) => TraceEvent::Counterexample {
                positive: universe.names_of(pod.positive()),
                negative: universe.names_of(pod.negative()),
            },
        }
    }

    /// Decodes an answer event. Counterexamples always come back as
    /// partial descriptions; the classical explorer accepts full ones.
    pub fn to_reply(&self, universe: &AttributeUniverse) -> Result<Option<ExpertReply>> {
        Ok(match self {
            TraceEvent::Confirm => Some(ExpertReply::Confirm),
            TraceEvent::Counterexample { positive, negative } => {
                Some(ExpertReply::PartialCounterexample(PartialObjectDescription::new(
                    universe.set(positive)?,
                    universe.set(negative)?,
                )?))
            }
            _ => None,
        })
    }
}

/// Question/answer event pairs for every log entry, in order.
pub fn events_from_log(universe: &AttributeUniverse, log: &ExpertLog) -> Vec<TraceEvent> {
    log.entries()
        .iter()
        .flat_map(|e| {
            [
                TraceEvent::question(universe, &e.question),
                TraceEvent::answer(universe, &e.reply),
            ]
        })
        .collect()
}

pub fn write_trace(events: &[TraceEvent]) -> String {
    let mut out = String::new();
    for e in events {
        out.push_str(&serde_json::to_string(e).expect("trace events serialize"));
        out.push('\n');
    }
    out
}

/// Parses a JSON-lines trace. Blank lines are skipped; errors carry the
/// 1-based line number.
pub fn parse_trace(text: &str) -> Result<Vec<TraceEvent>> {
    let mut events = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let event = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: k + 1,
            message: e.to_string(),
        })?;
        events.push(event);
    }
    Ok(events)
}

/// Drives `explorer` through `events`. Every question event must match the
/// question the explorer asks at that point, and a `finished` event must
/// come when no question is left.
pub fn replay<X: Explorer + ?Sized>(explorer: &mut X, events: &[TraceEvent]) -> Result<()> {
    let universe = explorer.universe().clone();
    for (k, event) in events.iter().enumerate() {
        let fail = |msg: String| Error::Precondition(format!("event {}: {msg}", k + 1));
        match event {
            TraceEvent::Question { .. } => {
                let expected = explorer
                    .next_question()
                    .map(|q| TraceEvent::question(&universe, &q));
                if expected.as_ref() != Some(event) {
                    return Err(fail(format!("recorded {event:?}, recomputed {expected:?}")));
                }
            }
            TraceEvent::Finished { .. } => {
                if let Some(q) = explorer.next_question() {
                    return Err(fail(format!(
                        "trace says finished, but {} is still open",
                        q.display(&universe)
                    )));
                }
            }
            answer => {
                if explorer.next_question().is_none() {
                    return Err(fail("answer after the run finished".into()));
                }
                let reply = answer.to_reply(&universe)?.expect("answer event");
                explorer.apply_answer(reply)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::ClosureOperator;
    use crate::exploration::{ExplorationState, Strategy};
    use crate::universe::AttributeUniverse;

    #[test]
    fn events_round_trip_through_text() {
        let events = vec![
            TraceEvent::Question {
                premise: vec![],
                conclusion: vec!["a".into()],
            },
            TraceEvent::Counterexample {
                positive: vec![],
                negative: vec!["a".into()],
            },
            TraceEvent::Finished {
                confirmed: 0,
                counterexamples: 1,
            },
        ];
        let text = write_trace(&events);
        assert_eq!(
            text.lines().next().unwrap(),
            r#"{"event":"question","premise":[],"conclusion":["a"]}"#
        );
        assert_eq!(parse_trace(&text).unwrap(), events);
        assert!(matches!(
            parse_trace("{\"event\":\"confirm\"}\n{oops"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn replay_rejects_a_wrong_question() {
        let u = AttributeUniverse::new(["a"]).unwrap();
        let mut st = ExplorationState::new(
            ClosureOperator::identity(u.clone()),
            ClosureOperator::top(u.clone()),
            Strategy::Minimal,
        )
        .unwrap();
        let bad = [TraceEvent::Question {
            premise: vec!["a".into()],
            conclusion: vec!["a".into()],
        }];
        assert!(replay(&mut st, &bad).is_err());
        let good = [
            TraceEvent::Question {
                premise: vec![],
                conclusion: vec!["a".into()],
            },
            TraceEvent::Confirm,
            TraceEvent::Finished {
                confirmed: 1,
                counterexamples: 0,
            },
        ];
        let mut st2 = st.clone();
        replay(&mut st2, &good).unwrap();
        assert_eq!(st2.confirmed().len(), 1);
    }
}
