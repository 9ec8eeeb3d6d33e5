//! One exploration run driven by answers from outside, with its event log.

use attrex::exploration::write_trace;
use attrex::io::{implication_records, serialize_cxt, ImplicationRecord};
use attrex::{
    ClassicalExplorer, ClosureOperator, Error, ExplorationState, ExpertLog, ExpertReply,
    FormalContext, Implication, ImplicationSet, PartialObjectDescription, Rejection, Strategy,
    TraceEvent, Universe,
};
use serde::{Deserialize, Serialize};

use crate::config::{prepare, Examples, Mode, SessionConfig};
use crate::error::{Result, ServiceError};

#[derive(Debug, Clone)]
enum Engine {
    General(ExplorationState),
    Classical(ClassicalExplorer),
}

impl Engine {
    fn pending(&self) -> Option<&Implication> {
        match self {
            Engine::General(s) => s.pending(),
            Engine::Classical(c) => c.pending(),
        }
    }

    fn next_question(&mut self) -> Option<Implication> {
        match self {
            Engine::General(s) => s.next_question(),
            Engine::Classical(c) => c.next_question(),
        }
    }

    fn apply(&mut self, reply: ExpertReply) -> attrex::Result<()> {
        match self {
            Engine::General(s) => s.apply_answer(reply),
            Engine::Classical(c) => c.apply_answer(reply),
        }
    }

    fn log(&self) -> &ExpertLog {
        match self {
            Engine::General(s) => s.log(),
            Engine::Classical(c) => c.log(),
        }
    }

    fn confirmed(&self) -> &ImplicationSet {
        match self {
            Engine::General(s) => s.confirmed(),
            Engine::Classical(c) => c.confirmed(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    AwaitingAnswer,
    Finished,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerKind {
    Confirm,
    Counterexample,
}

/// An answer as submitted over HTTP. `seq`, when given, must equal the
/// number of answers already accepted; a repeated submission then fails
/// instead of answering the next question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Answer {
    #[serde(rename = "type")]
    pub kind: AnswerKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub positive: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub negative: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seq: Option<usize>,
}

impl Answer {
    pub fn confirm() -> Self {
        Answer {
            kind: AnswerKind::Confirm,
            positive: Vec::new(),
            negative: Vec::new(),
            seq: None,
        }
    }

    pub fn counterexample(positive: Vec<String>, negative: Vec<String>) -> Self {
        Answer {
            kind: AnswerKind::Counterexample,
            positive,
            negative,
            seq: None,
        }
    }

    pub fn from_reply(universe: &Universe, reply: &ExpertReply) -> Self {
        match reply.description() {
            None => Answer::confirm(),
            Some(pod) => Answer::counterexample(universe.names_of(pod.positive()), universe.names_of(pod.negative())),
        }
    }

    pub fn with_seq(mut self, seq: usize) -> Self {
        self.seq = Some(seq);
        self
    }

    fn to_reply(&self, universe: &Universe) -> Result<ExpertReply> {
        match self.kind {
            AnswerKind::Confirm => {
                if !self.positive.is_empty() || !self.negative.is_empty() {
                    return Err(ServiceError::InvalidAnswer(
                        "a confirmation carries no attributes".into(),
                    ));
                }
                Ok(ExpertReply::Confirm)
            }
            AnswerKind::Counterexample => {
                let resolve = |names: &[String]| {
                    universe
                        .set(names)
                        .map_err(|e| ServiceError::InvalidAnswer(e.to_string()))
                };
                let positive = resolve(&self.positive)?;
                let negative = resolve(&self.negative)?;
                let overlap = &positive & &negative;
                if !overlap.is_empty() {
                    return Err(ServiceError::Rejected(Rejection::Overlap(universe.names_of(&overlap))));
                }
                let pod = PartialObjectDescription::new(positive, negative).expect("checked disjoint");
                Ok(ExpertReply::PartialCounterexample(pod))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progress {
    pub confirmed: usize,
    pub counterexamples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    /// Background followed by the confirmed implications.
    pub base: Vec<ImplicationRecord>,
    pub interactions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionView {
    pub id: String,
    pub status: Status,
    pub seq: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub question: Option<ImplicationRecord>,
    pub progress: Progress,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleView {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub positive: Vec<String>,
    pub negative: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateView {
    pub id: String,
    pub label: String,
    pub mode: Mode,
    pub strategy: Strategy,
    pub status: Status,
    pub seq: usize,
    pub universe: Vec<String>,
    pub question: Option<ImplicationRecord>,
    pub background: Vec<ImplicationRecord>,
    pub confirmed: Vec<ImplicationRecord>,
    /// Counterexamples as the engine holds them: normalized descriptions in
    /// general mode, the grown context in classical mode.
    pub examples: Vec<ExampleView>,
    pub progress: Progress,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListEntry {
    pub id: String,
    pub label: String,
    pub mode: Mode,
    pub status: Status,
    pub seq: usize,
}

/// The `json` export: everything needed to replay the session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionDocument {
    pub id: String,
    pub config: SessionConfig,
    pub events: Vec<TraceEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Cxt,
    Implications,
}

impl std::str::FromStr for ExportFormat {
    type Err = ServiceError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "cxt" => Ok(ExportFormat::Cxt),
            "implications" => Ok(ExportFormat::Implications),
            other => Err(ServiceError::UnknownFormat(other.to_owned())),
        }
    }
}

/// First line of a session log.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    event: HeaderTag,
    id: String,
    config: SessionConfig,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum HeaderTag {
    Session,
}

#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    config: SessionConfig,
    universe: Universe,
    background: ImplicationSet,
    engine: Engine,
    events: Vec<TraceEvent>,
}

impl Session {
    /// Validates `config`, builds the engine, and computes the first
    /// question.
    pub fn create(id: impl Into<String>, config: SessionConfig) -> Result<Self> {
        let prepared = prepare(&config)?;
        let universe = prepared.universe.clone();
        let engine = match config.mode {
            Mode::General => {
                let cert = ClosureOperator::from_implications(prepared.background.clone());
                let univ = match prepared.examples {
                    None => ClosureOperator::top(universe.clone()),
                    Some(Examples::Context(ctx)) => ClosureOperator::from_context(ctx),
                    Some(Examples::Partial(p)) => ClosureOperator::from_partial_context(p),
                };
                Engine::General(
                    ExplorationState::new(cert, univ, config.strategy)
                        .map_err(|e| ServiceError::Internal(e.to_string()))?,
                )
            }
            Mode::Classical => {
                let ctx = match prepared.examples {
                    Some(Examples::Context(ctx)) => ctx,
                    _ => FormalContext::empty(universe.clone()),
                };
                Engine::Classical(
                    ClassicalExplorer::new(ctx, prepared.background.clone())
                        .map_err(|e| ServiceError::Internal(e.to_string()))?,
                )
            }
        };
        let mut session = Session {
            id: id.into(),
            config,
            universe,
            background: prepared.background,
            engine,
            events: Vec::new(),
        };
        if let Some(done) = session.advance() {
            session.events.push(done);
        }
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn log(&self) -> &ExpertLog {
        self.engine.log()
    }

    pub fn pending(&self) -> Option<&Implication> {
        self.engine.pending()
    }

    pub fn status(&self) -> Status {
        if self.engine.pending().is_some() {
            Status::AwaitingAnswer
        } else {
            Status::Finished
        }
    }

    /// Number of accepted answers.
    pub fn seq(&self) -> usize {
        self.engine.log().len()
    }

    pub fn confirmed(&self) -> &ImplicationSet {
        self.engine.confirmed()
    }

    /// Background followed by the confirmed implications.
    pub fn base(&self) -> ImplicationSet {
        let mut base = self.background.clone();
        for imp in self.confirmed().iter() {
            base.push(imp.clone()).expect("same universe");
        }
        base
    }

    fn progress(&self) -> Progress {
        let log = self.engine.log();
        Progress {
            confirmed: log.confirmations().count(),
            counterexamples: log.counterexamples(),
        }
    }

    fn advance(&mut self) -> Option<TraceEvent> {
        if self.engine.next_question().is_some() {
            return None;
        }
        let p = self.progress();
        Some(TraceEvent::Finished {
            confirmed: p.confirmed,
            counterexamples: p.counterexamples,
        })
    }

    fn question_record(&self) -> Option<ImplicationRecord> {
        self.pending()
            .map(|q| ImplicationRecord::from_implication(&self.universe, q))
    }

    pub fn question_view(&self) -> QuestionView {
        let summary = (self.status() == Status::Finished).then(|| Summary {
            base: implication_records(&self.base()),
            interactions: self.seq(),
        });
        QuestionView {
            id: self.id.clone(),
            status: self.status(),
            seq: self.seq(),
            question: self.question_record(),
            progress: self.progress(),
            summary,
        }
    }

    pub fn state_view(&self) -> StateView {
        let u = &self.universe;
        let examples = match &self.engine {
            Engine::General(s) => s
                .working()
                .descriptions()
                .iter()
                .map(|pod| ExampleView {
                    name: None,
                    positive: u.names_of(pod.positive()),
                    negative: u.names_of(pod.negative()),
                })
                .collect(),
            Engine::Classical(c) => c
                .context()
                .objects()
                .iter()
                .zip(c.context().rows())
                .map(|(name, row)| ExampleView {
                    name: Some(name.clone()),
                    positive: u.names_of(row),
                    negative: u.names_of(&row.complement()),
                })
                .collect(),
        };
        StateView {
            id: self.id.clone(),
            label: self.config.label.clone(),
            mode: self.config.mode,
            strategy: self.config.strategy,
            status: self.status(),
            seq: self.seq(),
            universe: u.names().to_vec(),
            question: self.question_record(),
            background: implication_records(&self.background),
            confirmed: implication_records(self.confirmed()),
            examples,
            progress: self.progress(),
        }
    }

    pub fn list_entry(&self) -> ListEntry {
        ListEntry {
            id: self.id.clone(),
            label: self.config.label.clone(),
            mode: self.config.mode,
            status: self.status(),
            seq: self.seq(),
        }
    }

    /// Applies an answer to the pending question and returns the events it
    /// appends. On error nothing changes.
    pub fn answer(&mut self, answer: &Answer) -> Result<Vec<TraceEvent>> {
        if self.status() == Status::Finished {
            return Err(ServiceError::Conflict("the session is already finished".into()));
        }
        if let Some(seq) = answer.seq {
            if seq != self.seq() {
                return Err(ServiceError::Conflict(format!(
                    "stale answer: it is for question {seq}, but question {} is pending",
                    self.seq()
                )));
            }
        }
        let reply = answer.to_reply(&self.universe)?;
        self.apply(reply)
    }

    fn apply(&mut self, reply: ExpertReply) -> Result<Vec<TraceEvent>> {
        let question = self
            .pending()
            .cloned()
            .ok_or_else(|| ServiceError::Conflict("no question is pending".into()))?;
        self.engine.apply(reply.clone()).map_err(|e| match e {
            Error::Rejected(r) => ServiceError::Rejected(r),
            other => ServiceError::Internal(other.to_string()),
        })?;
        let mut new = vec![
            TraceEvent::question(&self.universe, &question),
            TraceEvent::answer(&self.universe, &reply),
        ];
        new.extend(self.advance());
        self.events.extend(new.iter().cloned());
        Ok(new)
    }

    pub fn export(&self, format: ExportFormat) -> Result<String> {
        match format {
            ExportFormat::Json => Ok(serde_json::to_string_pretty(&self.document())
                .expect("documents serialize")),
            ExportFormat::Implications => Ok(attrex::io::write_implications(&self.base())),
            ExportFormat::Cxt => {
                let ctx = match &self.engine {
                    Engine::General(s) => s.working().positive_context(),
                    Engine::Classical(c) => c.context().clone(),
                };
                serialize_cxt(&ctx).map_err(|e| ServiceError::Internal(e.to_string()))
            }
        }
    }

    pub fn document(&self) -> SessionDocument {
        SessionDocument {
            id: self.id.clone(),
            config: self.config.clone(),
            events: self.events.clone(),
        }
    }

    pub fn header_line(&self) -> String {
        let header = Header {
            event: HeaderTag::Session,
            id: self.id.clone(),
            config: self.config.clone(),
        };
        let mut line = serde_json::to_string(&header).expect("headers serialize");
        line.push('\n');
        line
    }

    /// The full session log: header line, then one line per event.
    pub fn to_log(&self) -> String {
        self.header_line() + &write_trace(&self.events)
    }

    /// Rebuilds a session from its log. Returns the session and whether the
    /// log was a strict prefix of the rebuilt one (a run cut short between
    /// writes), in which case it should be rewritten.
    pub fn from_log(text: &str) -> Result<(Session, bool)> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(ServiceError::Log {
            line: 1,
            message: "empty log".into(),
        })?;
        let header: Header = serde_json::from_str(first).map_err(|e| ServiceError::Log {
            line: 1,
            message: e.to_string(),
        })?;
        let mut session = Session::create(header.id, header.config)?;
        let mut recorded = Vec::new();
        for (k, line) in lines {
            let event: TraceEvent = serde_json::from_str(line).map_err(|e| ServiceError::Log {
                line: k + 1,
                message: e.to_string(),
            })?;
            session.replay_event(&event, recorded.last()).map_err(|message| ServiceError::Log {
                line: k + 1,
                message,
            })?;
            recorded.push(event);
        }
        // A trailing question without its answer is dropped; a missing
        // finished marker is regenerated.
        let dangling = matches!(recorded.last(), Some(TraceEvent::Question { .. }));
        if dangling {
            recorded.pop();
        }
        let repaired = dangling || recorded != session.events;
        Ok((session, repaired))
    }

    fn replay_event(&mut self, event: &TraceEvent, previous: Option<&TraceEvent>) -> Result<(), String> {
        match event {
            TraceEvent::Question { .. } => {
                let expected = self.pending().map(|q| TraceEvent::question(&self.universe, q));
                if expected.as_ref() != Some(event) {
                    return Err(format!("recorded {event:?}, but the session asks {expected:?}"));
                }
                Ok(())
            }
            TraceEvent::Finished { .. } => {
                if matches!(previous, Some(TraceEvent::Finished { .. })) || self.events.last() != Some(event) {
                    return Err(format!("recorded {event:?}, but the session is not finished that way"));
                }
                Ok(())
            }
            answer => {
                if !matches!(previous, Some(TraceEvent::Question { .. })) {
                    return Err("answer without a preceding question".into());
                }
                let reply = answer
                    .to_reply(&self.universe)
                    .map_err(|e| e.to_string())?
                    .expect("answer event");
                self.apply(reply).map(|_| ()).map_err(|e| e.to_string())
            }
        }
    }
}
