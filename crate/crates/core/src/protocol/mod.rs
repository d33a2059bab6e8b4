//! The black-box interaction contract: kinds, payloads, the fenced action
//! grammar, the observation/intervention session state machine, and
//! replayable transcripts.

mod action;
mod payload;
mod transcript;

pub use action::{parse_action, render_action, Action};
pub use payload::{
    parse_query_payload, parse_test_payload, render_observation, render_query_payload,
    render_test_payload, QueryPayload, ResponsePayload, MAX_TEXT_QUERY_LEN,
};
pub use transcript::{
    read_transcripts, write_transcripts, yoke_observations, Actor, Event, EventBody, Transcript,
    TRANSCRIPT_SCHEMA_VERSION,
};

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::Instance;
use crate::equation::CesParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlackBoxKind {
    Program,
    FormalLanguage,
    MathEquation,
    BoardGame,
}

impl BlackBoxKind {
    pub const ALL: [BlackBoxKind; 4] = [
        BlackBoxKind::Program,
        BlackBoxKind::FormalLanguage,
        BlackBoxKind::MathEquation,
        BlackBoxKind::BoardGame,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BlackBoxKind::Program => "program",
            BlackBoxKind::FormalLanguage => "formal_language",
            BlackBoxKind::MathEquation => "math_equation",
            BlackBoxKind::BoardGame => "board_game",
        }
    }

    pub fn from_name(name: &str) -> Option<BlackBoxKind> {
        match name.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "program" => Some(BlackBoxKind::Program),
            "formal_language" | "language" => Some(BlackBoxKind::FormalLanguage),
            "math_equation" | "equation" | "ces" => Some(BlackBoxKind::MathEquation),
            "board_game" | "boardgame" => Some(BlackBoxKind::BoardGame),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProtocolError {
    #[error("malformed payload: {0}")]
    MalformedPayload(String),
    #[error("agent response contained neither an action block nor prose")]
    EmptyResponse,
    #[error("intervention budget exhausted")]
    BudgetExhausted,
    #[error("session is closed")]
    SessionClosed,
    #[error("transcript contains no interventional data")]
    NoInterventionData,
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error("unsupported transcript schema version {0}")]
    SchemaVersionMismatch(u32),
}

/// Where an observation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Sampled,
    Intervention,
    YokedReplay,
}

/// One query/response pair. For test actions `proposed` holds the agent's
/// predicted response and `response` the Correct/Incorrect verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub query: QueryPayload,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proposed: Option<ResponsePayload>,
    pub response: ResponsePayload,
    pub provenance: Provenance,
    pub round_index: u32,
}

/// An agent's (or oracle's) final answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Hypothesis {
    /// Free-text rule description.
    Rule { text: String },
    /// A DSL program.
    Program { dsl: String },
    /// A catalog language identifier.
    Language { language_id: String },
    /// CES parameters.
    Ces { params: CesParams },
}

impl Hypothesis {
    /// Text form used for judging and transcripts.
    pub fn render(&self) -> String {
        match self {
            Hypothesis::Rule { text } => text.clone(),
            Hypothesis::Program { dsl } => dsl.clone(),
            Hypothesis::Language { language_id } => {
                match crate::language::language_catalog()
                    .iter()
                    .find(|l| &l.language_id == language_id)
                {
                    Some(spec) => spec.description.clone(),
                    None => language_id.clone(),
                }
            }
            Hypothesis::Ces { params } => params.render(),
        }
    }
}

/// Intervention strategies: whether and how reasoning turns are injected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    /// No reasoning turns.
    #[default]
    Plain,
    /// Describe the current hypothesis about the black box.
    Descriptive,
    /// Verbalize the hypothesis as a Python program.
    Functional,
    /// Analyze the data and verbalize a hypothesis freely.
    AnalyzeThenQuery,
}

impl StrategyKind {
    /// Reasoning turns are injected once every this many budget-consuming
    /// actions (for non-Plain strategies).
    pub const CADENCE: u32 = 5;

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Plain => "plain",
            StrategyKind::Descriptive => "descriptive",
            StrategyKind::Functional => "functional",
            StrategyKind::AnalyzeThenQuery => "analyze_then_query",
        }
    }

    pub fn from_name(name: &str) -> Option<StrategyKind> {
        match name.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "plain" | "intervention" => Some(StrategyKind::Plain),
            "descriptive" => Some(StrategyKind::Descriptive),
            "functional" => Some(StrategyKind::Functional),
            "analyze_then_query" | "analyze" => Some(StrategyKind::AnalyzeThenQuery),
            _ => None,
        }
    }
}

/// What a session step produced.
#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    Observed(Observation),
    Analyzed(String),
    Stopped,
}

/// A single-threaded value machine around one black-box instance.
#[derive(Clone)]
pub struct SessionState {
    pub instance: Arc<Instance>,
    pub observations: Vec<Observation>,
    pub rounds_used: u32,
    pub round_budget: u32,
    pub stopped: bool,
    pub strategy: StrategyKind,
    pub rng_seed: u64,
}

impl SessionState {
    /// Opens a session with `initial_obs` passively sampled observations.
    pub fn open(
        instance: Arc<Instance>,
        initial_obs: u32,
        round_budget: u32,
        strategy: StrategyKind,
        rng_seed: u64,
    ) -> SessionState {
        let observations = sample_observations(&instance, initial_obs as usize, rng_seed);
        SessionState {
            instance,
            observations,
            rounds_used: 0,
            round_budget,
            stopped: false,
            strategy,
            rng_seed,
        }
    }

    fn next_round_index(&self) -> u32 {
        self.observations
            .last()
            .map_or(0, |o| o.round_index + 1)
    }

    /// Applies one agent action. Query and Test consume a budget round;
    /// Analyze is free; Stop is terminal.
    pub fn step(&mut self, action: &Action) -> Result<StepOutcome, ProtocolError> {
        if self.stopped {
            return Err(ProtocolError::SessionClosed);
        }
        match action {
            Action::Stop { .. } => {
                self.stopped = true;
                Ok(StepOutcome::Stopped)
            }
            Action::Analyze { text } => Ok(StepOutcome::Analyzed(text.clone())),
            Action::Query { payload, .. } => {
                if self.rounds_used >= self.round_budget {
                    return Err(ProtocolError::BudgetExhausted);
                }
                let response = self.instance.evaluate_query(payload)?;
                let obs = Observation {
                    query: payload.clone(),
                    proposed: None,
                    response,
                    provenance: Provenance::Intervention,
                    round_index: self.next_round_index(),
                };
                self.rounds_used += 1;
                self.observations.push(obs.clone());
                Ok(StepOutcome::Observed(obs))
            }
            Action::Test {
                payload, proposed, ..
            } => {
                if self.rounds_used >= self.round_budget {
                    return Err(ProtocolError::BudgetExhausted);
                }
                let response = self.instance.evaluate_test(payload, proposed)?;
                let obs = Observation {
                    query: payload.clone(),
                    proposed: Some(proposed.clone()),
                    response,
                    provenance: Provenance::Intervention,
                    round_index: self.next_round_index(),
                };
                self.rounds_used += 1;
                self.observations.push(obs.clone());
                Ok(StepOutcome::Observed(obs))
            }
        }
    }
}

/// Stable 64-bit stream seed from an instance id and a session seed.
pub fn stream_seed(instance_id: &str, seed: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in instance_id.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    for b in seed.to_le_bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h
}

/// Draws `n` passive observations, deterministic in `(instance_id, seed)`.
pub fn sample_observations(instance: &Instance, n: usize, seed: u64) -> Vec<Observation> {
    instance.sample_observations(n, stream_seed(instance.instance_id(), seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    fn program_instance() -> Arc<Instance> {
        // prog-001 is the third-element program
        Arc::new(
            Catalog::builtin()
                .find("prog-001")
                .expect("builtin program instance"),
        )
    }

    #[test]
    fn sampling_is_deterministic_and_replayable() {
        let inst = program_instance();
        let a = sample_observations(&inst, 10, 42);
        let b = sample_observations(&inst, 10, 42);
        assert_eq!(a, b);
        let c = sample_observations(&inst, 10, 43);
        assert_ne!(a, c);
        assert!(sample_observations(&inst, 0, 7).is_empty());
        for obs in &a {
            let again = inst.evaluate_query(&obs.query).unwrap();
            assert_eq!(again, obs.response);
            assert_eq!(obs.provenance, Provenance::Sampled);
        }
        // round indexes strictly increase
        for (i, obs) in a.iter().enumerate() {
            assert_eq!(obs.round_index, i as u32);
        }
    }

    #[test]
    fn budget_and_stop_bookkeeping() {
        let inst = program_instance();
        let mut session = SessionState::open(inst, 0, 5, StrategyKind::Plain, 1);
        let query = Action::Query {
            payload: QueryPayload::IntList {
                values: vec![1, 2, 3],
            },
            analysis: None,
        };
        for used in 1..=5 {
            let out = session.step(&query).unwrap();
            assert!(matches!(out, StepOutcome::Observed(_)));
            assert_eq!(session.rounds_used, used);
            assert_eq!(session.observations.len(), used as usize);
        }
        assert!(matches!(
            session.step(&query),
            Err(ProtocolError::BudgetExhausted)
        ));
        // analyze stays free
        let analyze = Action::Analyze {
            text: "rule?".into(),
        };
        assert!(matches!(
            session.step(&analyze),
            Ok(StepOutcome::Analyzed(_))
        ));
        assert_eq!(session.rounds_used, 5);

        let before = session.observations.len();
        assert!(matches!(
            session.step(&Action::Stop { analysis: None }),
            Ok(StepOutcome::Stopped)
        ));
        assert!(session.stopped);
        assert_eq!(session.observations.len(), before);
        assert!(matches!(
            session.step(&query),
            Err(ProtocolError::SessionClosed)
        ));
    }

    #[test]
    fn test_actions_record_verdicts() {
        let inst = program_instance();
        let mut session = SessionState::open(inst, 0, 2, StrategyKind::Plain, 1);
        let action = Action::Test {
            payload: QueryPayload::IntList {
                values: vec![36, 17, 96],
            },
            proposed: ResponsePayload::IntList { values: vec![96] },
            analysis: None,
        };
        let out = session.step(&action).unwrap();
        match out {
            StepOutcome::Observed(obs) => {
                assert_eq!(obs.response, ResponsePayload::Verdict { correct: true });
                assert!(obs.proposed.is_some());
            }
            other => panic!("expected observation, got {other:?}"),
        }
    }
}
