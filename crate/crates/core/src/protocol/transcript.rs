//! Session transcripts: the full ordered record of one session, serialized as
//! one JSON object per line (JSONL), plus yoked-replay derivation.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{
    Action, BlackBoxKind, Hypothesis, Observation, ProtocolError, Provenance,
};

pub const TRANSCRIPT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Actor {
    Agent,
    BlackBox,
    Harness,
}

/// One transcript event: `{round, actor, type, payload}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub round: u32,
    pub actor: Actor,
    #[serde(flatten)]
    pub body: EventBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "payload", rename_all = "snake_case")]
pub enum EventBody {
    Observation(Observation),
    Action(Action),
    /// Raw prompt sent to an agent.
    Prompt(String),
    /// Raw agent completion.
    Completion(String),
    /// A zero-cost reasoning turn.
    Analysis(String),
    Note(String),
}

/// The full ordered record of one session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub v: u32,
    pub session_id: String,
    pub kind: BlackBoxKind,
    pub instance_id: String,
    pub seed: u64,
    pub events: Vec<Event>,
    pub final_hypothesis: Option<Hypothesis>,
    /// Free-text failure-mode tag added by human annotators.
    pub annotation: Option<String>,
}

impl Transcript {
    pub fn new(
        session_id: impl Into<String>,
        kind: BlackBoxKind,
        instance_id: impl Into<String>,
        seed: u64,
    ) -> Transcript {
        Transcript {
            v: TRANSCRIPT_SCHEMA_VERSION,
            session_id: session_id.into(),
            kind,
            instance_id: instance_id.into(),
            seed,
            events: Vec::new(),
            final_hypothesis: None,
            annotation: None,
        }
    }

    pub fn push(&mut self, round: u32, actor: Actor, body: EventBody) {
        self.events.push(Event { round, actor, body });
    }

    /// All observations in event order.
    pub fn observations(&self) -> Vec<&Observation> {
        self.events
            .iter()
            .filter_map(|e| match &e.body {
                EventBody::Observation(o) => Some(o),
                _ => None,
            })
            .collect()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("transcript serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Transcript, ProtocolError> {
        let t: Transcript = serde_json::from_str(line)
            .map_err(|e| ProtocolError::MalformedPayload(format!("bad transcript: {e}")))?;
        if t.v != TRANSCRIPT_SCHEMA_VERSION {
            return Err(ProtocolError::SchemaVersionMismatch(t.v));
        }
        Ok(t)
    }
}

/// Writes transcripts as one JSON object per line.
pub fn write_transcripts<W: Write>(out: &mut W, transcripts: &[Transcript]) -> std::io::Result<()> {
    for t in transcripts {
        writeln!(out, "{}", t.to_json_line())?;
    }
    Ok(())
}

/// Reads a JSONL transcript stream, skipping blank lines.
pub fn read_transcripts<R: BufRead>(input: R) -> Result<Vec<Transcript>, ProtocolError> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line =
            line.map_err(|e| ProtocolError::MalformedPayload(format!("io error: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(Transcript::from_json_line(&line)?);
    }
    Ok(out)
}

/// Extracts the passive view of a transcript: every query/response pair in
/// original order with provenance rewritten to `YokedReplay`, all analysis
/// and hypothesis text discarded. Errors when the transcript holds no
/// interventional data (yoked-replay pairs count as interventional, so the
/// operation is idempotent on pairs).
pub fn yoke_observations(transcript: &Transcript) -> Result<Vec<Observation>, ProtocolError> {
    let observations = transcript.observations();
    let has_intervention = observations
        .iter()
        .any(|o| matches!(o.provenance, Provenance::Intervention | Provenance::YokedReplay));
    if !has_intervention {
        return Err(ProtocolError::NoInterventionData);
    }
    Ok(observations
        .into_iter()
        .enumerate()
        .map(|(i, o)| Observation {
            query: o.query.clone(),
            proposed: o.proposed.clone(),
            response: o.response.clone(),
            provenance: Provenance::YokedReplay,
            round_index: i as u32,
        })
        .collect())
}
