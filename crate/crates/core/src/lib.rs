//! Deterministic black-box systems and the machinery to reverse-engineer them.
//!
//! The crate provides four families of sealed, deterministic black boxes
//! (list-mapping programs, formal languages, CES utility comparisons, and a
//! connect-n board game), the observation/intervention session protocol used
//! to probe them, exact enumerative Bayesian reference posteriors, agent
//! drivers (LLM over HTTP, scripted, human), and the scoring/statistics layer
//! used to evaluate hypotheses.
//!
//! Everything is seedable and replayable: the same instance, seed, and action
//! sequence always produce byte-identical responses.

pub mod agents;
pub mod bayes;
pub mod boardgame;
pub mod catalog;
pub mod equation;
pub mod evaluation;
pub mod language;
pub mod program;
pub mod protocol;

pub use catalog::{Catalog, Instance};
pub use protocol::{
    Action, Actor, BlackBoxKind, Event, EventBody, Hypothesis, Observation, Provenance,
    QueryPayload, ResponsePayload, SessionState, StepOutcome, Transcript,
};
