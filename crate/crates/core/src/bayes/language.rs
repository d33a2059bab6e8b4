//! Catalog posterior for the formal-language black box.
//!
//! The hypothesis space is the full 46-language catalog. Generated strings
//! are scored with the exact generation probability of each candidate;
//! membership verdicts are scored 1/ε on decider agreement. The prior favors
//! lower Chomsky classes: `P(H) ∝ exp(-κ · class_rank)`.

use crate::language::{language_catalog, LanguageSpec};
use crate::protocol::{Observation, Provenance, QueryPayload, ResponsePayload};

use super::Posterior;

/// Zero likelihoods are smoothed to this floor.
const EPSILON: f64 = 1e-9;

/// One piece of language evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LanguageEvidence {
    /// A string emitted by the black box's generator.
    Generated(String),
    /// A membership verdict for an agent-chosen string.
    Verdict { string: String, member: bool },
}

impl LanguageEvidence {
    /// Converts a protocol observation. Sampled strings are generator output;
    /// intervention queries and tests contribute membership verdicts. Yoked
    /// pairs keep the view of their source: accepted strings read as
    /// generated, rejections as verdicts.
    pub fn from_observation(obs: &Observation) -> Option<LanguageEvidence> {
        let QueryPayload::Text { value } = &obs.query else {
            return None;
        };
        match (&obs.response, &obs.proposed) {
            (ResponsePayload::Membership { member, .. }, _) => match obs.provenance {
                Provenance::Sampled => Some(LanguageEvidence::Generated(value.clone())),
                Provenance::Intervention => Some(LanguageEvidence::Verdict {
                    string: value.clone(),
                    member: *member,
                }),
                Provenance::YokedReplay => {
                    if *member {
                        Some(LanguageEvidence::Generated(value.clone()))
                    } else {
                        Some(LanguageEvidence::Verdict {
                            string: value.clone(),
                            member: false,
                        })
                    }
                }
            },
            (ResponsePayload::Verdict { correct }, Some(ResponsePayload::Membership { member, .. })) => {
                Some(LanguageEvidence::Verdict {
                    string: value.clone(),
                    member: *member == *correct,
                })
            }
            _ => None,
        }
    }

    fn log_lik(&self, lang: &LanguageSpec) -> f64 {
        match self {
            LanguageEvidence::Generated(s) => {
                let p = lang.generation_probability(s);
                if p == 0.0 {
                    EPSILON.ln()
                } else {
                    p.ln()
                }
            }
            LanguageEvidence::Verdict { string, member } => {
                if lang.is_member(string).member == *member {
                    0.0
                } else {
                    EPSILON.ln()
                }
            }
        }
    }
}

/// Posterior over the full language catalog given observed evidence.
/// `kappa` scales the class-rank simplicity prior (default 1.0).
pub fn language_posterior(
    evidence: &[LanguageEvidence],
    kappa: f64,
) -> Posterior<&'static LanguageSpec> {
    let catalog: Vec<&'static LanguageSpec> = language_catalog().iter().collect();
    let log_weights: Vec<f64> = catalog
        .iter()
        .map(|lang| {
            let prior = -kappa * f64::from(lang.chomsky_class.rank());
            let lik: f64 = evidence.iter().map(|e| e.log_lik(lang)).sum();
            prior + lik
        })
        .collect();
    Posterior::from_log_weights(catalog, log_weights)
}

/// Convenience wrapper over protocol observations.
pub fn language_posterior_from_observations(
    observations: &[Observation],
    kappa: f64,
) -> Posterior<&'static LanguageSpec> {
    let evidence: Vec<LanguageEvidence> = observations
        .iter()
        .filter_map(LanguageEvidence::from_observation)
        .collect();
    language_posterior(&evidence, kappa)
}
