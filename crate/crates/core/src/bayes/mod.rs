//! Exact enumerative Bayesian reference inference.
//!
//! Each oracle computes `P(H | D) ∝ P(D | H) · P(H)` over an explicit finite
//! hypothesis space: all small DSL programs, the full language catalog, or a
//! parameter grid for the utility model. Everything is done in log space with
//! a fixed reduction order, so results are deterministic regardless of how
//! the evaluation is parallelised by callers.

mod ces;
mod language;
mod program;

pub use ces::{ces_posterior, ces_posterior_from_observations, log_normal_cdf, CesGrid};
pub use language::{language_posterior, language_posterior_from_observations, LanguageEvidence};
pub use program::{canonical_program, enumerate_programs, program_posterior, ProgramSpaceConfig};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BayesError {
    #[error("hypothesis space too large: {candidates} candidates exceed the cap of {cap}")]
    SpaceTooLarge { candidates: usize, cap: usize },
    #[error("posterior has no hypotheses")]
    EmptyPosterior,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A normalized probability map over an explicit finite hypothesis space.
///
/// `log_weights` are normalized (their log-sum-exp is zero); `normalizer`
/// keeps the log of the pre-normalization evidence sum.
#[derive(Debug, Clone)]
pub struct Posterior<H> {
    hypotheses: Vec<H>,
    log_weights: Vec<f64>,
    normalizer: f64,
}

/// Log-sum-exp with a fixed left-to-right reduction order.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

impl<H> Posterior<H> {
    /// Builds a posterior from unnormalized log weights.
    pub fn from_log_weights(hypotheses: Vec<H>, mut log_weights: Vec<f64>) -> Posterior<H> {
        assert_eq!(hypotheses.len(), log_weights.len());
        let normalizer = log_sum_exp(&log_weights);
        for w in &mut log_weights {
            *w -= normalizer;
        }
        Posterior {
            hypotheses,
            log_weights,
            normalizer,
        }
    }

    pub fn len(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hypotheses.is_empty()
    }

    pub fn hypotheses(&self) -> &[H] {
        &self.hypotheses
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn weights(&self) -> Vec<f64> {
        self.log_weights.iter().map(|w| w.exp()).collect()
    }

    /// Probability mass assigned to the hypotheses matching `pred`.
    pub fn mass_where(&self, mut pred: impl FnMut(&H) -> bool) -> f64 {
        self.hypotheses
            .iter()
            .zip(&self.log_weights)
            .filter(|(h, _)| pred(h))
            .map(|(_, w)| w.exp())
            .sum()
    }

    /// Posterior updated with additional per-hypothesis log likelihoods.
    pub fn updated(&self, log_liks: &[f64]) -> Posterior<H>
    where
        H: Clone,
    {
        assert_eq!(log_liks.len(), self.log_weights.len());
        let combined: Vec<f64> = self
            .log_weights
            .iter()
            .zip(log_liks)
            .map(|(w, l)| w + l)
            .collect();
        Posterior::from_log_weights(self.hypotheses.clone(), combined)
    }

    /// The maximum-a-posteriori hypothesis. Ties (within 1e-12 in log weight)
    /// are broken by smaller prior complexity, then by stable catalog order.
    pub fn map_estimate(&self, complexity: impl Fn(&H) -> u64) -> Result<&H, BayesError> {
        if self.hypotheses.is_empty() {
            return Err(BayesError::EmptyPosterior);
        }
        let best = self
            .log_weights
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let mut winner: Option<(usize, u64)> = None;
        for (i, &w) in self.log_weights.iter().enumerate() {
            if w >= best - 1e-12 {
                let c = complexity(&self.hypotheses[i]);
                match winner {
                    Some((_, wc)) if wc <= c => {}
                    _ => winner = Some((i, c)),
                }
            }
        }
        Ok(&self.hypotheses[winner.expect("nonempty").0])
    }

    /// CSV export `(hypothesis_id, weight)`, heaviest first; stable for equal
    /// weights.
    pub fn to_csv(&self, id: impl Fn(&H) -> String) -> String {
        let mut rows: Vec<(usize, f64)> = self
            .log_weights
            .iter()
            .map(|w| w.exp())
            .enumerate()
            .collect();
        rows.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        let mut out = String::from("hypothesis_id,weight\n");
        for (i, w) in rows {
            out.push_str(&format!("{},{}\n", id(&self.hypotheses[i]), w));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_sums_to_one() {
        let p = Posterior::from_log_weights(vec!["a", "b", "c"], vec![-1.0, -2.0, -3.0]);
        let total: f64 = p.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_evidence_keeps_prior() {
        let prior = Posterior::from_log_weights(vec!["a", "b"], vec![0.0, -1.0]);
        let updated = prior.updated(&[0.0, 0.0]);
        for (a, b) in prior.log_weights().iter().zip(updated.log_weights()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn map_ties_prefer_smaller_complexity() {
        let p = Posterior::from_log_weights(vec![("x", 3u64), ("y", 1u64)], vec![0.0, 0.0]);
        let map = p.map_estimate(|h| h.1).unwrap();
        assert_eq!(map.0, "y");
        // equal complexity: stable order wins
        let p = Posterior::from_log_weights(vec![("x", 1u64), ("y", 1u64)], vec![0.0, 0.0]);
        assert_eq!(p.map_estimate(|h| h.1).unwrap().0, "x");
        // single hypothesis
        let p = Posterior::from_log_weights(vec![("only", 9u64)], vec![-5.0]);
        assert_eq!(p.map_estimate(|h| h.1).unwrap().0, "only");
    }

    #[test]
    fn empty_posterior_is_an_error() {
        let p: Posterior<&str> = Posterior::from_log_weights(vec![], vec![]);
        assert!(matches!(
            p.map_estimate(|_| 0),
            Err(BayesError::EmptyPosterior)
        ));
    }

    #[test]
    fn csv_is_sorted_descending() {
        let p = Posterior::from_log_weights(vec!["a", "b"], vec![-2.0, -1.0]);
        let csv = p.to_csv(|h| h.to_string());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "hypothesis_id,weight");
        assert!(lines[1].starts_with("b,"));
        assert!(lines[2].starts_with("a,"));
    }
}
