//! Enumerative posterior over small DSL programs.
//!
//! Every primitive maps one list (or integer) to another, so programs are
//! chains; the space is all type-correct chains up to a given operation
//! count, with parameterised primitives instantiated over small grids. The
//! prior is the description-length prior `P(H) ∝ exp(-op_count)`; the
//! likelihood is 1 for a matching observation and a small ε otherwise.
//!
//! Chains whose outermost operation is `singleton` are excluded: the response
//! layer wraps scalar results into one-element lists, so such chains are
//! response-equivalent to their unwrapped form. MAP comparisons should use
//! the same canonical form (see [`canonical_program`]).

use crate::program::{eval_program, Prim, ProgramExpr, ProgramResponse, PRIMITIVES};
use crate::protocol::{Observation, QueryPayload, ResponsePayload};

use super::{BayesError, Posterior};

/// Likelihood of one observation under a mismatching hypothesis.
const NOISE_EPSILON: f64 = 0.01;

/// Hypothesis-space configuration: operation-count bound, enumeration cap,
/// and the parameter grids for parameterised primitives.
#[derive(Debug, Clone)]
pub struct ProgramSpaceConfig {
    pub max_op_count: u32,
    pub candidate_cap: usize,
    pub param_grid: Vec<(Prim, Vec<i64>)>,
}

impl Default for ProgramSpaceConfig {
    fn default() -> Self {
        ProgramSpaceConfig {
            max_op_count: 3,
            candidate_cap: 5_000_000,
            param_grid: vec![
                (Prim::Nth, vec![4, 5, 6]),
                (Prim::Take, vec![1, 2, 3]),
                (Prim::Drop, vec![1, 2, 3]),
                (Prim::Cons, vec![0, 1, 5]),
                (Prim::Append, vec![0, 1, 5]),
                (Prim::Count, vec![1, 5]),
                (Prim::MapAdd, vec![1, 2, 3]),
                (Prim::MapSub, vec![1, 2, 3]),
                (Prim::MapMul, vec![2, 3]),
                (Prim::FilterGt, vec![10, 50, 90]),
                (Prim::FilterLt, vec![10, 50, 90]),
            ],
        }
    }
}

impl ProgramSpaceConfig {
    pub fn with_max_op_count(max_op_count: u32) -> Self {
        ProgramSpaceConfig {
            max_op_count,
            ..ProgramSpaceConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ValueKind {
    Int,
    List,
}

/// One instantiated primitive: the op plus its (optional) parameter.
#[derive(Debug, Clone, Copy)]
struct Step {
    prim: Prim,
    param: Option<i64>,
}

impl Step {
    fn input_kind(self) -> ValueKind {
        if self.prim == Prim::Singleton {
            ValueKind::Int
        } else {
            ValueKind::List
        }
    }

    fn output_kind(self) -> ValueKind {
        match self.prim {
            Prim::First
            | Prim::Second
            | Prim::Third
            | Prim::Last
            | Prim::Length
            | Prim::Sum
            | Prim::Max
            | Prim::Min
            | Prim::Nth
            | Prim::Count => ValueKind::Int,
            _ => ValueKind::List,
        }
    }
}

fn instantiated_steps(config: &ProgramSpaceConfig) -> Vec<Step> {
    let mut steps = Vec::new();
    for prim in PRIMITIVES {
        if prim.has_param() {
            if let Some((_, grid)) = config.param_grid.iter().find(|(p, _)| *p == prim) {
                for &param in grid {
                    steps.push(Step {
                        prim,
                        param: Some(param),
                    });
                }
            }
        } else {
            steps.push(Step { prim, param: None });
        }
    }
    steps
}

fn chain_to_expr(chain: &[Step]) -> ProgramExpr {
    let mut expr = ProgramExpr::Var;
    for step in chain {
        let args = match step.param {
            Some(p) => vec![ProgramExpr::IntLiteral(p), expr],
            None => vec![expr],
        };
        expr = ProgramExpr::PrimApply(step.prim, args);
    }
    ProgramExpr::Lambda(Box::new(expr))
}

/// Strips a response-neutral outermost `singleton` so that programs are
/// compared in the form the response layer can actually distinguish.
pub fn canonical_program(expr: &ProgramExpr) -> ProgramExpr {
    match expr {
        ProgramExpr::Lambda(body) => match body.as_ref() {
            ProgramExpr::PrimApply(Prim::Singleton, args) if args.len() == 1 => {
                ProgramExpr::Lambda(Box::new(args[0].clone()))
            }
            other => ProgramExpr::Lambda(Box::new(other.clone())),
        },
        other => other.clone(),
    }
}

/// Enumerates every type-correct chain with at most `max_op_count`
/// operations (the identity program included), in stable order: by length,
/// then lexicographically by instantiated-primitive index.
pub fn enumerate_programs(config: &ProgramSpaceConfig) -> Result<Vec<ProgramExpr>, BayesError> {
    let steps = instantiated_steps(config);
    let mut space: Vec<ProgramExpr> = vec![ProgramExpr::Lambda(Box::new(ProgramExpr::Var))];
    // chains of the previous length with their resulting value kind
    let mut frontier: Vec<(Vec<Step>, ValueKind)> = vec![(Vec::new(), ValueKind::List)];
    for _ in 0..config.max_op_count {
        let mut next = Vec::new();
        for (chain, kind) in &frontier {
            for &step in &steps {
                if step.input_kind() != *kind {
                    continue;
                }
                let mut extended = chain.clone();
                extended.push(step);
                next.push((extended, step.output_kind()));
            }
        }
        for (chain, _) in &next {
            if chain.last().map(|s| s.prim) != Some(Prim::Singleton) {
                space.push(chain_to_expr(chain));
            }
            if space.len() > config.candidate_cap {
                return Err(BayesError::SpaceTooLarge {
                    candidates: space.len(),
                    cap: config.candidate_cap,
                });
            }
        }
        frontier = next;
    }
    Ok(space)
}

fn observation_log_lik(expr: &ProgramExpr, obs: &Observation) -> f64 {
    let QueryPayload::IntList { values: input } = &obs.query else {
        return 0.0;
    };
    let predicted = eval_program(expr, input);
    let matches = match (&obs.response, &obs.proposed) {
        (ResponsePayload::IntList { values }, _) => {
            predicted == ProgramResponse::ValueList(values.clone())
        }
        (ResponsePayload::InvalidInput, _) => predicted == ProgramResponse::InvalidInput,
        (ResponsePayload::Verdict { correct }, Some(proposed)) => {
            let agrees = match proposed {
                ResponsePayload::IntList { values } => {
                    predicted == ProgramResponse::ValueList(values.clone())
                }
                ResponsePayload::InvalidInput => predicted == ProgramResponse::InvalidInput,
                _ => return 0.0,
            };
            agrees == *correct
        }
        _ => return 0.0,
    };
    if matches {
        0.0
    } else {
        NOISE_EPSILON.ln()
    }
}

/// Posterior over all catalog-primitive programs within the configured
/// operation-count bound, given program observations.
pub fn program_posterior(
    observations: &[Observation],
    config: &ProgramSpaceConfig,
) -> Result<Posterior<ProgramExpr>, BayesError> {
    let space = enumerate_programs(config)?;
    let log_weights: Vec<f64> = space
        .iter()
        .map(|h| {
            let prior = -f64::from(h.op_count());
            let lik: f64 = observations.iter().map(|o| observation_log_lik(h, o)).sum();
            prior + lik
        })
        .collect();
    Ok(Posterior::from_log_weights(space, log_weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::{parse_program, render_program};
    use crate::protocol::Provenance;

    fn obs_from(expr: &ProgramExpr, inputs: &[Vec<i64>]) -> Vec<Observation> {
        inputs
            .iter()
            .enumerate()
            .map(|(i, input)| {
                let response = match eval_program(expr, input) {
                    ProgramResponse::ValueList(v) => ResponsePayload::IntList { values: v },
                    ProgramResponse::InvalidInput => ResponsePayload::InvalidInput,
                };
                Observation {
                    query: QueryPayload::IntList {
                        values: input.clone(),
                    },
                    proposed: None,
                    response,
                    provenance: Provenance::Sampled,
                    round_index: i as u32,
                }
            })
            .collect()
    }

    #[test]
    fn enumeration_is_type_correct_and_capped() {
        let config = ProgramSpaceConfig::with_max_op_count(2);
        let space = enumerate_programs(&config).unwrap();
        // identity is in the space, singleton-terminal chains are not
        assert!(space.iter().any(|e| render_program(e) == "(lambda $0)"));
        assert!(!space
            .iter()
            .any(|e| render_program(e).starts_with("(lambda (singleton")));

        let tiny = ProgramSpaceConfig {
            candidate_cap: 10,
            ..ProgramSpaceConfig::with_max_op_count(3)
        };
        assert!(matches!(
            enumerate_programs(&tiny),
            Err(BayesError::SpaceTooLarge { .. })
        ));
    }

    #[test]
    fn map_recovers_the_third_element_program() {
        let truth = parse_program("(lambda (third $0))").unwrap();
        let inputs: Vec<Vec<i64>> = vec![
            vec![97, 53, 5, 33, 65, 62, 51],
            vec![61, 45, 74, 27, 64],
            vec![36, 17, 96],
            vec![79, 32],
            vec![90, 77, 18, 39, 12, 93, 9, 87, 42],
            vec![71, 12, 45, 55, 40, 78, 81, 26],
            vec![61, 56, 66, 33, 7, 70, 1, 11, 92],
            vec![90, 100, 85, 80, 0, 78, 63],
            vec![31, 93, 41, 90, 8, 24],
            vec![28, 30, 18, 69, 57, 11, 10, 40, 65, 62],
        ];
        let observations = obs_from(&truth, &inputs);
        let posterior =
            program_posterior(&observations, &ProgramSpaceConfig::with_max_op_count(3)).unwrap();
        let map = posterior.map_estimate(|h| u64::from(h.op_count())).unwrap();
        assert_eq!(render_program(map), "(lambda (third $0))");
        let total: f64 = posterior.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_observations_give_the_prior() {
        let posterior =
            program_posterior(&[], &ProgramSpaceConfig::with_max_op_count(2)).unwrap();
        let map = posterior.map_estimate(|h| u64::from(h.op_count())).unwrap();
        assert_eq!(render_program(map), "(lambda $0)");
    }

    #[test]
    fn inconsistent_pair_scales_all_weights() {
        // an observation no hypothesis matches: every weight picks up ε, and
        // the posterior still normalizes
        let impossible = Observation {
            query: QueryPayload::IntList { values: vec![1] },
            proposed: None,
            response: ResponsePayload::IntList {
                values: vec![123_456],
            },
            provenance: Provenance::Sampled,
            round_index: 0,
        };
        let config = ProgramSpaceConfig::with_max_op_count(1);
        let with = program_posterior(std::slice::from_ref(&impossible), &config).unwrap();
        let without = program_posterior(&[], &config).unwrap();
        let total: f64 = with.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!((with.normalizer() - (without.normalizer() + NOISE_EPSILON.ln())).abs() < 1e-9);
        for (a, b) in with.log_weights().iter().zip(without.log_weights()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn verdict_observations_inform_the_posterior() {
        let truth = parse_program("(lambda (sort $0))").unwrap();
        let mut observations = obs_from(&truth, &[vec![3, 1, 2], vec![9, 4, 7, 1]]);
        // a test the black box answered Incorrect
        observations.push(Observation {
            query: QueryPayload::IntList { values: vec![5, 2] },
            proposed: Some(ResponsePayload::IntList { values: vec![5, 2] }),
            response: ResponsePayload::Verdict { correct: false },
            provenance: Provenance::Intervention,
            round_index: 2,
        });
        let posterior =
            program_posterior(&observations, &ProgramSpaceConfig::with_max_op_count(2)).unwrap();
        let map = posterior.map_estimate(|h| u64::from(h.op_count())).unwrap();
        assert_eq!(render_program(map), "(lambda (sort $0))");
    }

    #[test]
    fn permutation_invariance() {
        let truth = parse_program("(lambda (reverse $0))").unwrap();
        let observations = obs_from(&truth, &[vec![1, 2], vec![3, 1, 2], vec![9, 9, 1]]);
        let mut reversed = observations.clone();
        reversed.reverse();
        let config = ProgramSpaceConfig::with_max_op_count(2);
        let a = program_posterior(&observations, &config).unwrap();
        let b = program_posterior(&reversed, &config).unwrap();
        for (x, y) in a.log_weights().iter().zip(b.log_weights()) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn canonical_form_strips_outer_singleton() {
        let wrapped = parse_program("(lambda (singleton (third $0)))").unwrap();
        let bare = parse_program("(lambda (third $0))").unwrap();
        assert_eq!(canonical_program(&wrapped), bare);
        assert_eq!(canonical_program(&bare), bare);
        // inner singletons are meaningful and preserved
        let inner = parse_program("(lambda (cons 5 (singleton (first $0))))").unwrap();
        assert_eq!(canonical_program(&inner), inner);
    }
}
