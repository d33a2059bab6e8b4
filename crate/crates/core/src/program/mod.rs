//! The list-mapping program black box.
//!
//! Each instance wraps a small lambda program such as
//! `(lambda (singleton (third $0)))`: the query is a list of integers and the
//! response is either the resulting list or `invalid input` when evaluation
//! hits a precondition violation (index out of range, empty-list reduction,
//! kind-incompatible intermediate, overflow).

mod ast;
mod eval;
mod parse;
mod prims;

pub use ast::ProgramExpr;
pub use eval::{eval_expr, eval_program, Value};
pub use parse::{parse_program, render_program};
pub use prims::{Prim, PRIMITIVES};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Output of one program evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "values", rename_all = "snake_case")]
pub enum ProgramResponse {
    ValueList(Vec<i64>),
    InvalidInput,
}

impl ProgramResponse {
    pub fn render(&self) -> String {
        match self {
            ProgramResponse::ValueList(v) => render_int_list(v),
            ProgramResponse::InvalidInput => "invalid input".to_string(),
        }
    }
}

pub fn render_int_list(v: &[i64]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProgramParseError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown primitive `{0}`")]
    UnknownPrimitive(String),
    #[error("primitive `{0}` expects {1} argument(s), got {2}")]
    Arity(String, usize, usize),
}

/// One sealed program instance from the catalog.
#[derive(Debug, Clone)]
pub struct ProgramInstance {
    pub instance_id: String,
    pub expr: ProgramExpr,
    pub dsl_text: String,
    pub op_count: u32,
}

impl ProgramInstance {
    pub fn new(instance_id: impl Into<String>, dsl_text: &str) -> Result<Self, ProgramParseError> {
        let expr = parse_program(dsl_text)?;
        let op_count = expr.op_count();
        Ok(ProgramInstance {
            instance_id: instance_id.into(),
            dsl_text: render_program(&expr),
            expr,
            op_count,
        })
    }

    pub fn evaluate(&self, input: &[i64]) -> ProgramResponse {
        eval_program(&self.expr, input)
    }

    pub fn complexity(&self) -> u8 {
        complexity_for_op_count(self.op_count)
    }

    /// Sampling law for passive observations: list length uniform in `[1,10]`,
    /// elements uniform integers in `[0,100]`.
    pub fn sample_input(&self, rng: &mut ChaCha8Rng) -> Vec<i64> {
        let len = rng.gen_range(1..=10usize);
        (0..len).map(|_| rng.gen_range(0..=100i64)).collect()
    }
}

/// Complexity bins over the operation count: `<2 -> 1`, `<4 -> 2`, `<6 -> 3`,
/// `<8 -> 4`, everything else 5. An operation count of zero (the identity
/// program) is treated as 1 for binning.
pub fn complexity_for_op_count(op_count: u32) -> u8 {
    match op_count.max(1) {
        n if n < 2 => 1,
        n if n < 4 => 2,
        n if n < 6 => 3,
        n if n < 8 => 4,
        _ => 5,
    }
}

/// Parses a rendered integer list such as `[1, 2, 3]` or `[]`.
pub fn parse_int_list(text: &str) -> Option<Vec<i64>> {
    let t = text.trim();
    let inner = t.strip_prefix('[')?.strip_suffix(']')?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner
        .split(',')
        .map(|p| p.trim().parse::<i64>().ok())
        .collect()
}
