//! Expression tree for the list-mapping DSL.

use serde::{Deserialize, Serialize};

/// A parsed program. The root is always a single-argument lambda whose bound
/// variable is written `$0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProgramExpr {
    /// `(lambda <body>)` — only ever the root node.
    Lambda(Box<ProgramExpr>),
    /// The bound variable `$0`.
    Var,
    /// An integer literal, used for primitive parameters.
    IntLiteral(i64),
    /// Application of a named primitive to its arguments.
    PrimApply(super::Prim, Vec<ProgramExpr>),
}

impl ProgramExpr {
    /// Number of primitive applications in the tree.
    pub fn op_count(&self) -> u32 {
        match self {
            ProgramExpr::Lambda(body) => body.op_count(),
            ProgramExpr::Var | ProgramExpr::IntLiteral(_) => 0,
            ProgramExpr::PrimApply(_, args) => {
                1 + args.iter().map(ProgramExpr::op_count).sum::<u32>()
            }
        }
    }
}
