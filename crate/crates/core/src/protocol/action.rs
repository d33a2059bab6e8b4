//! The fenced-block action grammar agents use to drive a session.
//!
//! Agents answer with free text containing at most one honored action block,
//! e.g. a backtick fence labeled `query` whose body is `[1, 2, 3]`.
//!
//! Labels `query`, `test`, and `stop` are matched case-insensitively. The
//! first well-formed action block wins; surrounding prose becomes the
//! action's attached analysis. Text with no action block at all parses as a
//! pure `Analyze` action.

use serde::{Deserialize, Serialize};

use super::payload::{
    parse_query_payload, parse_test_payload, render_query_payload, render_test_payload,
    QueryPayload, ResponsePayload,
};
use super::{BlackBoxKind, ProtocolError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum Action {
    Query {
        payload: QueryPayload,
        #[serde(skip_serializing_if = "Option::is_none")]
        analysis: Option<String>,
    },
    Test {
        payload: QueryPayload,
        proposed: ResponsePayload,
        #[serde(skip_serializing_if = "Option::is_none")]
        analysis: Option<String>,
    },
    Stop {
        #[serde(skip_serializing_if = "Option::is_none")]
        analysis: Option<String>,
    },
    Analyze {
        text: String,
    },
}

impl Action {
    pub fn analysis(&self) -> Option<&str> {
        match self {
            Action::Query { analysis, .. }
            | Action::Test { analysis, .. }
            | Action::Stop { analysis } => analysis.as_deref(),
            Action::Analyze { text } => Some(text),
        }
    }

    /// Whether the action consumes one intervention round.
    pub fn consumes_budget(&self) -> bool {
        matches!(self, Action::Query { .. } | Action::Test { .. })
    }
}

#[derive(Debug, PartialEq)]
enum BlockLabel {
    Query,
    Test,
    Stop,
}

struct Block {
    label: BlockLabel,
    body: String,
    start_line: usize,
    end_line: usize,
}

fn fence_label(line: &str) -> Option<&str> {
    line.trim().strip_prefix("```")
}

/// Scans for fenced blocks with action labels. Blocks with other labels are
/// left in place (they count as prose).
fn scan_blocks(lines: &[&str]) -> Vec<Block> {
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let Some(label_text) = fence_label(lines[i]) else {
            i += 1;
            continue;
        };
        let label = match label_text.trim().to_ascii_lowercase().as_str() {
            "query" => Some(BlockLabel::Query),
            "test" => Some(BlockLabel::Test),
            "stop" => Some(BlockLabel::Stop),
            _ => None,
        };
        // find the closing fence
        let mut j = i + 1;
        let mut close = None;
        while j < lines.len() {
            if lines[j].trim() == "```" {
                close = Some(j);
                break;
            }
            j += 1;
        }
        match (label, close) {
            (Some(label), Some(end)) => {
                blocks.push(Block {
                    label,
                    body: lines[i + 1..end].join("\n"),
                    start_line: i,
                    end_line: end,
                });
                i = end + 1;
            }
            (None, Some(end)) => i = end + 1,
            // unterminated fence: treat the rest as prose
            (_, None) => break,
        }
    }
    blocks
}

/// Parses an agent's raw reply into an action for the given black-box kind.
pub fn parse_action(agent_text: &str, kind: BlackBoxKind) -> Result<Action, ProtocolError> {
    let lines: Vec<&str> = agent_text.lines().collect();
    let blocks = scan_blocks(&lines);

    // prose = everything outside action blocks
    let mut inside: Vec<bool> = vec![false; lines.len()];
    for b in &blocks {
        for flag in inside.iter_mut().take(b.end_line + 1).skip(b.start_line) {
            *flag = true;
        }
    }
    let prose: String = lines
        .iter()
        .enumerate()
        .filter(|(i, _)| !inside[*i])
        .map(|(_, l)| *l)
        .collect::<Vec<_>>()
        .join("\n");
    let prose = prose.trim().to_string();
    let analysis = (!prose.is_empty()).then_some(prose.clone());

    let Some(block) = blocks.first() else {
        if prose.is_empty() {
            return Err(ProtocolError::EmptyResponse);
        }
        return Ok(Action::Analyze { text: prose });
    };

    match block.label {
        BlockLabel::Query => Ok(Action::Query {
            payload: parse_query_payload(kind, &block.body)?,
            analysis,
        }),
        BlockLabel::Test => {
            let (payload, proposed) = parse_test_payload(kind, &block.body)?;
            Ok(Action::Test {
                payload,
                proposed,
                analysis,
            })
        }
        BlockLabel::Stop => Ok(Action::Stop { analysis }),
    }
}

/// Renders an action back into the fenced-block text an agent would emit.
/// `parse_action(render_action(a, kind), kind)` reproduces `a`.
pub fn render_action(action: &Action, _kind: BlackBoxKind) -> String {
    let (analysis, block) = match action {
        Action::Query { payload, analysis } => (
            analysis,
            Some(format!("```query\n{}\n```", render_query_payload(payload))),
        ),
        Action::Test {
            payload,
            proposed,
            analysis,
        } => (
            analysis,
            Some(format!(
                "```test\n{}\n```",
                render_test_payload(payload, proposed)
            )),
        ),
        Action::Stop { analysis } => (analysis, Some("```stop\n```".to_string())),
        Action::Analyze { text } => return text.clone(),
    };
    match (analysis, block) {
        (Some(a), Some(b)) => format!("{a}\n{b}"),
        (None, Some(b)) => b,
        _ => unreachable!(),
    }
}
