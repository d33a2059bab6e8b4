//! Kind-specific query/response payloads and their text grammars.
//!
//! Each black-box kind fixes how action payloads are written inside fenced
//! blocks and how observations are rendered into prompt lines.

use serde::{Deserialize, Serialize};

use super::{BlackBoxKind, Observation, ProtocolError};
use crate::equation::{parse_basket, render_basket, Preference};
use crate::program::{parse_int_list, render_int_list};

/// Query strings longer than this are rejected at parse time.
pub const MAX_TEXT_QUERY_LEN: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum QueryPayload {
    /// Program input list.
    IntList { values: Vec<i64> },
    /// Formal-language string.
    Text { value: String },
    /// CES basket pair.
    BasketPair { basket1: Vec<f64>, basket2: Vec<f64> },
    /// Board position plus the cell to play (the mover follows from the
    /// piece counts).
    BoardMove {
        board: Vec<String>,
        row: usize,
        col: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ResponsePayload {
    IntList { values: Vec<i64> },
    InvalidInput,
    Membership { member: bool, message: String },
    Preference { preference: Preference },
    GameRecord {
        round: usize,
        board: Vec<String>,
        last_mover: char,
        status: String,
    },
    /// A predicted board, used as the proposed response of board tests.
    Board { rows: Vec<String> },
    /// Correct/Incorrect feedback for a test action.
    Verdict { correct: bool },
    /// The black box declined the exchange and explains why.
    Refusal { message: String },
}

impl ResponsePayload {
    pub fn membership(member: bool, message: impl Into<String>) -> Self {
        ResponsePayload::Membership {
            member,
            message: message.into(),
        }
    }
}

fn malformed(msg: impl Into<String>) -> ProtocolError {
    ProtocolError::MalformedPayload(msg.into())
}

/// Parses the body of a `query` block for the given kind.
pub fn parse_query_payload(kind: BlackBoxKind, body: &str) -> Result<QueryPayload, ProtocolError> {
    let lines: Vec<&str> = body.lines().map(str::trim).collect();
    match kind {
        BlackBoxKind::Program => {
            let line = nonempty_line(&lines, 0, "an integer list like [1, 2, 3]")?;
            let values = parse_int_list(line)
                .ok_or_else(|| malformed(format!("`{line}` is not an integer list")))?;
            Ok(QueryPayload::IntList { values })
        }
        BlackBoxKind::FormalLanguage => {
            let value = lines.first().copied().unwrap_or("").to_string();
            if value.len() > MAX_TEXT_QUERY_LEN {
                return Err(malformed(format!(
                    "query string exceeds {MAX_TEXT_QUERY_LEN} characters"
                )));
            }
            Ok(QueryPayload::Text { value })
        }
        BlackBoxKind::MathEquation => {
            let b1 = nonempty_line(&lines, 0, "Basket1: [..]")?;
            let b2 = nonempty_line(&lines, 1, "Basket2: [..]")?;
            let basket1 =
                parse_basket(b1).ok_or_else(|| malformed(format!("`{b1}` is not a basket")))?;
            let basket2 =
                parse_basket(b2).ok_or_else(|| malformed(format!("`{b2}` is not a basket")))?;
            Ok(QueryPayload::BasketPair { basket1, basket2 })
        }
        BlackBoxKind::BoardGame => parse_board_move(&lines),
    }
}

/// Parses the body of a `test` block: the query payload plus a proposed
/// response.
pub fn parse_test_payload(
    kind: BlackBoxKind,
    body: &str,
) -> Result<(QueryPayload, ResponsePayload), ProtocolError> {
    let lines: Vec<&str> = body.lines().map(str::trim).collect();
    match kind {
        BlackBoxKind::Program => {
            let input = nonempty_line(&lines, 0, "an input list")?;
            let output = nonempty_line(&lines, 1, "an output list or `invalid input`")?;
            let values = parse_int_list(input)
                .ok_or_else(|| malformed(format!("`{input}` is not an integer list")))?;
            let proposed = if output.eq_ignore_ascii_case("invalid input") {
                ResponsePayload::InvalidInput
            } else {
                ResponsePayload::IntList {
                    values: parse_int_list(output).ok_or_else(|| {
                        malformed(format!("`{output}` is not an output list"))
                    })?,
                }
            };
            Ok((QueryPayload::IntList { values }, proposed))
        }
        BlackBoxKind::FormalLanguage => {
            let value = lines.first().copied().unwrap_or("").to_string();
            if value.len() > MAX_TEXT_QUERY_LEN {
                return Err(malformed(format!(
                    "query string exceeds {MAX_TEXT_QUERY_LEN} characters"
                )));
            }
            let verdict = nonempty_line(&lines, 1, "`generated` or `not generated`")?;
            let member = match verdict.to_ascii_lowercase().as_str() {
                "generated" => true,
                "not generated" => false,
                other => {
                    return Err(malformed(format!(
                        "`{other}` is not `generated` or `not generated`"
                    )))
                }
            };
            Ok((
                QueryPayload::Text { value },
                ResponsePayload::membership(member, ""),
            ))
        }
        BlackBoxKind::MathEquation => {
            let b1 = nonempty_line(&lines, 0, "Basket1: [..]")?;
            let b2 = nonempty_line(&lines, 1, "Basket2: [..]")?;
            let pref = nonempty_line(&lines, 2, "a predicted preference")?;
            let basket1 =
                parse_basket(b1).ok_or_else(|| malformed(format!("`{b1}` is not a basket")))?;
            let basket2 =
                parse_basket(b2).ok_or_else(|| malformed(format!("`{b2}` is not a basket")))?;
            let pref_text = pref
                .strip_prefix("Preference:")
                .map(str::trim)
                .unwrap_or(pref);
            let preference = Preference::parse(pref_text)
                .ok_or_else(|| malformed(format!("`{pref}` is not a preference")))?;
            Ok((
                QueryPayload::BasketPair { basket1, basket2 },
                ResponsePayload::Preference { preference },
            ))
        }
        BlackBoxKind::BoardGame => {
            let split = lines
                .iter()
                .position(|l| l.eq_ignore_ascii_case("predict:"))
                .ok_or_else(|| malformed("board test needs a `predict:` section"))?;
            let query = parse_board_move(&lines[..split])?;
            let rows: Vec<String> = lines[split + 1..]
                .iter()
                .filter(|l| !l.is_empty())
                .map(|l| l.to_string())
                .collect();
            if rows.is_empty() {
                return Err(malformed("predicted board is empty"));
            }
            if !rows
                .iter()
                .all(|r| r.chars().all(|c| matches!(c, '.' | 'X' | 'O')))
            {
                return Err(malformed("predicted board may only contain `.`, `X`, `O`"));
            }
            Ok((query, ResponsePayload::Board { rows }))
        }
    }
}

fn nonempty_line<'a>(
    lines: &[&'a str],
    index: usize,
    what: &str,
) -> Result<&'a str, ProtocolError> {
    lines
        .get(index)
        .copied()
        .filter(|l| !l.is_empty())
        .ok_or_else(|| malformed(format!("expected {what} on line {}", index + 1)))
}

fn parse_board_move(lines: &[&str]) -> Result<QueryPayload, ProtocolError> {
    let move_pos = lines
        .iter()
        .position(|l| l.to_ascii_lowercase().starts_with("move:"))
        .ok_or_else(|| malformed("board query needs a `move: <row> <col>` line"))?;
    let board: Vec<String> = lines[..move_pos]
        .iter()
        .filter(|l| !l.is_empty())
        .map(|l| l.to_string())
        .collect();
    if board.is_empty() {
        return Err(malformed("board query needs board rows before `move:`"));
    }
    if !board
        .iter()
        .all(|r| r.chars().all(|c| matches!(c, '.' | 'X' | 'O')))
    {
        return Err(malformed("board rows may only contain `.`, `X`, `O`"));
    }
    let coords: Vec<&str> = lines[move_pos]
        .splitn(2, ':')
        .nth(1)
        .unwrap_or("")
        .split_whitespace()
        .collect();
    if coords.len() != 2 {
        return Err(malformed("`move:` takes exactly a row and a column"));
    }
    let row = coords[0]
        .parse()
        .map_err(|_| malformed(format!("`{}` is not a row index", coords[0])))?;
    let col = coords[1]
        .parse()
        .map_err(|_| malformed(format!("`{}` is not a column index", coords[1])))?;
    Ok(QueryPayload::BoardMove { board, row, col })
}

/// Renders a query payload as fenced-block body text.
pub fn render_query_payload(payload: &QueryPayload) -> String {
    match payload {
        QueryPayload::IntList { values } => render_int_list(values),
        QueryPayload::Text { value } => value.clone(),
        QueryPayload::BasketPair { basket1, basket2 } => format!(
            "Basket1: {}\nBasket2: {}",
            render_basket(basket1),
            render_basket(basket2)
        ),
        QueryPayload::BoardMove { board, row, col } => {
            format!("{}\nmove: {row} {col}", board.join("\n"))
        }
    }
}

/// Renders a test payload (query plus proposed response) as block body text.
pub fn render_test_payload(query: &QueryPayload, proposed: &ResponsePayload) -> String {
    let proposed_text = match proposed {
        ResponsePayload::IntList { values } => render_int_list(values),
        ResponsePayload::InvalidInput => "invalid input".to_string(),
        ResponsePayload::Membership { member, .. } => {
            if *member {
                "generated".to_string()
            } else {
                "not generated".to_string()
            }
        }
        ResponsePayload::Preference { preference } => {
            format!("Preference: {}", preference.render())
        }
        ResponsePayload::Board { rows } => format!("predict:\n{}", rows.join("\n")),
        other => format!("{other:?}"),
    };
    format!("{}\n{proposed_text}", render_query_payload(query))
}

/// Renders one observation as the prompt line(s) shown to agents.
pub fn render_observation(kind: BlackBoxKind, obs: &Observation) -> String {
    match kind {
        BlackBoxKind::Program => {
            let input = render_query_payload(&obs.query);
            match (&obs.proposed, &obs.response) {
                (Some(p), ResponsePayload::Verdict { correct }) => format!(
                    "Input: {input}; Output: {} => {}",
                    proposed_text(p),
                    verdict_text(*correct)
                ),
                (_, ResponsePayload::IntList { values }) => {
                    format!("Input: {input}; Output: {}", render_int_list(values))
                }
                (_, ResponsePayload::InvalidInput) => {
                    format!("Input: {input}; Output: invalid input")
                }
                (_, other) => format!("Input: {input}; Output: {other:?}"),
            }
        }
        BlackBoxKind::FormalLanguage => match (&obs.proposed, &obs.response) {
            (Some(p), ResponsePayload::Verdict { correct }) => {
                let q = render_query_payload(&obs.query);
                format!(
                    "{q} proposed {} => {}",
                    proposed_text(p),
                    verdict_text(*correct)
                )
            }
            (_, ResponsePayload::Membership { message, .. }) => message.clone(),
            (_, other) => format!("{other:?}"),
        },
        BlackBoxKind::MathEquation => {
            let (b1, b2) = match &obs.query {
                QueryPayload::BasketPair { basket1, basket2 } => (basket1, basket2),
                _ => return format!("{obs:?}"),
            };
            match (&obs.proposed, &obs.response) {
                (Some(p), ResponsePayload::Verdict { correct }) => format!(
                    "Basket1: {};\nBasket2: {};\nPredicted: {} => {}",
                    render_basket(b1),
                    render_basket(b2),
                    proposed_text(p),
                    verdict_text(*correct)
                ),
                (_, ResponsePayload::Preference { preference }) => {
                    crate::equation::render_comparison(b1, b2, *preference)
                }
                (_, ResponsePayload::Refusal { message }) => format!("Refused: {message}"),
                (_, other) => format!("{other:?}"),
            }
        }
        BlackBoxKind::BoardGame => match &obs.response {
            ResponsePayload::GameRecord {
                round,
                board,
                last_mover,
                status,
            } => format!(
                "round: {round}\nboard:\n{}\nlast: {last_mover}\nstatus: {status}",
                board.join("\n")
            ),
            ResponsePayload::Verdict { correct } => {
                format!("prediction => {}", verdict_text(*correct))
            }
            ResponsePayload::Refusal { message } => format!("Refused: {message}"),
            other => format!("{other:?}"),
        },
    }
}

fn proposed_text(p: &ResponsePayload) -> String {
    match p {
        ResponsePayload::IntList { values } => render_int_list(values),
        ResponsePayload::InvalidInput => "invalid input".to_string(),
        ResponsePayload::Membership { member, .. } => {
            if *member {
                "generated".to_string()
            } else {
                "not generated".to_string()
            }
        }
        ResponsePayload::Preference { preference } => preference.render().to_string(),
        ResponsePayload::Board { rows } => rows.join("\n"),
        other => format!("{other:?}"),
    }
}

fn verdict_text(correct: bool) -> &'static str {
    if correct {
        "Correct"
    } else {
        "Incorrect"
    }
}
