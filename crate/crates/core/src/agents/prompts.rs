//! Prompt construction for intervention sessions, hypothesis elicitation,
//! and functional prediction.
//!
//! Templates ship with the crate but can be overridden from external files,
//! so prompt variations never require a rebuild. Rendering is pure: the same
//! inputs always yield byte-identical prompts.

use crate::protocol::{render_observation, BlackBoxKind, Observation, StrategyKind};

/// The template set used to drive agents. Each template carries `{slot}`
/// placeholders filled per kind at render time.
#[derive(Debug, Clone)]
pub struct PromptSet {
    pub intervention: String,
    pub descriptive_eval: String,
    pub functional_eval: String,
}

impl Default for PromptSet {
    fn default() -> Self {
        PromptSet {
            intervention: include_str!("../../templates/intervention.txt").to_string(),
            descriptive_eval: include_str!("../../templates/descriptive_eval.txt").to_string(),
            functional_eval: include_str!("../../templates/functional_eval.txt").to_string(),
        }
    }
}

fn kind_information(kind: BlackBoxKind) -> &'static str {
    match kind {
        BlackBoxKind::Program => {
            "The black box implements a deterministic function that takes a list of integers as input and returns a list of integers, or reports that the input is invalid."
        }
        BlackBoxKind::FormalLanguage => {
            "The black box generates strings of symbols according to a hidden rule, and can check whether a given string can be generated by that rule."
        }
        BlackBoxKind::MathEquation => {
            "The black box compares two baskets of goods using a hidden utility function and reports which basket it prefers. Each basket lists the quantity of every kind of goods."
        }
        BlackBoxKind::BoardGame => {
            "The black box runs a two-player board game with a hidden winning condition. Players X and O alternate placing marks on a grid; after each move the black box reports the round number, the updated board, who moved last, and the game status."
        }
    }
}

fn query_instruction(kind: BlackBoxKind) -> &'static str {
    match kind {
        BlackBoxKind::Program => "construct a new input list and query the black box with it",
        BlackBoxKind::FormalLanguage => {
            "construct a string and ask the black box whether it can be generated"
        }
        BlackBoxKind::MathEquation => {
            "construct two baskets and ask the black box which one it prefers"
        }
        BlackBoxKind::BoardGame => {
            "supply a board position together with the cell to play, and observe the resulting board and game status"
        }
    }
}

fn test_instruction(kind: BlackBoxKind) -> &'static str {
    match kind {
        BlackBoxKind::Program => {
            "construct an input list together with the output you expect, and the black box will answer Correct or Incorrect"
        }
        BlackBoxKind::FormalLanguage => {
            "construct a string together with your claim that it is generated or not generated, and the black box will answer Correct or Incorrect"
        }
        BlackBoxKind::MathEquation => {
            "construct two baskets together with the preference you expect, and the black box will answer Correct or Incorrect"
        }
        BlackBoxKind::BoardGame => {
            "supply a board position and a move together with the board you predict to result, and the black box will answer Correct or Incorrect"
        }
    }
}

fn query_format(kind: BlackBoxKind) -> &'static str {
    match kind {
        BlackBoxKind::Program => "List[int]",
        BlackBoxKind::FormalLanguage => "string",
        BlackBoxKind::MathEquation => "Basket1: [float, ...]\nBasket2: [float, ...]",
        BlackBoxKind::BoardGame => "<board rows>\nmove: <row> <col>",
    }
}

fn test_format(kind: BlackBoxKind) -> &'static str {
    match kind {
        BlackBoxKind::Program => "List[int]\nList[int]",
        BlackBoxKind::FormalLanguage => "string\ngenerated|not generated",
        BlackBoxKind::MathEquation => {
            "Basket1: [float, ...]\nBasket2: [float, ...]\nPreference: Basket1|Basket2|equal utility"
        }
        BlackBoxKind::BoardGame => "<board rows>\nmove: <row> <col>\npredict:\n<board rows>",
    }
}

fn rule_instructions(kind: BlackBoxKind) -> &'static str {
    match kind {
        BlackBoxKind::Program => {
            "the transformation the black box applies to its input list; state the rule as pseudocode"
        }
        BlackBoxKind::FormalLanguage => "the formal language that generates the observed strings",
        BlackBoxKind::MathEquation => {
            "the utility function; report the weights and the exponent in the form alpha=[a_1, ...]; rho=r with every value rounded to the first decimal point"
        }
        BlackBoxKind::BoardGame => "the winning condition of the game",
    }
}

fn predict_instructions(kind: BlackBoxKind) -> &'static str {
    match kind {
        BlackBoxKind::Program => {
            "Predict the output of the black box for the following input list. Answer with the output list only, or with `invalid input`.\nInput: {test query}"
        }
        BlackBoxKind::FormalLanguage => {
            "Decide whether the following string can be generated by the black box. Answer `generated` or `not generated`.\nString: {test query}"
        }
        BlackBoxKind::MathEquation => {
            "Predict which basket the black box prefers. Answer `Basket1`, `Basket2`, or `equal utility`.\n{test query}"
        }
        BlackBoxKind::BoardGame => {
            "Predict the black box record after the move below. Answer with the resulting board rows only.\n{test query}"
        }
    }
}

pub fn render_observations(kind: BlackBoxKind, observations: &[Observation]) -> String {
    observations
        .iter()
        .map(|o| render_observation(kind, o))
        .collect::<Vec<_>>()
        .join("\n")
}

fn fill(template: &str, slots: &[(&str, &str)]) -> String {
    let mut out = template.to_string();
    for (name, value) in slots {
        out = out.replace(&format!("{{{name}}}"), value);
    }
    out
}

/// Instantiates the intervention template for one turn.
pub fn render_intervention_prompt(
    prompts: &PromptSet,
    kind: BlackBoxKind,
    observations: &[Observation],
) -> String {
    fill(
        &prompts.intervention,
        &[
            ("black box information", kind_information(kind)),
            ("query instruction", query_instruction(kind)),
            ("test instruction", test_instruction(kind)),
            ("query format", query_format(kind)),
            ("test format", test_format(kind)),
            ("observations", &render_observations(kind, observations)),
        ],
    )
}

/// The reasoning-turn prompt for the non-plain strategies.
pub fn render_strategy_prompt(
    kind: BlackBoxKind,
    strategy: StrategyKind,
    observations: &[Observation],
) -> String {
    let ask = match strategy {
        StrategyKind::Plain => "",
        StrategyKind::Descriptive => {
            "Before your next action, describe your current hypothesis about the black box."
        }
        StrategyKind::Functional => {
            "Before your next action, verbalize your current hypothesis about the black box as a Python program."
        }
        StrategyKind::AnalyzeThenQuery => {
            "Before your next action, analyze the observations so far and verbalize a hypothesis freely."
        }
    };
    format!(
        "{ask}\n\nBelow are your past observations of the black box:\n{}\nResponse:\n",
        render_observations(kind, observations)
    )
}

/// Instantiates the hypothesis-elicitation template.
pub fn render_descriptive_eval_prompt(
    prompts: &PromptSet,
    kind: BlackBoxKind,
    observations: &[Observation],
) -> String {
    fill(
        &prompts.descriptive_eval,
        &[
            ("black box information", kind_information(kind)),
            ("observations", &render_observations(kind, observations)),
            ("more detailed instructions", rule_instructions(kind)),
        ],
    )
}

/// Instantiates the functional-prediction template for one held-out query.
pub fn render_functional_eval_prompt(
    prompts: &PromptSet,
    kind: BlackBoxKind,
    observations: &[Observation],
    test_query: &str,
) -> String {
    let instructions = fill(predict_instructions(kind), &[("test query", test_query)]);
    fill(
        &prompts.functional_eval,
        &[
            ("black box information", kind_information(kind)),
            ("observations", &render_observations(kind, observations)),
            ("more detailed instructions", &instructions),
        ],
    )
}

/// Extracts the text inside a fenced block with the given label
/// (case-insensitive); `None` when no such block exists.
pub fn extract_fenced_block(text: &str, label: &str) -> Option<String> {
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    while i < lines.len() {
        if let Some(block_label) = lines[i].trim().strip_prefix("```") {
            if block_label.trim().eq_ignore_ascii_case(label) {
                let mut body = Vec::new();
                let mut j = i + 1;
                while j < lines.len() && lines[j].trim() != "```" {
                    body.push(lines[j]);
                    j += 1;
                }
                if j < lines.len() {
                    return Some(body.join("\n").trim().to_string());
                }
                return None;
            }
            // skip other fenced blocks entirely
            let mut j = i + 1;
            while j < lines.len() && lines[j].trim() != "```" {
                j += 1;
            }
            i = j + 1;
            continue;
        }
        i += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{Provenance, QueryPayload, ResponsePayload};

    fn sample_obs() -> Vec<Observation> {
        vec![
            Observation {
                query: QueryPayload::IntList {
                    values: vec![1, 2, 3],
                },
                proposed: None,
                response: ResponsePayload::IntList { values: vec![3] },
                provenance: Provenance::Sampled,
                round_index: 0,
            },
            Observation {
                query: QueryPayload::IntList { values: vec![9, 8] },
                proposed: None,
                response: ResponsePayload::InvalidInput,
                provenance: Provenance::Sampled,
                round_index: 1,
            },
        ]
    }

    #[test]
    fn intervention_prompt_contains_the_action_format_section() {
        let prompts = PromptSet::default();
        let text =
            render_intervention_prompt(&prompts, BlackBoxKind::Program, &sample_obs());
        assert!(text.contains("Note that you should only perform one of the actions above"));
        assert!(text.contains("```query\nList[int]\n```"));
        assert!(text.contains("```stop\n```"));
        assert!(text.contains("Input: [1, 2, 3]; Output: [3]"));
        assert!(text.contains("Input: [9, 8]; Output: invalid input"));
        // byte-stable across calls
        let again =
            render_intervention_prompt(&prompts, BlackBoxKind::Program, &sample_obs());
        assert_eq!(text, again);
    }

    #[test]
    fn observations_render_once_each_in_order() {
        let obs = sample_obs();
        let rendered = render_observations(BlackBoxKind::Program, &obs);
        let first = rendered.find("Input: [1, 2, 3]").unwrap();
        let second = rendered.find("Input: [9, 8]").unwrap();
        assert!(first < second);
        assert_eq!(rendered.matches("Input: [1, 2, 3]").count(), 1);
    }

    #[test]
    fn language_observations_use_the_verdict_message() {
        let obs = vec![Observation {
            query: QueryPayload::Text {
                value: "AABB".into(),
            },
            proposed: None,
            response: ResponsePayload::membership(true, "AABB is generated by the black-box"),
            provenance: Provenance::Sampled,
            round_index: 0,
        }];
        let rendered = render_observations(BlackBoxKind::FormalLanguage, &obs);
        assert_eq!(rendered, "AABB is generated by the black-box");
    }

    #[test]
    fn equation_observations_use_the_basket_layout() {
        let obs = vec![Observation {
            query: QueryPayload::BasketPair {
                basket1: vec![1.0, 2.0],
                basket2: vec![2.0, 1.0],
            },
            proposed: None,
            response: ResponsePayload::Preference {
                preference: crate::equation::Preference::Basket1,
            },
            provenance: Provenance::Sampled,
            round_index: 0,
        }];
        let rendered = render_observations(BlackBoxKind::MathEquation, &obs);
        assert_eq!(
            rendered,
            "Basket1: [1, 2];\nBasket2: [2, 1];\nPreference: Basket1"
        );
    }

    #[test]
    fn descriptive_prompt_asks_for_the_rule_fence() {
        let prompts = PromptSet::default();
        let text =
            render_descriptive_eval_prompt(&prompts, BlackBoxKind::Program, &sample_obs());
        assert!(text.contains("Your task is to reverse engineer the rule underlying"));
        assert!(text.contains("```Rule"));
    }

    #[test]
    fn fenced_block_extraction() {
        let text = "chatter\n```Rule\nthe rule\n```\nmore";
        assert_eq!(extract_fenced_block(text, "rule").unwrap(), "the rule");
        assert_eq!(extract_fenced_block("no block", "rule"), None);
        let two = "```output\nfirst\n```\n```Rule\nsecond\n```";
        assert_eq!(extract_fenced_block(two, "rule").unwrap(), "second");
    }
}
