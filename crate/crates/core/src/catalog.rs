//! Instance catalogs for the four black-box families and the sealed
//! `Instance` handle the protocol layer works against.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boardgame::{self, Board, BoardInstance, GameConfig, GameError};
use crate::equation::{self, CesInstance, CesParams, Preference};
use crate::language::LanguageSpec;
use crate::program::ProgramInstance;
use crate::protocol::{
    BlackBoxKind, Observation, ProtocolError, Provenance, QueryPayload, ResponsePayload,
};

/// A sealed, deterministic black box. The hidden ground truth is only exposed
/// through `description()` (for judging) and the instance files.
#[derive(Clone)]
pub enum Instance {
    Program(ProgramInstance),
    Language(&'static LanguageSpec),
    Equation(CesInstance),
    Board(BoardInstance),
}

impl Instance {
    pub fn kind(&self) -> BlackBoxKind {
        match self {
            Instance::Program(_) => BlackBoxKind::Program,
            Instance::Language(_) => BlackBoxKind::FormalLanguage,
            Instance::Equation(_) => BlackBoxKind::MathEquation,
            Instance::Board(_) => BlackBoxKind::BoardGame,
        }
    }

    pub fn instance_id(&self) -> &str {
        match self {
            Instance::Program(p) => &p.instance_id,
            Instance::Language(l) => &l.language_id,
            Instance::Equation(e) => &e.instance_id,
            Instance::Board(b) => &b.instance_id,
        }
    }

    /// Canonical ground-truth description used for judging.
    pub fn description(&self) -> String {
        match self {
            Instance::Program(p) => p.dsl_text.clone(),
            Instance::Language(l) => l.description.clone(),
            Instance::Equation(e) => e.params.render(),
            Instance::Board(b) => b.description(),
        }
    }

    /// Complexity level 1–5 (board games have no complexity grading).
    pub fn complexity(&self) -> Option<u8> {
        match self {
            Instance::Program(p) => Some(p.complexity()),
            Instance::Language(l) => Some(l.complexity()),
            Instance::Equation(e) => Some(e.complexity()),
            Instance::Board(_) => None,
        }
    }

    /// Evaluates a query action. Board-game rule violations come back as
    /// `Refusal` responses (the box explains why), not as errors.
    pub fn evaluate_query(&self, query: &QueryPayload) -> Result<ResponsePayload, ProtocolError> {
        match (self, query) {
            (Instance::Program(p), QueryPayload::IntList { values }) => {
                Ok(match p.evaluate(values) {
                    crate::program::ProgramResponse::ValueList(v) => {
                        ResponsePayload::IntList { values: v }
                    }
                    crate::program::ProgramResponse::InvalidInput => ResponsePayload::InvalidInput,
                })
            }
            (Instance::Language(l), QueryPayload::Text { value }) => {
                let verdict = l.is_member(value);
                Ok(ResponsePayload::Membership {
                    member: verdict.member,
                    message: verdict.message,
                })
            }
            (Instance::Equation(e), QueryPayload::BasketPair { basket1, basket2 }) => {
                Ok(Self::compare_baskets(e, basket1, basket2)
                    .map_or_else(ResponsePayload::refusal, |p| ResponsePayload::Preference {
                        preference: p,
                    }))
            }
            (Instance::Board(b), QueryPayload::BoardMove { board, row, col }) => {
                Ok(Self::board_move(b, board, *row, *col, None).0)
            }
            _ => Err(ProtocolError::MalformedPayload(format!(
                "payload does not match the {} grammar",
                self.kind().name()
            ))),
        }
    }

    /// Evaluates a test action into a Correct/Incorrect verdict.
    pub fn evaluate_test(
        &self,
        query: &QueryPayload,
        proposed: &ResponsePayload,
    ) -> Result<ResponsePayload, ProtocolError> {
        match (self, proposed) {
            (Instance::Program(_), ResponsePayload::IntList { .. })
            | (Instance::Program(_), ResponsePayload::InvalidInput) => {
                let actual = self.evaluate_query(query)?;
                Ok(ResponsePayload::Verdict {
                    correct: actual == *proposed,
                })
            }
            (Instance::Language(_), ResponsePayload::Membership { member, .. }) => {
                let actual = self.evaluate_query(query)?;
                match actual {
                    ResponsePayload::Membership { member: m, .. } => {
                        Ok(ResponsePayload::Verdict { correct: m == *member })
                    }
                    _ => unreachable!("language queries yield membership"),
                }
            }
            (Instance::Equation(_), ResponsePayload::Preference { preference }) => {
                let actual = self.evaluate_query(query)?;
                match actual {
                    ResponsePayload::Preference { preference: p } => {
                        Ok(ResponsePayload::Verdict { correct: p == *preference })
                    }
                    refusal @ ResponsePayload::Refusal { .. } => Ok(refusal),
                    _ => unreachable!("equation queries yield preferences"),
                }
            }
            (Instance::Board(b), ResponsePayload::Board { rows }) => {
                if let QueryPayload::BoardMove { board, row, col } = query {
                    let (response, verdict) =
                        Self::board_move(b, board, *row, *col, Some(&rows.join("\n")));
                    match verdict {
                        Some(correct) => Ok(ResponsePayload::Verdict { correct }),
                        None => Ok(response),
                    }
                } else {
                    Err(ProtocolError::MalformedPayload(
                        "board test needs a board move query".into(),
                    ))
                }
            }
            _ => Err(ProtocolError::MalformedPayload(format!(
                "proposed response does not match the {} grammar",
                self.kind().name()
            ))),
        }
    }

    fn compare_baskets(
        e: &CesInstance,
        basket1: &[f64],
        basket2: &[f64],
    ) -> Result<Preference, String> {
        let n = e.params.n_goods();
        for (name, b) in [("Basket1", basket1), ("Basket2", basket2)] {
            if b.len() != n {
                return Err(format!("{name} must list {n} quantities, got {}", b.len()));
            }
            if b.iter().any(|&q| q < 0.0 || !q.is_finite()) {
                return Err(format!("{name} quantities must be finite and nonnegative"));
            }
        }
        let (pref, _) = equation::compare(&e.params, basket1, basket2, None)
            .map_err(|err| err.to_string())?;
        Ok(pref)
    }

    fn board_move(
        b: &BoardInstance,
        board_rows: &[String],
        row: usize,
        col: usize,
        predicted: Option<&str>,
    ) -> (ResponsePayload, Option<bool>) {
        let lines: Vec<&str> = board_rows.iter().map(String::as_str).collect();
        let board = match Board::parse(&lines) {
            Ok(board) => board,
            Err(e) => return (ResponsePayload::refusal(e.to_string()), None),
        };
        match boardgame::intervene(&b.config, &board, (row, col), predicted) {
            Ok((record, verdict)) => {
                let response = ResponsePayload::GameRecord {
                    round: record.round,
                    board: record.board.lines().map(str::to_string).collect(),
                    last_mover: record.last_mover,
                    status: record.status.render().to_string(),
                };
                (response, verdict)
            }
            Err(e @ (GameError::IllegalGrid(_)
            | GameError::IllegalPlacement(_)
            | GameError::OccupiedCell(..)
            | GameError::GameOver)) => (ResponsePayload::refusal(e.to_string()), None),
        }
    }

    /// Draws `n` passive observations per the kind's sampling law.
    pub fn sample_observations(&self, n: usize, stream_seed: u64) -> Vec<Observation> {
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
        match self {
            Instance::Program(p) => (0..n)
                .map(|i| {
                    let input = p.sample_input(&mut rng);
                    let query = QueryPayload::IntList { values: input };
                    let response = self.evaluate_query(&query).expect("valid sampled query");
                    sampled(query, response, i)
                })
                .collect(),
            Instance::Language(l) => (0..n)
                .map(|i| {
                    let s = l.generate_with_rng(&mut rng);
                    let query = QueryPayload::Text { value: s };
                    let response = self.evaluate_query(&query).expect("valid sampled query");
                    sampled(query, response, i)
                })
                .collect(),
            Instance::Equation(e) => (0..n)
                .map(|i| {
                    let (b1, b2, pref) = e.sample_comparison(&mut rng);
                    sampled(
                        QueryPayload::BasketPair {
                            basket1: b1,
                            basket2: b2,
                        },
                        ResponsePayload::Preference { preference: pref },
                        i,
                    )
                })
                .collect(),
            Instance::Board(b) => b
                .sample_trajectory(n, &mut rng)
                .into_iter()
                .enumerate()
                .map(|(i, (before, cell, record))| {
                    sampled(
                        QueryPayload::BoardMove {
                            board: before.render().lines().map(str::to_string).collect(),
                            row: cell.0,
                            col: cell.1,
                        },
                        ResponsePayload::GameRecord {
                            round: record.round,
                            board: record.board.lines().map(str::to_string).collect(),
                            last_mover: record.last_mover,
                            status: record.status.render().to_string(),
                        },
                        i,
                    )
                })
                .collect(),
        }
    }

    /// A random valid query payload, used by scripted agents.
    pub fn random_probe(&self, rng: &mut ChaCha8Rng) -> QueryPayload {
        match self {
            Instance::Program(p) => QueryPayload::IntList {
                values: p.sample_input(rng),
            },
            Instance::Language(l) => QueryPayload::Text {
                value: l.random_probe(rng),
            },
            Instance::Equation(e) => {
                let n = e.params.n_goods();
                let draw =
                    |rng: &mut ChaCha8Rng| (0..n).map(|_| rng.gen::<f64>() * 100.0).collect();
                QueryPayload::BasketPair {
                    basket1: draw(rng),
                    basket2: draw(rng),
                }
            }
            Instance::Board(b) => {
                // a short random legal position plus a random empty cell
                let cfg = &b.config;
                let mut board = Board::empty(cfg);
                let plies = rng.gen_range(0..=2usize.min(cfg.rows * cfg.cols - 1));
                let mut mark = 'X';
                for _ in 0..plies {
                    let (r, c) = (rng.gen_range(0..cfg.rows), rng.gen_range(0..cfg.cols));
                    if board.get(r, c) == '.' {
                        board.set(r, c, mark);
                        mark = if mark == 'X' { 'O' } else { 'X' };
                    }
                }
                let empties: Vec<(usize, usize)> = (0..cfg.rows)
                    .flat_map(|r| (0..cfg.cols).map(move |c| (r, c)))
                    .filter(|&(r, c)| board.get(r, c) == '.')
                    .collect();
                let (row, col) = empties[rng.gen_range(0..empties.len())];
                QueryPayload::BoardMove {
                    board: board.render().lines().map(str::to_string).collect(),
                    row,
                    col,
                }
            }
        }
    }

    /// A random valid proposed response for a test of `query`.
    pub fn random_proposed(&self, query: &QueryPayload, rng: &mut ChaCha8Rng) -> ResponsePayload {
        match self {
            Instance::Program(p) => {
                if rng.gen_bool(0.2) {
                    ResponsePayload::InvalidInput
                } else {
                    ResponsePayload::IntList {
                        values: p.sample_input(rng),
                    }
                }
            }
            Instance::Language(_) => ResponsePayload::membership(rng.gen_bool(0.5), ""),
            Instance::Equation(_) => ResponsePayload::Preference {
                preference: if rng.gen_bool(0.5) {
                    Preference::Basket1
                } else {
                    Preference::Basket2
                },
            },
            Instance::Board(_) => match query {
                QueryPayload::BoardMove { board, .. } => {
                    ResponsePayload::Board { rows: board.clone() }
                }
                _ => ResponsePayload::Board { rows: vec![".".into()] },
            },
        }
    }
}

impl ResponsePayload {
    pub fn refusal(message: impl Into<String>) -> ResponsePayload {
        ResponsePayload::Refusal {
            message: message.into(),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
struct ProgramRecord {
    instance_id: String,
    dsl_text: String,
    op_count: u32,
}

#[derive(Debug, Deserialize, Serialize)]
struct ProgramFile {
    version: u32,
    instances: Vec<ProgramRecord>,
}

#[derive(Debug, Deserialize, Serialize)]
struct CesRecord {
    instance_id: String,
    alpha_tenths: Vec<u8>,
    rho_tenths: u8,
    n_goods: usize,
}

#[derive(Debug, Deserialize, Serialize)]
struct CesFile {
    version: u32,
    instances: Vec<CesRecord>,
}

#[derive(Debug, Deserialize, Serialize)]
struct BoardRecord {
    instance_id: String,
    rows: usize,
    cols: usize,
    row_win: Option<usize>,
    col_win: Option<usize>,
    diag_win: Option<usize>,
}

#[derive(Debug, Deserialize, Serialize)]
struct BoardFile {
    version: u32,
    instances: Vec<BoardRecord>,
}

/// The built-in instance catalogs, loaded from the data files shipped with
/// the crate.
pub struct Catalog {
    programs: Vec<ProgramInstance>,
    languages: &'static [LanguageSpec],
    equations: Vec<CesInstance>,
    boards: Vec<BoardInstance>,
}

impl Catalog {
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            let programs: ProgramFile =
                serde_json::from_str(include_str!("../data/programs.json"))
                    .expect("valid programs.json");
            let equations: CesFile = serde_json::from_str(include_str!("../data/equations.json"))
                .expect("valid equations.json");
            let boards: BoardFile = serde_json::from_str(include_str!("../data/boards.json"))
                .expect("valid boards.json");
            Catalog {
                programs: programs
                    .instances
                    .into_iter()
                    .map(|r| {
                        let inst = ProgramInstance::new(&r.instance_id, &r.dsl_text)
                            .unwrap_or_else(|e| panic!("{}: {e}", r.instance_id));
                        assert_eq!(
                            inst.op_count, r.op_count,
                            "{}: recorded op_count disagrees with the parser",
                            r.instance_id
                        );
                        inst
                    })
                    .collect(),
                languages: crate::language::language_catalog(),
                equations: equations
                    .instances
                    .into_iter()
                    .map(|r| {
                        assert_eq!(r.n_goods, r.alpha_tenths.len(), "{}", r.instance_id);
                        CesInstance {
                            instance_id: r.instance_id.clone(),
                            params: CesParams::new(r.alpha_tenths, r.rho_tenths)
                                .unwrap_or_else(|e| panic!("{}: {e}", r.instance_id)),
                        }
                    })
                    .collect(),
                boards: boards
                    .instances
                    .into_iter()
                    .map(|r| BoardInstance {
                        config: GameConfig::new(r.rows, r.cols, r.row_win, r.col_win, r.diag_win)
                            .unwrap_or_else(|e| panic!("{}: {e}", r.instance_id)),
                        instance_id: r.instance_id,
                    })
                    .collect(),
            }
        })
    }

    pub fn instances(&self, kind: BlackBoxKind) -> Vec<Instance> {
        match kind {
            BlackBoxKind::Program => self.programs.iter().cloned().map(Instance::Program).collect(),
            BlackBoxKind::FormalLanguage => {
                self.languages.iter().map(Instance::Language).collect()
            }
            BlackBoxKind::MathEquation => {
                self.equations.iter().cloned().map(Instance::Equation).collect()
            }
            BlackBoxKind::BoardGame => self.boards.iter().cloned().map(Instance::Board).collect(),
        }
    }

    pub fn get(&self, kind: BlackBoxKind, instance_id: &str) -> Option<Instance> {
        self.instances(kind)
            .into_iter()
            .find(|i| i.instance_id() == instance_id)
    }

    /// Looks an instance up by id across all kinds.
    pub fn find(&self, instance_id: &str) -> Option<Instance> {
        BlackBoxKind::ALL
            .iter()
            .find_map(|&k| self.get(k, instance_id))
    }

    pub fn programs(&self) -> &[ProgramInstance] {
        &self.programs
    }

    pub fn languages(&self) -> &'static [LanguageSpec] {
        self.languages
    }

    pub fn equations(&self) -> &[CesInstance] {
        &self.equations
    }

    pub fn boards(&self) -> &[BoardInstance] {
        &self.boards
    }
}

fn sampled(query: QueryPayload, response: ResponsePayload, i: usize) -> Observation {
    Observation {
        query,
        proposed: None,
        response,
        provenance: Provenance::Sampled,
        round_index: i as u32,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_loads() {
        let cat = Catalog::builtin();
        assert_eq!(cat.programs().len(), 100);
        assert_eq!(cat.languages().len(), 46);
        assert!(cat.equations().len() >= 20);
        assert!(cat.boards().len() >= 10);
    }

    #[test]
    fn program_catalog_covers_all_complexity_levels() {
        let cat = Catalog::builtin();
        for level in 1..=5u8 {
            assert!(
                cat.programs().iter().any(|p| p.complexity() == level),
                "no program at complexity {level}"
            );
        }
        // the reference third-element program ships in the catalog
        assert!(cat
            .programs()
            .iter()
            .any(|p| p.dsl_text == "(lambda (singleton (third $0)))"));
    }

    #[test]
    fn equation_catalog_covers_all_good_counts() {
        let cat = Catalog::builtin();
        for n in 2..=6usize {
            assert!(
                cat.equations().iter().any(|e| e.params.n_goods() == n),
                "no CES instance with {n} goods"
            );
        }
        // the reference instance ships in the catalog
        assert!(cat
            .equations()
            .iter()
            .any(|e| e.params.render() == "alpha=[0.1, 0.1, 0.4, 0.4]; rho=0.4"));
    }

    #[test]
    fn ids_are_unique_across_kinds() {
        let cat = Catalog::builtin();
        let mut ids: Vec<String> = BlackBoxKind::ALL
            .iter()
            .flat_map(|&k| cat.instances(k))
            .map(|i| i.instance_id().to_string())
            .collect();
        let total = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), total);
    }

    #[test]
    fn refusals_instead_of_errors_for_rule_violations() {
        let cat = Catalog::builtin();
        let board = cat.instances(BlackBoxKind::BoardGame).remove(0);
        let query = QueryPayload::BoardMove {
            board: vec!["...".into()],
            row: 0,
            col: 0,
        };
        // wrong board shape for the instance
        match board.evaluate_query(&query).unwrap() {
            ResponsePayload::Refusal { .. } => {}
            other => panic!("expected refusal, got {other:?}"),
        }

        let ces = cat.instances(BlackBoxKind::MathEquation).remove(0);
        let query = QueryPayload::BasketPair {
            basket1: vec![1.0],
            basket2: vec![2.0],
        };
        match ces.evaluate_query(&query).unwrap() {
            ResponsePayload::Refusal { .. } => {}
            other => panic!("expected refusal, got {other:?}"),
        }
    }
}
