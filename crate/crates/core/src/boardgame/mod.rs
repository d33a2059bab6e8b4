//! The connect-n board game black box.
//!
//! An instance is a rule set: board dimensions plus the run lengths required
//! to win along rows, columns, and diagonals (each direction can be disabled).
//! Queries supply a board and a move; the response is the updated board, the
//! last mover, and the game status. Observation data comes from greedy
//! self-play.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("illegal grid: {0}")]
    IllegalGrid(String),
    #[error("cell ({0}, {1}) is occupied")]
    OccupiedCell(usize, usize),
    #[error("illegal placement: {0}")]
    IllegalPlacement(String),
    #[error("the game is already over")]
    GameOver,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    X,
    O,
}

impl Player {
    pub fn mark(self) -> char {
        match self {
            Player::X => 'X',
            Player::O => 'O',
        }
    }

    pub fn other(self) -> Player {
        match self {
            Player::X => Player::O,
            Player::O => Player::X,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ongoing,
    Draw,
    PlayerXWins,
    PlayerOWins,
}

impl Status {
    pub fn render(self) -> &'static str {
        match self {
            Status::Ongoing => "ongoing",
            Status::Draw => "draw",
            Status::PlayerXWins => "PlayerX_wins",
            Status::PlayerOWins => "PlayerO_wins",
        }
    }
}

/// Rule set for one game instance. Win lengths are `None` when that direction
/// does not count toward winning.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameConfig {
    pub rows: usize,
    pub cols: usize,
    pub row_win: Option<usize>,
    pub col_win: Option<usize>,
    pub diag_win: Option<usize>,
}

impl GameConfig {
    pub fn new(
        rows: usize,
        cols: usize,
        row_win: Option<usize>,
        col_win: Option<usize>,
        diag_win: Option<usize>,
    ) -> Result<Self, GameError> {
        if !(2..=9).contains(&rows) || !(2..=9).contains(&cols) {
            return Err(GameError::IllegalGrid(format!(
                "board must be between 2x2 and 9x9, got {rows}x{cols}"
            )));
        }
        let max_dim = rows.max(cols);
        for (name, w) in [("row", row_win), ("column", col_win), ("diagonal", diag_win)] {
            if let Some(w) = w {
                if w < 2 || w > max_dim {
                    return Err(GameError::IllegalGrid(format!(
                        "{name} win length {w} outside [2, {max_dim}]"
                    )));
                }
            }
        }
        if row_win.is_none() && col_win.is_none() && diag_win.is_none() {
            return Err(GameError::IllegalGrid("no win direction enabled".into()));
        }
        Ok(GameConfig {
            rows,
            cols,
            row_win,
            col_win,
            diag_win,
        })
    }

    /// Natural-language rule, the judging ground truth for this instance.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(w) = self.row_win {
            parts.push(format!("{w} in a row horizontally"));
        }
        if let Some(w) = self.col_win {
            parts.push(format!("{w} in a column vertically"));
        }
        if let Some(w) = self.diag_win {
            parts.push(format!("{w} along a diagonal"));
        }
        format!(
            "{}x{} board; win by connecting {}",
            self.rows,
            self.cols,
            parts.join(" or ")
        )
    }
}

/// A board: row-major cells of `.`, `X`, `O`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Board {
    pub rows: usize,
    pub cols: usize,
    cells: Vec<char>,
}

impl Board {
    pub fn empty(config: &GameConfig) -> Board {
        Board {
            rows: config.rows,
            cols: config.cols,
            cells: vec!['.'; config.rows * config.cols],
        }
    }

    /// Parses row-major rendering lines; every row must have the same width.
    pub fn parse(lines: &[&str]) -> Result<Board, GameError> {
        if lines.is_empty() {
            return Err(GameError::IllegalGrid("empty board".into()));
        }
        let cols = lines[0].chars().count();
        let mut cells = Vec::new();
        for line in lines {
            if line.chars().count() != cols {
                return Err(GameError::IllegalGrid("ragged board rows".into()));
            }
            for c in line.chars() {
                if !matches!(c, '.' | 'X' | 'O') {
                    return Err(GameError::IllegalGrid(format!("bad cell `{c}`")));
                }
                cells.push(c);
            }
        }
        Ok(Board {
            rows: lines.len(),
            cols,
            cells,
        })
    }

    pub fn get(&self, r: usize, c: usize) -> char {
        self.cells[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, mark: char) {
        self.cells[r * self.cols + c] = mark;
    }

    pub fn count(&self, mark: char) -> usize {
        self.cells.iter().filter(|&&c| c == mark).count()
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(|&c| c != '.')
    }

    /// The exact rendering used as the prediction-equality surface.
    pub fn render(&self) -> String {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c))
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Number of moves played so far.
    pub fn round(&self) -> usize {
        self.count('X') + self.count('O')
    }

    /// X always moves first, so the side to move follows the piece counts.
    pub fn to_move(&self) -> Player {
        if self.count('X') == self.count('O') {
            Player::X
        } else {
            Player::O
        }
    }
}

fn has_run(board: &Board, mark: char, len: usize, dr: isize, dc: isize) -> bool {
    for r in 0..board.rows {
        for c in 0..board.cols {
            let mut ok = true;
            for i in 0..len {
                let rr = r as isize + dr * i as isize;
                let cc = c as isize + dc * i as isize;
                if rr < 0
                    || cc < 0
                    || rr >= board.rows as isize
                    || cc >= board.cols as isize
                    || board.get(rr as usize, cc as usize) != mark
                {
                    ok = false;
                    break;
                }
            }
            if ok {
                return true;
            }
        }
    }
    false
}

fn wins(config: &GameConfig, board: &Board, mark: char) -> bool {
    if let Some(w) = config.row_win {
        if has_run(board, mark, w, 0, 1) {
            return true;
        }
    }
    if let Some(w) = config.col_win {
        if has_run(board, mark, w, 1, 0) {
            return true;
        }
    }
    if let Some(w) = config.diag_win {
        // both diagonal orientations count
        if has_run(board, mark, w, 1, 1) || has_run(board, mark, w, 1, -1) {
            return true;
        }
    }
    false
}

/// Status of a grid under the rule set. Grids violating the piece-count
/// invariant (or where both players hold winning runs) are illegal.
pub fn evaluate_status(config: &GameConfig, board: &Board) -> Result<Status, GameError> {
    if board.rows != config.rows || board.cols != config.cols {
        return Err(GameError::IllegalGrid(format!(
            "expected a {}x{} board",
            config.rows, config.cols
        )));
    }
    let x = board.count('X');
    let o = board.count('O');
    if x.abs_diff(o) > 1 {
        return Err(GameError::IllegalGrid(format!(
            "piece counts differ by more than one (X={x}, O={o})"
        )));
    }
    let x_wins = wins(config, board, 'X');
    let o_wins = wins(config, board, 'O');
    match (x_wins, o_wins) {
        (true, true) => Err(GameError::IllegalGrid(
            "both players hold winning runs".into(),
        )),
        (true, false) => Ok(Status::PlayerXWins),
        (false, true) => Ok(Status::PlayerOWins),
        (false, false) => {
            if board.is_full() {
                Ok(Status::Draw)
            } else {
                Ok(Status::Ongoing)
            }
        }
    }
}

/// Deterministic greedy move: first (row-major) immediately winning cell,
/// else the first cell blocking an opponent's immediate win, else the first
/// empty cell.
pub fn greedy_policy(config: &GameConfig, board: &Board) -> Result<(usize, usize), GameError> {
    if evaluate_status(config, board)? != Status::Ongoing {
        return Err(GameError::GameOver);
    }
    let mover = board.to_move();
    let candidates: Vec<(usize, usize)> = (0..board.rows)
        .flat_map(|r| (0..board.cols).map(move |c| (r, c)))
        .filter(|&(r, c)| board.get(r, c) == '.')
        .collect();
    for &(r, c) in &candidates {
        let mut b = board.clone();
        b.set(r, c, mover.mark());
        if wins(config, &b, mover.mark()) {
            return Ok((r, c));
        }
    }
    for &(r, c) in &candidates {
        let mut b = board.clone();
        b.set(r, c, mover.other().mark());
        if wins(config, &b, mover.other().mark()) {
            return Ok((r, c));
        }
    }
    Ok(candidates[0])
}

/// Structured record returned for every board-game exchange.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub round: usize,
    pub board: String,
    pub last_mover: char,
    pub status: Status,
}

/// Applies a move to a supplied position and reports the outcome; when a
/// predicted board is given the verdict says whether it matches exactly.
pub fn intervene(
    config: &GameConfig,
    board: &Board,
    cell: (usize, usize),
    predicted_board: Option<&str>,
) -> Result<(MoveRecord, Option<bool>), GameError> {
    let status = evaluate_status(config, board).map_err(|e| match e {
        GameError::IllegalGrid(m) => GameError::IllegalPlacement(m),
        other => other,
    })?;
    if status != Status::Ongoing {
        return Err(GameError::GameOver);
    }
    let (r, c) = cell;
    if r >= config.rows || c >= config.cols {
        return Err(GameError::IllegalPlacement(format!(
            "cell ({r}, {c}) outside the {}x{} board",
            config.rows, config.cols
        )));
    }
    if board.get(r, c) != '.' {
        return Err(GameError::OccupiedCell(r, c));
    }
    let mover = board.to_move();
    let mut next = board.clone();
    next.set(r, c, mover.mark());
    let record = MoveRecord {
        round: next.round(),
        board: next.render(),
        last_mover: mover.mark(),
        status: evaluate_status(config, &next)?,
    };
    let verdict = predicted_board.map(|p| p == record.board);
    Ok((record, verdict))
}

/// One sealed board-game instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoardInstance {
    pub instance_id: String,
    pub config: GameConfig,
}

impl BoardInstance {
    pub fn description(&self) -> String {
        self.config.describe()
    }

    /// Observation sampling: greedy self-play trajectories. The first game
    /// starts from the empty board; later games open with one seeded random
    /// ply so repeated sampling is not a single repeated game.
    pub fn sample_trajectory(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<(Board, (usize, usize), MoveRecord)> {
        let mut out = Vec::with_capacity(n);
        let mut board = Board::empty(&self.config);
        while out.len() < n {
            if evaluate_status(&self.config, &board).map(|s| s != Status::Ongoing).unwrap_or(true) {
                board = Board::empty(&self.config);
                let r = rng.gen_range(0..self.config.rows);
                let c = rng.gen_range(0..self.config.cols);
                board.set(r, c, 'X');
                continue;
            }
            let cell = greedy_policy(&self.config, &board).expect("ongoing game has a move");
            let before = board.clone();
            let (record, _) = intervene(&self.config, &board, cell, None).expect("legal greedy move");
            board = Board::parse(&record.board.lines().collect::<Vec<_>>()).expect("rendered board");
            out.push((before, cell, record));
        }
        out
    }
}

pub fn render_move_record(record: &MoveRecord) -> String {
    format!(
        "round: {}\nboard:\n{}\nlast: {}\nstatus: {}",
        record.round,
        record.board,
        record.last_mover,
        record.status.render()
    )
}
