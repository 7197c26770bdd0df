//! The four pebble games: move rules, strategy validation, duality, and the
//! exhaustive price / time searches.

mod sample;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graphs::{Dag, Vertex};

pub use sample::{random_black_strategy, random_reversible_strategy};
pub use search::{
    min_time_with_space, pebbling_price, price_with_witness, tradeoff_frontier, FrontierPoint, SearchOptions,
    TimeResult, DEFAULT_CAP_BW, HARD_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameVariant {
    Black,
    White,
    BlackWhite,
    Reversible,
}

impl GameVariant {
    pub const ALL: [GameVariant; 4] = [GameVariant::Black, GameVariant::White, GameVariant::BlackWhite, GameVariant::Reversible];

    pub fn allows(self, color: Color) -> bool {
        match self {
            GameVariant::Black | GameVariant::Reversible => color == Color::Black,
            GameVariant::White => color == Color::White,
            GameVariant::BlackWhite => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GameVariant::Black => "black",
            GameVariant::White => "white",
            GameVariant::BlackWhite => "black_white",
            GameVariant::Reversible => "reversible",
        }
    }
}

impl fmt::Display for GameVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GameVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "black" | "b" => Ok(GameVariant::Black),
            "white" | "w" => Ok(GameVariant::White),
            "black_white" | "blackwhite" | "bw" => Ok(GameVariant::BlackWhite),
            "reversible" | "rev" | "r" => Ok(GameVariant::Reversible),
            other => Err(format!("unknown game variant {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Place,
    Remove,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Black,
    White,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub action: Action,
    pub color: Color,
    pub vertex: Vertex,
}

impl Move {
    pub fn place(vertex: Vertex) -> Move {
        Move { action: Action::Place, color: Color::Black, vertex }
    }

    pub fn remove(vertex: Vertex) -> Move {
        Move { action: Action::Remove, color: Color::Black, vertex }
    }

    pub fn place_white(vertex: Vertex) -> Move {
        Move { action: Action::Place, color: Color::White, vertex }
    }

    pub fn remove_white(vertex: Vertex) -> Move {
        Move { action: Action::Remove, color: Color::White, vertex }
    }

    /// Same vertex, opposite action and color.
    pub fn dual(self) -> Move {
        Move {
            action: match self.action {
                Action::Place => Action::Remove,
                Action::Remove => Action::Place,
            },
            color: match self.color {
                Color::Black => Color::White,
                Color::White => Color::Black,
            },
            vertex: self.vertex,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = if self.action == Action::Place { 'P' } else { 'R' };
        let c = if self.color == Color::White { "w" } else { "" };
        write!(f, "{a}{c}{}", self.vertex)
    }
}

/// Black and white pebble sets as bitmasks over vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PebbleConfig {
    pub black: u128,
    pub white: u128,
}

impl PebbleConfig {
    pub const EMPTY: PebbleConfig = PebbleConfig { black: 0, white: 0 };

    pub fn pebbled(&self) -> u128 {
        self.black | self.white
    }

    pub fn size(&self) -> usize {
        self.pebbled().count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.pebbled() == 0
    }

    pub fn has(&self, v: Vertex) -> bool {
        self.pebbled() >> v & 1 == 1
    }

    pub fn black_vertices(&self) -> Vec<Vertex> {
        bits(self.black)
    }

    pub fn white_vertices(&self) -> Vec<Vertex> {
        bits(self.white)
    }
}

pub(crate) fn bits(mut m: u128) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

pub(crate) fn pred_mask(dag: &Dag, v: Vertex) -> u128 {
    dag.preds(v).iter().fold(0u128, |m, &u| m | 1u128 << u)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("{0}")]
    Illegal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PebblingError {
    #[error("step {step}: illegal move {mv}: {reason}")]
    IllegalMove { step: usize, mv: Move, reason: String },
    #[error("step {step}: unknown vertex {vertex}")]
    UnknownVertex { step: usize, vertex: Vertex },
    #[error("the strategy never pebbles the sink")]
    DoesNotTouchSink,
    #[error("the strategy leaves pebbles on {0:?}")]
    DoesNotEndEmpty(Vec<Vertex>),
    #[error("graph has no unique sink; give an explicit target vertex")]
    NoUniqueSink,
    #[error("search over {n} vertices exceeds the cap {cap}")]
    GraphTooLarge { n: usize, cap: usize },
    #[error("expected a {expected} strategy, got {got}")]
    WrongVariant { expected: GameVariant, got: GameVariant },
}

/// Apply one move under `variant`'s rules.
pub fn apply_move(dag: &Dag, config: PebbleConfig, mv: Move, variant: GameVariant) -> Result<PebbleConfig, MoveError> {
    let v = mv.vertex;
    if v as usize >= dag.n() {
        return Err(MoveError::UnknownVertex(v));
    }
    if !variant.allows(mv.color) {
        return Err(MoveError::Illegal(format!("{:?} pebbles are not part of the {variant} game", mv.color)));
    }
    let bit = 1u128 << v;
    let preds = pred_mask(dag, v);
    let covered = |by: u128| preds & !by == 0;
    let mut next = config;
    match (mv.action, mv.color) {
        (Action::Place, color) => {
            if config.pebbled() & bit != 0 {
                return Err(MoveError::Illegal(format!("vertex {v} already carries a pebble")));
            }
            match color {
                Color::Black => {
                    let support = if variant == GameVariant::Reversible { config.black } else { config.pebbled() };
                    if !covered(support) {
                        return Err(MoveError::Illegal(format!("a predecessor of {v} is not pebbled")));
                    }
                    next.black |= bit;
                }
                Color::White => next.white |= bit,
            }
        }
        (Action::Remove, Color::Black) => {
            if config.black & bit == 0 {
                return Err(MoveError::Illegal(format!("vertex {v} carries no black pebble")));
            }
            if variant == GameVariant::Reversible && !covered(config.black) {
                return Err(MoveError::Illegal(format!("a predecessor of {v} is not pebbled")));
            }
            next.black &= !bit;
        }
        (Action::Remove, Color::White) => {
            if config.white & bit == 0 {
                return Err(MoveError::Illegal(format!("vertex {v} carries no white pebble")));
            }
            if !covered(config.pebbled()) {
                return Err(MoveError::Illegal(format!("a predecessor of {v} is not pebbled")));
            }
            next.white &= !bit;
        }
    }
    Ok(next)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PebblingStrategy {
    pub variant: GameVariant,
    pub moves: Vec<Move>,
}

impl PebblingStrategy {
    pub fn new(variant: GameVariant, moves: Vec<Move>) -> Self {
        PebblingStrategy { variant, moves }
    }

    pub fn time(&self) -> usize {
        self.moves.len()
    }

    /// Configurations `P_0 = empty, P_1, ..., P_t`, assuming every move is
    /// legal (call `validate_strategy` first).
    pub fn configurations(&self, dag: &Dag) -> Result<Vec<PebbleConfig>, PebblingError> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        let mut cur = PebbleConfig::EMPTY;
        out.push(cur);
        for (step, &mv) in self.moves.iter().enumerate() {
            cur = apply_move(dag, cur, mv, self.variant).map_err(|e| lift(e, step, mv))?;
            out.push(cur);
        }
        Ok(out)
    }
}

impl fmt::Display for PebblingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.variant)?;
        for m in &self.moves {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

fn lift(e: MoveError, step: usize, mv: Move) -> PebblingError {
    match e {
        MoveError::UnknownVertex(vertex) => PebblingError::UnknownVertex { step, vertex },
        MoveError::Illegal(reason) => PebblingError::IllegalMove { step, mv, reason },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyMeasures {
    pub time: usize,
    pub space: usize,
}

/// Replay against the DAG's unique sink.
pub fn validate_strategy(dag: &Dag, strategy: &PebblingStrategy) -> Result<StrategyMeasures, PebblingError> {
    let sink = dag.sink().ok_or(PebblingError::NoUniqueSink)?;
    validate_strategy_for(dag, strategy, sink)
}

/// Replay from the empty configuration, requiring `target` to be pebbled
/// at some point and the final configuration to be empty.
pub fn validate_strategy_for(dag: &Dag, strategy: &PebblingStrategy, target: Vertex) -> Result<StrategyMeasures, PebblingError> {
    if target as usize >= dag.n() {
        return Err(PebblingError::UnknownVertex { step: 0, vertex: target });
    }
    let mut cur = PebbleConfig::EMPTY;
    let mut space = 0;
    let mut touched = false;
    for (step, &mv) in strategy.moves.iter().enumerate() {
        cur = apply_move(dag, cur, mv, strategy.variant).map_err(|e| lift(e, step, mv))?;
        space = space.max(cur.size());
        touched |= cur.has(target);
    }
    if !touched {
        return Err(PebblingError::DoesNotTouchSink);
    }
    if !cur.is_empty() {
        return Err(PebblingError::DoesNotEndEmpty(bits(cur.pebbled())));
    }
    Ok(StrategyMeasures { time: strategy.moves.len(), space })
}

/// Reverse the move sequence, swapping place/remove and black/white. Black
/// and white strategies map to each other; black-white strategies stay
/// black-white; a reversible strategy is simply run backwards.
pub fn black_white_dual(strategy: &PebblingStrategy) -> PebblingStrategy {
    let (variant, flip) = match strategy.variant {
        GameVariant::Black => (GameVariant::White, true),
        GameVariant::White => (GameVariant::Black, true),
        GameVariant::BlackWhite => (GameVariant::BlackWhite, true),
        GameVariant::Reversible => (GameVariant::Reversible, false),
    };
    let moves = strategy
        .moves
        .iter()
        .rev()
        .map(|&m| {
            if flip {
                m.dual()
            } else {
                Move { action: m.dual().action, ..m }
            }
        })
        .collect();
    PebblingStrategy { variant, moves }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::path;

    #[test]
    fn move_rules() {
        let d = path(2).unwrap();
        let e = PebbleConfig::EMPTY;
        let c = apply_move(&d, e, Move::place(0), GameVariant::Black).unwrap();
        assert_eq!(c.black, 1);
        let full = PebbleConfig { black: 0b11, white: 0 };
        let c = apply_move(&d, full, Move::remove(1), GameVariant::Reversible).unwrap();
        assert_eq!(c.black, 0b01);
        let only1 = PebbleConfig { black: 0b10, white: 0 };
        assert!(matches!(apply_move(&d, only1, Move::remove(1), GameVariant::Reversible), Err(MoveError::Illegal(_))));
        assert!(apply_move(&d, only1, Move::remove(1), GameVariant::Black).is_ok());
        assert!(matches!(apply_move(&d, e, Move::place(5), GameVariant::Black), Err(MoveError::UnknownVertex(5))));
        // white placement is unconditional, white removal needs predecessors
        let w = apply_move(&d, e, Move::place_white(1), GameVariant::White).unwrap();
        assert!(apply_move(&d, w, Move::remove_white(1), GameVariant::White).is_err());
        assert!(apply_move(&d, e, Move::place_white(1), GameVariant::Black).is_err());
        // in the black-white game a white predecessor supports a black placement
        let w0 = PebbleConfig { black: 0, white: 1 };
        assert!(apply_move(&d, w0, Move::place(1), GameVariant::BlackWhite).is_ok());
        assert!(apply_move(&d, w0, Move::place(1), GameVariant::Reversible).is_err());
    }

    #[test]
    fn validate_examples() {
        let d = path(2).unwrap();
        let s = PebblingStrategy::new(GameVariant::Black, vec![Move::place(0), Move::place(1), Move::remove(0), Move::remove(1)]);
        assert_eq!(validate_strategy(&d, &s).unwrap(), StrategyMeasures { time: 4, space: 2 });
        let bad = PebblingStrategy::new(GameVariant::Black, vec![Move::place(1)]);
        assert!(matches!(validate_strategy(&d, &bad), Err(PebblingError::IllegalMove { step: 0, .. })));
        let one = path(1).unwrap();
        for variant in [GameVariant::Black, GameVariant::Reversible, GameVariant::BlackWhite] {
            let s = PebblingStrategy::new(variant, vec![Move::place(0), Move::remove(0)]);
            assert_eq!(validate_strategy(&one, &s).unwrap(), StrategyMeasures { time: 2, space: 1 });
        }
        let no_sink = PebblingStrategy::new(GameVariant::Black, vec![Move::place(0), Move::remove(0)]);
        assert_eq!(validate_strategy(&d, &no_sink), Err(PebblingError::DoesNotTouchSink));
        let left = PebblingStrategy::new(GameVariant::Black, vec![Move::place(0), Move::place(1), Move::remove(1)]);
        assert_eq!(validate_strategy(&d, &left), Err(PebblingError::DoesNotEndEmpty(vec![0])));
    }

    #[test]
    fn dual_examples() {
        let d = path(2).unwrap();
        let s = PebblingStrategy::new(GameVariant::Black, vec![Move::place(0), Move::place(1), Move::remove(0), Move::remove(1)]);
        let w = black_white_dual(&s);
        assert_eq!(w.variant, GameVariant::White);
        assert_eq!(w.moves, vec![Move::place_white(1), Move::place_white(0), Move::remove_white(1), Move::remove_white(0)]);
        assert_eq!(validate_strategy(&d, &w).unwrap(), validate_strategy(&d, &s).unwrap());
        assert_eq!(black_white_dual(&w), s);
        let single = PebblingStrategy::new(GameVariant::Black, vec![Move::place(0), Move::remove(0)]);
        assert_eq!(black_white_dual(&single).moves, vec![Move::place_white(0), Move::remove_white(0)]);
    }

    #[test]
    fn json_shape() {
        let s = PebblingStrategy::new(GameVariant::BlackWhite, vec![Move::place_white(1)]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"variant":"black_white","moves":[{"action":"place","color":"white","vertex":1}]}"#);
        assert_eq!(serde_json::from_str::<PebblingStrategy>(&text).unwrap(), s);
    }
}
