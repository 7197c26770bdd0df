//! Constructive bridges between pebbling strategies and algebraic
//! refutations of pebbling formulas.

mod normalize;
mod rev_ns;

use crate::algebra::{AlgebraError, FieldSpec, Monomial, DEFAULT_DIMENSION_CAP};
use crate::decide::min_degree;
use crate::formulas::{pebbling_axiom, pebbling_system, sink_axiom_index, FormulaError};
use crate::graphs::{Dag, Vertex};
use crate::pebbling::{
    bits, black_white_dual, pebbling_price, validate_strategy, Action, GameVariant, Move, PebbleConfig, PebblingError,
    PebblingStrategy, SearchOptions,
};
use crate::proofs::{check_input_refutation, Derivation, InputMcRefutation, Justification, ProofError, ProofSystem};

pub use normalize::normalize_to_input;
pub use rev_ns::rev_to_ns;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("graph has no unique sink")]
    NoUniqueSink,
    #[error("expected a {expected} strategy, got {got}")]
    WrongVariant { expected: GameVariant, got: GameVariant },
    #[error("invalid strategy: {0}")]
    Strategy(#[from] PebblingError),
    #[error("the strategy never pebbles the sink")]
    SinkNeverPebbled,
    #[error("not an input refutation: {0}")]
    NotInputRefutation(String),
    #[error("the refutation's axioms are not the pebbling formula of this graph: {0}")]
    WrongSystem(String),
    #[error("the system is not Horn: axiom {0} has more than two monomials")]
    NotHorn(usize),
    #[error("not a refutation: {0}")]
    NotARefutation(ProofError),
    #[error("no backbone reaches 1: {0}")]
    NoBackbone(String),
    #[error(transparent)]
    Proof(#[from] ProofError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn mask_of(m: u128) -> Monomial {
    Monomial::from_bits(m)
}

/// Black strategy in the shape the translation wants: stop at the first
/// pebbling of the sink, clear the other pebbles and then the sink, and
/// cut out every loop between repeated configurations. The result is
/// valid, no longer, and no wider than the input.
pub fn normalize_black(dag: &Dag, s: &PebblingStrategy) -> Result<PebblingStrategy, TranslateError> {
    let z = dag.sink().ok_or(TranslateError::NoUniqueSink)?;
    if s.variant != GameVariant::Black {
        return Err(TranslateError::WrongVariant { expected: GameVariant::Black, got: s.variant });
    }
    validate_strategy(dag, s)?;
    let configs = s.configurations(dag)?;
    let first = configs.iter().position(|c| c.has(z)).ok_or(TranslateError::SinkNeverPebbled)?;
    let mut moves: Vec<Move> = s.moves[..first].to_vec();
    let mut tail = configs[first].black & !(1u128 << z);
    while tail != 0 {
        let v = tail.trailing_zeros();
        moves.push(Move::remove(v));
        tail &= tail - 1;
    }
    moves.push(Move::remove(z));
    // loop erasure over every configuration but the final empty one
    let last = moves.pop().expect("at least the sink removal");
    let mut kept_moves: Vec<Move> = Vec::new();
    let mut kept_configs: Vec<PebbleConfig> = vec![PebbleConfig::EMPTY];
    let mut cur = PebbleConfig::EMPTY;
    for mv in moves {
        cur = crate::pebbling::apply_move(dag, cur, mv, GameVariant::Black).expect("replayed above");
        if let Some(p) = kept_configs.iter().position(|c| *c == cur) {
            kept_configs.truncate(p + 1);
            kept_moves.truncate(p);
        } else {
            kept_configs.push(cur);
            kept_moves.push(mv);
        }
    }
    kept_moves.push(last);
    let out = PebblingStrategy::new(GameVariant::Black, kept_moves);
    validate_strategy(dag, &out)?;
    Ok(out)
}

/// Input MC refutation of the pebbling formula read off a black strategy
/// through its white dual. The backbone is `m_{W_i}` for the white
/// configurations `W_i`, starting from the sink axiom `x_z`; a white
/// placement of `v` multiplies by `x_v`, a white removal of `v` adds the
/// axiom product `m_{W \ pred(v) \ v} A_v`, built one variable at a time.
pub fn black_to_mc(dag: &Dag, s: &PebblingStrategy, field: FieldSpec) -> Result<InputMcRefutation, TranslateError> {
    let sys = pebbling_system(dag, field)?;
    let z = dag.sink().ok_or(TranslateError::NoUniqueSink)?;
    let normal = normalize_black(dag, s)?;
    let white = black_white_dual(&normal);
    let f = field;
    let mut d = Derivation::new(ProofSystem::Mc);
    let mut backbone = Vec::new();
    // white strategy starts by placing z: that is M_0 = x_z
    let mut moves = white.moves.iter();
    let first = moves.next().expect("nonempty");
    debug_assert_eq!(*first, Move::place_white(z));
    let mut w: u128 = 1u128 << z;
    let mut cur = d.push_axiom(&sys, sink_axiom_index(dag));
    backbone.push(cur);
    for mv in moves {
        let v = mv.vertex;
        match mv.action {
            Action::Place => {
                cur = d.push_mult(cur, v);
                w |= 1u128 << v;
            }
            Action::Remove => {
                let preds = dag.preds(v).iter().fold(0u128, |m, &u| m | 1u128 << u);
                let mut prod = d.push_axiom(&sys, v as usize);
                for x in bits(w & !preds & !(1u128 << v)) {
                    prod = d.push_mult(prod, x);
                }
                cur = d.push_lin_comb(cur, prod, f.one(), f.one())?;
                w &= !(1u128 << v);
            }
        }
        debug_assert_eq!(d.poly(cur).as_single_term().map(|t| t.0), Some(mask_of(w)));
        backbone.push(cur);
    }
    Ok(InputMcRefutation { derivation: d, backbone })
}

/// Size with each removal step counted coarsely: backbone lines plus the
/// finished axiom products they absorb, without the intermediate lines
/// that build those products one variable at a time.
pub fn ns_style_size(r: &InputMcRefutation) -> usize {
    let d = &r.derivation;
    let mut size = 0;
    for (k, &line) in r.backbone.iter().enumerate() {
        size += d.poly(line).num_terms();
        if k == 0 {
            continue;
        }
        if let Justification::LinComb { a, b, .. } = d.lines[line].just {
            let product = if a == r.backbone[k - 1] { b } else { a };
            size += d.poly(product).num_terms();
        }
    }
    size
}

/// Black strategy read off an input refutation: the white pebbles at
/// backbone step `i` are the variables of `M_i`. Initial placements of
/// `Var(M_0)` go in reverse topological order; the white strategy is then
/// dualized.
pub fn mc_to_pebbling(dag: &Dag, r: &InputMcRefutation) -> Result<PebblingStrategy, TranslateError> {
    let n = dag.n();
    dag.sink().ok_or(TranslateError::NoUniqueSink)?;
    let d = &r.derivation;
    let field = d.lines.first().map(|l| l.poly.field()).unwrap_or(FieldSpec::Rational);
    for (i, line) in d.lines.iter().enumerate() {
        if let Justification::Axiom(j) = line.just {
            let expected = if j < n {
                pebbling_axiom(dag, j as Vertex, field)
            } else if j == n {
                crate::algebra::Polynomial::var(field, dag.sink().unwrap())
            } else {
                return Err(TranslateError::WrongSystem(format!("line {i} cites axiom {j}; the formula has {}", n + 1)));
            };
            if expected != line.poly {
                return Err(TranslateError::WrongSystem(format!("line {i}: {} is not axiom {j}", line.poly)));
            }
        }
    }
    let sys = pebbling_system(dag, field)?;
    check_input_refutation(&sys, r).map_err(|e| TranslateError::NotInputRefutation(e.to_string()))?;

    let var_sets: Vec<u128> = r
        .backbone
        .iter()
        .map(|&l| d.poly(l).as_single_term().expect("checked monomial").0.bits())
        .collect();
    let order = dag.topological_order().expect("validated dag");
    let mut moves: Vec<Move> = order
        .iter()
        .rev()
        .filter(|&&v| var_sets[0] >> v & 1 == 1)
        .map(|&v| Move::place_white(v))
        .collect();
    for k in 1..var_sets.len() {
        let (before, after) = (var_sets[k - 1], var_sets[k]);
        let added = after & !before;
        let removed = before & !after;
        let via_axiom = matches!(d.lines[r.backbone[k]].just, Justification::LinComb { .. });
        match (added.count_ones(), removed.count_ones()) {
            (1, 0) => moves.push(Move::place_white(added.trailing_zeros())),
            (0, 1) if via_axiom => moves.push(Move::remove_white(removed.trailing_zeros())),
            _ => {
                return Err(TranslateError::NotInputRefutation(format!(
                    "backbone step {k} changes the variable set from {} to {} without a single placement or axiom removal",
                    mask_of(before),
                    mask_of(after)
                )))
            }
        }
    }
    let white = PebblingStrategy::new(GameVariant::White, moves);
    validate_strategy(dag, &white).map_err(|e| TranslateError::NotInputRefutation(format!("white strategy: {e}")))?;
    let black = black_white_dual(&white);
    validate_strategy(dag, &black)?;
    Ok(black)
}

/// Prices of the three games and minimal refutation degrees of the three
/// proof systems for one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PriceReport {
    pub bw: usize,
    pub black: usize,
    pub rev: usize,
    pub pc_deg: usize,
    pub mc_deg: usize,
    pub ns_deg: usize,
}

impl PriceReport {
    pub fn mc_matches_black(&self) -> bool {
        self.mc_deg == self.black
    }

    pub fn ns_matches_rev(&self) -> bool {
        self.ns_deg == self.rev
    }
}

pub fn price_report(dag: &Dag, field: FieldSpec, opts: &SearchOptions) -> Result<PriceReport, TranslateError> {
    let sys = pebbling_system(dag, field)?;
    let price = |v| pebbling_price(dag, v, opts);
    let deg = |s| -> Result<usize, TranslateError> {
        // n + 1 always suffices: the trivial strategies give degree <= n
        min_degree(&sys, s, dag.n() + 1, DEFAULT_DIMENSION_CAP)?
            .ok_or_else(|| TranslateError::NoBackbone(format!("no {s} refutation of degree <= {}", dag.n() + 1)))
    };
    Ok(PriceReport {
        bw: price(GameVariant::BlackWhite)?,
        black: price(GameVariant::Black)?,
        rev: price(GameVariant::Reversible)?,
        pc_deg: deg(ProofSystem::Pc)?,
        mc_deg: deg(ProofSystem::Mc)?,
        ns_deg: deg(ProofSystem::Ns)?,
    })
}
