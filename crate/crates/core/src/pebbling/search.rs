//! Exhaustive configuration-space search.
//!
//! A state is a black mask, a white mask and a "target touched" bit packed
//! into one `u64`. Breadth-first search under a space bound gives both
//! feasibility (for the price) and the minimum time; parent pointers give a
//! replayable witness. Only ancestors of the target are searched: moves on
//! other vertices never help and can be deleted from any strategy.

use rustc_hash::FxHashMap;

use super::{GameVariant, Move, PebblingError, PebblingStrategy};
use crate::graphs::{Dag, Vertex, DEFAULT_MAX_VERTICES};

/// Widest search the state encoding supports.
pub const HARD_CAP: usize = 31;
/// Default cap for the black-white game (3^n states before the space bound).
pub const DEFAULT_CAP_BW: usize = 16;

const TOUCHED: u64 = 1 << 31;
const LOW: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest number of searched vertices for single-mask games.
    pub cap_n: usize,
    /// Same for the black-white game.
    pub cap_n_bw: usize,
    /// Vertex that must be pebbled; defaults to the unique sink.
    pub target: Option<Vertex>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cap_n: DEFAULT_MAX_VERTICES, cap_n_bw: DEFAULT_CAP_BW, target: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FrontierPoint {
    pub space: usize,
    pub min_time: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeResult {
    pub time: usize,
    pub witness: PebblingStrategy,
}

struct StateSpace {
    variant: GameVariant,
    global: Vec<Vertex>,
    preds: Vec<u32>,
    target: usize,
}

impl StateSpace {
    fn new(dag: &Dag, variant: GameVariant, opts: &SearchOptions) -> Result<Self, PebblingError> {
        let target = match opts.target {
            Some(t) if (t as usize) < dag.n() => t,
            Some(t) => return Err(PebblingError::UnknownVertex { step: 0, vertex: t }),
            None => dag.sink().ok_or(PebblingError::NoUniqueSink)?,
        };
        // ancestors of the target, including itself
        let mut keep = vec![false; dag.n()];
        keep[target as usize] = true;
        let mut stack = vec![target];
        while let Some(v) = stack.pop() {
            for &u in dag.preds(v) {
                if !keep[u as usize] {
                    keep[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        let global: Vec<Vertex> = dag.vertices().filter(|&v| keep[v as usize]).collect();
        let cap = if variant == GameVariant::BlackWhite { opts.cap_n_bw } else { opts.cap_n }.min(HARD_CAP);
        if global.len() > cap {
            return Err(PebblingError::GraphTooLarge { n: global.len(), cap });
        }
        let mut local = vec![u32::MAX; dag.n()];
        for (i, &v) in global.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let preds = global
            .iter()
            .map(|&v| dag.preds(v).iter().fold(0u32, |m, &u| m | 1 << local[u as usize]))
            .collect();
        Ok(StateSpace { variant, target: local[target as usize] as usize, global, preds })
    }

    fn k(&self) -> usize {
        self.global.len()
    }

    fn for_each_successor(&self, s: u64, bound: usize, mut f: impl FnMut(u64)) {
        let b = (s & LOW) as u32;
        let w = (s >> 32) as u32;
        let touched = s & TOUCHED;
        let used = (b | w).count_ones() as usize;
        let black_ok = self.variant != GameVariant::White;
        let white_ok = matches!(self.variant, GameVariant::White | GameVariant::BlackWhite);
        let rev = self.variant == GameVariant::Reversible;
        for v in 0..self.k() {
            let bit = 1u32 << v;
            let pm = self.preds[v];
            let hit = if v == self.target { TOUCHED } else { 0 };
            if b & bit != 0 {
                if !rev || pm & !b == 0 {
                    f(pack(b & !bit, w) | touched);
                }
            } else if w & bit != 0 {
                if pm & !(b | w) == 0 {
                    f(pack(b, w & !bit) | touched);
                }
            } else if used < bound {
                let support = if rev { b } else { b | w };
                if black_ok && pm & !support == 0 {
                    f(pack(b | bit, w) | touched | hit);
                }
                if white_ok {
                    f(pack(b, w | bit) | touched | hit);
                }
            }
        }
    }

    /// Shortest strategy with at most `bound` pebbles, as a state path.
    fn bfs(&self, bound: usize) -> Option<Vec<u64>> {
        if bound == 0 {
            return None;
        }
        let start = 0u64;
        let goal = TOUCHED;
        let mut parent: FxHashMap<u64, u64> = FxHashMap::default();
        parent.insert(start, u64::MAX);
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &s in &frontier {
                let mut found = false;
                self.for_each_successor(s, bound, |t| {
                    if found || parent.contains_key(&t) {
                        return;
                    }
                    parent.insert(t, s);
                    if t == goal {
                        found = true;
                    }
                    next.push(t);
                });
                if found {
                    let mut path = vec![goal];
                    let mut cur = goal;
                    while let Some(&p) = parent.get(&cur) {
                        if p == u64::MAX {
                            break;
                        }
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
            }
            frontier = next;
        }
        None
    }

    fn to_strategy(&self, path: &[u64]) -> PebblingStrategy {
        let mut moves = Vec::with_capacity(path.len().saturating_sub(1));
        for pair in path.windows(2) {
            let (b0, w0) = unpack(pair[0]);
            let (b1, w1) = unpack(pair[1]);
            let mv = if b0 != b1 {
                let v = self.global[(b0 ^ b1).trailing_zeros() as usize];
                if b1 > b0 {
                    Move::place(v)
                } else {
                    Move::remove(v)
                }
            } else {
                let v = self.global[(w0 ^ w1).trailing_zeros() as usize];
                if w1 > w0 {
                    Move::place_white(v)
                } else {
                    Move::remove_white(v)
                }
            };
            moves.push(mv);
        }
        PebblingStrategy::new(self.variant, moves)
    }
}

fn pack(b: u32, w: u32) -> u64 {
    b as u64 | (w as u64) << 32
}

fn unpack(s: u64) -> (u32, u32) {
    ((s & LOW) as u32, (s >> 32) as u32)
}

/// Minimum space over all strategies, together with a time-optimal witness
/// at that space.
pub fn price_with_witness(dag: &Dag, variant: GameVariant, opts: &SearchOptions) -> Result<(usize, PebblingStrategy), PebblingError> {
    let space = StateSpace::new(dag, variant, opts)?;
    for s in 1..=space.k() {
        if let Some(path) = space.bfs(s) {
            return Ok((s, space.to_strategy(&path)));
        }
    }
    unreachable!("k pebbles always suffice")
}

pub fn pebbling_price(dag: &Dag, variant: GameVariant, opts: &SearchOptions) -> Result<usize, PebblingError> {
    price_with_witness(dag, variant, opts).map(|(p, _)| p)
}

/// Length of the shortest strategy that never exceeds `space_bound`
/// pebbles; `None` when no such strategy exists.
pub fn min_time_with_space(
    dag: &Dag,
    variant: GameVariant,
    space_bound: usize,
    opts: &SearchOptions,
) -> Result<Option<TimeResult>, PebblingError> {
    let space = StateSpace::new(dag, variant, opts)?;
    Ok(space.bfs(space_bound.min(space.k())).map(|path| TimeResult { time: path.len() - 1, witness: space.to_strategy(&path) }))
}

/// `(s, min time with s pebbles)` for `s` from the price up to `n`.
pub fn tradeoff_frontier(dag: &Dag, variant: GameVariant, opts: &SearchOptions) -> Result<Vec<FrontierPoint>, PebblingError> {
    let space = StateSpace::new(dag, variant, opts)?;
    // every searched vertex is placed and removed at least once
    let floor = 2 * space.k();
    let mut out = Vec::new();
    let mut last = None;
    for s in 1..=dag.n() {
        let time = match last {
            Some(t) if t == floor || s > space.k() => Some(t),
            _ => space.bfs(s).map(|p| p.len() - 1),
        };
        if let Some(t) = time {
            out.push(FrontierPoint { space: s, min_time: t });
            last = Some(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{binary_tree, path, pyramid, single_sink_dags, Dag};
    use crate::pebbling::validate_strategy;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn path_prices() {
        for n in 2..=10 {
            let d = path(n).unwrap();
            assert_eq!(pebbling_price(&d, GameVariant::Black, &opts()).unwrap(), 2);
            assert_eq!(pebbling_price(&d, GameVariant::White, &opts()).unwrap(), 2);
        }
        // k reversible pebbles reach distance 2^k - 1
        for n in 1..=16usize {
            let rev = pebbling_price(&path(n).unwrap(), GameVariant::Reversible, &opts()).unwrap();
            assert_eq!(rev, (usize::BITS - n.leading_zeros()) as usize, "path_{n}");
        }
        let one = path(1).unwrap();
        for v in GameVariant::ALL {
            assert_eq!(pebbling_price(&one, v, &opts()).unwrap(), 1);
        }
    }

    #[test]
    fn known_values() {
        // pyramid of height h: black price h + 2 for h >= 1
        for h in 1..=3 {
            assert_eq!(pebbling_price(&pyramid(h).unwrap(), GameVariant::Black, &opts()).unwrap(), h + 2);
        }
        // complete binary tree of height h: black price h + 2
        for h in 1..=3 {
            assert_eq!(pebbling_price(&binary_tree(h).unwrap(), GameVariant::Black, &opts()).unwrap(), h + 2);
        }
    }

    #[test]
    fn time_examples() {
        let d = path(2).unwrap();
        let r = min_time_with_space(&d, GameVariant::Black, 2, &opts()).unwrap().unwrap();
        assert_eq!(r.time, 4);
        assert_eq!(validate_strategy(&d, &r.witness).unwrap().time, 4);
        assert!(min_time_with_space(&d, GameVariant::Black, 1, &opts()).unwrap().is_none());
        let f = tradeoff_frontier(&d, GameVariant::Black, &opts()).unwrap();
        assert_eq!(f, vec![FrontierPoint { space: 2, min_time: 4 }]);
        let f1 = tradeoff_frontier(&path(1).unwrap(), GameVariant::Black, &opts()).unwrap();
        assert_eq!(f1, vec![FrontierPoint { space: 1, min_time: 2 }]);
    }

    #[test]
    fn multi_sink_needs_target() {
        let vee = Dag::parse("3\n0 1\n0 2").unwrap();
        assert_eq!(pebbling_price(&vee, GameVariant::Black, &opts()), Err(PebblingError::NoUniqueSink));
        let o = SearchOptions { target: Some(2), ..opts() };
        assert_eq!(pebbling_price(&vee, GameVariant::Black, &o).unwrap(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let d = path(20).unwrap();
        let o = SearchOptions { cap_n: 10, ..opts() };
        assert!(matches!(pebbling_price(&d, GameVariant::Black, &o), Err(PebblingError::GraphTooLarge { .. })));
    }

    #[test]
    fn small_dag_invariants() {
        for n in 1..=5 {
            for d in single_sink_dags(n) {
                let price = |v| pebbling_price(&d, v, &opts()).unwrap();
                let (bw, b, w, r) = (price(GameVariant::BlackWhite), price(GameVariant::Black), price(GameVariant::White), price(GameVariant::Reversible));
                assert!(bw <= b && b <= r, "{d:?}");
                assert_eq!(b, w);
                for v in GameVariant::ALL {
                    let (p, witness) = price_with_witness(&d, v, &opts()).unwrap();
                    let m = validate_strategy(&d, &witness).unwrap();
                    assert_eq!(m.space, p);
                    let frontier = tradeoff_frontier(&d, v, &opts()).unwrap();
                    assert_eq!(frontier[0].space, p);
                    assert_eq!(frontier.last().unwrap().space, d.n());
                    for pair in frontier.windows(2) {
                        assert!(pair[1].min_time <= pair[0].min_time);
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_strategy_bound() {
        for h in 1..=2 {
            let d = pyramid(h).unwrap();
            let t = min_time_with_space(&d, GameVariant::Black, d.n(), &opts()).unwrap().unwrap().time;
            assert!(t <= 2 * d.n());
        }
    }
}
