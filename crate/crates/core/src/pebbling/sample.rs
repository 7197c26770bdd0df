//! Random valid strategies for property tests and the acceptance suite.
//!
//! Both samplers run a loop-erased random walk over configurations until the
//! target is first pebbled, so no configuration repeats before that point.
//! The black sampler then clears every pebble, the target last; the
//! reversible sampler replays the walk backwards.

use rand::Rng;
use rustc_hash::FxHashMap;

use super::{bits, pred_mask, GameVariant, Move, PebblingStrategy};
use crate::graphs::{Dag, Vertex};

/// Probability of choosing a placement when both kinds of move exist.
const PLACE_BIAS: f64 = 0.6;

fn loop_erased_walk<R: Rng + ?Sized>(dag: &Dag, target: Vertex, reversible: bool, rng: &mut R) -> (Vec<Move>, u128) {
    let preds: Vec<u128> = dag.vertices().map(|v| pred_mask(dag, v)).collect();
    let mut configs: Vec<u128> = vec![0];
    let mut moves: Vec<Move> = Vec::new();
    let mut position: FxHashMap<u128, usize> = FxHashMap::default();
    position.insert(0, 0);
    loop {
        let cur = *configs.last().unwrap();
        let mut places = Vec::new();
        let mut removes = Vec::new();
        for v in dag.vertices() {
            let supported = preds[v as usize] & !cur == 0;
            if cur >> v & 1 == 1 {
                if !reversible || supported {
                    removes.push(v);
                }
            } else if supported {
                places.push(v);
            }
        }
        let place = removes.is_empty() || (!places.is_empty() && rng.gen_bool(PLACE_BIAS));
        let (mv, next) = if place {
            let v = places[rng.gen_range(0..places.len())];
            (Move::place(v), cur | 1u128 << v)
        } else {
            let v = removes[rng.gen_range(0..removes.len())];
            (Move::remove(v), cur & !(1u128 << v))
        };
        if let Some(&p) = position.get(&next) {
            // erase the loop back to the earlier visit
            for c in configs.drain(p + 1..) {
                position.remove(&c);
            }
            moves.truncate(p);
            continue;
        }
        position.insert(next, configs.len());
        configs.push(next);
        moves.push(mv);
        if next >> target & 1 == 1 {
            return (moves, next);
        }
    }
}

/// A random black strategy that pebbles `target` once, with all
/// configurations distinct.
pub fn random_black_strategy<R: Rng + ?Sized>(dag: &Dag, target: Vertex, rng: &mut R) -> PebblingStrategy {
    assert!((target as usize) < dag.n());
    let (mut moves, last) = loop_erased_walk(dag, target, false, rng);
    let mut rest: Vec<Vertex> = bits(last & !(1u128 << target));
    for i in (1..rest.len()).rev() {
        rest.swap(i, rng.gen_range(0..=i));
    }
    moves.extend(rest.into_iter().map(Move::remove));
    moves.push(Move::remove(target));
    PebblingStrategy::new(GameVariant::Black, moves)
}

/// A random reversible strategy: a loop-erased walk up to the first
/// pebbling of `target`, followed by the same walk undone in reverse.
pub fn random_reversible_strategy<R: Rng + ?Sized>(dag: &Dag, target: Vertex, rng: &mut R) -> PebblingStrategy {
    assert!((target as usize) < dag.n());
    let (mut moves, _) = loop_erased_walk(dag, target, true, rng);
    let back: Vec<Move> = moves
        .iter()
        .rev()
        .map(|m| if m.action == super::Action::Place { Move::remove(m.vertex) } else { Move::place(m.vertex) })
        .collect();
    moves.extend(back);
    PebblingStrategy::new(GameVariant::Reversible, moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::random;
    use crate::pebbling::validate_strategy;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for seed in 0..40 {
            let d = random(8, 0.3, seed).unwrap();
            let z = d.sink().unwrap();
            let b = random_black_strategy(&d, z, &mut rng);
            validate_strategy(&d, &b).unwrap();
            let r = random_reversible_strategy(&d, z, &mut rng);
            validate_strategy(&d, &r).unwrap();
            let configs = b.configurations(&d).unwrap();
            let mut seen = std::collections::HashSet::new();
            assert!(configs[1..].iter().all(|c| seen.insert(*c)), "black sample revisits a configuration");
        }
    }
}
