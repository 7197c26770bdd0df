use std::collections::BTreeMap;

use super::TranslateError;
use crate::algebra::{FieldSpec, Monomial, Polynomial};
use crate::formulas::sink_axiom_index;
use crate::graphs::Dag;
use crate::pebbling::{pred_mask, validate_strategy, Action, GameVariant, PebblingStrategy};
use crate::proofs::NsCertificate;

/// Nullstellensatz certificate from a reversible strategy.
///
/// Each move between configurations `P` and `P'` (one containing `v`, the
/// other equal to it minus `v`) gives `m_P - m_P' = +-m_{Q \ pred(v)} A_v`
/// with `Q` the configuration without `v`. Summing a prefix up to a
/// configuration `P_i` holding the sink gives `1 - m_{P_i}`, and a suffix
/// from such a configuration gives `m_{P_i} - 1`; either is closed with the
/// sink axiom times `m_{P_i \ z}`. The half that contains the first
/// configuration of maximum size is used, so the degree equals the space.
pub fn rev_to_ns(dag: &Dag, s: &PebblingStrategy, field: FieldSpec) -> Result<NsCertificate, TranslateError> {
    let z = dag.sink().ok_or(TranslateError::NoUniqueSink)?;
    if s.variant != GameVariant::Reversible {
        return Err(TranslateError::WrongVariant { expected: GameVariant::Reversible, got: s.variant });
    }
    let configs = s.configurations(dag)?;
    let first_sink = configs.iter().position(|c| c.has(z)).ok_or(TranslateError::SinkNeverPebbled)?;
    validate_strategy(dag, s)?;
    let space = configs.iter().map(|c| c.size()).max().unwrap_or(0);
    let peak = configs.iter().position(|c| c.size() == space).unwrap_or(0);
    let (pivot, steps, sign) = if peak <= first_sink {
        (first_sink, 0..first_sink, 1)
    } else {
        let pivot = (0..=peak).rev().find(|&i| configs[i].has(z)).expect("first_sink <= peak");
        (pivot, pivot..s.moves.len(), -1)
    };

    let mut g: BTreeMap<usize, Polynomial> = BTreeMap::new();
    let mut add = |j: usize, m: u128, c: i64| {
        g.entry(j).or_insert_with(|| Polynomial::zero(field)).add_term(Monomial::from_bits(m), field.from_i64(c));
    };
    for i in steps {
        let mv = s.moves[i];
        let v = mv.vertex;
        let without_v = (configs[i].black | configs[i + 1].black) & !(1u128 << v);
        let c = match mv.action {
            Action::Place => sign,
            Action::Remove => -sign,
        };
        add(v as usize, without_v & !pred_mask(dag, v), c);
    }
    add(sink_axiom_index(dag), configs[pivot].black & !(1u128 << z), 1);
    g.retain(|_, p| !p.is_zero());
    Ok(NsCertificate::new(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::pebbling_system;
    use crate::graphs::{path, random};
    use crate::pebbling::{price_with_witness, random_reversible_strategy, Move, SearchOptions};
    use crate::proofs::{verify_ns, NsMode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn path2() {
        let dag = path(2).unwrap();
        let s = PebblingStrategy::new(
            GameVariant::Reversible,
            vec![Move::place(0), Move::place(1), Move::remove(0), Move::place(0), Move::remove(1), Move::remove(0)],
        );
        let cert = rev_to_ns(&dag, &s, Q).unwrap();
        let sys = pebbling_system(&dag, Q).unwrap();
        let m = verify_ns(&sys, &cert, NsMode::Multilinear).unwrap();
        assert_eq!(m.degree, 2);
    }

    #[test]
    fn optimal_paths_reach_the_price() {
        for n in [3, 5, 8] {
            let dag = path(n).unwrap();
            let (price, s) = price_with_witness(&dag, GameVariant::Reversible, &SearchOptions::default()).unwrap();
            let sys = pebbling_system(&dag, Q).unwrap();
            let m = verify_ns(&sys, &rev_to_ns(&dag, &s, Q).unwrap(), NsMode::Multilinear).unwrap();
            assert_eq!(m.degree, price, "path {n}");
        }
    }

    #[test]
    fn random_strategies() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for seed in 0..40 {
            let dag = random(7, 0.4, seed).unwrap();
            let s = random_reversible_strategy(&dag, dag.sink().unwrap(), &mut rng);
            let space = validate_strategy(&dag, &s).unwrap().space;
            let sys = pebbling_system(&dag, Q).unwrap();
            let m = verify_ns(&sys, &rev_to_ns(&dag, &s, Q).unwrap(), NsMode::Multilinear).unwrap();
            assert!(m.degree <= space);
        }
    }

    #[test]
    fn errors() {
        let dag = path(2).unwrap();
        let black = PebblingStrategy::new(GameVariant::Black, vec![Move::place(0), Move::remove(0)]);
        assert!(matches!(rev_to_ns(&dag, &black, Q), Err(TranslateError::WrongVariant { .. })));
        let never = PebblingStrategy::new(GameVariant::Reversible, vec![Move::place(0), Move::remove(0)]);
        assert!(matches!(rev_to_ns(&dag, &never, Q), Err(TranslateError::SinkNeverPebbled)));
    }
}
