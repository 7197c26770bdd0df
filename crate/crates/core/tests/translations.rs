use std::collections::BTreeMap;

use pebalg::algebra::{FieldSpec, Polynomial, DEFAULT_PRIME};
use pebalg::formulas::{encode, pebbling_system, Clause, CnfFormula};
use pebalg::graphs::{path, pyramid, random};
use pebalg::json::{from_json, to_json};
use pebalg::pebbling::{
    price_with_witness, random_black_strategy, random_reversible_strategy, validate_strategy, GameVariant, Move,
    PebblingStrategy, SearchOptions,
};
use pebalg::proofs::{
    check_input_refutation, verify_derivation, verify_ns, Derivation, InputMcRefutation, NsMode, ProofError, ProofSystem,
};
use pebalg::translate::{black_to_mc, mc_to_pebbling, normalize_to_input, price_report, rev_to_ns, TranslateError};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rational;
const P: FieldSpec = FieldSpec::Prime(DEFAULT_PRIME);

fn black_path2() -> PebblingStrategy {
    PebblingStrategy::new(GameVariant::Black, vec![Move::place(0), Move::place(1), Move::remove(0), Move::remove(1)])
}

#[test]
fn path2_black_to_mc_lines() {
    let dag = path(2).unwrap();
    let r = black_to_mc(&dag, &black_path2(), Q).unwrap();
    let lines: Vec<String> = r.derivation.lines.iter().map(|l| l.poly.to_string()).collect();
    assert_eq!(lines, ["x1", "x0*x1", "x0 - x0*x1", "x0", "1 - x0", "1"]);
    let sys = pebbling_system(&dag, Q).unwrap();
    assert_eq!(check_input_refutation(&sys, &r).unwrap().degree, 2);
    let back = mc_to_pebbling(&dag, &r).unwrap();
    assert_eq!(validate_strategy(&dag, &back).unwrap().space, 2);
}

#[test]
fn single_vertex_round_trip() {
    let dag = path(1).unwrap();
    let s = PebblingStrategy::new(GameVariant::Black, vec![Move::place(0), Move::remove(0)]);
    let r = black_to_mc(&dag, &s, Q).unwrap();
    let monos: Vec<String> = r.backbone.iter().map(|&l| r.derivation.poly(l).to_string()).collect();
    assert_eq!(monos, ["x0", "1"]);
    assert_eq!(mc_to_pebbling(&dag, &r).unwrap(), s);
}

#[test]
fn shrinking_by_a_non_axiom_step_is_rejected() {
    let dag = path(2).unwrap();
    let sys = pebbling_system(&dag, Q).unwrap();
    let mut d = Derivation::new(ProofSystem::Mc);
    let m0 = d.push_axiom(&sys, 2);
    let m1 = d.push_mult(m0, 0);
    let a1 = d.push_axiom(&sys, 1);
    let sum = d.push_lin_comb(a1, a1, Q.one(), Q.zero()).unwrap();
    // x_u x_z + (x_u - x_u x_z) = x_u, through a line that is not an axiom product
    let m2 = d.push_lin_comb(m1, sum, Q.one(), Q.one()).unwrap();
    let a0 = d.push_axiom(&sys, 0);
    let m3 = d.push_lin_comb(m2, a0, Q.one(), Q.one()).unwrap();
    let r = InputMcRefutation { derivation: d, backbone: vec![m0, m1, m2, m3] };
    assert!(matches!(mc_to_pebbling(&dag, &r), Err(TranslateError::NotInputRefutation(_))));
}

#[test]
fn rev_to_ns_examples() {
    let dag = path(2).unwrap();
    let s = PebblingStrategy::new(GameVariant::Reversible, vec![Move::place(0), Move::place(1), Move::remove(1), Move::remove(0)]);
    let cert = rev_to_ns(&dag, &s, Q).unwrap();
    let expected = BTreeMap::from([(0, Polynomial::one(Q)), (1, Polynomial::one(Q)), (2, Polynomial::var(Q, 0))]);
    assert_eq!(cert.g, expected);
    let sys = pebbling_system(&dag, Q).unwrap();
    assert_eq!(verify_ns(&sys, &cert, NsMode::Multilinear).unwrap().degree, 2);

    let one = path(1).unwrap();
    let s = PebblingStrategy::new(GameVariant::Reversible, vec![Move::place(0), Move::remove(0)]);
    let cert = rev_to_ns(&one, &s, Q).unwrap();
    assert_eq!(cert.g, BTreeMap::from([(0, Polynomial::one(Q)), (1, Polynomial::one(Q))]));
}

#[test]
fn normalize_examples() {
    let dag = path(2).unwrap();
    let sys = pebbling_system(&dag, Q).unwrap();
    let r = black_to_mc(&dag, &black_path2(), Q).unwrap();
    let fixed = normalize_to_input(&sys, &r.derivation).unwrap();
    // same lines; the backbone may start at the later axiom product x_u x_z
    assert_eq!(fixed.derivation, r.derivation);
    assert_eq!(check_input_refutation(&sys, &fixed), check_input_refutation(&sys, &r));

    // pad with unused lines and fold a multiple of x_u into the last line
    let mut d = r.derivation.clone();
    let last = d.len() - 1;
    let extra = d.push_axiom(&sys, 1);
    d.push_mult(extra, 1);
    let injected = d.push_mult(3, 1);
    d.push_lin_comb(last, injected, Q.one(), Q.zero()).unwrap();
    let before = verify_derivation(&sys, &d).unwrap();
    let out = normalize_to_input(&sys, &d).unwrap();
    let after = check_input_refutation(&sys, &out).unwrap();
    assert!(after.degree <= before.degree && after.size <= before.size);

    let or = encode(&CnfFormula::new(2, vec![Clause::new([0, 1], [])]).unwrap(), Q).unwrap();
    assert!(matches!(normalize_to_input(&or, &d), Err(TranslateError::NotHorn(0))));
}

#[test]
fn price_report_examples() {
    let opts = SearchOptions::default();
    let p4 = price_report(&path(4).unwrap(), P, &opts).unwrap();
    assert_eq!((p4.black, p4.mc_deg), (2, 2));
    let one = price_report(&path(1).unwrap(), Q, &opts).unwrap();
    assert_eq!([one.bw, one.black, one.rev, one.pc_deg, one.mc_deg, one.ns_deg], [1; 6]);
    let pyr = price_report(&pyramid(2).unwrap(), P, &opts).unwrap();
    assert!(pyr.mc_matches_black() && pyr.ns_matches_rev());
}

#[test]
fn wrong_system_and_corrupted_json() {
    let dag = path(3).unwrap();
    let (_, s) = price_with_witness(&dag, GameVariant::Black, &SearchOptions::default()).unwrap();
    let r = black_to_mc(&dag, &s, Q).unwrap();
    let text = to_json(&r);
    let back: InputMcRefutation = from_json(&text).unwrap();
    assert_eq!(back, r);
    let sys = pebbling_system(&path(4).unwrap(), Q).unwrap();
    assert!(matches!(check_input_refutation(&sys, &r), Err(ProofError::BadJustification { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translations_hold_on_random_dags(n in 2usize..9, p in 0.15f64..0.6, seed in any::<u64>(), walk in any::<u64>()) {
        let dag = random(n, p, seed).unwrap();
        let z = dag.sink().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(walk);
        let sys = pebbling_system(&dag, P).unwrap();

        let s = random_black_strategy(&dag, z, &mut rng);
        let sm = validate_strategy(&dag, &s).unwrap();
        let r = black_to_mc(&dag, &s, P).unwrap();
        let m = check_input_refutation(&sys, &r).unwrap();
        prop_assert_eq!(m.degree, sm.space);
        let back = validate_strategy(&dag, &mc_to_pebbling(&dag, &r).unwrap()).unwrap();
        prop_assert_eq!(back.space, sm.space);
        prop_assert!(back.time <= sm.time + sm.space);
        let n2 = check_input_refutation(&sys, &normalize_to_input(&sys, &r.derivation).unwrap()).unwrap();
        prop_assert!(n2.degree <= m.degree && n2.size <= m.size);

        let rev = random_reversible_strategy(&dag, z, &mut rng);
        let rm = validate_strategy(&dag, &rev).unwrap();
        let cert = rev_to_ns(&dag, &rev, P).unwrap();
        prop_assert_eq!(verify_ns(&sys, &cert, NsMode::Multilinear).unwrap().degree, rm.space);
        let as_lines = cert.to_derivation(&sys, ProofSystem::Ns).unwrap();
        prop_assert!(verify_derivation(&sys, &as_lines).is_ok());
    }
}
