use std::collections::BTreeMap;

use super::derivation::recompute;
use super::{same_field, Derivation, Justification, Measures, ProofError, ProofSystem};
use crate::algebra::{Monomial, Polynomial};
use crate::formulas::PolySystem;

/// One step of a configurational proof. The line introduced by a
/// `Download` or `Infer` step is identified by the step's index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfStep {
    Download { axiom: usize, poly: Polynomial },
    Infer { just: Justification, poly: Polynomial },
    Erase { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigurationalProof {
    pub system: ProofSystem,
    pub steps: Vec<ConfStep>,
}

/// Replay a derivation step by step, erasing every line right after its
/// last use. Only the final line survives.
pub fn to_configurational(d: &Derivation) -> ConfigurationalProof {
    let n = d.len();
    let mut last_use: Vec<usize> = (0..n).collect();
    for (i, line) in d.lines.iter().enumerate() {
        for a in line.just.premises() {
            if a < i {
                last_use[a] = last_use[a].max(i);
            }
        }
    }
    let mut dies_after: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (line, &t) in last_use.iter().enumerate() {
        if line + 1 != n {
            dies_after[t].push(line);
        }
    }
    let mut step_of = vec![0usize; n];
    let mut steps = Vec::new();
    for (i, line) in d.lines.iter().enumerate() {
        step_of[i] = steps.len();
        steps.push(match &line.just {
            Justification::Axiom(j) => ConfStep::Download { axiom: *j, poly: line.poly.clone() },
            just => ConfStep::Infer { just: just.map_premises(|a| step_of[a]), poly: line.poly.clone() },
        });
        for &dead in &dies_after[i] {
            steps.push(ConfStep::Erase { line: step_of[dead] });
        }
    }
    ConfigurationalProof { system: d.system, steps }
}

/// Replay downloads, inferences and erasures; every premise must be live.
/// Reports the maximum number of distinct variables over all
/// configurations as `vspace`.
pub fn verify_configurational(sys: &PolySystem, c: &ConfigurationalProof) -> Result<Measures, ProofError> {
    let mut live: BTreeMap<usize, (Polynomial, bool)> = BTreeMap::new();
    let mut m = Measures { derived_size: Some(0), vspace: Some(0), ..Measures::default() };
    for (k, step) in c.steps.iter().enumerate() {
        match step {
            ConfStep::Download { axiom, poly } => {
                same_field(sys.field, poly)?;
                let expected = sys
                    .axioms
                    .get(*axiom)
                    .ok_or_else(|| ProofError::BadJustification { line: k, reason: format!("no axiom {axiom}") })?;
                if expected != poly {
                    return Err(ProofError::BadJustification { line: k, reason: format!("downloaded {poly} is not axiom {axiom}") });
                }
                m.degree = m.degree.max(poly.degree());
                m.size += poly.num_terms();
                live.insert(k, (poly.clone(), true));
            }
            ConfStep::Infer { just, poly } => {
                same_field(sys.field, poly)?;
                if matches!(just, Justification::Axiom(_)) {
                    return Err(ProofError::BadJustification { line: k, reason: "axioms enter by download".into() });
                }
                if let Some(&dead) = just.premises().iter().find(|a| !live.contains_key(a)) {
                    return Err(ProofError::DeadPremise { step: k, line: dead });
                }
                let (expected, flag) = recompute(sys, c.system, k, just, |a| live.get(&a).cloned())?;
                if &expected != poly {
                    return Err(ProofError::BadJustification { line: k, reason: format!("line reads {poly} but its justification gives {expected}") });
                }
                m.degree = m.degree.max(poly.degree());
                m.size += poly.num_terms();
                *m.derived_size.as_mut().unwrap() += poly.num_terms();
                live.insert(k, (poly.clone(), flag));
            }
            ConfStep::Erase { line } => {
                if live.remove(line).is_none() {
                    return Err(ProofError::DeadPremise { step: k, line: *line });
                }
            }
        }
        let vars = live.values().fold(Monomial::ONE, |acc, (p, _)| acc.mul(p.support_vars()));
        m.vspace = Some(m.vspace.unwrap().max(vars.degree()));
    }
    if !live.values().any(|(p, _)| p.is_one()) {
        return Err(ProofError::LastConfigNot1);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;
    use crate::formulas::{pebbling_system, PolySystem};
    use crate::graphs::path;

    const Q: FieldSpec = FieldSpec::Rational;

    fn path2_derivation() -> (PolySystem, Derivation) {
        let sys = pebbling_system(&path(2).unwrap(), Q).unwrap();
        let mut d = Derivation::new(ProofSystem::Mc);
        let m0 = d.push_axiom(&sys, 2);
        let m1 = d.push_mult(m0, 0);
        let a1 = d.push_axiom(&sys, 1);
        let m2 = d.push_lin_comb(m1, a1, Q.one(), Q.one()).unwrap();
        let a0 = d.push_axiom(&sys, 0);
        d.push_lin_comb(m2, a0, Q.one(), Q.one()).unwrap();
        (sys, d)
    }

    #[test]
    fn path2_vspace() {
        let (sys, d) = path2_derivation();
        let c = to_configurational(&d);
        let m = verify_configurational(&sys, &c).unwrap();
        assert_eq!(m.vspace, Some(2));
        assert_eq!(m.degree, 2);
        // erasures leave only the final 1
        let erased = c.steps.iter().filter(|s| matches!(s, ConfStep::Erase { .. })).count();
        assert_eq!(erased, d.len() - 1);
    }

    #[test]
    fn degenerate_system() {
        let sys = PolySystem::new(Q, 0, vec![Polynomial::one(Q)]).unwrap();
        let mut d = Derivation::new(ProofSystem::Mc);
        d.push_axiom(&sys, 0);
        let m = verify_configurational(&sys, &to_configurational(&d)).unwrap();
        assert_eq!(m.vspace, Some(0));
    }

    #[test]
    fn liveness_and_final_configuration() {
        let (sys, d) = path2_derivation();
        let mut c = to_configurational(&d);
        // erase line 0 before the multiplication that needs it
        c.steps.insert(1, ConfStep::Erase { line: 0 });
        assert!(matches!(verify_configurational(&sys, &c), Err(ProofError::DeadPremise { .. })));
        let empty = ConfigurationalProof { system: ProofSystem::Mc, steps: vec![] };
        assert_eq!(verify_configurational(&sys, &empty), Err(ProofError::LastConfigNot1));
        let mut erased_one = to_configurational(&d);
        let last = erased_one.steps.iter().rposition(|s| matches!(s, ConfStep::Infer { .. })).unwrap();
        erased_one.steps.push(ConfStep::Erase { line: last });
        assert_eq!(verify_configurational(&sys, &erased_one), Err(ProofError::LastConfigNot1));
    }
}
