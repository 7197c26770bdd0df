use std::collections::HashSet;

use super::{same_field, Measures, ProofError, ProofSystem};
use crate::algebra::{Polynomial, Scalar};
use crate::formulas::PolySystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// Copy of axiom `j`.
    Axiom(usize),
    /// `alpha * line a + beta * line b`.
    LinComb { a: usize, b: usize, alpha: Scalar, beta: Scalar },
    /// `x_var * line a`.
    Mult { a: usize, var: u32 },
}

impl Justification {
    pub fn premises(&self) -> Vec<usize> {
        match *self {
            Justification::Axiom(_) => vec![],
            Justification::LinComb { a, b, .. } => vec![a, b],
            Justification::Mult { a, .. } => vec![a],
        }
    }

    /// Rename premise line ids.
    pub fn map_premises(&self, f: impl Fn(usize) -> usize) -> Justification {
        match self {
            Justification::Axiom(j) => Justification::Axiom(*j),
            Justification::LinComb { a, b, alpha, beta } => {
                Justification::LinComb { a: f(*a), b: f(*b), alpha: alpha.clone(), beta: beta.clone() }
            }
            Justification::Mult { a, var } => Justification::Mult { a: f(*a), var: *var },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub poly: Polynomial,
    pub just: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub system: ProofSystem,
    pub lines: Vec<Line>,
}

impl Derivation {
    pub fn new(system: ProofSystem) -> Self {
        Derivation { system, lines: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn poly(&self, i: usize) -> &Polynomial {
        &self.lines[i].poly
    }

    pub fn push(&mut self, poly: Polynomial, just: Justification) -> usize {
        self.lines.push(Line { poly, just });
        self.lines.len() - 1
    }

    pub fn push_axiom(&mut self, sys: &PolySystem, j: usize) -> usize {
        self.push(sys.axioms[j].clone(), Justification::Axiom(j))
    }

    pub fn push_mult(&mut self, a: usize, var: u32) -> usize {
        let poly = self.lines[a].poly.mul_var(var);
        self.push(poly, Justification::Mult { a, var })
    }

    pub fn push_lin_comb(&mut self, a: usize, b: usize, alpha: Scalar, beta: Scalar) -> Result<usize, ProofError> {
        let poly = self.lines[a].poly.lin_comb(&alpha, &self.lines[b].poly, &beta)?;
        Ok(self.push(poly, Justification::LinComb { a, b, alpha, beta }))
    }

    /// The same lines under another rule set.
    pub fn relabel(&self, system: ProofSystem) -> Derivation {
        Derivation { system, lines: self.lines.clone() }
    }

    /// Which lines are axiom products: axiom copies and variable multiples
    /// of axiom products.
    pub fn axiom_product_flags(&self) -> Vec<bool> {
        let mut flags: Vec<bool> = Vec::with_capacity(self.lines.len());
        for line in &self.lines {
            let flag = match line.just {
                Justification::Axiom(_) => true,
                Justification::Mult { a, .. } => flags.get(a).copied().unwrap_or(false),
                Justification::LinComb { .. } => false,
            };
            flags.push(flag);
        }
        flags
    }
}

/// The monomial calculus side condition on a multiplication premise: an
/// axiom product, or monomial-shaped (zero or a nonzero scalar times one
/// monomial). Accepting scalar multiples is an interpretation; scaling is a
/// linear combination and does not change what is derivable.
pub fn mc_mult_premise_ok(premise: &Polynomial, axiom_product: bool) -> bool {
    axiom_product || premise.num_terms() <= 1
}

pub(crate) fn recompute(
    sys: &PolySystem,
    system: ProofSystem,
    line: usize,
    just: &Justification,
    premise: impl Fn(usize) -> Option<(Polynomial, bool)>,
) -> Result<(Polynomial, bool), ProofError> {
    let bad = |reason: String| ProofError::BadJustification { line, reason };
    match just {
        Justification::Axiom(j) => {
            let p = sys.axioms.get(*j).ok_or_else(|| bad(format!("no axiom {j}")))?;
            Ok((p.clone(), true))
        }
        Justification::Mult { a, var } => {
            let (p, flag) = premise(*a).ok_or_else(|| bad(format!("premise {a} is not an earlier line")))?;
            if *var as usize >= sys.num_vars {
                return Err(bad(format!("no variable x{var}")));
            }
            match system {
                ProofSystem::Pc => {}
                ProofSystem::Mc if mc_mult_premise_ok(&p, flag) => {}
                ProofSystem::Mc => return Err(ProofError::McMultViolation { line }),
                ProofSystem::Ns if flag => {}
                ProofSystem::Ns => return Err(ProofError::NsMultViolation { line }),
            }
            Ok((p.mul_var(*var), flag))
        }
        Justification::LinComb { a, b, alpha, beta } => {
            let (p, _) = premise(*a).ok_or_else(|| bad(format!("premise {a} is not an earlier line")))?;
            let (q, _) = premise(*b).ok_or_else(|| bad(format!("premise {b} is not an earlier line")))?;
            if !sys.field.owns(alpha) || !sys.field.owns(beta) {
                return Err(bad("coefficient outside the field".into()));
            }
            Ok((p.lin_comb(alpha, &q, beta)?, false))
        }
    }
}

/// Recompute every line from its justification under the rules of
/// `d.system` and require the last line to be 1.
pub fn verify_derivation(sys: &PolySystem, d: &Derivation) -> Result<Measures, ProofError> {
    let mut flags: Vec<bool> = Vec::with_capacity(d.lines.len());
    let mut m = Measures { derived_size: Some(0), ..Measures::default() };
    for (i, line) in d.lines.iter().enumerate() {
        same_field(sys.field, &line.poly)?;
        let (expected, flag) = recompute(sys, d.system, i, &line.just, |a| (a < i).then(|| (d.lines[a].poly.clone(), flags[a])))?;
        if expected != line.poly {
            return Err(ProofError::BadJustification {
                line: i,
                reason: format!("line reads {} but its justification gives {}", line.poly, expected),
            });
        }
        flags.push(flag);
        m.degree = m.degree.max(line.poly.degree());
        m.size += line.poly.num_terms();
        if !matches!(line.just, Justification::Axiom(_)) {
            *m.derived_size.as_mut().unwrap() += line.poly.num_terms();
        }
    }
    if !d.lines.last().is_some_and(|l| l.poly.is_one()) {
        return Err(ProofError::LastLineNotOne);
    }
    Ok(m)
}

/// An MC refutation threaded through a chain of monomial lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputMcRefutation {
    pub derivation: Derivation,
    pub backbone: Vec<usize>,
}

/// `verify_derivation` plus the backbone conditions: monomial-shaped lines
/// at increasing positions, pairwise distinct monomials, `M_0` an axiom
/// product, `M_t = 1`, and every step either a variable multiplication of
/// the previous backbone line or its linear combination with an axiom
/// product.
pub fn check_input_refutation(sys: &PolySystem, r: &InputMcRefutation) -> Result<Measures, ProofError> {
    let d = &r.derivation;
    if d.system != ProofSystem::Mc {
        return Err(ProofError::WrongSystem { expected: ProofSystem::Mc, got: d.system });
    }
    let measures = verify_derivation(sys, d)?;
    let broken = |index: usize, reason: &str| ProofError::BackboneBroken { index, reason: reason.to_string() };
    let flags = d.axiom_product_flags();
    if r.backbone.is_empty() {
        return Err(broken(0, "empty backbone"));
    }
    let mut seen = HashSet::new();
    for (k, &line) in r.backbone.iter().enumerate() {
        if line >= d.len() {
            return Err(broken(k, "line index out of range"));
        }
        if k > 0 && line <= r.backbone[k - 1] {
            return Err(broken(k, "backbone positions must increase"));
        }
        let Some((mono, _)) = d.poly(line).as_single_term() else {
            return Err(broken(k, "backbone line is not a monomial"));
        };
        if !seen.insert(mono) {
            return Err(broken(k, "backbone monomial repeats"));
        }
        if k == 0 {
            if !flags[line] {
                return Err(broken(0, "first backbone line is not an axiom product"));
            }
            continue;
        }
        let prev = r.backbone[k - 1];
        let ok = match d.lines[line].just {
            Justification::Mult { a, .. } => a == prev,
            Justification::LinComb { a, b, .. } => (a == prev && flags[b]) || (b == prev && flags[a]),
            Justification::Axiom(_) => false,
        };
        if !ok {
            return Err(broken(k, "step is neither a multiplication of the previous backbone line nor its combination with an axiom product"));
        }
    }
    let last = *r.backbone.last().unwrap();
    if !d.poly(last).is_one() {
        return Err(broken(r.backbone.len() - 1, "backbone does not end at 1"));
    }
    Ok(measures)
}
