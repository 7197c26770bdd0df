//! CNF formulas, pebbling formulas and their multilinear polynomial
//! encoding.
//!
//! A clause `P ∨ ¬N` becomes `prod_{x in P} (1 - x) * prod_{y in N} y`.
//! Variables keep their Boolean value (true = 1); it is the polynomial's
//! value that reads false = 1, true = 0: the encoding vanishes exactly on
//! satisfying assignments.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::algebra::{AlgebraError, FieldSpec, Monomial, Polynomial, MAX_VARS};
use crate::graphs::{Dag, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("pebbling formulas need a DAG with a unique sink")]
    NoUniqueSink,
    #[error("clause {0} contains a variable and its negation")]
    Tautology(usize),
    #[error("clause {clause} mentions variable {var} but the formula has {num_vars} variables")]
    VariableOutOfRange { clause: usize, var: u32, num_vars: usize },
    #[error("{0} variables exceed the supported maximum of {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("DIMACS line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Clause {
    pub positives: BTreeSet<u32>,
    pub negatives: BTreeSet<u32>,
}

impl Clause {
    pub fn new<P, N>(positives: P, negatives: N) -> Clause
    where
        P: IntoIterator<Item = u32>,
        N: IntoIterator<Item = u32>,
    {
        Clause { positives: positives.into_iter().collect(), negatives: negatives.into_iter().collect() }
    }

    pub fn is_tautology(&self) -> bool {
        !self.positives.is_disjoint(&self.negatives)
    }

    pub fn is_horn(&self) -> bool {
        self.positives.len() <= 1
    }

    pub fn width(&self) -> usize {
        self.positives.len() + self.negatives.len()
    }

    /// Clause value under the assignment whose true variables are `trues`.
    pub fn satisfied_by(&self, trues: Monomial) -> bool {
        self.positives.iter().any(|&x| trues.contains(x)) || self.negatives.iter().any(|&y| !trues.contains(y))
    }

    /// `prod_{x in P} (1 - x) * prod_{y in N} y`.
    pub fn encode(&self, field: FieldSpec) -> Polynomial {
        let mut p = Polynomial::monomial(field, Monomial::from_vars(self.negatives.iter().copied()));
        for &x in &self.positives {
            p = p.mul(&Polynomial::one_minus_var(field, x)).expect("same field");
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<CnfFormula, FormulaError> {
        if num_vars > MAX_VARS {
            return Err(FormulaError::TooManyVariables(num_vars));
        }
        for (i, c) in clauses.iter().enumerate() {
            if c.is_tautology() {
                return Err(FormulaError::Tautology(i));
            }
            if let Some(&var) = c.positives.iter().chain(&c.negatives).find(|&&v| v as usize >= num_vars) {
                return Err(FormulaError::VariableOutOfRange { clause: i, var, num_vars });
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn is_horn(&self) -> bool {
        self.clauses.iter().all(Clause::is_horn)
    }

    pub fn satisfied_by(&self, trues: Monomial) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(trues))
    }

    pub fn parse_dimacs(text: &str) -> Result<CnfFormula, FormulaError> {
        let err = |line: usize, msg: String| FormulaError::Dimacs { line, msg };
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut lits: Vec<i64> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let no = i + 1;
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 4 || toks[1] != "cnf" || header.is_some() {
                    return Err(err(no, format!("bad problem line {line:?}")));
                }
                let v = toks[2].parse().map_err(|_| err(no, "bad variable count".into()))?;
                let c = toks[3].parse().map_err(|_| err(no, "bad clause count".into()))?;
                header = Some((v, c));
                continue;
            }
            let Some((num_vars, _)) = header else {
                return Err(err(no, "clause before the problem line".into()));
            };
            for tok in line.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| err(no, format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    let clause = clause_from_lits(&lits);
                    if clause.is_tautology() {
                        return Err(FormulaError::Tautology(clauses.len()));
                    }
                    clauses.push(clause);
                    lits.clear();
                } else if lit.unsigned_abs() as usize > num_vars {
                    return Err(err(no, format!("literal {lit} exceeds {num_vars} variables")));
                } else {
                    lits.push(lit);
                }
            }
        }
        let (num_vars, count) = header.ok_or_else(|| err(0, "missing problem line".into()))?;
        if !lits.is_empty() {
            clauses.push(clause_from_lits(&lits));
        }
        if clauses.len() != count {
            return Err(err(0, format!("header announces {count} clauses, found {}", clauses.len())));
        }
        CnfFormula::new(num_vars, clauses)
    }

    /// DIMACS text; variable `v` is written as `v + 1`.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for &x in &c.positives {
                write!(out, "{} ", x + 1).unwrap();
            }
            for &y in &c.negatives {
                write!(out, "-{} ", y + 1).unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

fn clause_from_lits(lits: &[i64]) -> Clause {
    let mut c = Clause::default();
    for &l in lits {
        let v = (l.unsigned_abs() - 1) as u32;
        if l > 0 {
            c.positives.insert(v);
        } else {
            c.negatives.insert(v);
        }
    }
    c
}

/// One pebbling axiom `¬pred(v) ∨ x_v` per vertex, in vertex order, then the
/// sink axiom `¬x_z`. Variable `v` stands for vertex `v`, so the axiom of
/// vertex `v` has index `v` and the sink axiom has index `n`.
pub fn pebbling_formula(dag: &Dag) -> Result<CnfFormula, FormulaError> {
    let z = dag.sink().ok_or(FormulaError::NoUniqueSink)?;
    let mut clauses: Vec<Clause> = dag.vertices().map(|v| Clause::new([v], dag.preds(v).iter().copied())).collect();
    clauses.push(Clause::new([], [z]));
    CnfFormula::new(dag.n(), clauses)
}

/// Index of the sink axiom in `pebbling_formula(dag)`.
pub fn sink_axiom_index(dag: &Dag) -> usize {
    dag.n()
}

/// The pebbling axiom of `v` as a polynomial: `m_pred(v) (1 - x_v)`.
pub fn pebbling_axiom(dag: &Dag, v: Vertex, field: FieldSpec) -> Polynomial {
    Clause::new([v], dag.preds(v).iter().copied()).encode(field)
}

/// A list of multilinear polynomials to be refuted, all over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    pub field: FieldSpec,
    pub num_vars: usize,
    pub axioms: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(field: FieldSpec, num_vars: usize, axioms: Vec<Polynomial>) -> Result<PolySystem, AlgebraError> {
        field.validate()?;
        if num_vars > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(num_vars));
        }
        for p in &axioms {
            if p.field() != field {
                return Err(AlgebraError::FieldMismatch(field, p.field()));
            }
            if p.support_vars().var_bound() > num_vars {
                return Err(AlgebraError::TooManyVariables(p.support_vars().var_bound()));
            }
        }
        Ok(PolySystem { field, num_vars, axioms })
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// Every axiom is a single term or a combination of two monomials.
    pub fn is_horn(&self) -> bool {
        self.axioms.iter().all(|p| p.num_terms() <= 2)
    }

    pub fn to_field(&self, field: FieldSpec) -> Result<PolySystem, AlgebraError> {
        let axioms = self.axioms.iter().map(|p| p.to_field(field)).collect::<Result<_, _>>()?;
        PolySystem::new(field, self.num_vars, axioms)
    }
}

pub fn encode(f: &CnfFormula, field: FieldSpec) -> Result<PolySystem, FormulaError> {
    field.validate()?;
    Ok(PolySystem { field, num_vars: f.num_vars, axioms: f.clauses.iter().map(|c| c.encode(field)).collect() })
}

/// `encode(pebbling_formula(dag))`.
pub fn pebbling_system(dag: &Dag, field: FieldSpec) -> Result<PolySystem, FormulaError> {
    encode(&pebbling_formula(dag)?, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_PRIME;
    use crate::graphs::{path, pyramid, random};
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn pebbling_formula_examples() {
        let f = pebbling_formula(&path(2).unwrap()).unwrap();
        assert_eq!(f.clauses, vec![Clause::new([0], []), Clause::new([1], [0]), Clause::new([], [1])]);
        let f1 = pebbling_formula(&path(1).unwrap()).unwrap();
        assert_eq!(f1.clauses, vec![Clause::new([0], []), Clause::new([], [0])]);
        let f3 = pebbling_formula(&pyramid(1).unwrap()).unwrap();
        assert_eq!(f3.clauses[2], Clause::new([2], [0, 1]));
        assert!(f.is_horn() && f3.is_horn());
        let vee = Dag::parse("3\n0 1\n0 2").unwrap();
        assert_eq!(pebbling_formula(&vee), Err(FormulaError::NoUniqueSink));
    }

    #[test]
    fn horn_detection() {
        assert!(!CnfFormula::new(2, vec![Clause::new([0, 1], [])]).unwrap().is_horn());
        assert!(CnfFormula::default().is_horn());
        assert_eq!(CnfFormula::new(1, vec![Clause::new([0], [0])]), Err(FormulaError::Tautology(0)));
    }

    #[test]
    fn encode_examples() {
        let sys = pebbling_system(&path(2).unwrap(), Q).unwrap();
        let u = Polynomial::var(Q, 0);
        let uz = Polynomial::monomial(Q, Monomial::from_vars([0, 1]));
        assert_eq!(sys.axioms[0], Polynomial::one_minus_var(Q, 0));
        assert_eq!(sys.axioms[1], u.sub(&uz).unwrap());
        assert_eq!(sys.axioms[2], Polynomial::var(Q, 1));
        assert_eq!(Clause::new([], [0, 1]).encode(Q), uz);
        let wide = Clause::new([0, 1], []).encode(Q);
        assert_eq!(wide.num_terms(), 4);
        assert_eq!(wide.to_string(), "1 - x0 - x1 + x0*x1");
        assert!(sys.is_horn());
    }

    #[test]
    fn dimacs_round_trip() {
        let f = pebbling_formula(&pyramid(2).unwrap()).unwrap();
        let text = f.to_dimacs();
        assert_eq!(CnfFormula::parse_dimacs(&text).unwrap(), f);
        let g = CnfFormula::parse_dimacs("c hi\np cnf 2 2\n1 -2 0 2\n0\n").unwrap();
        assert_eq!(g.clauses, vec![Clause::new([0], [1]), Clause::new([1], [])]);
        assert!(CnfFormula::parse_dimacs("p cnf 1 1\n1 -1 0").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 1 1\n2 0").is_err());
        assert!(CnfFormula::parse_dimacs("1 0").is_err());
    }

    #[test]
    fn clause_polynomials_vanish_exactly_on_satisfying_points() {
        let f = Clause::new([0, 2], [1, 3]);
        let p = f.encode(FieldSpec::Prime(DEFAULT_PRIME));
        for bits in 0u128..16 {
            let trues = Monomial::from_bits(bits);
            assert_eq!(f.satisfied_by(trues), FieldSpec::Prime(DEFAULT_PRIME).is_zero(&p.eval_bool(trues)));
        }
    }

    proptest! {
        #[test]
        fn encoding_matches_semantics(seed in any::<u64>(), n in 1usize..8) {
            let dag = random(n, 0.4, seed).unwrap();
            let f = pebbling_formula(&dag).unwrap();
            let sys = encode(&f, Q).unwrap();
            prop_assert_eq!(sys.len(), f.clauses.len());
            prop_assert!(sys.is_horn());
            let k = f.num_vars;
            for bits in 0u128..(1u128 << k) {
                let trues = Monomial::from_bits(bits);
                for (c, p) in f.clauses.iter().zip(&sys.axioms) {
                    prop_assert_eq!(c.satisfied_by(trues), Q.is_zero(&p.eval_bool(trues)));
                }
            }
        }
    }
}
