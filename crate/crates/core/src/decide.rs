//! Bounded-degree derivability of 1 in NS, MC and PC.
//!
//! All three work in the space of multilinear polynomials of degree at most
//! `d`, indexed by `MonomialIndexer`, with an incremental echelon basis:
//!
//! * NS: the span of all products `m p_j` of degree at most `d`;
//! * MC: start from every axiom product reachable by single-variable
//!   multiplications that never leave degree `d`, then keep adding `x u`
//!   for every monomial `u` already in the span;
//! * PC: start from the axioms and keep adding `x p` for every basis row
//!   `p` of degree below `d`.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::algebra::{AlgebraError, EchelonForm, Monomial, MonomialIndexer, Polynomial, DEFAULT_DIMENSION_CAP};
use crate::formulas::PolySystem;
use crate::proofs::{NsCertificate, ProofSystem};

/// Products `m p_j` of degree at most `d`, one per distinct polynomial, as
/// `(j, m, product)`.
fn ns_products(sys: &PolySystem, ix: &MonomialIndexer) -> Vec<(usize, Monomial, Polynomial)> {
    let d = ix.max_degree();
    let mut out = Vec::new();
    for (j, p) in sys.axioms.iter().enumerate() {
        if p.is_zero() || p.degree() > d {
            continue;
        }
        let mut seen: HashSet<Polynomial> = HashSet::new();
        for &m in ix.all() {
            let q = p.mul_monomial(m);
            if q.is_zero() || q.degree() > d || !seen.insert(q.clone()) {
                continue;
            }
            out.push((j, m, q));
        }
    }
    out
}

fn indexer(sys: &PolySystem, d: usize, cap: usize) -> Result<MonomialIndexer, AlgebraError> {
    MonomialIndexer::new(sys.num_vars, d, cap)
}

fn one(sys: &PolySystem, ix: &MonomialIndexer) -> Vec<(u32, crate::algebra::Scalar)> {
    vec![(ix.index(Monomial::ONE).expect("1 is always indexed"), sys.field.one())]
}

/// A degree-`d` Nullstellensatz certificate, if one exists.
pub fn ns_feasible(sys: &PolySystem, d: usize, cap: usize) -> Result<Option<NsCertificate>, AlgebraError> {
    let ix = indexer(sys, d, cap)?;
    let products = ns_products(sys, &ix);
    let mut ech = EchelonForm::tracking(sys.field);
    let target = one(sys, &ix);
    for (_, _, q) in &products {
        ech.insert(&ix.encode(q)?);
    }
    let Some(combo) = ech.express(&target) else {
        return Ok(None);
    };
    let f = sys.field;
    let mut g: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for (gid, c) in combo {
        let (j, m, _) = &products[gid as usize];
        g.entry(*j).or_insert_with(|| Polynomial::zero(f)).add_term(*m, c);
    }
    g.retain(|_, p| !p.is_zero());
    Ok(Some(NsCertificate::new(g)))
}

fn ns_decides(sys: &PolySystem, d: usize, cap: usize) -> Result<bool, AlgebraError> {
    let ix = indexer(sys, d, cap)?;
    let target = one(sys, &ix);
    let mut ech = EchelonForm::new(sys.field);
    for (_, _, q) in ns_products(sys, &ix) {
        ech.insert(&ix.encode(&q)?);
        if ech.contains(&target) {
            return Ok(true);
        }
    }
    Ok(ech.contains(&target))
}

/// Axiom products reachable from `p_j` by multiplying one variable at a
/// time without any intermediate line exceeding degree `d`.
fn mc_axiom_products(sys: &PolySystem, d: usize) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for p in &sys.axioms {
        if p.is_zero() || p.degree() > d {
            continue;
        }
        let mut seen: HashSet<Polynomial> = HashSet::from([p.clone()]);
        let mut queue = VecDeque::from([p.clone()]);
        while let Some(q) = queue.pop_front() {
            for x in 0..sys.num_vars as u32 {
                let r = q.mul_var(x);
                if r.is_zero() || r.degree() > d || seen.contains(&r) {
                    continue;
                }
                seen.insert(r.clone());
                queue.push_back(r);
            }
            out.push(q);
        }
    }
    out
}

pub fn mc_feasible(sys: &PolySystem, d: usize, cap: usize) -> Result<bool, AlgebraError> {
    let ix = indexer(sys, d, cap)?;
    let target = one(sys, &ix);
    let f = sys.field;
    let mut ech = EchelonForm::new(f);
    for q in mc_axiom_products(sys, d) {
        ech.insert(&ix.encode(&q)?);
    }
    // monomials of degree < d that are already known to lie in the span
    let candidates: Vec<Monomial> = ix.all().iter().copied().filter(|m| m.degree() < d).collect();
    let mut reached = vec![false; candidates.len()];
    loop {
        if ech.contains(&target) {
            return Ok(true);
        }
        let mut grew = false;
        for (k, &u) in candidates.iter().enumerate() {
            if reached[k] {
                continue;
            }
            let ui = ix.index(u).expect("indexed");
            if !ech.contains(&[(ui, f.one())]) {
                continue;
            }
            reached[k] = true;
            for x in 0..sys.num_vars as u32 {
                if !u.contains(x) {
                    let xi = ix.index(u.with(x)).expect("degree below bound");
                    grew |= ech.insert(&[(xi, f.one())]);
                }
            }
        }
        if !grew {
            return Ok(ech.contains(&target));
        }
    }
}

pub fn pc_feasible(sys: &PolySystem, d: usize, cap: usize) -> Result<bool, AlgebraError> {
    let ix = indexer(sys, d, cap)?;
    let target = one(sys, &ix);
    let mut ech = EchelonForm::new(sys.field);
    for p in &sys.axioms {
        if p.degree() <= d {
            ech.insert(&ix.encode(p)?);
        }
    }
    // rows are append-only, so a cursor over them is a work queue
    let mut next_row = 0;
    while next_row < ech.rank() {
        if ech.contains(&target) {
            return Ok(true);
        }
        let row = ix.decode(sys.field, ech.row(next_row));
        next_row += 1;
        if row.degree() >= d {
            continue;
        }
        for x in 0..sys.num_vars as u32 {
            let q = row.mul_var(x);
            if !q.is_zero() {
                ech.insert(&ix.encode(&q)?);
            }
        }
    }
    Ok(ech.contains(&target))
}

pub fn feasible(sys: &PolySystem, system: ProofSystem, d: usize, cap: usize) -> Result<bool, AlgebraError> {
    match system {
        ProofSystem::Ns => ns_decides(sys, d, cap),
        ProofSystem::Mc => mc_feasible(sys, d, cap),
        ProofSystem::Pc => pc_feasible(sys, d, cap),
    }
}

/// Least `d <= d_max` at which 1 is derivable, scanning upward; `None` if
/// there is none.
pub fn min_degree(sys: &PolySystem, system: ProofSystem, d_max: usize, cap: usize) -> Result<Option<usize>, AlgebraError> {
    for d in 0..=d_max {
        if feasible(sys, system, d, cap)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// `min_degree` with the default dimension cap and `d_max = num_vars + 1`.
pub fn min_degree_default(sys: &PolySystem, system: ProofSystem) -> Result<Option<usize>, AlgebraError> {
    min_degree(sys, system, sys.num_vars + 1, DEFAULT_DIMENSION_CAP)
}
