use std::collections::{HashMap, VecDeque};

use super::TranslateError;
use crate::algebra::Monomial;
use crate::formulas::PolySystem;
use crate::proofs::{verify_derivation, Derivation, InputMcRefutation, Justification, ProofError, ProofSystem};

#[derive(Clone, Copy)]
enum Reached {
    Start(usize),
    Mult(Monomial, u32),
    Binomial(Monomial, usize),
}

/// Rewrite an MC refutation of a Horn system as an input refutation with
/// no larger degree.
///
/// Monomials are the nodes of a graph: a single-monomial axiom product is
/// a start, a two-monomial axiom product `a m1 + b m2` is an undirected
/// edge, and a multiplication `x u` of a derived monomial line is a
/// directed edge `u -> x u`. Every monomial line of the refutation is
/// reachable from a start, so 1 is; a shortest path becomes the backbone,
/// with the axiom products it uses copied from the original.
pub fn normalize_to_input(sys: &PolySystem, d: &Derivation) -> Result<InputMcRefutation, TranslateError> {
    if let Some(j) = sys.axioms.iter().position(|p| p.num_terms() > 2) {
        return Err(TranslateError::NotHorn(j));
    }
    if d.system != ProofSystem::Mc {
        return Err(TranslateError::NotARefutation(ProofError::WrongSystem { expected: ProofSystem::Mc, got: d.system }));
    }
    verify_derivation(sys, d).map_err(TranslateError::NotARefutation)?;
    let f = sys.field;
    let flags = d.axiom_product_flags();

    let mut in_cone = vec![false; d.len()];
    in_cone[d.len() - 1] = true;
    for i in (0..d.len()).rev() {
        if in_cone[i] {
            for a in d.lines[i].just.premises() {
                in_cone[a] = true;
            }
        }
    }

    let mut starts: Vec<(Monomial, usize)> = Vec::new();
    let mut adj: HashMap<Monomial, Vec<(Monomial, Reached)>> = HashMap::new();
    for i in (0..d.len()).filter(|&i| in_cone[i]) {
        let p = d.poly(i);
        if flags[i] {
            let terms: Vec<Monomial> = p.terms().map(|(m, _)| m).collect();
            match terms[..] {
                [m] => starts.push((m, i)),
                [m1, m2] => {
                    adj.entry(m1).or_default().push((m2, Reached::Binomial(m1, i)));
                    adj.entry(m2).or_default().push((m1, Reached::Binomial(m2, i)));
                }
                _ => {}
            }
        } else if let Justification::Mult { a, var } = d.lines[i].just {
            if let Some((u, _)) = d.poly(a).as_single_term() {
                if !u.contains(var) {
                    adj.entry(u).or_default().push((u.with(var), Reached::Mult(u, var)));
                }
            }
        }
    }

    let mut how: HashMap<Monomial, Reached> = HashMap::new();
    let mut queue = VecDeque::new();
    for &(m, line) in &starts {
        if !how.contains_key(&m) {
            how.insert(m, Reached::Start(line));
            queue.push_back(m);
        }
    }
    while let Some(u) = queue.pop_front() {
        if u.is_one() {
            break;
        }
        for &(w, via) in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            if !how.contains_key(&w) {
                how.insert(w, via);
                queue.push_back(w);
            }
        }
    }
    if !how.contains_key(&Monomial::ONE) {
        return Err(TranslateError::NoBackbone("1 is not reachable from any monomial axiom product".into()));
    }
    let mut path = Vec::new();
    let mut m = Monomial::ONE;
    loop {
        let r = how[&m];
        path.push(r);
        match r {
            Reached::Start(_) => break,
            Reached::Mult(u, _) | Reached::Binomial(u, _) => m = u,
        }
    }
    path.reverse();

    let mut out = Derivation::new(ProofSystem::Mc);
    let mut copied: HashMap<usize, usize> = HashMap::new();
    let mut backbone = Vec::new();
    let mut cur = 0;
    let last = path.len() - 1;
    for (k, step) in path.into_iter().enumerate() {
        cur = match step {
            Reached::Start(line) => copy_chain(sys, d, line, &mut out, &mut copied),
            Reached::Mult(_, x) => out.push_mult(cur, x),
            Reached::Binomial(m1, line) => {
                let q = copy_chain(sys, d, line, &mut out, &mut copied);
                let (_, c) = out.poly(cur).as_single_term().expect("backbone line");
                let qp = out.poly(q);
                let a = qp.coeff(m1).expect("edge endpoint");
                let b = qp.terms().find(|(m, _)| *m != m1).expect("binomial").1;
                let mut alpha = f.one();
                let mut beta = f.neg(&f.div(c, a));
                if k == last {
                    // scale so the final line is exactly 1
                    let r = f.mul(&beta, b);
                    alpha = f.inv(&r);
                    beta = f.div(&beta, &r);
                }
                out.push_lin_comb(cur, q, alpha, beta)?
            }
        };
        backbone.push(cur);
    }
    if !out.poly(cur).is_one() {
        return Err(TranslateError::NoBackbone(format!("the only route to 1 is the constant axiom product {}", out.poly(cur))));
    }
    Ok(InputMcRefutation { derivation: out, backbone })
}

/// Copy an axiom product line and the chain of multiplications above it,
/// reusing lines copied earlier.
fn copy_chain(sys: &PolySystem, d: &Derivation, line: usize, out: &mut Derivation, copied: &mut HashMap<usize, usize>) -> usize {
    if let Some(&c) = copied.get(&line) {
        return c;
    }
    let c = match d.lines[line].just {
        Justification::Axiom(j) => out.push_axiom(sys, j),
        Justification::Mult { a, var } => {
            let ca = copy_chain(sys, d, a, out, copied);
            out.push_mult(ca, var)
        }
        Justification::LinComb { .. } => unreachable!("axiom products are built by multiplication"),
    };
    copied.insert(line, c);
    c
}
