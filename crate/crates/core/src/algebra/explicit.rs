//! Polynomials in the full (non-multilinear) ring, used only by the explicit
//! Nullstellensatz check where the Boolean axioms `x^2 - x` appear with their
//! own cofactors.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::{FieldSpec, Polynomial, Scalar};

/// Monomial as a sorted multiset of variables: `[0, 0, 3]` is `x0^2 x3`.
pub type PowerProduct = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct ExplicitPoly {
    field: FieldSpec,
    terms: BTreeMap<PowerProduct, Scalar>,
}

impl ExplicitPoly {
    pub fn zero(field: FieldSpec) -> Self {
        ExplicitPoly { field, terms: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (Scalar, PowerProduct)>>(field: FieldSpec, terms: I) -> Self {
        let mut p = Self::zero(field);
        for (c, mut m) in terms {
            m.sort_unstable();
            p.add_term(m, c);
        }
        p
    }

    /// `x_v^2 - x_v`.
    pub fn boolean_axiom(field: FieldSpec, v: u32) -> Self {
        Self::from_terms(field, [(field.one(), vec![v, v]), (field.from_i64(-1), vec![v])])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn add_term(&mut self, m: PowerProduct, c: Scalar) {
        let f = self.field;
        if f.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = f.add(e.get(), &c);
                if f.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PowerProduct, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Vec::new()).is_some_and(|c| self.field.is_one(c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add_assign(&mut self, other: &ExplicitPoly) {
        for (m, c) in other.terms() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn mul(&self, other: &ExplicitPoly) -> ExplicitPoly {
        let f = self.field;
        let mut out = ExplicitPoly::zero(f);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let mut m = Vec::with_capacity(a.len() + b.len());
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                m.sort_unstable();
                out.add_term(m, f.mul(ca, cb));
            }
        }
        out
    }

    /// Rewrite `self` as `r + sum_i h_i (x_i^2 - x_i)` with `r` multilinear.
    /// Returns `(r, h)`.
    pub fn split_boolean(&self) -> (Polynomial, BTreeMap<u32, ExplicitPoly>) {
        let f = self.field;
        let mut work: Vec<(PowerProduct, Scalar)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut h: BTreeMap<u32, ExplicitPoly> = BTreeMap::new();
        let mut rest = Polynomial::zero(f);
        while let Some((m, c)) = work.pop() {
            // find a repeated variable
            match m.windows(2).position(|w| w[0] == w[1]) {
                None => {
                    let mono = super::Monomial::from_vars(m.iter().copied());
                    rest.add_term(mono, c);
                }
                Some(i) => {
                    let v = m[i];
                    // c * x^2 * m' = c * m' * (x^2 - x) + c * x * m'
                    let mut reduced = m.clone();
                    reduced.remove(i);
                    let mut cofactor = reduced.clone();
                    let pos = cofactor.iter().position(|&u| u == v).expect("still contains v");
                    cofactor.remove(pos);
                    h.entry(v).or_insert_with(|| ExplicitPoly::zero(f)).add_term(cofactor, c.clone());
                    work.push((reduced, c));
                }
            }
        }
        h.retain(|_, p| !p.is_zero());
        (rest, h)
    }
}

impl From<&Polynomial> for ExplicitPoly {
    fn from(p: &Polynomial) -> Self {
        ExplicitPoly::from_terms(p.field(), p.terms().map(|(m, c)| (c.clone(), m.vars().collect())))
    }
}

impl fmt::Debug for ExplicitPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}*{:?}", self.field.format_scalar(c), m))
            .collect();
        write!(out, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}
