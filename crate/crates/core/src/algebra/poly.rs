use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::{AlgebraError, FieldSpec, Monomial, Scalar};

/// A multilinear polynomial over an exact field.
///
/// Terms are kept in a `BTreeMap` keyed by monomial, so the representation
/// is canonical: no zero coefficients, graded monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec) -> Self {
        Polynomial { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::monomial(field, Monomial::ONE)
    }

    pub fn monomial(field: FieldSpec, m: Monomial) -> Self {
        Self::term(field, m, field.one())
    }

    pub fn term(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(field);
        p.add_term(m, c);
        p
    }

    pub fn var(field: FieldSpec, v: u32) -> Self {
        Self::monomial(field, Monomial::var(v))
    }

    /// `1 - x_v`.
    pub fn one_minus_var(field: FieldSpec, v: u32) -> Self {
        let mut p = Self::one(field);
        p.add_term(Monomial::var(v), field.from_i64(-1));
        p
    }

    /// Build from (coefficient, monomial) pairs in any order; like terms are
    /// combined.
    pub fn from_terms<I: IntoIterator<Item = (Scalar, Monomial)>>(field: FieldSpec, terms: I) -> Self {
        let mut p = Self::zero(field);
        for (c, m) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Add `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert!(self.field.owns(&c), "coefficient from another field");
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Option<&Scalar> {
        self.terms.get(&m)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Monomial::ONE).is_some_and(|c| self.field.is_one(c))
    }

    /// Maximum term degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, |m| m.degree())
    }

    /// The single term, if this is a nonzero scalar times one monomial.
    pub fn as_single_term(&self) -> Option<(Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Union of all variables appearing in the polynomial.
    pub fn support_vars(&self) -> Monomial {
        self.terms.keys().fold(Monomial::ONE, |a, m| a.mul(*m))
    }

    fn check(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// `alpha * self + beta * other`.
    pub fn lin_comb(&self, alpha: &Scalar, other: &Polynomial, beta: &Scalar) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let f = self.field;
        if !f.owns(alpha) || !f.owns(beta) {
            return Err(AlgebraError::ScalarMismatch(f));
        }
        let mut out = Polynomial::zero(f);
        for (m, c) in self.terms() {
            out.add_term(m, f.mul(alpha, c));
        }
        for (m, c) in other.terms() {
            out.add_term(m, f.mul(beta, c));
        }
        Ok(out)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        let one = self.field.one();
        self.lin_comb(&one, other, &one)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.lin_comb(&self.field.one(), other, &self.field.from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let f = self.field;
        let mut out = Polynomial::zero(f);
        if f.is_zero(c) {
            return out;
        }
        for (m, a) in self.terms() {
            out.terms.insert(m, f.mul(a, c));
        }
        out
    }

    /// Multiply by a monomial under multilinear reduction.
    pub fn mul_monomial(&self, u: Monomial) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in self.terms() {
            out.add_term(m.mul(u), c.clone());
        }
        out
    }

    pub fn mul_var(&self, v: u32) -> Polynomial {
        self.mul_monomial(Monomial::var(v))
    }

    /// Full multilinear product.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let f = self.field;
        let mut out = Polynomial::zero(f);
        for (m, a) in self.terms() {
            for (u, b) in other.terms() {
                out.add_term(m.mul(u), f.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Evaluate at a 0/1 point given as the set of variables set to 1.
    pub fn eval_bool(&self, ones: Monomial) -> Scalar {
        let f = self.field;
        let mut acc = f.zero();
        for (m, c) in self.terms() {
            if m.divides(ones) {
                acc = f.add(&acc, c);
            }
        }
        acc
    }

    /// Reinterpret the coefficients in another field (rational -> prime by
    /// reduction; prime -> rational by the canonical representative).
    pub fn to_field(&self, target: FieldSpec) -> Result<Polynomial, AlgebraError> {
        if target == self.field {
            return Ok(self.clone());
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in self.terms() {
            let text = self.field.format_scalar(c);
            out.add_term(m, target.parse_scalar(&text)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = self.field;
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = f.looks_negative(c);
            let mag = if neg { f.neg(c) } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(out, "{}", f.format_scalar(&mag))?;
            } else if f.is_one(&mag) {
                write!(out, "{m}")?;
            } else {
                write!(out, "{}*{m}", f.format_scalar(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_PRIME;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn multilinear_reduction_kills_x_times_one_minus_x() {
        let x = Polynomial::var(Q, 0);
        let p = Polynomial::one_minus_var(Q, 0);
        assert!(x.mul(&p).unwrap().is_zero());
        assert_eq!(x.mul_var(0), x);
    }

    #[test]
    fn path2_backbone_step() {
        // x_u x_z + (x_u - x_u x_z) = x_u
        let (u, z) = (0, 1);
        let uz = Polynomial::monomial(Q, Monomial::from_vars([u, z]));
        let axiom = Polynomial::var(Q, u).mul(&Polynomial::one_minus_var(Q, z)).unwrap();
        assert_eq!(uz.add(&axiom).unwrap(), Polynomial::var(Q, u));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let p = Polynomial::one(Q);
        let q = Polynomial::one(FieldSpec::Prime(DEFAULT_PRIME));
        assert!(matches!(p.add(&q), Err(AlgebraError::FieldMismatch(..))));
    }

    #[test]
    fn display() {
        let p = Polynomial::one_minus_var(Q, 2).mul_var(1);
        assert_eq!(p.to_string(), "x1 - x1*x2");
        let f = FieldSpec::Prime(7);
        assert_eq!(Polynomial::one_minus_var(f, 0).to_string(), "1 - x0");
    }

    fn arb_terms() -> impl Strategy<Value = Vec<(i64, u128)>> {
        prop::collection::vec((-5i64..5, 0u128..32), 0..8)
    }

    proptest! {
        #[test]
        fn insertion_order_does_not_matter(terms in arb_terms()) {
            let build = |ts: &[(i64, u128)]| Polynomial::from_terms(
                Q, ts.iter().map(|&(c, m)| (Q.from_i64(c), Monomial::from_bits(m))));
            let mut rev = terms.clone();
            rev.reverse();
            prop_assert_eq!(build(&terms), build(&rev));
        }

        #[test]
        fn product_distributes(a in arb_terms(), b in arb_terms(), c in arb_terms()) {
            let build = |ts: &[(i64, u128)]| Polynomial::from_terms(
                Q, ts.iter().map(|&(c, m)| (Q.from_i64(c), Monomial::from_bits(m))));
            let (a, b, c) = (build(&a), build(&b), build(&c));
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }
    }
}
