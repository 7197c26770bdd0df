use std::collections::BTreeMap;

use super::{same_field, Derivation, Measures, ProofError, ProofSystem};
use crate::algebra::{ExplicitPoly, Polynomial};
use crate::formulas::PolySystem;

/// `sum_j g_j p_j (+ sum_i h_i (x_i^2 - x_i)) = 1`.
///
/// Absent entries of `g` are zero. `h` is only meaningful in explicit
/// mode; in multilinear mode the Boolean axioms are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsCertificate {
    pub g: BTreeMap<usize, Polynomial>,
    pub h: Option<BTreeMap<u32, ExplicitPoly>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NsMode {
    Multilinear,
    Explicit,
}

impl NsCertificate {
    pub fn new(g: BTreeMap<usize, Polynomial>) -> Self {
        NsCertificate { g, h: None }
    }

    /// Rewrite a multilinear certificate for explicit mode by collecting
    /// the multilinearization error into the `h_i`.
    pub fn to_explicit(&self, sys: &PolySystem) -> Result<NsCertificate, ProofError> {
        let mut total = ExplicitPoly::zero(sys.field);
        for (&j, gj) in &self.g {
            let pj = sys.axioms.get(j).ok_or_else(|| ProofError::InvalidCertificate(format!("no axiom {j}")))?;
            total.add_assign(&ExplicitPoly::from(gj).mul(&ExplicitPoly::from(pj)));
        }
        let (_, split) = total.split_boolean();
        // sum g_j p_j = r + sum h_i (x^2 - x), so the h_i enter negated
        let minus_one = ExplicitPoly::from_terms(sys.field, [(sys.field.from_i64(-1), vec![])]);
        let h = split.into_iter().map(|(v, hv)| (v, hv.mul(&minus_one))).collect();
        Ok(NsCertificate { g: self.g.clone(), h: Some(h) })
    }

    /// The same refutation as a line-based proof: each term `c u` of `g_j`
    /// becomes an axiom download, a chain of single-variable
    /// multiplications, and a linear combination into a running sum.
    pub fn to_derivation(&self, sys: &PolySystem, system: ProofSystem) -> Result<Derivation, ProofError> {
        let f = sys.field;
        let mut d = Derivation::new(system);
        let mut acc: Option<usize> = None;
        for (&j, gj) in &self.g {
            if j >= sys.len() {
                return Err(ProofError::InvalidCertificate(format!("no axiom {j}")));
            }
            for (u, c) in gj.terms() {
                if sys.axioms[j].mul_monomial(u).is_zero() {
                    continue;
                }
                let mut line = d.push_axiom(sys, j);
                for v in u.vars() {
                    line = d.push_mult(line, v);
                }
                acc = Some(match acc {
                    None if f.is_one(c) => line,
                    None => d.push_lin_comb(line, line, c.clone(), f.zero())?,
                    Some(a) => d.push_lin_comb(a, line, f.one(), c.clone())?,
                });
            }
        }
        Ok(d)
    }
}

/// Check the certificate identity and report degree = max deg(g_j p_j),
/// size = sum over terms u of g_j of |u p_j|, cofactor size = sum |g_j|.
pub fn verify_ns(sys: &PolySystem, cert: &NsCertificate, mode: NsMode) -> Result<Measures, ProofError> {
    let f = sys.field;
    let mut degree = 0;
    let mut size = 0;
    let mut cofactor_size = 0;
    for (&j, gj) in &cert.g {
        same_field(f, gj)?;
        if j >= sys.len() {
            return Err(ProofError::InvalidCertificate(format!("no axiom {j} (system has {})", sys.len())));
        }
        cofactor_size += gj.num_terms();
    }
    match mode {
        NsMode::Multilinear => {
            if cert.h.as_ref().is_some_and(|h| !h.is_empty()) {
                return Err(ProofError::InvalidCertificate("Boolean-axiom cofactors given in multilinear mode".into()));
            }
            let mut total = Polynomial::zero(f);
            for (&j, gj) in &cert.g {
                let pj = &sys.axioms[j];
                let prod = gj.mul(pj)?;
                degree = degree.max(prod.degree());
                size += gj.terms().map(|(u, _)| pj.mul_monomial(u).num_terms()).sum::<usize>();
                total = total.add(&prod)?;
            }
            if !total.is_one() {
                return Err(ProofError::NotARefutation { residual: total.sub(&Polynomial::one(f))? });
            }
        }
        NsMode::Explicit => {
            let mut total = ExplicitPoly::zero(f);
            let mut add = |q: &ExplicitPoly, cof: &ExplicitPoly| {
                let prod = cof.mul(q);
                degree = degree.max(prod.degree());
                for (m, c) in cof.terms() {
                    let single = ExplicitPoly::from_terms(f, [(c.clone(), m.clone())]);
                    size += single.mul(q).num_terms();
                }
                total.add_assign(&prod);
            };
            for (&j, gj) in &cert.g {
                add(&ExplicitPoly::from(&sys.axioms[j]), &ExplicitPoly::from(gj));
            }
            for (&i, hi) in cert.h.iter().flatten() {
                if hi.field() != f {
                    return Err(crate::algebra::AlgebraError::FieldMismatch(f, hi.field()).into());
                }
                if i as usize >= sys.num_vars {
                    return Err(ProofError::InvalidCertificate(format!("no variable {i}")));
                }
                add(&ExplicitPoly::boolean_axiom(f, i), hi);
            }
            if !total.is_one() {
                total.add_assign(&ExplicitPoly::from_terms(f, [(f.from_i64(-1), vec![])]));
                let (residual, _) = total.split_boolean();
                return Err(ProofError::NotARefutation { residual });
            }
        }
    }
    Ok(Measures { degree, size, cofactor_size: Some(cofactor_size), ..Measures::default() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, Monomial, DEFAULT_PRIME};
    use crate::formulas::pebbling_system;
    use crate::graphs::path;
    use crate::proofs::verify_derivation;

    fn path2_cert(f: FieldSpec) -> NsCertificate {
        let g = BTreeMap::from([(0, Polynomial::one(f)), (1, Polynomial::one(f)), (2, Polynomial::var(f, 0))]);
        NsCertificate::new(g)
    }

    #[test]
    fn path2_certificate() {
        for f in [FieldSpec::Rational, FieldSpec::Prime(DEFAULT_PRIME)] {
            let sys = pebbling_system(&path(2).unwrap(), f).unwrap();
            let m = verify_ns(&sys, &path2_cert(f), NsMode::Multilinear).unwrap();
            assert_eq!(m.degree, 2);
            // |1 - x_u| + |x_u - x_u x_z| + |x_u x_z|
            assert_eq!(m.size, 5);
            assert_eq!(m.cofactor_size, Some(3));
        }
    }

    #[test]
    fn zero_certificate_leaves_minus_one() {
        let f = FieldSpec::Rational;
        let sys = pebbling_system(&path(2).unwrap(), f).unwrap();
        let err = verify_ns(&sys, &NsCertificate::new(BTreeMap::new()), NsMode::Multilinear).unwrap_err();
        assert_eq!(err, ProofError::NotARefutation { residual: Polynomial::from_terms(f, [(f.from_i64(-1), Monomial::ONE)]) });
    }

    #[test]
    fn explicit_mode_on_square_free_certificate() {
        let f = FieldSpec::Rational;
        let sys = pebbling_system(&path(2).unwrap(), f).unwrap();
        // no product of the path_2 certificate repeats a variable
        let lifted = path2_cert(f).to_explicit(&sys).unwrap();
        assert!(lifted.h.as_ref().unwrap().is_empty());
        assert_eq!(verify_ns(&sys, &lifted, NsMode::Explicit).unwrap().degree, 2);
        // x_z (x_u - x_u x_z) vanishes only after multilinearization
        let mut squared = path2_cert(f);
        squared.g.insert(1, Polynomial::var(f, 1));
        assert!(verify_ns(&sys, &squared, NsMode::Multilinear).is_err());
    }

    #[test]
    fn lifted_certificates_carry_boolean_terms() {
        let f = FieldSpec::Rational;
        let sys = pebbling_system(&path(3).unwrap(), f).unwrap();
        // 1 = (1-x0) + (x0 - x0 x1) + x0 (x1 - x1 x2) + x0 x1 x2, with a
        // redundant x1 on the last cofactor that multilinearization absorbs
        let g = BTreeMap::from([
            (0, Polynomial::one(f)),
            (1, Polynomial::one(f)),
            (2, Polynomial::var(f, 0)),
            (3, Polynomial::monomial(f, Monomial::from_vars([0, 1]))),
        ]);
        let cert = NsCertificate::new(g);
        verify_ns(&sys, &cert, NsMode::Multilinear).unwrap();
        let mut redundant = cert.clone();
        redundant.g.insert(3, Polynomial::monomial(f, Monomial::from_vars([0, 1, 2])));
        verify_ns(&sys, &redundant, NsMode::Multilinear).unwrap();
        assert!(verify_ns(&sys, &NsCertificate { h: None, ..redundant.clone() }, NsMode::Explicit).is_err());
        let lifted = redundant.to_explicit(&sys).unwrap();
        assert!(!lifted.h.as_ref().unwrap().is_empty());
        verify_ns(&sys, &lifted, NsMode::Explicit).unwrap();
    }

    #[test]
    fn certificate_to_derivation() {
        let f = FieldSpec::Rational;
        let sys = pebbling_system(&path(2).unwrap(), f).unwrap();
        let d = path2_cert(f).to_derivation(&sys, ProofSystem::Ns).unwrap();
        let m = verify_derivation(&sys, &d).unwrap();
        assert_eq!(m.degree, 2);
    }
}
