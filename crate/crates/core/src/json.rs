//! JSON documents for systems, certificates and proofs.
//!
//! Coefficients travel as strings (`"3"`, `"-1/2"`) and are parsed into the
//! document's `field`; a polynomial is a list of `{coeff, vars}` terms.
//! Strategies use their serde form directly.

use std::collections::BTreeMap;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::algebra::{AlgebraError, ExplicitPoly, FieldSpec, Monomial, Polynomial, Scalar, MAX_VARS};
use crate::formulas::PolySystem;
use crate::pebbling::PebblingStrategy;
use crate::proofs::{
    ConfStep, ConfigurationalProof, Derivation, InputMcRefutation, Justification, Line, NsCertificate, ProofSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Invalid(String),
}

/// A value with a JSON document form.
pub trait Document: Sized {
    type Wire: Serialize + DeserializeOwned;
    fn to_wire(&self) -> Self::Wire;
    fn from_wire(wire: Self::Wire) -> Result<Self, JsonError>;
}

pub fn to_json<T: Document>(value: &T) -> String {
    serde_json::to_string_pretty(&value.to_wire()).expect("wire types always serialize")
}

pub fn from_json<T: Document>(text: &str) -> Result<T, JsonError> {
    let wire = serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))?;
    T::from_wire(wire)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermWire {
    pub coeff: String,
    pub vars: Vec<u32>,
}

pub type PolyWire = Vec<TermWire>;

fn field_from(text: &str) -> Result<FieldSpec, JsonError> {
    Ok(text.parse::<FieldSpec>()?.validate()?)
}

fn check_vars(vars: &[u32]) -> Result<(), JsonError> {
    match vars.iter().find(|&&v| v as usize >= MAX_VARS) {
        Some(v) => Err(JsonError::Invalid(format!("variable {v} out of range (at most {MAX_VARS} variables)"))),
        None => Ok(()),
    }
}

pub fn poly_to_wire(p: &Polynomial) -> PolyWire {
    let f = p.field();
    p.terms().map(|(m, c)| TermWire { coeff: f.format_scalar(c), vars: m.vars().collect() }).collect()
}

/// Terms are multiplied out multilinearly and summed, so repeated
/// variables and repeated monomials are allowed.
pub fn poly_from_wire(field: FieldSpec, wire: &[TermWire]) -> Result<Polynomial, JsonError> {
    let mut p = Polynomial::zero(field);
    for t in wire {
        check_vars(&t.vars)?;
        p.add_term(Monomial::from_vars(t.vars.iter().copied()), field.parse_scalar(&t.coeff)?);
    }
    Ok(p)
}

fn scalar(field: FieldSpec, text: &str) -> Result<Scalar, JsonError> {
    Ok(field.parse_scalar(text)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemWire {
    pub field: String,
    pub num_vars: usize,
    pub axioms: Vec<PolyWire>,
}

impl Document for PolySystem {
    type Wire = SystemWire;

    fn to_wire(&self) -> SystemWire {
        SystemWire { field: self.field.to_string(), num_vars: self.num_vars, axioms: self.axioms.iter().map(poly_to_wire).collect() }
    }

    fn from_wire(w: SystemWire) -> Result<Self, JsonError> {
        let f = field_from(&w.field)?;
        let axioms = w.axioms.iter().map(|p| poly_from_wire(f, p)).collect::<Result<_, _>>()?;
        Ok(PolySystem::new(f, w.num_vars, axioms)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CofactorWire {
    pub axiom: usize,
    pub poly: PolyWire,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BooleanCofactorWire {
    pub var: u32,
    /// `vars` may repeat here: these are not multilinear.
    pub poly: PolyWire,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NsWire {
    pub field: String,
    pub g: Vec<CofactorWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<BooleanCofactorWire>>,
}

/// Certificates carry their field alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCertificate {
    pub field: FieldSpec,
    pub cert: NsCertificate,
}

impl Document for FieldCertificate {
    type Wire = NsWire;

    fn to_wire(&self) -> NsWire {
        let f = self.field;
        let g = self.cert.g.iter().map(|(&axiom, p)| CofactorWire { axiom, poly: poly_to_wire(p) }).collect();
        let h = self.cert.h.as_ref().map(|h| {
            h.iter()
                .map(|(&var, p)| BooleanCofactorWire {
                    var,
                    poly: p.terms().map(|(m, c)| TermWire { coeff: f.format_scalar(c), vars: m.clone() }).collect(),
                })
                .collect()
        });
        NsWire { field: f.to_string(), g, h }
    }

    fn from_wire(w: NsWire) -> Result<Self, JsonError> {
        let f = field_from(&w.field)?;
        let mut g: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for c in &w.g {
            let p = poly_from_wire(f, &c.poly)?;
            let entry = g.entry(c.axiom).or_insert_with(|| Polynomial::zero(f));
            *entry = entry.add(&p)?;
        }
        let h = match w.h {
            None => None,
            Some(hs) => {
                let mut out: BTreeMap<u32, ExplicitPoly> = BTreeMap::new();
                for c in hs {
                    check_vars(&[c.var])?;
                    let entry = out.entry(c.var).or_insert_with(|| ExplicitPoly::zero(f));
                    for t in &c.poly {
                        check_vars(&t.vars)?;
                        let mut pp = t.vars.clone();
                        pp.sort_unstable();
                        entry.add_term(pp, scalar(f, &t.coeff)?);
                    }
                }
                Some(out)
            }
        };
        Ok(FieldCertificate { field: f, cert: NsCertificate { g, h } })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JustWire {
    Axiom { axiom: usize },
    LinComb { a: usize, b: usize, alpha: String, beta: String },
    Mult { a: usize, var: u32 },
}

fn just_to_wire(f: FieldSpec, j: &Justification) -> JustWire {
    match j {
        Justification::Axiom(axiom) => JustWire::Axiom { axiom: *axiom },
        Justification::LinComb { a, b, alpha, beta } => {
            JustWire::LinComb { a: *a, b: *b, alpha: f.format_scalar(alpha), beta: f.format_scalar(beta) }
        }
        Justification::Mult { a, var } => JustWire::Mult { a: *a, var: *var },
    }
}

fn just_from_wire(f: FieldSpec, j: JustWire) -> Result<Justification, JsonError> {
    Ok(match j {
        JustWire::Axiom { axiom } => Justification::Axiom(axiom),
        JustWire::LinComb { a, b, alpha, beta } => Justification::LinComb { a, b, alpha: scalar(f, &alpha)?, beta: scalar(f, &beta)? },
        JustWire::Mult { a, var } => {
            check_vars(&[var])?;
            Justification::Mult { a, var }
        }
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineWire {
    pub poly: PolyWire,
    pub just: JustWire,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivationWire {
    pub field: String,
    pub system: ProofSystem,
    pub lines: Vec<LineWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backbone: Option<Vec<usize>>,
}

/// A derivation whose lines are all over one field. An empty derivation
/// has no field of its own and is written as rational.
fn derivation_field(d: &Derivation) -> FieldSpec {
    d.lines.first().map(|l| l.poly.field()).unwrap_or_default()
}

fn derivation_to_wire(d: &Derivation, backbone: Option<Vec<usize>>) -> DerivationWire {
    let f = derivation_field(d);
    DerivationWire {
        field: f.to_string(),
        system: d.system,
        lines: d.lines.iter().map(|l| LineWire { poly: poly_to_wire(&l.poly), just: just_to_wire(f, &l.just) }).collect(),
        backbone,
    }
}

fn derivation_from_wire(w: DerivationWire) -> Result<(Derivation, Option<Vec<usize>>), JsonError> {
    let f = field_from(&w.field)?;
    let lines = w
        .lines
        .into_iter()
        .map(|l| Ok(Line { poly: poly_from_wire(f, &l.poly)?, just: just_from_wire(f, l.just)? }))
        .collect::<Result<_, JsonError>>()?;
    Ok((Derivation { system: w.system, lines }, w.backbone))
}

impl Document for Derivation {
    type Wire = DerivationWire;

    fn to_wire(&self) -> DerivationWire {
        derivation_to_wire(self, None)
    }

    fn from_wire(w: DerivationWire) -> Result<Self, JsonError> {
        Ok(derivation_from_wire(w)?.0)
    }
}

impl Document for InputMcRefutation {
    type Wire = DerivationWire;

    fn to_wire(&self) -> DerivationWire {
        derivation_to_wire(&self.derivation, Some(self.backbone.clone()))
    }

    fn from_wire(w: DerivationWire) -> Result<Self, JsonError> {
        let (derivation, backbone) = derivation_from_wire(w)?;
        let backbone = backbone.ok_or_else(|| JsonError::Invalid("input refutation without a backbone".into()))?;
        Ok(InputMcRefutation { derivation, backbone })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepWire {
    Download { axiom: usize, poly: PolyWire },
    Infer { just: JustWire, poly: PolyWire },
    Erase { line: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigurationalWire {
    pub field: String,
    pub system: ProofSystem,
    pub steps: Vec<StepWire>,
}

impl Document for ConfigurationalProof {
    type Wire = ConfigurationalWire;

    fn to_wire(&self) -> ConfigurationalWire {
        let f = self
            .steps
            .iter()
            .find_map(|s| match s {
                ConfStep::Download { poly, .. } | ConfStep::Infer { poly, .. } => Some(poly.field()),
                ConfStep::Erase { .. } => None,
            })
            .unwrap_or_default();
        let steps = self
            .steps
            .iter()
            .map(|s| match s {
                ConfStep::Download { axiom, poly } => StepWire::Download { axiom: *axiom, poly: poly_to_wire(poly) },
                ConfStep::Infer { just, poly } => StepWire::Infer { just: just_to_wire(f, just), poly: poly_to_wire(poly) },
                ConfStep::Erase { line } => StepWire::Erase { line: *line },
            })
            .collect();
        ConfigurationalWire { field: f.to_string(), system: self.system, steps }
    }

    fn from_wire(w: ConfigurationalWire) -> Result<Self, JsonError> {
        let f = field_from(&w.field)?;
        let steps = w
            .steps
            .into_iter()
            .map(|s| {
                Ok(match s {
                    StepWire::Download { axiom, poly } => ConfStep::Download { axiom, poly: poly_from_wire(f, &poly)? },
                    StepWire::Infer { just, poly } => ConfStep::Infer { just: just_from_wire(f, just)?, poly: poly_from_wire(f, &poly)? },
                    StepWire::Erase { line } => ConfStep::Erase { line },
                })
            })
            .collect::<Result<_, JsonError>>()?;
        Ok(ConfigurationalProof { system: w.system, steps })
    }
}

impl Document for PebblingStrategy {
    type Wire = PebblingStrategy;

    fn to_wire(&self) -> PebblingStrategy {
        self.clone()
    }

    fn from_wire(w: PebblingStrategy) -> Result<Self, JsonError> {
        Ok(w)
    }
}
