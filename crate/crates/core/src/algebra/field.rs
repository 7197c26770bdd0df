//! Exact coefficient fields: the rationals and prime fields `Z/pZ`.
//!
//! Coefficients are plain [`Scalar`] values; all arithmetic goes through the
//! [`FieldSpec`] that owns them, so a prime residue never has to carry its
//! modulus around.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Default prime for the fast path. Largest prime below 2^16.
pub const DEFAULT_PRIME: u64 = 65521;

/// Which field polynomials live over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    #[default]
    Rational,
    Prime(u64),
}

/// A field element. `Prime` residues are always reduced into `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Build a prime field, rejecting composites and moduli whose products
    /// would overflow `u64`.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(AlgebraError::FieldSpecInvalid(format!("{p} is not a prime below 2^32")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn validate(self) -> Result<Self, AlgebraError> {
        match self {
            FieldSpec::Rational => Ok(self),
            FieldSpec::Prime(p) => FieldSpec::prime(p),
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Prime(0),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Prime(v.rem_euclid(p as i64) as u64),
        }
    }

    /// Map an exact rational into this field. Fails only when the
    /// denominator vanishes mod p.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar, AlgebraError> {
        match self {
            FieldSpec::Rational => Ok(Scalar::Rational(q.clone())),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_u64().expect("residue fits in u64")
                };
                let num = reduce(q.numer());
                let den = reduce(q.denom());
                if den == 0 {
                    return Err(AlgebraError::Parse(format!("denominator of {q} vanishes mod {p}")));
                }
                Ok(self.mul(&Scalar::Prime(num), &self.inv(&Scalar::Prime(den))))
            }
        }
    }

    pub fn is_zero(self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime(v) => *v == 0,
        }
    }

    pub fn is_one(self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime(v) => *v == 1,
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (FieldSpec::Prime(p), Scalar::Prime(x), Scalar::Prime(y)) => Scalar::Prime((x + y) % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (_, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldSpec::Prime(p), Scalar::Prime(x)) => Scalar::Prime((p - x) % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (FieldSpec::Prime(p), Scalar::Prime(x), Scalar::Prime(y)) => Scalar::Prime(x * y % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: &Scalar) -> Scalar {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (_, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (FieldSpec::Prime(p), Scalar::Prime(x)) => Scalar::Prime(pow_mod(*x, p - 2, p)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Does `a` live in this field?
    pub fn owns(self, a: &Scalar) -> bool {
        match (self, a) {
            (FieldSpec::Rational, Scalar::Rational(_)) => true,
            (FieldSpec::Prime(p), Scalar::Prime(v)) => *v < p,
            _ => false,
        }
    }

    /// Parse a coefficient: `"a"`, `"-a"` or `"a/b"`.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar, AlgebraError> {
        let text = text.trim();
        let bad = || AlgebraError::Parse(format!("bad coefficient {text:?}"));
        let q = match text.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(BigInt::from_str(text).map_err(|_| bad())?),
        };
        self.from_rational(&q)
    }

    /// Render a coefficient in the form `parse_scalar` reads back.
    pub fn format_scalar(self, a: &Scalar) -> String {
        match a {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_string(),
            Scalar::Rational(q) => format!("{}/{}", q.numer(), q.denom()),
            Scalar::Prime(v) => v.to_string(),
        }
    }

    /// True when the scalar is "negative" for display purposes.
    pub(crate) fn looks_negative(self, a: &Scalar) -> bool {
        match (self, a) {
            (_, Scalar::Rational(q)) => q.is_negative(),
            (FieldSpec::Prime(p), Scalar::Prime(v)) => *v > p / 2,
            _ => false,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = AlgebraError;

    /// Accepts `rational`, `prime` (default modulus) and `prime:P`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "rational" | "q" | "Q" => Ok(FieldSpec::Rational),
            "prime" => Ok(FieldSpec::Prime(DEFAULT_PRIME)),
            other => {
                let p = other
                    .strip_prefix("prime:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| AlgebraError::FieldSpecInvalid(other.to_string()))?;
                FieldSpec::prime(p)
            }
        }
    }
}
