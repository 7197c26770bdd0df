use std::cmp::Ordering;
use std::fmt;

/// Largest supported variable count for multilinear monomials.
pub const MAX_VARS: usize = 128;

/// A multilinear monomial, stored as the set of its variables.
///
/// The empty set is the constant monomial `1`. Ordering is graded: by degree
/// first, then lexicographically on the sorted variable list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(v: u32) -> Self {
        assert!((v as usize) < MAX_VARS, "variable {v} out of range");
        Monomial(1u128 << v)
    }

    pub fn from_vars<I: IntoIterator<Item = u32>>(vars: I) -> Self {
        vars.into_iter().fold(Monomial::ONE, |m, v| m.mul(Monomial::var(v)))
    }

    pub fn from_bits(bits: u128) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u32) -> bool {
        (v as usize) < MAX_VARS && self.0 >> v & 1 == 1
    }

    /// Multilinear product: `x * x = x`, so this is set union.
    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    pub fn with(self, v: u32) -> Monomial {
        self.mul(Monomial::var(v))
    }

    pub fn without(self, v: u32) -> Monomial {
        Monomial(self.0 & !(1u128 << v))
    }

    /// Set difference.
    pub fn minus(self, other: Monomial) -> Monomial {
        Monomial(self.0 & !other.0)
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    /// Variables in increasing order.
    pub fn vars(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// Highest variable index plus one (0 for the constant).
    pub fn var_bound(self) -> usize {
        MAX_VARS - self.0.leading_zeros() as usize
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 >> diff.trailing_zeros() & 1 == 1 {
                // first differing variable belongs to self: smaller element first
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.vars().map(|v| format!("x{v}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}
