//! Exact sparse linear algebra over the monomial basis.
//!
//! Vectors are sparse, indexed by a graded colex rank of multilinear
//! monomials so that the highest index of a vector is always one of its
//! highest-degree monomials. Rows of an [`EchelonForm`] have pairwise
//! distinct leading (largest) indices, normalized to coefficient 1; that is
//! enough for exact membership tests and keeps insertion incremental.

use std::collections::{BTreeMap, HashMap};

use super::{AlgebraError, FieldSpec, Monomial, Polynomial, Scalar};

/// Default cap on the monomial-basis dimension.
pub const DEFAULT_DIMENSION_CAP: usize = 2_000_000;

pub type SparseVec = Vec<(u32, Scalar)>;

/// Graded colex ranking of all monomials over `num_vars` variables with
/// degree at most `max_degree`.
#[derive(Clone, Debug)]
pub struct MonomialIndexer {
    num_vars: usize,
    max_degree: usize,
    offsets: Vec<usize>,
    binom: Vec<Vec<usize>>,
    by_index: Vec<Monomial>,
}

fn binomial_table(n: usize, k: usize) -> Vec<Vec<usize>> {
    // binom[c][i] = C(c, i), saturating
    let mut t = vec![vec![0usize; k + 1]; n + 1];
    for c in 0..=n {
        t[c][0] = 1;
        for i in 1..=k.min(c) {
            t[c][i] = t[c - 1][i - 1].saturating_add(if i <= c - 1 { t[c - 1][i] } else { 0 });
        }
    }
    t
}

impl MonomialIndexer {
    pub fn new(num_vars: usize, max_degree: usize, cap: usize) -> Result<Self, AlgebraError> {
        if num_vars > super::MAX_VARS {
            return Err(AlgebraError::TooManyVariables(num_vars));
        }
        let max_degree = max_degree.min(num_vars);
        let binom = binomial_table(num_vars, max_degree);
        let mut offsets = Vec::with_capacity(max_degree + 2);
        let mut total = 0usize;
        for k in 0..=max_degree {
            offsets.push(total);
            total = total.saturating_add(binom[num_vars][k]);
        }
        offsets.push(total);
        if total > cap {
            return Err(AlgebraError::DimensionCapExceeded { dimension: total, cap });
        }
        let mut by_index = Vec::with_capacity(total);
        for k in 0..=max_degree {
            // k-subsets in colex order are the k-bit masks in increasing order
            let limit: u128 = if num_vars == 128 { u128::MAX } else { (1u128 << num_vars) - 1 };
            let mut x: u128 = if k == 0 { 0 } else { (1u128 << k) - 1 };
            loop {
                by_index.push(Monomial::from_bits(x));
                if x == 0 {
                    break;
                }
                // Gosper's hack
                let c = x & x.wrapping_neg();
                let r = x.wrapping_add(c);
                if r == 0 || r > limit {
                    break;
                }
                let next = (((r ^ x) >> 2) / c) | r;
                if next > limit {
                    break;
                }
                x = next;
            }
        }
        debug_assert_eq!(by_index.len(), total);
        Ok(MonomialIndexer { num_vars, max_degree, offsets, binom, by_index })
    }

    pub fn dimension(&self) -> usize {
        self.by_index.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Rank of `m`, or `None` if it is outside the indexed range.
    pub fn index(&self, m: Monomial) -> Option<u32> {
        let k = m.degree();
        if k > self.max_degree || m.var_bound() > self.num_vars {
            return None;
        }
        let rank: usize = m.vars().enumerate().map(|(i, c)| self.binom[c as usize][i + 1]).sum();
        Some((self.offsets[k] + rank) as u32)
    }

    pub fn monomial(&self, idx: u32) -> Monomial {
        self.by_index[idx as usize]
    }

    /// All indexed monomials of exactly degree `k`.
    pub fn of_degree(&self, k: usize) -> &[Monomial] {
        &self.by_index[self.offsets[k]..self.offsets[k + 1]]
    }

    pub fn all(&self) -> &[Monomial] {
        &self.by_index
    }

    pub fn encode(&self, p: &Polynomial) -> Result<SparseVec, AlgebraError> {
        let mut v: SparseVec = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let idx = self.index(m).ok_or(AlgebraError::DegreeExceeded {
                degree: m.degree(),
                bound: self.max_degree,
            })?;
            v.push((idx, c.clone()));
        }
        v.sort_unstable_by_key(|e| e.0);
        Ok(v)
    }

    pub fn decode(&self, field: FieldSpec, v: &[(u32, Scalar)]) -> Polynomial {
        Polynomial::from_terms(field, v.iter().map(|(i, c)| (c.clone(), self.monomial(*i))))
    }
}

#[derive(Clone, Debug)]
struct Row {
    entries: SparseVec,
    /// Combination of inserted generators producing this row.
    combo: Option<SparseVec>,
}

/// Incremental row-echelon basis over sparse vectors.
#[derive(Clone, Debug)]
pub struct EchelonForm {
    field: FieldSpec,
    rows: Vec<Row>,
    pivot_of: HashMap<u32, usize>,
    track: bool,
    generators: u32,
}

type Work = BTreeMap<u32, Scalar>;

fn axpy(field: FieldSpec, acc: &mut Work, c: &Scalar, v: &[(u32, Scalar)]) {
    // acc -= c * v
    for (i, a) in v {
        let delta = field.mul(c, a);
        let slot = acc.entry(*i).or_insert_with(|| field.zero());
        *slot = field.sub(slot, &delta);
        if field.is_zero(slot) {
            acc.remove(i);
        }
    }
}

impl EchelonForm {
    pub fn new(field: FieldSpec) -> Self {
        EchelonForm { field, rows: Vec::new(), pivot_of: HashMap::new(), track: false, generators: 0 }
    }

    /// Also remember, for each row, which combination of inserted
    /// generators produced it.
    pub fn tracking(field: FieldSpec) -> Self {
        EchelonForm { track: true, ..Self::new(field) }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(u32, Scalar)] {
        &self.rows[i].entries
    }

    /// Top-reduce `v`; returns the remainder and, when tracking, the
    /// generator combination `c` with `v - remainder = sum c_g g`.
    fn reduce(&self, v: &[(u32, Scalar)], full: bool) -> (Work, Work) {
        let f = self.field;
        let mut acc: Work = v.iter().cloned().collect();
        let mut used: Work = BTreeMap::new();
        let mut done: Work = BTreeMap::new();
        while let Some((&lead, _)) = acc.last_key_value() {
            match self.pivot_of.get(&lead) {
                Some(&r) => {
                    let c = acc[&lead].clone();
                    axpy(f, &mut acc, &c, &self.rows[r].entries);
                    if let Some(combo) = &self.rows[r].combo {
                        // used += c * combo
                        let neg = f.neg(&c);
                        axpy(f, &mut used, &neg, combo);
                    }
                }
                None if full => {
                    let (k, c) = acc.pop_last().expect("nonempty");
                    done.insert(k, c);
                }
                None => break,
            }
        }
        if full {
            acc = done;
        }
        (acc, used)
    }

    pub fn contains(&self, v: &[(u32, Scalar)]) -> bool {
        self.reduce(v, false).0.is_empty()
    }

    /// Insert a generator. Returns true when the span grew.
    pub fn insert(&mut self, v: &[(u32, Scalar)]) -> bool {
        let f = self.field;
        let gid = self.generators;
        self.generators += 1;
        let (rem, used) = self.reduce(v, false);
        let Some((&lead, lc)) = rem.last_key_value() else {
            return false;
        };
        let inv = f.inv(lc);
        let entries: SparseVec = rem.iter().map(|(i, c)| (*i, f.mul(c, &inv))).collect();
        let combo = self.track.then(|| {
            // rem = g - used  =>  row = inv * (g - used)
            let mut combo: Work = used.iter().map(|(i, c)| (*i, f.neg(c))).collect();
            let slot = combo.entry(gid).or_insert_with(|| f.zero());
            *slot = f.add(slot, &f.one());
            combo.into_iter().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (i, f.mul(&c, &inv))).collect()
        });
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(Row { entries, combo });
        true
    }

    /// Express `v` in terms of the inserted generators (by insertion
    /// ordinal), if it lies in the span. Requires a tracking basis.
    pub fn express(&self, v: &[(u32, Scalar)]) -> Option<Vec<(u32, Scalar)>> {
        assert!(self.track, "express() needs a tracking basis");
        let (rem, used) = self.reduce(v, false);
        rem.is_empty().then(|| used.into_iter().collect())
    }

    /// Fully reduced remainder of `v` against the basis.
    pub fn normal_form(&self, v: &[(u32, Scalar)]) -> SparseVec {
        self.reduce(v, true).0.into_iter().collect()
    }
}

/// Span of polynomials of degree at most `bound` over a fixed variable set.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    indexer: MonomialIndexer,
    echelon: EchelonForm,
}

impl SpanBasis {
    pub fn new(field: FieldSpec, num_vars: usize, bound: usize) -> Result<Self, AlgebraError> {
        Self::with_cap(field, num_vars, bound, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_cap(field: FieldSpec, num_vars: usize, bound: usize, cap: usize) -> Result<Self, AlgebraError> {
        Ok(SpanBasis {
            indexer: MonomialIndexer::new(num_vars, bound, cap)?,
            echelon: EchelonForm::new(field),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.echelon.field()
    }

    pub fn indexer(&self) -> &MonomialIndexer {
        &self.indexer
    }

    pub fn degree_bound(&self) -> usize {
        self.indexer.max_degree()
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    fn encode(&self, p: &Polynomial) -> Result<SparseVec, AlgebraError> {
        if p.field() != self.field() {
            return Err(AlgebraError::FieldMismatch(p.field(), self.field()));
        }
        self.indexer.encode(p)
    }

    /// Add `p` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, p: &Polynomial) -> Result<bool, AlgebraError> {
        let v = self.encode(p)?;
        Ok(self.echelon.insert(&v))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, AlgebraError> {
        let v = self.encode(p)?;
        Ok(self.echelon.contains(&v))
    }

    pub fn contains_monomial(&self, m: Monomial) -> bool {
        match self.indexer.index(m) {
            Some(i) => self.echelon.contains(&[(i, self.field().one())]),
            None => false,
        }
    }

    /// Row `i` of the echelon form as a polynomial.
    pub fn row(&self, i: usize) -> Polynomial {
        self.indexer.decode(self.field(), self.echelon.row(i))
    }

    /// Degree of row `i` (its leading monomial is a top-degree term).
    pub fn row_degree(&self, i: usize) -> usize {
        let lead = self.echelon.row(i).last().expect("rows are nonzero").0;
        self.indexer.monomial(lead).degree()
    }
}

/// Find coefficients `c` with `sum c_i columns_i = target`, or `None`.
///
/// Deterministic: columns are eliminated in the given order and the
/// solution uses only columns that became pivots.
pub fn solve_linear(columns: &[Polynomial], target: &Polynomial) -> Result<Option<Vec<Scalar>>, AlgebraError> {
    let field = target.field();
    for c in columns {
        if c.field() != field {
            return Err(AlgebraError::FieldMismatch(c.field(), field));
        }
    }
    // index every monomial that occurs, in graded order
    let mut monos: Vec<Monomial> = columns.iter().chain(std::iter::once(target)).flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    monos.sort();
    monos.dedup();
    let index: HashMap<Monomial, u32> = monos.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
    let encode = |p: &Polynomial| -> SparseVec {
        let mut v: SparseVec = p.terms().map(|(m, c)| (index[&m], c.clone())).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    };
    let mut ech = EchelonForm::tracking(field);
    for c in columns {
        ech.insert(&encode(c));
    }
    Ok(ech.express(&encode(target)).map(|combo| {
        let mut out = vec![field.zero(); columns.len()];
        for (g, c) in combo {
            out[g as usize] = c;
        }
        out
    }))
}
