//! Brute-force classification of antisymmetric biderivations.
//!
//! The unknowns are the coefficients `B(e_i, e_j)(k)` for basis pairs
//! `i < j` and target intervals `k`; `B(e_j, e_i)` is rewritten as
//! `-B(e_i, e_j)` and `B(e_i, e_i)` as zero. Both Leibniz rules are
//! linearised on every basis triple and every target coefficient, and the
//! solution space is computed by exact elimination. Nothing here uses the
//! chain-constant parametrisation; the classification is compared against
//! it afterwards.

use std::sync::Arc;

use crate::bracket::{Bracket, SigmaMap};
use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{collect_terms, Echelon, SparseVec};
use crate::poset::{Interval, Poset};

/// The homogeneous linear system whose solutions are the antisymmetric
/// biderivations. Rows are generated on demand.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    poset: Arc<Poset>,
    ring: RingSpec,
    intervals: Vec<Interval>,
    num_pairs: usize,
}

/// Column of the unknown `B(e_i, e_j)(k)` and the sign relating it to the
/// stored pair, or `None` when the coefficient is identically zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unknown {
    pub column: usize,
    pub negated: bool,
}

impl LinearSystem {
    pub fn new(poset: &Arc<Poset>, field: &RingSpec) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::NotAField(field.clone()));
        }
        let n = poset.intervals().len();
        Ok(LinearSystem {
            poset: poset.clone(),
            ring: field.clone(),
            intervals: poset.intervals().to_vec(),
            num_pairs: n * n.saturating_sub(1) / 2,
        })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn num_intervals(&self) -> usize {
        self.intervals.len()
    }

    pub fn num_pairs(&self) -> usize {
        self.num_pairs
    }

    pub fn num_unknowns(&self) -> usize {
        self.num_pairs * self.intervals.len()
    }

    /// Index of the pair `i < j` in lexicographic order.
    fn pair_index(&self, i: usize, j: usize) -> usize {
        let n = self.intervals.len();
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Inverse of [`Self::pair_index`].
    pub fn pair_of(&self, index: usize) -> (usize, usize) {
        let n = self.intervals.len();
        let mut i = 0;
        let mut start = 0;
        while start + (n - i - 1) <= index {
            start += n - i - 1;
            i += 1;
        }
        (i, i + 1 + index - start)
    }

    pub fn unknown(&self, i: usize, j: usize, k: usize) -> Option<Unknown> {
        let n = self.intervals.len();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some(Unknown { column: self.pair_index(i, j) * n + k, negated: false }),
            std::cmp::Ordering::Greater => Some(Unknown { column: self.pair_index(j, i) * n + k, negated: true }),
        }
    }

    /// `(i, j, k)` for a column.
    pub fn column_meaning(&self, column: usize) -> (usize, usize, usize) {
        let n = self.intervals.len();
        let (i, j) = self.pair_of(column / n);
        (i, j, column % n)
    }

    /// Signed column of `B(e_i, e_j)(lo, hi)`, if that coefficient is a
    /// free unknown.
    fn column(&self, i: usize, j: usize, lo: usize, hi: usize) -> Option<(usize, i64)> {
        let k = self.poset.interval_index(lo, hi)?;
        self.unknown(i, j, k).map(|u| (u.column, if u.negated { -1 } else { 1 }))
    }

    /// Index of `e_a e_b` if nonzero.
    fn product(&self, a: usize, b: usize) -> Option<usize> {
        let (x, y) = (self.intervals[a], self.intervals[b]);
        (x.hi == y.lo).then(|| self.poset.interval_index(x.lo, y.hi).expect("transitivity"))
    }

    /// Equations for the triple `(a, b, c)` at every target `(p, q)`:
    ///
    /// `B(e_a e_b, e_c) - e_a B(e_b, e_c) - B(e_a, e_c) e_b = 0` and
    /// `B(e_a, e_b e_c) - B(e_a, e_b) e_c - e_b B(e_a, e_c) = 0`,
    ///
    /// using `(e_a X)(p, q) = [p = lo(a)] X(hi(a), q)` and
    /// `(X e_b)(p, q) = [q = hi(b)] X(p, lo(b))`.
    fn triple_rows(&self, a: usize, b: usize, c: usize) -> Vec<SparseVec> {
        let (ia, ib, ic) = (self.intervals[a], self.intervals[b], self.intervals[c]);
        let ab = self.product(a, b);
        let bc = self.product(b, c);
        let mut rows = Vec::new();
        for (k, target) in self.intervals.iter().enumerate() {
            let (p, q) = (target.lo, target.hi);
            let at = |i: usize, j: usize| self.unknown(i, j, k).map(|u| (u.column, if u.negated { -1 } else { 1 }));
            let neg = |t: Option<(usize, i64)>| t.map(|(col, s)| (col, -s));

            let mut left = Vec::with_capacity(3);
            left.extend(ab.and_then(|ab| at(ab, c)));
            if p == ia.lo {
                left.extend(neg(self.column(b, c, ia.hi, q)));
            }
            if q == ib.hi {
                left.extend(neg(self.column(a, c, p, ib.lo)));
            }
            self.push_row(&mut rows, left);

            let mut right = Vec::with_capacity(3);
            right.extend(bc.and_then(|bc| at(a, bc)));
            if q == ic.hi {
                right.extend(neg(self.column(a, b, p, ic.lo)));
            }
            if p == ib.lo {
                right.extend(neg(self.column(a, c, ib.hi, q)));
            }
            self.push_row(&mut rows, right);
        }
        rows
    }

    fn push_row(&self, rows: &mut Vec<SparseVec>, terms: Vec<(usize, i64)>) {
        let row = collect_terms(terms.into_iter().map(|(col, s)| (col, Scalar::from_int(&self.ring, s))));
        if !row.is_empty() {
            rows.push(row);
        }
    }

    /// All nonzero rows, streamed triple by triple.
    pub fn rows(&self) -> impl Iterator<Item = SparseVec> + '_ {
        let n = self.intervals.len();
        (0..n).flat_map(move |a| {
            (0..n).flat_map(move |b| (0..n).flat_map(move |c| self.triple_rows(a, b, c)))
        })
    }

    /// Column vector of a bracket's stored coefficients.
    pub fn bracket_vector(&self, bracket: &Bracket) -> SparseVec {
        let table = bracket.full_table();
        let mut out = Vec::new();
        for (i, row) in table.iter().enumerate() {
            for (j, value) in row.iter().enumerate().skip(i + 1) {
                for (&k, v) in value.entries() {
                    let u = self.unknown(i, j, k).expect("off-diagonal");
                    out.push((u.column, v.clone()));
                }
            }
        }
        out.sort_by_key(|(c, _)| *c);
        out
    }

    pub fn vector_bracket(&self, v: &SparseVec) -> Bracket {
        let n = self.intervals.len();
        let mut entries: std::collections::BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = Default::default();
        for (col, x) in v {
            let (i, j, k) = self.column_meaning(*col);
            debug_assert!(k < n);
            entries.entry((i, j)).or_default().push((k, x.clone()));
        }
        let table = entries.into_iter().map(|(key, terms)| {
            let e = crate::algebra::IncidenceElement::from_entries(&self.poset, &self.ring, terms)
                .expect("columns map to valid intervals");
            (key, e)
        });
        Bracket::from_basis_table(&self.poset, &self.ring, table).expect("pairs are stored once with i < j")
    }
}

pub fn build_system(poset: &Arc<Poset>, field: &RingSpec) -> Result<LinearSystem> {
    LinearSystem::new(poset, field)
}

/// Basis of the space of antisymmetric biderivations.
#[derive(Clone, Debug)]
pub struct SolutionBasis {
    pub vectors: Vec<Bracket>,
    pub dimension: usize,
}

/// Eliminates the system row by row and returns one bracket per free column
/// of the reduced row echelon form, in ascending column order.
pub fn nullspace(system: &LinearSystem) -> SolutionBasis {
    let mut echelon = Echelon::new(system.ring()).expect("system ring is a field");
    for row in system.rows() {
        echelon.insert(row);
    }
    let vectors: Vec<Bracket> = echelon
        .nullspace(system.num_unknowns())
        .iter()
        .map(|v| system.vector_bracket(v))
        .collect();
    SolutionBasis {
        dimension: vectors.len(),
        vectors,
    }
}

/// Outcome of cross-checking the solver against the chain-component
/// parametrisation.
#[derive(Clone, Debug)]
pub struct Classification {
    pub ring: RingSpec,
    pub dimension: usize,
    pub chain_components: usize,
    /// `sigma` extracted from each solver basis vector.
    pub basis: Vec<SigmaMap>,
    /// The solver basis itself.
    pub brackets: Vec<Bracket>,
    /// Indicator of each chain component.
    pub indicators: Vec<SigmaMap>,
}

impl Classification {
    pub fn matches(&self) -> bool {
        self.dimension == self.chain_components
    }
}

/// Solves for all antisymmetric biderivations over `field` and checks the
/// result against the chain components:
/// the dimensions agree, every solution is `from_sigma` of its extracted
/// chain-constant `sigma`, and the indicator brackets span the solutions.
pub fn classify(poset: &Arc<Poset>, field: &RingSpec) -> Result<Classification> {
    let system = build_system(poset, field)?;
    let solutions = nullspace(&system);
    let partition = poset.chain_components();
    let violation = |msg: String| Err(Error::BijectionViolation(msg));

    if solutions.dimension != partition.len() {
        return violation(format!(
            "solution space has dimension {} but there are {} chain components",
            solutions.dimension,
            partition.len()
        ));
    }

    let mut span = Echelon::new(field)?;
    let mut sigmas = Vec::with_capacity(solutions.dimension);
    for (idx, b) in solutions.vectors.iter().enumerate() {
        let sigma = b
            .extract_sigma()
            .map_err(|e| Error::BijectionViolation(format!("solution {idx}: {e}")))?;
        if !sigma.is_chain_constant() {
            return violation(format!("solution {idx}: extracted sigma is not chain-constant"));
        }
        if Bracket::from_sigma(&sigma)? != *b {
            return violation(format!("solution {idx}: from_sigma does not reproduce it"));
        }
        span.insert(system.bracket_vector(b));
        sigmas.push(sigma);
    }

    let mut indicators = Vec::with_capacity(partition.len());
    let mut indicator_span = Echelon::new(field)?;
    for (idx, class) in partition.classes.iter().enumerate() {
        let sigma = SigmaMap::indicator(poset, field, class);
        let v = system.bracket_vector(&Bracket::from_sigma(&sigma)?);
        if !span.contains(v.clone()) {
            return violation(format!("indicator of chain component {idx} is not a solution"));
        }
        if !indicator_span.insert(v) {
            return violation(format!("indicator of chain component {idx} is dependent"));
        }
        indicators.push(sigma);
    }

    Ok(Classification {
        ring: field.clone(),
        dimension: solutions.dimension,
        chain_components: partition.len(),
        basis: sigmas,
        brackets: solutions.vectors,
        indicators,
    })
}
