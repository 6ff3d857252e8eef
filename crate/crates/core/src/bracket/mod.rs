//! Bilinear brackets on `I(P, R)`, stored by their values on pairs of
//! basis elements.

mod checks;
mod lambda;
mod lemmas;
mod piecewise;
mod sigma;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{same_poset, IncidenceElement};
use crate::coeff::RingSpec;
use crate::error::{Error, Result};
use crate::poset::Poset;

pub use lambda::{check_lambda_identities, LambdaMap};
pub use piecewise::PiecewiseWitness;
pub use sigma::SigmaMap;

/// A bilinear map `B: I(P,R) x I(P,R) -> I(P,R)` given by `B(e_i, e_j)`.
///
/// In antisymmetric mode only pairs `i < j` (canonical interval order) are
/// stored; `B(e_j, e_i) = -B(e_i, e_j)` and `B(e_i, e_i) = 0` are implied.
/// Otherwise the table is taken literally and absent pairs are zero.
#[derive(Clone, Debug)]
pub struct Bracket {
    poset: Arc<Poset>,
    ring: RingSpec,
    table: BTreeMap<(usize, usize), IncidenceElement>,
    antisymmetric: bool,
}

impl PartialEq for Bracket {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && same_poset(&self.poset, &other.poset)
            && self.full_table() == other.full_table()
    }
}

impl Bracket {
    pub fn zero(poset: &Arc<Poset>, ring: &RingSpec) -> Self {
        Bracket {
            poset: poset.clone(),
            ring: ring.clone(),
            table: BTreeMap::new(),
            antisymmetric: true,
        }
    }

    /// The commutator bracket `[f, g] = fg - gf`.
    pub fn commutator(poset: &Arc<Poset>, ring: &RingSpec) -> Self {
        let n = poset.intervals().len();
        let mut b = Self::zero(poset, ring);
        for i in 0..n {
            let ei = IncidenceElement::basis(poset, ring, i);
            for j in i + 1..n {
                let ej = IncidenceElement::basis(poset, ring, j);
                let c = &(&ei * &ej) - &(&ej * &ei);
                if !c.is_zero() {
                    b.table.insert((i, j), c);
                }
            }
        }
        b
    }

    fn validate_entry(poset: &Arc<Poset>, ring: &RingSpec, i: usize, j: usize, v: &IncidenceElement) -> Result<()> {
        let n = poset.intervals().len();
        if i >= n || j >= n {
            return Err(Error::InvalidPair(format!("({i}, {j}) outside {n} basis elements")));
        }
        if v.ring() != ring {
            return Err(Error::Mismatch("rings"));
        }
        if !same_poset(v.poset(), poset) {
            return Err(Error::Mismatch("posets"));
        }
        Ok(())
    }

    /// Antisymmetric bracket from values on basis pairs `(i, j)` (interval
    /// indices). Entries for both `(i, j)` and `(j, i)` are accepted when
    /// they are negatives of each other.
    pub fn from_basis_table(
        poset: &Arc<Poset>,
        ring: &RingSpec,
        entries: impl IntoIterator<Item = ((usize, usize), IncidenceElement)>,
    ) -> Result<Self> {
        let mut given: BTreeMap<(usize, usize), IncidenceElement> = BTreeMap::new();
        for ((i, j), v) in entries {
            Self::validate_entry(poset, ring, i, j, &v)?;
            let inconsistent = || Error::InconsistentAntisymmetry {
                left: poset.interval_label(poset.interval(i)),
                right: poset.interval_label(poset.interval(j)),
            };
            if i == j {
                if !v.is_zero() {
                    return Err(inconsistent());
                }
                continue;
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), -&v) };
            match given.get(&key) {
                Some(existing) if *existing != v => return Err(inconsistent()),
                Some(_) => {}
                None => {
                    given.insert(key, v);
                }
            }
        }
        given.retain(|_, v| !v.is_zero());
        Ok(Bracket {
            poset: poset.clone(),
            ring: ring.clone(),
            table: given,
            antisymmetric: true,
        })
    }

    /// Bracket whose table is exactly the given values, without assuming
    /// antisymmetry. Repeated keys are summed.
    pub fn from_raw_table(
        poset: &Arc<Poset>,
        ring: &RingSpec,
        entries: impl IntoIterator<Item = ((usize, usize), IncidenceElement)>,
    ) -> Result<Self> {
        let mut table: BTreeMap<(usize, usize), IncidenceElement> = BTreeMap::new();
        for ((i, j), v) in entries {
            Self::validate_entry(poset, ring, i, j, &v)?;
            let slot = table
                .entry((i, j))
                .or_insert_with(|| IncidenceElement::zero(poset, ring));
            *slot = &*slot + &v;
        }
        table.retain(|_, v| !v.is_zero());
        Ok(Bracket {
            poset: poset.clone(),
            ring: ring.clone(),
            table,
            antisymmetric: false,
        })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn is_antisymmetric_mode(&self) -> bool {
        self.antisymmetric
    }

    pub fn dimension(&self) -> usize {
        self.poset.intervals().len()
    }

    /// Stored entries. In antisymmetric mode these are the pairs `i < j`.
    pub fn stored(&self) -> &BTreeMap<(usize, usize), IncidenceElement> {
        &self.table
    }

    /// `B(e_i, e_j)`.
    pub fn value(&self, i: usize, j: usize) -> IncidenceElement {
        if self.antisymmetric {
            if i == j {
                return IncidenceElement::zero(&self.poset, &self.ring);
            }
            if i > j {
                return match self.table.get(&(j, i)) {
                    Some(v) => -v,
                    None => IncidenceElement::zero(&self.poset, &self.ring),
                };
            }
        }
        self.table
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| IncidenceElement::zero(&self.poset, &self.ring))
    }

    /// Dense `n x n` table of `B(e_i, e_j)` with antisymmetry resolved.
    pub fn full_table(&self) -> Vec<Vec<IncidenceElement>> {
        let n = self.dimension();
        (0..n).map(|i| (0..n).map(|j| self.value(i, j)).collect()).collect()
    }

    fn check_operand(&self, f: &IncidenceElement) -> Result<()> {
        if f.ring() != &self.ring {
            return Err(Error::Mismatch("rings"));
        }
        if !same_poset(f.poset(), &self.poset) {
            return Err(Error::Mismatch("posets"));
        }
        Ok(())
    }

    /// `B(f, g) = sum_{i,j} f(i) g(j) B(e_i, e_j)`.
    pub fn evaluate(&self, f: &IncidenceElement, g: &IncidenceElement) -> Result<IncidenceElement> {
        self.check_operand(f)?;
        self.check_operand(g)?;
        Ok(self.apply(f, g))
    }

    pub(crate) fn apply(&self, f: &IncidenceElement, g: &IncidenceElement) -> IncidenceElement {
        let mut out = IncidenceElement::zero(&self.poset, &self.ring);
        for (&(i, j), v) in &self.table {
            if let (Some(a), Some(b)) = (f.get(i), g.get(j)) {
                out.add_scaled(&(a * b), v);
            }
            if self.antisymmetric {
                if let (Some(a), Some(b)) = (f.get(j), g.get(i)) {
                    out.add_scaled(&-(a * b), v);
                }
            }
        }
        out
    }
}

/// Dense table view used by the exhaustive checks.
pub(crate) struct DenseTable {
    poset: Arc<Poset>,
    ring: RingSpec,
    rows: Vec<Vec<IncidenceElement>>,
}

impl DenseTable {
    pub(crate) fn new(b: &Bracket) -> Self {
        DenseTable {
            poset: b.poset.clone(),
            ring: b.ring.clone(),
            rows: b.full_table(),
        }
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> &IncidenceElement {
        &self.rows[i][j]
    }

    /// `B(e_i, g)`.
    pub(crate) fn left_basis(&self, i: usize, g: &IncidenceElement) -> IncidenceElement {
        let row = &self.rows[i];
        let mut out = IncidenceElement::zero(&self.poset, &self.ring);
        for (&k, c) in g.entries() {
            out.add_scaled(c, &row[k]);
        }
        out
    }
}
