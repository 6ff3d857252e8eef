//! Exact sparse Gaussian elimination over a field.
//!
//! Rows are inserted one at a time and kept in echelon form keyed by their
//! leading column, each normalised to a leading 1. Pivoting is deterministic:
//! the leading column of a row is its first nonzero in column order.

use std::collections::BTreeMap;

use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};

/// Sparse vector: `(column, value)` pairs sorted by column, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Normalises an unsorted list of terms: sums duplicates and drops zeros.
pub fn collect_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, v) in terms {
        match acc.get_mut(&c) {
            Some(old) => *old = &*old + &v,
            None => {
                acc.insert(c, v);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `a - factor * b`.
fn sub_scaled(a: &[(usize, Scalar)], factor: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(factor * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(factor * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Echelon {
    ring: RingSpec,
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: &RingSpec) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::NotAField(field.clone()));
        }
        Ok(Echelon {
            ring: field.clone(),
            pivots: BTreeMap::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    /// Eliminates leading terms until the leading column is not a pivot.
    /// The result is zero iff `v` lies in the row span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((lead, coeff)) = v.first() {
            match self.pivots.get(lead) {
                Some(row) => {
                    let coeff = coeff.clone();
                    v = sub_scaled(&v, &coeff, row);
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the row space; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((lead, coeff)) = v.first() else {
            return false;
        };
        let lead = *lead;
        let inv = coeff.inv().expect("nonzero element of a field is invertible");
        let normalised: SparseVec = v.into_iter().map(|(c, x)| (c, &x * &inv)).collect();
        self.pivots.insert(lead, normalised);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Brings the rows to reduced row echelon form.
    pub fn reduce_fully(&mut self) {
        let leads: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for lead in leads {
            let row = self.pivots.remove(&lead).expect("pivot present");
            let mut reduced = row.clone();
            for (c, _) in row.iter().skip(1) {
                if let Some(other) = self.pivots.get(c) {
                    // rows with larger leads are already fully reduced
                    let factor = reduced
                        .iter()
                        .find(|(col, _)| col == c)
                        .map(|(_, x)| x.clone())
                        .expect("entry present until eliminated");
                    reduced = sub_scaled(&reduced, &factor, other);
                }
            }
            self.pivots.insert(lead, reduced);
        }
    }

    /// Basis of `{x : A x = 0}` for `num_cols` unknowns, one vector per free
    /// column in ascending order, with a 1 at that free column.
    pub fn nullspace(&mut self, num_cols: usize) -> Vec<SparseVec> {
        self.reduce_fully();
        let mut dependents: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (&lead, row) in &self.pivots {
            for (c, x) in row.iter().skip(1) {
                dependents.entry(*c).or_default().push((lead, -x));
            }
        }
        (0..num_cols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut v = dependents.remove(&free).unwrap_or_default();
                v.push((free, self.ring.one()));
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect()
    }
}
