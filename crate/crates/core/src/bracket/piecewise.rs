//! Checking a proposed decomposition of the algebra into Lie ideals on
//! which the bracket is a scalar multiple of the commutator.
//! Indecomposability of the ideals is not checked.

use super::Bracket;
use crate::algebra::IncidenceElement;
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::report::Report;

pub const LIE_IDEAL: &str = "lie-ideal";
pub const DIRECT_SUM: &str = "direct-sum";
pub const SCALAR_ON_IDEAL: &str = "scalar-on-ideal";

/// Generating sets of the proposed ideals and one scalar per ideal.
#[derive(Clone, Debug)]
pub struct PiecewiseWitness {
    pub ideals: Vec<Vec<IncidenceElement>>,
    pub lambdas: Vec<Scalar>,
}

fn as_vector(f: &IncidenceElement) -> SparseVec {
    f.entries().iter().map(|(&k, v)| (k, v.clone())).collect()
}

impl Bracket {
    pub fn verify_piecewise_witness(&self, witness: &PiecewiseWitness) -> Result<Report> {
        if !self.ring.is_field() {
            return Err(Error::NotAField(self.ring.clone()));
        }
        if witness.ideals.len() != witness.lambdas.len() {
            return Err(Error::InvalidWitness(format!(
                "{} ideals but {} scalars",
                witness.ideals.len(),
                witness.lambdas.len()
            )));
        }
        for f in witness.ideals.iter().flatten() {
            self.check_operand(f)?;
        }
        if let Some(l) = witness.lambdas.iter().find(|l| l.ring() != self.ring) {
            return Err(Error::RingMismatch(l.ring(), self.ring.clone()));
        }
        self.require_biderivation()?;

        let n = self.dimension();
        let basis: Vec<IncidenceElement> = (0..n).map(|k| IncidenceElement::basis(&self.poset, &self.ring, k)).collect();
        let mut report = Report::new();

        let mut spans = Vec::with_capacity(witness.ideals.len());
        for gens in &witness.ideals {
            let mut span = Echelon::new(&self.ring)?;
            for g in gens {
                span.insert(as_vector(g));
            }
            spans.push(span);
        }

        let mut not_ideal = Vec::new();
        let mut total = 0;
        for (i, gens) in witness.ideals.iter().enumerate() {
            for (a_idx, a) in gens.iter().enumerate() {
                for (k, e) in basis.iter().enumerate() {
                    total += 1;
                    let c = a.commutator(e)?;
                    if !spans[i].contains(as_vector(&c)) {
                        not_ideal.push(format!("ideal {i}: [generator {a_idx}, e{}] leaves the span", self.poset.interval_label(self.poset.interval(k))));
                    }
                }
            }
        }
        report.record(LIE_IDEAL, total, not_ideal);

        let mut union = Echelon::new(&self.ring)?;
        for g in witness.ideals.iter().flatten() {
            union.insert(as_vector(g));
        }
        let rank_sum: usize = spans.iter().map(Echelon::rank).sum();
        let mut direct = Vec::new();
        if rank_sum != union.rank() {
            direct.push(format!("ranks sum to {rank_sum} but the ideals span {}", union.rank()));
        }
        if union.rank() != n {
            direct.push(format!("ideals span {} of {n} dimensions", union.rank()));
        }
        report.record(DIRECT_SUM, 1, direct);

        let mut not_scalar = Vec::new();
        let mut total = 0;
        for (i, (gens, lambda)) in witness.ideals.iter().zip(&witness.lambdas).enumerate() {
            for (a_idx, a) in gens.iter().enumerate() {
                for (k, e) in basis.iter().enumerate() {
                    total += 1;
                    let expected = a.commutator(e)?.scale(lambda)?;
                    if self.apply(a, e) != expected {
                        not_scalar.push(format!(
                            "ideal {i}: B(generator {a_idx}, e{}) != {lambda} * commutator",
                            self.poset.interval_label(self.poset.interval(k))
                        ));
                    }
                }
            }
        }
        report.record(SCALAR_ON_IDEAL, total, not_scalar);
        Ok(report)
    }
}
