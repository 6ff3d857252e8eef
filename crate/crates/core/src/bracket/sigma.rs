//! Maps on strict pairs and the brackets they induce via
//! `B(f, g)(x, y) = sigma(x, y) [f, g](x, y)` for `x < y`, zero on loops.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use super::Bracket;
use crate::algebra::IncidenceElement;
use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::poset::{PairPartition, Poset, StrictPair};

/// A total map from the strict pairs of a poset to the coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaMap {
    poset: Arc<Poset>,
    ring: RingSpec,
    values: BTreeMap<StrictPair, Scalar>,
}

impl SigmaMap {
    /// Validates that `values` is defined exactly on the strict pairs.
    pub fn new(
        poset: &Arc<Poset>,
        ring: &RingSpec,
        values: impl IntoIterator<Item = (StrictPair, Scalar)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (pair, v) in values {
            if !poset.lt(pair.lo, pair.hi) {
                return Err(Error::InvalidSigma(format!(
                    "({}, {}) is not a strict pair",
                    poset.label(pair.lo),
                    poset.label(pair.hi)
                )));
            }
            if v.ring() != *ring {
                return Err(Error::RingMismatch(v.ring(), ring.clone()));
            }
            if map.insert(pair, v).is_some() {
                return Err(Error::InvalidSigma(format!(
                    "({}, {}) given twice",
                    poset.label(pair.lo),
                    poset.label(pair.hi)
                )));
            }
        }
        if let Some(missing) = poset.strict_pairs().into_iter().find(|p| !map.contains_key(p)) {
            return Err(Error::InvalidSigma(format!(
                "no value for ({}, {})",
                poset.label(missing.lo),
                poset.label(missing.hi)
            )));
        }
        Ok(SigmaMap {
            poset: poset.clone(),
            ring: ring.clone(),
            values: map,
        })
    }

    pub fn constant(poset: &Arc<Poset>, ring: &RingSpec, c: &Scalar) -> Self {
        let values = poset.strict_pairs().into_iter().map(|p| (p, c.clone())).collect();
        SigmaMap {
            poset: poset.clone(),
            ring: ring.clone(),
            values,
        }
    }

    /// One value per class of `partition`.
    pub fn from_class_values(poset: &Arc<Poset>, ring: &RingSpec, partition: &PairPartition, class_values: &[Scalar]) -> Self {
        assert_eq!(partition.len(), class_values.len(), "one value per class");
        let values = partition
            .classes
            .iter()
            .zip(class_values)
            .flat_map(|(class, v)| class.iter().map(move |&p| (p, v.clone())))
            .collect();
        SigmaMap {
            poset: poset.clone(),
            ring: ring.clone(),
            values,
        }
    }

    /// The map that is 1 on the given chain component and 0 elsewhere.
    pub fn indicator(poset: &Arc<Poset>, ring: &RingSpec, class: &[StrictPair]) -> Self {
        let values = poset
            .strict_pairs()
            .into_iter()
            .map(|p| {
                let v = if class.contains(&p) { ring.one() } else { ring.zero() };
                (p, v)
            })
            .collect();
        SigmaMap {
            poset: poset.clone(),
            ring: ring.clone(),
            values,
        }
    }

    /// Random chain-constant map with small values.
    pub fn random_chain_constant<R: Rng + ?Sized>(poset: &Arc<Poset>, ring: &RingSpec, rng: &mut R) -> Self {
        let partition = poset.chain_components();
        let class_values: Vec<Scalar> = (0..partition.len()).map(|_| Scalar::random_small(ring, rng)).collect();
        Self::from_class_values(poset, ring, &partition, &class_values)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn get(&self, pair: StrictPair) -> &Scalar {
        &self.values[&pair]
    }

    pub fn values(&self) -> &BTreeMap<StrictPair, Scalar> {
        &self.values
    }

    /// First pair of strict pairs in one chain component with different
    /// values, if any.
    pub fn chain_violation(&self) -> Option<(StrictPair, StrictPair)> {
        self.poset.chain_components().classes.into_iter().find_map(|class| {
            let first = class[0];
            class
                .iter()
                .find(|p| self.values[p] != self.values[&first])
                .map(|&p| (first, p))
        })
    }

    /// Constant on every chain component, equivalently on every chain.
    pub fn is_chain_constant(&self) -> bool {
        self.chain_violation().is_none()
    }

    /// Bracket `B(e_i, e_j)(x, y) = sigma(x, y) [e_i, e_j](x, y)` for `x < y`.
    pub fn to_bracket(&self) -> Result<Bracket> {
        if let Some((p, q)) = self.chain_violation() {
            let label = |s: StrictPair| format!("({},{})", self.poset.label(s.lo), self.poset.label(s.hi));
            return Err(Error::NotChainConstant(format!(
                "sigma{} = {} but sigma{} = {}",
                label(p),
                self.values[&p],
                label(q),
                self.values[&q]
            )));
        }
        Ok(self.to_bracket_unchecked())
    }

    /// The bracket formula applied without the chain-constancy check. The
    /// result need not be a biderivation.
    pub fn to_bracket_unchecked(&self) -> Bracket {
        let commutator = Bracket::commutator(&self.poset, &self.ring);
        let mut table = BTreeMap::new();
        for (&key, c) in &commutator.table {
            let mut v = IncidenceElement::zero(&self.poset, &self.ring);
            for (&k, coeff) in c.entries() {
                let iv = self.poset.interval(k);
                if !iv.is_loop() {
                    let s = &self.values[&StrictPair { lo: iv.lo, hi: iv.hi }];
                    v.accumulate(k, s * coeff);
                }
            }
            if !v.is_zero() {
                table.insert(key, v);
            }
        }
        Bracket {
            poset: self.poset.clone(),
            ring: self.ring.clone(),
            table,
            antisymmetric: true,
        }
    }
}

impl Bracket {
    pub fn from_sigma(sigma: &SigmaMap) -> Result<Bracket> {
        sigma.to_bracket()
    }

    pub(crate) fn require_biderivation(&self) -> Result<()> {
        let antisym = self.check_antisymmetric();
        let bider = self.check_biderivation();
        if antisym.passed() && bider.passed() {
            return Ok(());
        }
        let first = antisym
            .failures()
            .chain(bider.failures())
            .next()
            .map(|f| format!("{}: {}", f.check, f.instance))
            .unwrap_or_default();
        Err(Error::NotABiderivation(first))
    }

    /// `sigma(x, y) = B(e_x, e_{xy})(x, y)`, after verifying that the bracket
    /// is an antisymmetric biderivation.
    pub fn extract_sigma(&self) -> Result<SigmaMap> {
        self.require_biderivation()?;
        Ok(self.extract_sigma_unchecked())
    }

    pub(crate) fn extract_sigma_unchecked(&self) -> SigmaMap {
        let p = &self.poset;
        let values = p
            .strict_pairs()
            .into_iter()
            .map(|pair| {
                let ex = p.interval_index(pair.lo, pair.lo).expect("loop");
                let exy = p.interval_index(pair.lo, pair.hi).expect("strict pair");
                (pair, self.value(ex, exy).coeff(exy))
            })
            .collect();
        SigmaMap {
            poset: p.clone(),
            ring: self.ring.clone(),
            values,
        }
    }

    /// If `B = lambda [., .]` for a central `lambda`, returns `lambda` as a
    /// combination of the component idempotents. Components without strict
    /// pairs get coefficient zero.
    pub fn is_standard(&self) -> Result<Option<IncidenceElement>> {
        let sigma = self.extract_sigma()?;
        let p = &self.poset;
        let mut lambda = IncidenceElement::zero(p, &self.ring);
        for component in p.connected_components() {
            let mut values = sigma
                .values
                .iter()
                .filter(|(pair, _)| component.contains(&pair.lo))
                .map(|(_, v)| v);
            let c = match values.next() {
                Some(first) => {
                    if values.any(|v| v != first) {
                        return Ok(None);
                    }
                    first.clone()
                }
                None => self.ring.zero(),
            };
            let idempotent = IncidenceElement::idempotent_sum(p, &self.ring, component);
            lambda.add_scaled(&c, &idempotent);
        }
        let n = self.dimension();
        for i in 0..n {
            let ei = IncidenceElement::basis(p, &self.ring, i);
            for j in i + 1..n {
                let ej = IncidenceElement::basis(p, &self.ring, j);
                let expected = &lambda * &ei.commutator(&ej)?;
                if self.value(i, j) != expected {
                    return Ok(None);
                }
            }
        }
        Ok(Some(lambda))
    }
}
