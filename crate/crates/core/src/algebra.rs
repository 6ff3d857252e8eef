//! The incidence algebra `I(P, R)` of a finite poset.
//!
//! Elements are sparse formal sums `f = sum f(x,y) e_{xy}` over intervals
//! `x <= y`, stored by canonical interval index with zero coefficients
//! pruned, so structural equality is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::poset::{Interval, Poset};

#[derive(Clone, Debug)]
pub struct IncidenceElement {
    poset: Arc<Poset>,
    ring: RingSpec,
    entries: BTreeMap<usize, Scalar>,
}

pub(crate) fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for IncidenceElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && same_poset(&self.poset, &other.poset) && self.entries == other.entries
    }
}

impl Eq for IncidenceElement {}

impl IncidenceElement {
    pub fn zero(poset: &Arc<Poset>, ring: &RingSpec) -> Self {
        IncidenceElement {
            poset: poset.clone(),
            ring: ring.clone(),
            entries: BTreeMap::new(),
        }
    }

    /// `e_k` for the interval with canonical index `k`.
    pub fn basis(poset: &Arc<Poset>, ring: &RingSpec, k: usize) -> Self {
        let mut e = Self::zero(poset, ring);
        e.entries.insert(k, ring.one());
        e
    }

    /// `e_{xy}` by label.
    pub fn basis_e(poset: &Arc<Poset>, ring: &RingSpec, x: &str, y: &str) -> Result<Self> {
        let (lo, hi) = (poset.index_of(x)?, poset.index_of(y)?);
        let k = poset
            .interval_index(lo, hi)
            .ok_or_else(|| Error::NotComparable(x.to_string(), y.to_string()))?;
        Ok(Self::basis(poset, ring, k))
    }

    /// The identity `delta = sum_x e_{xx}`.
    pub fn delta(poset: &Arc<Poset>, ring: &RingSpec) -> Self {
        Self::idempotent_sum(poset, ring, 0..poset.len())
    }

    pub(crate) fn idempotent_sum(
        poset: &Arc<Poset>,
        ring: &RingSpec,
        elements: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut e = Self::zero(poset, ring);
        for x in elements {
            let k = poset.interval_index(x, x).expect("loops are intervals");
            e.entries.insert(k, ring.one());
        }
        e
    }

    /// Builds an element from `(interval index, coefficient)` pairs; repeated
    /// indices are summed.
    pub fn from_entries(
        poset: &Arc<Poset>,
        ring: &RingSpec,
        entries: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<Self> {
        let mut e = Self::zero(poset, ring);
        for (k, c) in entries {
            if k >= poset.intervals().len() {
                return Err(Error::InvalidPair(format!("interval index {k} out of range")));
            }
            if c.ring() != *ring {
                return Err(Error::RingMismatch(c.ring(), ring.clone()));
            }
            e.accumulate(k, c);
        }
        Ok(e)
    }

    /// Uniformly random sparse element: each interval is present with
    /// probability `density` and gets a small random coefficient.
    pub fn random<R: Rng + ?Sized>(poset: &Arc<Poset>, ring: &RingSpec, density: f64, rng: &mut R) -> Self {
        let mut e = Self::zero(poset, ring);
        for k in 0..poset.intervals().len() {
            if rng.gen_bool(density) {
                e.accumulate(k, Scalar::random_small(ring, rng));
            }
        }
        e
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries by interval index.
    pub fn entries(&self) -> &BTreeMap<usize, Scalar> {
        &self.entries
    }

    pub fn get(&self, k: usize) -> Option<&Scalar> {
        self.entries.get(&k)
    }

    /// `f(k)` as an owned scalar, zero when absent.
    pub fn coeff(&self, k: usize) -> Scalar {
        self.entries.get(&k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// `f(x, y)` by element index; zero unless `x <= y`.
    pub fn at(&self, x: usize, y: usize) -> Scalar {
        match self.poset.interval_index(x, y) {
            Some(k) => self.coeff(k),
            None => self.ring.zero(),
        }
    }

    pub(crate) fn accumulate(&mut self, k: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`, assuming compatibility.
    pub(crate) fn add_scaled(&mut self, c: &Scalar, other: &IncidenceElement) {
        if c.is_zero() {
            return;
        }
        for (&k, v) in &other.entries {
            self.accumulate(k, c * v);
        }
    }

    pub fn check_compatible(&self, other: &IncidenceElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Mismatch("rings"));
        }
        if !same_poset(&self.poset, &other.poset) {
            return Err(Error::Mismatch("posets"));
        }
        Ok(())
    }

    pub fn add(&self, other: &IncidenceElement) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&k, v) in &other.entries {
            out.accumulate(k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &IncidenceElement) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&k, v) in &other.entries {
            out.accumulate(k, -v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        if c.ring() != self.ring {
            return Err(Error::Mismatch("rings"));
        }
        let mut out = Self::zero(&self.poset, &self.ring);
        out.add_scaled(c, self);
        Ok(out)
    }

    /// Convolution `(fg)(x,y) = sum_{x<=z<=y} f(x,z) g(z,y)`.
    pub fn convolve(&self, other: &IncidenceElement) -> Result<Self> {
        self.check_compatible(other)?;
        let poset = &self.poset;
        let mut out = Self::zero(poset, &self.ring);
        for (&k1, a) in &self.entries {
            let left = poset.interval(k1);
            for (&k2, b) in other.entries.range(poset.intervals_from(left.hi)) {
                let right = poset.interval(k2);
                let k = poset
                    .interval_index(left.lo, right.hi)
                    .expect("order is transitive");
                out.accumulate(k, a * b);
            }
        }
        Ok(out)
    }

    /// `fg - gf`.
    pub fn commutator(&self, other: &IncidenceElement) -> Result<Self> {
        let fg = self.convolve(other)?;
        let gf = other.convolve(self)?;
        fg.sub(&gf)
    }

    /// `e_x f e_y`, computed as two convolutions. Equals `f(x,y) e_{xy}`
    /// when `x <= y` and zero otherwise.
    pub fn sandwich(&self, x: &str, y: &str) -> Result<Self> {
        let (xi, yi) = (self.poset.index_of(x)?, self.poset.index_of(y)?);
        Ok(self.sandwich_idx(xi, yi))
    }

    pub(crate) fn sandwich_idx(&self, x: usize, y: usize) -> Self {
        let ex = Self::idempotent_sum(&self.poset, &self.ring, [x]);
        let ey = Self::idempotent_sum(&self.poset, &self.ring, [y]);
        &(&ex * self) * &ey
    }

    /// The truncation `f|_x^y = f(x,y)e_{xy} + sum_{x<=v<y} f(x,v)e_{xv}
    /// + sum_{x<u<=y} f(u,y)e_{uy}`.
    pub fn restrict(&self, x: &str, y: &str) -> Result<Self> {
        let (xi, yi) = (self.poset.index_of(x)?, self.poset.index_of(y)?);
        if !self.poset.le(xi, yi) {
            return Err(Error::NotComparable(x.to_string(), y.to_string()));
        }
        Ok(self.restrict_idx(xi, yi))
    }

    pub(crate) fn restrict_idx(&self, x: usize, y: usize) -> Self {
        let poset = &self.poset;
        let mut out = Self::zero(poset, &self.ring);
        let mut take = |lo: usize, hi: usize| {
            let k = poset.interval_index(lo, hi).expect("restriction stays inside [x,y]");
            if let Some(c) = self.entries.get(&k) {
                out.entries.insert(k, c.clone());
            }
        };
        take(x, y);
        for z in poset.closed_interval(x, y) {
            if z != y {
                take(x, z);
            }
            if z != x {
                take(z, y);
            }
        }
        out
    }

    /// Whether `[f, e_k] = 0` for every basis element.
    pub fn is_central(&self) -> bool {
        (0..self.poset.intervals().len()).all(|k| {
            let e = Self::basis(&self.poset, &self.ring, k);
            (self * &e) == (&e * self)
        })
    }

    /// One idempotent `sum_{x in K} e_{xx}` per connected component `K`;
    /// these span the center.
    pub fn center_basis(poset: &Arc<Poset>, ring: &RingSpec) -> Vec<Self> {
        poset
            .connected_components()
            .into_iter()
            .map(|component| Self::idempotent_sum(poset, ring, component))
            .collect()
    }

    pub fn interval_of(&self, k: usize) -> Interval {
        self.poset.interval(k)
    }
}

impl fmt::Display for IncidenceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let iv = self.poset.interval(k);
            write!(f, "{c}*e{}", self.poset.interval_label(iv))?;
        }
        Ok(())
    }
}

// Operators panic on incompatible operands; the fallible methods above are
// the checked entry points.
impl Add for &IncidenceElement {
    type Output = IncidenceElement;
    fn add(self, rhs: &IncidenceElement) -> IncidenceElement {
        IncidenceElement::add(self, rhs).expect("incompatible incidence elements")
    }
}

impl Sub for &IncidenceElement {
    type Output = IncidenceElement;
    fn sub(self, rhs: &IncidenceElement) -> IncidenceElement {
        IncidenceElement::sub(self, rhs).expect("incompatible incidence elements")
    }
}

impl Mul for &IncidenceElement {
    type Output = IncidenceElement;
    fn mul(self, rhs: &IncidenceElement) -> IncidenceElement {
        self.convolve(rhs).expect("incompatible incidence elements")
    }
}

impl Neg for &IncidenceElement {
    type Output = IncidenceElement;
    fn neg(self) -> IncidenceElement {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v = -&*v;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{make_chain, make_crown};

    fn q() -> RingSpec {
        RingSpec::Rationals
    }

    fn e(p: &Arc<Poset>, x: &str, y: &str) -> IncidenceElement {
        IncidenceElement::basis_e(p, &q(), x, y).unwrap()
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_int(&q(), n)
    }

    #[test]
    fn basis_and_delta() {
        let chain = Arc::new(make_chain(2));
        let e12 = e(&chain, "1", "2");
        assert_eq!(e12.entries().len(), 1);
        assert_eq!(e12.at(0, 1), int(1));

        let crown = Arc::new(make_crown());
        let d = IncidenceElement::delta(&crown, &q());
        let expect = &(&e(&crown, "1", "1") + &e(&crown, "2", "2")) + &(&e(&crown, "3", "3") + &e(&crown, "4", "4"));
        assert_eq!(d, expect);

        let c3 = Arc::new(make_chain(3));
        assert!(matches!(
            IncidenceElement::basis_e(&c3, &q(), "3", "1"),
            Err(Error::NotComparable(..))
        ));
    }

    #[test]
    fn module_structure() {
        let chain = Arc::new(make_chain(2));
        let f = &e(&chain, "1", "2") + &e(&chain, "1", "1");
        assert!(f.add(&f.scale(&int(-1)).unwrap()).unwrap().is_zero());
        assert!(f.scale(&int(0)).unwrap().is_zero());
        let two = &e(&chain, "1", "2") + &e(&chain, "1", "2");
        assert_eq!(two.at(0, 1), int(2));
    }

    #[test]
    fn convolution_examples() {
        let chain = Arc::new(make_chain(2));
        let (e11, e12, e22) = (e(&chain, "1", "1"), e(&chain, "1", "2"), e(&chain, "2", "2"));
        assert_eq!(&e11 * &e12, e12);
        assert!((&e12 * &e12).is_zero());
        // (e11 + e12)(e12 + e22) = e12 + e12
        let lhs = &(&e11 + &e12) * &(&e12 + &e22);
        assert_eq!(lhs, e12.scale(&int(2)).unwrap());
        let d = IncidenceElement::delta(&chain, &q());
        let f = &(&e11 + &e12).scale(&Scalar::rational(3, 2)).unwrap() + &e22;
        assert_eq!(&f * &d, f);
        assert_eq!(&d * &f, f);
    }

    #[test]
    fn mismatched_operands() {
        let a = Arc::new(make_chain(2));
        let b = Arc::new(make_chain(3));
        assert!(matches!(
            e(&a, "1", "2").convolve(&e(&b, "1", "2")),
            Err(Error::Mismatch("posets"))
        ));
        let z = IncidenceElement::basis_e(&a, &RingSpec::Integers, "1", "2").unwrap();
        assert!(matches!(e(&a, "1", "2").add(&z), Err(Error::Mismatch("rings"))));
        // structurally equal posets behind different pointers are compatible
        let a2 = Arc::new(make_chain(2));
        assert!(e(&a, "1", "2").add(&e(&a2, "1", "1")).is_ok());
    }

    #[test]
    fn sandwich_extracts_coefficients() {
        let crown = Arc::new(make_crown());
        let f = &e(&crown, "1", "3").scale(&int(5)).unwrap() + &e(&crown, "2", "4");
        assert_eq!(f.sandwich("1", "3").unwrap(), e(&crown, "1", "3").scale(&int(5)).unwrap());
        assert!(f.sandwich("3", "4").unwrap().is_zero());
        let d = IncidenceElement::delta(&crown, &q());
        assert_eq!(d.sandwich("2", "2").unwrap(), e(&crown, "2", "2"));
    }

    #[test]
    fn commutators() {
        let chain = Arc::new(make_chain(2));
        let (e11, e12) = (e(&chain, "1", "1"), e(&chain, "1", "2"));
        assert_eq!(e11.commutator(&e12).unwrap(), e12);
        assert!(e12.commutator(&e12).unwrap().is_zero());
        let d = IncidenceElement::delta(&chain, &q());
        assert!(d.commutator(&(&e11 + &e12)).unwrap().is_zero());
    }

    #[test]
    fn restriction() {
        let c3 = Arc::new(make_chain(3));
        let all: Vec<(usize, Scalar)> = (0..c3.intervals().len()).map(|k| (k, int(k as i64 + 1))).collect();
        let f = IncidenceElement::from_entries(&c3, &q(), all).unwrap();
        let r = f.restrict("1", "3").unwrap();
        let mut expect = IncidenceElement::zero(&c3, &q());
        for (x, y) in [("1", "3"), ("1", "1"), ("1", "2"), ("2", "3"), ("3", "3")] {
            expect = &expect + &e(&c3, x, y).scale(&f.at(c3.index_of(x).unwrap(), c3.index_of(y).unwrap())).unwrap();
        }
        assert_eq!(r, expect);
        assert_eq!(f.restrict("2", "2").unwrap(), e(&c3, "2", "2").scale(&f.at(1, 1)).unwrap());

        let d = IncidenceElement::delta(&c3, &q());
        assert_eq!(d.restrict("1", "3").unwrap(), &e(&c3, "1", "1") + &e(&c3, "3", "3"));
        assert!(matches!(d.restrict("3", "1"), Err(Error::NotComparable(..))));
    }

    #[test]
    fn centre() {
        let crown = Arc::new(make_crown());
        let basis = IncidenceElement::center_basis(&crown, &q());
        assert_eq!(basis, vec![IncidenceElement::delta(&crown, &q())]);
        assert!(basis[0].is_central());

        let two = Arc::new(Poset::disjoint_union(&[&make_chain(2).with_label_prefix("a"), &make_chain(2).with_label_prefix("b")]).unwrap());
        let basis = IncidenceElement::center_basis(&two, &q());
        assert_eq!(basis.len(), 2);
        assert!(basis.iter().all(IncidenceElement::is_central));

        let chain = Arc::new(make_chain(2));
        assert!(!e(&chain, "1", "1").is_central());
    }
}
