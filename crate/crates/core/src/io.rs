//! JSON documents for posets, elements, brackets, sigma maps and
//! classification results. Elements are addressed by label and scalars by
//! their text form, so documents are independent of internal indices.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::IncidenceElement;
use crate::bracket::{Bracket, SigmaMap};
use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::poset::{Poset, StrictPair};
use crate::solver::Classification;

/// `{"elements": ["1","2"], "covers": [["1","2"]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PosetDoc {
    pub fn from_poset(p: &Poset) -> Self {
        PosetDoc {
            elements: p.labels().to_vec(),
            covers: p.cover_labels(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::from_covers(&self.elements, &self.covers)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalDoc {
    pub lo: String,
    pub hi: String,
}

impl IntervalDoc {
    fn index(&self, p: &Poset) -> Result<usize> {
        let (lo, hi) = (p.index_of(&self.lo)?, p.index_of(&self.hi)?);
        p.interval_index(lo, hi)
            .ok_or_else(|| Error::NotComparable(self.lo.clone(), self.hi.clone()))
    }

    fn of(p: &Poset, k: usize) -> Self {
        let iv = p.interval(k);
        IntervalDoc {
            lo: p.label(iv.lo).to_string(),
            hi: p.label(iv.hi).to_string(),
        }
    }
}

/// One coefficient `coeff * e_{lo,hi}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub lo: String,
    pub hi: String,
    pub coeff: String,
}

fn entries_to_element(p: &Arc<Poset>, ring: &RingSpec, entries: &[EntryDoc]) -> Result<IncidenceElement> {
    let mut terms = Vec::with_capacity(entries.len());
    for e in entries {
        let k = IntervalDoc { lo: e.lo.clone(), hi: e.hi.clone() }.index(p)?;
        terms.push((k, Scalar::parse(ring, &e.coeff)?));
    }
    IncidenceElement::from_entries(p, ring, terms)
}

fn element_to_entries(f: &IncidenceElement) -> Vec<EntryDoc> {
    let p = f.poset();
    f.entries()
        .iter()
        .map(|(&k, c)| {
            let iv = IntervalDoc::of(p, k);
            EntryDoc { lo: iv.lo, hi: iv.hi, coeff: c.to_string() }
        })
        .collect()
}

/// `{"ring": "Q", "entries": [{"lo":"1","hi":"3","coeff":"2/3"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub ring: RingSpec,
    pub entries: Vec<EntryDoc>,
}

impl ElementDoc {
    pub fn from_element(f: &IncidenceElement) -> Self {
        ElementDoc {
            ring: f.ring().clone(),
            entries: element_to_entries(f),
        }
    }

    pub fn to_element(&self, p: &Arc<Poset>) -> Result<IncidenceElement> {
        entries_to_element(p, &self.ring, &self.entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub left: IntervalDoc,
    pub right: IntervalDoc,
    pub value: Vec<EntryDoc>,
}

/// `B(e_left, e_right) = value` for the listed pairs; the ring is supplied
/// by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub pairs: Vec<PairDoc>,
}

impl BracketDoc {
    /// The stored pairs; an antisymmetric bracket lists each unordered pair
    /// once, in canonical order.
    pub fn from_bracket(b: &Bracket) -> Self {
        let p = b.poset();
        let pairs = b
            .stored()
            .iter()
            .map(|(&(i, j), v)| PairDoc {
                left: IntervalDoc::of(p, i),
                right: IntervalDoc::of(p, j),
                value: element_to_entries(v),
            })
            .collect();
        BracketDoc { pairs }
    }

    /// With `antisymmetric`, missing mirrored pairs are completed by
    /// `B(e_j, e_i) = -B(e_i, e_j)`; otherwise the table is taken literally.
    pub fn to_bracket(&self, p: &Arc<Poset>, ring: &RingSpec, antisymmetric: bool) -> Result<Bracket> {
        let mut entries = Vec::with_capacity(self.pairs.len());
        for pair in &self.pairs {
            let key = (pair.left.index(p)?, pair.right.index(p)?);
            entries.push((key, entries_to_element(p, ring, &pair.value)?));
        }
        if antisymmetric {
            Bracket::from_basis_table(p, ring, entries)
        } else {
            Bracket::from_raw_table(p, ring, entries)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaEntryDoc {
    pub lo: String,
    pub hi: String,
    pub value: String,
}

/// `{"entries": [{"lo":"1","hi":"3","value":"1"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaDoc {
    pub entries: Vec<SigmaEntryDoc>,
}

impl SigmaDoc {
    pub fn from_sigma(s: &SigmaMap) -> Self {
        let p = s.poset();
        let entries = s
            .values()
            .iter()
            .map(|(pair, v)| SigmaEntryDoc {
                lo: p.label(pair.lo).to_string(),
                hi: p.label(pair.hi).to_string(),
                value: v.to_string(),
            })
            .collect();
        SigmaDoc { entries }
    }

    pub fn to_sigma(&self, p: &Arc<Poset>, ring: &RingSpec) -> Result<SigmaMap> {
        let mut values = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let pair = StrictPair { lo: p.index_of(&e.lo)?, hi: p.index_of(&e.hi)? };
            values.push((pair, Scalar::parse(ring, &e.value)?));
        }
        SigmaMap::new(p, ring, values)
    }
}

/// `{"dimension": n, "chain_components": n, "match": true, "basis": [...]}`
/// plus the ring and the chain-component indicators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub ring: RingSpec,
    pub dimension: usize,
    pub chain_components: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    pub basis: Vec<SigmaDoc>,
    pub indicators: Vec<SigmaDoc>,
}

impl ClassificationDoc {
    pub fn from_classification(c: &Classification) -> Self {
        ClassificationDoc {
            ring: c.ring.clone(),
            dimension: c.dimension,
            chain_components: c.chain_components,
            matches: c.matches(),
            basis: c.basis.iter().map(SigmaDoc::from_sigma).collect(),
            indicators: c.indicators.iter().map(SigmaDoc::from_sigma).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{make_chain, make_crown};
    use crate::solver::classify;

    #[test]
    fn poset_roundtrip() {
        let doc: PosetDoc = serde_json::from_str(r#"{"elements": ["1","2"], "covers": [["1","2"]]}"#).unwrap();
        let p = doc.to_poset().unwrap();
        assert_eq!(p, make_chain(2));
        assert_eq!(PosetDoc::from_poset(&p), doc);
    }

    #[test]
    fn element_roundtrip() {
        let p = Arc::new(make_chain(3));
        let json = r#"{"ring": "Q", "entries": [{"lo":"1","hi":"3","coeff":"2/3"}]}"#;
        let doc: ElementDoc = serde_json::from_str(json).unwrap();
        let f = doc.to_element(&p).unwrap();
        assert_eq!(f.at(0, 2), Scalar::rational(2, 3));
        assert_eq!(ElementDoc::from_element(&f), doc);
    }

    #[test]
    fn bracket_and_sigma_roundtrip() {
        let p = Arc::new(make_crown());
        let ring = RingSpec::Rationals;
        let vals: Vec<Scalar> = (1..=4).map(|v| Scalar::from_int(&ring, v)).collect();
        let sigma = SigmaMap::from_class_values(&p, &ring, &p.chain_components(), &vals);
        let b = Bracket::from_sigma(&sigma).unwrap();

        let bdoc = BracketDoc::from_bracket(&b);
        let text = serde_json::to_string(&bdoc).unwrap();
        let back: BracketDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_bracket(&p, &ring, true).unwrap(), b);

        let sdoc = SigmaDoc::from_sigma(&sigma);
        assert_eq!(sdoc.to_sigma(&p, &ring).unwrap(), sigma);
    }

    #[test]
    fn bad_references() {
        let p = Arc::new(make_crown());
        let doc = SigmaDoc { entries: vec![SigmaEntryDoc { lo: "1".into(), hi: "9".into(), value: "1".into() }] };
        assert!(matches!(doc.to_sigma(&p, &RingSpec::Rationals), Err(Error::UnknownLabel(_))));
        let doc = BracketDoc {
            pairs: vec![PairDoc {
                left: IntervalDoc { lo: "1".into(), hi: "2".into() },
                right: IntervalDoc { lo: "1".into(), hi: "1".into() },
                value: vec![],
            }],
        };
        assert!(matches!(doc.to_bracket(&p, &RingSpec::Rationals, true), Err(Error::NotComparable(..))));
    }

    #[test]
    fn classification_document() {
        let p = Arc::new(make_crown());
        let c = classify(&p, &RingSpec::Rationals).unwrap();
        let doc = ClassificationDoc::from_classification(&c);
        let v = serde_json::to_value(&doc).unwrap();
        assert_eq!(v["dimension"], 4);
        assert_eq!(v["chain_components"], 4);
        assert_eq!(v["match"], true);
        assert_eq!(v["basis"].as_array().unwrap().len(), 4);
        let back: ClassificationDoc = serde_json::from_value(v).unwrap();
        assert_eq!(back, doc);
    }
}
