#![allow(dead_code)]

use std::sync::Arc;

use poisset_core::poset::{
    make_antichain, make_boolean_lattice, make_chain, make_crown, make_diamond, make_fence,
};
use poisset_core::{Poset, RingSpec};

/// Named test posets: chains 1..5, antichains 1..3, crown, diamond, 3-fence,
/// B2, B3 and the disjoint union of the crown with a 3-chain.
pub fn corpus() -> Vec<(String, Arc<Poset>)> {
    let mut out: Vec<(String, Poset)> = Vec::new();
    for n in 1..=5 {
        out.push((format!("chain{n}"), make_chain(n)));
    }
    for n in 1..=3 {
        out.push((format!("antichain{n}"), make_antichain(n)));
    }
    out.push(("crown".into(), make_crown()));
    out.push(("diamond".into(), make_diamond()));
    out.push(("fence3".into(), make_fence(3)));
    out.push(("B2".into(), make_boolean_lattice(2)));
    out.push(("B3".into(), make_boolean_lattice(3)));
    let union = Poset::disjoint_union(&[&make_crown().with_label_prefix("c"), &make_chain(3).with_label_prefix("t")])
        .expect("prefixed labels are distinct");
    out.push(("crown+chain3".into(), union));
    out.into_iter().map(|(n, p)| (n, Arc::new(p))).collect()
}

/// The corpus without its largest member, for the more expensive properties.
pub fn small_corpus() -> Vec<(String, Arc<Poset>)> {
    corpus().into_iter().filter(|(n, _)| n != "B3").collect()
}

pub fn zmod(m: u64) -> RingSpec {
    RingSpec::integers_mod(m).expect("modulus at least 2")
}

/// Random posets on up to `max_n` elements: covers are drawn among pairs
/// `i < j`, so the relation is acyclic by construction.
pub fn arb_poset(max_n: usize) -> impl proptest::strategy::Strategy<Value = Arc<Poset>> {
    use proptest::prelude::*;
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let mut covers = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        covers.push((labels[i].clone(), labels[j].clone()));
                    }
                    k += 1;
                }
            }
            Arc::new(Poset::from_covers(&labels, &covers).expect("acyclic"))
        })
}
