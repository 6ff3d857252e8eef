//! Per-pair proportionality factors: for a biderivation,
//! `B(e_i, e_j) = lambda(i, j) [e_i, e_j]` for every basis pair.

use std::collections::BTreeMap;

use super::Bracket;
use crate::algebra::IncidenceElement;
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::report::Report;

/// `lambda(i, j)` on the ordered basis pairs whose commutator is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaMap {
    pub values: BTreeMap<(usize, usize), Scalar>,
}

impl LambdaMap {
    pub fn get(&self, i: usize, j: usize) -> Option<&Scalar> {
        self.values.get(&(i, j))
    }
}

impl Bracket {
    /// Proportionality factors of `B` against the commutator. Fails with
    /// `NotProportional` if some `B(e_i, e_j)` is not a multiple of
    /// `[e_i, e_j]` (including nonzero values where the commutator vanishes).
    pub fn extract_lambda(&self) -> Result<LambdaMap> {
        let n = self.dimension();
        let p = &self.poset;
        let basis: Vec<IncidenceElement> = (0..n).map(|k| IncidenceElement::basis(p, &self.ring, k)).collect();
        let mut values = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let c = basis[i].commutator(&basis[j])?;
                let b = self.value(i, j);
                let not_proportional = || Error::NotProportional {
                    left: p.interval_label(p.interval(i)),
                    right: p.interval_label(p.interval(j)),
                };
                // commutators of basis elements are 0 or +-e_k
                match c.entries().iter().next() {
                    None => {
                        if !b.is_zero() {
                            return Err(not_proportional());
                        }
                    }
                    Some((&k, sign)) => {
                        let lambda = &b.coeff(k) * sign;
                        if b != c.scale(&lambda)? {
                            return Err(not_proportional());
                        }
                        values.insert((i, j), lambda);
                    }
                }
            }
        }
        Ok(LambdaMap { values })
    }
}

/// Symmetry of `lambda` and the four local chain identities:
///
/// 1. `lambda(e_x, e_xy) = lambda(e_xy, e_y)` for `x < y`;
/// 2. `lambda(e_xy, e_yz) = lambda(e_x, e_xy)` for `x < y < z`;
/// 3. `lambda(e_xy, e_yz) = lambda(e_xy, e_yu)` for `x <= y < z < u`;
/// 4. `lambda(e_yz, e_zu) = lambda(e_xz, e_zu)` for `x < y < z <= u`.
///
/// Also reports whether `lambda` is defined on every pair with nonzero
/// commutator.
pub fn check_lambda_identities(poset: &Poset, lambda: &LambdaMap) -> Report {
    let n = poset.len();
    let iv = |a: usize, b: usize| poset.interval_index(a, b).expect("comparable");
    let label = |xs: &[usize]| {
        xs.iter()
            .map(|&x| poset.label(x).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut report = Report::new();

    let mut defined = Vec::new();
    let mut total = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // [e_ab, e_bc] != 0 exactly when a <= b <= c with a < c
                if poset.le(a, b) && poset.le(b, c) && a != c {
                    total += 2;
                    for key in [(iv(a, b), iv(b, c)), (iv(b, c), iv(a, b))] {
                        if lambda.get(key.0, key.1).is_none() {
                            defined.push(format!("({})", label(&[a, b, c])));
                        }
                    }
                }
            }
        }
    }
    report.record("lambda-defined", total, defined);

    let mut symmetric = Vec::new();
    for (&(i, j), v) in &lambda.values {
        if let Some(w) = lambda.get(j, i) {
            if v != w {
                symmetric.push(format!("pair {i},{j}: {v} vs {w}"));
            }
        }
    }
    report.record("lambda-symmetric", lambda.values.len(), symmetric);

    let compare = |violations: &mut Vec<String>, count: &mut usize, tag: &[usize], l: (usize, usize), r: (usize, usize)| {
        *count += 1;
        match (lambda.get(l.0, l.1), lambda.get(r.0, r.1)) {
            (Some(a), Some(b)) if a == b => {}
            (a, b) => violations.push(format!("({}): {:?} vs {:?}", label(tag), a.map(|s| s.to_string()), b.map(|s| s.to_string()))),
        }
    };

    let (mut v1, mut c1) = (Vec::new(), 0);
    let (mut v2, mut c2) = (Vec::new(), 0);
    let (mut v3, mut c3) = (Vec::new(), 0);
    let (mut v4, mut c4) = (Vec::new(), 0);
    for x in 0..n {
        for y in 0..n {
            if !poset.lt(x, y) {
                continue;
            }
            compare(&mut v1, &mut c1, &[x, y], (iv(x, x), iv(x, y)), (iv(x, y), iv(y, y)));
            for z in 0..n {
                if !poset.lt(y, z) {
                    continue;
                }
                compare(&mut v2, &mut c2, &[x, y, z], (iv(x, y), iv(y, z)), (iv(x, x), iv(x, y)));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for u in 0..n {
                    if poset.le(x, y) && poset.lt(y, z) && poset.lt(z, u) {
                        compare(&mut v3, &mut c3, &[x, y, z, u], (iv(x, y), iv(y, z)), (iv(x, y), iv(y, u)));
                    }
                    if poset.lt(x, y) && poset.lt(y, z) && poset.le(z, u) {
                        compare(&mut v4, &mut c4, &[x, y, z, u], (iv(y, z), iv(z, u)), (iv(x, z), iv(z, u)));
                    }
                }
            }
        }
    }
    report.record("lambda-loop-ends", c1, v1);
    report.record("lambda-composable-start", c2, v2);
    report.record("lambda-extend-right", c3, v3);
    report.record("lambda-extend-left", c4, v4);
    report
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::bracket::SigmaMap;
    use crate::coeff::RingSpec;
    use crate::poset::{make_chain, make_crown};

    #[test]
    fn commutator_lambda_is_one() {
        let p = Arc::new(make_crown());
        let ring = RingSpec::Rationals;
        let lambda = Bracket::commutator(&p, &ring).extract_lambda().unwrap();
        assert!(!lambda.values.is_empty());
        assert!(lambda.values.values().all(Scalar::is_one));
        assert!(check_lambda_identities(&p, &lambda).passed());
    }

    #[test]
    fn lambda_of_sigma_bracket() {
        let p = Arc::new(make_chain(4));
        let ring = RingSpec::Rationals;
        let s = Scalar::rational(-3, 2);
        let b = Bracket::from_sigma(&SigmaMap::constant(&p, &ring, &s)).unwrap();
        let lambda = b.extract_lambda().unwrap();
        // lambda(e_xz, e_zy) = sigma(x, y)
        for (x, z, y) in [(0, 1, 3), (0, 0, 2), (1, 3, 3)] {
            let l = lambda.get(p.interval_index(x, z).unwrap(), p.interval_index(z, y).unwrap()).unwrap();
            assert_eq!(l, &s);
        }
        assert!(check_lambda_identities(&p, &lambda).passed());
    }

    #[test]
    fn non_proportional_value() {
        let p = Arc::new(make_chain(2));
        let ring = RingSpec::Rationals;
        let e11 = IncidenceElement::basis_e(&p, &ring, "1", "1").unwrap();
        let b = Bracket::from_basis_table(&p, &ring, [((0, 1), e11)]).unwrap();
        assert!(matches!(b.extract_lambda(), Err(Error::NotProportional { .. })));
    }

    #[test]
    fn broken_identities_are_reported() {
        let p = Arc::new(make_chain(3));
        let ring = RingSpec::Rationals;
        let b = Bracket::commutator(&p, &ring);
        let mut lambda = b.extract_lambda().unwrap();
        let key = (p.interval_index(0, 0).unwrap(), p.interval_index(0, 1).unwrap());
        lambda.values.insert(key, Scalar::from_int(&ring, 2));
        let r = check_lambda_identities(&p, &lambda);
        assert!(!r.passed());
        assert!(!r.check_passed("lambda-loop-ends"));
        assert!(!r.check_passed("lambda-symmetric"));
    }
}
