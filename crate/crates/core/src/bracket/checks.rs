//! Exhaustive verification on basis pairs and triples. Every identity here
//! is multilinear, so checking it on the standard basis is complete.

use rayon::prelude::*;

use super::{Bracket, DenseTable};
use crate::algebra::IncidenceElement;
use crate::report::{Report, Status};

pub const ANTISYMMETRY: &str = "antisymmetry";
pub const LEIBNIZ_LEFT: &str = "leibniz-left";
pub const LEIBNIZ_RIGHT: &str = "leibniz-right";
pub const LEIBNIZ_EQUIVALENCE: &str = "leibniz-equivalence";
pub const JACOBI: &str = "jacobi";

impl Bracket {
    fn basis(&self, k: usize) -> IncidenceElement {
        IncidenceElement::basis(&self.poset, &self.ring, k)
    }

    fn label(&self, k: usize) -> String {
        format!("e{}", self.poset.interval_label(self.poset.interval(k)))
    }

    /// Collects violations over all triples `(a, b, c)`, in parallel over `a`
    /// with results kept in lexicographic triple order.
    fn over_triples<F>(&self, check: F) -> Vec<String>
    where
        F: Fn(usize, usize, usize) -> Option<String> + Sync,
    {
        let n = self.dimension();
        (0..n)
            .into_par_iter()
            .map(|a| {
                let mut out = Vec::new();
                for b in 0..n {
                    for c in 0..n {
                        if let Some(v) = check(a, b, c) {
                            out.push(v);
                        }
                    }
                }
                out
            })
            .collect::<Vec<_>>()
            .concat()
    }

    /// `B(e_i, e_i) = 0` and `B(e_i, e_j) = -B(e_j, e_i)` on all basis pairs.
    pub fn check_antisymmetric(&self) -> Report {
        let n = self.dimension();
        let table = DenseTable::new(self);
        let mut violations = Vec::new();
        for i in 0..n {
            if !table.get(i, i).is_zero() {
                violations.push(format!("B({0}, {0}) = {1}", self.label(i), table.get(i, i)));
            }
            for j in i + 1..n {
                let sum = table.get(i, j) + table.get(j, i);
                if !sum.is_zero() {
                    violations.push(format!(
                        "B({0}, {1}) + B({1}, {0}) = {2}",
                        self.label(i),
                        self.label(j),
                        sum
                    ));
                }
            }
        }
        let mut report = Report::new();
        report.record(ANTISYMMETRY, n * (n + 1) / 2, violations);
        report
    }

    /// Both Leibniz rules on all basis triples:
    /// `B(ab, c) = a B(b, c) + B(a, c) b` and `B(a, bc) = B(a, b) c + b B(a, c)`.
    ///
    /// For an antisymmetric bracket the two rules are equivalent, and that
    /// equivalence is reported as its own record.
    pub fn check_biderivation(&self) -> Report {
        let n = self.dimension();
        let table = DenseTable::new(self);
        let basis: Vec<IncidenceElement> = (0..n).map(|k| self.basis(k)).collect();
        let product = |a: usize, b: usize| &basis[a] * &basis[b];

        let left = self.over_triples(|a, b, c| {
            let lhs = table.left_basis_product(&product(a, b), c);
            let rhs = &(&basis[a] * table.get(b, c)) + &(table.get(a, c) * &basis[b]);
            (lhs != rhs).then(|| {
                format!(
                    "B({a}{b}, {c}) = {lhs}, expected {rhs}",
                    a = self.label(a),
                    b = self.label(b),
                    c = self.label(c)
                )
            })
        });
        let right = self.over_triples(|a, b, c| {
            let lhs = table.left_basis(a, &product(b, c));
            let rhs = &(table.get(a, b) * &basis[c]) + &(&basis[b] * table.get(a, c));
            (lhs != rhs).then(|| {
                format!(
                    "B({a}, {b}{c}) = {lhs}, expected {rhs}",
                    a = self.label(a),
                    b = self.label(b),
                    c = self.label(c)
                )
            })
        });

        let mut report = Report::new();
        let (left_ok, right_ok) = (left.is_empty(), right.is_empty());
        report.record(LEIBNIZ_LEFT, n * n * n, left);
        report.record(LEIBNIZ_RIGHT, n * n * n, right);
        if self.check_antisymmetric().passed() {
            let status = if left_ok == right_ok { Status::Pass } else { Status::Fail };
            report.push(
                LEIBNIZ_EQUIVALENCE,
                format!("left rule {left_ok}, right rule {right_ok}"),
                status,
            );
        }
        report
    }

    /// `B(a, B(b, c)) + B(b, B(c, a)) + B(c, B(a, b)) = 0` on all basis triples.
    pub fn check_jacobi(&self) -> Report {
        let n = self.dimension();
        let table = DenseTable::new(self);
        let violations = self.over_triples(|a, b, c| {
            let s = &(&table.left_basis(a, table.get(b, c)) + &table.left_basis(b, table.get(c, a)))
                + &table.left_basis(c, table.get(a, b));
            (!s.is_zero()).then(|| {
                format!(
                    "({}, {}, {}) sums to {s}",
                    self.label(a),
                    self.label(b),
                    self.label(c)
                )
            })
        });
        let mut report = Report::new();
        report.record(JACOBI, n * n * n, violations);
        report
    }

    /// Antisymmetry, both Leibniz rules and Jacobi.
    pub fn verify_poisson(&self) -> Report {
        let mut report = self.check_antisymmetric();
        report.extend(self.check_biderivation());
        report.extend(self.check_jacobi());
        report
    }

    pub fn is_antisymmetric_biderivation(&self) -> bool {
        self.check_antisymmetric().passed() && self.check_biderivation().passed()
    }
}

impl DenseTable {
    /// `B(p, e_c)` where `p` is zero or a single basis element.
    fn left_basis_product(&self, p: &IncidenceElement, c: usize) -> IncidenceElement {
        let mut out = IncidenceElement::zero(&self.poset, &self.ring);
        for (&k, coeff) in p.entries() {
            out.add_scaled(coeff, self.get(k, c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coeff::RingSpec;
    use crate::poset::{make_chain, make_crown, Poset};

    fn idx(p: &Poset, x: &str, y: &str) -> usize {
        p.interval_index(p.index_of(x).unwrap(), p.index_of(y).unwrap()).unwrap()
    }

    #[test]
    fn commutator_is_poisson() {
        for p in [make_crown(), make_chain(3)] {
            let p = Arc::new(p);
            let b = Bracket::commutator(&p, &RingSpec::Rationals);
            let r = b.verify_poisson();
            assert!(r.passed(), "{r}");
            assert!(r.check_passed(LEIBNIZ_EQUIVALENCE));
        }
    }

    #[test]
    fn zero_bracket_passes() {
        let p = Arc::new(make_crown());
        assert!(Bracket::zero(&p, &RingSpec::Rationals).verify_poisson().passed());
    }

    #[test]
    fn one_sided_table_fails_antisymmetry() {
        let p = Arc::new(make_crown());
        let q = RingSpec::Rationals;
        let e13 = IncidenceElement::basis_e(&p, &q, "1", "3").unwrap();
        let b = Bracket::from_raw_table(&p, &q, [((idx(&p, "1", "1"), idx(&p, "1", "3")), e13)]).unwrap();
        let r = b.check_antisymmetric();
        assert_eq!(r.failure_count(), 1);
    }

    #[test]
    fn leibniz_violation() {
        // B(e11, e12) = e11 on the chain 1 < 2
        let p = Arc::new(make_chain(2));
        let q = RingSpec::Rationals;
        let e11 = IncidenceElement::basis_e(&p, &q, "1", "1").unwrap();
        let b = Bracket::from_basis_table(&p, &q, [((idx(&p, "1", "1"), idx(&p, "1", "2")), e11)]).unwrap();
        let r = b.check_biderivation();
        assert!(!r.check_passed(LEIBNIZ_LEFT));
        assert!(r
            .failures()
            .any(|f| f.check == LEIBNIZ_LEFT && f.instance.starts_with("B(e(1,1)e(1,1), e(1,2))")));
        // the two rules still agree for an antisymmetric table
        assert!(r.check_passed(LEIBNIZ_EQUIVALENCE));
    }
}
