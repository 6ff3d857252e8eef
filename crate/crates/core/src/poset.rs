//! Finite posets given by cover relations.
//!
//! Elements are addressed by their position in the input list. The order
//! relation is stored as a dense closure matrix, which is all the algebra
//! layer needs for posets of desk-scale size.

use std::collections::HashMap;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

/// An interval `[lo, hi]` with `lo <= hi`, by element index. Indexes the
/// standard basis `e_{lo,hi}` of the incidence algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn is_loop(&self) -> bool {
        self.lo == self.hi
    }
}

/// A strictly comparable pair `lo < hi`, by element index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPair {
    pub lo: usize,
    pub hi: usize,
}

impl From<StrictPair> for Interval {
    fn from(p: StrictPair) -> Interval {
        Interval { lo: p.lo, hi: p.hi }
    }
}

/// Partition of the strict pairs of a poset. Classes are sorted internally
/// and ordered by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPartition {
    pub classes: Vec<Vec<StrictPair>>,
}

impl PairPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, pair: StrictPair) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(&pair).is_ok())
    }
}

#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
    intervals: Vec<Interval>,
    interval_index: Vec<Vec<Option<usize>>>,
    // intervals with a given lower end are contiguous in canonical order
    from_lo: Vec<std::ops::Range<usize>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.leq == other.leq
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from generating relations. Redundant relations are
    /// allowed and dropped; the stored covers form the transitive reduction.
    pub fn from_covers<L, A, B>(elements: &[L], covers: &[(A, B)]) -> Result<Poset>
    where
        L: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut label_index = HashMap::with_capacity(elements.len());
        let labels: Vec<String> = elements.iter().map(|l| l.as_ref().to_string()).collect();
        for (i, label) in labels.iter().enumerate() {
            if label_index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let lookup = |l: &str| {
            label_index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };

        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let (x, y) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if x == y {
                return Err(Error::CycleDetected(labels[x].clone(), labels[y].clone()));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if i != k && leq[i][k] {
                    let row_k = leq[k].clone();
                    for (cell, &reach) in leq[i].iter_mut().zip(&row_k) {
                        *cell |= reach;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
                }
            }
        }

        let mut reduced = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x][y] && !(0..n).any(|z| z != x && z != y && leq[x][z] && leq[z][y]) {
                    reduced.push((x, y));
                }
            }
        }

        let mut intervals = Vec::new();
        let mut interval_index = vec![vec![None; n]; n];
        let mut from_lo = Vec::with_capacity(n);
        for lo in 0..n {
            let start = intervals.len();
            for hi in 0..n {
                if leq[lo][hi] {
                    interval_index[lo][hi] = Some(intervals.len());
                    intervals.push(Interval { lo, hi });
                }
            }
            from_lo.push(start..intervals.len());
        }

        Ok(Poset {
            labels,
            label_index,
            leq,
            covers: reduced,
            intervals,
            interval_index,
            from_lo,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.label_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Cover relations (transitive reduction) as index pairs, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_labels(&self) -> Vec<(String, String)> {
        self.covers
            .iter()
            .map(|&(x, y)| (self.labels[x].clone(), self.labels[y].clone()))
            .collect()
    }

    /// `x <= y` by element index.
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq[x][y] || self.leq[y][x]
    }

    pub fn leq(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.le(self.index_of(x)?, self.index_of(y)?))
    }

    /// All intervals, ordered lexicographically by `(lo, hi)` index.
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, k: usize) -> Interval {
        self.intervals[k]
    }

    pub fn interval_index(&self, lo: usize, hi: usize) -> Option<usize> {
        self.interval_index[lo][hi]
    }

    /// Indices of the intervals `[lo, _]`.
    pub fn intervals_from(&self, lo: usize) -> std::ops::Range<usize> {
        self.from_lo[lo].clone()
    }

    pub fn interval_label(&self, iv: Interval) -> String {
        format!("({},{})", self.labels[iv.lo], self.labels[iv.hi])
    }

    pub fn strict_pairs(&self) -> Vec<StrictPair> {
        self.intervals
            .iter()
            .filter(|iv| !iv.is_loop())
            .map(|iv| StrictPair { lo: iv.lo, hi: iv.hi })
            .collect()
    }

    /// Elements `z` with `lo <= z <= hi`, in index order.
    pub fn closed_interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&z| self.leq[lo][z] && self.leq[z][hi])
            .collect()
    }

    pub fn is_chain(&self, elements: &[usize]) -> bool {
        elements
            .iter()
            .enumerate()
            .all(|(i, &a)| elements[i + 1..].iter().all(|&b| self.comparable(a, b)))
    }

    /// Connected components of the comparability graph, each sorted, ordered
    /// by smallest element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut uf = UnionFind::<usize>::new(n);
        for &(x, y) in &self.covers {
            uf.union(x, y);
        }
        group_by_root(n, |i| uf.find(i))
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| !(0..self.len()).any(|y| self.lt(y, x)))
            .collect()
    }

    fn upper_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.0 == x).map(|c| c.1)
    }

    /// All inclusion-maximal chains, each listed bottom to top. A maximal
    /// chain of a finite poset is a saturated path from a minimal to a
    /// maximal element, so a DFS over covers enumerates them.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for m in self.minimal_elements() {
            path.push(m);
            self.extend_chains(&mut path, &mut out);
            path.pop();
        }
        out
    }

    fn extend_chains(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let top = *path.last().expect("non-empty path");
        let mut extended = false;
        for next in self.upper_covers(top) {
            extended = true;
            path.push(next);
            self.extend_chains(path, out);
            path.pop();
        }
        if !extended {
            out.push(path.clone());
        }
    }

    /// Whether any two distinct maximal chains share at least two elements.
    pub fn maximal_chain_overlap(&self) -> bool {
        let chains = self.maximal_chains();
        chains.iter().enumerate().all(|(i, c)| {
            chains[i + 1..]
                .iter()
                .all(|d| c.iter().filter(|x| d.contains(x)).count() >= 2)
        })
    }

    /// Partition of the strict pairs under the transitive closure of "both
    /// pairs lie in a common chain". A map on strict pairs is constant on
    /// chains iff it is constant on every class.
    pub fn chain_components(&self) -> PairPartition {
        let pairs = self.strict_pairs();
        let mut uf = UnionFind::<usize>::new(pairs.len());
        for (i, p) in pairs.iter().enumerate() {
            for (j, q) in pairs.iter().enumerate().skip(i + 1) {
                if self.is_chain(&[p.lo, p.hi, q.lo, q.hi]) {
                    uf.union(i, j);
                }
            }
        }
        let classes = group_by_root(pairs.len(), |i| uf.find(i))
            .into_iter()
            .map(|class| class.into_iter().map(|i| pairs[i]).collect())
            .collect();
        PairPartition { classes }
    }

    /// Length of the longest chain ending at each element (minimal elements
    /// have height 0).
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut height = vec![0usize; n];
        // Ordering by number of strict predecessors is a linear extension.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| self.lt(y, x)).count());
        for &x in &order {
            for &(lo, hi) in &self.covers {
                if hi == x {
                    height[x] = height[x].max(height[lo] + 1);
                }
            }
        }
        height
    }

    /// Graphviz rendering of the Hasse diagram, one rank per height.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
        let heights = self.heights();
        for (i, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape_dot(label));
        }
        let max_height = heights.iter().copied().max().unwrap_or(0);
        for h in 0..=max_height {
            let nodes: Vec<String> = (0..self.len())
                .filter(|&i| heights[i] == h)
                .map(|i| format!("n{i}"))
                .collect();
            if !nodes.is_empty() {
                let _ = writeln!(out, "  {{ rank=same; {}; }}", nodes.join("; "));
            }
        }
        for &(x, y) in &self.covers {
            let _ = writeln!(out, "  n{x} -> n{y};");
        }
        out.push_str("}\n");
        out
    }

    /// Same order with every label prefixed, for building disjoint unions of
    /// posets that share labels.
    pub fn with_label_prefix(&self, prefix: &str) -> Poset {
        let labels: Vec<String> = self.labels.iter().map(|l| format!("{prefix}{l}")).collect();
        let covers: Vec<(String, String)> = self
            .covers
            .iter()
            .map(|&(x, y)| (labels[x].clone(), labels[y].clone()))
            .collect();
        Poset::from_covers(&labels, &covers).expect("relabelling preserves validity")
    }

    pub fn disjoint_union(parts: &[&Poset]) -> Result<Poset> {
        let labels: Vec<String> = parts.iter().flat_map(|p| p.labels.iter().cloned()).collect();
        let covers: Vec<(String, String)> = parts.iter().flat_map(|p| p.cover_labels()).collect();
        Poset::from_covers(&labels, &covers)
    }
}

fn group_by_root(n: usize, mut root: impl FnMut(usize) -> usize) -> Vec<Vec<usize>> {
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = root(i);
        let g = *slot.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    groups
}

fn escape_dot(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The chain `1 < 2 < ... < n`.
pub fn make_chain(n: usize) -> Poset {
    assert!(n >= 1, "a chain needs at least one element");
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let covers: Vec<(String, String)> = labels.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Poset::from_covers(&labels, &covers).expect("chain is a valid poset")
}

/// The 4-crown: minimal elements 1, 2 below maximal elements 3, 4.
pub fn make_crown() -> Poset {
    Poset::from_covers(
        &["1", "2", "3", "4"],
        &[("1", "3"), ("1", "4"), ("2", "3"), ("2", "4")],
    )
    .expect("crown is a valid poset")
}

pub fn make_antichain(n: usize) -> Poset {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    Poset::from_covers::<_, &str, &str>(&labels, &[]).expect("antichain is a valid poset")
}

/// `1 < a < 2`, `1 < b < 2` with `a`, `b` incomparable.
pub fn make_diamond() -> Poset {
    Poset::from_covers(
        &["1", "a", "b", "2"],
        &[("1", "a"), ("1", "b"), ("a", "2"), ("b", "2")],
    )
    .expect("diamond is a valid poset")
}

/// Zigzag `1 < 2 > 3 < 4 > ...` on `n` elements.
pub fn make_fence(n: usize) -> Poset {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let covers: Vec<(String, String)> = (0..n.saturating_sub(1))
        .map(|i| {
            if i % 2 == 0 {
                (labels[i].clone(), labels[i + 1].clone())
            } else {
                (labels[i + 1].clone(), labels[i].clone())
            }
        })
        .collect();
    Poset::from_covers(&labels, &covers).expect("fence is a valid poset")
}

/// Subsets of `{1..k}` ordered by inclusion, labelled like `{}`, `{1,3}`.
pub fn make_boolean_lattice(k: usize) -> Poset {
    let label = |mask: usize| {
        let members: Vec<String> = (0..k)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| (b + 1).to_string())
            .collect();
        format!("{{{}}}", members.join(","))
    };
    let labels: Vec<String> = (0..1usize << k).map(label).collect();
    let mut covers = Vec::new();
    for mask in 0..1usize << k {
        for b in 0..k {
            if mask & (1 << b) == 0 {
                covers.push((labels[mask].clone(), labels[mask | (1 << b)].clone()));
            }
        }
    }
    Poset::from_covers(&labels, &covers).expect("boolean lattice is a valid poset")
}
