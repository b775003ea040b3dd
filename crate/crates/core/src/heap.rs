//! Heaps of pieces over a Coxeter graph.
//!
//! Every heap here is the heap of some word: vertex `i` carries the label of
//! the `i`-th letter, and index order is always a linear extension of the
//! heap order. Strict up/down sets are stored per vertex as bitsets, which
//! makes interval and convexity queries cheap.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::coxeter::{format_word, Bond, CoxeterGraph};
use crate::error::{Error, Result};

/// Which end of a word/heap an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// The two kinds of peeling step in a dismantling sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extremity {
    Maximal,
    Minimal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Removal {
    pub vertex: usize,
    pub extremity: Extremity,
}

/// Witness of a weakly complex product `s·w` (or `w·s`).
#[derive(Clone, Debug)]
pub struct WeaklyComplexWitness {
    /// The unique neighbour t of s such that the chain alternates in s and t.
    pub t: usize,
    /// The m(s,t) − 1 vertices of the original heap in the alternating chain.
    pub chain: Vec<usize>,
    /// The heap of the non-FC word `s·w` (new vertex 0) or `w·s` (new vertex n).
    pub extended: Heap,
    /// The full convex chain of length m(s,t) in `extended`, increasing.
    pub extended_chain: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum MultiplyStatus {
    Descent,
    StillFc(Heap),
    WeaklyComplex(WeaklyComplexWitness),
}

#[derive(Clone, Debug)]
pub struct Heap {
    graph: Arc<CoxeterGraph>,
    labels: Vec<usize>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
}

impl Heap {
    /// The heap of a word.
    pub fn of_word(graph: &Arc<CoxeterGraph>, word: &[usize]) -> Result<Heap> {
        graph.check_word(word)?;
        Ok(Self::of_word_unchecked(graph, word))
    }

    pub(crate) fn of_word_unchecked(graph: &Arc<CoxeterGraph>, word: &[usize]) -> Heap {
        let n = word.len();
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(n);
        for k in 0..n {
            let mut set = FixedBitSet::with_capacity(n);
            for j in 0..k {
                if graph.is_concurrent(word[j], word[k]) && !set.contains(j) {
                    set.insert(j);
                    set.union_with(&below[j]);
                }
            }
            below.push(set);
        }
        Self::from_below(graph.clone(), word.to_vec(), below)
    }

    fn from_below(graph: Arc<CoxeterGraph>, labels: Vec<usize>, below: Vec<FixedBitSet>) -> Heap {
        let n = labels.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (b, set) in below.iter().enumerate() {
            for a in set.ones() {
                above[a].insert(b);
            }
        }
        Heap {
            graph,
            labels,
            below,
            above,
        }
    }

    pub fn empty(graph: &Arc<CoxeterGraph>) -> Heap {
        Self::of_word_unchecked(graph, &[])
    }

    pub fn graph(&self) -> &Arc<CoxeterGraph> {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Labels in vertex order: one linear extension read as a word.
    pub fn word(&self) -> &[usize] {
        &self.labels
    }

    /// Strict down-set of `v`.
    pub fn below(&self, v: usize) -> &FixedBitSet {
        &self.below[v]
    }

    /// Strict up-set of `v`.
    pub fn above(&self, v: usize) -> &FixedBitSet {
        &self.above[v]
    }

    /// a < b in the heap order.
    #[inline]
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.less(b, a)
    }

    /// Vertices strictly between `a` and `b`.
    pub fn open_interval(&self, a: usize, b: usize) -> FixedBitSet {
        let mut set = self.above[a].clone();
        set.intersect_with(&self.below[b]);
        set
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.less(a, b) && self.above[a].is_disjoint(&self.below[b])
    }

    /// All cover relations (a, b), sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.above[a].ones() {
                if self.is_cover(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_minimal(&self, v: usize) -> bool {
        self.below[v].is_clear()
    }

    pub fn is_maximal(&self, v: usize) -> bool {
        self.above[v].is_clear()
    }

    pub fn minimal_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_minimal(v)).collect()
    }

    pub fn maximal_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_maximal(v)).collect()
    }

    /// A heap is trivial when it is an antichain.
    pub fn is_trivial(&self) -> bool {
        self.below.iter().all(|b| b.is_clear())
    }

    /// The vertices labelled `s`, increasing (they always form a chain).
    pub fn label_chain(&self, s: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.labels[v] == s).collect()
    }

    /// Occurrence index of `v` among vertices with its label, 1-based.
    pub fn occurrence(&self, v: usize) -> usize {
        self.labels[..=v].iter().filter(|&&l| l == self.labels[v]).count()
    }

    /// Length of the longest chain ending at each vertex, minus one.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.len()];
        for v in 0..self.len() {
            level[v] = self.below[v].ones().map(|u| level[u] + 1).max().unwrap_or(0);
        }
        level
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn vertex_set(&self, vertices: &[usize]) -> Result<FixedBitSet> {
        let mut s = FixedBitSet::with_capacity(self.len());
        for &v in vertices {
            self.check_vertex(v)?;
            s.insert(v);
        }
        Ok(s)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                size: self.len(),
            });
        }
        Ok(())
    }

    /// The induced subheap on `subset`, with order generated by the
    /// restricted concurrent pairs. Vertices are renumbered in index order.
    pub fn subheap(&self, subset: &FixedBitSet) -> Result<Heap> {
        if let Some(v) = subset.ones().find(|&v| v >= self.len()) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                size: self.len(),
            });
        }
        let word: Vec<usize> = subset.ones().map(|v| self.labels[v]).collect();
        Ok(Self::of_word_unchecked(&self.graph, &word))
    }

    /// `E(v₁,…,v_k)`: the subheap with the given vertices deleted.
    pub fn delete(&self, vertices: &[usize]) -> Result<Heap> {
        let mut keep = self.full_set();
        for &v in vertices {
            self.check_vertex(v)?;
            keep.set(v, false);
        }
        self.subheap(&keep)
    }

    /// Superposition of `self` over `other`: disjoint union with every vertex
    /// of `self` below each concurrent vertex of `other`, then closed.
    pub fn superpose(&self, other: &Heap) -> Result<Heap> {
        if !Arc::ptr_eq(&self.graph, &other.graph) && self.graph != other.graph {
            return Err(Error::GraphMismatch);
        }
        let (n, m) = (self.len(), other.len());
        let total = n + m;
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(total);
        for a in 0..n {
            let mut set = FixedBitSet::with_capacity(total);
            set.union_with(&self.below[a]);
            below.push(set);
        }
        for b in 0..m {
            let mut set = FixedBitSet::with_capacity(total);
            for x in other.below[b].ones() {
                set.insert(n + x);
            }
            for a in 0..n {
                if self.graph.is_concurrent(self.labels[a], other.labels[b]) {
                    set.insert(a);
                }
            }
            below.push(set);
        }
        // Every generating pair points forward in index order, so one sweep
        // closes the relation.
        for k in n..total {
            let direct: Vec<usize> = below[k].ones().collect();
            let mut set = below[k].clone();
            for j in direct {
                set.union_with(&below[j]);
            }
            below[k] = set;
        }
        Ok(Self::from_below(self.graph.clone(), labels, below))
    }

    /// x ≤ z ≤ y with x, y in `subset` forces z into `subset`.
    pub fn is_convex(&self, subset: &FixedBitSet) -> bool {
        for x in subset.ones() {
            for y in self.above[x].intersection(subset) {
                let mut between = self.open_interval(x, y);
                between.difference_with(subset);
                if !between.is_clear() {
                    return false;
                }
            }
        }
        true
    }

    /// Greedy lexicographically least linear extension, as vertex indices.
    pub fn canonical_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut remaining: Vec<usize> = self.below.iter().map(|b| b.count_ones(..)).collect();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !placed[v] && remaining[v] == 0)
                .min_by_key(|&v| (self.labels[v], v))
                .expect("a finite poset always has a minimal element");
            placed[v] = true;
            order.push(v);
            for u in self.above[v].ones() {
                remaining[u] -= 1;
            }
        }
        order
    }

    /// Canonical representative of the commutation class.
    pub fn canonical_word(&self) -> Vec<usize> {
        self.canonical_order()
            .into_iter()
            .map(|v| self.labels[v])
            .collect()
    }

    /// Labelled-poset isomorphism for heaps of words.
    pub fn is_isomorphic(&self, other: &Heap) -> bool {
        self.graph == other.graph && self.canonical_word() == other.canonical_word()
    }

    /// An increasing alternating chain of length m(s,t) in the merged
    /// {s,t}-chain, starting at position `start`, that is convex.
    fn alternating_window(&self, st_chain: &[usize], start: usize, m: usize) -> bool {
        let window = &st_chain[start..start + m];
        if window.windows(2).any(|p| self.labels[p[0]] == self.labels[p[1]]) {
            return false;
        }
        let (lo, hi) = (window[0], window[m - 1]);
        self.open_interval(lo, hi).count_ones(..) == m - 2
    }

    fn pair_chain(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.labels[v] == s || self.labels[v] == t)
            .collect()
    }

    /// Stembridge's criterion: no equal-label cover and no convex
    /// alternating chain of length m(s,t).
    pub fn is_fc(&self) -> bool {
        for s in self.graph.generators() {
            let chain = self.label_chain(s);
            if chain.windows(2).any(|p| self.is_cover(p[0], p[1])) {
                return false;
            }
        }
        for (s, t) in self.graph.edges() {
            let Bond::Finite(m) = self.graph.m(s, t) else {
                continue;
            };
            let m = m as usize;
            let chain = self.pair_chain(s, t);
            if chain.len() < m {
                continue;
            }
            if (0..=chain.len() - m).any(|i| self.alternating_window(&chain, i, m)) {
                return false;
            }
        }
        true
    }

    fn require_fc(&self) -> Result<()> {
        if self.is_fc() {
            Ok(())
        } else {
            Err(Error::NotFullyCommutative {
                word: format_word(&self.labels),
            })
        }
    }

    /// Labels of minimal vertices, sorted. Only meaningful for FC heaps.
    pub fn left_descents(&self) -> Result<Vec<usize>> {
        self.require_fc()?;
        Ok(self.extremal_labels(Side::Left))
    }

    pub fn right_descents(&self) -> Result<Vec<usize>> {
        self.require_fc()?;
        Ok(self.extremal_labels(Side::Right))
    }

    /// Labels of minimal (left) or maximal (right) vertices without the FC check.
    pub fn extremal_labels(&self, side: Side) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.len())
            .filter(|&v| match side {
                Side::Left => self.is_minimal(v),
                Side::Right => self.is_maximal(v),
            })
            .map(|v| self.labels[v])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn has_descent(&self, side: Side, s: usize) -> bool {
        (0..self.len()).any(|v| {
            self.labels[v] == s
                && match side {
                    Side::Left => self.is_minimal(v),
                    Side::Right => self.is_maximal(v),
                }
        })
    }

    /// Classifies `s·w` (left) or `w·s` (right) for an FC heap `w`.
    pub fn multiply_status(&self, side: Side, s: usize) -> Result<MultiplyStatus> {
        self.graph.check_word(&[s])?;
        if self.has_descent(side, s) {
            return Ok(MultiplyStatus::Descent);
        }
        let mut word = Vec::with_capacity(self.len() + 1);
        match side {
            Side::Left => {
                word.push(s);
                word.extend_from_slice(&self.labels);
            }
            Side::Right => {
                word.extend_from_slice(&self.labels);
                word.push(s);
            }
        }
        let extended = Self::of_word_unchecked(&self.graph, &word);
        if extended.is_fc() {
            return Ok(MultiplyStatus::StillFc(extended));
        }
        for &t in self.graph.neighbors(s) {
            let Bond::Finite(m) = self.graph.m(s, t) else {
                continue;
            };
            let m = m as usize;
            let chain = extended.pair_chain(s, t);
            if chain.len() < m {
                continue;
            }
            let start = match side {
                Side::Left => 0,
                Side::Right => chain.len() - m,
            };
            if extended.alternating_window(&chain, start, m) {
                let extended_chain = chain[start..start + m].to_vec();
                let original: Vec<usize> = match side {
                    Side::Left => extended_chain[1..].iter().map(|v| v - 1).collect(),
                    Side::Right => extended_chain[..m - 1].to_vec(),
                };
                return Ok(MultiplyStatus::WeaklyComplex(WeaklyComplexWitness {
                    t,
                    chain: original,
                    extended,
                    extended_chain,
                }));
            }
        }
        Err(Error::NotFullyCommutative {
            word: format_word(&self.labels),
        })
    }

    pub fn left_multiply_status(&self, s: usize) -> Result<MultiplyStatus> {
        self.multiply_status(Side::Left, s)
    }

    pub fn right_multiply_status(&self, s: usize) -> Result<MultiplyStatus> {
        self.multiply_status(Side::Right, s)
    }

    fn peel_steps(&self, rest: &FixedBitSet) -> Vec<Removal> {
        let mut steps = Vec::new();
        for a in rest.ones() {
            // `outer` is the strict set on the side being peeled.
            for (extremity, outer, inner) in [
                (Extremity::Minimal, &self.below, &self.above),
                (Extremity::Maximal, &self.above, &self.below),
            ] {
                if !outer[a].is_disjoint(rest) {
                    continue;
                }
                let legal = inner[a].intersection(rest).any(|b| {
                    self.labels[b] != self.labels[a]
                        && outer[b].intersection(rest).eq(std::iter::once(a))
                });
                if legal {
                    steps.push(Removal {
                        vertex: a,
                        extremity,
                    });
                }
            }
        }
        steps
    }

    fn is_trivial_on(&self, rest: &FixedBitSet) -> bool {
        rest.ones().all(|v| self.below[v].is_disjoint(rest))
    }

    fn dismantle(
        &self,
        rest: &mut FixedBitSet,
        failed: &mut HashSet<FixedBitSet>,
        path: &mut Vec<Removal>,
    ) -> bool {
        if self.is_trivial_on(rest) {
            return true;
        }
        if failed.contains(rest) {
            return false;
        }
        for step in self.peel_steps(rest) {
            rest.set(step.vertex, false);
            path.push(step);
            if self.dismantle(rest, failed, path) {
                return true;
            }
            path.pop();
            rest.insert(step.vertex);
        }
        failed.insert(rest.clone());
        false
    }

    /// Peeling steps taking the heap down to a trivial heap, outermost first.
    /// Trivial heaps are dismantlable by the empty sequence.
    pub fn dismantling_sequence(&self) -> Option<Vec<Removal>> {
        let mut rest = self.full_set();
        let mut path = Vec::new();
        let mut failed = HashSet::new();
        self.dismantle(&mut rest, &mut failed, &mut path)
            .then_some(path)
    }

    /// Property P1.
    pub fn is_dismantlable(&self) -> bool {
        self.dismantling_sequence().is_some()
    }

    /// Checks a proposed peeling order (outermost vertex first): every step
    /// must be a legal maximal or minimal removal and the end must be trivial.
    pub fn is_dismantling_sequence(&self, removed: &[usize]) -> bool {
        let mut rest = self.full_set();
        for &v in removed {
            if v >= self.len() || !rest.contains(v) {
                return false;
            }
            if !self.peel_steps(&rest).iter().any(|r| r.vertex == v) {
                return false;
            }
            rest.set(v, false);
        }
        self.is_trivial_on(&rest)
    }

    /// Property P2: no convex chain x < z or x < y < z with ε(x) = ε(z).
    pub fn has_property_p2(&self) -> bool {
        for x in 0..self.len() {
            for z in self.above[x].ones() {
                if self.labels[x] == self.labels[z] && self.open_interval(x, z).count_ones(..) <= 1
                {
                    return false;
                }
            }
        }
        true
    }

    fn validate_balanced_chain(&self, chain: &[usize]) -> Result<()> {
        let Some((&first, &last)) = chain.first().zip(chain.last()) else {
            return Err(Error::InvalidChain("empty chain".into()));
        };
        for &v in chain {
            self.check_vertex(v)?;
        }
        if chain.windows(2).any(|p| !self.less(p[0], p[1])) {
            return Err(Error::InvalidChain("not strictly increasing".into()));
        }
        if self.labels[first] != self.labels[last] {
            return Err(Error::InvalidChain("not balanced".into()));
        }
        if !self.is_convex(&self.vertex_set(chain)?) {
            return Err(Error::InvalidChain("not convex".into()));
        }
        Ok(())
    }

    /// Contraction along a balanced convex chain, keeping the bottom vertex.
    pub fn contract(&self, chain: &[usize]) -> Result<Heap> {
        self.validate_balanced_chain(chain)?;
        self.delete(&chain[1..])
    }

    /// Contraction keeping the top vertex of the chain instead.
    pub fn contract_keep_top(&self, chain: &[usize]) -> Result<Heap> {
        self.validate_balanced_chain(chain)?;
        self.delete(&chain[..chain.len() - 1])
    }

    /// Graphviz rendering: vertices `s_i^{(k)}` placed at (generator, level),
    /// cover relations as edges pointing upwards.
    pub fn to_dot(&self) -> String {
        let levels = self.levels();
        let mut out = String::from("digraph heap {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for v in 0..self.len() {
            let _ = writeln!(
                out,
                "  v{} [label=\"s_{}^{{({})}}\", pos=\"{},{}!\"];",
                v + 1,
                self.labels[v] + 1,
                self.occurrence(v),
                self.labels[v],
                levels[v]
            );
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  v{} -> v{};", a + 1, b + 1);
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{word1, Family};

    fn graph(f: Family) -> Arc<CoxeterGraph> {
        Arc::new(f.build().unwrap())
    }

    fn c7_heap() -> Heap {
        let g = graph(Family::CAffineOdd(7));
        Heap::of_word(&g, &word1(&[1, 3, 5, 2, 4, 6, 1, 3, 5, 7])).unwrap()
    }

    #[test]
    fn c7_heap_order() {
        let h = c7_heap();
        assert_eq!(h.len(), 10);
        assert!(h.less(0, 3));
        assert!(h.less(0, 6) && h.less(3, 6));
        assert!(!h.comparable(0, 1));
        assert!(h.is_fc());
    }

    #[test]
    fn empty_and_commuting_words() {
        let g = graph(Family::ALine(3));
        let e = Heap::of_word(&g, &[]).unwrap();
        assert!(e.is_empty() && e.is_trivial() && e.is_fc());
        let h = Heap::of_word(&g, &word1(&[1, 3])).unwrap();
        assert!(h.is_trivial());
        assert_eq!(h.left_descents().unwrap(), vec![0, 2]);
        assert!(Heap::of_word(&g, &[3]).is_err());
    }

    #[test]
    fn superposition_examples() {
        let g = graph(Family::ALine(3));
        let a = Heap::of_word(&g, &[0]).unwrap();
        let b = Heap::of_word(&g, &[1]).unwrap();
        let c = Heap::of_word(&g, &[2]).unwrap();
        let ab = a.superpose(&b).unwrap();
        assert!(ab.less(0, 1));
        assert!(a.superpose(&c).unwrap().is_trivial());
        let e = Heap::empty(&g);
        assert!(ab.superpose(&e).unwrap().is_isomorphic(&ab));
        let other = graph(Family::ALine(4));
        assert_eq!(
            a.superpose(&Heap::empty(&other)).unwrap_err(),
            Error::GraphMismatch
        );
    }

    #[test]
    fn fc_examples() {
        let a2 = graph(Family::ALine(2));
        assert!(!Heap::of_word(&a2, &[0, 1, 0]).unwrap().is_fc());
        let b2 = graph(Family::BLine(2));
        assert!(Heap::of_word(&b2, &[0, 1, 0]).unwrap().is_fc());
        assert!(!Heap::of_word(&b2, &[0, 1, 0, 1]).unwrap().is_fc());
        assert!(!Heap::of_word(&b2, &[0, 0]).unwrap().is_fc());
        let a3 = graph(Family::ALine(3));
        // s1 s3 s1: the two s1's are a cover since s3 commutes with s1.
        assert!(!Heap::of_word(&a3, &[0, 2, 0]).unwrap().is_fc());
    }

    #[test]
    fn convexity() {
        let h = c7_heap();
        assert!(!h.is_convex(&h.vertex_set(&[0, 6]).unwrap()));
        assert!(h.is_convex(&h.vertex_set(&[0, 3, 6]).unwrap()));
        assert!(h.is_convex(&h.vertex_set(&[0, 1, 2]).unwrap()));
        assert!(h.is_convex(&h.full_set()));
    }

    #[test]
    fn descents_and_status() {
        let b4 = graph(Family::BLine(4));
        let h = Heap::of_word(&b4, &word1(&[2, 1])).unwrap();
        assert_eq!(h.left_descents().unwrap(), vec![1]);
        assert_eq!(h.right_descents().unwrap(), vec![0]);

        let w = Heap::of_word(&b4, &word1(&[2, 1, 2, 3])).unwrap();
        match w.left_multiply_status(0).unwrap() {
            MultiplyStatus::WeaklyComplex(wc) => {
                assert_eq!(wc.t, 1);
                assert_eq!(wc.chain, vec![0, 1, 2]);
                assert_eq!(wc.extended_chain, vec![0, 1, 2, 3]);
            }
            other => panic!("expected weakly complex, got {other:?}"),
        }
        let a3 = graph(Family::ALine(3));
        let s1 = Heap::of_word(&a3, &[0]).unwrap();
        assert!(matches!(s1.left_multiply_status(0).unwrap(), MultiplyStatus::Descent));
        assert!(matches!(s1.left_multiply_status(2).unwrap(), MultiplyStatus::StillFc(_)));
        match w.right_multiply_status(0).unwrap() {
            MultiplyStatus::WeaklyComplex(wc) => assert_eq!(wc.extended_chain, vec![0, 1, 2, 4]),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(w.right_multiply_status(2).unwrap(), MultiplyStatus::Descent));
    }

    #[test]
    fn right_weakly_complex_chain_sits_on_top() {
        let b4 = graph(Family::BLine(4));
        let w = Heap::of_word(&b4, &word1(&[3, 1, 2, 1])).unwrap();
        match w.right_multiply_status(1).unwrap() {
            MultiplyStatus::WeaklyComplex(wc) => {
                assert_eq!(wc.t, 0);
                assert_eq!(wc.chain, vec![1, 2, 3]);
                assert_eq!(wc.extended_chain, vec![1, 2, 3, 4]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn c7_dismantling() {
        let h = c7_heap();
        assert!(h.is_dismantlable());
        // Peel s_{i3}, s_{i2}, s_{i1}, s_{i6}, s_{i5}, s_{i4} in that order.
        assert!(h.is_dismantling_sequence(&[2, 1, 0, 5, 4, 3]));
        assert!(!h.is_dismantling_sequence(&[0, 1, 2]));
        let seq = h.dismantling_sequence().unwrap();
        let removed: Vec<usize> = seq.iter().map(|r| r.vertex).collect();
        assert!(h.is_dismantling_sequence(&removed));
    }

    #[test]
    fn trivial_heaps_dismantle_vacuously() {
        let g = graph(Family::ALine(5));
        let h = Heap::of_word(&g, &word1(&[1, 3, 5])).unwrap();
        assert_eq!(h.dismantling_sequence(), Some(vec![]));
    }

    #[test]
    fn property_p2() {
        assert!(!c7_heap().has_property_p2());
        let g = graph(Family::ALine(5));
        assert!(Heap::of_word(&g, &word1(&[1, 3, 5])).unwrap().has_property_p2());
        let b2 = graph(Family::BLine(2));
        assert!(!Heap::of_word(&b2, &[0, 1, 0]).unwrap().has_property_p2());
    }

    #[test]
    fn contraction() {
        let b2 = graph(Family::BLine(2));
        let h = Heap::of_word(&b2, &[0, 1, 0]).unwrap();
        let c = h.contract(&[0, 1, 2]).unwrap();
        assert_eq!(c.word(), &[0]);
        assert!(c.is_isomorphic(&h.contract_keep_top(&[0, 1, 2]).unwrap()));
        assert!(h.contract(&[1]).unwrap().is_isomorphic(&h));
        assert!(matches!(h.contract(&[0, 1]), Err(Error::InvalidChain(_))));
        assert!(matches!(h.contract(&[0, 2]), Err(Error::InvalidChain(_))));
    }

    #[test]
    fn canonical_word_is_lex_least() {
        let g = graph(Family::ALine(4));
        let h = Heap::of_word(&g, &word1(&[3, 1, 4, 2])).unwrap();
        assert_eq!(h.canonical_word(), word1(&[1, 3, 2, 4]));
        let h2 = Heap::of_word(&g, &word1(&[1, 3, 4, 2])).unwrap();
        assert!(h.is_isomorphic(&h2));
    }

    #[test]
    fn dot_output() {
        let b2 = graph(Family::BLine(2));
        let dot = Heap::of_word(&b2, &[0, 1, 0]).unwrap().to_dot();
        assert!(dot.contains("v3 [label=\"s_1^{(2)}\", pos=\"0,2!\"];"));
        assert!(dot.contains("v1 -> v2;"));
        assert!(!dot.contains("v1 -> v3;"));
    }
}
