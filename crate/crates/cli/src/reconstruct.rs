//! Search for a six-vertex bipartite Coxeter graph on which the word
//! s1s3s5s2s4s1s3s2s4s6s1s3s5 is fully commutative and dismantlable while its
//! tenth vertex (labelled s6) is a boundary vertex with no effective vertex in
//! its linear equivalence class.
//!
//! The heap, its boundary map and dismantlability depend only on which pairs
//! of generators are adjacent, so the search runs over all 2^15 adjacency
//! sets and then gives each edge the least bond that keeps the word FC.

use std::fmt::Write as _;
use std::sync::Arc;

use fc_heaps::{Bond, BoundaryComplex, CoxeterGraph, Heap};
use fixedbitset::FixedBitSet;
use serde::Serialize;

pub const RANK: usize = 6;
/// 0-based letters of s1s3s5s2s4s1s3s2s4s6s1s3s5.
pub const WORD: [usize; 13] = [0, 2, 4, 1, 3, 0, 2, 1, 3, 5, 0, 2, 4];
/// The tenth vertex, 0-based.
pub const TARGET: usize = 9;

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    /// 0-based generator pairs with their bonds.
    pub bonds: Vec<(usize, usize, u32)>,
    pub connected: bool,
    /// Boundary vertices (0-based) whose class has no effective vertex.
    pub unsupported: Vec<usize>,
    pub boundary: Vec<usize>,
    pub effective: Vec<usize>,
}

impl Candidate {
    pub fn graph(&self) -> CoxeterGraph {
        let bonds: Vec<(usize, usize, Bond)> = self.bonds.iter().map(|&(s, t, m)| (s, t, Bond::Finite(m))).collect();
        CoxeterGraph::from_bonds(RANK, &bonds).expect("valid bonds")
    }

    fn describe(&self) -> String {
        let bonds: Vec<String> = self.bonds.iter().map(|(s, t, m)| format!("s{}-s{}:{m}", s + 1, t + 1)).collect();
        let vs = |xs: &[usize]| xs.iter().map(|v| format!("v{}", v + 1)).collect::<Vec<_>>().join(",");
        format!(
            "{} connected={} boundary=[{}] effective=[{}] unsupported=[{}]",
            bonds.join(" "),
            self.connected,
            vs(&self.boundary),
            vs(&self.effective),
            vs(&self.unsupported)
        )
    }

    /// Smaller is better: exactly the target unsupported, connected, few
    /// edges, small bonds.
    fn rank_key(&self) -> (bool, bool, usize, u32, Vec<(usize, usize, u32)>) {
        (
            self.unsupported != [TARGET],
            !self.connected,
            self.bonds.len(),
            self.bonds.iter().map(|b| b.2).max().unwrap_or(0),
            self.bonds.clone(),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub adjacency_sets: usize,
    pub bipartite: usize,
    pub fully_commutative: usize,
    pub dismantlable: usize,
    pub candidates: Vec<Candidate>,
}

impl SearchOutcome {
    pub fn best(&self) -> Option<&Candidate> {
        self.candidates.first()
    }

    pub fn log(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# six-vertex reconstruction search");
        let _ = writeln!(out, "word: s1s3s5s2s4s1s3s2s4s6s1s3s5; target vertex v{} (label s6)", TARGET + 1);
        let _ = writeln!(out, "adjacency sets examined: {}", self.adjacency_sets);
        let _ = writeln!(out, "bipartite: {}", self.bipartite);
        let _ = writeln!(out, "FC after least bonds: {}", self.fully_commutative);
        let _ = writeln!(out, "FC and dismantlable: {}", self.dismantlable);
        let _ = writeln!(out, "target boundary and unsupported: {}", self.candidates.len());
        let exact = self.candidates.iter().filter(|c| c.unsupported == [TARGET]).count();
        let _ = writeln!(out, "of which only the target is unsupported: {exact}");
        match self.best() {
            Some(best) => {
                let _ = writeln!(out, "chosen: {}", best.describe());
            }
            None => out.push_str("chosen: none\n"),
        }
        out.push_str("# candidates, best first\n");
        for c in &self.candidates {
            let _ = writeln!(out, "{}", c.describe());
        }
        out
    }
}

fn is_connected(rank: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = FixedBitSet::with_capacity(rank);
    let mut stack = vec![0];
    seen.insert(0);
    while let Some(s) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == s { b } else if b == s { a } else { continue };
            if !seen.put(other) {
                stack.push(other);
            }
        }
    }
    seen.count_ones(..) == rank
}

/// Length of the longest convex chain of the heap alternating in s and t.
fn longest_alternating_convex_chain(heap: &Heap, s: usize, t: usize) -> usize {
    // Vertices labelled s or t are pairwise comparable, so listing them in
    // word order lists the chain.
    let chain: Vec<usize> = (0..heap.len()).filter(|&v| heap.label(v) == s || heap.label(v) == t).collect();
    let mut best = 0;
    for i in 0..chain.len() {
        for j in i..chain.len() {
            if j > i && heap.label(chain[j]) == heap.label(chain[j - 1]) {
                break;
            }
            let mut set = FixedBitSet::with_capacity(heap.len());
            for &v in &chain[i..=j] {
                set.insert(v);
            }
            if heap.is_convex(&set) {
                best = best.max(j - i + 1);
            }
        }
    }
    best
}

fn evaluate(mask: u32, pairs: &[(usize, usize)], out: &mut SearchOutcome) {
    let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
    let plain: Vec<(usize, usize, Bond)> = edges.iter().map(|&(s, t)| (s, t, Bond::Finite(3))).collect();
    let adjacency = Arc::new(CoxeterGraph::from_bonds(RANK, &plain).expect("valid bonds"));
    if !adjacency.is_bipartite() {
        return;
    }
    out.bipartite += 1;
    let heap = Heap::of_word(&adjacency, &WORD).expect("letters in range");
    let bonds: Vec<(usize, usize, u32)> = edges
        .iter()
        .map(|&(s, t)| (s, t, (longest_alternating_convex_chain(&heap, s, t) as u32 + 1).max(3)))
        .collect();
    let candidate = Candidate {
        bonds,
        connected: is_connected(RANK, &edges),
        unsupported: Vec::new(),
        boundary: Vec::new(),
        effective: Vec::new(),
    };
    let graph = Arc::new(candidate.graph());
    let heap = Heap::of_word(&graph, &WORD).expect("letters in range");
    if !heap.is_fc() {
        return;
    }
    out.fully_commutative += 1;
    if !heap.is_dismantlable() {
        return;
    }
    out.dismantlable += 1;
    let complex = BoundaryComplex::new(&heap);
    let effective = complex.effective_boundary_vertices();
    let classes = complex.linear_equivalence_classes();
    let boundary = complex.boundary_vertices();
    let unsupported: Vec<usize> = boundary
        .iter()
        .copied()
        .filter(|&v| {
            let class = classes.iter().find(|c| c.contains(&v)).expect("every vertex has a class");
            !class.iter().any(|u| effective.contains(u))
        })
        .collect();
    if unsupported.contains(&TARGET) {
        out.candidates.push(Candidate {
            unsupported,
            boundary,
            effective,
            ..candidate
        });
    }
}

pub fn search() -> SearchOutcome {
    let pairs: Vec<(usize, usize)> = (0..RANK).flat_map(|s| (s + 1..RANK).map(move |t| (s, t))).collect();
    let mut out = SearchOutcome {
        adjacency_sets: 1 << pairs.len(),
        bipartite: 0,
        fully_commutative: 0,
        dismantlable: 0,
        candidates: Vec::new(),
    };
    for mask in 0..1u32 << pairs.len() {
        evaluate(mask, &pairs, &mut out);
    }
    out.candidates.sort_by_key(Candidate::rank_key);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fc_heaps::coxeter::word1;

    #[test]
    fn word_constant_matches_its_name() {
        assert_eq!(WORD.to_vec(), word1(&[1, 3, 5, 2, 4, 1, 3, 2, 4, 6, 1, 3, 5]));
        assert_eq!(WORD[TARGET], 5);
    }

    #[test]
    fn alternating_chain_in_a_dihedral_heap() {
        let g = Arc::new(CoxeterGraph::from_bonds(2, &[(0, 1, Bond::Finite(3))]).unwrap());
        let h = Heap::of_word(&g, &[0, 1, 0, 1]).unwrap();
        assert_eq!(longest_alternating_convex_chain(&h, 0, 1), 4);
        let h = Heap::of_word(&g, &[0, 0]).unwrap();
        assert_eq!(longest_alternating_convex_chain(&h, 0, 1), 1);
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(3, &[(0, 1), (1, 2)]));
        assert!(!is_connected(3, &[(0, 1)]));
    }
}
