//! The two-term chain complex of a heap: edges, the boundary map, and the
//! boundary-vertex analysis built on its image.

use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;

use crate::coxeter::format_word;
use crate::error::{Error, Result};
use crate::heap::Heap;
use crate::linalg::{Q, RowSpace};

/// A pair of consecutive vertices in one label chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// Least boundary vertex with no effective vertex in its class.
    Violation { vertex: usize },
}

#[derive(Clone, Debug)]
pub struct BoundaryComplex {
    heap: Heap,
    edges: Vec<Edge>,
    columns: Vec<Vec<usize>>,
    image: RowSpace,
}

impl BoundaryComplex {
    pub fn new(heap: &Heap) -> Self {
        let graph = heap.graph();
        let mut edges = Vec::new();
        let mut columns = Vec::new();
        for s in graph.generators() {
            for pair in heap.label_chain(s).windows(2) {
                let (lo, hi) = (pair[0], pair[1]);
                let column: Vec<usize> = heap
                    .open_interval(lo, hi)
                    .ones()
                    .filter(|&w| graph.is_adjacent(heap.label(w), s))
                    .collect();
                edges.push(Edge { lo, hi });
                columns.push(column);
            }
        }
        let n = heap.len();
        let image = RowSpace::from_vectors(
            n,
            columns.iter().map(|col| {
                let mut v = vec![Q::zero(); n];
                for &w in col {
                    v[w] = Q::one();
                }
                v
            }),
        );
        BoundaryComplex {
            heap: heap.clone(),
            edges,
            columns,
            image,
        }
    }

    pub fn heap(&self) -> &Heap {
        &self.heap
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Support of ∂(e) for the edge at `index`; every coefficient is 1.
    pub fn column(&self, index: usize) -> &[usize] {
        &self.columns[index]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    /// Dense matrix of ∂, rows indexed by vertices and columns by edges.
    pub fn matrix(&self) -> Vec<Vec<Q>> {
        let mut m = vec![vec![Q::zero(); self.edges.len()]; self.heap.len()];
        for (e, col) in self.columns.iter().enumerate() {
            for &v in col {
                m[v][e] = Q::one();
            }
        }
        m
    }

    pub fn image_dim(&self) -> usize {
        self.image.rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.edges.len() - self.image.rank()
    }

    pub fn is_acyclic(&self) -> bool {
        self.kernel_dim() == 0
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.image.contains(&self.image.unit(v))
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.heap.len())
            .filter(|&v| self.is_boundary_vertex(v))
            .collect()
    }

    /// Edge coefficients x with ∂(Σ xₑ e) = v, when v is a boundary vertex.
    pub fn preimage(&self, v: usize) -> Option<Vec<Q>> {
        self.image.solve(&self.image.unit(v))
    }

    pub fn effective_boundary_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .columns
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Classes of the closure of {v₁, v₂} with ∂(e) = v₁ + v₂, each sorted,
    /// ordered by least member.
    pub fn linear_equivalence_classes(&self) -> Vec<Vec<usize>> {
        let n = self.heap.len();
        let mut uf = UnionFind::<usize>::new(n);
        for col in &self.columns {
            if let [a, b] = col[..] {
                uf.union(a, b);
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            let root = uf.find(v);
            if slot[root] == usize::MAX {
                slot[root] = classes.len();
                classes.push(Vec::new());
            }
            classes[slot[root]].push(v);
        }
        classes
    }

    /// Every boundary vertex is linearly equivalent to an effective one.
    pub fn verify_main_theorem(&self) -> Result<Verdict> {
        if !self.heap.is_fc() {
            return Err(Error::NotFullyCommutative {
                word: format_word(self.heap.word()),
            });
        }
        Ok(self.main_theorem_verdict())
    }

    /// Same check without the full-commutativity precondition.
    pub fn main_theorem_verdict(&self) -> Verdict {
        let boundary = self.boundary_vertices();
        if boundary.is_empty() {
            return Verdict::Holds;
        }
        let effective = self.effective_boundary_vertices();
        let classes = self.linear_equivalence_classes();
        let mut good = vec![false; self.heap.len()];
        for class in &classes {
            if class.iter().any(|v| effective.binary_search(v).is_ok()) {
                for &v in class {
                    good[v] = true;
                }
            }
        }
        match boundary.into_iter().find(|&v| !good[v]) {
            Some(vertex) => Verdict::Violation { vertex },
            None => Verdict::Holds,
        }
    }
}

pub fn kernel_dim(heap: &Heap) -> usize {
    BoundaryComplex::new(heap).kernel_dim()
}

pub fn is_acyclic(heap: &Heap) -> bool {
    kernel_dim(heap) == 0
}

/// The first vertex v (in vertex order) such that E(v) has a nonzero kernel,
/// or `None` when every single-vertex deletion is acyclic.
pub fn non_acyclic_deletion(heap: &Heap) -> Option<usize> {
    (0..heap.len()).find(|&v| {
        let sub = heap.delete(&[v]).expect("vertex in range");
        !is_acyclic(&sub)
    })
}

pub fn is_strongly_acyclic(heap: &Heap) -> bool {
    is_acyclic(heap) && non_acyclic_deletion(heap).is_none()
}
