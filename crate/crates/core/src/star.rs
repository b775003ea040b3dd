//! Fully commutative elements, rank-two coset decompositions, star
//! operations and the enumeration of W_c by length.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::coxeter::{format_word, CoxeterGraph};
use crate::error::{Error, Result};
use crate::heap::{Heap, MultiplyStatus, Side};

/// An element of W_c, identified by the canonical word of its heap. The
/// stored heap is the heap of that canonical word.
#[derive(Clone, Debug)]
pub struct FcElement {
    word: Vec<usize>,
    heap: Arc<Heap>,
}

impl FcElement {
    pub fn identity(graph: &Arc<CoxeterGraph>) -> Self {
        FcElement {
            word: Vec::new(),
            heap: Arc::new(Heap::empty(graph)),
        }
    }

    /// The element with reduced word `word`; fails unless the word's heap is FC.
    pub fn new(graph: &Arc<CoxeterGraph>, word: &[usize]) -> Result<Self> {
        Self::from_heap(&Heap::of_word(graph, word)?)
    }

    pub fn from_heap(heap: &Heap) -> Result<Self> {
        if !heap.is_fc() {
            return Err(Error::NotFullyCommutative {
                word: format_word(heap.word()),
            });
        }
        Ok(Self::from_fc_heap(heap))
    }

    /// Skips the full-commutativity check.
    pub(crate) fn from_fc_heap(heap: &Heap) -> Self {
        let word = heap.canonical_word();
        let heap = if word.as_slice() == heap.word() {
            heap.clone()
        } else {
            Heap::of_word_unchecked(heap.graph(), &word)
        };
        FcElement {
            word,
            heap: Arc::new(heap),
        }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn heap(&self) -> &Heap {
        &self.heap
    }

    pub fn graph(&self) -> &Arc<CoxeterGraph> {
        self.heap.graph()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn descents(&self, side: Side) -> Vec<usize> {
        self.heap.extremal_labels(side)
    }

    pub fn has_descent(&self, side: Side, s: usize) -> bool {
        self.heap.has_descent(side, s)
    }

    /// `s·w` or `w·s` when it is FC and longer than `w`.
    pub fn extend(&self, side: Side, s: usize) -> Result<Option<FcElement>> {
        Ok(match self.heap.multiply_status(side, s)? {
            MultiplyStatus::StillFc(ext) => Some(FcElement::from_fc_heap(&ext)),
            _ => None,
        })
    }

    /// Coset decomposition with respect to I = {s,t}. Left: `w = w_I · w^I`;
    /// right: `w = ^I w · _I w`. Returns the W_I factor as an alternating
    /// word in reading order, and the remaining element.
    pub fn coset_decompose(&self, side: Side, s: usize, t: usize) -> Result<(Vec<usize>, FcElement)> {
        let graph = self.graph();
        graph.check_word(&[s, t])?;
        if !graph.is_adjacent(s, t) {
            return Err(Error::NotAdjacent { s, t });
        }
        let mut keep = self.heap.full_set();
        let mut stripped = Vec::new();
        loop {
            let next = keep.ones().find(|&v| {
                let l = self.heap.label(v);
                let outer = match side {
                    Side::Left => self.heap.below(v),
                    Side::Right => self.heap.above(v),
                };
                (l == s || l == t) && outer.is_disjoint(&keep)
            });
            match next {
                Some(v) => {
                    stripped.push(self.heap.label(v));
                    keep.set(v, false);
                }
                None => break,
            }
        }
        if side == Side::Right {
            stripped.reverse();
        }
        let rest = FcElement::from_fc_heap(&self.heap.subheap(&keep)?);
        Ok((stripped, rest))
    }

    pub fn coset_decompose_left(&self, s: usize, t: usize) -> Result<(Vec<usize>, FcElement)> {
        self.coset_decompose(Side::Left, s, t)
    }

    pub fn coset_decompose_right(&self, s: usize, t: usize) -> Result<(Vec<usize>, FcElement)> {
        self.coset_decompose(Side::Right, s, t)
    }

    /// `*w` (left) or `w^*` (right): the longer neighbour in the {s,t}-string,
    /// if defined and fully commutative.
    pub fn star_up(&self, side: Side, s: usize, t: usize) -> Result<Option<FcElement>> {
        let (w_i, _) = self.coset_decompose(side, s, t)?;
        let k = w_i.len();
        let m = self.graph().m(s, t).finite();
        if k == 0 || m.is_some_and(|m| k + 1 > m as usize - 1) {
            return Ok(None);
        }
        let outer = match side {
            Side::Left => w_i[0],
            Side::Right => w_i[k - 1],
        };
        let a = if outer == s { t } else { s };
        self.extend(side, a)
    }

    /// `_*w` (left) or `w_*` (right): the shorter neighbour in the string.
    pub fn star_down(&self, side: Side, s: usize, t: usize) -> Result<Option<FcElement>> {
        let (w_i, _) = self.coset_decompose(side, s, t)?;
        if w_i.len() < 2 {
            return Ok(None);
        }
        let outer = match side {
            Side::Left => w_i[0],
            Side::Right => w_i[w_i.len() - 1],
        };
        let v = match side {
            Side::Left => self.heap.minimal_vertices(),
            Side::Right => self.heap.maximal_vertices(),
        }
        .into_iter()
        .find(|&v| self.heap.label(v) == outer)
        .expect("the outer letter of w_I labels an extremal vertex");
        Ok(Some(FcElement::from_fc_heap(&self.heap.delete(&[v])?)))
    }

    pub fn star_up_left(&self, s: usize, t: usize) -> Result<Option<FcElement>> {
        self.star_up(Side::Left, s, t)
    }

    pub fn star_down_left(&self, s: usize, t: usize) -> Result<Option<FcElement>> {
        self.star_down(Side::Left, s, t)
    }

    pub fn star_up_right(&self, s: usize, t: usize) -> Result<Option<FcElement>> {
        self.star_up(Side::Right, s, t)
    }

    pub fn star_down_right(&self, s: usize, t: usize) -> Result<Option<FcElement>> {
        self.star_down(Side::Right, s, t)
    }
}

impl PartialEq for FcElement {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}

impl Eq for FcElement {}

impl Hash for FcElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

/// Length first, then canonical word.
impl Ord for FcElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for FcElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.word))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarStep {
    pub side: Side,
    pub pair: (usize, usize),
    pub result: FcElement,
}

/// Shortest sequence of length-decreasing star operations from `w` to a
/// product of commuting generators, or `None` when there is none.
pub fn star_reduce_to_commuting(w: &FcElement) -> Option<Vec<StarStep>> {
    let edges = w.graph().edges();
    let mut parent: HashMap<FcElement, Option<(FcElement, StarStep)>> = HashMap::new();
    parent.insert(w.clone(), None);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        if x.heap().is_trivial() {
            let mut steps = Vec::new();
            let mut cur = x;
            while let Some(Some((prev, step))) = parent.get(&cur) {
                steps.push(step.clone());
                cur = prev.clone();
            }
            steps.reverse();
            return Some(steps);
        }
        for side in [Side::Left, Side::Right] {
            for &(s, t) in &edges {
                let Some(y) = x.star_down(side, s, t).expect("adjacent pair") else {
                    continue;
                };
                if parent.contains_key(&y) {
                    continue;
                }
                let step = StarStep {
                    side,
                    pair: (s, t),
                    result: y.clone(),
                };
                parent.insert(y.clone(), Some((x.clone(), step)));
                queue.push_back(y);
            }
        }
    }
    None
}

/// FC elements grouped by length, `levels[k]` sorted. Stops early at the
/// first empty level.
pub fn enumerate_fc_levels(graph: &Arc<CoxeterGraph>, max_len: usize) -> Vec<Vec<FcElement>> {
    let mut levels = vec![vec![FcElement::identity(graph)]];
    while levels.len() <= max_len {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for x in levels.last().expect("nonempty") {
            for s in graph.generators() {
                if let Some(y) = x.extend(Side::Left, s).expect("valid generator") {
                    if seen.insert(y.word.clone()) {
                        next.push(y);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        levels.push(next);
    }
    levels
}

/// Every FC element of length ≤ `max_len`, identity first, in (length, word) order.
pub fn enumerate_fc(graph: &Arc<CoxeterGraph>, max_len: usize) -> Vec<FcElement> {
    enumerate_fc_levels(graph, max_len).into_iter().flatten().collect()
}
