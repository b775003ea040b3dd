//! Brute-force reference implementations that share no code paths with the
//! heap machinery: word rewriting for the Coxeter word problem, the regular
//! representation of dihedral Hecke algebras, and labelled-poset isomorphism
//! by permutation search.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use fc_heaps::coxeter::{Bond, CoxeterGraph};
use fc_heaps::LaurentPoly;

/// All words obtained from `word` by commutation and braid moves.
pub fn braid_closure(graph: &CoxeterGraph, word: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([word.to_vec()]);
    seen.insert(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            let (s, t) = (w[i], w[i + 1]);
            if s == t {
                continue;
            }
            let Bond::Finite(m) = graph.m(s, t) else {
                continue;
            };
            let m = m as usize;
            if i + m > w.len() {
                continue;
            }
            let alternating = (0..m).all(|k| w[i + k] == if k % 2 == 0 { s } else { t });
            if !alternating {
                continue;
            }
            let mut next = w.clone();
            for k in 0..m {
                next[i + k] = if k % 2 == 0 { t } else { s };
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

fn only_commutations(graph: &CoxeterGraph, word: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([word.to_vec()]);
    seen.insert(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            if w[i] != w[i + 1] && graph.m(w[i], w[i + 1]) == Bond::Finite(2) {
                let mut next = w.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Group elements of a finite Coxeter group, each given as the full set of
/// its reduced words, found level by level. A word is reduced exactly when
/// no word reachable by braid moves contains a repeated adjacent letter.
pub fn reduced_word_classes(graph: &CoxeterGraph, max_len: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let mut classes = vec![BTreeSet::from([Vec::new()])];
    let mut frontier = vec![Vec::<usize>::new()];
    for _ in 0..max_len {
        let mut reps = HashSet::new();
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..graph.rank() {
                let mut ws = w.clone();
                ws.push(s);
                let closure = braid_closure(graph, &ws);
                if closure.iter().any(|x| x.windows(2).any(|p| p[0] == p[1])) {
                    continue;
                }
                let rep = closure.iter().next().unwrap().clone();
                if reps.insert(rep.clone()) {
                    next.push(rep);
                    classes.push(closure);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    classes
}

/// (|W|, number of fully commutative elements) by brute force.
pub fn fc_count_by_rewriting(graph: &CoxeterGraph, max_len: usize) -> (usize, usize) {
    let classes = reduced_word_classes(graph, max_len);
    let fc = classes
        .iter()
        .filter(|c| {
            let w = c.iter().next().unwrap();
            only_commutations(graph, w).len() == c.len()
        })
        .count();
    (classes.len(), fc)
}

/// An element of the dihedral group of order 2m: its length and first letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dihedral {
    pub len: usize,
    pub first: usize,
}

pub struct DihedralHecke {
    pub m: usize,
}

impl DihedralHecke {
    pub fn elements(&self) -> Vec<Dihedral> {
        let mut out = vec![Dihedral { len: 0, first: 0 }];
        for len in 1..self.m {
            out.push(Dihedral { len, first: 0 });
            out.push(Dihedral { len, first: 1 });
        }
        out.push(self.longest());
        out
    }

    pub fn longest(&self) -> Dihedral {
        Dihedral { len: self.m, first: 0 }
    }

    pub fn word(&self, x: Dihedral) -> Vec<usize> {
        (0..x.len).map(|i| (x.first + i) % 2).collect()
    }

    fn canon(&self, len: usize, first: usize) -> Dihedral {
        if len == 0 || len == self.m {
            Dihedral { len, first: 0 }
        } else {
            Dihedral { len, first }
        }
    }

    /// (s·x, whether s is a left descent of x)
    fn left_mult(&self, s: usize, x: Dihedral) -> (Dihedral, bool) {
        if x.len == self.m {
            (self.canon(self.m - 1, 1 - s), true)
        } else if x.len > 0 && x.first == s {
            (self.canon(x.len - 1, 1 - s), true)
        } else {
            (self.canon(x.len + 1, s), false)
        }
    }

    /// T_s · h in the basis {T_x}, with q = v².
    pub fn t_s_times(&self, s: usize, h: &BTreeMap<Dihedral, LaurentPoly>) -> BTreeMap<Dihedral, LaurentPoly> {
        let q = LaurentPoly::monomial(1, 2);
        let q_minus_1 = q.clone() - LaurentPoly::one();
        let mut out: BTreeMap<Dihedral, LaurentPoly> = BTreeMap::new();
        let mut add = |k: Dihedral, c: LaurentPoly| {
            let e = out.entry(k).or_default();
            *e += c;
        };
        for (&x, c) in h {
            let (sx, descent) = self.left_mult(s, x);
            if descent {
                add(x, &q_minus_1 * c);
                add(sx, &q * c);
            } else {
                add(sx, c.clone());
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// T_x · T_y
    pub fn product(&self, x: Dihedral, y: Dihedral) -> BTreeMap<Dihedral, LaurentPoly> {
        let mut h = BTreeMap::from([(y, LaurentPoly::one())]);
        for &s in self.word(x).iter().rev() {
            h = self.t_s_times(s, &h);
        }
        h
    }

    /// Image of t̃_x t̃_y in TL: rescale to the T-basis, kill Σ T_w by
    /// rewriting T_{w0} = −Σ_{u ≠ w0} T_u, and rescale back to t̃.
    pub fn tl_product(&self, x: Dihedral, y: Dihedral) -> BTreeMap<Vec<usize>, LaurentPoly> {
        let scale = -((x.len + y.len) as i32);
        let mut h = self.product(x, y);
        if let Some(c) = h.remove(&self.longest()) {
            for u in self.elements() {
                if u != self.longest() {
                    let e = h.entry(u).or_default();
                    *e -= &c;
                }
            }
        }
        let mut out = BTreeMap::new();
        for (u, c) in h {
            let c = c.shift(scale + u.len as i32);
            if !c.is_zero() {
                out.insert(self.word(u), c);
            }
        }
        out
    }
}

/// Labelled-poset isomorphism by trying every label-preserving bijection.
pub fn posets_isomorphic(
    labels_a: &[usize],
    less_a: &dyn Fn(usize, usize) -> bool,
    labels_b: &[usize],
    less_b: &dyn Fn(usize, usize) -> bool,
) -> bool {
    let n = labels_a.len();
    if n != labels_b.len() {
        return false;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        i: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        la: &[usize],
        lb: &[usize],
        less_a: &dyn Fn(usize, usize) -> bool,
        less_b: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let n = la.len();
        if i == n {
            return true;
        }
        for j in 0..n {
            if used[j] || lb[j] != la[i] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                less_a(k, i) == less_b(image[k], j) && less_a(i, k) == less_b(j, image[k])
            });
            if !consistent {
                continue;
            }
            image[i] = j;
            used[j] = true;
            if extend(i + 1, image, used, la, lb, less_a, less_b) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    extend(0, &mut image, &mut used, labels_a, labels_b, less_a, less_b)
}

/// Odd cycle search by brute force over vertex sequences (small graphs only).
pub fn has_odd_cycle(graph: &CoxeterGraph) -> bool {
    let n = graph.rank();
    // A closed walk of odd length exists iff an odd cycle exists; walks of
    // length ≤ 2n+1 suffice.
    let mut reach = vec![vec![[false; 2]; n]; n];
    for s in 0..n {
        reach[s][s][0] = true;
    }
    for _ in 0..=2 * n + 1 {
        let mut next = reach.clone();
        for a in 0..n {
            for b in 0..n {
                for parity in 0..2 {
                    if reach[a][b][parity] {
                        for c in 0..n {
                            if graph.is_adjacent(b, c) {
                                next[a][c][1 - parity] = true;
                            }
                        }
                    }
                }
            }
        }
        reach = next;
    }
    (0..n).any(|s| reach[s][s][1])
}
