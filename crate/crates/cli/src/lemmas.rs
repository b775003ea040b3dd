//! Battery of structural invariants of heaps, boundary maps and the
//! Temperley–Lieb lattice, run over every FC element up to a length bound and
//! over seeded random words.

use std::collections::BTreeMap;
use std::sync::Arc;

use fc_heaps::boundary::{is_acyclic, kernel_dim, non_acyclic_deletion};
use fc_heaps::tl::h_function;
use fc_heaps::{
    format_word, BoundaryComplex, CoxeterGraph, FcElement, Heap, LaurentPoly, MultiplyStatus, Side, TlAlgebra,
};
use fixedbitset::FixedBitSet;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

/// (id, statement) for every invariant in the battery.
pub const CHECKS: &[(&str, &str)] = &[
    ("fc-dismantlable-acyclic", "FC heaps are dismantlable and acyclic"),
    ("strongly-acyclic-has-p2", "strongly acyclic FC heaps have property P2"),
    ("simply-laced-p2-strongly-acyclic", "on simply laced graphs, FC heaps with P2 are strongly acyclic"),
    ("convex-edges", "edges of a convex subheap are edges of the heap"),
    ("convex-intervals", "open intervals of a convex subheap agree with the heap"),
    ("convex-columns", "boundary columns of a convex subheap agree with the heap"),
    ("convex-transport", "linear equivalence and effectiveness pass from a convex subheap to the heap"),
    ("convex-boundary-inclusion", "boundary vertices of a convex subheap are boundary vertices of the heap"),
    ("equivalence-boundary-status", "linearly equivalent vertices are both boundary or both not"),
    ("bipartite-opposite-columns", "bipartite simply laced: columns lie in the class opposite the edge"),
    ("bipartite-boundary-deletion-cycle", "bipartite simply laced: deleting a boundary vertex of an acyclic heap leaves a cycle"),
    ("bipartite-fc-no-boundary", "bipartite simply laced: FC heaps have no boundary vertices"),
    ("deletion-kernel-bound", "deleting one vertex changes dim ker by at most 1"),
    ("contraction-kernel", "contracting a balanced convex chain of length 2 lowers dim ker by 1; x<y<z with distinct middle label keeps it"),
    ("monomial-divisibility", "b-expansion coefficients of a monomial word are multiples of (v+v^-1)^h"),
    ("letter-replacement-lattice", "acyclic word with k letters replaced by -v^-1 stays in the lattice"),
    ("weakly-complex-acyclic", "simply laced or complete: the heap of a weakly complex s*w is acyclic"),
    ("boundary-path-alternation", "weakly complex s*w with cyclic heap: labels alternate along R-paths from effective vertices except at the last step"),
    ("truncated-chain-acyclic", "weakly complex s*w with cyclic heap: removing the top chain vertex leaves an acyclic heap"),
];

#[derive(Clone, Copy, Debug)]
pub struct BatteryConfig {
    pub random_words: usize,
    pub seed: u64,
    /// Convex subsets are enumerated exhaustively up to this many vertices.
    pub exhaustive_subsets_up_to: usize,
    pub max_counterexamples_per_check: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            random_words: 200,
            seed: 1,
            exhaustive_subsets_up_to: 7,
            max_counterexamples_per_check: 20,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub subject: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckTally {
    pub id: String,
    pub statement: String,
    pub cases: usize,
    pub counterexamples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryResult {
    pub fc_elements: usize,
    pub random_words: usize,
    pub checks: Vec<CheckTally>,
    pub counterexamples: Vec<Counterexample>,
}

impl BatteryResult {
    pub fn total_counterexamples(&self) -> usize {
        self.checks.iter().map(|c| c.counterexamples).sum()
    }
}

#[derive(Default)]
struct Tally {
    cases: BTreeMap<&'static str, usize>,
    failures: BTreeMap<&'static str, usize>,
    examples: Vec<Counterexample>,
}

impl Tally {
    fn record(&mut self, id: &'static str, ok: bool, subject: impl FnOnce() -> String, detail: impl FnOnce() -> String) {
        debug_assert!(CHECKS.iter().any(|(c, _)| *c == id), "unknown check {id}");
        *self.cases.entry(id).or_default() += 1;
        if !ok {
            *self.failures.entry(id).or_default() += 1;
            self.examples.push(Counterexample {
                check: id.to_string(),
                subject: subject(),
                detail: detail(),
            });
        }
    }

    fn merge(&mut self, other: Tally) {
        for (k, v) in other.cases {
            *self.cases.entry(k).or_default() += v;
        }
        for (k, v) in other.failures {
            *self.failures.entry(k).or_default() += v;
        }
        self.examples.extend(other.examples);
    }
}

fn vertex_list(vs: &[usize]) -> String {
    let items: Vec<String> = vs.iter().map(|v| format!("v{}", v + 1)).collect();
    format!("[{}]", items.join(","))
}

/// Balanced convex chains of length 2 and 3 (with a middle label different
/// from the ends).
pub fn short_balanced_chains(heap: &Heap) -> (Vec<[usize; 2]>, Vec<[usize; 3]>) {
    let mut pairs = Vec::new();
    let mut triples = Vec::new();
    for x in 0..heap.len() {
        for z in heap.above(x).ones() {
            if heap.label(x) != heap.label(z) {
                continue;
            }
            let inner: Vec<usize> = heap.open_interval(x, z).ones().collect();
            match inner[..] {
                [] => pairs.push([x, z]),
                [y] if heap.label(y) != heap.label(x) => triples.push([x, y, z]),
                _ => {}
            }
        }
    }
    (pairs, triples)
}

/// An R-path α0 R α1 R … R αk from an effective vertex in which some step
/// before the last joins two vertices with the same label.
pub fn alternation_failure(complex: &BoundaryComplex) -> Option<Vec<usize>> {
    let heap = complex.heap();
    let n = heap.len();
    let mut adj = vec![Vec::new(); n];
    for col in complex.columns() {
        if let [a, b] = col[..] {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    fn extend(path: &mut Vec<usize>, on_path: &mut [bool], adj: &[Vec<usize>], heap: &Heap) -> bool {
        let last = *path.last().unwrap();
        for &next in &adj[last] {
            if on_path[next] {
                continue;
            }
            let k = path.len();
            if k >= 2 && heap.label(path[k - 2]) == heap.label(path[k - 1]) {
                path.push(next);
                return true;
            }
            path.push(next);
            on_path[next] = true;
            if extend(path, on_path, adj, heap) {
                return true;
            }
            on_path[next] = false;
            path.pop();
        }
        false
    }
    for a0 in complex.effective_boundary_vertices() {
        let mut path = vec![a0];
        let mut on_path = vec![false; n];
        on_path[a0] = true;
        if extend(&mut path, &mut on_path, &adj, heap) {
            return Some(path);
        }
    }
    None
}

/// Convex subsets to test: every subset for small heaps, otherwise every
/// single extremal deletion plus a few random peelings.
fn convex_subsets(heap: &Heap, cfg: &BatteryConfig, rng: &mut StdRng) -> Vec<FixedBitSet> {
    let n = heap.len();
    let mut out = Vec::new();
    if n <= cfg.exhaustive_subsets_up_to {
        for mask in 0u32..(1 << n) {
            let mut s = FixedBitSet::with_capacity(n);
            for v in 0..n {
                s.set(v, mask & (1 << v) != 0);
            }
            if heap.is_convex(&s) {
                out.push(s);
            }
        }
        return out;
    }
    let full = heap.full_set();
    let extremal = |rest: &FixedBitSet| -> Vec<usize> {
        rest.ones()
            .filter(|&v| heap.below(v).is_disjoint(rest) || heap.above(v).is_disjoint(rest))
            .collect()
    };
    for v in extremal(&full) {
        let mut s = full.clone();
        s.set(v, false);
        out.push(s);
    }
    for _ in 0..8 {
        let mut rest = full.clone();
        let steps = rng.gen_range(1..=n);
        for _ in 0..steps {
            let ext = extremal(&rest);
            if ext.is_empty() {
                break;
            }
            rest.set(ext[rng.gen_range(0..ext.len())], false);
        }
        out.push(rest);
    }
    out
}

fn check_convex_subheaps(heap: &Heap, whole: &BoundaryComplex, subject: &str, cfg: &BatteryConfig, rng: &mut StdRng, t: &mut Tally) {
    let boundary = whole.boundary_vertices();
    let effective = whole.effective_boundary_vertices();
    let classes = whole.linear_equivalence_classes();
    let mut class_of = vec![0; heap.len()];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            class_of[v] = i;
        }
    }
    for subset in convex_subsets(heap, cfg, rng) {
        let map: Vec<usize> = subset.ones().collect();
        let sub = heap.subheap(&subset).expect("subset of the heap");
        let part = BoundaryComplex::new(&sub);
        let label = || format!("{subject} restricted to {}", vertex_list(&map));

        let mut intervals_ok = true;
        for a in 0..sub.len() {
            for b in sub.above(a).ones() {
                let inner: Vec<usize> = sub.open_interval(a, b).ones().map(|x| map[x]).collect();
                let outer: Vec<usize> = heap.open_interval(map[a], map[b]).ones().collect();
                intervals_ok &= inner == outer;
            }
        }
        t.record("convex-intervals", intervals_ok, label, String::new);

        let mut edges_ok = true;
        let mut columns_ok = true;
        for (i, e) in part.edges().iter().enumerate() {
            match whole.edges().iter().position(|f| f.lo == map[e.lo] && f.hi == map[e.hi]) {
                Some(j) => {
                    let col: Vec<usize> = part.column(i).iter().map(|&x| map[x]).collect();
                    columns_ok &= col == whole.column(j);
                }
                None => edges_ok = false,
            }
        }
        t.record("convex-edges", edges_ok, label, String::new);
        t.record("convex-columns", columns_ok, label, String::new);

        let effective_ok = part.effective_boundary_vertices().iter().all(|&v| effective.contains(&map[v]));
        let classes_ok = part
            .linear_equivalence_classes()
            .iter()
            .all(|c| c.iter().all(|&v| class_of[map[v]] == class_of[map[c[0]]]));
        t.record("convex-transport", effective_ok && classes_ok, label, String::new);

        let sub_boundary: Vec<usize> = part.boundary_vertices().iter().map(|&v| map[v]).collect();
        let missing: Vec<usize> = sub_boundary.iter().copied().filter(|v| !boundary.contains(v)).collect();
        t.record("convex-boundary-inclusion", missing.is_empty(), label, || {
            format!("not boundary in the heap: {}", vertex_list(&missing))
        });
    }
}

/// Checks that hold for the heap of any word.
fn check_any_heap(heap: &Heap, complex: &BoundaryComplex, subject: &str, t: &mut Tally) {
    let graph = heap.graph();
    let kernel = complex.kernel_dim();

    for class in complex.linear_equivalence_classes() {
        let status: Vec<bool> = class.iter().map(|&v| complex.is_boundary_vertex(v)).collect();
        t.record(
            "equivalence-boundary-status",
            status.iter().all(|&s| s == status[0]),
            || subject.to_string(),
            || format!("class {}", vertex_list(&class)),
        );
    }

    for v in 0..heap.len() {
        let d = kernel_dim(&heap.delete(&[v]).expect("vertex in range"));
        t.record(
            "deletion-kernel-bound",
            kernel.abs_diff(d) <= 1,
            || subject.to_string(),
            || format!("dim ker {kernel}, after deleting v{}: {d}", v + 1),
        );
    }

    let (pairs, triples) = short_balanced_chains(heap);
    for chain in pairs {
        let d = kernel_dim(&heap.contract(&chain).expect("balanced convex chain"));
        t.record("contraction-kernel", kernel == d + 1, || subject.to_string(), || {
            format!("chain {}: {kernel} vs {d}", vertex_list(&chain))
        });
    }
    for chain in triples {
        let d = kernel_dim(&heap.contract(&chain).expect("balanced convex chain"));
        t.record("contraction-kernel", kernel == d, || subject.to_string(), || {
            format!("chain {}: {kernel} vs {d}", vertex_list(&chain))
        });
    }

    if graph.is_simply_laced() {
        if let Some(colour) = graph.bipartition() {
            for (e, col) in complex.edges().iter().zip(complex.columns()) {
                let side = colour[heap.label(e.lo)];
                t.record(
                    "bipartite-opposite-columns",
                    col.iter().all(|&a| colour[heap.label(a)] != side),
                    || subject.to_string(),
                    || format!("edge (v{}, v{})", e.lo + 1, e.hi + 1),
                );
            }
            if kernel == 0 {
                for v in complex.boundary_vertices() {
                    let cyclic = !is_acyclic(&heap.delete(&[v]).expect("vertex in range"));
                    t.record("bipartite-boundary-deletion-cycle", cyclic, || subject.to_string(), || {
                        format!("deleting boundary vertex v{} leaves an acyclic heap", v + 1)
                    });
                }
            }
        }
    }
}

fn check_tl_word(alg: &TlAlgebra, word: &[usize], rng: &mut StdRng, t: &mut Tally) {
    let graph = alg.graph();
    let subject = || format_word(word);
    let h = h_function(graph, word).expect("letters in range") as u32;
    let divisor = LaurentPoly::quantum_two().pow(h);
    match alg.expand_in_b_basis(&alg.b_of_word(word)) {
        Ok(expansion) => {
            let bad = expansion
                .iter()
                .find(|(_, p)| p.div_exact(&divisor).is_none_or(|q| q.min_degree() != q.max_degree() || q.min_degree().is_some_and(|d| d != 0)));
            t.record("monomial-divisibility", bad.is_none(), subject, || {
                let (w, p) = bad.unwrap();
                format!("h = {h}, coefficient {p} at b[{w}]")
            });
        }
        Err(e) => t.record("monomial-divisibility", false, subject, || e.to_string()),
    }

    if h == 0 && !word.is_empty() {
        let n = word.len();
        let masks: Vec<u32> = if n <= 6 {
            (0..1u32 << n).collect()
        } else {
            (0..16).map(|_| rng.gen_range(0..1u32 << n)).collect()
        };
        for mask in masks {
            let kept: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| word[i]).collect();
            let k = (n - kept.len()) as u32;
            let value = alg.eval_word(&kept).scaled(&LaurentPoly::monomial(-1, -1).pow(k));
            t.record("letter-replacement-lattice", value.in_lattice(), subject, || {
                format!("replacing positions of mask {mask:#b}")
            });
        }
    }
}

fn check_fc_element(
    w: &FcElement,
    alg: &TlAlgebra,
    cfg: &BatteryConfig,
    rng: &mut StdRng,
    t: &mut Tally,
) {
    let heap = w.heap();
    let graph = heap.graph().clone();
    let subject = w.to_string();
    let complex = BoundaryComplex::new(heap);

    t.record(
        "fc-dismantlable-acyclic",
        heap.is_dismantlable() && complex.is_acyclic(),
        || subject.clone(),
        || format!("dismantlable {}, dim ker {}", heap.is_dismantlable(), complex.kernel_dim()),
    );
    let strongly = complex.is_acyclic() && non_acyclic_deletion(heap).is_none();
    let p2 = heap.has_property_p2();
    if strongly {
        t.record("strongly-acyclic-has-p2", p2, || subject.clone(), String::new);
    }
    if graph.is_simply_laced() && p2 {
        t.record("simply-laced-p2-strongly-acyclic", strongly, || subject.clone(), String::new);
    }
    if graph.is_simply_laced() && graph.is_bipartite() {
        let boundary = complex.boundary_vertices();
        t.record("bipartite-fc-no-boundary", boundary.is_empty(), || subject.clone(), || {
            format!("boundary vertices {}", vertex_list(&boundary))
        });
    }

    check_any_heap(heap, &complex, &subject, t);
    check_convex_subheaps(heap, &complex, &subject, cfg, rng, t);

    for s in graph.generators() {
        let MultiplyStatus::WeaklyComplex(witness) = heap.multiply_status(Side::Left, s).expect("FC heap") else {
            continue;
        };
        let mut word = vec![s];
        word.extend_from_slice(w.word());
        let product = format!("s{}*{}", s + 1, subject);
        let extended = &witness.extended;
        let ext_complex = BoundaryComplex::new(extended);
        check_any_heap(extended, &ext_complex, &product, t);
        check_tl_word(alg, &word, rng, t);

        if graph.is_simply_laced() || graph.is_complete() {
            t.record("weakly-complex-acyclic", ext_complex.is_acyclic(), || product.clone(), || {
                format!("dim ker {}", ext_complex.kernel_dim())
            });
        }
        if !ext_complex.is_acyclic() {
            let path = alternation_failure(&complex);
            t.record("boundary-path-alternation", path.is_none(), || product.clone(), || {
                format!("R-path {} in the heap of {subject}", vertex_list(path.as_ref().unwrap()))
            });
            let top = *witness.extended_chain.last().expect("chain is nonempty");
            let truncated = extended.delete(&[top]).expect("vertex in range");
            let k = kernel_dim(&truncated);
            t.record("truncated-chain-acyclic", k == 0, || product.clone(), || {
                format!("chain {}, removing v{} leaves dim ker {k}", vertex_list(&witness.extended_chain), top + 1)
            });
        }
    }
}

fn random_word(graph: &CoxeterGraph, max_len: usize, rng: &mut StdRng) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..graph.rank())).collect()
}

fn check_random_word(word: &[usize], alg: &TlAlgebra, cfg: &BatteryConfig, rng: &mut StdRng, t: &mut Tally) {
    let graph = alg.graph();
    let heap = Heap::of_word(graph, word).expect("letters in range");
    let complex = BoundaryComplex::new(&heap);
    let subject = format!("word {}", format_word(word));
    check_any_heap(&heap, &complex, &subject, t);
    check_convex_subheaps(&heap, &complex, &subject, cfg, rng, t);
    check_tl_word(alg, word, rng, t);
}

/// Runs the battery over `elements` (every FC element up to some length)
/// and over `cfg.random_words` random words of length ≤ `max_len`.
pub fn run_battery(
    graph: &Arc<CoxeterGraph>,
    elements: &[FcElement],
    max_len: usize,
    cfg: &BatteryConfig,
) -> BatteryResult {
    let per_element: Vec<Tally> = elements
        .par_iter()
        .enumerate()
        .map_init(
            || TlAlgebra::new(graph),
            |alg, (i, w)| {
                let mut t = Tally::default();
                let mut rng = StdRng::seed_from_u64(cfg.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                check_fc_element(w, alg, cfg, &mut rng, &mut t);
                t
            },
        )
        .collect();

    let mut word_rng = StdRng::seed_from_u64(cfg.seed);
    let words: Vec<Vec<usize>> = (0..cfg.random_words)
        .map(|_| random_word(graph, max_len, &mut word_rng))
        .collect();
    let per_word: Vec<Tally> = words
        .par_iter()
        .enumerate()
        .map_init(
            || TlAlgebra::new(graph),
            |alg, (i, word)| {
                let mut t = Tally::default();
                let mut rng = StdRng::seed_from_u64(!cfg.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                check_random_word(word, alg, cfg, &mut rng, &mut t);
                t
            },
        )
        .collect();

    let mut total = Tally::default();
    for t in per_element.into_iter().chain(per_word) {
        total.merge(t);
    }
    let mut shown: BTreeMap<&str, usize> = BTreeMap::new();
    let counterexamples = total
        .examples
        .into_iter()
        .filter(|c| {
            let n = shown.entry(CHECKS.iter().find(|(id, _)| *id == c.check).unwrap().0).or_default();
            *n += 1;
            *n <= cfg.max_counterexamples_per_check
        })
        .collect();
    BatteryResult {
        fc_elements: elements.len(),
        random_words: cfg.random_words,
        checks: CHECKS
            .iter()
            .map(|&(id, statement)| CheckTally {
                id: id.to_string(),
                statement: statement.to_string(),
                cases: total.cases.get(id).copied().unwrap_or(0),
                counterexamples: total.failures.get(id).copied().unwrap_or(0),
            })
            .collect(),
        counterexamples,
    }
}
