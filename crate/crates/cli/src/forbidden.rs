//! Scans for forbidden trace shapes on straight line Coxeter graphs.
//!
//! A trace pattern `x(B1)y(B2)z` matches a heap when some linear extension of
//! the heap can be written that way, with `B1` and `B2` contiguous blocks and
//! the gap `y` avoiding a set of letters. Instead of listing every linear
//! extension, the scan walks order ideals of the heap while tracking the set
//! of automaton states reachable on the letters placed so far; two prefixes
//! with the same placed set and the same state set behave identically, so
//! each pair is explored once.

use std::collections::HashSet;

use fc_heaps::{format_word, Bond, CoxeterGraph, FcElement, Heap};
use rayon::prelude::*;
use serde::Serialize;

/// `x(first)y(second)z` with side conditions on `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracePattern {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub gap_avoids: Vec<usize>,
    /// `(letter, n)`: the gap must not contain exactly `n` copies of `letter`.
    pub gap_count_not: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// No generator in `letters` may occur more than `max` times.
    OccurrenceBound { letters: Vec<usize>, max: usize },
    Trace(TracePattern),
}

#[derive(Clone, Debug)]
pub struct ForbiddenCheck {
    pub id: String,
    pub description: String,
    pub rule: Rule,
    /// Set when the graph is not of the shape the check was written for.
    pub advisory: bool,
}

/// Shape of a straight line graph s1 - s2 - ... - sn, as far as the scans care.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineShape {
    /// Rank 3 with m(s1,s2) = 4 and m(s2,s3) = 3.
    B3,
    /// m(s2,s3) = 4, all other bonds 3.
    F,
    /// m(s1,s2) = 5, all other bonds 3.
    H,
    /// Even rank, m(s1,s2) = m(s_{n-1},s_n) = 4, all other bonds 3.
    CAffine,
    /// Any other straight line.
    Other,
}

/// Bonds m(s_i, s_{i+1}) when the graph is the path s1 - s2 - ... - sn.
pub fn line_bonds(graph: &CoxeterGraph) -> Option<Vec<Bond>> {
    let n = graph.rank();
    for s in 0..n {
        for t in s + 1..n {
            if graph.is_adjacent(s, t) != (t == s + 1) {
                return None;
            }
        }
    }
    Some((1..n).map(|i| graph.m(i - 1, i)).collect())
}

pub fn line_shape(bonds: &[Bond]) -> LineShape {
    let only = |special: &[(usize, u32)]| {
        bonds.iter().enumerate().all(|(i, &b)| {
            let want = special.iter().find(|(j, _)| *j == i).map_or(3, |&(_, m)| m);
            b == Bond::Finite(want)
        })
    };
    let n = bonds.len() + 1;
    if n == 3 && only(&[(0, 4)]) {
        LineShape::B3
    } else if n >= 3 && only(&[(1, 4)]) {
        LineShape::F
    } else if n >= 2 && only(&[(0, 5)]) {
        LineShape::H
    } else if n >= 4 && n.is_multiple_of(2) && only(&[(0, 4), (n - 2, 4)]) {
        LineShape::CAffine
    } else {
        LineShape::Other
    }
}

/// 1-based letter lists to 0-based, or `None` when a letter is absent.
fn letters(rank: usize, one_based: &[usize]) -> Option<Vec<usize>> {
    one_based
        .iter()
        .map(|&i| (1..=rank).contains(&i).then(|| i - 1))
        .collect()
}

/// Avoided letters that exist in the graph; indices outside 1..=rank drop out.
fn present(rank: usize, one_based: &[isize]) -> Vec<usize> {
    one_based
        .iter()
        .filter(|&&i| i >= 1 && i as usize <= rank)
        .map(|&i| i as usize - 1)
        .collect()
}

fn show(one_based: &[usize]) -> String {
    one_based.iter().map(|i| format!("s{i}")).collect()
}

fn show_set(one_based: &[isize], rank: usize) -> String {
    let names: Vec<String> = present(rank, one_based)
        .iter()
        .map(|i| format!("s{}", i + 1))
        .collect();
    if names.is_empty() {
        "-".into()
    } else {
        names.join(",")
    }
}

fn block_check(
    rank: usize,
    id: String,
    first: &[usize],
    second: &[usize],
    avoid: &[isize],
) -> Option<ForbiddenCheck> {
    let pattern = TracePattern {
        first: letters(rank, first)?,
        second: letters(rank, second)?,
        gap_avoids: present(rank, avoid),
        gap_count_not: None,
    };
    Some(ForbiddenCheck {
        id,
        description: format!(
            "no trace x({})y({})z with y avoiding {}",
            show(first),
            show(second),
            show_set(avoid, rank)
        ),
        rule: Rule::Trace(pattern),
        advisory: false,
    })
}

fn occurrence_checks(rank: usize) -> Vec<ForbiddenCheck> {
    let Some(letters) = letters(rank, &[2, 3]) else {
        return Vec::new();
    };
    vec![ForbiddenCheck {
        id: "b3-occurrence-bound".into(),
        description: "at most three occurrences of each of s2 and s3".into(),
        rule: Rule::OccurrenceBound { letters, max: 3 },
        advisory: false,
    }]
}

/// Between two consecutive occurrences of s_i there is an s_{i-1} (when all
/// bonds from s_i rightwards are 3) or an s_{i+1} (when all bonds up to s_i
/// are 3).
fn repeat_checks(bonds: &[Bond]) -> Vec<ForbiddenCheck> {
    let n = bonds.len() + 1;
    let simple = |j: usize| bonds[j - 1] == Bond::Finite(3);
    let mut out = Vec::new();
    for i in 1..=n {
        if (i..n).all(simple) {
            let avoid = [i as isize, i as isize - 1];
            let c = block_check(n, format!("repeat-needs-left-neighbour-s{i}"), &[i], &[i], &avoid)
                .expect("letters in range");
            out.push(c);
        }
        if (1..=i.min(n - 1)).all(simple) {
            let avoid = [i as isize, i as isize + 1];
            let c = block_check(n, format!("repeat-needs-right-neighbour-s{i}"), &[i], &[i], &avoid)
                .expect("letters in range");
            out.push(c);
        }
    }
    out
}

fn f_checks(rank: usize) -> Vec<ForbiddenCheck> {
    let mut out = Vec::new();
    if let (Some(s3), Some(s2)) = (letters(rank, &[3]), letters(rank, &[2])) {
        let avoid = [3, 4];
        out.push(ForbiddenCheck {
            id: "f-repeat-s3-unique-s2".into(),
            description: format!(
                "in any trace x(s3)y(s3)z with y avoiding {}, y has exactly one s2",
                show_set(&avoid, rank)
            ),
            rule: Rule::Trace(TracePattern {
                first: s3.clone(),
                second: s3,
                gap_avoids: present(rank, &avoid),
                gap_count_not: Some((s2[0], 1)),
            }),
            advisory: false,
        });
    }
    let blocks: [(&str, &[usize], &[usize], [isize; 2]); 4] = [
        ("f-blocks-s1s2-s3s2s1s3", &[1, 2], &[3, 2, 1, 3], [3, 4]),
        ("f-blocks-s4s3-s2s3s2s4", &[4, 3], &[2, 3, 2, 4], [4, 5]),
        ("f-blocks-s3s1s2s3-s2s1", &[3, 1, 2, 3], &[2, 1], [3, 4]),
        ("f-blocks-s4s2s3s2-s3s4", &[4, 2, 3, 2], &[3, 4], [4, 5]),
    ];
    for (id, a, b, avoid) in blocks {
        out.extend(block_check(rank, id.into(), a, b, &avoid));
    }
    out
}

/// x(s_i s_{i+2} s_{i+1}) y (s_{i+1} s_{i+2} s_i) z with y avoiding s_{i+2}, s_{i+3}.
fn mirrored_triple_checks(rank: usize, prefix: &str) -> Vec<ForbiddenCheck> {
    (1..=rank.saturating_sub(2))
        .filter_map(|i| {
            let avoid = [(i + 2) as isize, (i + 3) as isize];
            block_check(
                rank,
                format!("{prefix}-mirrored-triple-s{i}"),
                &[i, i + 2, i + 1],
                &[i + 1, i + 2, i],
                &avoid,
            )
        })
        .collect()
}

fn c_affine_checks(rank: usize) -> Vec<ForbiddenCheck> {
    let mut out = Vec::new();
    for i in 1..=rank.saturating_sub(2) {
        let ii = i as isize;
        let shapes: [(&str, Vec<usize>, Vec<usize>, [isize; 2]); 4] = [
            ("c-triple-pair", vec![i + 2, i, i + 1], vec![i + 1, i], [ii, ii - 1]),
            ("c-pair-triple", vec![i, i + 1], vec![i + 1, i, i + 2], [ii, ii - 1]),
            ("c-pair-triple-up", vec![i + 2, i + 1], vec![i + 1, i + 2, i], [ii + 2, ii + 3]),
            ("c-triple-pair-up", vec![i, i + 2, i + 1], vec![i + 1, i + 2], [ii + 2, ii + 3]),
        ];
        for (name, a, b, avoid) in shapes {
            out.extend(block_check(rank, format!("{name}-s{i}"), &a, &b, &avoid));
        }
    }
    out
}

fn all_specific_as_advisory(rank: usize) -> Vec<ForbiddenCheck> {
    let mut all = occurrence_checks(rank);
    all.extend(f_checks(rank));
    all.extend(mirrored_triple_checks(rank, "f"));
    all.extend(mirrored_triple_checks(rank, "h"));
    all.extend(c_affine_checks(rank));
    for c in &mut all {
        c.advisory = true;
    }
    all
}

/// The checks that apply to `graph`. When the graph has none of the special
/// line shapes, every family-specific check is included as advisory.
pub fn checks_for(graph: &CoxeterGraph) -> (Option<LineShape>, Vec<ForbiddenCheck>) {
    let rank = graph.rank();
    let Some(bonds) = line_bonds(graph) else {
        return (None, all_specific_as_advisory(rank));
    };
    let shape = line_shape(&bonds);
    let mut out = repeat_checks(&bonds);
    let mut specific = match shape {
        LineShape::B3 => occurrence_checks(rank),
        LineShape::F => {
            let mut v = f_checks(rank);
            v.extend(mirrored_triple_checks(rank, "f"));
            v
        }
        LineShape::H => mirrored_triple_checks(rank, "h"),
        LineShape::CAffine => c_affine_checks(rank),
        LineShape::Other => all_specific_as_advisory(rank),
    };
    out.append(&mut specific);
    (Some(shape), out)
}

/// Automaton for one trace pattern. States: 0 is the prefix `x`, then the
/// partial matches of `first`, three gap states (count 0, 1, ≥2 of the
/// counted letter), partial matches of `second`, and the accepting state.
struct Automaton<'a> {
    p: &'a TracePattern,
}

impl<'a> Automaton<'a> {
    fn first_at(&self, k: usize) -> usize {
        k
    }

    fn gap(&self, c: usize) -> usize {
        self.p.first.len() + c
    }

    fn second_at(&self, k: usize) -> usize {
        self.p.first.len() + 3 + k - 1
    }

    fn accept(&self) -> usize {
        self.p.first.len() + 3 + self.p.second.len() - 1
    }

    /// State reached after a complete `first` block.
    fn after_first(&self) -> usize {
        self.gap(0)
    }

    fn after_second_letter(&self, k: usize) -> usize {
        if k == self.p.second.len() {
            self.accept()
        } else {
            self.second_at(k)
        }
    }

    /// Gap counts are tracked up to 2, so only 0 and 1 can be excluded.
    fn gap_exit_allowed(&self, c: usize) -> bool {
        self.p.gap_count_not.is_none_or(|(_, n)| c != n)
    }

    fn step(&self, states: u64, a: usize) -> u64 {
        let p = self.p;
        let mut out = 0u64;
        let mut add = |s: usize| out |= 1 << s;
        let after_first_letter = |k: usize| {
            if k == p.first.len() {
                self.after_first()
            } else {
                self.first_at(k)
            }
        };
        for s in (0..64).filter(|&s| states & (1 << s) != 0) {
            if s == 0 {
                add(0);
                if p.first[0] == a {
                    add(after_first_letter(1));
                }
            } else if s < p.first.len() {
                if p.first[s] == a {
                    add(after_first_letter(s + 1));
                }
            } else if s < p.first.len() + 3 {
                let c = s - p.first.len();
                if self.gap_exit_allowed(c) && p.second[0] == a {
                    add(self.after_second_letter(1));
                }
                if !p.gap_avoids.contains(&a) {
                    let counted = p.gap_count_not.is_some_and(|(l, _)| l == a);
                    add(self.gap((c + counted as usize).min(2)));
                }
            } else if s == self.accept() {
                add(s);
            } else {
                let k = s - (p.first.len() + 3) + 1;
                if p.second[k] == a {
                    add(self.after_second_letter(k + 1));
                }
            }
        }
        out
    }
}

/// A linear extension of `heap` (as vertex order) matching the pattern.
pub fn find_trace(heap: &Heap, pattern: &TracePattern) -> Option<Vec<usize>> {
    let n = heap.len();
    assert!(n <= 64, "heaps beyond 64 vertices are not supported");
    assert!(pattern.first.len() + pattern.second.len() + 2 <= 64);
    let auto = Automaton { p: pattern };
    let below: Vec<u64> = (0..n)
        .map(|v| heap.below(v).ones().fold(0u64, |m, u| m | 1 << u))
        .collect();
    let mut seen = HashSet::new();
    let mut path = Vec::with_capacity(n);

    fn dfs(
        placed: u64,
        states: u64,
        n: usize,
        heap: &Heap,
        below: &[u64],
        auto: &Automaton,
        seen: &mut HashSet<(u64, u64)>,
        path: &mut Vec<usize>,
    ) -> bool {
        if states & (1 << auto.accept()) != 0 {
            return true;
        }
        if !seen.insert((placed, states)) {
            return false;
        }
        for v in 0..n {
            if placed & (1 << v) != 0 || below[v] & !placed != 0 {
                continue;
            }
            let next = auto.step(states, heap.label(v));
            path.push(v);
            if dfs(placed | 1 << v, next, n, heap, below, auto, seen, path) {
                return true;
            }
            path.pop();
        }
        false
    }

    if !dfs(0, 1, n, heap, &below, &auto, &mut seen, &mut path) {
        return None;
    }
    // Finish with the vertices not yet placed, in index order (a linear extension).
    let mut placed: u64 = path.iter().fold(0, |m, &v| m | 1 << v);
    while path.len() < n {
        let v = (0..n)
            .find(|&v| placed & (1 << v) == 0 && below[v] & !placed == 0)
            .expect("some vertex is minimal");
        placed |= 1 << v;
        path.push(v);
    }
    Some(path)
}

#[derive(Clone, Debug, Serialize)]
pub struct ForbiddenMatch {
    pub check: String,
    pub element: String,
    /// A word in the commutation class exhibiting the pattern, or the
    /// offending letter count for occurrence bounds.
    pub witness: String,
    pub advisory: bool,
}

pub fn run_check(check: &ForbiddenCheck, w: &FcElement) -> Option<ForbiddenMatch> {
    let heap = w.heap();
    let witness = match &check.rule {
        Rule::OccurrenceBound { letters, max } => letters.iter().find_map(|&s| {
            let count = heap.label_chain(s).len();
            (count > *max).then(|| format!("s{} occurs {count} times", s + 1))
        })?,
        Rule::Trace(p) => {
            let order = find_trace(heap, p)?;
            let word: Vec<usize> = order.iter().map(|&v| heap.label(v)).collect();
            format_word(&word)
        }
    };
    Some(ForbiddenMatch {
        check: check.id.clone(),
        element: w.to_string(),
        witness,
        advisory: check.advisory,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub id: String,
    pub description: String,
    pub advisory: bool,
    pub matches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub line_shape: Option<LineShape>,
    pub elements: usize,
    pub checks: Vec<CheckSummary>,
    pub matches: Vec<ForbiddenMatch>,
    pub warnings: Vec<String>,
}

impl ScanResult {
    /// Matches of checks that apply to this graph.
    pub fn violations(&self) -> usize {
        self.matches.iter().filter(|m| !m.advisory).count()
    }
}

pub fn scan(graph: &CoxeterGraph, elements: &[FcElement]) -> ScanResult {
    let (shape, checks) = checks_for(graph);
    let mut warnings = Vec::new();
    match shape {
        None => warnings.push("graph is not a straight line s1 - ... - sn; all checks are advisory".into()),
        Some(LineShape::Other) => warnings.push(
            "line has none of the B3, F, H or affine C shapes; family-specific checks are advisory".into(),
        ),
        _ => {}
    }
    let per_element: Vec<Vec<ForbiddenMatch>> = elements
        .par_iter()
        .map(|w| checks.iter().filter_map(|c| run_check(c, w)).collect())
        .collect();
    let matches: Vec<ForbiddenMatch> = per_element.into_iter().flatten().collect();
    let summaries = checks
        .iter()
        .map(|c| CheckSummary {
            id: c.id.clone(),
            description: c.description.clone(),
            advisory: c.advisory,
            matches: matches.iter().filter(|m| m.check == c.id).count(),
        })
        .collect();
    ScanResult {
        line_shape: shape,
        elements: elements.len(),
        checks: summaries,
        matches,
        warnings,
    }
}
