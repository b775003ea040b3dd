//! JSON report types. Vertex and generator indices are 1-based throughout.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use fc_heaps::boundary::non_acyclic_deletion;
use fc_heaps::{format_word, BoundaryComplex, Extremity, Heap, Verdict};
use serde::Serialize;

use crate::campaign::Check;
use crate::error::{CliError, Result};
use crate::forbidden::ScanResult;
use crate::graph_spec::GraphSummary;
use crate::lemmas::BatteryResult;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub graph: GraphSummary,
    pub max_len: usize,
    pub checks: Vec<Check>,
    pub star_reducible: bool,
    pub elements: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub main_theorem: Option<MainTheoremSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub property_w: Option<PropertyWSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_constants: Option<CBasisSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden_configs: Option<ScanResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma_invariants: Option<BatteryResult>,
    pub violations: usize,
    /// Wall-clock seconds per phase; only present with `--timings` so that
    /// reports stay byte-identical otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremSection {
    pub bipartite: bool,
    pub elements: usize,
    pub with_boundary_vertices: usize,
    pub violations: Vec<MainTheoremViolation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremViolation {
    pub element: String,
    /// Least boundary vertex whose class has no effective vertex.
    pub vertex: usize,
    pub label: usize,
    pub boundary: Vec<usize>,
    pub effective: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyWSection {
    pub weakly_complex_products: usize,
    pub failures: Vec<PropertyWFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyWFailure {
    /// The product is s_generator · element.
    pub generator: usize,
    pub element: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CBasisSection {
    pub elements: usize,
    pub pairs: usize,
    pub violations: Vec<CBasisViolation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CBasisViolation {
    pub kind: String,
    pub element: String,
    pub detail: String,
}

impl Report {
    pub fn count_violations(&self) -> usize {
        self.main_theorem.as_ref().map_or(0, |s| s.violations.len())
            + self.property_w.as_ref().map_or(0, |s| s.failures.len())
            + self.structure_constants.as_ref().map_or(0, |s| s.violations.len())
            + self.forbidden_configs.as_ref().map_or(0, ScanResult::violations)
            + self.lemma_invariants.as_ref().map_or(0, BatteryResult::total_counterexamples)
    }

    /// 0 when clean or when the graph is not known to be star reducible,
    /// 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.violations > 0 && self.star_reducible)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn write_to(&self, path: &str) -> Result<()> {
        let json = self.to_json()?;
        std::fs::File::create(path)
            .and_then(|mut f| f.write_all(json.as_bytes()))
            .map_err(|source| CliError::Io {
                path: path.to_string(),
                source,
            })
    }

    /// One line per selected check.
    pub fn summary(&self) -> String {
        let mut out = format!("{}: {} FC elements of length <= {}\n", self.graph.source, self.elements, self.max_len);
        if let Some(s) = &self.main_theorem {
            let _ = writeln!(
                out,
                "main_theorem: {} violations ({} heaps with boundary vertices{})",
                s.violations.len(),
                s.with_boundary_vertices,
                if s.bipartite { "" } else { "; graph is not bipartite" }
            );
        }
        if let Some(s) = &self.property_w {
            let _ = writeln!(out, "property_w: {} failures over {} weakly complex products", s.failures.len(), s.weakly_complex_products);
        }
        if let Some(s) = &self.structure_constants {
            let _ = writeln!(out, "structure_constants: {} violations over {} pairs", s.violations.len(), s.pairs);
        }
        if let Some(s) = &self.forbidden_configs {
            let advisory = s.matches.iter().filter(|m| m.advisory).count();
            let _ = writeln!(out, "forbidden_configs: {} matches ({advisory} advisory)", s.matches.len());
            for w in &s.warnings {
                let _ = writeln!(out, "  warning: {w}");
            }
        }
        if let Some(s) = &self.lemma_invariants {
            let _ = writeln!(out, "lemma_invariants: {} counterexamples", s.total_counterexamples());
        }
        if self.violations > 0 && !self.star_reducible {
            out.push_str("graph not asserted star reducible: violations are reported but do not fail the run\n");
        }
        out
    }
}

/// Everything `heap-info` prints about one heap.
#[derive(Clone, Debug, Serialize)]
pub struct HeapInfo {
    pub word: String,
    pub canonical_word: String,
    pub labels: Vec<usize>,
    pub covers: Vec<(usize, usize)>,
    pub fully_commutative: bool,
    pub edges: Vec<(usize, usize)>,
    pub columns: Vec<Vec<usize>>,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub acyclic: bool,
    /// A vertex whose deletion leaves a heap that is not acyclic.
    pub non_acyclic_deletion: Option<usize>,
    pub boundary_vertices: Vec<usize>,
    pub effective_boundary_vertices: Vec<usize>,
    pub equivalence_classes: Vec<Vec<usize>>,
    /// Removal order with `max`/`min` for each vertex, when dismantlable.
    pub dismantling_sequence: Option<Vec<(usize, String)>>,
    pub property_p2: bool,
    /// Least boundary vertex not equivalent to an effective one, if any.
    pub main_theorem_violation: Option<usize>,
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

impl HeapInfo {
    pub fn new(heap: &Heap) -> Self {
        let c = BoundaryComplex::new(heap);
        let mut classes: Vec<Vec<usize>> = c.linear_equivalence_classes().iter().map(|k| one_based(k)).collect();
        classes.sort();
        HeapInfo {
            word: format_word(heap.word()),
            canonical_word: format_word(&heap.canonical_word()),
            labels: one_based(heap.labels()),
            covers: heap.covers().into_iter().map(|(a, b)| (a + 1, b + 1)).collect(),
            fully_commutative: heap.is_fc(),
            edges: c.edges().iter().map(|e| (e.lo + 1, e.hi + 1)).collect(),
            columns: c.columns().iter().map(|col| one_based(col)).collect(),
            kernel_dim: c.kernel_dim(),
            image_dim: c.image_dim(),
            acyclic: c.is_acyclic(),
            non_acyclic_deletion: if c.is_acyclic() { non_acyclic_deletion(heap).map(|v| v + 1) } else { None },
            boundary_vertices: one_based(&c.boundary_vertices()),
            effective_boundary_vertices: one_based(&c.effective_boundary_vertices()),
            equivalence_classes: classes,
            dismantling_sequence: heap.dismantling_sequence().map(|seq| {
                seq.iter()
                    .map(|r| {
                        let side = match r.extremity {
                            Extremity::Maximal => "max",
                            Extremity::Minimal => "min",
                        };
                        (r.vertex + 1, side.to_string())
                    })
                    .collect()
            }),
            property_p2: heap.has_property_p2(),
            main_theorem_violation: match c.main_theorem_verdict() {
                Verdict::Holds => None,
                Verdict::Violation { vertex } => Some(vertex + 1),
            },
        }
    }

    pub fn render(&self) -> String {
        let vs = |xs: &[usize]| {
            let items: Vec<String> = xs.iter().map(|v| format!("v{v}")).collect();
            if items.is_empty() { "none".to_string() } else { items.join(" ") }
        };
        let mut out = String::new();
        let _ = writeln!(out, "word: {}", self.word);
        let _ = writeln!(out, "canonical word: {}", self.canonical_word);
        let labels: Vec<String> = self.labels.iter().enumerate().map(|(i, s)| format!("v{}=s{s}", i + 1)).collect();
        let _ = writeln!(out, "vertices: {}", if labels.is_empty() { "none".into() } else { labels.join(" ") });
        let covers: Vec<String> = self.covers.iter().map(|(a, b)| format!("v{a}<v{b}")).collect();
        let _ = writeln!(out, "covers: {}", if covers.is_empty() { "none".into() } else { covers.join(" ") });
        let _ = writeln!(out, "fully commutative: {}", self.fully_commutative);
        let _ = writeln!(out, "edges: {}", self.edges.len());
        for ((lo, hi), col) in self.edges.iter().zip(&self.columns) {
            let image: Vec<String> = col.iter().map(|v| format!("v{v}")).collect();
            let image = if image.is_empty() { "0".to_string() } else { image.join(" + ") };
            let _ = writeln!(out, "  (v{lo}, v{hi}) -> {image}");
        }
        let _ = writeln!(out, "dim ker: {}  dim im: {}", self.kernel_dim, self.image_dim);
        let strongly = match (self.acyclic, self.non_acyclic_deletion) {
            (false, _) => "no".to_string(),
            (true, None) => "yes".to_string(),
            (true, Some(v)) => format!("no (deleting v{v})"),
        };
        let _ = writeln!(out, "acyclic: {}  strongly acyclic: {strongly}", self.acyclic);
        let _ = writeln!(out, "boundary vertices: {}", vs(&self.boundary_vertices));
        let _ = writeln!(out, "effective boundary vertices: {}", vs(&self.effective_boundary_vertices));
        let classes: Vec<String> = self
            .equivalence_classes
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("{{{}}}", vs(c)))
            .collect();
        let _ = writeln!(out, "nontrivial equivalence classes: {}", if classes.is_empty() { "none".into() } else { classes.join(" ") });
        let p1 = match &self.dismantling_sequence {
            Some(seq) => {
                let steps: Vec<String> = seq.iter().map(|(v, side)| format!("v{v}({side})")).collect();
                format!("yes [{}]", steps.join(" "))
            }
            None => "no".to_string(),
        };
        let _ = writeln!(out, "dismantlable (P1): {p1}");
        let _ = writeln!(out, "P2: {}", if self.property_p2 { "yes" } else { "no" });
        match self.main_theorem_violation {
            None => out.push_str("every boundary vertex is equivalent to an effective one\n"),
            Some(v) => {
                let _ = writeln!(out, "v{v} is a boundary vertex with no effective vertex in its class");
            }
        }
        out
    }
}
