//! The `verify` campaign: enumerate FC elements once and run the selected
//! checks over them on a dedicated worker pool.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use fc_heaps::tl::{all_nonnegative, property_w_cases};
use fc_heaps::{enumerate_fc, BoundaryComplex, FcElement, LaurentPoly, TlAlgebra, Verdict};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::forbidden::{self, ScanResult};
use crate::graph_spec::LoadedGraph;
use crate::lemmas::{self, BatteryConfig, BatteryResult};
use crate::report::{
    CBasisSection, CBasisViolation, MainTheoremSection, MainTheoremViolation, PropertyWFailure, PropertyWSection,
    Report, SCHEMA_VERSION,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    MainTheorem,
    PropertyW,
    StructureConstants,
    ForbiddenConfigs,
    LemmaInvariants,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::MainTheorem,
        Check::PropertyW,
        Check::StructureConstants,
        Check::ForbiddenConfigs,
        Check::LemmaInvariants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::MainTheorem => "main_theorem",
            Check::PropertyW => "property_w",
            Check::StructureConstants => "structure_constants",
            Check::ForbiddenConfigs => "forbidden_configs",
            Check::LemmaInvariants => "lemma_invariants",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                CliError::Usage(format!("unknown check `{s}` (expected one of {})", known.join(", ")))
            })
    }
}

/// Parses `a,b,c` into a set of checks.
pub fn parse_checks(list: &str) -> Result<BTreeSet<Check>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub graph: LoadedGraph,
    pub max_len: usize,
    pub checks: BTreeSet<Check>,
    pub jobs: usize,
    pub assert_star_reducible: bool,
    pub timings: bool,
    pub seed: u64,
    pub random_words: usize,
}

impl CampaignConfig {
    pub fn new(graph: LoadedGraph, max_len: usize, checks: BTreeSet<Check>) -> Self {
        CampaignConfig {
            graph,
            max_len,
            checks,
            jobs: 1,
            assert_star_reducible: false,
            timings: false,
            seed: 1,
            random_words: 200,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.checks.is_empty() {
            return Err(CliError::Usage("no checks selected".into()));
        }
        if self.jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Built-in families are all star reducible; for graph files the user
    /// has to say so.
    pub fn star_reducible(&self) -> bool {
        self.assert_star_reducible || self.graph.family.is_some()
    }
}

struct Stopwatch {
    enabled: bool,
    laps: BTreeMap<String, f64>,
}

impl Stopwatch {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.laps.insert(name.to_string(), start.elapsed().as_secs_f64());
        }
        out
    }
}

pub fn run(cfg: &CampaignConfig) -> Result<Report> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_in_pool(cfg))
}

fn run_in_pool(cfg: &CampaignConfig) -> Result<Report> {
    let graph = &cfg.graph.graph;
    let mut clock = Stopwatch {
        enabled: cfg.timings,
        laps: BTreeMap::new(),
    };
    let mut elements = clock.time("enumerate", || enumerate_fc(graph, cfg.max_len));
    elements.sort();

    let mut report = Report {
        schema: SCHEMA_VERSION,
        graph: cfg.graph.summary(),
        max_len: cfg.max_len,
        checks: cfg.checks.iter().copied().collect(),
        star_reducible: cfg.star_reducible(),
        elements: elements.len(),
        main_theorem: None,
        property_w: None,
        structure_constants: None,
        forbidden_configs: None,
        lemma_invariants: None,
        violations: 0,
        timings: None,
    };

    for &check in &cfg.checks {
        match check {
            Check::MainTheorem => {
                let section = clock.time(check.name(), || main_theorem(&elements, graph.is_bipartite()));
                report.main_theorem = Some(section);
            }
            Check::PropertyW => {
                let section = clock.time(check.name(), || property_w(graph, &elements));
                report.property_w = Some(section);
            }
            Check::StructureConstants => {
                let section = clock.time(check.name(), || structure_constants(graph, &elements, cfg.max_len));
                report.structure_constants = Some(section);
            }
            Check::ForbiddenConfigs => {
                let section: ScanResult = clock.time(check.name(), || forbidden::scan(graph, &elements));
                report.forbidden_configs = Some(section);
            }
            Check::LemmaInvariants => {
                let battery = BatteryConfig {
                    random_words: cfg.random_words,
                    seed: cfg.seed,
                    ..BatteryConfig::default()
                };
                let section: BatteryResult =
                    clock.time(check.name(), || lemmas::run_battery(graph, &elements, cfg.max_len, &battery));
                report.lemma_invariants = Some(section);
            }
        }
    }
    report.violations = report.count_violations();
    if cfg.timings {
        report.timings = Some(clock.laps);
    }
    Ok(report)
}

pub fn main_theorem(elements: &[FcElement], bipartite: bool) -> MainTheoremSection {
    let results: Vec<(bool, Option<MainTheoremViolation>)> = elements
        .par_iter()
        .map(|w| {
            let complex = BoundaryComplex::new(w.heap());
            let has_boundary = !complex.boundary_vertices().is_empty();
            let violation = match complex.main_theorem_verdict() {
                Verdict::Holds => None,
                Verdict::Violation { vertex } => Some(MainTheoremViolation {
                    element: w.to_string(),
                    vertex: vertex + 1,
                    label: w.heap().label(vertex) + 1,
                    boundary: complex.boundary_vertices().iter().map(|v| v + 1).collect(),
                    effective: complex.effective_boundary_vertices().iter().map(|v| v + 1).collect(),
                }),
            };
            (has_boundary, violation)
        })
        .collect();
    MainTheoremSection {
        bipartite,
        elements: elements.len(),
        with_boundary_vertices: results.iter().filter(|(b, _)| *b).count(),
        violations: results.into_iter().filter_map(|(_, v)| v).collect(),
    }
}

pub fn property_w(graph: &std::sync::Arc<fc_heaps::CoxeterGraph>, elements: &[FcElement]) -> PropertyWSection {
    let cases: Vec<(usize, Vec<PropertyWFailure>)> = elements
        .par_iter()
        .map_init(
            || TlAlgebra::new(graph),
            |alg, w| {
                let cases = property_w_cases(alg, std::slice::from_ref(w));
                let failures = cases
                    .iter()
                    .filter(|c| !c.holds)
                    .map(|c| PropertyWFailure {
                        generator: c.s + 1,
                        element: c.w.to_string(),
                        value: c.value.to_string(),
                    })
                    .collect();
                (cases.len(), failures)
            },
        )
        .collect();
    PropertyWSection {
        weakly_complex_products: cases.iter().map(|(n, _)| n).sum(),
        failures: cases.into_iter().flat_map(|(_, f)| f).collect(),
    }
}

/// The c-basis contract for each element, b↔c unitriangularity, and
/// nonnegativity of c_x c_y for len(x) + len(y) ≤ `max_len`.
pub fn structure_constants(
    graph: &std::sync::Arc<fc_heaps::CoxeterGraph>,
    elements: &[FcElement],
    max_len: usize,
) -> CBasisSection {
    let per_element: Vec<(usize, Vec<CBasisViolation>)> = elements
        .par_iter()
        .map_init(
            || TlAlgebra::new(graph),
            |alg, x| {
                let mut bad = Vec::new();
                let mut pairs = 0;
                let mut fail = |kind: &str, detail: String| {
                    bad.push(CBasisViolation {
                        kind: kind.to_string(),
                        element: x.to_string(),
                        detail,
                    })
                };
                match alg.c_element(x) {
                    Ok(c) => {
                        for (y, p) in c.terms() {
                            let ok = if y == x { *p == LaurentPoly::one() } else { y < x && p.in_v_inverse_a_minus() };
                            if !ok {
                                fail("c-basis-coefficient", format!("{p} at t[{y}]"));
                            }
                        }
                        if let Err(e) = unitriangular(alg.expand_in_b_basis(&c), x) {
                            fail("c-in-b-basis", e);
                        }
                        if let Err(e) = unitriangular(alg.expand_in_c_basis(&alg.b_element(x)), x) {
                            fail("b-in-c-basis", e);
                        }
                    }
                    Err(e) => fail("c-basis-coefficient", e.to_string()),
                }
                for y in elements.iter().filter(|y| x.len() + y.len() <= max_len) {
                    pairs += 1;
                    match alg.c_structure_constants(x, y) {
                        Ok(table) if all_nonnegative(&table) => {}
                        Ok(table) => {
                            let (z, p) = table.iter().find(|(_, p)| !p.is_nonnegative()).expect("a negative entry");
                            fail("negative-structure-constant", format!("c[{x}] c[{y}] has {p} at c[{z}]"));
                        }
                        Err(e) => fail("negative-structure-constant", format!("c[{x}] c[{y}]: {e}")),
                    }
                }
                (pairs, bad)
            },
        )
        .collect();
    CBasisSection {
        elements: elements.len(),
        pairs: per_element.iter().map(|(n, _)| n).sum(),
        violations: per_element.into_iter().flat_map(|(_, v)| v).collect(),
    }
}

fn unitriangular(
    expansion: fc_heaps::Result<BTreeMap<FcElement, LaurentPoly>>,
    top: &FcElement,
) -> std::result::Result<(), String> {
    let expansion = expansion.map_err(|e| e.to_string())?;
    if expansion.get(top) != Some(&LaurentPoly::one()) {
        return Err(format!("diagonal entry is not 1 for {top}"));
    }
    for (y, p) in &expansion {
        if y > top {
            return Err(format!("entry above the diagonal at {y}"));
        }
        if p.min_degree() != p.max_degree() || p.min_degree().is_some_and(|d| d != 0) {
            return Err(format!("non-integral entry {p} at {y}"));
        }
    }
    Ok(())
}
