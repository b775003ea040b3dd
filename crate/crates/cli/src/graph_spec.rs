//! Resolving `--graph` arguments: `family:B5` or a path to a definition file.

use std::str::FromStr;
use std::sync::Arc;

use fc_heaps::{CoxeterGraph, Family};
use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Clone, Debug)]
pub enum GraphSource {
    Family(Family),
    File(String),
}

impl FromStr for GraphSource {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.strip_prefix("family:") {
            Some(name) => Ok(GraphSource::Family(name.parse()?)),
            None if s.is_empty() => Err(CliError::Usage("empty graph argument".into())),
            None => Ok(GraphSource::File(s.to_string())),
        }
    }
}

impl GraphSource {
    pub fn load(&self) -> Result<LoadedGraph> {
        match self {
            GraphSource::Family(f) => Ok(LoadedGraph {
                label: format!("family:{f}"),
                family: Some(*f),
                graph: Arc::new(f.build()?),
            }),
            GraphSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                let graph = CoxeterGraph::parse_definition(&text)?;
                Ok(LoadedGraph {
                    label: path.clone(),
                    family: None,
                    graph: Arc::new(graph),
                })
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub label: String,
    pub family: Option<Family>,
    pub graph: Arc<CoxeterGraph>,
}

/// The graph as it appears in reports, with 1-based generator indices.
#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub source: String,
    pub rank: usize,
    pub bonds: Vec<(usize, usize, String)>,
    pub bipartite: bool,
}

impl LoadedGraph {
    pub fn summary(&self) -> GraphSummary {
        let g = &self.graph;
        GraphSummary {
            source: self.label.clone(),
            rank: g.rank(),
            bonds: g
                .edges()
                .into_iter()
                .map(|(s, t)| (s + 1, t + 1, g.m(s, t).to_string()))
                .collect(),
            bipartite: g.is_bipartite(),
        }
    }
}
