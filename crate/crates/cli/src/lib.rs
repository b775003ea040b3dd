//! Verification campaigns over FC heaps, boundary maps and Temperley–Lieb
//! bases, and the `fcheaps` command line front end.

pub mod campaign;
pub mod error;
pub mod forbidden;
pub mod graph_spec;
pub mod lemmas;
pub mod reconstruct;
pub mod report;

pub use error::{CliError, Result};
