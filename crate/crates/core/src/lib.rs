//! Heaps of pieces for fully commutative elements of Coxeter groups: boundary
//! maps, star operations, and the generalized Temperley–Lieb algebra.

pub mod boundary;
pub mod coxeter;
pub mod error;
pub mod heap;
pub mod laurent;
pub mod linalg;
pub mod star;
pub mod tl;

pub use boundary::{BoundaryComplex, Edge, Verdict};
pub use coxeter::{format_word, Bond, CoxeterGraph, Family, Word};
pub use error::{Error, Result};
pub use heap::{Extremity, Heap, MultiplyStatus, Removal, Side, WeaklyComplexWitness};
pub use laurent::LaurentPoly;
pub use star::{enumerate_fc, enumerate_fc_levels, star_reduce_to_commuting, FcElement, StarStep};
pub use tl::{TlAlgebra, TlElement};
