//! Exact row reduction over the rationals.
//!
//! `RowSpace` keeps a fully reduced echelon basis of the span of the vectors
//! inserted so far, together with each basis row's expression in terms of the
//! inserted vectors, so membership tests can also return a preimage.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug)]
struct BasisRow {
    pivot: usize,
    vector: Vec<Q>,
    /// Coefficients of the inserted generators producing `vector`.
    combination: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct RowSpace {
    dim: usize,
    generators: usize,
    rows: Vec<BasisRow>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            generators: 0,
            rows: Vec::new(),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<Q>>>(dim: usize, vectors: I) -> Self {
        let mut space = Self::new(dim);
        for v in vectors {
            space.insert(v);
        }
        space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted, including dependent ones.
    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Eliminates `vector` against the basis; returns the residual and the
    /// combination of generators that was subtracted.
    fn eliminate(&self, mut vector: Vec<Q>) -> (Vec<Q>, Vec<Q>) {
        assert_eq!(vector.len(), self.dim, "vector length mismatch");
        let mut used = vec![Q::zero(); self.generators];
        for row in &self.rows {
            let c = vector[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in vector.iter_mut().zip(&row.vector) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
            for (u, r) in used.iter_mut().zip(&row.combination) {
                if !r.is_zero() {
                    *u += &c * r;
                }
            }
        }
        (vector, used)
    }

    /// Adds a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, vector: Vec<Q>) -> bool {
        let index = self.generators;
        self.generators += 1;
        for row in &mut self.rows {
            row.combination.push(Q::zero());
        }
        let (mut residual, used) = self.eliminate(vector);
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let mut combination: Vec<Q> = used.into_iter().map(|x| -x).collect();
        combination[index] = Q::one();
        let inv = residual[pivot].recip();
        for x in residual.iter_mut() {
            *x *= &inv;
        }
        for x in combination.iter_mut() {
            *x *= &inv;
        }
        for row in &mut self.rows {
            let c = row.vector[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in row.vector.iter_mut().zip(&residual) {
                *x -= &c * r;
            }
            for (x, r) in row.combination.iter_mut().zip(&combination) {
                *x -= &c * r;
            }
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(
            at,
            BasisRow {
                pivot,
                vector: residual,
                combination,
            },
        );
        true
    }

    pub fn contains(&self, vector: &[Q]) -> bool {
        self.eliminate(vector.to_vec()).0.iter().all(Zero::is_zero)
    }

    /// Coefficients `x` over the inserted vectors with Σ xᵢ gᵢ = `vector`.
    pub fn solve(&self, vector: &[Q]) -> Option<Vec<Q>> {
        let (residual, used) = self.eliminate(vector.to_vec());
        residual.iter().all(Zero::is_zero).then_some(used)
    }

    /// Unit vector `e_i` of the ambient space.
    pub fn unit(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(vec_of(&[1, 1, 0])));
        assert!(s.insert(vec_of(&[0, 1, 1])));
        assert!(!s.insert(vec_of(&[1, 2, 1])));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&vec_of(&[1, 0, -1])));
        assert!(!s.contains(&vec_of(&[1, 0, 0])));
    }

    #[test]
    fn solve_returns_a_preimage() {
        let gens = [vec_of(&[1, 0, 0]), vec_of(&[1, 1, 0]), vec_of(&[0, 1, 1])];
        let s = RowSpace::from_vectors(3, gens.clone());
        let x = s.solve(&vec_of(&[0, 1, 0])).unwrap();
        let mut back = vec![Q::zero(); 3];
        for (c, g) in x.iter().zip(&gens) {
            for (b, gi) in back.iter_mut().zip(g) {
                *b += c * gi;
            }
        }
        assert_eq!(back, vec_of(&[0, 1, 0]));
        assert_eq!(x, vec_of(&[-1, 1, 0]));
    }

    #[test]
    fn dependent_generators_keep_indices() {
        let s = RowSpace::from_vectors(2, [vec_of(&[2, 0]), vec_of(&[4, 0]), vec_of(&[0, 3])]);
        assert_eq!(s.generators(), 3);
        let x = s.solve(&vec_of(&[2, 3])).unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x[1], q(0));
        assert!(s.solve(&vec_of(&[0, 0])).is_some());
    }
}
