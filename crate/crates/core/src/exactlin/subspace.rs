use num_traits::{One, Zero};

use super::{sparse_vec, SparseVec};
use crate::error::{Error, Result};
use crate::Rational;

/// A subspace of `Q^n` with a basis in reduced echelon form: basis vector
/// `k` has a 1 at `pivots[k]` and 0 at every other pivot, so coordinates of a
/// member are its entries at the pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

fn entry(v: &SparseVec, i: usize) -> Option<&Rational> {
    v.binary_search_by_key(&i, |(k, _)| *k).ok().map(|k| &v[k].1)
}

/// `x - c*y`.
fn axpy(x: &SparseVec, c: &Rational, y: &SparseVec) -> SparseVec {
    sparse_vec(x.iter().cloned().chain(y.iter().map(|(i, v)| (*i, -(v * c)))))
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| vec![(i, Rational::one())]).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span<I: IntoIterator<Item = SparseVec>>(ambient: usize, vectors: I) -> Result<Self> {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors, ordered by pivot.
    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if let Some(c) = entry(&r, p).cloned() {
                r = axpy(&r, &c, b);
            }
        }
        r
    }

    /// Adds a vector to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> Result<bool> {
        if let Some((i, _)) = v.iter().find(|(i, _)| *i >= self.ambient) {
            return Err(Error::ShapeMismatch(format!("index {i} outside dimension {}", self.ambient)));
        }
        let r = self.reduce(&sparse_vec(v));
        if r.is_empty() {
            return Ok(false);
        }
        let (p, lead) = r[0].clone();
        let inv = Rational::one() / lead;
        let r: SparseVec = r.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        for b in &mut self.basis {
            if let Some(c) = entry(b, p).cloned() {
                *b = axpy(b, &c, &r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.basis.insert(pos, r);
        Ok(true)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` in the echelon basis.
    pub fn coords(&self, v: &SparseVec) -> Result<Vec<Rational>> {
        let c: Vec<Rational> = self
            .pivots
            .iter()
            .map(|&p| entry(v, p).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let mut residual = v.clone();
        for (b, x) in self.basis.iter().zip(&c) {
            if !x.is_zero() {
                residual = axpy(&residual, x, b);
            }
        }
        if !residual.is_empty() {
            return Err(Error::NotInSubspace(format!(
                "{} nonzero residual entries, first at index {}",
                residual.len(),
                residual[0].0
            )));
        }
        Ok(c)
    }

    /// Coordinates as a sparse vector.
    pub fn sparse_coords(&self, v: &SparseVec) -> Result<SparseVec> {
        Ok(self.coords(v)?.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn echelon_coordinates() {
        let s = Subspace::span(3, vec![vec![(0, int(1)), (1, int(-1))], vec![(0, int(2)), (1, int(-2))]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.coords(&vec![(0, int(3)), (1, int(-3))]).unwrap(), vec![int(3)]);
        assert!(s.coords(&vec![(0, int(1))]).is_err());
        assert!(!s.contains(&vec![(2, int(1))]));
    }

    #[test]
    fn full_space() {
        let s = Subspace::span(2, vec![vec![(0, int(1)), (1, int(1))], vec![(1, int(2))]]).unwrap();
        assert_eq!(s, Subspace::full(2));
    }
}
