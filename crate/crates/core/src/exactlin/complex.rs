use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SparseMatrix;
use crate::error::{Error, Result};

/// Whether differentials raise (`Up`, cochain) or lower (`Down`, chain)
/// the degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Down,
}

/// Consecutive degrees `start, start+1, ...` of a based complex.
///
/// `maps[i]` connects the spaces at positions `i` and `i+1`: from `i` to
/// `i+1` when the direction is `Up`, from `i+1` to `i` when it is `Down`.
/// `lower_closed` (resp. `upper_closed`) records that the complex is zero
/// below the first (resp. above the last) degree of the window, so the
/// corresponding edge degree has a known neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexWindow {
    pub start: i64,
    pub direction: Direction,
    pub labels: Vec<Vec<String>>,
    pub maps: Vec<SparseMatrix>,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub p: i64,
    pub dim: usize,
    /// Rank of the differential arriving at this degree.
    pub rank_in: usize,
    /// Rank of the differential leaving this degree.
    pub rank_out: usize,
    pub betti: usize,
    /// False when a neighbouring differential lies outside the window, in
    /// which case `betti` is only an upper bound.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub degrees: Vec<DegreeStats>,
}

impl HomologyProfile {
    pub fn betti(&self, p: i64) -> Option<usize> {
        self.degrees.iter().find(|d| d.p == p).map(|d| d.betti)
    }

    pub fn complete_degrees(&self) -> impl Iterator<Item = &DegreeStats> {
        self.degrees.iter().filter(|d| d.complete)
    }

    /// True when every complete degree has zero homology.
    pub fn is_acyclic(&self) -> bool {
        self.complete_degrees().all(|d| d.betti == 0)
    }

    /// Betti numbers of the complete degrees, as `(p, betti)`.
    pub fn complete_betti(&self) -> Vec<(i64, usize)> {
        self.complete_degrees().map(|d| (d.p, d.betti)).collect()
    }
}

impl ComplexWindow {
    /// Builds a window and checks that matrix shapes match the bases.
    pub fn new(
        start: i64,
        direction: Direction,
        labels: Vec<Vec<String>>,
        maps: Vec<SparseMatrix>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Result<Self> {
        let w = ComplexWindow { start, direction, labels, maps, lower_closed, upper_closed };
        w.check_shapes()?;
        Ok(w)
    }

    /// A window with generated labels `"b0", "b1", ...`.
    pub fn from_dims(
        start: i64,
        direction: Direction,
        dims: &[usize],
        maps: Vec<SparseMatrix>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Result<Self> {
        let labels = dims.iter().map(|&d| (0..d).map(|i| format!("b{i}")).collect()).collect();
        Self::new(start, direction, labels, maps, lower_closed, upper_closed)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn dim_at(&self, p: i64) -> Option<usize> {
        self.position(p).map(|i| self.labels[i].len())
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.len() as i64).map(move |i| self.start + i)
    }

    fn position(&self, p: i64) -> Option<usize> {
        let i = p - self.start;
        (i >= 0 && (i as usize) < self.len()).then_some(i as usize)
    }

    fn check_shapes(&self) -> Result<()> {
        if self.maps.len() + 1 != self.len() && !(self.is_empty() && self.maps.is_empty()) {
            return Err(Error::ShapeMismatch(format!(
                "{} spaces need {} maps, got {}",
                self.len(),
                self.len().saturating_sub(1),
                self.maps.len()
            )));
        }
        for (i, m) in self.maps.iter().enumerate() {
            let (src, tgt) = match self.direction {
                Direction::Up => (self.labels[i].len(), self.labels[i + 1].len()),
                Direction::Down => (self.labels[i + 1].len(), self.labels[i].len()),
            };
            if m.cols() != src || m.rows() != tgt {
                return Err(Error::ShapeMismatch(format!(
                    "map at degree {} is {}x{}, expected {}x{}",
                    self.start + i as i64,
                    m.rows(),
                    m.cols(),
                    tgt,
                    src
                )));
            }
        }
        Ok(())
    }

    /// Checks `d∘d = 0` for every pair of consecutive maps.
    pub fn check_complex(&self) -> Result<()> {
        self.check_shapes()?;
        for i in 0..self.maps.len().saturating_sub(1) {
            let dd = match self.direction {
                Direction::Up => self.maps[i + 1].mul(&self.maps[i])?,
                Direction::Down => self.maps[i].mul(&self.maps[i + 1])?,
            };
            if !dd.is_zero() {
                let degree = match self.direction {
                    Direction::Up => self.start + i as i64,
                    Direction::Down => self.start + i as i64 + 2,
                };
                return Err(Error::NotAComplex { degree });
            }
        }
        Ok(())
    }

    /// Restricts to degrees `lo..=hi` (clamped to the window).
    pub fn truncate(&self, lo: i64, hi: i64) -> ComplexWindow {
        let lo = lo.max(self.start);
        let hi = hi.min(self.start + self.len() as i64 - 1);
        if lo > hi {
            return ComplexWindow { start: lo, direction: self.direction, labels: vec![], maps: vec![], lower_closed: false, upper_closed: false };
        }
        let (a, b) = ((lo - self.start) as usize, (hi - self.start) as usize);
        ComplexWindow {
            start: lo,
            direction: self.direction,
            labels: self.labels[a..=b].to_vec(),
            maps: self.maps[a..b].to_vec(),
            lower_closed: self.lower_closed && a == 0,
            upper_closed: self.upper_closed && b + 1 == self.len(),
        }
    }

    /// Text dump: each degree's basis labels followed by the matrices.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, labels) in self.labels.iter().enumerate() {
            out.push_str(&format!("# degree {} dim {}\n", self.start + i as i64, labels.len()));
            for l in labels {
                out.push_str(l);
                out.push('\n');
            }
        }
        for (i, m) in self.maps.iter().enumerate() {
            let (s, t) = match self.direction {
                Direction::Up => (self.start + i as i64, self.start + i as i64 + 1),
                Direction::Down => (self.start + i as i64 + 1, self.start + i as i64),
            };
            out.push_str(&format!("# map {s} -> {t}\n"));
            out.push_str(&m.dump());
        }
        out
    }
}

/// Betti numbers of every degree in the window. Fails with
/// [`Error::NotAComplex`] if `d∘d ≠ 0` somewhere.
pub fn homology(w: &ComplexWindow) -> Result<HomologyProfile> {
    w.check_complex()?;
    let ranks: Vec<usize> = w.maps.par_iter().map(SparseMatrix::rank).collect();
    let n = w.len();
    let mut degrees = Vec::with_capacity(n);
    for i in 0..n {
        // maps[i-1] and maps[i] touch position i; which one is incoming
        // depends on the direction.
        let below = (i > 0).then(|| ranks[i - 1]);
        let above = (i + 1 < n).then(|| ranks[i]);
        let below = below.or(if w.lower_closed { Some(0) } else { None });
        let above = above.or(if w.upper_closed { Some(0) } else { None });
        let (rin, rout) = match w.direction {
            Direction::Up => (below, above),
            Direction::Down => (above, below),
        };
        let dim = w.labels[i].len();
        let rank_in = rin.unwrap_or(0);
        let rank_out = rout.unwrap_or(0);
        degrees.push(DegreeStats {
            p: w.start + i as i64,
            dim,
            rank_in,
            rank_out,
            betti: dim - rank_in - rank_out,
            complete: rin.is_some() && rout.is_some(),
        });
    }
    Ok(HomologyProfile { degrees })
}

/// Whether `f` (one matrix per degree, from `w1` to `w2`) commutes with the
/// differentials at every degree of the windows.
pub fn check_chain_map(f: &[SparseMatrix], w1: &ComplexWindow, w2: &ComplexWindow) -> Result<bool> {
    if w1.start != w2.start || w1.len() != w2.len() || w1.direction != w2.direction || f.len() != w1.len() {
        return Err(Error::ShapeMismatch(format!(
            "windows [{}; {}] and [{}; {}] with {} maps are not comparable",
            w1.start,
            w1.len(),
            w2.start,
            w2.len(),
            f.len()
        )));
    }
    for (i, fi) in f.iter().enumerate() {
        if fi.cols() != w1.labels[i].len() || fi.rows() != w2.labels[i].len() {
            return Err(Error::ShapeMismatch(format!(
                "chain map at degree {} is {}x{}, expected {}x{}",
                w1.start + i as i64,
                fi.rows(),
                fi.cols(),
                w2.labels[i].len(),
                w1.labels[i].len()
            )));
        }
    }
    for i in 0..w1.maps.len() {
        let (lhs, rhs) = match w1.direction {
            Direction::Up => (f[i + 1].mul(&w1.maps[i])?, w2.maps[i].mul(&f[i])?),
            Direction::Down => (f[i].mul(&w1.maps[i])?, w2.maps[i].mul(&f[i + 1])?),
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn one_by_one(x: i64) -> SparseMatrix {
        SparseMatrix::from_dense(&[vec![x]])
    }

    fn two_term(x: i64) -> ComplexWindow {
        ComplexWindow::from_dims(0, Direction::Up, &[1, 1], vec![one_by_one(x)], true, true).unwrap()
    }

    #[test]
    fn isomorphism_is_acyclic() {
        let h = homology(&two_term(1)).unwrap();
        assert_eq!(h.complete_betti(), vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn zero_map_keeps_everything() {
        let h = homology(&two_term(0)).unwrap();
        assert_eq!(h.complete_betti(), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn open_edges_are_incomplete() {
        let w = ComplexWindow::from_dims(3, Direction::Down, &[1, 1], vec![one_by_one(1)], false, false).unwrap();
        let h = homology(&w).unwrap();
        assert!(h.degrees.iter().all(|d| !d.complete));
    }

    #[test]
    fn non_complex_is_rejected() {
        let m = one_by_one(1);
        let w = ComplexWindow::from_dims(0, Direction::Up, &[1, 1, 1], vec![m.clone(), m], true, true).unwrap();
        assert_eq!(homology(&w), Err(Error::NotAComplex { degree: 0 }));
    }

    #[test]
    fn shape_errors() {
        assert!(ComplexWindow::from_dims(0, Direction::Up, &[2, 1], vec![one_by_one(1)], true, true).is_err());
    }

    #[test]
    fn chain_maps() {
        let w = two_term(1);
        let id = vec![SparseMatrix::identity(1), SparseMatrix::identity(1)];
        assert!(check_chain_map(&id, &w, &w).unwrap());
        let two: Vec<_> = id.iter().map(|m| m.scale(&int(2))).collect();
        assert!(check_chain_map(&two, &w, &w).unwrap());
        // swapping two basis vectors against a differential that tells them apart
        let d = SparseMatrix::from_dense(&[vec![1, 0]]);
        let w2 = ComplexWindow::from_dims(0, Direction::Up, &[2, 1], vec![d], true, true).unwrap();
        let swap = vec![SparseMatrix::from_dense(&[vec![0, 1], vec![1, 0]]), SparseMatrix::identity(1)];
        assert!(!check_chain_map(&swap, &w2, &w2).unwrap());
    }
}
