//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are stored column-major because every matrix built in this crate
//! is the matrix of a linear map computed one basis vector at a time: column
//! `j` is the image of source basis vector `j` in target coordinates.

mod complex;
mod elim;
mod subspace;

pub use complex::{check_chain_map, homology, ComplexWindow, DegreeStats, Direction, HomologyProfile};
pub use elim::{kernel, rank};
pub use subspace::Subspace;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Sparse vector: `(index, value)` pairs, sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Builds a normalized sparse vector from possibly repeated entries.
pub fn sparse_vec<I: IntoIterator<Item = (usize, Rational)>>(entries: I) -> SparseVec {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, c) in entries {
        *acc.entry(i).or_insert_with(Rational::zero) += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        SparseMatrix { rows: n, cols: n, columns }
    }

    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut per_col: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            per_col[c].push((r, v));
        }
        Ok(SparseMatrix { rows, cols, columns: per_col.into_iter().map(sparse_vec).collect() })
    }

    /// Builds a matrix from its columns, which are normalized.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        let cols = columns.len();
        let columns: Vec<SparseVec> = columns.into_iter().map(sparse_vec).collect();
        if let Some(r) = columns.iter().flat_map(|c| c.iter().map(|(r, _)| *r)).find(|&r| r >= rows) {
            return Err(Error::ShapeMismatch(format!("row index {r} outside {rows} rows")));
        }
        Ok(SparseMatrix { rows, cols, columns })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let entries = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, &v)| (r, c, crate::rational::int(v)))
        });
        Self::from_triplets(nrows, ncols, entries).expect("dense input is in range")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.columns[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Entries as `(row, col, value)`, column by column.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let entries = self.triplets().map(|(r, c, v)| (c, r, v.clone()));
        SparseMatrix::from_triplets(self.cols, self.rows, entries).expect("transpose stays in range")
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        if c.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, v * c)).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| sparse_vec(a.iter().cloned().chain(b.iter().cloned())))
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, columns })
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        sparse_vec(
            v.iter()
                .flat_map(|(j, x)| self.columns[*j].iter().map(move |(r, a)| (*r, a * x))),
        )
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other.columns.iter().map(|col| self.mul_vec(col)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, columns })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut columns = self.columns.clone();
        columns.extend(
            other
                .columns
                .iter()
                .map(|col| col.iter().map(|(r, v)| (r + self.rows, v.clone())).collect()),
        );
        SparseMatrix { rows: self.rows + other.rows, cols: self.cols + other.cols, columns }
    }

    /// Kronecker product; row/column `(i, k)` maps to `i * other.dim + k`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        col.push((i * other.rows + k, x * y));
                    }
                }
                columns.push(col);
            }
        }
        SparseMatrix { rows: self.rows * other.rows, cols: self.cols * other.cols, columns }
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Plain-text dump: a `rows cols nnz` header, then one
    /// `row col value` line per entry (1-based indices, values `n` or `n/d`).
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for (r, c, v) in self.triplets() {
            let _ = writeln!(out, "{} {} {}", r + 1, c + 1, crate::rational::format(v));
        }
        out
    }

    /// Parses the output of [`SparseMatrix::dump`].
    pub fn parse_dump(s: &str) -> Result<SparseMatrix> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let bad = |l: &str| Error::Parse(format!("bad matrix line '{l}'"));
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix dump".into()))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(header)))
            .collect::<Result<_>>()?;
        if h.len() != 3 {
            return Err(bad(header));
        }
        let mut entries = Vec::with_capacity(h[2]);
        for l in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 3 {
                return Err(bad(l));
            }
            let r: usize = t[0].parse().map_err(|_| bad(l))?;
            let c: usize = t[1].parse().map_err(|_| bad(l))?;
            if r == 0 || c == 0 {
                return Err(bad(l));
            }
            entries.push((r - 1, c - 1, crate::rational::parse(t[2])?));
        }
        if entries.len() != h[2] {
            return Err(Error::Parse(format!("expected {} entries, found {}", h[2], entries.len())));
        }
        SparseMatrix::from_triplets(h[0], h[1], entries)
    }
}
