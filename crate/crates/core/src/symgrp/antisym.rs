use std::collections::BTreeMap;

use super::Permutation;
use crate::error::{Error, Result};
use crate::exactlin::{kernel, SparseMatrix, Subspace};
use crate::freealg::{AssocPoly, Letter, LetterSet, LiePoly, SymLiePoly, TensorLiePoly};
use crate::rational::sign;
use crate::Rational;

/// Elements on which letter permutations act.
pub trait Relabel: Sized + Clone {
    fn letter_support(&self) -> LetterSet;
    fn relabeled(&self, map: &BTreeMap<Letter, Letter>) -> Result<Self>;
    fn add_multiple(&mut self, other: &Self, c: &Rational) -> Result<()>;
    fn zero_like(&self) -> Self;
}

impl Relabel for AssocPoly {
    fn letter_support(&self) -> LetterSet {
        self.support().clone()
    }
    fn relabeled(&self, map: &BTreeMap<Letter, Letter>) -> Result<Self> {
        self.relabel(map)
    }
    fn add_multiple(&mut self, other: &Self, c: &Rational) -> Result<()> {
        self.add_scaled(other, c);
        Ok(())
    }
    fn zero_like(&self) -> Self {
        AssocPoly::zero(self.support().clone())
    }
}

impl Relabel for LiePoly {
    fn letter_support(&self) -> LetterSet {
        self.support().clone()
    }
    fn relabeled(&self, map: &BTreeMap<Letter, Letter>) -> Result<Self> {
        self.relabel(map)
    }
    fn add_multiple(&mut self, other: &Self, c: &Rational) -> Result<()> {
        self.add_scaled(other, c)
    }
    fn zero_like(&self) -> Self {
        LiePoly::zero(self.support().clone())
    }
}

impl Relabel for SymLiePoly {
    fn letter_support(&self) -> LetterSet {
        self.support().clone()
    }
    fn relabeled(&self, map: &BTreeMap<Letter, Letter>) -> Result<Self> {
        self.relabel(map)
    }
    fn add_multiple(&mut self, other: &Self, c: &Rational) -> Result<()> {
        self.add_scaled(other, c)
    }
    fn zero_like(&self) -> Self {
        SymLiePoly::zero(self.support().clone())
    }
}

impl Relabel for TensorLiePoly {
    fn letter_support(&self) -> LetterSet {
        self.support().clone()
    }
    fn relabeled(&self, map: &BTreeMap<Letter, Letter>) -> Result<Self> {
        self.relabel(map)
    }
    fn add_multiple(&mut self, other: &Self, c: &Rational) -> Result<()> {
        self.add_scaled(other, c)
    }
    fn zero_like(&self) -> Self {
        TensorLiePoly::zero(self.support().clone(), self.arity())
    }
}

/// `Σ_σ ε(σ) σ·x` over permutations of `letters` (unnormalized).
pub fn antisymmetrize<T: Relabel>(x: &T, letters: &[Letter]) -> Result<T> {
    let support = x.letter_support();
    let outside: Vec<Letter> = letters.iter().copied().filter(|&l| !support.contains(l)).collect();
    if !outside.is_empty() {
        return Err(Error::LettersOutsideSupport(outside));
    }
    let mut acc = x.zero_like();
    for s in Permutation::all(letters.len()) {
        let y = x.relabeled(&s.letter_map(letters))?;
        acc.add_multiple(&y, &sign(s.sign()))?;
    }
    Ok(acc)
}

fn adjacent(n: usize, i: usize) -> Permutation {
    Permutation::transposition(n, i, i + 1).expect("adjacent transposition")
}

/// Checks the Coxeter relations on the adjacent transpositions and
/// multiplicativity on a few fixed products.
fn check_representation<F>(n: usize, dim: usize, rho: &F) -> Result<Vec<SparseMatrix>>
where
    F: Fn(&Permutation) -> Result<SparseMatrix>,
{
    let eval = |p: &Permutation| -> Result<SparseMatrix> {
        let m = rho(p)?;
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::ShapeMismatch(format!(
                "matrix of {p} is {}x{}, expected {dim}x{dim}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(m)
    };
    let id = SparseMatrix::identity(dim);
    if eval(&Permutation::identity(n))? != id {
        return Err(Error::NotRepresentation("identity does not act trivially".into()));
    }
    let gens: Vec<SparseMatrix> = (1..n).map(|i| eval(&adjacent(n, i))).collect::<Result<_>>()?;
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let order = match j - i {
                0 => 1,
                1 => 3,
                _ => 2,
            };
            let prod = gens[i].mul(&gens[j])?;
            let mut pow = id.clone();
            for _ in 0..order {
                pow = pow.mul(&prod)?;
            }
            if pow != id {
                return Err(Error::NotRepresentation(format!(
                    "(s_{} s_{})^{order} acts nontrivially",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if n >= 2 {
        let long: Vec<usize> = (1..=n).collect();
        let cycle = Permutation::from_cycles(n, &[long])?;
        let pairs = [(cycle.clone(), adjacent(n, 1)), (adjacent(n, n - 1), cycle.clone()), (cycle.clone(), cycle)];
        for (a, b) in pairs {
            if eval(&a.compose(&b))? != eval(&a)?.mul(&eval(&b)?)? {
                return Err(Error::NotRepresentation(format!("ρ({a}∘{b}) ≠ ρ({a})ρ({b})")));
            }
        }
    }
    Ok(gens)
}

/// Basis of the subspace of `Q^dim` on which every permutation acts by its
/// sign, for a representation `rho` of `S_n`. The subspace is the common
/// kernel of `ρ(s_i) + 1` over the adjacent transpositions `s_i`.
pub fn antiinvariant_basis<F>(n: usize, dim: usize, rho: F) -> Result<Subspace>
where
    F: Fn(&Permutation) -> Result<SparseMatrix>,
{
    let gens = check_representation(n, dim, &rho)?;
    if gens.is_empty() {
        return Ok(Subspace::full(dim));
    }
    let id = SparseMatrix::identity(dim);
    let mut triplets = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        for (r, c, v) in g.add(&id)?.triplets() {
            triplets.push((k * dim + r, c, v.clone()));
        }
    }
    let stacked = SparseMatrix::from_triplets(gens.len() * dim, dim, triplets)?;
    Subspace::span(dim, kernel(&stacked))
}
