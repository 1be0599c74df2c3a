//! The Lie-side complexes `C^•_{z,N,q}`: antiinvariants of the multilinear
//! part of `L(a_1, .., a_{z+N}, x_1, .., x_{p'})^{⊗q}`.
//!
//! For `q = 1` and `z+N ≥ 1` every basis word is anchored at `a_1`, so the
//! `x`-permutations act on tails by relabeling, monomially, and the orbit
//! engine applies. Otherwise the antiinvariants are cut out of the full
//! tensor space as the kernel of `ρ(s_i) + 1`.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::assoc_side::VERIFY_LEVEL;
use super::tensor::{direct_sum, tensor_complexes};
use super::words::{add_word, insert_commutator, orbit_matrix, pair_terms, pm, relabel_x, remaining, Comb, OrbitBasis};
use super::{word_label, PWindow};
use crate::error::{Error, Result};
use crate::exactlin::{homology, ComplexWindow, Direction, SparseMatrix, SparseVec, Subspace};
use crate::freealg::{Letter, LetterSet, LiePoly, LieWord, TensorLiePoly};
use crate::rational::sign;
use crate::symgrp::{antiinvariant_basis, ordered_set_partitions, Permutation};
use crate::Rational;

/// Largest tensor power built directly.
pub const MAX_DIRECT_Q: usize = 3;

/// The differential on tails `u` of `[a_1, u]`.
fn d_c(w: &[Letter], z: usize, n: usize, p: usize, out: &mut Comb) -> Result<()> {
    let base = n as Letter;
    pair_terms(w, base, p, out)?;
    if z == 0 {
        return Ok(());
    }
    for i in 1..=p + 1 {
        let s = pm(i + 1);
        let r = relabel_x(w, base, &remaining(p + 1, &[i]));
        let xi = base + i as Letter;
        // a_1 ↦ [x_i, a_1] = -[a_1, x_i]
        let mut t = Vec::with_capacity(r.len() + 1);
        t.push(xi);
        t.extend_from_slice(&r);
        add_word(out, t, -s)?;
        for zp in 2..=z as Letter {
            if let Some(pos) = r.iter().position(|&l| l == zp) {
                insert_commutator(&r, pos, xi, zp, s, out)?;
            }
        }
    }
    Ok(())
}

/// `C^•_{z,N,1}` on tails, for `z+N ≥ 1` (here `z = 0` is allowed).
pub(crate) fn c_orbit_complex(z: usize, big_n: usize, window: PWindow) -> Result<(Vec<OrbitBasis>, ComplexWindow)> {
    let n = z + big_n;
    if n == 0 {
        return Err(Error::InvalidParameters("the tail construction needs z+N ≥ 1".into()));
    }
    let fixed: Vec<Letter> = (2..=n as Letter).collect();
    let bases: Vec<OrbitBasis> = window.degrees().map(|p| OrbitBasis::new(&fixed, n as Letter, p, &|_| true)).collect();
    let mut maps = Vec::new();
    for (k, p) in (window.pmin..window.pmax).enumerate() {
        maps.push(orbit_matrix(&bases[k], &bases[k + 1], |w, out| d_c(w, z, n, p, out), p < VERIFY_LEVEL)?);
    }
    let labels = bases
        .iter()
        .map(|b| b.reps().iter().map(|r| format!("[a1|{}]", word_label(r, n as Letter))).collect())
        .collect();
    let w = ComplexWindow::new(window.pmin as i64, Direction::Up, labels, maps, window.pmin == 0, false)?;
    Ok((bases, w))
}

/// Basis of the multilinear part of `L^{⊗q}` on a letter set: ordered
/// partitions into `q` nonempty blocks, each carrying a Lie basis word.
struct TensorSpace {
    tuples: Vec<Vec<LieWord>>,
    index: HashMap<Vec<LieWord>, usize>,
}

fn lie_words(block: &[Letter]) -> Vec<LieWord> {
    let (anchor, rest) = block.split_first().expect("nonempty block");
    Permutation::all(rest.len())
        .iter()
        .map(|s| LieWord::new(*anchor, s.one_line().iter().map(|&i| rest[i - 1]).collect()).expect("anchor is minimal"))
        .collect()
}

impl TensorSpace {
    fn new(letters: &[Letter], q: usize) -> Self {
        let mut tuples = Vec::new();
        for part in ordered_set_partitions(letters, q, false) {
            let mut acc: Vec<Vec<LieWord>> = vec![Vec::new()];
            for block in part.blocks() {
                let words = lie_words(block);
                acc = acc
                    .into_iter()
                    .flat_map(|t| {
                        words.iter().map(move |w| {
                            let mut t = t.clone();
                            t.push(w.clone());
                            t
                        })
                    })
                    .collect();
            }
            tuples.extend(acc);
        }
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        TensorSpace { tuples, index }
    }

    fn dim(&self) -> usize {
        self.tuples.len()
    }

    fn coords(&self, t: &TensorLiePoly) -> Result<SparseVec> {
        let mut v: SparseVec = t
            .terms()
            .iter()
            .map(|(k, c)| {
                self.index
                    .get(k)
                    .map(|&i| (i, c.clone()))
                    .ok_or_else(|| Error::ShapeMismatch(format!("tensor term {k:?} outside the basis")))
            })
            .collect::<Result<_>>()?;
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    fn element(&self, v: &SparseVec, support: LetterSet, q: usize) -> Result<TensorLiePoly> {
        let mut out = TensorLiePoly::zero(support, q);
        for (i, c) in v {
            out.add_scaled(&TensorLiePoly::basis(self.tuples[*i].clone(), Rational::one())?, c)?;
        }
        Ok(out)
    }
}

fn all_letters(n: usize, p: usize) -> Vec<Letter> {
    (1..=(n + p) as Letter).collect()
}

fn x_letters(n: usize, p: usize) -> Vec<Letter> {
    ((n + 1) as Letter..=(n + p) as Letter).collect()
}

fn generic_level(n: usize, q: usize, p: usize) -> Result<(TensorSpace, Subspace)> {
    let space = TensorSpace::new(&all_letters(n, p), q);
    let xs = x_letters(n, p);
    let sub = antiinvariant_basis(p, space.dim(), |s: &Permutation| {
        let map = s.letter_map(&xs);
        let columns = space
            .tuples
            .iter()
            .map(|t| space.coords(&TensorLiePoly::basis(t.clone(), Rational::one())?.relabel(&map)?))
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::from_columns(space.dim(), columns)
    })?;
    Ok((space, sub))
}

/// The differential `F ↦ dF` from degree `p` to `p+1`, by substitution:
/// `Σ_{i<j} (-1)^{i+j+1} F(x_1 ↦ [x_i, x_j], x_k ↦ x_{rest(k-1)})` plus
/// `Σ_i Σ_{z' ≤ z} (-1)^{i+1} F(a_{z'} ↦ [x_i, a_{z'}], x_k ↦ x_{rest(k)})`.
pub fn c_differential_generic(f: &TensorLiePoly, z: usize, big_n: usize, p: usize) -> Result<TensorLiePoly> {
    let n = z + big_n;
    let expected = LetterSet::from_letters(all_letters(n, p));
    if *f.support() != expected {
        return Err(Error::ShapeMismatch(format!(
            "support {:?} is not [1, {}]",
            f.support().letters(),
            n + p
        )));
    }
    let x = |k: usize| (n + k) as Letter;
    let gen = |l: Letter| LiePoly::generator(l);
    let mut out = TensorLiePoly::zero(LetterSet::from_letters(all_letters(n, p + 1)), f.arity());
    for i in 1..=p + 1 {
        for j in i + 1..=p + 1 {
            let rest = remaining(p + 1, &[i, j]);
            let mut subst = BTreeMap::new();
            subst.insert(x(1), gen(x(i)).bracket(&gen(x(j)))?);
            for k in 2..=p {
                subst.insert(x(k), gen(x(rest[k - 2])));
            }
            out.add_scaled(&f.substitute(&subst)?, &sign(pm(i + j + 1)))?;
        }
    }
    for i in 1..=p + 1 {
        let rest = remaining(p + 1, &[i]);
        for zp in 1..=z as Letter {
            let mut subst = BTreeMap::new();
            subst.insert(zp, gen(x(i)).bracket(&gen(zp))?);
            for k in 1..=p {
                subst.insert(x(k), gen(x(rest[k - 1])));
            }
            out.add_scaled(&f.substitute(&subst)?, &sign(pm(i + 1)))?;
        }
    }
    Ok(out)
}

fn generic_window(z: usize, big_n: usize, q: usize, window: PWindow) -> Result<ComplexWindow> {
    let n = z + big_n;
    let levels: Vec<(TensorSpace, Subspace)> = window.degrees().map(|p| generic_level(n, q, p)).collect::<Result<_>>()?;
    let mut maps = Vec::new();
    for (k, p) in (window.pmin..window.pmax).enumerate() {
        let (src_space, src) = &levels[k];
        let (tgt_space, tgt) = &levels[k + 1];
        let support = LetterSet::from_letters(all_letters(n, p));
        let mut columns = Vec::with_capacity(src.dim());
        for b in src.basis() {
            let f = src_space.element(b, support.clone(), q)?;
            let df = c_differential_generic(&f, z, big_n, p)?;
            columns.push(tgt.sparse_coords(&tgt_space.coords(&df)?)?);
        }
        maps.push(SparseMatrix::from_columns(tgt.dim(), columns)?);
    }
    let labels = levels
        .iter()
        .map(|(space, sub)| {
            sub.pivots()
                .iter()
                .map(|&i| space.tuples[i].iter().map(|w| format!("[{w}]")).collect::<String>())
                .collect()
        })
        .collect();
    ComplexWindow::new(window.pmin as i64, Direction::Up, labels, maps, window.pmin == 0, false)
}

/// `C^•_{z,N,q}` with `z` possibly zero.
pub(crate) fn c_window(z: usize, big_n: usize, q: usize, window: PWindow) -> Result<ComplexWindow> {
    if q == 1 && z + big_n >= 1 {
        Ok(c_orbit_complex(z, big_n, window)?.1)
    } else {
        generic_window(z, big_n, q, window)
    }
}

/// `C^•_{z,N,q}` on the degrees of `window`.
pub fn build_c(z: usize, big_n: usize, q: usize, window: PWindow) -> Result<ComplexWindow> {
    if z == 0 {
        return Err(Error::InvalidParameters("z must be at least 1".into()));
    }
    if q == 0 || q > MAX_DIRECT_Q {
        return Err(Error::InvalidParameters(format!("q must lie in [1, {MAX_DIRECT_Q}], got {q}")));
    }
    c_window(z, big_n, q, window)
}

/// Both sides of `C_{z,N,q} ≅ ⊕_{(I_α), (J_α)} ⊗_α C_{|I_α|,|J_α|,1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    pub lhs_dims: Vec<usize>,
    pub rhs_dims: Vec<usize>,
    /// `(p, betti)` at the complete degrees.
    pub lhs_betti: Vec<(i64, usize)>,
    pub rhs_betti: Vec<(i64, usize)>,
}

impl KunnethReport {
    pub fn holds(&self) -> bool {
        self.lhs_dims == self.rhs_dims && self.lhs_betti == self.rhs_betti
    }
}

/// Builds `C_{z,N,q}` directly and as the direct sum over ordered
/// (possibly empty) partitions `I_1 ⊔ .. ⊔ I_q = [1, z]`,
/// `J_1 ⊔ .. ⊔ J_q = [z+1, z+N]` of tensor products of `q = 1` complexes,
/// and compares dimensions and Betti numbers.
pub fn verify_kunneth_c(z: usize, big_n: usize, q: usize, window: PWindow) -> Result<KunnethReport> {
    let lhs = build_c(z, big_n, q, window)?;
    let is: Vec<Letter> = (1..=z as Letter).collect();
    let js: Vec<Letter> = ((z + 1) as Letter..=(z + big_n) as Letter).collect();
    let mut factors: HashMap<(usize, usize), ComplexWindow> = HashMap::new();
    let mut summands = Vec::new();
    for ip in ordered_set_partitions(&is, q, true) {
        for jp in ordered_set_partitions(&js, q, true) {
            let mut ws = Vec::with_capacity(q);
            for (bi, bj) in ip.blocks().iter().zip(jp.blocks()) {
                let key = (bi.len(), bj.len());
                if let std::collections::hash_map::Entry::Vacant(e) = factors.entry(key) {
                    e.insert(c_window(key.0, key.1, 1, PWindow::upto(window.pmax))?);
                }
                ws.push(factors[&key].clone());
            }
            summands.push(tensor_complexes(&ws)?.truncate(window.pmin as i64, window.pmax as i64));
        }
    }
    let rhs = direct_sum(&summands)?;
    Ok(KunnethReport {
        lhs_dims: lhs.dims(),
        rhs_dims: rhs.dims(),
        lhs_betti: homology(&lhs)?.complete_betti(),
        rhs_betti: homology(&rhs)?.complete_betti(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_route_matches_generic_substitution() {
        for (z, n) in [(1, 0), (1, 1), (2, 0), (2, 1), (0, 2)] {
            let w = PWindow::upto(3);
            let fast = c_orbit_complex(z, n, w).unwrap().1;
            let slow = generic_window(z, n, 1, w).unwrap();
            assert_eq!(fast.dims(), slow.dims(), "(z, N) = ({z}, {n})");
            let hf = homology(&fast).unwrap();
            let hs = homology(&slow).unwrap();
            assert_eq!(hf.degrees, hs.degrees, "(z, N) = ({z}, {n})");
        }
    }

    #[test]
    fn no_letters_gives_two_nonzero_degrees() {
        let w = c_window(0, 0, 1, PWindow::upto(4)).unwrap();
        assert_eq!(w.dims(), vec![0, 1, 1, 0, 0]);
        assert!(homology(&w).unwrap().is_acyclic());
    }

    #[test]
    fn single_letter_start() {
        let w = build_c(1, 0, 1, PWindow::upto(0)).unwrap();
        assert_eq!(w.dims(), vec![1]);
    }

    #[test]
    fn generic_differential_squares_to_zero() {
        let w = build_c(1, 1, 2, PWindow::upto(2)).unwrap();
        w.check_complex().unwrap();
    }

    #[test]
    fn rejects_bad_q() {
        assert!(build_c(1, 0, 0, PWindow::upto(1)).is_err());
        assert!(build_c(1, 0, 4, PWindow::upto(1)).is_err());
    }
}
