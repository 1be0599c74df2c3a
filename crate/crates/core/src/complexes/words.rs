//! Signed-orbit bases for antiinvariants under permutations of the
//! `x`-letters, for spaces spanned by words on which the permutation action
//! is monomial.
//!
//! The `x`-letters at level `p` are `base+1, ..., base+p`; every other letter
//! is fixed. An orbit representative has its `x`-letters in increasing order,
//! and its antiinvariant is `Σ_π ε(π) π·r`. An antiinvariant vector is then
//! determined by its coefficients at representatives, which are its
//! coordinates in the orbit basis.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::SparseMatrix;
use crate::freealg::Letter;
use crate::symgrp::Permutation;

/// Sparse integer combination of words.
pub(crate) type Comb = HashMap<Vec<Letter>, i64>;

pub(crate) fn add_word(comb: &mut Comb, w: Vec<Letter>, c: i64) -> Result<()> {
    let e = comb.entry(w).or_insert(0);
    *e = e.checked_add(c).ok_or_else(|| Error::Overflow("word coefficient".into()))?;
    Ok(())
}

/// `(-1)^e`.
pub(crate) fn pm(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Permutations of `0..p` in one-line form with their signs.
pub(crate) fn signed_permutations(p: usize) -> Vec<(Vec<usize>, i64)> {
    Permutation::all(p)
        .into_iter()
        .map(|s| {
            let sign = s.sign();
            (s.one_line().into_iter().map(|x| x - 1).collect(), sign)
        })
        .collect()
}

/// All arrangements of `fixed` (in every order) and `p` increasing
/// `x`-letters, filtered by `keep`.
fn representatives(fixed: &[Letter], base: Letter, p: usize, keep: &dyn Fn(&[Letter]) -> bool) -> Vec<Vec<Letter>> {
    let n = fixed.len() + p;
    let mut out = Vec::new();
    let fixed_orders = signed_permutations(fixed.len());
    // positions of the x-letters: p-subsets of 0..n in lexicographic order
    let mut subsets = Vec::new();
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - left {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(0, n, p, &mut Vec::new(), &mut subsets);
    for order in &fixed_orders {
        for xs in &subsets {
            let mut w = Vec::with_capacity(n);
            let (mut xi, mut fi) = (0usize, 0usize);
            for pos in 0..n {
                if xi < xs.len() && xs[xi] == pos {
                    xi += 1;
                    w.push(base + xi as Letter);
                } else {
                    w.push(fixed[order.0[fi]]);
                    fi += 1;
                }
            }
            if keep(&w) {
                out.push(w);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub(crate) struct OrbitBasis {
    base: Letter,
    p: usize,
    reps: Vec<Vec<Letter>>,
    index: HashMap<Vec<Letter>, usize>,
}

impl OrbitBasis {
    pub(crate) fn new(fixed: &[Letter], base: Letter, p: usize, keep: &dyn Fn(&[Letter]) -> bool) -> Self {
        let reps = representatives(fixed, base, p, keep);
        let index = reps.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        OrbitBasis { base, p, reps, index }
    }

    pub(crate) fn dim(&self) -> usize {
        self.reps.len()
    }

    pub(crate) fn reps(&self) -> &[Vec<Letter>] {
        &self.reps
    }

    pub(crate) fn position(&self, w: &[Letter]) -> Option<usize> {
        self.index.get(w).copied()
    }

    fn is_x(&self, l: Letter) -> bool {
        l > self.base && l <= self.base + self.p as Letter
    }

    /// The representative of a word's orbit and the sign `ε` with
    /// `w = π·r`, `ε = ε(π)`.
    pub(crate) fn rep_of(&self, w: &[Letter]) -> (Vec<Letter>, i64) {
        let xs: Vec<Letter> = w.iter().copied().filter(|&l| self.is_x(l)).collect();
        let mut inversions = 0;
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                if xs[i] > xs[j] {
                    inversions += 1;
                }
            }
        }
        let mut k = 0;
        let r = w
            .iter()
            .map(|&l| {
                if self.is_x(l) {
                    k += 1;
                    self.base + k as Letter
                } else {
                    l
                }
            })
            .collect();
        (r, pm(inversions))
    }

    /// The words of the orbit of representative `i`, with signs.
    pub(crate) fn orbit(&self, i: usize, perms: &[(Vec<usize>, i64)]) -> Vec<(Vec<Letter>, i64)> {
        let r = &self.reps[i];
        perms
            .iter()
            .map(|(pi, s)| {
                let w = r
                    .iter()
                    .map(|&l| if self.is_x(l) { self.base + 1 + pi[(l - self.base - 1) as usize] as Letter } else { l })
                    .collect();
                (w, *s)
            })
            .collect()
    }
}

/// Matrix of a word-level map `d` between orbit bases, restricted to the
/// antiinvariants. With `verify`, the full image of every basis vector is
/// checked to be antiinvariant (otherwise only the coefficients at
/// representatives are read).
pub(crate) fn orbit_matrix<D>(src: &OrbitBasis, tgt: &OrbitBasis, d: D, verify: bool) -> Result<SparseMatrix>
where
    D: Fn(&[Letter], &mut Comb) -> Result<()> + Sync,
{
    let perms = signed_permutations(src.p);
    let columns: Vec<Vec<(usize, crate::Rational)>> = (0..src.dim())
        .into_par_iter()
        .map(|i| {
            let mut image = Comb::new();
            for (w, s) in src.orbit(i, &perms) {
                let mut part = Comb::new();
                d(&w, &mut part)?;
                for (v, c) in part {
                    if verify || tgt.position(&v).is_some() {
                        add_word(&mut image, v, c * s)?;
                    }
                }
            }
            if verify {
                for (v, &c) in &image {
                    let (r, s) = tgt.rep_of(v);
                    let at_rep = image.get(&r).copied().unwrap_or(0);
                    if c != s * at_rep || (c != 0 && tgt.position(&r).is_none()) {
                        return Err(Error::NotInSubspace(format!(
                            "image of basis vector {i} is not antiinvariant at word {v:?}"
                        )));
                    }
                }
            }
            let mut col: Vec<(usize, crate::Rational)> = image
                .iter()
                .filter(|(_, &c)| c != 0)
                .filter_map(|(v, &c)| tgt.position(v).map(|k| (k, crate::rational::int(c))))
                .collect();
            col.sort_by_key(|(k, _)| *k);
            Ok(col)
        })
        .collect::<Result<_>>()?;
    SparseMatrix::from_columns(tgt.dim(), columns)
}

/// Replaces `x_k` (`k ≥ 1`, relative to `base`) by `x_{map[k-1]}`.
pub(crate) fn relabel_x(w: &[Letter], base: Letter, map: &[usize]) -> Vec<Letter> {
    w.iter()
        .map(|&l| if l > base { base + map[(l - base - 1) as usize] as Letter } else { l })
        .collect()
}

/// `[1, n] \ skip`, ascending.
pub(crate) fn remaining(n: usize, skip: &[usize]) -> Vec<usize> {
    (1..=n).filter(|k| !skip.contains(k)).collect()
}

/// In `w`, replaces the letter at position `pos` by the word `a b` (sign
/// `+1`) and by `b a` (sign `-1`), adding `c` times the result to `out`.
pub(crate) fn insert_commutator(w: &[Letter], pos: usize, a: Letter, b: Letter, c: i64, out: &mut Comb) -> Result<()> {
    for (first, second, s) in [(a, b, 1), (b, a, -1)] {
        let mut v = Vec::with_capacity(w.len() + 1);
        v.extend_from_slice(&w[..pos]);
        v.push(first);
        v.push(second);
        v.extend_from_slice(&w[pos + 1..]);
        add_word(out, v, c * s)?;
    }
    Ok(())
}

/// The pair part shared by all differentials on words:
/// `Σ_{i<j} (-1)^{i+j+1} w([x_i, x_j], x_rest)`, where the bracket is
/// expanded as a commutator.
pub(crate) fn pair_terms(w: &[Letter], base: Letter, p: usize, out: &mut Comb) -> Result<()> {
    let pos1 = w.iter().position(|&l| l == base + 1);
    let Some(pos1) = pos1 else { return Ok(()) };
    for i in 1..=p + 1 {
        for j in i + 1..=p + 1 {
            let rest = remaining(p + 1, &[i, j]);
            // x_1 is consumed by the bracket; x_k (k ≥ 2) goes to rest[k-2]
            let mut map = vec![0usize; p];
            map[1..p].copy_from_slice(&rest[..p - 1]);
            let relabeled: Vec<Letter> = w
                .iter()
                .map(|&l| if l > base + 1 { base + map[(l - base - 1) as usize] as Letter } else { l })
                .collect();
            insert_commutator(
                &relabeled,
                pos1,
                base + i as Letter,
                base + j as Letter,
                pm(i + j + 1),
                out,
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives_and_orbits() {
        let b = OrbitBasis::new(&[2], 2, 2, &|_| true);
        // words on {2, x1, x2} with x1 before x2
        assert_eq!(b.dim(), 3);
        let perms = signed_permutations(2);
        let orbit = b.orbit(0, &perms);
        assert_eq!(orbit.len(), 2);
        for (w, s) in orbit {
            assert_eq!(b.rep_of(&w), (b.reps()[0].clone(), s));
        }
    }

    #[test]
    fn pair_terms_on_single_letter() {
        // w = x1 at level 1, base 0: [x1, x2] with sign (-1)^{1+2+1} = +1
        let mut out = Comb::new();
        pair_terms(&[1], 0, 1, &mut out).unwrap();
        assert_eq!(out.get(&vec![1, 2]), Some(&1));
        assert_eq!(out.get(&vec![2, 1]), Some(&-1));
    }
}
