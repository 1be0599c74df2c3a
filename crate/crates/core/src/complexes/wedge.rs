//! The Chevalley–Eilenberg wedge complex of `L_z`, its associative model
//! `(A_z ⊗ ∧^• L_z)_{[2,z]}`, and the multilinear Koszul complex.
//!
//! Wedge basis elements are tuples of Lie basis words with disjoint supports
//! whose blocks are sorted by anchor. Chain complexes are indexed by
//! homological degree: `∧^k L_z` sits in degree `k-1`, and
//! `A_z ⊗ ∧^m L_z` in degree `m`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::words::pm;
use crate::error::{Error, Result};
use crate::exactlin::{ComplexWindow, Direction, SparseMatrix, SparseVec};
use crate::freealg::{Letter, LiePoly, LieWord, TensorLiePoly};
use crate::rational::{int, sign};
use crate::symgrp::{factorial, set_partitions, Permutation};
use crate::Rational;

fn lie_words(block: &[Letter]) -> Vec<LieWord> {
    let (anchor, rest) = block.split_first().expect("nonempty block");
    Permutation::all(rest.len())
        .iter()
        .map(|s| LieWord::new(*anchor, s.one_line().iter().map(|&i| rest[i - 1]).collect()).expect("anchor is minimal"))
        .collect()
}

/// All sorted wedge tuples of `k` blocks on `letters`.
fn wedge_basis(letters: &[Letter], k: usize) -> Vec<Vec<LieWord>> {
    let mut out = Vec::new();
    for part in set_partitions(letters, k) {
        let mut acc: Vec<Vec<LieWord>> = vec![Vec::new()];
        for block in &part {
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
        out.extend(acc);
    }
    out
}

fn index_of<K: Clone + std::hash::Hash + Eq>(keys: &[K]) -> HashMap<K, usize> {
    keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect()
}

/// Sorts blocks by anchor; returns the sign of the sorting permutation.
fn sort_wedge(mut blocks: Vec<LieWord>) -> (Vec<LieWord>, i64) {
    let mut s = 1;
    for i in 1..blocks.len() {
        let mut j = i;
        while j > 0 && blocks[j - 1].anchor() > blocks[j].anchor() {
            blocks.swap(j - 1, j);
            s = -s;
            j -= 1;
        }
    }
    (blocks, s)
}

/// Expands `y_1 ∧ .. ∧ y_m` of Lie elements with disjoint supports into
/// sorted basis tuples.
fn wedge_of(factors: &[LiePoly], c: &Rational, out: &mut HashMap<Vec<LieWord>, Rational>) {
    let mut acc: Vec<(Vec<LieWord>, Rational)> = vec![(Vec::new(), c.clone())];
    for f in factors {
        acc = acc
            .into_iter()
            .flat_map(|(t, a)| {
                f.terms().iter().map(move |(w, b)| {
                    let mut t = t.clone();
                    t.push(w.clone());
                    (t, &a * b)
                })
            })
            .collect();
    }
    for (t, a) in acc {
        let (sorted, s) = sort_wedge(t);
        *out.entry(sorted).or_insert_with(Rational::zero) += a * sign(s);
    }
}

fn to_column<K: std::hash::Hash + Eq + std::fmt::Debug>(
    image: HashMap<K, Rational>,
    index: &HashMap<K, usize>,
) -> Result<SparseVec> {
    let mut col = Vec::new();
    for (k, c) in image {
        if c.is_zero() {
            continue;
        }
        let i = index
            .get(&k)
            .ok_or_else(|| Error::ShapeMismatch(format!("{k:?} is not a basis element")))?;
        col.push((*i, c));
    }
    col.sort_by_key(|(i, _)| *i);
    Ok(col)
}

fn gen(w: &LieWord) -> LiePoly {
    LiePoly::from_word(w.clone(), Rational::one())
}

fn wedge_label(t: &[LieWord]) -> String {
    t.iter().map(|w| format!("[{w}]")).collect::<Vec<_>>().join("∧")
}

fn check_z(z: usize) -> Result<Vec<Letter>> {
    if z == 0 {
        return Err(Error::InvalidParameters("z must be at least 1".into()));
    }
    Ok((1..=z as Letter).collect())
}

/// `d(y_1 ∧ .. ∧ y_k) = Σ_{i<j} (-1)^{i+j+1} [y_i, y_j] ∧ y_1 .. ŷ_i .. ŷ_j .. y_k`.
fn chevalley_matrix(src: &[Vec<LieWord>], tgt_index: &HashMap<Vec<LieWord>, usize>, tgt_dim: usize) -> Result<SparseMatrix> {
    let mut columns = Vec::with_capacity(src.len());
    for t in src {
        let mut image = HashMap::new();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let mut factors = vec![gen(&t[i]).bracket(&gen(&t[j]))?];
                factors.extend(t.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, w)| gen(w)));
                wedge_of(&factors, &sign(pm(i + j + 3)), &mut image);
            }
        }
        columns.push(to_column(image, tgt_index)?);
    }
    SparseMatrix::from_columns(tgt_dim, columns)
}

/// `… → (∧^2 L_z)_{[1,z]} → (L_z)_{[1,z]} → 0`, with `∧^k` in degree `k-1`.
pub fn build_chevalley_wedge(z: usize) -> Result<ComplexWindow> {
    let letters = check_z(z)?;
    let bases: Vec<Vec<Vec<LieWord>>> = (1..=z).map(|k| wedge_basis(&letters, k)).collect();
    let mut maps = Vec::new();
    for k in 1..z {
        let idx = index_of(&bases[k - 1]);
        maps.push(chevalley_matrix(&bases[k], &idx, bases[k - 1].len())?);
    }
    let labels = bases.iter().map(|b| b.iter().map(|t| wedge_label(t)).collect()).collect();
    ComplexWindow::new(0, Direction::Down, labels, maps, true, true)
}

/// The differential `∧^k → ∧^{k-1}` computed as `Alt ∘ (μ_L ⊗ id)`: embed
/// `y_1 ∧ .. ∧ y_k` as `Σ_σ ε(σ) y_σ(1) ⊗ .. ⊗ y_σ(k)`, bracket the first two
/// tensor factors, and project to the exterior power. Equals
/// `2 (k-2)!` times the matrix of [`build_chevalley_wedge`].
pub fn chevalley_alt_differential(z: usize, k: usize) -> Result<SparseMatrix> {
    let letters = check_z(z)?;
    if k < 2 || k > z {
        return Err(Error::InvalidParameters(format!("k must lie in [2, {z}], got {k}")));
    }
    let src = wedge_basis(&letters, k);
    let tgt = wedge_basis(&letters, k - 1);
    let idx = index_of(&tgt);
    let mut columns = Vec::with_capacity(src.len());
    for t in &src {
        let gens: Vec<LiePoly> = t.iter().map(gen).collect();
        let mut embedded: Option<TensorLiePoly> = None;
        for s in Permutation::all(k) {
            let factors: Vec<LiePoly> = s.one_line().iter().map(|&i| gens[i - 1].clone()).collect();
            let term = TensorLiePoly::tensor(&factors)?.scale(&sign(s.sign()));
            match embedded.as_mut() {
                None => embedded = Some(term),
                Some(e) => e.add_scaled(&term, &Rational::one())?,
            }
        }
        let mut image = HashMap::new();
        for (blocks, c) in embedded.expect("k ≥ 2").terms() {
            let mut factors = vec![gen(&blocks[0]).bracket(&gen(&blocks[1]))?];
            factors.extend(blocks[2..].iter().map(gen));
            wedge_of(&factors, c, &mut image);
        }
        columns.push(to_column(image, &idx)?);
    }
    SparseMatrix::from_columns(tgt.len(), columns)
}

/// Basis element of `A_z ⊗ ∧^m L_z`: an associative word and sorted blocks.
type AssocWedge = (Vec<Letter>, Vec<LieWord>);

fn assoc_wedge_basis(letters: &[Letter], m: usize) -> Vec<AssocWedge> {
    let mut out = Vec::new();
    let n = letters.len();
    for mask in 0u32..(1 << n) {
        let word_letters: Vec<Letter> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| letters[i]).collect();
        let rest: Vec<Letter> = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| letters[i]).collect();
        let wedges = if rest.is_empty() {
            if m == 0 {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        } else {
            wedge_basis(&rest, m)
        };
        if wedges.is_empty() {
            continue;
        }
        for s in Permutation::all(word_letters.len()) {
            let w: Vec<Letter> = s.one_line().iter().map(|&i| word_letters[i - 1]).collect();
            for t in &wedges {
                out.push((w.clone(), t.clone()));
            }
        }
    }
    out.sort();
    out
}

/// `… → (A_z ⊗ ∧^2 L_z)_{[2,z]} → (A_z ⊗ L_z)_{[2,z]} → (A_z)_{[2,z]} → 0`
/// with `x_0 ⊗ x_1 ∧ .. ∧ x_k ↦ Σ_i (-1)^{i+1} x_0 x_i ⊗ (.. x̌_i ..)
/// + Σ_{i<j} (-1)^{j+1} x_0 ⊗ (.. [x_i, x_j] .. x̌_j ..)`, the bracket sitting
/// in position `i`.
pub fn build_assoc_wedge(z: usize) -> Result<ComplexWindow> {
    check_z(z)?;
    let letters: Vec<Letter> = (2..=z as Letter).collect();
    let bases: Vec<Vec<AssocWedge>> = (0..z).map(|m| assoc_wedge_basis(&letters, m)).collect();
    let mut maps = Vec::new();
    for m in 1..z {
        let idx = index_of(&bases[m - 1]);
        let mut columns = Vec::with_capacity(bases[m].len());
        for (w, t) in &bases[m] {
            let mut image: HashMap<AssocWedge, Rational> = HashMap::new();
            for i in 0..t.len() {
                let rest: Vec<LieWord> = t.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, b)| b.clone()).collect();
                for (u, c) in t[i].expand().terms() {
                    let mut nw = w.clone();
                    nw.extend_from_slice(&u.0);
                    *image.entry((nw, rest.clone())).or_insert_with(Rational::zero) += c * sign(pm(i + 2));
                }
            }
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    let mut factors = Vec::with_capacity(t.len() - 1);
                    for (k, b) in t.iter().enumerate() {
                        if k == i {
                            factors.push(gen(&t[i]).bracket(&gen(&t[j]))?);
                        } else if k != j {
                            factors.push(gen(b));
                        }
                    }
                    let mut wedge = HashMap::new();
                    wedge_of(&factors, &sign(pm(j + 2)), &mut wedge);
                    for (blocks, c) in wedge {
                        *image.entry((w.clone(), blocks)).or_insert_with(Rational::zero) += c;
                    }
                }
            }
            columns.push(to_column(image, &idx)?);
        }
        maps.push(SparseMatrix::from_columns(bases[m - 1].len(), columns)?);
    }
    let labels = bases
        .iter()
        .map(|b| {
            b.iter()
                .map(|(w, t)| {
                    let word = if w.is_empty() { "1".to_string() } else { w.iter().map(|l| l.to_string()).collect() };
                    if t.is_empty() {
                        word
                    } else {
                        format!("{word}⊗{}", wedge_label(t))
                    }
                })
                .collect()
        })
        .collect();
    ComplexWindow::new(0, Direction::Down, labels, maps, true, true)
}

/// The identification of the Chevalley wedge complex with the associative
/// one: `[1, t] ∧ y_2 ∧ .. ∧ y_k ↦ t ⊗ y_2 ∧ .. ∧ y_k`, one matrix per
/// degree.
pub fn assoc_wedge_iso(z: usize) -> Result<Vec<SparseMatrix>> {
    let letters = check_z(z)?;
    let rest: Vec<Letter> = (2..=z as Letter).collect();
    let mut out = Vec::with_capacity(z);
    for k in 1..=z {
        let src = wedge_basis(&letters, k);
        let tgt = assoc_wedge_basis(&rest, k - 1);
        let idx = index_of(&tgt);
        let mut trip = Vec::with_capacity(src.len());
        for (j, t) in src.iter().enumerate() {
            let key = (t[0].tail().to_vec(), t[1..].to_vec());
            let i = idx
                .get(&key)
                .ok_or_else(|| Error::ShapeMismatch(format!("{key:?} has no image")))?;
            trip.push((*i, j, int(1)));
        }
        out.push(SparseMatrix::from_triplets(tgt.len(), src.len(), trip)?);
    }
    Ok(out)
}

/// Multilinear part of `S(V) ⊗ ∧(V)` on `x_1, .., x_n`, with `f ⊗ x_K` in
/// degree `|K|` and `d(f ⊗ x_{k_1} ∧ .. ∧ x_{k_m}) = Σ_i (-1)^{i+1} f x_{k_i} ⊗ (.. x̌_{k_i} ..)`.
/// A basis element is determined by the set `K` (`f` is the product of the
/// other letters).
pub fn build_koszul_multilinear(n: usize) -> Result<ComplexWindow> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n)
        .map(|m| {
            let mut out: Vec<Vec<usize>> = (0u32..(1 << n))
                .filter(|mask| mask.count_ones() as usize == m)
                .map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
                .collect();
            out.sort();
            out
        })
        .collect();
    let mut maps = Vec::new();
    for m in 1..=n {
        let idx = index_of(&subsets[m - 1]);
        let mut trip = Vec::new();
        for (j, k) in subsets[m].iter().enumerate() {
            for i in 0..k.len() {
                let mut smaller = k.clone();
                smaller.remove(i);
                trip.push((idx[&smaller], j, sign(pm(i + 2))));
            }
        }
        maps.push(SparseMatrix::from_triplets(subsets[m - 1].len(), subsets[m].len(), trip)?);
    }
    let labels = subsets
        .iter()
        .map(|ss| {
            ss.iter()
                .map(|k| {
                    let f: Vec<String> = (1..=n).filter(|i| !k.contains(i)).map(|i| format!("x{i}")).collect();
                    let w: Vec<String> = k.iter().map(|i| format!("x{i}")).collect();
                    let f = if f.is_empty() { "1".into() } else { f.join("") };
                    let w = if w.is_empty() { "1".into() } else { w.join("∧") };
                    format!("{f}⊗{w}")
                })
                .collect()
        })
        .collect();
    ComplexWindow::new(0, Direction::Down, labels, maps, true, true)
}

/// `2 (k-2)!`, the factor between the two routes to the wedge differential.
pub fn alt_factor(k: usize) -> Rational {
    int(2) * Rational::from_integer(factorial(k - 2).into())
}
