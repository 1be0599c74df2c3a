//! The graded Poisson complexes `P^•_{ε,ε'}`, the elements `p_n` spanning
//! them, and the comparison of the PBW-graded elementary differential with
//! `gr d`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::elementary::{check_bit, elementary_assoc, elementary_differential_assoc};
use super::words::{pm, remaining};
use crate::error::{Error, Result};
use crate::exactlin::{ComplexWindow, Direction, SparseMatrix};
use crate::freealg::{left_normed, pbw_decompose, Letter, LetterSet, LiePoly, LieWord, SymLiePoly, SymTerm};
use crate::rational::sign;
use crate::symgrp::{multiplicities, set_partitions, shuffles, IntPartition, Permutation, DEFAULT_TABLE_BOUND};
use crate::Rational;

/// Largest `n` for which the grading lemma is checked through characters.
pub const GRADING_CHECK_MAX: usize = 7;

/// `u` with `P^n[u] ≠ 0`: `m` for `n = 2m`, `m+1` for `n = 2m+1`.
pub fn expected_grading(n: usize) -> usize {
    n.div_ceil(2)
}

/// `p_{2m} = Σ ε(σ) {x_σ1, x_σ2} .. {x_σ(2m-1), x_σ(2m)}` over shuffles of
/// `(2, .., 2)`; `p_{2m+1}` has a leading single letter (shuffles of
/// `(1, 2, .., 2)`).
pub fn p_element(n: usize) -> Result<SymLiePoly> {
    let mut sizes = Vec::new();
    if n % 2 == 1 {
        sizes.push(1);
    }
    sizes.extend(std::iter::repeat_n(2, n / 2));
    let mut out = SymLiePoly::zero(LetterSet::range(1, n as Letter));
    for s in shuffles(&sizes) {
        let images = s.one_line();
        let mut factors = Vec::new();
        let mut pos = 0;
        for &k in &sizes {
            let letters: Vec<Letter> = images[pos..pos + k].iter().map(|&i| i as Letter).collect();
            factors.push(left_normed(&letters));
            pos += k;
        }
        out.add_scaled(&SymLiePoly::product_of(&factors)?, &sign(s.sign()))?;
    }
    Ok(out)
}

/// `p_n` with each partition into pairs (and a singleton for odd `n`)
/// counted once, that is `p_n / ⌊n/2⌋!`: the shuffles whose pair blocks
/// have increasing first letters.
pub fn p_element_pairs(n: usize) -> Result<SymLiePoly> {
    let single = n % 2;
    let mut sizes = vec![1; single];
    sizes.extend(std::iter::repeat_n(2, n / 2));
    let mut out = SymLiePoly::zero(LetterSet::range(1, n as Letter));
    for s in shuffles(&sizes) {
        let images = s.one_line();
        let firsts: Vec<usize> = (single..n).step_by(2).map(|i| images[i]).collect();
        if firsts.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let mut factors = Vec::new();
        let mut pos = 0;
        for &k in &sizes {
            let letters: Vec<Letter> = images[pos..pos + k].iter().map(|&i| i as Letter).collect();
            factors.push(left_normed(&letters));
            pos += k;
        }
        out.add_scaled(&SymLiePoly::product_of(&factors)?, &sign(s.sign()))?;
    }
    Ok(out)
}

/// The graded differential on `P(x_1, .., x_p)`:
/// for `ε = ε'`, `Σ_{i<j} (-1)^{i+j+1} P({x_i, x_j}, x_rest) + ε Σ_i (-1)^i {x_i, P(x_rest)}`;
/// for `(0, 1)`, `Σ_i (-1)^{i+1} x_i P(x_rest)`, and its negative for `(1, 0)`.
pub fn gr_differential(f: &SymLiePoly, eps: u8, epsp: u8, p: usize) -> Result<SymLiePoly> {
    check_bit(eps, "ε")?;
    check_bit(epsp, "ε'")?;
    if *f.support() != LetterSet::range(1, p as Letter) {
        return Err(Error::ShapeMismatch(format!("support {:?} is not [1, {p}]", f.support().letters())));
    }
    let x = |k: usize| k as Letter;
    let mut out = SymLiePoly::zero(LetterSet::range(1, (p + 1) as Letter));
    let moved = |i: usize| -> Result<SymLiePoly> {
        let rest = remaining(p + 1, &[i]);
        let map: BTreeMap<Letter, Letter> = (1..=p).map(|k| (x(k), x(rest[k - 1]))).collect();
        f.relabel(&map)
    };
    if eps == epsp {
        for i in 1..=p + 1 {
            for j in i + 1..=p + 1 {
                let rest = remaining(p + 1, &[i, j]);
                let mut subst = BTreeMap::new();
                subst.insert(x(1), LiePoly::generator(x(i)).bracket(&LiePoly::generator(x(j)))?);
                for k in 2..=p {
                    subst.insert(x(k), LiePoly::generator(x(rest[k - 2])));
                }
                out.add_scaled(&f.substitute(&subst)?, &sign(pm(i + j + 1)))?;
            }
        }
        if eps == 1 {
            for i in 1..=p + 1 {
                let b = SymLiePoly::generator(x(i)).bracket(&moved(i)?)?;
                out.add_scaled(&b, &sign(pm(i)))?;
            }
        }
    } else {
        let overall = if eps == 0 { 1 } else { -1 };
        for i in 1..=p + 1 {
            let prod = SymLiePoly::generator(x(i)).mul(&moved(i)?)?;
            out.add_scaled(&prod, &sign(overall * pm(i + 1)))?;
        }
    }
    Ok(out)
}

/// Basis of `P[u](x_1, .., x_n)`: unordered partitions into `u` blocks with
/// a Lie word on each.
fn poisson_basis(n: usize, u: usize) -> Vec<SymTerm> {
    let letters: Vec<Letter> = (1..=n as Letter).collect();
    let mut out = Vec::new();
    for part in set_partitions(&letters, u) {
        let mut acc: Vec<Vec<LieWord>> = vec![Vec::new()];
        for block in &part {
            let (anchor, rest) = block.split_first().expect("nonempty block");
            let words: Vec<LieWord> = Permutation::all(rest.len())
                .iter()
                .map(|s| LieWord::new(*anchor, s.one_line().iter().map(|&i| rest[i - 1]).collect()).expect("minimal anchor"))
                .collect();
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
        out.extend(acc.into_iter().map(|blocks| SymTerm::new(blocks).expect("disjoint blocks")));
    }
    out
}

fn multiplicity_cache() -> &'static RwLock<HashMap<usize, BTreeMap<usize, u64>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, BTreeMap<usize, u64>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Multiplicity of the sign representation in `P[u](x_1, .., x_n)` for each
/// `u`, from the traces of class representatives on the basis above.
pub fn sign_multiplicities(n: usize) -> Result<BTreeMap<usize, u64>> {
    if n > GRADING_CHECK_MAX {
        return Err(Error::TableTooLarge { n, bound: GRADING_CHECK_MAX });
    }
    if n == 0 {
        return Ok(BTreeMap::from([(0, 1)]));
    }
    if let Some(m) = multiplicity_cache().read().expect("cache lock").get(&n) {
        return Ok(m.clone());
    }
    let letters: Vec<Letter> = (1..=n as Letter).collect();
    let support = LetterSet::from_letters(letters.clone());
    let sign_irrep = IntPartition::new(vec![1; n]);
    let mut out = BTreeMap::new();
    for u in 0..=n {
        let basis = poisson_basis(n, u);
        let traces = IntPartition::all(n)
            .into_par_iter()
            .map(|mu| {
                let map = mu.representative().letter_map(&letters);
                let mut tr = Rational::zero();
                for t in &basis {
                    let mut blocks: Vec<Vec<Letter>> = t.blocks().iter().map(|b| b.letters().collect()).collect();
                    let mut moved: Vec<Vec<Letter>> = blocks
                        .iter()
                        .map(|b| {
                            let mut v: Vec<Letter> = b.iter().map(|l| map[l]).collect();
                            v.sort_unstable();
                            v
                        })
                        .collect();
                    blocks.iter_mut().for_each(|b| b.sort_unstable());
                    blocks.sort();
                    moved.sort();
                    if blocks != moved {
                        continue;
                    }
                    let one = SymLiePoly::from_terms(support.clone(), [(t.clone(), Rational::one())])?;
                    tr += one.relabel(&map)?.coeff(t);
                }
                Ok((mu, tr))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let m = multiplicities(&traces, n, DEFAULT_TABLE_BOUND)?;
        out.insert(u, m.get(&sign_irrep).copied().unwrap_or(0));
    }
    multiplicity_cache().write().expect("cache lock").insert(n, out.clone());
    Ok(out)
}

/// `P^•_{ε,ε'}` on degrees `0..=pmax`, spanned by the `p_n`.
#[derive(Clone, Debug)]
pub struct PoissonGraded {
    pub window: ComplexWindow,
    /// `gr d(p_n) = μ_n p_{n+1}`.
    pub scalars: Vec<Rational>,
    /// The same scalars for the pair-counted elements [`p_element_pairs`].
    pub pair_scalars: Vec<Rational>,
    /// Per `n ≤ min(pmax, 7)`: sign multiplicities by grading `u`.
    pub grading: Vec<BTreeMap<usize, u64>>,
}

impl PoissonGraded {
    /// Whether each checked `P^n` is one-dimensional and concentrated in
    /// grading `⌈n/2⌉`.
    pub fn grading_lemma_holds(&self) -> bool {
        self.grading.iter().enumerate().all(|(n, m)| {
            m.iter().all(|(&u, &k)| k == u64::from(u == expected_grading(n)))
        })
    }
}

fn proportional(a: &SymLiePoly, b: &SymLiePoly, degree: usize) -> Result<Rational> {
    let Some((t, c)) = b.terms().iter().next() else {
        return Err(Error::NotProportional { degree, detail: "zero target".into() });
    };
    let mu = a.coeff(t) / c;
    if *a != b.scale(&mu) {
        return Err(Error::NotProportional { degree, detail: format!("gr d(p_{degree}) is not a multiple of p_{}", degree + 1) });
    }
    Ok(mu)
}

pub fn build_poisson_graded(eps: u8, epsp: u8, pmax: usize) -> Result<PoissonGraded> {
    check_bit(eps, "ε")?;
    check_bit(epsp, "ε'")?;
    let ps: Vec<SymLiePoly> = (0..=pmax).map(p_element).collect::<Result<_>>()?;
    let mut scalars = Vec::with_capacity(pmax);
    for n in 0..pmax {
        let d = gr_differential(&ps[n], eps, epsp, n)?;
        scalars.push(proportional(&d, &ps[n + 1], n)?);
    }
    let pairs: Vec<SymLiePoly> = (0..=pmax).map(p_element_pairs).collect::<Result<_>>()?;
    let mut pair_scalars = Vec::with_capacity(pmax);
    for n in 0..pmax {
        let d = gr_differential(&pairs[n], eps, epsp, n)?;
        pair_scalars.push(proportional(&d, &pairs[n + 1], n)?);
    }
    let grading = (0..=pmax.min(GRADING_CHECK_MAX)).map(sign_multiplicities).collect::<Result<_>>()?;
    let labels = (0..=pmax).map(|n| vec![format!("p{n}")]).collect();
    let maps = scalars
        .iter()
        .map(|m| SparseMatrix::from_triplets(1, 1, [(0, 0, m.clone())]))
        .collect::<Result<_>>()?;
    let window = ComplexWindow::new(0, Direction::Up, labels, maps, true, false)?;
    Ok(PoissonGraded { window, scalars, pair_scalars, grading })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwDegree {
    pub p: usize,
    /// Filtration degree of `e_p`.
    pub u: Option<usize>,
    /// Filtration degree of `d e_p`.
    pub image_degree: Option<usize>,
    /// `d e_p ∈ F_{u+s}` with `s = 0` for `ε = ε'` and `1` otherwise.
    pub filtration_ok: bool,
    /// Degree-`(u+s)` component of `d e_p` equals `gr d` of the symbol.
    pub symbol_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwReport {
    pub degrees: Vec<PbwDegree>,
}

impl PbwReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.filtration_ok && d.symbol_ok)
    }
}

/// Compares `d_{ε,ε'}` on `e_p` with `gr d_{ε,ε'}` on its PBW symbol, for
/// `p < pmax`.
pub fn pbw_filtration_check(eps: u8, epsp: u8, pmax: usize) -> Result<PbwReport> {
    check_bit(eps, "ε")?;
    check_bit(epsp, "ε'")?;
    let shift = usize::from(eps != epsp);
    let mut degrees = Vec::new();
    for p in 0..pmax {
        let e = elementary_assoc(p);
        let pe = pbw_decompose(&e);
        let u = pe.degree();
        let de = elementary_differential_assoc(&e, eps, epsp, p)?;
        let pd = pbw_decompose(&de);
        let image_degree = pd.degree();
        let top = u.unwrap_or(0) + shift;
        let filtration_ok = image_degree.is_none_or(|k| k <= top);
        let symbol_ok = pd.component(top) == gr_differential(&pe.symbol(), eps, epsp, p)?;
        degrees.push(PbwDegree { p, u, image_degree, filtration_ok, symbol_ok });
    }
    Ok(PbwReport { degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn first_elements() {
        assert_eq!(p_element(0).unwrap(), SymLiePoly::one());
        assert_eq!(p_element(1).unwrap(), SymLiePoly::generator(1));
        assert_eq!(p_element(2).unwrap().to_string(), "1*{1|2}");
        assert_eq!(p_element(3).unwrap().len(), 3);
    }

    #[test]
    fn displayed_values() {
        let g = build_poisson_graded(0, 0, 2).unwrap();
        assert_eq!(g.scalars[1], int(1));
        let g = build_poisson_graded(1, 1, 2).unwrap();
        assert_eq!(g.scalars[1], int(-1));
        let g = build_poisson_graded(0, 1, 3).unwrap();
        assert_eq!(g.scalars[2], int(1));
    }

    #[test]
    fn pair_counted_elements() {
        for n in 0..=6usize {
            let m = Rational::from_integer(crate::symgrp::factorial(n / 2).into());
            assert_eq!(p_element(n).unwrap(), p_element_pairs(n).unwrap().scale(&m), "n={n}");
        }
        assert_eq!(p_element_pairs(4).unwrap().len(), 3);
    }

    #[test]
    fn grading_lemma_small() {
        for n in 0..=5 {
            let m = sign_multiplicities(n).unwrap();
            for (u, k) in m {
                assert_eq!(k, u64::from(u == expected_grading(n)), "n={n} u={u}");
            }
        }
    }

    #[test]
    fn pbw_small() {
        for (e, f) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!(pbw_filtration_check(e, f, 3).unwrap().holds(), "({e},{f})");
        }
    }
}
