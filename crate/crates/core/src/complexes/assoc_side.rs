//! The associative complexes `A_{z,N}`, their splitting by the order of the
//! `a`-letters, and the comparison with `C_{z,N,1}` and with tensor products
//! of elementary complexes.

use std::collections::BTreeMap;

use super::elementary::build_elementary;
use super::lie_side::c_orbit_complex;
use super::tensor::tensor_complexes;
use super::words::{add_word, insert_commutator, orbit_matrix, pair_terms, pm, relabel_x, remaining, Comb, OrbitBasis};
use super::{word_label, PWindow};
use crate::error::{Error, Result};
use crate::exactlin::{check_chain_map, ComplexWindow, Direction, SparseMatrix};
use crate::freealg::Letter;
use crate::rational::int;
use crate::symgrp::{compositions, Permutation};

/// Antiinvariance of images is checked in full up to this many `x`-letters.
pub(crate) const VERIFY_LEVEL: usize = 5;

/// The differential on words `Q(a_2, .., a_{z+N}, x_1, .., x_p)`:
/// pair brackets, right multiplication by `x_i`, and `a_{z'} ↦ [x_i, a_{z'}]`
/// for `z' ∈ [2, z]`.
fn d_a(w: &[Letter], z: usize, n: usize, p: usize, out: &mut Comb) -> Result<()> {
    let base = n as Letter;
    pair_terms(w, base, p, out)?;
    for i in 1..=p + 1 {
        let s = pm(i + 1);
        let r = relabel_x(w, base, &remaining(p + 1, &[i]));
        let xi = base + i as Letter;
        let mut t = r.clone();
        t.push(xi);
        add_word(out, t, s)?;
        for zp in 2..=z as Letter {
            if let Some(pos) = r.iter().position(|&l| l == zp) {
                insert_commutator(&r, pos, xi, zp, s, out)?;
            }
        }
    }
    Ok(())
}

fn a_letters(n: usize) -> Vec<Letter> {
    (2..=n as Letter).collect()
}

fn check_params(z: usize) -> Result<()> {
    if z == 0 {
        return Err(Error::InvalidParameters("z must be at least 1".into()));
    }
    Ok(())
}

pub(crate) fn a_orbit_complex(
    z: usize,
    big_n: usize,
    window: PWindow,
    keep: &(dyn Fn(&[Letter]) -> bool + Sync),
) -> Result<(Vec<OrbitBasis>, ComplexWindow)> {
    check_params(z)?;
    let n = z + big_n;
    let fixed = a_letters(n);
    let bases: Vec<OrbitBasis> = window.degrees().map(|p| OrbitBasis::new(&fixed, n as Letter, p, keep)).collect();
    let mut maps = Vec::new();
    for (k, p) in (window.pmin..window.pmax).enumerate() {
        maps.push(orbit_matrix(&bases[k], &bases[k + 1], |w, out| d_a(w, z, n, p, out), p < VERIFY_LEVEL)?);
    }
    let labels = bases.iter().map(|b| b.reps().iter().map(|r| word_label(r, n as Letter)).collect()).collect();
    let w = ComplexWindow::new(window.pmin as i64, Direction::Up, labels, maps, window.pmin == 0, false)?;
    Ok((bases, w))
}

/// `A^•_{z,N}`: antiinvariant multilinear words in `a_2..a_{z+N}` and
/// `x_1..x_p`, on a signed-orbit basis.
pub fn build_a(z: usize, big_n: usize, window: PWindow) -> Result<ComplexWindow> {
    Ok(a_orbit_complex(z, big_n, window, &|_| true)?.1)
}

/// The order in which the `a`-letters of `[2, n]` occur in a word.
fn a_order(w: &[Letter], n: usize) -> Vec<Letter> {
    w.iter().copied().filter(|&l| l >= 2 && l as usize <= n).collect()
}

/// `σ` of degree `n-1` encodes the sequence `σ(2), .., σ(n)` of `a`-letters
/// by `σ(α) = σ'(α-1) + 1`.
fn order_of(sigma: &Permutation, n: usize) -> Result<Vec<Letter>> {
    if sigma.degree() + 1 != n.max(1) {
        return Err(Error::InvalidParameters(format!(
            "σ has degree {}, expected a permutation of {{2, .., {n}}}",
            sigma.degree()
        )));
    }
    Ok((1..=sigma.degree()).map(|k| sigma.apply(k) as Letter + 1).collect())
}

/// All `σ ∈ Perm({2, .., z+N})`, in the degree-`(z+N-1)` encoding.
pub fn sigma_orders(z: usize, big_n: usize) -> Vec<Permutation> {
    Permutation::all((z + big_n).saturating_sub(1))
}

/// The summand `A_σ`: words whose `a`-letters occur in the order
/// `a_{σ(2)}, .., a_{σ(z+N)}`.
pub fn build_a_sigma(z: usize, big_n: usize, sigma: &Permutation, window: PWindow) -> Result<ComplexWindow> {
    let n = z + big_n;
    let order = order_of(sigma, n)?;
    Ok(a_orbit_complex(z, big_n, window, &move |w| a_order(w, n) == order)?.1)
}

/// The splitting of `A^•_{z,N}` into the subcomplexes `A_σ`.
pub fn sigma_split(z: usize, big_n: usize, window: PWindow) -> Result<BTreeMap<Permutation, ComplexWindow>> {
    sigma_orders(z, big_n)
        .into_iter()
        .map(|s| {
            let w = build_a_sigma(z, big_n, &s, window)?;
            Ok((s, w))
        })
        .collect()
}

/// The bits `ε_1, .., ε_{z+N+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsilonSeq {
    bits: Vec<u8>,
}

impl EpsilonSeq {
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The consecutive pairs `(ε_α, ε_{α+1})`.
    pub fn pairs(&self) -> Vec<(u8, u8)> {
        self.bits.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Index `α` (1-based) of the first pair `(ε_α, ε_{α+1}) = (0, 1)`.
    pub fn zero_one_pair(&self) -> Option<usize> {
        self.pairs().iter().position(|&p| p == (0, 1)).map(|i| i + 1)
    }
}

/// `ε_1 = 0`, `ε_{z+N+1} = 1`, and for `α ∈ [2, z+N]`, `ε_α = 1` exactly
/// when `σ(α) ∈ [2, z]`.
pub fn epsilon_sequence(sigma: &Permutation, z: usize, big_n: usize) -> Result<EpsilonSeq> {
    check_params(z)?;
    let n = z + big_n;
    let order = order_of(sigma, n)?;
    let mut bits = vec![0u8];
    bits.extend(order.iter().map(|&l| u8::from((2..=z as Letter).contains(&l))));
    bits.push(1);
    Ok(EpsilonSeq { bits })
}

/// Outcome of comparing `A^•_{z,N}` with `C^•_{z,N,1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinReport {
    pub chain_map: bool,
    /// Per degree of the window: whether the map is bijective there.
    pub bijective: Vec<bool>,
}

impl DynkinReport {
    pub fn holds(&self) -> bool {
        self.chain_map && self.bijective.iter().all(|&b| b)
    }
}

/// The map `Q ↦ ad(Q)(a_1)`. On a word `u_1..u_k` it gives
/// `[u_1, [u_2, .., [u_k, a_1]]] = (-1)^k [[..[a_1, u_k], ..], u_1]`, the
/// basis Lie word with tail `u_k..u_1`.
pub fn dynkin_compare(z: usize, big_n: usize, window: PWindow) -> Result<DynkinReport> {
    let (a_bases, a_win) = a_orbit_complex(z, big_n, window, &|_| true)?;
    let (c_bases, c_win) = c_orbit_complex(z, big_n, window)?;
    let mut maps = Vec::new();
    let mut bijective = Vec::new();
    for (ab, cb) in a_bases.iter().zip(&c_bases) {
        let mut trip = Vec::new();
        for (j, q) in ab.reps().iter().enumerate() {
            let rev: Vec<Letter> = q.iter().rev().copied().collect();
            let (rep, s) = cb.rep_of(&rev);
            let row = cb
                .position(&rep)
                .ok_or_else(|| Error::ShapeMismatch(format!("tail {rev:?} has no basis representative")))?;
            trip.push((row, j, int(pm(q.len()) * s)));
        }
        let m = SparseMatrix::from_triplets(cb.dim(), ab.dim(), trip)?;
        bijective.push(m.rows() == m.cols() && m.rank() == m.cols());
        maps.push(m);
    }
    let chain_map = check_chain_map(&maps, &a_win, &c_win)?;
    Ok(DynkinReport { chain_map, bijective })
}

/// Checks `A_σ ≅ E_{0,ε_2} ⊗ E_{ε_2,ε_3} ⊗ .. ⊗ E_{ε_{z+N},1}`: equal
/// dimensions (compositions of `p` into `z+N` parts) and the identification
/// `⊗_α e_{p_α} ↦ Σ_shuffles ε(s) s*(e_{p_1} a_{σ(2)} e_{p_2} ..)` commuting
/// with the differentials.
pub fn verify_a_sigma_factorization(z: usize, big_n: usize, sigma: &Permutation, window: PWindow) -> Result<bool> {
    let n = z + big_n;
    let order = order_of(sigma, n)?;
    let eps = epsilon_sequence(sigma, z, big_n)?;
    let keep_order = order.clone();
    let (bases, a_win) = a_orbit_complex(z, big_n, window, &move |w| a_order(w, n) == keep_order)?;
    let factors: Vec<ComplexWindow> = eps
        .pairs()
        .iter()
        .map(|&(e, f)| build_elementary(e, f, window.pmax.saturating_sub(1)).and_then(|s| s.window(window.pmax)))
        .collect::<Result<_>>()?;
    let tensor = tensor_complexes(&factors)?.truncate(window.pmin as i64, window.pmax as i64);
    if tensor.dims() != a_win.dims() {
        return Ok(false);
    }
    let mut isos = Vec::new();
    for (k, p) in window.degrees().enumerate() {
        let comps = compositions(p, n);
        let mut trip = Vec::new();
        for (j, c) in comps.iter().enumerate() {
            let mut word = Vec::new();
            let mut next = 1;
            for (alpha, &len) in c.iter().enumerate() {
                if alpha > 0 {
                    word.push(order[alpha - 1]);
                }
                for _ in 0..len {
                    word.push((n + next) as Letter);
                    next += 1;
                }
            }
            let row = bases[k]
                .position(&word)
                .ok_or_else(|| Error::ShapeMismatch(format!("word {word:?} missing from A_σ")))?;
            trip.push((row, j, int(1)));
        }
        isos.push(SparseMatrix::from_triplets(bases[k].dim(), comps.len(), trip)?);
    }
    if isos.iter().any(|m| m.rank() != m.rows() || m.rows() != m.cols()) {
        return Ok(false);
    }
    check_chain_map(&isos, &tensor, &a_win)
}
