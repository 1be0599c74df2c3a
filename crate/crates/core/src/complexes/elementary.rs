//! The elementary complexes `E^•_{ε,ε'}`: `E^{p'}` is spanned by
//! `e_{p'} = Σ_σ ε(σ) x_{σ(1)} .. x_{σ(p')}` and `d e_{p'} = λ_{p'} e_{p'+1}`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::words::{pm, remaining};
use crate::error::{Error, Result};
use crate::exactlin::{ComplexWindow, Direction, SparseMatrix};
use crate::freealg::{AssocPoly, Letter, LetterSet, Word};
use crate::rational::{int, sign};
use crate::symgrp::Permutation;
use crate::Rational;

/// Up to this degree `d e_{p'}` is computed as an [`AssocPoly`]; beyond it
/// the coefficients are evaluated word by word.
pub const ASSOC_ROUTE_MAX: usize = 6;

pub(crate) fn check_bit(b: u8, name: &str) -> Result<()> {
    if b > 1 {
        return Err(Error::InvalidParameters(format!("{name} must be 0 or 1, got {b}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryScalars {
    pub eps: u8,
    pub epsp: u8,
    /// `λ_0, λ_1, ..`.
    pub lambdas: Vec<Rational>,
}

impl ElementaryScalars {
    /// The complex on degrees `0..=top`, one basis vector `e_p` per degree.
    pub fn window(&self, top: usize) -> Result<ComplexWindow> {
        if self.lambdas.len() < top {
            return Err(Error::InvalidParameters(format!(
                "window up to {top} needs {top} scalars, have {}",
                self.lambdas.len()
            )));
        }
        let labels = (0..=top).map(|p| vec![format!("e{p}")]).collect();
        let maps = self.lambdas[..top]
            .iter()
            .map(|l| SparseMatrix::from_triplets(1, 1, [(0, 0, l.clone())]))
            .collect::<Result<_>>()?;
        ComplexWindow::new(0, Direction::Up, labels, maps, true, false)
    }

    /// `λ_p λ_{p+1} = 0` for every available `p`.
    pub fn squares_to_zero(&self) -> bool {
        self.lambdas.windows(2).all(|w| (&w[0] * &w[1]).is_zero())
    }
}

/// `e_p` on the letters `1..=p`.
pub fn elementary_assoc(p: usize) -> AssocPoly {
    let mut out = AssocPoly::zero(LetterSet::range(1, p as Letter));
    for s in Permutation::all(p) {
        let w = s.one_line().into_iter().map(|i| i as Letter).collect();
        out.add_term(Word(w), sign(s.sign()));
    }
    out
}

/// The elementary differential on an element of `A(x_1, .., x_p)`:
/// `Σ_{i<j} (-1)^{i+j+1} E([x_i, x_j], x_rest) + ε Σ_i (-1)^i x_i E(x_rest)
/// + ε' Σ_i (-1)^{i+1} E(x_rest) x_i`.
pub fn elementary_differential_assoc(e: &AssocPoly, eps: u8, epsp: u8, p: usize) -> Result<AssocPoly> {
    check_bit(eps, "ε")?;
    check_bit(epsp, "ε'")?;
    if *e.support() != LetterSet::range(1, p as Letter) {
        return Err(Error::ShapeMismatch(format!("support {:?} is not [1, {p}]", e.support().letters())));
    }
    let x = |k: usize| k as Letter;
    let mut out = AssocPoly::zero(LetterSet::range(1, (p + 1) as Letter));
    for i in 1..=p + 1 {
        for j in i + 1..=p + 1 {
            let rest = remaining(p + 1, &[i, j]);
            let mut subst = BTreeMap::new();
            subst.insert(x(1), AssocPoly::letter(x(i)).commutator(&AssocPoly::letter(x(j)))?);
            for k in 2..=p {
                subst.insert(x(k), AssocPoly::letter(x(rest[k - 2])));
            }
            out.add_scaled(&e.substitute(&subst)?, &sign(pm(i + j + 1)));
        }
    }
    for i in 1..=p + 1 {
        let rest = remaining(p + 1, &[i]);
        let map: BTreeMap<Letter, Letter> = (1..=p).map(|k| (x(k), x(rest[k - 1]))).collect();
        let moved = e.relabel(&map)?;
        let xi = AssocPoly::letter(x(i));
        if eps == 1 {
            out.add_scaled(&xi.mul(&moved)?, &sign(pm(i)));
        }
        if epsp == 1 {
            out.add_scaled(&moved.mul(&xi)?, &sign(pm(i + 1)));
        }
    }
    Ok(out)
}

fn lambda_assoc(eps: u8, epsp: u8, p: usize) -> Result<Rational> {
    let d = elementary_differential_assoc(&elementary_assoc(p), eps, epsp, p)?;
    let target = elementary_assoc(p + 1);
    let identity = Word((1..=(p + 1) as Letter).collect());
    let lambda = d.coeff(&identity);
    if d != target.scale(&lambda) {
        return Err(Error::NotProportional {
            degree: p,
            detail: format!("d e_{p} has {} terms and is not a multiple of e_{}", d.len(), p + 1),
        });
    }
    Ok(lambda)
}

/// Coefficient of `d e_p` at the word `w` (a permutation of `1..=p+1`,
/// sign `sgn`). A term `E(y_1, .., y_p)` of the differential contributes to
/// `w` through the unique way of reading `w` as a word in the `y`'s; the
/// sign of that reading is `sgn(w)` corrected by the inversions of `w`
/// involving the letters absorbed into `y_1` (or removed). The number of
/// inversions involving the letter `v` at position `q` is `≡ q + v`
/// modulo 2.
fn word_coefficient(w: &[usize], sgn: i64, eps: u8, epsp: u8) -> i64 {
    let len = w.len();
    let c = |pos: usize| (pos + 1 + w[pos]) % 2;
    let mut total = 0i64;
    // pair terms: w_k w_{k+1} = x_a x_b from y_1 = [x_i, x_j]
    for k in 0..len.saturating_sub(1) {
        let (a, b) = (w[k], w[k + 1]);
        let (i, j) = (a.min(b), a.max(b));
        let order = if a < b { 1 } else { -1 };
        let collapsed = sgn * pm(c(k) + c(k + 1) + usize::from(a > b) + k);
        total += pm(i + j + 1) * order * collapsed;
    }
    if eps == 1 {
        let a = w[0];
        total += pm(a) * sgn * pm(c(0));
    }
    if epsp == 1 {
        let a = w[len - 1];
        total += pm(a + 1) * sgn * pm(c(len - 1));
    }
    total
}

/// Checks `d e_p = λ e_{p+1}` at every word of length `p+1`.
fn lambda_pointwise(eps: u8, epsp: u8, p: usize) -> Result<Rational> {
    let len = p + 1;
    let identity: Vec<usize> = (1..=len).collect();
    let lambda = word_coefficient(&identity, 1, eps, epsp);
    let bad = (1..=len).into_par_iter().find_map_any(|first| {
        let mut rest: Vec<usize> = (1..=len).filter(|&v| v != first).collect();
        // sign of the word `first, rest..` with rest increasing
        let mut sgn = pm(first - 1);
        loop {
            let mut w = Vec::with_capacity(len);
            w.push(first);
            w.extend_from_slice(&rest);
            if word_coefficient(&w, sgn, eps, epsp) != lambda * sgn {
                return Some(w);
            }
            let m = rest.len();
            let Some(i) = (1..m).rev().find(|&i| rest[i - 1] < rest[i]) else { break };
            let j = (i..m).rev().find(|&j| rest[j] > rest[i - 1]).unwrap();
            rest.swap(i - 1, j);
            rest[i..].reverse();
            let l = m - i;
            sgn = -sgn * pm(l * (l.saturating_sub(1)) / 2);
        }
        None
    });
    if let Some(w) = bad {
        return Err(Error::NotProportional { degree: p, detail: format!("coefficient mismatch at word {w:?}") });
    }
    Ok(int(lambda))
}

/// `λ_0, .., λ_pmax` for `E_{ε,ε'}`.
pub fn build_elementary(eps: u8, epsp: u8, pmax: usize) -> Result<ElementaryScalars> {
    check_bit(eps, "ε")?;
    check_bit(epsp, "ε'")?;
    let lambdas = (0..=pmax)
        .map(|p| if p <= ASSOC_ROUTE_MAX { lambda_assoc(eps, epsp, p) } else { lambda_pointwise(eps, epsp, p) })
        .collect::<Result<_>>()?;
    Ok(ElementaryScalars { eps, epsp, lambdas })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::homology;

    #[test]
    fn first_scalars() {
        let s = build_elementary(0, 1, 2).unwrap();
        assert_eq!(s.lambdas[0], int(1));
        assert_eq!(s.lambdas[1], int(0));
        assert_eq!(build_elementary(0, 0, 0).unwrap().lambdas[0], int(0));
        assert_eq!(build_elementary(1, 1, 0).unwrap().lambdas[0], int(0));
    }

    #[test]
    fn routes_agree() {
        for (e, f) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for p in 0..=ASSOC_ROUTE_MAX.min(5) {
                assert_eq!(lambda_assoc(e, f, p).unwrap(), lambda_pointwise(e, f, p).unwrap(), "({e},{f}) p={p}");
            }
        }
    }

    #[test]
    fn mixed_windows_are_exact() {
        for (e, f) in [(0, 1), (1, 0)] {
            let s = build_elementary(e, f, 7).unwrap();
            assert!(s.squares_to_zero());
            let h = homology(&s.window(8).unwrap()).unwrap();
            assert!(h.is_acyclic());
        }
    }

    #[test]
    fn bits_are_checked() {
        assert!(build_elementary(2, 0, 1).is_err());
    }
}
