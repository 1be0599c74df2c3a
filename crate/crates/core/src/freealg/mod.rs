//! Multilinear free associative, free Lie and free Poisson algebras.
//!
//! Every object lives in a multilinear slice: a fixed finite set of letters
//! (the *support*), each used exactly once per monomial. Coefficients are
//! exact rationals and zero coefficients are never stored, so equality of
//! two values is structural equality.
//!
//! The multilinear free Lie algebra on a support `S` has the basis of
//! left-normed brackets `[[..[x_m, x_t1], x_t2].., x_tk]` anchored at
//! `m = min(S)`, indexed by the words `t` on `S \ {m}`. Under the embedding
//! into the free associative algebra such a bracket is the only basis element
//! whose expansion contains the monomial `m t`, and it does so with
//! coefficient 1. Reading off the coefficients of monomials starting with
//! `m` therefore inverts the embedding ([`AssocPoly::strip_to_lie`]).
//!
//! # Text format
//!
//! Letters are decimal integers. A word is written by concatenating its
//! letters when every letter is below 10 (`"132"`), and comma-separated
//! otherwise (`"1,12,3"`); the empty word is `"e"`. A Lie basis word is
//! `"min|tail"` (`"1|23"`, or `"4|"` for a single generator). Symmetric
//! (Poisson) monomials are products of braced blocks (`"{1|2}{3|}"`, unit
//! `"{}"`) and tensors are bracketed blocks (`"[1|2][3|]"`). A polynomial is
//! `coeff*basis` terms joined by `+`, coefficients as `n` or `n/d`
//! (`"1*12+-1*21"`); the zero polynomial is `"0"`.

mod assoc;
mod lie;
mod pbw;
mod sym;
mod tensor;

pub use assoc::AssocPoly;
pub use lie::{left_normed, LiePoly, LieWord};
pub use pbw::{pbw_decompose, pbw_degree, pbw_to_assoc, symbol, PbwDecomposition};
pub use sym::{SymLiePoly, SymTerm};
pub use tensor::TensorLiePoly;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

/// A finite set of letters, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LetterSet(Vec<Letter>);

impl LetterSet {
    pub fn empty() -> Self {
        LetterSet(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut v: Vec<Letter> = letters.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        LetterSet(v)
    }

    /// `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: Letter, hi: Letter) -> Self {
        LetterSet((lo..=hi).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_letter(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn intersection(&self, other: &LetterSet) -> Vec<Letter> {
        self.0.iter().copied().filter(|l| other.contains(*l)).collect()
    }

    pub fn is_disjoint(&self, other: &LetterSet) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn union(&self, other: &LetterSet) -> LetterSet {
        LetterSet::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Union of two sets that must be disjoint.
    pub fn disjoint_union(&self, other: &LetterSet) -> Result<LetterSet> {
        let common = self.intersection(other);
        if !common.is_empty() {
            return Err(Error::NonMultilinear(common));
        }
        Ok(self.union(other))
    }

    pub fn without(&self, l: Letter) -> LetterSet {
        LetterSet(self.0.iter().copied().filter(|&x| x != l).collect())
    }

    pub fn is_subset(&self, other: &LetterSet) -> bool {
        self.0.iter().all(|l| other.contains(*l))
    }
}

/// A multilinear monomial: an ordered sequence of distinct letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        let set = LetterSet::from_letters(letters.iter().copied());
        if set.len() != letters.len() {
            return Err(Error::NonMultilinear(repeated(&letters)));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> LetterSet {
        LetterSet::from_letters(self.0.iter().copied())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

fn repeated(letters: &[Letter]) -> Vec<Letter> {
    let mut seen = std::collections::BTreeSet::new();
    let mut rep = std::collections::BTreeSet::new();
    for &l in letters {
        if !seen.insert(l) {
            rep.insert(l);
        }
    }
    rep.into_iter().collect()
}

/// Applies a letter map, leaving unmapped letters fixed, and checks that the
/// result is injective on `support`.
pub(crate) fn check_letter_map(
    support: &LetterSet,
    map: &BTreeMap<Letter, Letter>,
) -> Result<LetterSet> {
    let image = LetterSet::from_letters(support.letters().iter().map(|l| apply(map, *l)));
    if image.len() != support.len() {
        return Err(Error::NotBijection(format!(
            "support {:?} is not mapped injectively",
            support.letters()
        )));
    }
    Ok(image)
}

#[inline]
pub(crate) fn apply(map: &BTreeMap<Letter, Letter>, l: Letter) -> Letter {
    map.get(&l).copied().unwrap_or(l)
}

pub(crate) fn format_letters(letters: &[Letter]) -> String {
    if letters.iter().all(|&l| l < 10) {
        letters.iter().map(|l| l.to_string()).collect()
    } else {
        letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub(crate) fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let bad = || Error::Parse(format!("bad letter sequence '{s}'"));
    if s.contains(',') {
        s.split(',').map(|p| p.trim().parse::<Letter>().map_err(|_| bad())).collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as Letter).ok_or_else(bad))
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", format_letters(&self.0))
        }
    }
}

/// Writes `coeff*basis` terms joined by `+`, or `0`.
pub(crate) fn format_terms<'a, K: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a crate::Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if !first {
            write!(f, "+")?;
        }
        first = false;
        write!(f, "{}*{}", crate::rational::format(c), k)?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Splits `"c1*b1+c2*b2"` into `(coeff, basis)` pairs. Negative
/// coefficients carry their own sign (`"1*12+-1*21"`).
pub(crate) fn split_terms(s: &str) -> Result<Vec<(crate::Rational, String)>> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in s.split('+') {
        let part = part.trim();
        let (c, b) = part
            .split_once('*')
            .ok_or_else(|| Error::Parse(format!("term '{part}' lacks '*'")))?;
        out.push((crate::rational::parse(c)?, b.trim().to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_set_ops() {
        let a = LetterSet::from_letters([3, 1, 2]);
        let b = LetterSet::from_letters([4]);
        assert_eq!(a.letters(), &[1, 2, 3]);
        assert_eq!(a.min_letter(), Some(1));
        assert!(a.is_disjoint(&b));
        assert_eq!(a.disjoint_union(&b).unwrap().letters(), &[1, 2, 3, 4]);
        assert_eq!(a.disjoint_union(&a), Err(Error::NonMultilinear(vec![1, 2, 3])));
    }

    #[test]
    fn word_rejects_repeats() {
        assert!(Word::new(vec![1, 2, 1]).is_err());
        assert_eq!(Word::new(vec![2, 1]).unwrap().to_string(), "21");
        assert_eq!(Word(vec![1, 12]).to_string(), "1,12");
        assert_eq!(parse_letters("1,12").unwrap(), vec![1, 12]);
        assert_eq!(parse_letters("312").unwrap(), vec![3, 1, 2]);
    }
}
