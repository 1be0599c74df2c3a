use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::assoc::{add_into, AssocPoly};
use super::{apply, check_letter_map, format_letters, parse_letters, split_terms, Letter, LetterSet, Word};
use crate::error::{Error, Result};
use crate::Rational;

/// Left-normed bracket `[[..[x_anchor, x_t1], x_t2].., x_tk]` where the
/// anchor is the minimal letter of the support.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LieWord {
    anchor: Letter,
    tail: Vec<Letter>,
}

impl LieWord {
    pub fn new(anchor: Letter, tail: Vec<Letter>) -> Result<Self> {
        let w = Word::new(std::iter::once(anchor).chain(tail.iter().copied()).collect())?;
        if tail.iter().any(|&t| t < anchor) {
            let min = *w.0.iter().min().unwrap();
            return Err(Error::NotMinimal { letter: anchor, min });
        }
        Ok(LieWord { anchor, tail })
    }

    pub(crate) fn new_unchecked(anchor: Letter, tail: Vec<Letter>) -> Self {
        debug_assert!(tail.iter().all(|&t| t > anchor));
        LieWord { anchor, tail }
    }

    pub fn generator(l: Letter) -> Self {
        LieWord { anchor: l, tail: Vec::new() }
    }

    pub fn anchor(&self) -> Letter {
        self.anchor
    }

    pub fn tail(&self) -> &[Letter] {
        &self.tail
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.tail.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn support(&self) -> LetterSet {
        LetterSet::from_letters(std::iter::once(self.anchor).chain(self.tail.iter().copied()))
    }

    /// Letters in bracket order: anchor first, then the tail.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        std::iter::once(self.anchor).chain(self.tail.iter().copied())
    }

    /// Image in the free associative algebra (iterated commutators).
    pub fn expand(&self) -> AssocPoly {
        let mut terms: Vec<(Vec<Letter>, Rational)> = vec![(vec![self.anchor], Rational::one())];
        for &t in &self.tail {
            let mut next = Vec::with_capacity(terms.len() * 2);
            for (w, c) in terms {
                let mut right = w.clone();
                right.push(t);
                let mut left = Vec::with_capacity(w.len() + 1);
                left.push(t);
                left.extend_from_slice(&w);
                next.push((right, c.clone()));
                next.push((left, -c));
            }
            terms = next;
        }
        let map = terms.into_iter().map(|(w, c)| (Word(w), c)).collect();
        AssocPoly::from_map_unchecked(self.support(), map)
    }
}

impl fmt::Display for LieWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.anchor, format_letters(&self.tail))
    }
}

impl FromStr for LieWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, t) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("Lie word '{s}' lacks '|'")))?;
        let anchor: Letter =
            a.trim().parse().map_err(|_| Error::Parse(format!("bad anchor in '{s}'")))?;
        LieWord::new(anchor, parse_letters(t)?)
    }
}

/// Element of the multilinear slice `L_S` of the free Lie algebra, in the
/// min-anchored left-normed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiePoly {
    support: LetterSet,
    terms: BTreeMap<LieWord, Rational>,
}

impl LiePoly {
    pub fn zero(support: LetterSet) -> Self {
        LiePoly { support, terms: BTreeMap::new() }
    }

    pub fn generator(l: Letter) -> Self {
        Self::from_word(LieWord::generator(l), Rational::one())
    }

    pub fn from_word(w: LieWord, c: Rational) -> Self {
        let support = w.support();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        LiePoly { support, terms }
    }

    pub fn from_terms<I>(support: LetterSet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LieWord, Rational)>,
    {
        let mut p = LiePoly::zero(support);
        for (w, c) in terms {
            if w.support() != p.support {
                return Err(Error::ShapeMismatch(format!(
                    "Lie word {w} does not have support {:?}",
                    p.support.letters()
                )));
            }
            add_into(&mut p.terms, w, c);
        }
        Ok(p)
    }

    pub(crate) fn from_map_unchecked(support: LetterSet, terms: BTreeMap<LieWord, Rational>) -> Self {
        LiePoly { support, terms }
    }

    pub fn support(&self) -> &LetterSet {
        &self.support
    }

    pub fn terms(&self) -> &BTreeMap<LieWord, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &LieWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_scaled(&mut self, other: &LiePoly, c: &Rational) -> Result<()> {
        if self.support != other.support {
            return Err(Error::ShapeMismatch(format!(
                "supports differ: {:?} vs {:?}",
                self.support.letters(),
                other.support.letters()
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        for (w, d) in &other.terms {
            add_into(&mut self.terms, w.clone(), d * c);
        }
        Ok(())
    }

    pub fn add(&self, other: &LiePoly) -> Result<LiePoly> {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one())?;
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> LiePoly {
        if c.is_zero() {
            return LiePoly::zero(self.support.clone());
        }
        LiePoly {
            support: self.support.clone(),
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    pub fn neg(&self) -> LiePoly {
        self.scale(&-Rational::one())
    }

    /// Image under the canonical embedding into the free associative algebra.
    pub fn expand(&self) -> AssocPoly {
        let mut out = AssocPoly::zero(self.support.clone());
        for (w, c) in &self.terms {
            out.add_scaled(&w.expand(), c);
        }
        out
    }

    /// Lie bracket. With `m` the minimal letter of the combined support, the
    /// monomials of `ab - ba` starting with `m` all come from the factor
    /// containing `m`, so the bracket is `strip(a)·expand(b)` (or minus the
    /// swapped product) read as tails.
    pub fn bracket(&self, other: &LiePoly) -> Result<LiePoly> {
        let support = self.support.disjoint_union(&other.support)?;
        let m = match support.min_letter() {
            Some(m) => m,
            None => return Ok(LiePoly::zero(support)),
        };
        let (first, second, sign) = if self.support.contains(m) {
            (self, other, Rational::one())
        } else {
            (other, self, -Rational::one())
        };
        let expanded = second.expand();
        let mut terms = BTreeMap::new();
        for (w, a) in &first.terms {
            for (u, b) in expanded.terms() {
                let mut tail = w.tail.clone();
                tail.extend_from_slice(&u.0);
                add_into(&mut terms, LieWord::new_unchecked(m, tail), a * b * &sign);
            }
        }
        Ok(LiePoly { support, terms })
    }

    /// Relabels letters (unmapped letters are fixed). The image of a basis
    /// word is a left-normed bracket that is generally not anchored at the new
    /// minimal letter, so it is re-expanded with [`left_normed`].
    pub fn relabel(&self, map: &BTreeMap<Letter, Letter>) -> Result<LiePoly> {
        let support = check_letter_map(&self.support, map)?;
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let letters: Vec<Letter> = w.letters().map(|l| apply(map, l)).collect();
            for (v, d) in left_normed(&letters).terms {
                add_into(&mut terms, v, d * c);
            }
        }
        Ok(LiePoly { support, terms })
    }

    /// Substitutes Lie polynomials for letters (other letters are kept) and
    /// re-expresses the result in the canonical basis.
    pub fn substitute(&self, subst: &BTreeMap<Letter, LiePoly>) -> Result<LiePoly> {
        let mut support = LetterSet::empty();
        for &l in self.support.letters() {
            let s = subst.get(&l).map(|p| p.support.clone()).unwrap_or_else(|| LetterSet::from_letters([l]));
            support = support.disjoint_union(&s)?;
        }
        let mut out = LiePoly::zero(support);
        for (w, c) in &self.terms {
            let piece = |l: Letter| subst.get(&l).cloned().unwrap_or_else(|| LiePoly::generator(l));
            let mut acc = piece(w.anchor);
            for &t in &w.tail {
                acc = acc.bracket(&piece(t))?;
            }
            out.add_scaled(&acc, c)?;
        }
        Ok(out)
    }
}

/// Basis expansion of the left-normed bracket `[[..[y0, y1], ..], yk]` of
/// distinct letters. If the minimum sits at position `j > 0`, the monomials
/// of the expansion that start with it are `-y_j · P · y_{j+1}..y_k` with `P`
/// running over the expansion of `[..[y0, y1].., y_{j-1}]`.
pub fn left_normed(letters: &[Letter]) -> LiePoly {
    assert!(!letters.is_empty(), "left_normed of an empty bracket");
    let support = LetterSet::from_letters(letters.iter().copied());
    let (j, &m) = letters.iter().enumerate().min_by_key(|(_, l)| **l).unwrap();
    let mut terms = BTreeMap::new();
    if j == 0 {
        terms.insert(LieWord::new_unchecked(m, letters[1..].to_vec()), Rational::one());
    } else {
        let prefix = left_normed(&letters[..j]);
        for (w, c) in prefix.expand().terms() {
            let mut tail = w.0.clone();
            tail.extend_from_slice(&letters[j + 1..]);
            add_into(&mut terms, LieWord::new_unchecked(m, tail), -c.clone());
        }
    }
    LiePoly { support, terms }
}

impl fmt::Display for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::format_terms(f, self.terms.iter())
    }
}

impl FromStr for LiePoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out: Option<LiePoly> = None;
        for (c, b) in split_terms(s)? {
            let w: LieWord = b.parse()?;
            let p = out.get_or_insert_with(|| LiePoly::zero(w.support()));
            if w.support() != p.support {
                return Err(Error::Parse(format!("mixed supports in '{s}'")));
            }
            add_into(&mut p.terms, w, c);
        }
        Ok(out.unwrap_or_else(|| LiePoly::zero(LetterSet::empty())))
    }
}
