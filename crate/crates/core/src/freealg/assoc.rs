use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::lie::{LiePoly, LieWord};
use super::{apply, check_letter_map, parse_letters, split_terms, Letter, LetterSet, Word};
use crate::error::{Error, Result};
use crate::Rational;

/// Element of the multilinear slice `A_S` of the free associative algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AssocPoly {
    support: LetterSet,
    terms: BTreeMap<Word, Rational>,
}

impl AssocPoly {
    pub fn zero(support: LetterSet) -> Self {
        AssocPoly { support, terms: BTreeMap::new() }
    }

    /// The unit `1`, supported on the empty set.
    pub fn one() -> Self {
        Self::monomial(Word::empty(), Rational::one())
    }

    pub fn letter(l: Letter) -> Self {
        Self::monomial(Word(vec![l]), Rational::one())
    }

    pub fn monomial(word: Word, coeff: Rational) -> Self {
        let support = word.support();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        AssocPoly { support, terms }
    }

    /// Builds a polynomial from terms that must all have support `support`.
    pub fn from_terms<I>(support: LetterSet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        let mut p = AssocPoly::zero(support);
        for (w, c) in terms {
            let ws = Word::new(w.0.clone())?.support();
            if ws != p.support {
                return Err(Error::ShapeMismatch(format!(
                    "word {w} does not have support {:?}",
                    p.support.letters()
                )));
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub(crate) fn from_map_unchecked(support: LetterSet, terms: BTreeMap<Word, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        AssocPoly { support, terms }
    }

    pub fn support(&self) -> &LetterSet {
        &self.support
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        add_into(&mut self.terms, w, c);
    }

    pub fn add_scaled(&mut self, other: &AssocPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            add_into(&mut self.terms, w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> AssocPoly {
        if c.is_zero() {
            return AssocPoly::zero(self.support.clone());
        }
        AssocPoly {
            support: self.support.clone(),
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    pub fn add(&self, other: &AssocPoly) -> Result<AssocPoly> {
        self.check_same_support(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn sub(&self, other: &AssocPoly) -> Result<AssocPoly> {
        self.check_same_support(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    fn check_same_support(&self, other: &AssocPoly) -> Result<()> {
        if self.support != other.support {
            return Err(Error::ShapeMismatch(format!(
                "supports differ: {:?} vs {:?}",
                self.support.letters(),
                other.support.letters()
            )));
        }
        Ok(())
    }

    /// Concatenation product; the supports must be disjoint.
    pub fn mul(&self, other: &AssocPoly) -> Result<AssocPoly> {
        let support = self.support.disjoint_union(&other.support)?;
        let mut terms = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                add_into(&mut terms, u.concat(v), a * b);
            }
        }
        Ok(AssocPoly { support, terms })
    }

    pub fn commutator(&self, other: &AssocPoly) -> Result<AssocPoly> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        ab.sub(&ba)
    }

    /// Relabels letters (unmapped letters are fixed). Relabelling permutes
    /// monomials, so this is cheap.
    pub fn relabel(&self, map: &BTreeMap<Letter, Letter>) -> Result<AssocPoly> {
        let support = check_letter_map(&self.support, map)?;
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (Word(w.0.iter().map(|l| apply(map, *l)).collect()), c.clone()))
            .collect();
        Ok(AssocPoly { support, terms })
    }

    /// Multilinear substitution: each letter in `subst` is replaced by the
    /// given polynomial, other letters are kept.
    pub fn substitute(&self, subst: &BTreeMap<Letter, AssocPoly>) -> Result<AssocPoly> {
        let mut support = LetterSet::empty();
        for &l in self.support.letters() {
            let s = match subst.get(&l) {
                Some(p) => p.support.clone(),
                None => LetterSet::from_letters([l]),
            };
            support = support.disjoint_union(&s)?;
        }
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut partial: Vec<(Vec<Letter>, Rational)> = vec![(Vec::new(), c.clone())];
            for l in &w.0 {
                match subst.get(l) {
                    None => partial.iter_mut().for_each(|(v, _)| v.push(*l)),
                    Some(p) => {
                        let mut next = Vec::with_capacity(partial.len() * p.terms.len());
                        for (v, a) in &partial {
                            for (u, b) in &p.terms {
                                let mut nv = v.clone();
                                nv.extend_from_slice(&u.0);
                                next.push((nv, a * b));
                            }
                        }
                        partial = next;
                    }
                }
            }
            for (v, a) in partial {
                add_into(&mut terms, Word(v), a);
            }
        }
        Ok(AssocPoly { support, terms })
    }

    /// Reads off a Lie element from the monomials starting with `m`, which
    /// must be the minimal letter of the support. This is the left inverse of
    /// [`LiePoly::expand`]; monomials not starting with `m` are discarded.
    pub fn strip_to_lie(&self, m: Letter) -> Result<LiePoly> {
        let min = self.support.min_letter();
        if min != Some(m) {
            return Err(Error::NotMinimal { letter: m, min: min.unwrap_or(0) });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.0.first() == Some(&m))
            .map(|(w, c)| (LieWord::new_unchecked(m, w.0[1..].to_vec()), c.clone()));
        Ok(LiePoly::from_map_unchecked(self.support.clone(), terms.collect()))
    }
}

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, k: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl fmt::Display for AssocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::format_terms(f, self.terms.iter())
    }
}

impl FromStr for AssocPoly {
    type Err = Error;

    /// Parses the canonical text form. The zero polynomial `"0"` parses with
    /// empty support.
    fn from_str(s: &str) -> Result<Self> {
        let mut out: Option<AssocPoly> = None;
        for (c, b) in split_terms(s)? {
            let letters = if b == "e" { Vec::new() } else { parse_letters(&b)? };
            let w = Word::new(letters)?;
            let p = out.get_or_insert_with(|| AssocPoly::zero(w.support()));
            if w.support() != p.support {
                return Err(Error::Parse(format!("mixed supports in '{s}'")));
            }
            p.add_term(w, c);
        }
        Ok(out.unwrap_or_else(|| AssocPoly::zero(LetterSet::empty())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(s: &str) -> AssocPoly {
        s.parse().unwrap()
    }

    #[test]
    fn concatenation_product() {
        assert_eq!(AssocPoly::letter(1).mul(&AssocPoly::letter(2)).unwrap(), p("1*12"));
        assert_eq!(p("1*12+-1*21").mul(&AssocPoly::letter(3)).unwrap(), p("1*123+-1*213"));
        assert_eq!(AssocPoly::letter(1).mul(&p("1*23+1*32")).unwrap(), p("1*123+1*132"));
    }

    #[test]
    fn overlapping_product_is_rejected() {
        let err = p("1*12").mul(&p("1*23")).unwrap_err();
        assert_eq!(err, Error::NonMultilinear(vec![2]));
        assert!(err.to_string().contains("non-multilinear product"));
    }

    #[test]
    fn unit_is_neutral() {
        let x = p("2*13+-1*31");
        assert_eq!(AssocPoly::one().mul(&x).unwrap(), x);
        assert_eq!(x.mul(&AssocPoly::one()).unwrap(), x);
        assert_eq!(AssocPoly::one().to_string(), "1*e");
    }

    #[test]
    fn strip_requires_minimal_letter() {
        assert!(p("1*23+-1*32").strip_to_lie(3).is_err());
        let l = p("1*21").strip_to_lie(1).unwrap();
        assert!(l.is_zero());
    }

    #[test]
    fn substitution_expands_multilinearly() {
        let mut subst = BTreeMap::new();
        subst.insert(1, p("1*34+-1*43"));
        let q = p("1*12").substitute(&subst).unwrap();
        assert_eq!(q, p("1*342+-1*432"));
        assert_eq!(q.coeff(&Word(vec![3, 4, 2])), int(1));
    }
}
