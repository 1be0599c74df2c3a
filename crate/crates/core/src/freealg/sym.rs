use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::assoc::add_into;
use super::lie::{LiePoly, LieWord};
use super::{split_terms, Letter, LetterSet};
use crate::error::{Error, Result};
use crate::Rational;

/// Commutative product of Lie basis words with disjoint supports, kept
/// sorted by anchor. The empty product is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymTerm(Vec<LieWord>);

impl SymTerm {
    pub fn unit() -> Self {
        SymTerm(Vec::new())
    }

    /// Sorts the blocks; fails if two blocks share a letter.
    pub fn new(mut blocks: Vec<LieWord>) -> Result<Self> {
        let mut seen = LetterSet::empty();
        for b in &blocks {
            seen = seen.disjoint_union(&b.support())?;
        }
        blocks.sort_by_key(|b| b.anchor());
        Ok(SymTerm(blocks))
    }

    pub(crate) fn from_sorted_unchecked(blocks: Vec<LieWord>) -> Self {
        SymTerm(blocks)
    }

    pub fn blocks(&self) -> &[LieWord] {
        &self.0
    }

    /// Number of blocks: the PBW / polynomial degree.
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn support(&self) -> LetterSet {
        LetterSet::from_letters(self.0.iter().flat_map(|b| b.letters().collect::<Vec<_>>()))
    }
}

impl fmt::Display for SymTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "{{}}");
        }
        for b in &self.0 {
            write!(f, "{{{b}}}")?;
        }
        Ok(())
    }
}

/// Element of the multilinear slice of the free Poisson algebra `S(L)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymLiePoly {
    support: LetterSet,
    terms: BTreeMap<SymTerm, Rational>,
}

impl SymLiePoly {
    pub fn zero(support: LetterSet) -> Self {
        SymLiePoly { support, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(SymTerm::unit(), Rational::one());
        SymLiePoly { support: LetterSet::empty(), terms }
    }

    pub fn generator(l: Letter) -> Self {
        Self::from_lie(&LiePoly::generator(l))
    }

    /// A Lie element viewed as a single-block (degree 1) element.
    pub fn from_lie(l: &LiePoly) -> Self {
        let terms = l
            .terms()
            .iter()
            .map(|(w, c)| (SymTerm(vec![w.clone()]), c.clone()))
            .collect();
        SymLiePoly { support: l.support().clone(), terms }
    }

    pub fn from_terms<I>(support: LetterSet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SymTerm, Rational)>,
    {
        let mut p = SymLiePoly::zero(support);
        for (t, c) in terms {
            if t.support() != p.support {
                return Err(Error::ShapeMismatch(format!("term {t} has the wrong support")));
            }
            add_into(&mut p.terms, t, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term_unchecked(&mut self, t: SymTerm, c: Rational) {
        add_into(&mut self.terms, t, c);
    }

    pub fn support(&self) -> &LetterSet {
        &self.support
    }

    pub fn terms(&self) -> &BTreeMap<SymTerm, Rational> {
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

    pub fn coeff(&self, t: &SymTerm) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degrees (block counts) occurring with nonzero coefficient.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(SymTerm::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Component of the given polynomial degree.
    pub fn component(&self, u: usize) -> SymLiePoly {
        SymLiePoly {
            support: self.support.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.degree() == u)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &SymLiePoly, c: &Rational) -> Result<()> {
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
        for (t, d) in &other.terms {
            add_into(&mut self.terms, t.clone(), d * c);
        }
        Ok(())
    }

    pub fn add(&self, other: &SymLiePoly) -> Result<SymLiePoly> {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one())?;
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SymLiePoly {
        if c.is_zero() {
            return SymLiePoly::zero(self.support.clone());
        }
        SymLiePoly {
            support: self.support.clone(),
            terms: self.terms.iter().map(|(t, d)| (t.clone(), d * c)).collect(),
        }
    }

    /// Commutative product (union of block sets).
    pub fn mul(&self, other: &SymLiePoly) -> Result<SymLiePoly> {
        let support = self.support.disjoint_union(&other.support)?;
        let mut terms = BTreeMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                add_into(&mut terms, merge(s, t), a * b);
            }
        }
        Ok(SymLiePoly { support, terms })
    }

    /// Poisson bracket: the Lie bracket on blocks, extended by the Leibniz
    /// rule in both arguments.
    pub fn bracket(&self, other: &SymLiePoly) -> Result<SymLiePoly> {
        let support = self.support.disjoint_union(&other.support)?;
        let mut out = SymLiePoly::zero(support);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let ab = a * b;
                for (i, u) in s.0.iter().enumerate() {
                    for (j, v) in t.0.iter().enumerate() {
                        let br = LiePoly::from_word(u.clone(), Rational::one())
                            .bracket(&LiePoly::from_word(v.clone(), Rational::one()))?;
                        let mut rest: Vec<LieWord> = Vec::with_capacity(s.0.len() + t.0.len() - 2);
                        rest.extend(s.0.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, w)| w.clone()));
                        rest.extend(t.0.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, w)| w.clone()));
                        for (w, c) in br.terms() {
                            let mut blocks = rest.clone();
                            blocks.push(w.clone());
                            blocks.sort_by_key(|b| b.anchor());
                            out.add_term_unchecked(SymTerm(blocks), c * &ab);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of Lie elements with pairwise disjoint supports.
    pub fn product_of(factors: &[LiePoly]) -> Result<SymLiePoly> {
        let mut acc = SymLiePoly::one();
        for f in factors {
            acc = acc.mul(&SymLiePoly::from_lie(f))?;
        }
        Ok(acc)
    }

    /// Substitutes Lie elements for letters (other letters are kept).
    pub fn substitute(&self, subst: &BTreeMap<Letter, LiePoly>) -> Result<SymLiePoly> {
        let mut support = LetterSet::empty();
        for &l in self.support.letters() {
            let s = subst.get(&l).map(|p| p.support().clone()).unwrap_or_else(|| LetterSet::from_letters([l]));
            support = support.disjoint_union(&s)?;
        }
        let mut out = SymLiePoly::zero(support);
        for (t, c) in &self.terms {
            let blocks: Vec<LiePoly> = t
                .0
                .iter()
                .map(|w| LiePoly::from_word(w.clone(), Rational::one()).substitute(subst))
                .collect::<Result<_>>()?;
            out.add_scaled(&SymLiePoly::product_of(&blocks)?, c)?;
        }
        Ok(out)
    }

    /// Relabels letters (unmapped letters are fixed).
    pub fn relabel(&self, map: &BTreeMap<Letter, Letter>) -> Result<SymLiePoly> {
        super::check_letter_map(&self.support, map)?;
        let subst = map.iter().map(|(&a, &b)| (a, LiePoly::generator(b))).collect();
        self.substitute(&subst)
    }
}

fn merge(s: &SymTerm, t: &SymTerm) -> SymTerm {
    let mut blocks = Vec::with_capacity(s.0.len() + t.0.len());
    blocks.extend(s.0.iter().cloned());
    blocks.extend(t.0.iter().cloned());
    blocks.sort_by_key(|b| b.anchor());
    SymTerm(blocks)
}

impl fmt::Display for SymLiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::format_terms(f, self.terms.iter())
    }
}

impl FromStr for SymTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "{}" {
            return Ok(SymTerm::unit());
        }
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("bad symmetric monomial '{s}'")))?;
        let blocks = inner.split("}{").map(str::parse).collect::<Result<Vec<LieWord>>>()?;
        SymTerm::new(blocks)
    }
}

impl FromStr for SymLiePoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out: Option<SymLiePoly> = None;
        for (c, b) in split_terms(s)? {
            let t: SymTerm = b.parse()?;
            let p = out.get_or_insert_with(|| SymLiePoly::zero(t.support()));
            if t.support() != p.support {
                return Err(Error::Parse(format!("mixed supports in '{s}'")));
            }
            add_into(&mut p.terms, t, c);
        }
        Ok(out.unwrap_or_else(|| SymLiePoly::zero(LetterSet::empty())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> SymLiePoly {
        x.parse().unwrap()
    }

    fn g(l: Letter) -> SymLiePoly {
        SymLiePoly::generator(l)
    }

    #[test]
    fn bracket_of_generators_is_a_block() {
        assert_eq!(g(1).bracket(&g(2)).unwrap(), s("1*{1|2}"));
        assert_eq!(g(2).bracket(&g(1)).unwrap(), s("-1*{1|2}"));
    }

    #[test]
    fn product_is_commutative() {
        assert_eq!(g(1).mul(&g(2)).unwrap(), s("1*{1|}{2|}"));
        assert_eq!(g(2).mul(&g(1)).unwrap(), g(1).mul(&g(2)).unwrap());
        assert_eq!(SymLiePoly::one().to_string(), "1*{}");
    }

    #[test]
    fn leibniz_rule() {
        let rhs = g(2).mul(&g(3)).unwrap();
        assert_eq!(g(1).bracket(&rhs).unwrap(), s("1*{1|2}{3|}+1*{1|3}{2|}"));
    }

    #[test]
    fn overlapping_supports_fail() {
        assert!(g(1).mul(&g(1)).is_err());
        assert!(g(1).bracket(&s("1*{1|2}")).is_err());
    }

    #[test]
    fn relabel_swaps_blocks() {
        let x = s("1*{1|2}{3|}");
        let map = BTreeMap::from([(1, 3), (3, 1)]);
        // {x3,x2}x1 = -{x2,x3}x1
        assert_eq!(x.relabel(&map).unwrap(), s("-1*{1|}{2|3}"));
    }

    #[test]
    fn text_round_trip() {
        let x = s("2*{1|3}{2|}+-1/3*{1|}{2|3}");
        assert_eq!(x.to_string().parse::<SymLiePoly>().unwrap(), x);
        assert_eq!(x.degrees(), vec![2]);
    }
}
