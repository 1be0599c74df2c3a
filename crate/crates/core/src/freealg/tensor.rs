use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::assoc::add_into;
use super::lie::{LiePoly, LieWord};
use super::{split_terms, Letter, LetterSet};
use crate::error::{Error, Result};
use crate::Rational;

/// Element of the multilinear slice of `L^{⊗q}`: terms are ordered
/// `q`-tuples of Lie basis words whose supports partition the support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorLiePoly {
    support: LetterSet,
    arity: usize,
    terms: BTreeMap<Vec<LieWord>, Rational>,
}

impl TensorLiePoly {
    pub fn zero(support: LetterSet, arity: usize) -> Self {
        TensorLiePoly { support, arity, terms: BTreeMap::new() }
    }

    /// A single basis tensor; the blocks must have disjoint supports.
    pub fn basis(blocks: Vec<LieWord>, c: Rational) -> Result<Self> {
        let mut support = LetterSet::empty();
        for b in &blocks {
            support = support.disjoint_union(&b.support())?;
        }
        let mut out = TensorLiePoly::zero(support, blocks.len());
        add_into(&mut out.terms, blocks, c);
        Ok(out)
    }

    /// Tensor product `f_1 ⊗ ... ⊗ f_q` of Lie elements.
    pub fn tensor(factors: &[LiePoly]) -> Result<Self> {
        let mut support = LetterSet::empty();
        for f in factors {
            support = support.disjoint_union(f.support())?;
        }
        let mut terms: Vec<(Vec<LieWord>, Rational)> = vec![(Vec::new(), Rational::one())];
        for f in factors {
            let mut next = Vec::with_capacity(terms.len() * f.len());
            for (t, a) in &terms {
                for (w, b) in f.terms() {
                    let mut nt = t.clone();
                    nt.push(w.clone());
                    next.push((nt, a * b));
                }
            }
            terms = next;
        }
        let mut out = TensorLiePoly::zero(support, factors.len());
        for (t, c) in terms {
            add_into(&mut out.terms, t, c);
        }
        Ok(out)
    }

    pub fn support(&self) -> &LetterSet {
        &self.support
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<LieWord>, Rational> {
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

    pub fn coeff(&self, t: &[LieWord]) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_scaled(&mut self, other: &TensorLiePoly, c: &Rational) -> Result<()> {
        if self.support != other.support || self.arity != other.arity {
            return Err(Error::ShapeMismatch(format!(
                "tensors of shape ({:?}, {}) and ({:?}, {})",
                self.support.letters(),
                self.arity,
                other.support.letters(),
                other.arity
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

    pub fn scale(&self, c: &Rational) -> TensorLiePoly {
        let mut out = TensorLiePoly::zero(self.support.clone(), self.arity);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(t, d)| (t.clone(), d * c)).collect();
        }
        out
    }

    /// Substitutes Lie elements for letters in every tensor factor.
    pub fn substitute(&self, subst: &BTreeMap<Letter, LiePoly>) -> Result<TensorLiePoly> {
        let mut support = LetterSet::empty();
        for &l in self.support.letters() {
            let s = subst.get(&l).map(|p| p.support().clone()).unwrap_or_else(|| LetterSet::from_letters([l]));
            support = support.disjoint_union(&s)?;
        }
        let mut out = TensorLiePoly::zero(support, self.arity);
        for (t, c) in &self.terms {
            let factors: Vec<LiePoly> = t
                .iter()
                .map(|w| LiePoly::from_word(w.clone(), Rational::one()).substitute(subst))
                .collect::<Result<_>>()?;
            out.add_scaled(&TensorLiePoly::tensor(&factors)?, c)?;
        }
        Ok(out)
    }

    /// Relabels letters in every factor (unmapped letters are fixed).
    pub fn relabel(&self, map: &BTreeMap<Letter, Letter>) -> Result<TensorLiePoly> {
        let support = super::check_letter_map(&self.support, map)?;
        let mut out = TensorLiePoly::zero(support, self.arity);
        for (t, c) in &self.terms {
            let factors: Vec<LiePoly> = t
                .iter()
                .map(|w| LiePoly::from_word(w.clone(), Rational::one()).relabel(map))
                .collect::<Result<_>>()?;
            let img = TensorLiePoly::tensor(&factors)?;
            for (u, d) in img.terms {
                add_into(&mut out.terms, u, d * c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TensorLiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct Blocks<'a>(&'a [LieWord]);
        impl fmt::Display for Blocks<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for b in self.0 {
                    write!(f, "[{b}]")?;
                }
                Ok(())
            }
        }
        let shown: Vec<(Blocks, &Rational)> = self.terms.iter().map(|(t, c)| (Blocks(t), c)).collect();
        super::format_terms(f, shown.iter().map(|(b, c)| (b, *c)))
    }
}

impl FromStr for TensorLiePoly {
    type Err = Error;

    /// Parses `"c*[1|2][3|]+..."`; the zero tensor `"0"` has arity 0.
    fn from_str(s: &str) -> Result<Self> {
        let mut out: Option<TensorLiePoly> = None;
        for (c, b) in split_terms(s)? {
            let inner = b
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad tensor monomial '{b}'")))?;
            let blocks = inner.split("][").map(str::parse).collect::<Result<Vec<LieWord>>>()?;
            let t = TensorLiePoly::basis(blocks, c)?;
            match out.as_mut() {
                None => out = Some(t),
                Some(p) => p.add_scaled(&t, &Rational::one()).map_err(|e| Error::Parse(e.to_string()))?,
            }
        }
        Ok(out.unwrap_or_else(|| TensorLiePoly::zero(LetterSet::empty(), 0)))
    }
}
