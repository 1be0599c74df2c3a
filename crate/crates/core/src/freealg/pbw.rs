//! PBW straightening in the multilinear free associative algebra, viewed as
//! the enveloping algebra of the free Lie algebra.
//!
//! The PBW basis consists of products `L_1 L_2 ... L_k` of Lie basis words
//! sorted by anchor. A word is brought to this form by repeatedly rewriting
//! an out-of-order adjacent pair `L_a L_b` as `L_b L_a + [L_a, L_b]`. Each
//! rewrite either removes an inversion or shortens the product, so the
//! process terminates. The number of factors of a basis product is its
//! filtration degree, and the top-degree part is the symbol in `S(L)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::assoc::{add_into, AssocPoly};
use super::lie::{LiePoly, LieWord};
use super::sym::{SymLiePoly, SymTerm};
use crate::Rational;

/// Components of an associative polynomial in the PBW basis, by filtration
/// degree. Absent degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwDecomposition {
    components: BTreeMap<usize, SymLiePoly>,
    support: super::LetterSet,
}

impl PbwDecomposition {
    pub fn component(&self, u: usize) -> SymLiePoly {
        self.components
            .get(&u)
            .cloned()
            .unwrap_or_else(|| SymLiePoly::zero(self.support.clone()))
    }

    pub fn components(&self) -> &BTreeMap<usize, SymLiePoly> {
        &self.components
    }

    /// Largest occupied degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.components.keys().next_back().copied()
    }

    /// Top-degree component (zero for the zero polynomial).
    pub fn symbol(&self) -> SymLiePoly {
        match self.degree() {
            Some(u) => self.component(u),
            None => SymLiePoly::zero(self.support.clone()),
        }
    }
}

type Straightened = Vec<(Vec<LieWord>, Rational)>;

struct Straightener {
    memo: HashMap<Vec<LieWord>, Straightened>,
}

impl Straightener {
    fn run(&mut self, seq: &[LieWord]) -> Straightened {
        if let Some(r) = self.memo.get(seq) {
            return r.clone();
        }
        let pos = seq.windows(2).position(|w| w[0].anchor() > w[1].anchor());
        let result = match pos {
            None => vec![(seq.to_vec(), Rational::one())],
            Some(k) => {
                let mut acc: BTreeMap<Vec<LieWord>, Rational> = BTreeMap::new();
                let mut swapped = seq.to_vec();
                swapped.swap(k, k + 1);
                for (t, c) in self.run(&swapped) {
                    add_into(&mut acc, t, c);
                }
                let a = LiePoly::from_word(seq[k].clone(), Rational::one());
                let b = LiePoly::from_word(seq[k + 1].clone(), Rational::one());
                let br = a.bracket(&b).expect("factors of a multilinear word are disjoint");
                for (w, c) in br.terms() {
                    let mut shorter = Vec::with_capacity(seq.len() - 1);
                    shorter.extend_from_slice(&seq[..k]);
                    shorter.push(w.clone());
                    shorter.extend_from_slice(&seq[k + 2..]);
                    for (t, d) in self.run(&shorter) {
                        add_into(&mut acc, t, d * c);
                    }
                }
                acc.into_iter().collect()
            }
        };
        self.memo.insert(seq.to_vec(), result.clone());
        result
    }
}

/// Rewrites `p` in the PBW basis and groups the result by filtration degree.
pub fn pbw_decompose(p: &AssocPoly) -> PbwDecomposition {
    let mut st = Straightener { memo: HashMap::new() };
    let mut components: BTreeMap<usize, SymLiePoly> = BTreeMap::new();
    for (w, c) in p.terms() {
        let seq: Vec<LieWord> = w.0.iter().map(|&l| LieWord::generator(l)).collect();
        for (blocks, d) in st.run(&seq) {
            let u = blocks.len();
            components
                .entry(u)
                .or_insert_with(|| SymLiePoly::zero(p.support().clone()))
                .add_term_unchecked(SymTerm::from_sorted_unchecked(blocks), d * c);
        }
    }
    components.retain(|_, v| !v.is_zero());
    PbwDecomposition { components, support: p.support().clone() }
}

/// Filtration degree of `p`; `None` for zero.
pub fn pbw_degree(p: &AssocPoly) -> Option<usize> {
    pbw_decompose(p).degree()
}

/// Top-degree component of the PBW decomposition.
pub fn symbol(p: &AssocPoly) -> SymLiePoly {
    pbw_decompose(p).symbol()
}

/// Image of a PBW element back in the associative algebra (product of the
/// expanded blocks in anchor order). Used to check decompositions.
pub fn pbw_to_assoc(s: &SymLiePoly) -> AssocPoly {
    let mut out = AssocPoly::zero(s.support().clone());
    for (t, c) in s.terms() {
        let mut prod = AssocPoly::one();
        for b in t.blocks() {
            prod = prod.mul(&b.expand()).expect("blocks are disjoint");
        }
        out.add_scaled(&prod, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> AssocPoly {
        s.parse().unwrap()
    }

    fn s(x: &str) -> SymLiePoly {
        x.parse().unwrap()
    }

    #[test]
    fn sorted_word_is_already_normal() {
        let d = pbw_decompose(&a("1*12"));
        assert_eq!(d.component(2), s("1*{1|}{2|}"));
        assert!(d.component(1).is_zero());
    }

    #[test]
    fn unsorted_word_picks_up_a_bracket() {
        // x2 x1 = x1 x2 - [x1, x2]
        let d = pbw_decompose(&a("1*21"));
        assert_eq!(d.component(2), s("1*{1|}{2|}"));
        assert_eq!(d.component(1), s("-1*{1|2}"));
    }

    #[test]
    fn lie_element_has_degree_one() {
        let d = pbw_decompose(&a("1*12+-1*21"));
        assert_eq!(d.degree(), Some(1));
        assert_eq!(d.symbol(), s("1*{1|2}"));
    }

    #[test]
    fn unit_has_degree_zero() {
        let d = pbw_decompose(&AssocPoly::one());
        assert_eq!(d.degree(), Some(0));
        assert_eq!(d.component(0), SymLiePoly::one());
        assert_eq!(pbw_degree(&AssocPoly::zero(super::super::LetterSet::empty())), None);
    }

    #[test]
    fn decomposition_reassembles() {
        let p = a("1*321+2*213+-1*132");
        let d = pbw_decompose(&p);
        let mut back = AssocPoly::zero(p.support().clone());
        for c in d.components().values() {
            back.add_scaled(&pbw_to_assoc(c), &Rational::one());
        }
        assert_eq!(back, p);
    }
}
