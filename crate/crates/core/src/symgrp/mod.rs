//! Symmetric group combinatorics.
//!
//! Permutations act on `{1, ..., n}` and are displayed in cycle notation.
//! Composition follows function composition: `tau.compose(&sigma)` is
//! `tau ∘ sigma`, i.e. first `sigma`, then `tau`.

mod antisym;
mod chartab;
mod combinat;

pub use antisym::{antiinvariant_basis, antisymmetrize, Relabel};
pub use chartab::{character_table, character_table_bounded, multiplicities, CharacterTable, DEFAULT_TABLE_BOUND};
pub use combinat::{
    compositions, multinomial, ordered_set_partitions, set_partitions, shuffles, SetPartitionOrdered,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation {
    /// `images[i] = σ(i+1) - 1`.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From one-line notation `[σ(1), ..., σ(n)]` (1-based).
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotBijection(format!("{images:?} is not a permutation of 1..{n}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|x| x - 1).collect() })
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x > n || seen[x - 1] {
                    return Err(Error::NotBijection(format!("bad cycle {c:?} for degree {n}")));
                }
                seen[x - 1] = true;
                images[x - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::from_cycles(n, &[vec![a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degrees");
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    /// Cycles of length at least 2, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.images[x];
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> IntPartition {
        let mut seen = vec![false; self.degree()];
        let mut parts = Vec::new();
        for s in 0..self.degree() {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            if len > 0 {
                parts.push(len);
            }
        }
        IntPartition::new(parts)
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        let odd = self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
        if odd {
            -1
        } else {
            1
        }
    }

    /// All permutations of degree `n`, in lexicographic order of one-line
    /// notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// The letter map `l_i ↦ l_{σ(i)}` for an ordered list of letters.
    pub fn letter_map(&self, letters: &[u32]) -> BTreeMap<u32, u32> {
        assert_eq!(letters.len(), self.degree());
        letters.iter().enumerate().map(|(i, &l)| (l, letters[self.images[i]])).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

/// Parses cycle notation such as `"(1 2)(3 4)"`, `"(2,3)"`, `"()"` or
/// `"id"`. The degree is the largest letter mentioned; use
/// [`parse_cycles`] to fix it.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = cycle_lists(s)?;
        let n = cycles.iter().flatten().copied().max().unwrap_or(0);
        Permutation::from_cycles(n, &cycles)
    }
}

/// Parses cycle notation into a permutation of the given degree.
pub fn parse_cycles(s: &str, n: usize) -> Result<Permutation> {
    Permutation::from_cycles(n, &cycle_lists(s)?)
}

fn cycle_lists(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    if s.is_empty() || s == "id" || s == "()" {
        return Ok(Vec::new());
    }
    let bad = || Error::Parse(format!("bad cycle notation '{s}'"));
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let r = rest.strip_prefix('(').ok_or_else(bad)?;
        let end = r.find(')').ok_or_else(bad)?;
        let body = &r[..end];
        let c: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if !c.is_empty() {
            out.push(c);
        }
        rest = r[end + 1..].trim_start();
    }
    Ok(out)
}

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntPartition(Vec<usize>);

impl IntPartition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// All partitions of `n`, in decreasing lexicographic order (`(n)` first).
    pub fn all(n: usize) -> Vec<IntPartition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<IntPartition>) {
            if n == 0 {
                out.push(IntPartition(cur.clone()));
                return;
            }
            for k in (1..=max.min(n)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Order of the centralizer of a permutation of this cycle type:
    /// `∏ k^{m_k} m_k!`.
    pub fn centralizer_order(&self) -> u128 {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for &p in &self.0 {
            *counts.entry(p).or_default() += 1;
        }
        counts
            .iter()
            .map(|(&k, &m)| (k as u128).pow(m) * (1..=m as u128).product::<u128>())
            .product()
    }

    /// Size of the conjugacy class of this cycle type in `S_n`.
    pub fn class_size(&self) -> u128 {
        factorial(self.size()) / self.centralizer_order()
    }

    /// A permutation with this cycle type (consecutive cycles).
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 1;
        for &p in &self.0 {
            cycles.push((next..next + p).collect());
            next += p;
        }
        Permutation::from_cycles(self.size(), &cycles).expect("consecutive cycles")
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_sign() {
        let s = parse_cycles("(1 2)", 3).unwrap();
        let t = parse_cycles("(2 3)", 3).unwrap();
        let st = s.compose(&t);
        // first (2 3) then (1 2): 1->1->2, 2->3->3, 3->2->1
        assert_eq!(st.one_line(), vec![2, 3, 1]);
        assert_eq!(st.sign(), 1);
        assert_eq!(t.sign(), -1);
        assert_eq!(st.compose(&st.inverse()), Permutation::identity(3));
        assert_eq!(st.to_string(), "(1 2 3)");
    }

    #[test]
    fn cycle_notation_parsing() {
        assert_eq!("id".parse::<Permutation>().unwrap(), Permutation::identity(0));
        assert_eq!(parse_cycles("(2,3)", 3).unwrap().one_line(), vec![1, 3, 2]);
        assert!(parse_cycles("(1 1)", 3).is_err());
        assert!(parse_cycles("(1 4)", 3).is_err());
        assert!(parse_cycles("1 2", 3).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(0).len(), 1);
        assert_eq!(IntPartition::all(5).len(), 7);
        assert_eq!(IntPartition::all(4)[0], IntPartition::new(vec![4]));
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 1..=7 {
            let total: u128 = IntPartition::all(n).iter().map(IntPartition::class_size).sum();
            assert_eq!(total, factorial(n));
        }
        assert_eq!(IntPartition::new(vec![2, 1]).class_size(), 3);
    }

    #[test]
    fn representative_has_its_type() {
        for lam in IntPartition::all(6) {
            assert_eq!(lam.representative().cycle_type(), lam);
        }
    }
}
