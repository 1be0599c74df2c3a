use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::error::{Error, Result};

/// An ordered sequence of disjoint letter sets (each stored sorted).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SetPartitionOrdered {
    blocks: Vec<Vec<u32>>,
}

impl SetPartitionOrdered {
    /// Checks that the blocks partition `ambient` (and are nonempty unless
    /// `allow_empty`).
    pub fn new(ambient: &[u32], blocks: Vec<Vec<u32>>, allow_empty: bool) -> Result<Self> {
        let mut all: Vec<u32> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        let mut amb = ambient.to_vec();
        amb.sort_unstable();
        if all != amb {
            return Err(Error::ShapeMismatch(format!("{blocks:?} is not a partition of {ambient:?}")));
        }
        if !allow_empty && blocks.iter().any(Vec::is_empty) {
            return Err(Error::ShapeMismatch(format!("{blocks:?} has an empty block")));
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(SetPartitionOrdered { blocks })
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

/// All ordered partitions of `letters` into `k` blocks, in lexicographic
/// order of the block-assignment sequence.
pub fn ordered_set_partitions(letters: &[u32], k: usize, allow_empty: bool) -> Vec<SetPartitionOrdered> {
    let n = letters.len();
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(SetPartitionOrdered { blocks: Vec::new() });
        }
        return out;
    }
    let mut assign = vec![0usize; n];
    loop {
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in assign.iter().enumerate() {
            blocks[b].push(letters[i]);
        }
        if allow_empty || blocks.iter().all(|b: &Vec<u32>| !b.is_empty()) {
            for b in &mut blocks {
                b.sort_unstable();
            }
            out.push(SetPartitionOrdered { blocks });
        }
        // odometer increment, last letter fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            assign[i] += 1;
            if assign[i] < k {
                break;
            }
            assign[i] = 0;
        }
    }
}

/// All unordered partitions of `letters` into exactly `k` nonempty blocks,
/// each listed with blocks sorted by their smallest letter.
pub fn set_partitions(letters: &[u32], k: usize) -> Vec<Vec<Vec<u32>>> {
    fn rec(i: usize, letters: &[u32], k: usize, cur: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if cur.len() + (letters.len() - i) < k {
            return;
        }
        if i == letters.len() {
            if cur.len() == k {
                out.push(cur.clone());
            }
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(letters[i]);
            rec(i + 1, letters, k, cur, out);
            cur[b].pop();
        }
        if cur.len() < k {
            cur.push(vec![letters[i]]);
            rec(i + 1, letters, k, cur, out);
            cur.pop();
        }
    }
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    rec(0, &sorted, k, &mut Vec::new(), &mut out);
    out
}

/// Shuffle permutations for consecutive blocks of sizes `sizes`: the
/// permutations of `[1, Σ sizes]` that are increasing on each block.
pub fn shuffles(sizes: &[usize]) -> Vec<Permutation> {
    let n: usize = sizes.iter().sum();
    let positions: Vec<u32> = (1..=n as u32).collect();
    let k = sizes.len();
    if k == 0 {
        return vec![Permutation::identity(0)];
    }
    let mut out = Vec::new();
    for part in ordered_set_partitions(&positions, k, true) {
        if part.sizes() != sizes {
            continue;
        }
        let images: Vec<usize> = part.blocks().iter().flatten().map(|&x| x as usize).collect();
        out.push(Permutation::from_one_line(&images).expect("blocks partition the positions"));
    }
    out
}

/// Weak compositions of `n` into `k` parts, in lexicographic order.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=n {
            cur.push(first);
            rec(n - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

pub fn multinomial(parts: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut total = 0u128;
    for &p in parts {
        for i in 1..=p as u128 {
            total += 1;
            acc = acc * total / i;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_examples() {
        let s = shuffles(&[1, 1]);
        assert_eq!(s.len(), 2);
        assert!(s[0].is_identity() || s[1].is_identity());
        assert_eq!(shuffles(&[2, 1]).len(), 3);
        let s = shuffles(&[0, 3]);
        assert_eq!(s.len(), 1);
        assert!(s[0].is_identity());
    }

    #[test]
    fn shuffles_are_increasing_on_blocks() {
        for s in shuffles(&[2, 2, 1]) {
            let img = s.one_line();
            assert!(img[0] < img[1] && img[2] < img[3]);
        }
        assert_eq!(shuffles(&[2, 2, 1]).len() as u128, multinomial(&[2, 2, 1]));
    }

    #[test]
    fn set_partition_counts() {
        // Stirling numbers of the second kind S(5, k)
        let counts: Vec<usize> = (1..=5).map(|k| set_partitions(&[1, 2, 3, 4, 5], k).len()).collect();
        assert_eq!(counts, vec![1, 15, 25, 10, 1]);
        assert_eq!(ordered_set_partitions(&[1, 2, 3], 2, false).len(), 6);
        assert_eq!(ordered_set_partitions(&[1, 2, 3], 2, true).len(), 8);
        assert_eq!(ordered_set_partitions(&[], 2, true).len(), 1);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2), vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn partition_validation() {
        assert!(SetPartitionOrdered::new(&[1, 2], vec![vec![2], vec![1]], false).is_ok());
        assert!(SetPartitionOrdered::new(&[1, 2], vec![vec![1, 2], vec![]], false).is_err());
        assert!(SetPartitionOrdered::new(&[1, 2], vec![vec![1]], true).is_err());
    }
}
