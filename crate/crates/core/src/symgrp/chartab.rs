//! Character tables of symmetric groups via the Murnaghan–Nakayama rule,
//! computed on beta-sets: removing a rim hook of length `r` from `λ` is
//! moving one bead `b` of the beta-set to the free position `b - r`, with
//! sign `(-1)^{beads strictly between}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{factorial, IntPartition};
use crate::error::{Error, Result};
use crate::Rational;

pub const DEFAULT_TABLE_BOUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    /// Irreducibles, in decreasing lexicographic order (`(n)` first).
    rows: Vec<IntPartition>,
    /// Cycle types, in increasing lexicographic order (identity first).
    cols: Vec<IntPartition>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn irreducibles(&self) -> &[IntPartition] {
        &self.rows
    }

    pub fn classes(&self) -> &[IntPartition] {
        &self.cols
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn value(&self, lambda: &IntPartition, mu: &IntPartition) -> Option<i64> {
        let r = self.rows.iter().position(|x| x == lambda)?;
        let c = self.cols.iter().position(|x| x == mu)?;
        Some(self.values[r][c])
    }

    /// Dimensions of the irreducibles (the identity column).
    pub fn dims(&self) -> Vec<i64> {
        self.values.iter().map(|row| row[0]).collect()
    }

    pub fn class_sizes(&self) -> Vec<u128> {
        self.cols.iter().map(IntPartition::class_size).collect()
    }

    /// `(1/n!) Σ_classes |class| χ(μ) ψ(μ)` for two class functions given
    /// in column order.
    pub fn inner_product(&self, chi: &[Rational], psi: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for ((c, a), b) in self.class_sizes().iter().zip(chi).zip(psi) {
            acc += Rational::from_integer(BigInt::from(*c)) * a * b;
        }
        acc / Rational::from_integer(BigInt::from(factorial(self.n)))
    }

    /// CSV: header `irrep,<cycle types>`, then one row per irreducible.
    /// Partitions are written `[3 1]`.
    pub fn to_csv(&self) -> String {
        let label = |p: &IntPartition| {
            let s: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
            format!("[{}]", s.join(" "))
        };
        let mut out = String::from("irrep");
        for c in &self.cols {
            out.push(',');
            out.push_str(&label(c));
        }
        out.push('\n');
        for (r, row) in self.rows.iter().zip(&self.values) {
            out.push_str(&label(r));
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

fn to_beta(lambda: &[usize], k: usize) -> Vec<usize> {
    (0..k).map(|i| lambda.get(i).copied().unwrap_or(0) + (k - 1 - i)).collect()
}

fn from_beta(mut beta: Vec<usize>) -> Vec<usize> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let k = beta.len();
    beta.iter().enumerate().map(|(i, b)| b - (k - 1 - i)).filter(|&x| x > 0).collect()
}

fn mn(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0];
    let k = lambda.len();
    let beta = to_beta(lambda, k);
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = b - r;
        total += sign * mn(&from_beta(nb), &mu[1..], memo);
    }
    memo.insert(key, total);
    total
}

fn build(n: usize) -> CharacterTable {
    let rows = IntPartition::all(n);
    let mut cols = rows.clone();
    cols.reverse();
    let mut memo = HashMap::new();
    let values = rows
        .iter()
        .map(|l| cols.iter().map(|m| mn(l.parts(), m.parts(), &mut memo)).collect())
        .collect();
    CharacterTable { n, rows, cols, values }
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<CharacterTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Character table of `S_n` for `n` up to `bound`. Tables are memoized.
pub fn character_table_bounded(n: usize, bound: usize) -> Result<Arc<CharacterTable>> {
    if n > bound {
        return Err(Error::TableTooLarge { n, bound });
    }
    if let Some(t) = cache().read().expect("character table cache").get(&n) {
        return Ok(Arc::clone(t));
    }
    let t = Arc::new(build(n));
    cache().write().expect("character table cache").entry(n).or_insert_with(|| Arc::clone(&t));
    Ok(t)
}

/// Character table of `S_n` with the default size bound.
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>> {
    character_table_bounded(n, DEFAULT_TABLE_BOUND)
}

/// Multiplicity of each irreducible in a module with the given traces (one
/// per cycle type of `S_n`).
pub fn multiplicities(
    traces: &BTreeMap<IntPartition, Rational>,
    n: usize,
    bound: usize,
) -> Result<BTreeMap<IntPartition, u64>> {
    let table = character_table_bounded(n, bound)?;
    let mut tr = Vec::with_capacity(table.classes().len());
    for mu in table.classes() {
        let t = traces
            .get(mu)
            .ok_or_else(|| Error::NotCharacter(format!("no trace given for cycle type {mu}")))?;
        tr.push(t.clone());
    }
    if traces.len() != tr.len() {
        return Err(Error::NotCharacter(format!("traces given for cycle types outside S_{n}")));
    }
    let mut out = BTreeMap::new();
    for (lambda, row) in table.irreducibles().iter().zip(table.values()) {
        let chi: Vec<Rational> = row.iter().map(|&v| crate::rational::int(v)).collect();
        let m = table.inner_product(&chi, &tr);
        if !m.is_integer() || m.is_negative() {
            return Err(Error::NotCharacter(format!(
                "inner product with {lambda} is {}",
                crate::rational::format(&m)
            )));
        }
        let m = crate::rational::to_i64(&m).ok_or_else(|| Error::Overflow("multiplicity".into()))?;
        out.insert(lambda.clone(), m as u64);
    }
    Ok(out)
}
