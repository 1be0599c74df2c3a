//! Predicted dimensions of the spaces built in this module.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symgrp::{compositions, factorial, multinomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DimKind {
    /// `[z]`: multilinear part of the free Lie algebra on `z` letters.
    LieMultilinear,
    /// `[z, m]`: multilinear part of `L^{⊗m}` on `z` letters.
    LaTzTm,
    /// `[z, N, p]`: `A^p_{z,N}`.
    ADegree,
    /// `[z, N, q, p]`: `C^p_{z,N,q}`.
    CDegree,
}

impl DimKind {
    pub const ALL: [DimKind; 4] = [DimKind::LieMultilinear, DimKind::LaTzTm, DimKind::ADegree, DimKind::CDegree];

    pub fn name(self) -> &'static str {
        match self {
            DimKind::LieMultilinear => "lie_multilinear",
            DimKind::LaTzTm => "la_Tz_Tm",
            DimKind::ADegree => "A_degree",
            DimKind::CDegree => "C_degree",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            DimKind::LieMultilinear => 1,
            DimKind::LaTzTm => 2,
            DimKind::ADegree => 3,
            DimKind::CDegree => 4,
        }
    }
}

impl fmt::Display for DimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DimKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DimKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// Unsigned Stirling numbers of the first kind `c(n, k)`.
fn stirling_first(n: usize, k: usize) -> u128 {
    let mut row = vec![1u128];
    for i in 0..n {
        let mut next = vec![0u128; row.len() + 1];
        for (j, &v) in row.iter().enumerate() {
            next[j + 1] += v;
            next[j] += v * i as u128;
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

fn lie_multilinear(z: usize) -> u128 {
    if z == 0 {
        0
    } else {
        factorial(z - 1)
    }
}

/// `Σ` over ordered partitions into `m` nonempty blocks of `∏ (|B|-1)!`,
/// which counts permutations with `m` cycles, times `m!`.
fn la_tz_tm(z: usize, m: usize) -> u128 {
    factorial(m) * stirling_first(z, m)
}

fn a_degree(n: usize, p: usize) -> u128 {
    factorial(n - 1 + p) / factorial(p)
}

fn c_degree_one(n: usize, p: usize) -> u128 {
    if n >= 1 {
        a_degree(n, p)
    } else {
        u128::from(p == 1 || p == 2)
    }
}

fn c_degree(z: usize, big_n: usize, q: usize, p: usize) -> u128 {
    if q == 1 {
        return c_degree_one(z + big_n, p);
    }
    let mut total = 0u128;
    for iz in compositions(z, q) {
        let wi = multinomial(&iz);
        for jn in compositions(big_n, q) {
            let wj = multinomial(&jn);
            for ps in compositions(p, q) {
                let prod: u128 = (0..q).map(|a| c_degree_one(iz[a] + jn[a], ps[a])).product();
                total += wi * wj * prod;
            }
        }
    }
    total
}

/// Predicted dimension for a kind given by name (see [`DimKind`] for the
/// parameter lists).
pub fn dim_predict(kind: &str, params: &[usize]) -> Result<u128> {
    let kind: DimKind = kind.parse()?;
    if params.len() != kind.arity() {
        return Err(Error::InvalidParameters(format!(
            "{kind} takes {} parameters, got {}",
            kind.arity(),
            params.len()
        )));
    }
    Ok(match kind {
        DimKind::LieMultilinear => lie_multilinear(params[0]),
        DimKind::LaTzTm => {
            if params[1] == 0 {
                return Err(Error::InvalidParameters("m must be at least 1".into()));
            }
            la_tz_tm(params[0], params[1])
        }
        DimKind::ADegree => {
            if params[0] == 0 {
                return Err(Error::InvalidParameters("z must be at least 1".into()));
            }
            a_degree(params[0] + params[1], params[2])
        }
        DimKind::CDegree => {
            if params[2] == 0 {
                return Err(Error::InvalidParameters("q must be at least 1".into()));
            }
            c_degree(params[0], params[1], params[2], params[3])
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgrp::ordered_set_partitions;

    #[test]
    fn examples() {
        assert_eq!(dim_predict("lie_multilinear", &[4]).unwrap(), 6);
        assert_eq!(dim_predict("la_Tz_Tm", &[5, 1]).unwrap(), 24);
        assert_eq!(dim_predict("A_degree", &[1, 1, 1]).unwrap(), 2);
        assert!(matches!(dim_predict("nope", &[1]), Err(Error::UnknownKind(_))));
        assert!(matches!(dim_predict("A_degree", &[1]), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn block_sum_matches_enumeration() {
        for z in 1..=6usize {
            let letters: Vec<u32> = (1..=z as u32).collect();
            for m in 1..=3 {
                let direct: u128 = ordered_set_partitions(&letters, m, false)
                    .iter()
                    .map(|p| p.sizes().iter().map(|&s| factorial(s - 1)).product::<u128>())
                    .sum();
                assert_eq!(dim_predict("la_Tz_Tm", &[z, m]).unwrap(), direct, "z={z} m={m}");
            }
        }
    }
}
