//! Constructors for the concrete complexes and the maps comparing them.
//!
//! Letter conventions: in the `C`/`A` families with parameters `(z, N)`,
//! `a_i` is letter `i` for `i ∈ [1, z+N]` and `x_k` is letter `z+N+k`. In the
//! elementary and Poisson families `x_k` is letter `k`. Cochain complexes
//! indexed by `p'` are windows with [`Direction::Up`](crate::exactlin::Direction);
//! the wedge and Koszul complexes are chain complexes indexed by homological
//! degree.

mod assoc_side;
mod dims;
mod elementary;
mod lie_side;
mod poisson;
mod tensor;
mod wedge;
mod words;

pub use assoc_side::{
    build_a, build_a_sigma, dynkin_compare, epsilon_sequence, sigma_orders, sigma_split,
    verify_a_sigma_factorization, DynkinReport, EpsilonSeq,
};
pub use dims::{dim_predict, DimKind};
pub use elementary::{
    build_elementary, elementary_assoc, elementary_differential_assoc, ElementaryScalars, ASSOC_ROUTE_MAX,
};
pub use lie_side::{build_c, c_differential_generic, verify_kunneth_c, KunnethReport, MAX_DIRECT_Q};
pub use poisson::{
    build_poisson_graded, expected_grading, gr_differential, p_element, p_element_pairs, pbw_filtration_check, sign_multiplicities,
    PbwDegree, PbwReport, PoissonGraded, GRADING_CHECK_MAX,
};
pub use tensor::{direct_sum, tensor_complexes};
pub use wedge::{
    alt_factor, assoc_wedge_iso, build_assoc_wedge, build_chevalley_wedge, build_koszul_multilinear,
    chevalley_alt_differential,
};

use crate::error::{Error, Result};

/// A finite range `pmin..=pmax` of cochain degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PWindow {
    pub pmin: usize,
    pub pmax: usize,
}

impl PWindow {
    pub fn new(pmin: usize, pmax: usize) -> Result<Self> {
        if pmin > pmax {
            return Err(Error::InvalidParameters(format!("empty window {pmin}..={pmax}")));
        }
        Ok(PWindow { pmin, pmax })
    }

    pub fn upto(pmax: usize) -> Self {
        PWindow { pmin: 0, pmax }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<usize> {
        self.pmin..=self.pmax
    }

    pub fn len(&self) -> usize {
        self.pmax - self.pmin + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Human-readable name of a letter for basis labels.
pub(crate) fn letter_name(l: u32, n: u32) -> String {
    if l <= n {
        format!("a{l}")
    } else {
        format!("x{}", l - n)
    }
}

pub(crate) fn word_label(w: &[u32], n: u32) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|&l| letter_name(l, n)).collect::<Vec<_>>().join("·")
}
