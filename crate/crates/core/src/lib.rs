//! Exact computational homological algebra for multilinear free Lie
//! algebra complexes.
//!
//! The crate is split along four layers:
//!
//! * [`freealg`]: multilinear free associative, free Lie and free Poisson
//!   arithmetic over exact rationals, with the Dynkin (strip/lift)
//!   correspondence and PBW straightening.
//! * [`symgrp`]: permutations, shuffles, antisymmetrizers, character tables
//!   and isotypic multiplicities.
//! * [`exactlin`]: sparse exact linear algebra, based chain complexes and
//!   their homology.
//! * [`complexes`]: constructors for the concrete complexes (Chevalley wedge,
//!   Koszul, the `C`/`A`/elementary/Poisson families) and the comparison maps
//!   between them.

pub mod complexes;
pub mod error;
pub mod exactlin;
pub mod freealg;
pub mod rational;
pub mod symgrp;

pub use error::{Error, Result};
pub use rational::Rational;
