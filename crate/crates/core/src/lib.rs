//! Order equations, spectra, prime graphs and Frobenius structure of finite
//! permutation groups, with an exact verifier for the case analysis over
//! simple groups whose prime graph is disconnected.

pub mod arith;
pub mod caseverify;
pub mod frobstruct;
pub mod gkgraph;
pub mod permgrp;
pub mod spectra;
pub mod simpledb;

use num_bigint::BigUint;

pub use arith::{Factored, Natural};

/// Arbitrary-precision natural number.
pub type Nat = BigUint;
/// Factorization over arbitrary-precision naturals.
pub type Factorization = Factored<BigUint>;
/// Factorization over machine words.
pub type SmallFactorization = Factored<u64>;
