//! Factorization invariants of numerical semigroups and Puiseux monoids:
//! atoms, factorization sets, length sets, factorization graphs, Betti
//! elements and molecules (elements with exactly one factorization).

pub mod dsu;
pub mod error;
pub mod numsgp;
pub mod primary;
pub mod primes;
pub mod puiseux;
pub mod rational;
pub mod search;
pub mod strip;
pub mod verify;

pub use error::{Error, Result};
pub use numsgp::{Factorization, FactorizationGraph, MoleculeMode, NumericalSemigroup};
pub use rational::{padic_valuation, Rational, Valuation};
