//! The staged construction of a Puiseux monoid whose only molecules are
//! its atoms.
//!
//! `P_1 = <1/p_1>`; `P_{j+1}` adjoins `r_i / p'_i` where `r_1 < r_2 < ...`
//! are the sums of two atoms of `P_j` and `p'_1 < p'_2 < ...` are the
//! smallest primes of the pool not yet dividing a denominator. Each new
//! generator is the only one whose denominator carries its prime, so it is
//! an atom, and each `r_i` gains the second factorization `p'_i (r_i/p'_i)`.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{two_atom_sums, PuiseuxMonoidFG};
use crate::error::{Error, Result};
use crate::primes::{is_prime, Primes};
use crate::rational::Rational;
use crate::search::AtomSearch;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimePool {
    /// All primes, ascending.
    All,
    /// An explicit set, used in ascending order.
    List(Vec<u64>),
}

impl PrimePool {
    fn validate(&self) -> Result<()> {
        if let PrimePool::List(ps) = self {
            let mut sorted = ps.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != ps.len() {
                return Err(Error::InvalidSpec("prime pool has repeated primes".into()));
            }
            if let Some(&p) = ps.iter().find(|&&p| !is_prime(p)) {
                return Err(Error::NotPrime(p));
            }
            if ps.is_empty() {
                return Err(Error::EmptyInput);
            }
        }
        Ok(())
    }

    /// Ascending primes of the pool outside `used`, at most `n` of them.
    fn fresh(&self, used: &[u64], n: usize) -> Vec<u64> {
        match self {
            PrimePool::All => Primes::from(2).filter(|p| !used.contains(p)).take(n).collect(),
            PrimePool::List(ps) => {
                let mut ps = ps.clone();
                ps.sort_unstable();
                ps.into_iter().filter(|p| !used.contains(p)).take(n).collect()
            }
        }
    }
}

/// One stage `P_k` of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub index: usize,
    /// Generators in ascending order; every one of them is an atom.
    pub atoms: Vec<Rational>,
    /// `D_S(P_k)`: pool primes dividing some generator denominator.
    pub support: Vec<u64>,
}

impl Stage {
    pub fn two_atom_sums(&self) -> Vec<Rational> {
        two_atom_sums(&self.atoms)
    }

    /// Valuation-guided factorization search over the stage's atoms.
    pub fn search(&self) -> AtomSearch {
        AtomSearch::new(&self.atoms).expect("stage atoms are positive")
    }

    /// The stage as a numerical-semigroup-backed monoid. Fails with
    /// `TooLarge` once the denominators outgrow exact Apéry tables.
    pub fn monoid(&self) -> Result<PuiseuxMonoidFG> {
        PuiseuxMonoidFG::from_generators(&self.atoms)
    }
}

fn support_of(atoms: &[Rational], candidates: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = candidates
        .iter()
        .copied()
        .filter(|&p| atoms.iter().any(|a| (a.denom() % p).is_zero()))
        .collect();
    out.sort_unstable();
    out
}

/// Stages `P_1, ..., P_k`.
pub fn stable_stages(pool: &PrimePool, k: usize) -> Result<Vec<Stage>> {
    pool.validate()?;
    if k == 0 {
        return Err(Error::OutOfRange("stages start at 1".into()));
    }
    let first = pool.fresh(&[], 1);
    let p1 = *first.first().ok_or(Error::PrimesExhausted {
        stage: 1,
        needed: 1,
        available: 0,
    })?;
    let mut used = vec![p1];
    let mut stages = vec![Stage {
        index: 1,
        atoms: vec![Rational::new(1, p1)],
        support: vec![p1],
    }];
    for index in 2..=k {
        let prev = stages.last().expect("nonempty");
        let sums = prev.two_atom_sums();
        let fresh = pool.fresh(&used, sums.len());
        if fresh.len() < sums.len() {
            return Err(Error::PrimesExhausted {
                stage: index,
                needed: sums.len(),
                available: fresh.len(),
            });
        }
        let mut atoms = prev.atoms.clone();
        for (r, &p) in sums.iter().zip(&fresh) {
            atoms.push(r.div_int(&BigUint::from(p)));
        }
        atoms.sort();
        used.extend(fresh);
        let support = support_of(&atoms, &used);
        stages.push(Stage {
            index,
            atoms,
            support,
        });
    }
    Ok(stages)
}

/// `P_k` alone.
pub fn stable_stage(pool: &PrimePool, k: usize) -> Result<Stage> {
    Ok(stable_stages(pool, k)?.pop().expect("k >= 1"))
}
