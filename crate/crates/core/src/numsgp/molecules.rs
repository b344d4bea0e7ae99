use std::collections::BTreeSet;

use num_integer::Integer;

use super::NumericalSemigroup;
use crate::error::{Error, Result};

/// How `molecules` decides uniqueness of factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoleculeMode {
    /// Count factorizations of every candidate directly.
    Enumerate,
    /// Keep the elements divisible by no Betti element.
    BettiFilter,
}

impl NumericalSemigroup {
    pub fn is_molecule(&self, x: u64) -> bool {
        x != 0 && self.factorization_count(x, 2) == 1
    }

    /// `M(N)`, ascending.
    pub fn molecules(&self, mode: MoleculeMode) -> Result<Vec<u64>> {
        if self.is_naturals() {
            return Err(Error::InfiniteResult(
                "every nonzero element of N0 is a molecule".into(),
            ));
        }
        Ok(match mode {
            MoleculeMode::Enumerate => self.molecules_by_counting(),
            MoleculeMode::BettiFilter => self.molecules_by_betti(),
        })
    }

    /// Counts factorizations of all `x <= F + a_1 a_2` at once with the
    /// coin-change recurrence, saturating at two. Beyond that bound
    /// `x - a_1 a_2` is an element, and `a_1 a_2` has the two factorizations
    /// `a_2 * a_1` and `a_1 * a_2`, so nothing larger is a molecule.
    fn molecules_by_counting(&self) -> Vec<u64> {
        let bound = (self.frobenius + (self.atoms[0] * self.atoms[1]) as i64) as usize;
        let mut ways = vec![0u8; bound + 1];
        ways[0] = 1;
        for &a in &self.atoms {
            let a = a as usize;
            for v in a..=bound {
                ways[v] = (ways[v] + ways[v - a]).min(2);
            }
        }
        (1..=bound as u64).filter(|&x| ways[x as usize] == 1).collect()
    }

    /// Elements of `(0, F + min Betti]` with no Betti divisor. Past that
    /// bound `x - min Betti` is an element.
    fn molecules_by_betti(&self) -> Vec<u64> {
        let betti = self.betti_elements();
        let bound = (self.frobenius + betti[0] as i64) as u64;
        (1..=bound)
            .filter(|&x| self.contains(x) && !betti.iter().any(|&b| self.divides(b, x)))
            .collect()
    }
}

/// Closed form for `M(<p, q>)`: `{mp + nq : m < q, n < p, (m, n) != (0, 0)}`.
pub fn molecules_dim2(p: u64, q: u64) -> Result<Vec<u64>> {
    if p < 2 || q <= p || p.gcd(&q) != 1 {
        return Err(Error::InvalidPair(p, q));
    }
    let mut set = BTreeSet::new();
    for m in 0..q {
        for n in 0..p {
            if (m, n) != (0, 0) {
                set.insert(m * p + n * q);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// `<n-2, n-1, ..., 2(n-2)-1>`, which has exactly `n` molecules.
pub fn interval_semigroup(n: u64) -> Result<NumericalSemigroup> {
    if n < 5 {
        return Err(Error::OutOfRange(format!(
            "interval construction needs n >= 5, got {n}"
        )));
    }
    let gens: Vec<u64> = (n - 2..2 * (n - 2)).collect();
    NumericalSemigroup::from_generators(&gens)
}
