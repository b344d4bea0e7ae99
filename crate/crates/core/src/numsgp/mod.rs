//! Numerical semigroups: cofinite submonoids of the nonnegative integers.

mod betti;
pub mod cone;
mod factor;
mod graph;
mod molecules;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use cone::{apery_table, IntegerCone};

pub use factor::Factorization;
pub use graph::FactorizationGraph;
pub use molecules::{interval_semigroup, molecules_dim2, MoleculeMode};

/// A numerical semigroup stored by its minimal generators `a_1 < ... < a_n`.
///
/// The Apéry table with respect to the multiplicity, the gap set and the
/// per-suffix membership tables used by factorization enumeration are all
/// built in the constructor.
#[derive(Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    atoms: Vec<u64>,
    apery: Vec<u64>,
    frobenius: i64,
    gaps: Vec<u64>,
    /// `suffix[k]` decides membership in `<a_k, ..., a_n>`.
    suffix: Vec<IntegerCone>,
}

impl NumericalSemigroup {
    /// The numerical semigroup generated by `gens`, reduced to its minimal
    /// generating set.
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyInput);
        }
        if gens.contains(&0) {
            return Err(Error::OutOfRange("generators must be positive".into()));
        }
        let g = gens.iter().fold(0u64, |acc, &a| acc.gcd(&a));
        if g != 1 {
            return Err(Error::NonCoprimeGenerators(gens.to_vec()));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();

        let mut atoms: Vec<u64> = Vec::new();
        let mut kept = IntegerCone::new(&[])?;
        for a in sorted {
            if !kept.contains(a) {
                atoms.push(a);
                kept = IntegerCone::new(&atoms)?;
            }
        }
        Self::from_minimal(atoms)
    }

    fn from_minimal(atoms: Vec<u64>) -> Result<Self> {
        let m = atoms[0];
        let (apery, _) = apery_table(atoms.iter().copied(), m)?;
        let max_w = *apery.iter().max().expect("m >= 1");
        let frobenius = max_w as i64 - m as i64;

        let genus: u64 = apery
            .iter()
            .enumerate()
            .map(|(r, &w)| (w - r as u64) / m)
            .sum();
        if genus > cone::MAX_MODULUS {
            return Err(Error::TooLarge(format!("genus {genus}")));
        }
        let mut gaps = Vec::with_capacity(genus as usize);
        for (r, &w) in apery.iter().enumerate() {
            let mut g = r as u64;
            while g < w {
                gaps.push(g);
                g += m;
            }
        }
        gaps.sort_unstable();

        let suffix = (0..atoms.len())
            .map(|k| IntegerCone::new(&atoms[k..]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            atoms,
            apery,
            frobenius,
            gaps,
            suffix,
        })
    }

    /// The monoid of all nonnegative integers, `<1>`.
    pub fn naturals() -> Self {
        Self::from_minimal(vec![1]).expect("trivial semigroup")
    }

    pub fn atoms(&self) -> &[u64] {
        &self.atoms
    }

    pub fn embedding_dimension(&self) -> usize {
        self.atoms.len()
    }

    pub fn multiplicity(&self) -> u64 {
        self.atoms[0]
    }

    pub fn max_atom(&self) -> u64 {
        *self.atoms.last().expect("nonempty")
    }

    pub fn is_naturals(&self) -> bool {
        self.atoms == [1]
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.apery[(x % self.atoms[0]) as usize]
    }

    /// `F(N)`, or `-1` for the naturals.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// `(F(N), G(N))`
    pub fn gap_data(&self) -> (i64, &[u64]) {
        (self.frobenius, &self.gaps)
    }

    /// The smallest element in each residue class modulo `m`, sorted.
    pub fn apery_set(&self, m: u64) -> Result<Vec<u64>> {
        if m == 0 || !self.contains(m) {
            return Err(Error::ModulusNotInSemigroup(m));
        }
        let mut set = if m == self.atoms[0] {
            self.apery.clone()
        } else {
            apery_table(self.atoms.iter().copied(), m)?.0
        };
        set.sort_unstable();
        Ok(set)
    }

    /// Does `a` divide `b` in the semigroup, i.e. `b - a` is an element?
    pub fn divides(&self, a: u64, b: u64) -> bool {
        b >= a && self.contains(b - a)
    }

    pub(crate) fn suffix_contains(&self, k: usize, y: u64) -> bool {
        match self.suffix.get(k) {
            Some(cone) => cone.contains(y),
            None => y == 0,
        }
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a comma-separated generator list such as `"14,16,18,21,45"`.
pub fn parse_generators(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad generator {t:?}")))
        })
        .collect()
}

impl FromStr for NumericalSemigroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_generators(&parse_generators(s)?)
    }
}
