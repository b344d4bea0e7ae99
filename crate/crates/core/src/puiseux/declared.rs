use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::search::AtomSearch;

/// A monoid known only through an externally certified, finite atom set.
///
/// Typical use is a monoid with infinitely many generators but finitely
/// many atoms. Only internal consistency is checked here; the soundness of
/// the declaration rests on the argument recorded in `provenance`.
#[derive(Debug, Clone)]
pub struct DeclaredAtomMonoid {
    atoms: Vec<Rational>,
    provenance: String,
    search: AtomSearch,
}

/// Factorizations of one element over the declared atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorizationCount {
    None,
    Unique(Vec<u64>),
    Many(Vec<Vec<u64>>),
}

impl FactorizationCount {
    pub fn count(&self) -> usize {
        match self {
            FactorizationCount::None => 0,
            FactorizationCount::Unique(_) => 1,
            FactorizationCount::Many(w) => w.len(),
        }
    }

    pub fn witnesses(&self) -> Vec<Vec<u64>> {
        match self {
            FactorizationCount::None => Vec::new(),
            FactorizationCount::Unique(w) => vec![w.clone()],
            FactorizationCount::Many(w) => w.clone(),
        }
    }
}

impl DeclaredAtomMonoid {
    /// Rejects an empty provenance and atoms dividing one another inside
    /// the monoid they generate.
    pub fn new(atoms: &[Rational], provenance: impl Into<String>) -> Result<Self> {
        let provenance = provenance.into();
        if provenance.trim().is_empty() {
            return Err(Error::InvalidSpec("atom declaration needs a provenance note".into()));
        }
        if atoms.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut atoms = atoms.to_vec();
        atoms.sort();
        atoms.dedup();
        let search = AtomSearch::new(&atoms)?;
        for (i, a) in atoms.iter().enumerate() {
            for b in &atoms[i + 1..] {
                let diff = b.checked_sub(a).expect("sorted");
                if search.contains(&diff) {
                    return Err(Error::InvalidSpec(format!("{a} divides {b}")));
                }
            }
        }
        Ok(Self {
            atoms,
            provenance,
            search,
        })
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Exact factorization count of `x`; coefficients follow `atoms()`.
    pub fn factorizations_of(&self, x: &Rational, cap: usize) -> Result<FactorizationCount> {
        let mut all = self.search.factorizations(x, cap)?;
        Ok(match all.len() {
            0 => FactorizationCount::None,
            1 => FactorizationCount::Unique(all.pop().expect("one")),
            _ => FactorizationCount::Many(all),
        })
    }
}

/// `<2/5, 3/5, 1/2^n : n >= 1>`, whose atoms are exactly `2/5` and `3/5`.
pub fn fifths_over_dyadics() -> DeclaredAtomMonoid {
    DeclaredAtomMonoid::new(
        &[Rational::new(2, 5), Rational::new(3, 5)],
        "Each 1/2^n is 1/2^(n+1) + 1/2^(n+1), so none is an atom. A sum of \
         generators with 5 in its reduced denominator must use 2/5 or 3/5 \
         (5-adic valuation), and 2/5, 3/5 are too small to absorb a positive \
         dyadic part: 2/5 - 1/2^n and 3/5 - 1/2^n never have valuation >= 0 \
         at 5 while staying in the monoid, so both remain irreducible.",
    )
    .expect("2/5 and 3/5 do not divide each other")
}
