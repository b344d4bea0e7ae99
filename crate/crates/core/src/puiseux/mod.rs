//! Finitely generated Puiseux monoids, handled through the scaling
//! isomorphism onto a numerical semigroup.

mod declared;
mod stage;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numsgp::{Factorization, MoleculeMode, NumericalSemigroup};
use crate::rational::Rational;

pub use declared::{fifths_over_dyadics, DeclaredAtomMonoid, FactorizationCount};
pub use stage::{stable_stage, stable_stages, PrimePool, Stage};

/// `P = <generators>` together with the scalar `q` making `qP` a numerical
/// semigroup.
#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxMonoidFG {
    generators: Vec<Rational>,
    atoms: Vec<Rational>,
    scale: Rational,
    reduced: NumericalSemigroup,
}

impl PuiseuxMonoidFG {
    /// The scale is `L / g`, with `L` the lcm of the denominators and `g` the
    /// gcd of the `L`-scaled numerators.
    pub fn from_generators(gens: &[Rational]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyInput);
        }
        if gens.iter().any(Rational::is_zero) {
            return Err(Error::OutOfRange("generators must be positive".into()));
        }
        let mut generators = gens.to_vec();
        generators.sort();
        generators.dedup();

        let lcm = generators
            .iter()
            .fold(BigUint::one(), |acc, q| acc.lcm(q.denom()));
        let scaled: Vec<BigUint> = generators
            .iter()
            .map(|q| q.numer() * (&lcm / q.denom()))
            .collect();
        let g = scaled.iter().fold(BigUint::zero(), |acc, s| acc.gcd(s));
        let ints = scaled
            .iter()
            .map(|s| {
                (s / &g)
                    .to_u64()
                    .ok_or_else(|| Error::TooLarge(format!("scaled generator {}", s / &g)))
            })
            .collect::<Result<Vec<u64>>>()?;
        let scale = Rational::from_biguints(lcm, g);
        let reduced = NumericalSemigroup::from_generators(&ints)?;
        let atoms = reduced
            .atoms()
            .iter()
            .map(|&a| Rational::integer(a).div(&scale))
            .collect();
        Ok(Self {
            generators,
            atoms,
            scale,
            reduced,
        })
    }

    pub fn generators(&self) -> &[Rational] {
        &self.generators
    }

    /// `A(P)`, ascending.
    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn reduced(&self) -> &NumericalSemigroup {
        &self.reduced
    }

    /// `scale * x` when it is a nonnegative integer.
    fn scaled(&self, x: &Rational) -> Option<BigUint> {
        let y = x * &self.scale;
        y.is_integer().then(|| y.numer().clone())
    }

    /// `scale * x` as a machine integer, for enumeration.
    fn scaled_u64(&self, x: &Rational) -> Result<Option<u64>> {
        match self.scaled(x) {
            None => Ok(None),
            Some(y) => y
                .to_u64()
                .map(Some)
                .ok_or_else(|| Error::TooLarge(format!("{x} scales to {y}"))),
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self.scaled(x) {
            None => false,
            Some(y) => match y.to_u64() {
                Some(y) => self.reduced.contains(y),
                // beyond every gap
                None => true,
            },
        }
    }

    /// `Z(x)` over `atoms()`, via the reduced semigroup.
    pub fn factorizations(&self, x: &Rational) -> Result<Vec<Factorization>> {
        Ok(match self.scaled_u64(x)? {
            None => Vec::new(),
            Some(y) => self.reduced.factorizations(y),
        })
    }

    pub fn factorization_count(&self, x: &Rational, cap: usize) -> Result<usize> {
        Ok(match self.scaled_u64(x)? {
            None => 0,
            Some(y) => self.reduced.factorization_count(y, cap),
        })
    }

    pub fn is_molecule(&self, x: &Rational) -> Result<bool> {
        Ok(!x.is_zero() && self.factorization_count(x, 2)? == 1)
    }

    /// `M(P)`, ascending; infinite when there is a single atom.
    pub fn molecules(&self) -> Result<Vec<Rational>> {
        if self.atoms.len() == 1 {
            return Err(Error::InfiniteResult(format!(
                "every positive multiple of {} is a molecule",
                self.atoms[0]
            )));
        }
        Ok(self
            .reduced
            .molecules(MoleculeMode::Enumerate)?
            .into_iter()
            .map(|m| Rational::integer(m).div(&self.scale))
            .collect())
    }

    /// `{a + b : a, b atoms}` ascending, doubles included.
    pub fn two_atom_sums(&self) -> Vec<Rational> {
        two_atom_sums(&self.atoms)
    }

    /// Whether `x ↦ q x` maps this monoid into `other`.
    pub fn hom_valid(&self, other: &PuiseuxMonoidFG, q: &Rational) -> bool {
        self.atoms.iter().all(|a| other.contains(&(a * q)))
    }

    /// The `q` with `q P = P'`, if the two are isomorphic. Isomorphisms of
    /// Puiseux monoids are rational scalings, and distinct numerical
    /// semigroups are never isomorphic, so it suffices to compare reduced
    /// forms.
    pub fn scaling_to(&self, other: &PuiseuxMonoidFG) -> Option<Rational> {
        (self.reduced == other.reduced).then(|| self.scale.div(&other.scale))
    }
}

/// Pairwise sums of an atom list, ascending and deduplicated.
pub fn two_atom_sums(atoms: &[Rational]) -> Vec<Rational> {
    let mut out = BTreeSet::new();
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i..] {
            out.insert(a + b);
        }
    }
    out.into_iter().collect()
}

/// Parses `"1/2,3/4"`.
pub fn parse_rationals(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(str::parse).collect()
}

impl FromStr for PuiseuxMonoidFG {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_generators(&parse_rationals(s)?)
    }
}

impl fmt::Display for PuiseuxMonoidFG {
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

impl fmt::Debug for PuiseuxMonoidFG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (scale {})", self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::AtomSearch;
    use proptest::prelude::*;

    fn r(n: u64, d: u64) -> Rational {
        Rational::new(n, d)
    }

    fn pm(s: &str) -> PuiseuxMonoidFG {
        s.parse().unwrap()
    }

    #[test]
    fn construction_examples() {
        let p = pm("1/2,3/4");
        assert_eq!(p.scale(), &r(4, 1));
        assert_eq!(p.reduced().atoms(), &[2, 3]);
        assert_eq!(p.atoms(), &[r(1, 2), r(3, 4)]);

        let p = pm("2/5,3/5");
        assert_eq!(p.scale(), &r(5, 1));
        assert_eq!(p.reduced().atoms(), &[2, 3]);

        let p = pm("2,3");
        assert_eq!(p.scale(), &r(1, 1));

        let p = pm("4,6,9");
        assert_eq!(p.scale(), &r(1, 1));
        assert_eq!(p.atoms().len(), 3);
        let p = pm("4,6");
        assert_eq!(p.scale(), &r(1, 2));
        assert_eq!(p.reduced().atoms(), &[2, 3]);

        let p = pm("1/2,1,3/2");
        assert_eq!(p.atoms(), &[r(1, 2)]);
        assert_eq!(PuiseuxMonoidFG::from_generators(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn membership_examples() {
        let p = pm("1/2,3/4");
        assert!(p.contains(&r(5, 4)));
        assert!(!p.contains(&r(1, 4)));
        assert!(p.contains(&Rational::zero()));
        assert!(!p.contains(&r(1, 3)));
    }

    #[test]
    fn molecule_examples() {
        let base: Vec<u64> = vec![2, 3, 4, 5, 7];
        let p = pm("1/2,3/4");
        let expected: Vec<Rational> = base.iter().map(|&m| r(m, 4)).collect();
        assert_eq!(p.molecules().unwrap(), expected);

        let p = pm("2/5,3/5");
        let m = p.molecules().unwrap();
        assert_eq!(m, base.iter().map(|&k| r(k, 5)).collect::<Vec<_>>());
        assert!(m.contains(&Rational::integer(1)));

        assert!(matches!(pm("1/3").molecules(), Err(Error::InfiniteResult(_))));
    }

    #[test]
    fn scaling_examples() {
        let a = pm("1/2,3/4");
        let b = pm("2,3");
        assert_eq!(a.scaling_to(&b), Some(r(4, 1)));
        assert!(a.hom_valid(&b, &r(4, 1)));
        assert_eq!(b.scaling_to(&a), Some(r(1, 4)));
        assert_eq!(pm("2,3").scaling_to(&pm("2,5")), None);
        assert_eq!(a.scaling_to(&a), Some(r(1, 1)));
        // <2,3> maps into <1> by the identity but not onto it
        assert!(b.hom_valid(&pm("1"), &r(1, 1)));
        assert!(!pm("1").hom_valid(&b, &r(1, 1)));
    }

    #[test]
    fn two_atom_sum_examples() {
        assert_eq!(pm("1/2").two_atom_sums(), vec![r(1, 1)]);
        assert_eq!(pm("1/2,1/3").two_atom_sums(), vec![r(2, 3), r(5, 6), r(1, 1)]);
        assert_eq!(pm("2,3").two_atom_sums(), vec![r(4, 1), r(5, 1), r(6, 1)]);
    }

    fn fg_gens() -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec((1u64..12, 1u64..7), 1..4)
            .prop_map(|v| v.into_iter().map(|(n, d)| r(n, d)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn scaling_preserves_factorization_counts(gens in fg_gens(), n in 0u64..40, d in 1u64..13) {
            let p = PuiseuxMonoidFG::from_generators(&gens).unwrap();
            let search = AtomSearch::new(p.atoms()).unwrap();
            let x = r(n, d);
            let via_reduction = p.factorization_count(&x, usize::MAX).unwrap();
            prop_assert_eq!(via_reduction, search.count(&x, usize::MAX));
            prop_assert_eq!(p.contains(&x), via_reduction > 0);
        }

        #[test]
        fn molecule_count_dichotomy(gens in fg_gens()) {
            let p = PuiseuxMonoidFG::from_generators(&gens).unwrap();
            match p.molecules() {
                Ok(m) => {
                    prop_assert!(p.atoms().len() >= 2);
                    prop_assert!(m.len() >= p.atoms().len() + 2);
                }
                Err(Error::InfiniteResult(_)) => prop_assert_eq!(p.atoms().len(), 1),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}
