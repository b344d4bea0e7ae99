//! Molecule tests for primary monoids.
//!
//! Every test here is exact. The valuation argument pins the coefficient of
//! `a/p` modulo `p`, so a factorization of `x` can use an atom whose prime
//! does not divide `d(x)` only in blocks worth its numerator. That leaves
//! finitely many atoms to search once stable numerators dividing `x` have
//! been ruled out.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::descriptor::PrimeSetDescriptor;
use super::spec::{Certificate, PrimaryAtom, PrimaryMonoidSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::search::AtomSearch;

/// Upper bound on candidate unstable parts examined by `molecule_general`.
pub const MAX_CANDIDATES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Molecule,
    NotMolecule,
    NotMember,
}

/// The four equivalent molecule conditions for an elementary monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ElementaryConditions {
    /// `x - Σ r_p / p = 0`.
    pub canonical: bool,
    /// `1` does not divide `x`.
    pub one_does_not_divide: bool,
    /// `m(a, x) < d(a)` for every atom.
    pub multiplicities_below_denominators: bool,
    /// Every coefficient of the canonical factorization is below its prime.
    pub coefficients_below_primes: bool,
}

impl ElementaryConditions {
    pub fn agree(&self) -> bool {
        let c = self.canonical;
        c == self.one_does_not_divide
            && c == self.multiplicities_below_denominators
            && c == self.coefficients_below_primes
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementaryReport {
    pub verdict: Verdict,
    /// `(p, r_p)` for each prime of `d(x)`.
    pub residues: Vec<(u64, u64)>,
    /// `x - Σ r_p / p` when `x` is an element.
    #[serde(serialize_with = "opt_string")]
    pub integer_part: Option<BigUint>,
    /// The unique factorization, for molecules.
    pub factorization: Option<Certificate>,
    pub conditions: Option<ElementaryConditions>,
}

fn opt_string<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(n) => s.collect_str(n),
        None => s.serialize_none(),
    }
}

/// Stable and unstable parts of a spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Families whose numerator occurs on infinitely many atoms.
    pub stable: PrimaryMonoidSpec,
    /// The rest; finitely many atoms, so `U(P)` is finitely generated.
    pub unstable: PrimaryMonoidSpec,
    pub unstable_atoms: Vec<PrimaryAtom>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum GeneralVerdict {
    Molecule {
        s: Rational,
        u: Rational,
        factorization: Certificate,
    },
    NotMolecule,
    NotMember,
}

fn certificate_from(atoms: &[PrimaryAtom], coeffs: &[u64]) -> Certificate {
    let mut c = Certificate::default();
    for (a, &k) in atoms.iter().zip(coeffs) {
        c.add(*a, BigUint::from(k));
    }
    c
}

fn elementary_atom(p: u64) -> Rational {
    Rational::new(1, p)
}

/// Decides whether `x` is a molecule of `E_S` for an infinite prime set,
/// evaluating all four equivalent conditions and failing if they disagree.
pub fn molecule_elementary(primes: &PrimeSetDescriptor, x: &Rational) -> Result<ElementaryReport> {
    if !primes.is_infinite() {
        return Err(Error::InvalidSpec(format!("{primes} is finite")));
    }
    let spec = PrimaryMonoidSpec::elementary(primes.clone())?;
    let not_member = ElementaryReport {
        verdict: Verdict::NotMember,
        residues: Vec::new(),
        integer_part: None,
        factorization: None,
        conditions: None,
    };
    let split = match spec.residue_split(x) {
        Ok(s) => s,
        Err(Error::DenominatorNotSquarefreeCompatible(_)) | Err(Error::UnknownPrime { .. }) => {
            return Ok(not_member)
        }
        Err(e) => return Err(e),
    };
    let residues: Vec<(u64, u64)> = split.residues.iter().map(|(a, r)| (a.prime, *r)).collect();
    let Some(c) = split.remainder else {
        return Ok(ElementaryReport {
            residues,
            ..not_member
        });
    };

    // Atoms 1/q with q ∤ d(x) all behave alike: m(1/q, x) = q c.
    let in_denominator: Vec<u64> = residues.iter().map(|r| r.0).collect();
    let q = primes
        .iter()
        .find(|p| !in_denominator.contains(p))
        .expect("an infinite set has a prime outside d(x)");

    let canonical = c.is_zero() && !x.is_zero();
    let one_does_not_divide = !x.is_zero() && !spec.divides(&Rational::integer(1), x)?;
    let mut multiplicities_below_denominators = !x.is_zero();
    for &p in in_denominator.iter().chain(std::iter::once(&q)) {
        if spec.max_multiplicity(&elementary_atom(p), x)? >= BigUint::from(p) {
            multiplicities_below_denominators = false;
        }
    }
    let mut canonical_fact = Certificate::default();
    for &(p, r) in &residues {
        canonical_fact.add(PrimaryAtom { prime: p, numerator: 1 }, BigUint::from(r));
    }
    canonical_fact.add(PrimaryAtom { prime: q, numerator: 1 }, &c * q);
    let coefficients_below_primes = !x.is_zero()
        && canonical_fact
            .terms
            .iter()
            .all(|(a, k)| *k < BigUint::from(a.prime));

    let conditions = ElementaryConditions {
        canonical,
        one_does_not_divide,
        multiplicities_below_denominators,
        coefficients_below_primes,
    };
    if !conditions.agree() {
        return Err(Error::CertificationDisagreement {
            value: x.to_string(),
            detail: format!("{conditions:?}"),
        });
    }
    Ok(ElementaryReport {
        verdict: if canonical {
            Verdict::Molecule
        } else {
            Verdict::NotMolecule
        },
        residues,
        integer_part: Some(c),
        factorization: canonical.then_some(canonical_fact),
        conditions: Some(conditions),
    })
}

/// `count` distinct factorizations of a non-molecule `x ≠ 0` of `E_S`: the
/// integer part `c` is spent as `c q` copies of `1/q` for successive primes
/// `q ∈ S` not dividing `d(x)`.
pub fn elementary_factorizations(
    primes: &PrimeSetDescriptor,
    x: &Rational,
    count: usize,
) -> Result<Vec<Certificate>> {
    let report = molecule_elementary(primes, x)?;
    if report.verdict != Verdict::NotMolecule || x.is_zero() {
        return Err(Error::OutOfRange(format!(
            "{x} is not a nonzero non-molecule of E_S"
        )));
    }
    let c = report.integer_part.expect("members have an integer part");
    let in_denominator: Vec<u64> = report.residues.iter().map(|r| r.0).collect();
    let mut base = Certificate::default();
    for &(p, r) in &report.residues {
        base.add(PrimaryAtom { prime: p, numerator: 1 }, BigUint::from(r));
    }
    Ok(primes
        .iter()
        .filter(|p| !in_denominator.contains(p))
        .take(count)
        .map(|q| {
            let mut z = base.clone();
            z.add(PrimaryAtom { prime: q, numerator: 1 }, &c * q);
            z
        })
        .collect())
}

impl PrimaryMonoidSpec {
    /// Splits the families by stability of their numerator.
    pub fn classify_atoms(&self) -> Classification {
        let unstable = self.part(false);
        let mut unstable_atoms: Vec<PrimaryAtom> = unstable
            .families()
            .iter()
            .flat_map(|f| {
                f.primes
                    .finite_members()
                    .expect("unstable families are finite")
                    .into_iter()
                    .map(move |p| PrimaryAtom {
                        prime: p,
                        numerator: f.numerator,
                    })
            })
            .collect();
        unstable_atoms.sort();
        Classification {
            stable: self.part(true),
            unstable,
            unstable_atoms,
        }
    }

    fn require_member(&self, x: &Rational) -> Result<()> {
        if self.is_member(x)? {
            Ok(())
        } else {
            Err(Error::NotInMonoid(x.to_string()))
        }
    }

    /// The first prime of `family` not dividing `d(x)`, if the family has one.
    fn prime_outside(primes: &PrimeSetDescriptor, in_denominator: &[u64]) -> Option<u64> {
        primes.first_where(in_denominator.len() + 1, |p| !in_denominator.contains(&p))
    }

    /// `m(a, x) < d(a)` for every atom `a`; a sufficient molecule condition.
    ///
    /// Atoms with prime dividing `d(x)` are checked one by one. The others in
    /// a family share `m(A/q, x) = q K_A`, so one representative decides them.
    pub fn sufficient_molecule_check(&self, x: &Rational) -> Result<bool> {
        self.require_member(x)?;
        let atoms = self.denominator_atoms(x)?;
        let in_denominator: Vec<u64> = atoms.iter().map(|a| a.prime).collect();
        for a in &atoms {
            if self.max_multiplicity(&a.value(), x)? >= BigUint::from(a.prime) {
                return Ok(false);
            }
        }
        for f in self.families() {
            if let Some(q) = Self::prime_outside(&f.primes, &in_denominator) {
                let a = Rational::new(f.numerator, q);
                if self.max_multiplicity(&a, x)? >= BigUint::from(q) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// For monoids whose atoms are all stable: `x` is a molecule iff no
    /// numerator divides it.
    pub fn molecule_stable(&self, x: &Rational) -> Result<bool> {
        if self.numerators().iter().any(|&n| !self.is_stable_numerator(n)) {
            return Err(Error::NotStableMonoid);
        }
        self.require_member(x)?;
        if x.is_zero() {
            return Ok(false);
        }
        for &n in self.numerators() {
            if self.divides(&Rational::integer(n), x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether no stable atom divides `u ∈ U(P)`.
    ///
    /// A stable atom `A/p` with `p ∤ d(u)` divides `u` exactly when `A`
    /// does, since its coefficient must then reach `p`. So it suffices to
    /// test the stable atoms at primes of `d(u)` and each stable numerator.
    pub fn is_absolutely_unstable(&self, u: &Rational) -> Result<bool> {
        let cls = self.classify_atoms();
        if !cls.unstable.is_member(u)? {
            return Err(Error::NotInUnstablePart(u.to_string()));
        }
        for a in self.denominator_atoms(u)? {
            if self.is_stable_numerator(a.numerator) && self.divides(&a.value(), u)? {
                return Ok(false);
            }
        }
        for &n in cls.stable.numerators() {
            if self.divides(&Rational::integer(n), u)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Up to `cap` distinct factorizations of `x`, found without reference
    /// to the stable/unstable decomposition.
    ///
    /// If a stable numerator `A` divides `x`, two fresh primes of an
    /// infinite family carrying `A` give two factorizations. Otherwise every
    /// atom `A/q` with `q ∤ d(x)` and `A` stable is unusable, and what
    /// remains is a finite atom list searched exactly.
    pub fn certified_factorizations(&self, x: &Rational, cap: usize) -> Result<Vec<Certificate>> {
        if !self.is_member(x)? {
            return Ok(Vec::new());
        }
        let den_atoms = self.denominator_atoms(x)?;
        let in_denominator: Vec<u64> = den_atoms.iter().map(|a| a.prime).collect();
        for &n in self.numerators() {
            if !self.is_stable_numerator(n) {
                continue;
            }
            let Some(rest) = x.checked_sub(&Rational::integer(n)) else {
                continue;
            };
            let Some(z) = self.contains_primary(&rest)? else {
                continue;
            };
            let family = self
                .families()
                .iter()
                .find(|f| f.numerator == n && f.is_infinite())
                .expect("stable numerators have an infinite family");
            let used: Vec<u64> = z.terms.keys().map(|a| a.prime).collect();
            let out = family
                .primes
                .iter()
                .filter(|q| !in_denominator.contains(q) && !used.contains(q))
                .take(cap)
                .map(|q| {
                    let mut w = z.clone();
                    w.add(PrimaryAtom { prime: q, numerator: n }, BigUint::from(q));
                    w
                })
                .collect();
            return Ok(out);
        }

        let mut atoms: Vec<PrimaryAtom> = den_atoms;
        for a in self.classify_atoms().unstable_atoms {
            if !atoms.contains(&a) {
                atoms.push(a);
            }
        }
        atoms.sort();
        let values: Vec<Rational> = atoms.iter().map(PrimaryAtom::value).collect();
        let search = AtomSearch::new(&values)?;
        let mut out = Vec::new();
        search.for_each(x, |c| {
            out.push(certificate_from(&atoms, c));
            out.len() < cap
        });
        Ok(out)
    }

    /// Candidate unstable parts `u ≤ x` of a factorization of `x`, ascending.
    fn unstable_candidates(&self, x: &Rational, unstable: &[PrimaryAtom]) -> Result<Vec<Rational>> {
        let split = self.residue_split(x)?;
        let slots: Vec<(Rational, u64, u64)> = unstable
            .iter()
            .map(|a| {
                let start = split
                    .residues
                    .iter()
                    .find(|(b, _)| b == a)
                    .map_or(0, |&(_, r)| r);
                (a.value(), start, a.prime)
            })
            .collect();
        let mut found = BTreeSet::new();
        let mut visited = 0usize;

        fn rec(
            slots: &[(Rational, u64, u64)],
            x: &Rational,
            rem: Rational,
            found: &mut BTreeSet<Rational>,
            visited: &mut usize,
        ) -> Result<()> {
            let Some(((value, start, step), rest)) = slots.split_first() else {
                *visited += 1;
                if *visited > MAX_CANDIDATES {
                    return Err(Error::LimitExceeded(MAX_CANDIDATES));
                }
                found.insert(x.checked_sub(&rem).expect("rem <= x"));
                return Ok(());
            };
            let mut c = *start;
            while let Some(next) = rem.checked_sub(&value.mul_int(&BigUint::from(c))) {
                rec(rest, x, next, found, visited)?;
                c += step;
            }
            Ok(())
        }

        rec(&slots, x, x.clone(), &mut found, &mut visited)?;
        Ok(found.into_iter().collect())
    }

    /// Decides whether `x` is a molecule through the decomposition
    /// `x = s + u`, with `s` a molecule of the stable part (or 0) and `u` an
    /// absolutely unstable element with a unique factorization in `U(P)` (or
    /// 0). The verdict is then compared with `certified_factorizations`; a
    /// mismatch is reported as an error rather than resolved.
    pub fn molecule_general(&self, x: &Rational) -> Result<GeneralVerdict> {
        if !self.is_member(x)? {
            return Ok(GeneralVerdict::NotMember);
        }
        let certified = self.certified_factorizations(x, 2)?;
        if x.is_zero() {
            return Ok(GeneralVerdict::NotMolecule);
        }

        let cls = self.classify_atoms();
        let u_values: Vec<Rational> = cls.unstable_atoms.iter().map(PrimaryAtom::value).collect();
        let u_search = AtomSearch::new(&u_values)?;
        let mut decomposition = None;
        for u in self.unstable_candidates(x, &cls.unstable_atoms)? {
            let s = x.checked_sub(&u).expect("candidates are at most x");
            if !cls.stable.is_member(&s)? {
                continue;
            }
            if !s.is_zero() && !cls.stable.molecule_stable(&s)? {
                continue;
            }
            let z_u = if u.is_zero() {
                Certificate::default()
            } else {
                if !self.is_absolutely_unstable(&u)? {
                    continue;
                }
                let mut zs = Vec::new();
                u_search.for_each(&u, |c| {
                    zs.push(certificate_from(&cls.unstable_atoms, c));
                    zs.len() < 2
                });
                if zs.len() != 1 {
                    continue;
                }
                zs.pop().expect("one")
            };
            let mut z = cls
                .stable
                .contains_primary(&s)?
                .expect("s lies in the stable part");
            z.merge(&z_u);
            decomposition = Some((s, u, z));
            break;
        }

        let disagree = |detail: String| Error::CertificationDisagreement {
            value: x.to_string(),
            detail,
        };
        match (decomposition, certified.len()) {
            (Some((s, u, z)), 1) => {
                if z != certified[0] {
                    return Err(disagree(format!("factorizations {z} and {}", certified[0])));
                }
                Ok(GeneralVerdict::Molecule {
                    s,
                    u,
                    factorization: z,
                })
            }
            (None, n) if n >= 2 => Ok(GeneralVerdict::NotMolecule),
            (Some((s, u, _)), n) => Err(disagree(format!(
                "decomposition ({s}, {u}) found but {n} factorizations"
            ))),
            (None, n) => Err(disagree(format!("no decomposition but {n} factorization(s)"))),
        }
    }

    /// `|Z(x)|` capped at `cap`, via the certified search.
    pub fn factorization_count(&self, x: &Rational, cap: usize) -> Result<usize> {
        Ok(self.certified_factorizations(x, cap)?.len())
    }

    /// Atoms `a` with `d(a) <= bound`, ascending by prime.
    pub fn atoms_up_to(&self, bound: u64) -> Vec<PrimaryAtom> {
        self.truncation(bound).atoms
    }
}
