use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::descriptor::PrimeSetDescriptor;
use crate::error::{Error, Result};
use crate::numsgp::cone::IntegerCone;
use crate::primes::{is_prime, prime_factors, primes_up_to, Primes};
use crate::rational::{mod_inverse, mod_u64, Rational};

/// The atoms `numerator / p` for every prime `p` of the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomFamily {
    pub numerator: u64,
    pub primes: PrimeSetDescriptor,
}

impl AtomFamily {
    pub fn new(numerator: u64, primes: PrimeSetDescriptor) -> Self {
        Self { numerator, primes }
    }

    pub fn is_infinite(&self) -> bool {
        self.primes.is_infinite()
    }
}

/// One atom `numerator / prime` of a primary monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimaryAtom {
    pub prime: u64,
    pub numerator: u64,
}

impl PrimaryAtom {
    pub fn value(&self) -> Rational {
        Rational::new(self.numerator, self.prime)
    }
}

impl fmt::Display for PrimaryAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A factorization given as atom multiplicities, ordered by prime.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    pub terms: BTreeMap<PrimaryAtom, BigUint>,
}

impl Certificate {
    pub fn add(&mut self, atom: PrimaryAtom, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.terms.entry(atom).or_default() += count;
    }

    pub fn merge(&mut self, other: &Certificate) {
        for (a, c) in &other.terms {
            self.add(*a, c.clone());
        }
    }

    pub fn evaluate(&self) -> Rational {
        self.terms.iter().map(|(a, c)| a.value().mul_int(c)).sum()
    }

    /// Total number of atoms used.
    pub fn length(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// `(atom, count)` pairs as strings, ascending by prime.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(a, c)| (a.to_string(), c.to_string()))
            .collect()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*({a})")?;
        }
        Ok(())
    }
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (a, c) in &self.terms {
            map.serialize_entry(&a.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

/// Residue decomposition of an element: the forced coefficient of each atom
/// whose prime divides the denominator, and the integer left over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSplit {
    /// `(atom, r_p)` for each prime `p | d(x)`, ascending by prime.
    pub residues: Vec<(PrimaryAtom, u64)>,
    /// `x - Σ r_p a_p`, which is always an integer; `None` when negative.
    pub remainder: Option<BigUint>,
}

/// A primary Puiseux monoid given by atom families with pairwise disjoint
/// prime sets.
#[derive(Debug, Clone)]
pub struct PrimaryMonoidSpec {
    families: Vec<AtomFamily>,
    /// Distinct numerators, ascending.
    numerators: Vec<u64>,
    cone: IntegerCone,
}

impl PartialEq for PrimaryMonoidSpec {
    fn eq(&self, other: &Self) -> bool {
        self.families == other.families
    }
}

impl Eq for PrimaryMonoidSpec {}

fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| primes_up_to(1 << 16))
}

/// Distinct prime factors of `d`, failing on a repeated prime.
fn squarefree_factors(d: &BigUint, value: &Rational) -> Result<Vec<u64>> {
    let repeated = || Error::DenominatorNotSquarefreeCompatible(value.to_string());
    let mut rem = d.clone();
    let mut out = Vec::new();
    for &p in small_primes() {
        if rem.is_one() {
            return Ok(out);
        }
        if BigUint::from(p) * p > rem {
            break;
        }
        if mod_u64(&rem, p) == 0 {
            rem /= p;
            if mod_u64(&rem, p) == 0 {
                return Err(repeated());
            }
            out.push(p);
        }
    }
    if rem.is_one() {
        return Ok(out);
    }
    let rem = rem
        .to_u64()
        .ok_or_else(|| Error::TooLarge(format!("denominator of {value}")))?;
    if is_prime(rem) {
        out.push(rem);
    } else {
        // no factor below 2^16, so rem < 2^64 has at most three prime factors
        let ps = prime_factors(rem);
        if ps.iter().any(|&p| (rem / p) % p == 0) {
            return Err(repeated());
        }
        out.extend(ps);
    }
    out.sort_unstable();
    Ok(out)
}

impl PrimaryMonoidSpec {
    /// Validates numerators, emptiness, coprimality of each numerator with
    /// its primes and pairwise disjointness of the prime sets.
    pub fn new(families: Vec<AtomFamily>) -> Result<Self> {
        for f in &families {
            if f.numerator == 0 {
                return Err(Error::InvalidSpec("numerators must be positive".into()));
            }
            if f.primes.is_empty() {
                return Err(Error::InvalidSpec(format!(
                    "family with numerator {} has no primes",
                    f.numerator
                )));
            }
            if let Some(p) = prime_factors(f.numerator)
                .into_iter()
                .find(|&p| f.primes.contains(p))
            {
                return Err(Error::InvalidSpec(format!(
                    "prime {p} divides the numerator {} of its own family",
                    f.numerator
                )));
            }
        }
        for (i, f) in families.iter().enumerate() {
            for g in &families[i + 1..] {
                if let Some(p) = f.primes.common_prime(&g.primes) {
                    return Err(Error::InvalidSpec(format!(
                        "prime {p} belongs to both {} and {}",
                        f.primes, g.primes
                    )));
                }
            }
        }
        let mut numerators: Vec<u64> = families.iter().map(|f| f.numerator).collect();
        numerators.sort_unstable();
        numerators.dedup();
        let cone = IntegerCone::new(&numerators)?;
        Ok(Self {
            families,
            numerators,
            cone,
        })
    }

    /// `E_S`: one atom `1/p` per prime of `primes`.
    pub fn elementary(primes: PrimeSetDescriptor) -> Result<Self> {
        Self::new(vec![AtomFamily::new(1, primes)])
    }

    /// `<1/2, (p^2 - 1)/p>` over the first `depth` odd primes.
    pub fn square_minus_one(depth: usize) -> Self {
        let mut families = vec![AtomFamily::new(1, PrimeSetDescriptor::List(vec![2]))];
        for p in Primes::from(3).take(depth) {
            families.push(AtomFamily::new(p * p - 1, PrimeSetDescriptor::List(vec![p])));
        }
        Self::new(families).expect("one prime per family, all distinct")
    }

    pub fn families(&self) -> &[AtomFamily] {
        &self.families
    }

    /// Distinct numerators, ascending.
    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    pub fn family_of(&self, p: u64) -> Option<&AtomFamily> {
        self.families.iter().find(|f| f.primes.contains(p))
    }

    /// The atom with denominator `p`.
    pub fn atom_at(&self, p: u64) -> Option<PrimaryAtom> {
        self.family_of(p).map(|f| PrimaryAtom {
            prime: p,
            numerator: f.numerator,
        })
    }

    /// Whether `q` is one of the atoms.
    pub fn atom_of(&self, q: &Rational) -> Option<PrimaryAtom> {
        let p = q.denom().to_u64()?;
        let n = q.numer().to_u64()?;
        self.atom_at(p).filter(|a| a.numerator == n)
    }

    /// A numerator is stable when infinitely many atoms carry it.
    pub fn is_stable_numerator(&self, n: u64) -> bool {
        self.families
            .iter()
            .any(|f| f.numerator == n && f.is_infinite())
    }

    /// The families whose numerator is stable (or not), as a spec.
    pub fn part(&self, stable: bool) -> Self {
        let fams = self
            .families
            .iter()
            .filter(|f| self.is_stable_numerator(f.numerator) == stable)
            .cloned()
            .collect();
        Self::new(fams).expect("subfamilies of a valid spec")
    }

    /// Every atom with prime `<= bound`.
    pub fn truncation(&self, bound: u64) -> Truncation {
        let mut atoms: Vec<PrimaryAtom> = self
            .families
            .iter()
            .flat_map(|f| {
                f.primes.iter().take_while(move |&p| p <= bound).map(move |p| PrimaryAtom {
                    prime: p,
                    numerator: f.numerator,
                })
            })
            .collect();
        atoms.sort();
        Truncation { bound, atoms }
    }

    /// Atoms with prime dividing `d(x)`, ascending; errors on repeated or
    /// unknown primes.
    pub fn denominator_atoms(&self, x: &Rational) -> Result<Vec<PrimaryAtom>> {
        squarefree_factors(x.denom(), x)?
            .into_iter()
            .map(|p| {
                self.atom_at(p).ok_or_else(|| Error::UnknownPrime {
                    prime: p,
                    value: x.to_string(),
                })
            })
            .collect()
    }

    /// The forced residues of `x` and the integer remainder.
    ///
    /// If `c a/p` with `a = n(atom)` appears in a factorization of `x`, the
    /// p-adic valuation forces `c ≡ n(x) (d(x)/p)^{-1} a^{-1} (mod p)` when
    /// `p | d(x)`, and `c ≡ 0` otherwise.
    pub fn residue_split(&self, x: &Rational) -> Result<ResidueSplit> {
        let atoms = self.denominator_atoms(x)?;
        let d = x.denom();
        let n = x.numer();
        let mut residues = Vec::with_capacity(atoms.len());
        let mut used = Rational::zero();
        for atom in atoms {
            let p = atom.prime;
            let cofactor = mod_u64(&(d / p), p);
            let inv = mod_inverse(cofactor * (atom.numerator % p) % p, p)
                .expect("p is coprime to d/p and to the numerator");
            let r = ((mod_u64(n, p) as u128 * inv as u128) % p as u128) as u64;
            used = &used + &atom.value().mul_int(&BigUint::from(r));
            residues.push((atom, r));
        }
        let remainder = x.checked_sub(&used).map(|y| {
            debug_assert!(y.is_integer());
            y.numer().clone()
        });
        Ok(ResidueSplit {
            residues,
            remainder,
        })
    }

    /// Exact membership with a factorization as witness.
    pub fn contains_primary(&self, x: &Rational) -> Result<Option<Certificate>> {
        let split = self.residue_split(x)?;
        let Some(y) = split.remainder else {
            return Ok(None);
        };
        let Some(ks) = self.cone.witness_big(&y) else {
            return Ok(None);
        };
        let mut cert = Certificate::default();
        for &(atom, r) in &split.residues {
            cert.add(atom, BigUint::from(r));
        }
        for (&num, k) in self.numerators.iter().zip(ks) {
            if k.is_zero() {
                continue;
            }
            // Realize `k * num` as `k p` copies of `num / p`, reusing a
            // denominator prime when its family carries this numerator.
            let atom = split
                .residues
                .iter()
                .map(|(a, _)| *a)
                .find(|a| a.numerator == num)
                .or_else(|| {
                    self.families
                        .iter()
                        .filter(|f| f.numerator == num)
                        .filter_map(|f| f.primes.iter().next())
                        .min()
                        .map(|p| PrimaryAtom {
                            prime: p,
                            numerator: num,
                        })
                })
                .expect("every numerator has a prime");
            cert.add(atom, k * atom.prime);
        }
        Ok(Some(cert))
    }

    /// Membership, with repeated or unknown denominator primes reported as
    /// non-membership.
    pub fn is_member(&self, x: &Rational) -> Result<bool> {
        match self.residue_split(x) {
            Ok(split) => Ok(split
                .remainder
                .is_some_and(|y| self.cone.contains_big(&y))),
            Err(Error::DenominatorNotSquarefreeCompatible(_)) | Err(Error::UnknownPrime { .. }) => {
                Ok(false)
            }
            Err(e) => Err(e),
        }
    }

    /// Whether `a` divides `x`, i.e. `x - a` is an element.
    pub fn divides(&self, a: &Rational, x: &Rational) -> Result<bool> {
        match x.checked_sub(a) {
            Some(diff) => self.is_member(&diff),
            None => Ok(false),
        }
    }

    /// Largest `k` with `y - k a` in the cone of numerators, given that `y`
    /// itself lies in the cone.
    fn max_removable(&self, y: &BigUint, a: u64) -> BigUint {
        let top = y / a;
        // Membership of `y - k a` depends on its residue modulo
        // `period = modulus * gcd` and is monotone within a residue class,
        // so one full period below the top decides it.
        let period = self.cone.period();
        let mut k = top.clone();
        let mut tried = 0u64;
        loop {
            if self.cone.contains_big(&(y - &k * a)) {
                return k;
            }
            tried += 1;
            if k.is_zero() || tried >= period {
                break;
            }
            k -= 1u32;
        }
        // unreachable for members: k = 0 succeeds and lies within a period
        BigUint::zero()
    }

    /// `m(a, x)`: the largest `n` with `x - n a` in the monoid.
    ///
    /// Every factorization uses `a = A/p` a number of times congruent to the
    /// forced residue `r_p` modulo `p` (zero when `p ∤ d(x)`), and the copies
    /// beyond `r_p` come in blocks of `p` worth `A` each. Hence
    /// `m(a, x) = r_p + p K` with `K` the largest `k` for which the integer
    /// remainder minus `k A` stays in the cone of numerators.
    pub fn max_multiplicity(&self, a: &Rational, x: &Rational) -> Result<BigUint> {
        let atom = self
            .atom_of(a)
            .ok_or_else(|| Error::NotAnAtom(a.to_string()))?;
        let not_in = || Error::NotInMonoid(x.to_string());
        let split = self.residue_split(x).map_err(|e| match e {
            Error::TooLarge(_) => e,
            _ => not_in(),
        })?;
        let y = split.remainder.ok_or_else(not_in)?;
        if !self.cone.contains_big(&y) {
            return Err(not_in());
        }
        let r = split
            .residues
            .iter()
            .find(|(b, _)| b.prime == atom.prime)
            .map_or(0, |&(_, r)| r);
        let k = self.max_removable(&y, atom.numerator);
        Ok(BigUint::from(r) + k * atom.prime)
    }
}

/// The atoms of a spec with prime at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub bound: u64,
    pub atoms: Vec<PrimaryAtom>,
}

impl Truncation {
    pub fn generators(&self) -> Vec<Rational> {
        self.atoms.iter().map(PrimaryAtom::value).collect()
    }
}

impl FromStr for AtomFamily {
    type Err = Error;

    /// `numerator=<int> primes=<descriptor>`
    fn from_str(line: &str) -> Result<Self> {
        let mut numerator = None;
        let mut primes = None;
        for tok in line.split_whitespace() {
            if let Some(v) = tok.strip_prefix("numerator=") {
                numerator = Some(
                    v.parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad numerator {v:?}")))?,
                );
            } else if let Some(v) = tok.strip_prefix("primes=") {
                primes = Some(v.parse::<PrimeSetDescriptor>()?);
            } else {
                return Err(Error::Parse(format!("unexpected token {tok:?}")));
            }
        }
        match (numerator, primes) {
            (Some(n), Some(p)) => Ok(Self::new(n, p)),
            _ => Err(Error::Parse(format!(
                "expected numerator=<int> primes=<set> in {line:?}"
            ))),
        }
    }
}

impl fmt::Display for AtomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "numerator={} primes={}", self.numerator, self.primes)
    }
}

impl FromStr for PrimaryMonoidSpec {
    type Err = Error;

    /// One family per line; blank lines and `#` comments are skipped.
    fn from_str(text: &str) -> Result<Self> {
        let families = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<AtomFamily>>>()?;
        Self::new(families)
    }
}

impl fmt::Display for PrimaryMonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fam in &self.families {
            writeln!(f, "{fam}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> Rational {
        Rational::new(n, d)
    }

    fn e() -> PrimaryMonoidSpec {
        PrimaryMonoidSpec::elementary(PrimeSetDescriptor::all()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let cert = e().contains_primary(&r(5, 6)).unwrap().unwrap();
        assert_eq!(cert.evaluate(), r(5, 6));
        assert_eq!(cert.length(), BigUint::from(2u32));

        let odd: PrimaryMonoidSpec = "numerator=2 primes=all:>=3".parse().unwrap();
        let split = odd.residue_split(&r(2, 15)).unwrap();
        assert_eq!(split.residues.iter().map(|x| x.1).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(split.remainder, None);
        assert_eq!(odd.contains_primary(&r(2, 15)).unwrap(), None);

        for spec in [e(), odd, PrimaryMonoidSpec::square_minus_one(4)] {
            assert_eq!(spec.contains_primary(&Rational::zero()).unwrap(), Some(Certificate::default()));
        }
    }

    #[test]
    fn membership_errors() {
        assert!(matches!(
            e().contains_primary(&r(1, 4)),
            Err(Error::DenominatorNotSquarefreeCompatible(_))
        ));
        let s = PrimaryMonoidSpec::square_minus_one(2);
        assert_eq!(
            s.contains_primary(&r(1, 7)),
            Err(Error::UnknownPrime {
                prime: 7,
                value: "1/7".into()
            })
        );
        assert!(!s.is_member(&r(1, 7)).unwrap());
    }

    #[test]
    fn multiplicity_examples() {
        let e = e();
        assert_eq!(e.max_multiplicity(&r(1, 2), &r(5, 6)).unwrap(), 1u32.into());
        assert_eq!(e.max_multiplicity(&r(1, 2), &r(3, 2)).unwrap(), 3u32.into());
        assert_eq!(e.max_multiplicity(&r(1, 3), &Rational::zero()).unwrap(), 0u32.into());
        assert!(matches!(e.max_multiplicity(&r(2, 3), &r(1, 1)), Err(Error::NotAnAtom(_))));
        assert!(matches!(e.max_multiplicity(&r(1, 2), &r(1, 4)), Err(Error::NotInMonoid(_))));
        let s = PrimaryMonoidSpec::square_minus_one(3);
        assert_eq!(s.max_multiplicity(&r(1, 2), &r(11, 3)).unwrap(), 2u32.into());
    }

    /// Descending search from `floor(x / a)` with plain membership tests.
    fn multiplicity_by_search(s: &PrimaryMonoidSpec, a: &Rational, x: &Rational) -> u64 {
        let top = x.div(a).floor().to_u64().unwrap();
        (0..=top)
            .rev()
            .find(|&n| {
                x.checked_sub(&a.mul_int(&BigUint::from(n)))
                    .is_some_and(|rest| s.is_member(&rest).unwrap())
            })
            .unwrap()
    }

    #[test]
    fn closed_form_multiplicity_matches_search() {
        let specs = [
            e(),
            PrimaryMonoidSpec::square_minus_one(3),
            "numerator=1 primes=mod:1/4,>=2\nnumerator=3 primes=list:2".parse().unwrap(),
            "numerator=2 primes=all:>=5\nnumerator=1 primes=list:3\nnumerator=7 primes=list:2"
                .parse()
                .unwrap(),
        ];
        for s in &specs {
            let atoms = s.truncation(13).atoms;
            for d in [1u64, 2, 3, 5, 6, 10, 15, 30, 13] {
                for n in 0..60u64 {
                    let x = r(n, d);
                    if !s.is_member(&x).unwrap() {
                        continue;
                    }
                    for a in &atoms {
                        let closed = s.max_multiplicity(&a.value(), &x).unwrap();
                        assert_eq!(closed, multiplicity_by_search(s, &a.value(), &x).into(), "{x} {a}");
                    }
                }
            }
        }
    }

    #[test]
    fn certificates_recompose() {
        let s: PrimaryMonoidSpec =
            "numerator=2 primes=all:>=5\nnumerator=1 primes=list:3\nnumerator=7 primes=list:2"
                .parse()
                .unwrap();
        for d in [1u64, 2, 3, 5, 6, 7, 35, 210] {
            for n in 0..200u64 {
                let x = r(n, d);
                if let Some(c) = s.contains_primary(&x).unwrap() {
                    assert_eq!(c.evaluate(), x);
                }
            }
        }
        let big = Rational::try_new(
            num_bigint::BigInt::from(10u32).pow(30) + 1u32,
            6u32,
        )
        .unwrap();
        let c = e().contains_primary(&big).unwrap().unwrap();
        assert_eq!(c.evaluate(), big);
    }

    #[test]
    fn spec_validation() {
        let clash = "numerator=1 primes=mod:1/4,>=2\nnumerator=3 primes=list:5"
            .parse::<PrimaryMonoidSpec>()
            .unwrap_err();
        assert!(clash.to_string().contains("prime 5"), "{clash}");
        assert!("numerator=3 primes=list:3".parse::<PrimaryMonoidSpec>().is_err());
        assert!("numerator=0 primes=list:3".parse::<PrimaryMonoidSpec>().is_err());
        assert!("numerator=1 primes=mod:2/4,>=3".parse::<PrimaryMonoidSpec>().is_err());
        assert!("numerator=1".parse::<PrimaryMonoidSpec>().is_err());
        let text = "numerator=1 primes=mod:1/4,>=2\nnumerator=3 primes=list:2\n";
        let s: PrimaryMonoidSpec = format!("# mixed\n{text}\n").parse().unwrap();
        assert_eq!(s.to_string(), text);
    }

    #[test]
    fn truncation_window() {
        let t = PrimaryMonoidSpec::square_minus_one(3).truncation(5);
        assert_eq!(t.generators(), vec![r(1, 2), r(8, 3), r(24, 5)]);
    }
}
