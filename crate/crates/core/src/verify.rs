//! Property suites run by `molekul verify`. Each check records how many
//! cases it examined and the first counterexample, if any.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numsgp::{interval_semigroup, molecules_dim2, MoleculeMode, NumericalSemigroup};
use crate::primary::{
    elementary_factorizations, molecule_elementary, GeneralVerdict, PrimaryMonoidSpec, PrimeSetDescriptor,
    Verdict,
};
use crate::primes::first_primes;
use crate::puiseux::{stable_stages, PrimePool, PuiseuxMonoidFG, Stage};
use crate::rational::Rational;
use crate::search::AtomSearch;

pub const SEED: u64 = 0x006d_6f6c_656b_756c;

pub const SUITES: [&str; 6] = [
    "numsgp-oracle",
    "dim2",
    "betti-lemma",
    "stages",
    "elementary",
    "primary-general",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub property: String,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Accumulates cases for one property, keeping the first failure.
struct Tally {
    property: &'static str,
    cases: u64,
    failure: Option<String>,
    note: Option<String>,
}

impl Tally {
    fn new(property: &'static str) -> Self {
        Self {
            property,
            cases: 0,
            failure: None,
            note: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn fail(&mut self, e: &Error) {
        self.record(false, || format!("error: {e}"));
    }

    fn finish(self) -> Check {
        Check {
            property: self.property.to_string(),
            passed: self.failure.is_none() && self.cases > 0,
            cases: self.cases,
            counterexample: self.failure,
            note: self.note,
        }
    }
}

/// Runs a named suite, or every suite for `"all"`.
pub fn run(name: &str) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s)).collect();
    }
    Ok(vec![run_one(name)?])
}

fn run_one(name: &str) -> Result<SuiteReport> {
    let checks = match name {
        "numsgp-oracle" => numsgp_oracle(),
        "dim2" => dim2(),
        "betti-lemma" => betti_filter(),
        "stages" => stages(),
        "elementary" => elementary(),
        "primary-general" => primary_general(),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        checks,
    })
}

/// `count` distinct numerical semigroups with multiplicity at most
/// `max_multiplicity` and generators at most `max_generator`, drawn from a
/// fixed seed.
pub fn semigroup_corpus(
    count: usize,
    max_multiplicity: u64,
    max_generator: u64,
    seed: u64,
) -> Vec<NumericalSemigroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < 1000 * count {
        attempts += 1;
        let m = rng.gen_range(2..=max_multiplicity);
        let mut pool: Vec<u64> = (m + 1..=max_generator).collect();
        pool.shuffle(&mut rng);
        let extra = rng.gen_range(1..=4usize).min(pool.len());
        let mut gens = vec![m];
        gens.extend_from_slice(&pool[..extra]);
        if gens.iter().fold(0u64, |g, &a| g.gcd(&a)) != 1 {
            continue;
        }
        let Ok(s) = NumericalSemigroup::from_generators(&gens) else {
            continue;
        };
        if s.multiplicity() == m && seen.insert(s.atoms().to_vec()) {
            out.push(s);
        }
    }
    out
}

/// All factorizations by unpruned recursion.
pub fn recursive_factorizations(atoms: &[u64], x: u64) -> Vec<Vec<u64>> {
    fn rec(atoms: &[u64], rem: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let Some((&a, rest)) = atoms.split_first() else {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        };
        for c in 0..=rem / a {
            cur.push(c);
            rec(rest, rem - c * a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(atoms, x, &mut Vec::new(), &mut out);
    out
}

fn numsgp_oracle() -> Vec<Check> {
    let corpus = semigroup_corpus(120, 9, 30, SEED);
    let mut complete = Tally::new("factorizations are sound and complete up to F + 2 max(atoms)");
    let mut apery = Tally::new("apery set has m elements");
    let mut closed = Tally::new("molecules are divisor-closed");
    let mut two_extra = Tally::new("at least two molecules are not atoms");
    let mut gcd = Tally::new("factorization gcd is symmetric and idempotent");
    for s in &corpus {
        let bound = s.betti_bound();
        for x in 0..=bound {
            let ours: Vec<Vec<u64>> = s.factorizations(x).into_iter().map(|f| f.0).collect();
            let sound = s
                .factorizations(x)
                .iter()
                .all(|f| s.evaluate(f).ok() == Some(x));
            complete.record(sound && ours == recursive_factorizations(s.atoms(), x), || {
                format!("{s} at {x}")
            });
            let zs = s.factorizations(x);
            if let (Some(a), Some(b)) = (zs.first(), zs.last()) {
                let ok = a.gcd(b).ok() == b.gcd(a).ok() && a.gcd(a).ok().as_ref() == Some(a);
                gcd.record(ok, || format!("{a} {b}"));
            }
        }
        for m in [s.multiplicity(), s.max_atom(), s.multiplicity() + s.max_atom()] {
            let ok = s.apery_set(m).map(|w| w.len() as u64 == m).unwrap_or(false);
            apery.record(ok, || format!("{s} m={m}"));
        }
        match s.molecules(MoleculeMode::Enumerate) {
            Ok(ms) => {
                let set: BTreeSet<u64> = ms.iter().copied().collect();
                for &m in &ms {
                    let ok = (1..m).all(|d| !(s.contains(d) && s.divides(d, m)) || set.contains(&d));
                    closed.record(ok, || format!("{s} molecule {m}"));
                }
                let non_atoms = ms.iter().filter(|m| !s.atoms().contains(m)).count();
                two_extra.record(non_atoms >= 2, || format!("{s}: {non_atoms}"));
            }
            Err(e) => closed.fail(&e),
        }
    }
    vec![complete.finish(), apery.finish(), closed.finish(), two_extra.finish(), gcd.finish()]
}

fn dim2() -> Vec<Check> {
    let mut eq = Tally::new("closed form equals enumeration for coprime 2 <= p < q <= 30");
    let mut top = Tally::new("(q-1)p + (p-1)q is a molecule");
    for p in 2..=30u64 {
        for q in p + 1..=30 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let s = NumericalSemigroup::from_generators(&[p, q]).expect("coprime pair");
            let closed = molecules_dim2(p, q).expect("valid pair");
            let enumerated = s.molecules(MoleculeMode::Enumerate).expect("not the naturals");
            eq.record(closed == enumerated, || format!("({p}, {q})"));
            let t = (q - 1) * p + (p - 1) * q;
            top.record(s.is_molecule(t) && enumerated.last() == Some(&t), || {
                format!("({p}, {q}): {t}")
            });
        }
    }
    vec![eq.finish(), top.finish()]
}

fn betti_filter() -> Vec<Check> {
    let corpus = semigroup_corpus(220, 8, 25, SEED ^ 1);
    let mut filter_agrees = Tally::new("molecules by enumeration equal molecules by Betti filter");
    let mut two_extra = Tally::new("at least two molecules are not atoms");
    let mut definition = Tally::new("Betti elements are exactly the x with disconnected graph");
    for (i, s) in corpus.iter().enumerate() {
        let a = s.molecules(MoleculeMode::Enumerate);
        let b = s.molecules(MoleculeMode::BettiFilter);
        filter_agrees.record(a.is_ok() && a == b, || s.to_string());
        if let Ok(ms) = &a {
            let extra = ms.iter().filter(|m| !s.atoms().contains(m)).count();
            two_extra.record(extra >= 2, || format!("{s}: {extra}"));
        }
        if i < 40 {
            let betti: BTreeSet<u64> = s.betti_elements().into_iter().collect();
            for x in 1..=s.betti_bound() {
                let by_graph = s.factorization_graph(x).component_count() >= 2;
                definition.record(by_graph == betti.contains(&x), || format!("{s} at {x}"));
            }
        }
    }
    let mut interval = Tally::new("interval construction has exactly n molecules for n = 5..12");
    for n in 5..=12u64 {
        let ok = interval_semigroup(n)
            .and_then(|s| s.molecules(MoleculeMode::Enumerate))
            .map(|m| m.len() as u64 == n)
            .unwrap_or(false);
        interval.record(ok, || format!("n = {n}"));
    }
    let mut small = Tally::new("<2,3> molecule count by both methods");
    let s = NumericalSemigroup::from_generators(&[2, 3]).expect("coprime");
    let a = s.molecules(MoleculeMode::Enumerate).unwrap_or_default();
    let b = s.molecules(MoleculeMode::BettiFilter).unwrap_or_default();
    small.record(a == b && !a.is_empty(), || format!("{a:?} vs {b:?}"));
    small.note = Some(format!("<2,3> has {} molecules: {a:?}", a.len()));
    vec![filter_agrees.finish(), two_extra.finish(), definition.finish(), interval.finish(), small.finish()]
}

/// Results of the staged-construction checks between consecutive stages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageTransition {
    pub from: usize,
    pub atoms_grow: bool,
    pub generators_are_atoms: bool,
    pub sums_split: bool,
    /// Candidates checked for the molecule collapse.
    pub molecule_candidates: usize,
    pub molecules_are_atoms: bool,
    pub counterexample: Option<String>,
}

/// Molecules of `P_{k+1}` lying in `P_k` have at most one factorization in
/// `P_k`, hence lie in `M(P_k)` (or `P_k` has a single atom). We enumerate
/// that finite superset, keep the elements with a unique factorization in
/// `P_{k+1}` and require each to be an atom of `P_k`.
pub fn stage_transition(lower: &Stage, upper: &Stage) -> Result<StageTransition> {
    let lower_set: BTreeSet<&Rational> = lower.atoms.iter().collect();
    let atoms_grow =
        upper.atoms.len() > lower.atoms.len() && lower.atoms.iter().all(|a| upper.atoms.contains(a));
    let up = upper.search();
    let generators_are_atoms = upper.atoms.iter().all(|a| up.count(a, 2) == 1);
    let mut counterexample = None;
    let mut sums_split = true;
    for r in lower.two_atom_sums() {
        if up.count(&r, 2) < 2 {
            sums_split = false;
            counterexample.get_or_insert_with(|| format!("two-atom sum {r} stays unique"));
        }
    }
    let candidates: Vec<Rational> = if lower.atoms.len() == 1 {
        // M(P_k) is infinite; use M(P_{k+1}) ∩ P_k instead
        let low = lower.monoid()?;
        upper
            .monoid()?
            .molecules()?
            .into_iter()
            .filter(|m| low.contains(m))
            .collect()
    } else {
        lower.monoid()?.molecules()?
    };
    let mut molecules_are_atoms = true;
    for m in &candidates {
        if up.count(m, 2) == 1 && !lower_set.contains(m) {
            molecules_are_atoms = false;
            counterexample.get_or_insert_with(|| format!("{m} is a molecule of stage {} but no atom", upper.index));
        }
    }
    Ok(StageTransition {
        from: lower.index,
        atoms_grow,
        generators_are_atoms,
        sums_split,
        molecule_candidates: candidates.len(),
        molecules_are_atoms,
        counterexample,
    })
}

fn stages() -> Vec<Check> {
    let mut t = Tally::new("stages 1..4 over the first 50 primes");
    let pool = PrimePool::List(first_primes(50));
    match stable_stages(&pool, 4) {
        Ok(st) => {
            for w in st.windows(2) {
                match stage_transition(&w[0], &w[1]) {
                    Ok(tr) => {
                        let ok = tr.atoms_grow && tr.generators_are_atoms && tr.sums_split && tr.molecules_are_atoms;
                        t.record(ok, || format!("{tr:?}"));
                    }
                    Err(e) => t.fail(&e),
                }
            }
            t.note = Some(format!(
                "atom counts {:?}",
                st.iter().map(|s| s.atoms.len()).collect::<Vec<_>>()
            ));
        }
        Err(e) => t.fail(&e),
    }
    let mut fifth = Tally::new("a fifth stage exhausts the first 50 primes");
    fifth.record(
        matches!(stable_stages(&pool, 5), Err(Error::PrimesExhausted { stage: 5, .. })),
        || "stage 5 was built".into(),
    );
    vec![t.finish(), fifth.finish()]
}

/// Squarefree products of subsets of `primes`, ascending.
pub fn squarefree_products(primes: &[u64]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let more: Vec<u64> = out.iter().map(|d| d * p).collect();
        out.extend(more);
    }
    out.sort_unstable();
    out
}

fn elementary() -> Vec<Check> {
    let all = PrimeSetDescriptor::all();
    let mut four = Tally::new("four molecule conditions agree on n/d, d | 9699690, n <= 1000");
    let mut non_molecules = Vec::new();
    for d in squarefree_products(&first_primes(8)) {
        for n in 0..=1000u64 {
            let x = Rational::new(n, d);
            if x.denom() != &BigUint::from(d) {
                continue;
            }
            match molecule_elementary(&all, &x) {
                Ok(r) => {
                    let ok = match r.conditions {
                        Some(c) => c.agree(),
                        None => r.verdict == Verdict::NotMember,
                    };
                    four.record(ok, || format!("{x}: {:?}", r.conditions));
                    if r.verdict == Verdict::NotMolecule && non_molecules.len() < 20 && n > 0 && d > 1 {
                        non_molecules.push(x);
                    }
                }
                Err(e) => four.fail(&e),
            }
        }
    }
    let mut infinite = Tally::new("non-molecules have at least 10 distinct factorizations");
    for x in &non_molecules {
        match elementary_factorizations(&all, x, 10) {
            Ok(zs) => {
                let distinct: BTreeSet<String> = zs.iter().map(|z| z.to_string()).collect();
                let ok = distinct.len() >= 10 && zs.iter().all(|z| z.evaluate() == *x);
                infinite.record(ok, || x.to_string());
            }
            Err(e) => infinite.fail(&e),
        }
    }
    vec![four.finish(), infinite.finish()]
}

/// The specs exercised by the primary suites.
pub fn sample_specs() -> Vec<(&'static str, PrimaryMonoidSpec)> {
    let parse = |s: &str| s.parse::<PrimaryMonoidSpec>().expect("fixed spec");
    vec![
        ("elementary over all primes", PrimaryMonoidSpec::elementary(PrimeSetDescriptor::all()).expect("valid")),
        ("mixed: 1 on 1 mod 4, 3 on {2}", parse("numerator=1 primes=mod:1/4,>=2\nnumerator=3 primes=list:2")),
        (
            "mixed: 2 on p >= 5, 1 on {3}, 7 on {2}",
            parse("numerator=2 primes=all:>=5\nnumerator=1 primes=list:3\nnumerator=7 primes=list:2"),
        ),
        ("stable: 1 on 1 mod 4, 2 on 3 mod 4", parse("numerator=1 primes=mod:1/4,>=2\nnumerator=2 primes=mod:3/4,>=2")),
        ("<1/2, (p^2-1)/p> over six odd primes", PrimaryMonoidSpec::square_minus_one(6)),
    ]
}

fn is_molecule(v: &GeneralVerdict) -> bool {
    matches!(v, GeneralVerdict::Molecule { .. })
}

fn primary_general() -> Vec<Check> {
    let mut example = Tally::new("11/3 is a molecule, 2(1/2) + 8/3, and 1 divides it");
    let s = PrimaryMonoidSpec::square_minus_one(6);
    let x = Rational::new(11, 3);
    let ok = match s.molecule_general(&x) {
        Ok(GeneralVerdict::Molecule { factorization, .. }) => {
            factorization.to_string() == "2*(1/2) + 1*(8/3)"
                && s.divides(&Rational::integer(1), &x).unwrap_or(false)
        }
        _ => false,
    };
    example.record(ok, || "11/3".into());

    let mut doubling = Tally::new("2a is a molecule for every atom a with d(a) != 2, d(a) <= 100");
    let mut sufficient = Tally::new("the sufficient condition implies molecule");
    let mut stable_iff = Tally::new("on stable specs the stable test, the decomposition and the search agree");
    let mut window = Tally::new("verdicts match an exhaustive search over atoms with prime <= 60");
    for (name, spec) in sample_specs() {
        for a in spec.atoms_up_to(100) {
            if a.prime == 2 {
                continue;
            }
            let two_a = a.value().mul_int(&BigUint::from(2u32));
            match spec.molecule_general(&two_a) {
                Ok(v) => doubling.record(is_molecule(&v), || format!("{name}: 2*{a}")),
                Err(e) => doubling.fail(&e),
            }
        }
        let stable = spec.classify_atoms().unstable_atoms.is_empty();
        let generators = spec.truncation(60).generators();
        let search = AtomSearch::new(&generators).expect("positive atoms");
        let dens: Vec<u64> = squarefree_products(&[2, 3, 5, 7])
            .into_iter()
            .filter(|&d| [2, 3, 5, 7].iter().filter(|&&p| d % p == 0).all(|&p| spec.family_of(p).is_some()))
            .collect();
        for d in dens {
            for n in 1..=30u64 {
                let x = Rational::new(n, d);
                let verdict = match spec.molecule_general(&x) {
                    Ok(v) => v,
                    Err(e) => {
                        window.fail(&e);
                        continue;
                    }
                };
                let count = search.count(&x, 2);
                let expected = match count {
                    0 => matches!(verdict, GeneralVerdict::NotMember),
                    1 => is_molecule(&verdict),
                    _ => verdict == GeneralVerdict::NotMolecule,
                };
                window.record(expected, || format!("{name}: {x} has {count} window factorizations"));
                if verdict == GeneralVerdict::NotMember {
                    continue;
                }
                if spec.sufficient_molecule_check(&x).unwrap_or(false) {
                    sufficient.record(is_molecule(&verdict), || format!("{name}: {x}"));
                }
                if stable {
                    let by_stable = spec.molecule_stable(&x).unwrap_or(false);
                    let by_count = spec.factorization_count(&x, 2).map(|c| c == 1).unwrap_or(false);
                    stable_iff.record(by_stable == is_molecule(&verdict) && by_count == by_stable, || {
                        format!("{name}: {x}")
                    });
                }
            }
        }
    }
    vec![
        example.finish(),
        doubling.finish(),
        sufficient.finish(),
        stable_iff.finish(),
        window.finish(),
    ]
}

/// Random finitely generated Puiseux monoids: one to four generators with
/// numerators below 20 and denominators below 8.
pub fn random_fg_monoids(count: usize, seed: u64) -> Vec<PuiseuxMonoidFG> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            let gens: Vec<Rational> = (0..k)
                .map(|_| Rational::new(rng.gen_range(1..20), rng.gen_range(1..8)))
                .collect();
            PuiseuxMonoidFG::from_generators(&gens).expect("positive generators")
        })
        .collect()
}
