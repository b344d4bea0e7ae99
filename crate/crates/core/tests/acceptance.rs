//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every check is exact; time limits are wall-clock ceilings.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use molekul::numsgp::{interval_semigroup, molecules_dim2};
use molekul::primary::{
    elementary_factorizations, molecule_elementary, GeneralVerdict, PrimeSetDescriptor,
    PrimaryMonoidSpec, Verdict,
};
use molekul::primes::first_primes;
use molekul::puiseux::{fifths_over_dyadics, stable_stages, FactorizationCount, PrimePool};
use molekul::strip::{strip_row, PointClass};
use molekul::verify::{
    random_fg_monoids, recursive_factorizations, sample_specs, semigroup_corpus,
    squarefree_products, stage_transition,
};
use molekul::{Error, MoleculeMode, NumericalSemigroup, Rational};

const CORPUS_SEED: u64 = 0x6d6f6c65;
const FG_SEED: u64 = 13;

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Option<u64>, Box<dyn Fn() -> Outcome + 'a>);

fn ns(gens: &[u64]) -> NumericalSemigroup {
    NumericalSemigroup::from_generators(gens).expect("coprime generators")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn betti_example() -> Outcome {
    let s = ns(&[14, 16, 18, 21, 45]);
    let betti = s.betti_elements();
    ensure(betti.len() == 9, || format!("{} Betti elements: {betti:?}", betti.len()))?;
    ensure(betti.contains(&90) && !betti.contains(&84), || format!("{betti:?}"))?;
    ensure(!s.factorization_graph(90).is_connected(), || "graph of 90 is connected".into())?;
    ensure(s.factorization_graph(84).is_connected(), || "graph of 84 is disconnected".into())?;
    Ok(format!("Betti elements {betti:?}"))
}

/// Classifies `1..=limit` by direct recursion over the generators.
fn oracle_class(s: &NumericalSemigroup, x: u64) -> PointClass {
    match recursive_factorizations(s.atoms(), x).len() {
        0 => PointClass::Gap,
        1 if s.atoms().contains(&x) => PointClass::Atom,
        1 => PointClass::MoleculeNonAtom,
        _ => PointClass::NonMolecule,
    }
}

fn strip_chart() -> Outcome {
    let rows: [&[u64]; 4] = [&[2, 21], &[6, 9, 20], &[5, 6, 7, 8, 9], &[2, 3]];
    for gens in rows {
        let s = ns(gens);
        let row = strip_row(&s, 50).map_err(|e| e.to_string())?;
        for x in 1..=50u64 {
            let want = oracle_class(&s, x);
            let got = row.points[x as usize - 1];
            ensure(got == want, || format!("{s}: {x} is {got:?}, oracle says {want:?}"))?;
        }
    }
    let s = ns(&[5, 6, 7, 8, 9]);
    let m = s.molecules(MoleculeMode::Enumerate).map_err(|e| e.to_string())?;
    let non_atoms: Vec<u64> = m.into_iter().filter(|x| !s.atoms().contains(x)).collect();
    ensure(non_atoms == [10, 11], || format!("non-atom molecules {non_atoms:?}"))?;
    Ok("200 points match; <5,...,9> adds molecules 10, 11".into())
}

fn dim2_closed_form() -> Outcome {
    let mut pairs = 0;
    for q in 3..=30u64 {
        for p in 2..q {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            pairs += 1;
            let closed = molecules_dim2(p, q).map_err(|e| e.to_string())?;
            let s = ns(&[p, q]);
            let counted = s.molecules(MoleculeMode::Enumerate).map_err(|e| e.to_string())?;
            ensure(closed == counted, || format!("<{p},{q}> closed form differs"))?;
            let top = (q - 1) * p + (p - 1) * q;
            ensure(counted.binary_search(&top).is_ok(), || format!("{top} not a molecule of <{p},{q}>"))?;
            let z = s.factorizations(top);
            ensure(z.len() == 1 && z[0].coefficients() == [q - 1, p - 1], || {
                format!("{top} in <{p},{q}> factors as {z:?}")
            })?;
        }
    }
    Ok(format!("{pairs} coprime pairs"))
}

fn corpus() -> Vec<NumericalSemigroup> {
    semigroup_corpus(220, 8, 25, CORPUS_SEED)
}

fn betti_filter(corpus: &[NumericalSemigroup]) -> Outcome {
    ensure(corpus.len() >= 200, || format!("corpus has {} semigroups", corpus.len()))?;
    for s in corpus {
        let a = s.molecules(MoleculeMode::Enumerate).map_err(|e| e.to_string())?;
        let b = s.molecules(MoleculeMode::BettiFilter).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{s}: enumeration and Betti filter differ"))?;
    }
    Ok(format!("{} semigroups", corpus.len()))
}

fn interval_counts() -> Outcome {
    for n in 5..=12u64 {
        let s = interval_semigroup(n).map_err(|e| e.to_string())?;
        let m = s.molecules(MoleculeMode::Enumerate).map_err(|e| e.to_string())?;
        ensure(m.len() as u64 == n, || format!("n = {n}: {} molecules", m.len()))?;
    }
    let s = ns(&[2, 3]);
    let a = s.molecules(MoleculeMode::Enumerate).map_err(|e| e.to_string())?;
    let b = s.molecules(MoleculeMode::BettiFilter).map_err(|e| e.to_string())?;
    let oracle: Vec<u64> = (1..=20)
        .filter(|&x| recursive_factorizations(&[2, 3], x).len() == 1)
        .collect();
    ensure(a == b && a == oracle, || format!("<2,3>: {a:?} / {b:?} / {oracle:?}"))?;
    Ok(format!("n = 5..12 exact; <2,3> has {} molecules {a:?}", a.len()))
}

fn two_non_atom_molecules(corpus: &[NumericalSemigroup]) -> Outcome {
    for s in corpus {
        let m = s.molecules(MoleculeMode::Enumerate).map_err(|e| e.to_string())?;
        let extra = m.iter().filter(|x| !s.atoms().contains(x)).count();
        ensure(extra >= 2, || format!("{s}: {extra} non-atom molecules"))?;
    }
    Ok(format!("{} semigroups", corpus.len()))
}

fn elementary_conditions() -> Outcome {
    let all = PrimeSetDescriptor::all();
    let mut cases = 0u64;
    for d in squarefree_products(&first_primes(8)) {
        for n in 1..=1000u64 {
            let x = Rational::new(n, d);
            if x.denom() != &BigUint::from(d) {
                continue;
            }
            let r = molecule_elementary(&all, &x).map_err(|e| format!("{x}: {e}"))?;
            match r.conditions {
                Some(c) => ensure(c.agree(), || format!("{x}: {c:?}"))?,
                None => ensure(r.verdict == Verdict::NotMember, || format!("{x}: no conditions"))?,
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} reduced fractions, members and non-members"))
}

fn infinitely_many_factorizations() -> Outcome {
    let all = PrimeSetDescriptor::all();
    let mut sampled = Vec::new();
    // The first non-molecule for each squarefree denominator over 2..11.
    'outer: for d in squarefree_products(&first_primes(5)).into_iter().skip(1) {
        for n in 1..200u64 {
            let x = Rational::new(n, d);
            if x.denom() != &BigUint::from(d) {
                continue;
            }
            if molecule_elementary(&all, &x).map_err(|e| e.to_string())?.verdict == Verdict::NotMolecule {
                sampled.push(x);
                if sampled.len() == 20 {
                    break 'outer;
                }
                break;
            }
        }
    }
    ensure(sampled.len() == 20, || format!("only {} non-molecules sampled", sampled.len()))?;
    for x in &sampled {
        let zs = elementary_factorizations(&all, x, 10).map_err(|e| e.to_string())?;
        let distinct: BTreeSet<String> = zs.iter().map(|z| z.to_string()).collect();
        ensure(distinct.len() >= 10, || format!("{x}: {} distinct", distinct.len()))?;
        ensure(zs.iter().all(|z| z.evaluate() == *x), || format!("{x}: a witness does not sum to it"))?;
    }
    Ok("20 non-molecules, 10 explicit factorizations each".into())
}

fn molecule_example() -> Outcome {
    let spec = PrimaryMonoidSpec::square_minus_one(6);
    let x = Rational::new(11, 3);
    match spec.molecule_general(&x).map_err(|e| e.to_string())? {
        GeneralVerdict::Molecule { factorization, .. } => {
            let shown = factorization.to_string();
            ensure(shown == "2*(1/2) + 1*(8/3)", || format!("factorization {shown}"))?;
        }
        other => return Err(format!("verdict {other:?}")),
    }
    let rest = x.checked_sub(&Rational::integer(1)).expect("11/3 > 1");
    let cert = spec.contains_primary(&rest).map_err(|e| e.to_string())?;
    ensure(cert.is_some(), || "8/3 is not an element".into())?;
    Ok("11/3 = 2*(1/2) + 1*(8/3), and 11/3 - 1 is an element".into())
}

fn declared_atoms() -> Outcome {
    let m = fifths_over_dyadics();
    let one = m.factorizations_of(&Rational::integer(1), 100).map_err(|e| e.to_string())?;
    ensure(one == FactorizationCount::Unique(vec![1, 1]), || format!("Z(1) = {one:?}"))?;
    let half = m.factorizations_of(&Rational::new(1, 2), 100).map_err(|e| e.to_string())?;
    ensure(half == FactorizationCount::None, || format!("Z(1/2) = {half:?}"))?;
    Ok("count(1) = 1 via (1,1); count(1/2) = 0".into())
}

fn staged_construction() -> Outcome {
    let pool = PrimePool::List(first_primes(50));
    let stages = stable_stages(&pool, 4).map_err(|e| e.to_string())?;
    for pair in stages.windows(2) {
        let t = stage_transition(&pair[0], &pair[1]).map_err(|e| e.to_string())?;
        ensure(t.atoms_grow && t.generators_are_atoms, || format!("stage {}: atoms", t.from))?;
        ensure(t.sums_split, || format!("stage {}: a two-atom sum stays unique", t.from))?;
        ensure(t.molecules_are_atoms, || format!("stage {}: {:?}", t.from, t.counterexample))?;
    }
    let counts: Vec<usize> = stages.iter().map(|s| s.atoms.len()).collect();
    Ok(format!("atom counts {counts:?}"))
}

fn doubling() -> Outcome {
    let mut checked = 0;
    for (name, spec) in sample_specs().into_iter().take(3) {
        for a in spec.atoms_up_to(100) {
            if a.prime == 2 {
                continue;
            }
            let two_a = a.value().mul_int(&BigUint::from(2u32));
            let v = spec.molecule_general(&two_a).map_err(|e| e.to_string())?;
            ensure(matches!(v, GeneralVerdict::Molecule { .. }), || format!("{name}: 2*{a}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} atoms across E and two mixed specs"))
}

fn cardinality_dichotomy() -> Outcome {
    let (mut finite, mut infinite) = (0, 0);
    for m in random_fg_monoids(100, FG_SEED) {
        let atoms = m.atoms().len();
        match m.molecules() {
            Ok(ms) => {
                ensure(atoms >= 2, || format!("{m}: finite molecules with one atom"))?;
                ensure(ms.len() >= atoms + 2, || format!("{m}: {} molecules", ms.len()))?;
                finite += 1;
            }
            Err(Error::InfiniteResult(_)) => {
                ensure(atoms == 1, || format!("{m}: infinite with {atoms} atoms"))?;
                infinite += 1;
            }
            Err(e) => return Err(format!("{m}: {e}")),
        }
    }
    Ok(format!("{finite} finite, {infinite} infinite"))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        (1, "Betti elements of <14,16,18,21,45>", Some(10), Box::new(betti_example)),
        (2, "strip chart classification up to 50", Some(5), Box::new(strip_chart)),
        (3, "two-generator closed form, p < q <= 30", Some(60), Box::new(dim2_closed_form)),
        (4, "Betti filter equals enumeration", Some(120), Box::new(|| betti_filter(&corpus))),
        (5, "interval construction has n molecules", None, Box::new(interval_counts)),
        (6, "at least two non-atom molecules", None, Box::new(|| two_non_atom_molecules(&corpus))),
        (7, "elementary molecule conditions agree", Some(60), Box::new(elementary_conditions)),
        (8, "non-molecules of E factor in many ways", None, Box::new(infinitely_many_factorizations)),
        (9, "11/3 is a molecule", None, Box::new(molecule_example)),
        (10, "declared atoms 2/5, 3/5", None, Box::new(declared_atoms)),
        (11, "staged construction over 50 primes", Some(120), Box::new(staged_construction)),
        (12, "doubled atoms are molecules", None, Box::new(doubling)),
        (13, "molecule count dichotomy", None, Box::new(cardinality_dichotomy)),
    ];
    let mut failures = 0;
    for (id, title, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if elapsed > Duration::from_secs(secs) => {
                Err(format!("took {elapsed:.2?}, limit {secs} s"))
            }
            (o, _) => o,
        };
        let budget = limit.map(|s| format!(", limit {s} s")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {title}: {detail} ({elapsed:.2?}{budget})"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {id:>2} {title}: {detail} ({elapsed:.2?}{budget})");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
