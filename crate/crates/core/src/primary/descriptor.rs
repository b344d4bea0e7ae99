use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::primes::{is_prime, prime_factors, Primes};

/// A finitely described set of primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PrimeSetDescriptor {
    /// An explicit finite list, kept sorted and deduplicated.
    List(Vec<u64>),
    /// Every prime `>= min` outside `exclude`.
    All { min: u64, exclude: Vec<u64> },
    /// Every prime `p >= min` with `p ≡ residue (mod modulus)`, outside
    /// `exclude`.
    Mod {
        residue: u64,
        modulus: u64,
        min: u64,
        exclude: Vec<u64>,
    },
}

impl PrimeSetDescriptor {
    pub fn list(primes: &[u64]) -> Result<Self> {
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        let mut ps = primes.to_vec();
        ps.sort_unstable();
        ps.dedup();
        Ok(Self::List(ps))
    }

    pub fn all() -> Self {
        Self::All {
            min: 2,
            exclude: Vec::new(),
        }
    }

    pub fn all_from(min: u64, exclude: &[u64]) -> Self {
        let mut exclude = exclude.to_vec();
        exclude.sort_unstable();
        exclude.dedup();
        Self::All { min, exclude }
    }

    pub fn residue_class(residue: u64, modulus: u64, min: u64, exclude: &[u64]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidSpec("modulus must be positive".into()));
        }
        let mut exclude = exclude.to_vec();
        exclude.sort_unstable();
        exclude.dedup();
        Ok(Self::Mod {
            residue: residue % modulus,
            modulus,
            min,
            exclude,
        })
    }

    /// `(residue, modulus, min, exclude)` for the two progression forms.
    fn progression(&self) -> Option<(u64, u64, u64, &[u64])> {
        match self {
            Self::List(_) => None,
            Self::All { min, exclude } => Some((0, 1, *min, exclude)),
            Self::Mod {
                residue,
                modulus,
                min,
                exclude,
            } => Some((*residue, *modulus, *min, exclude)),
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            Self::List(ps) => ps.binary_search(&p).is_ok(),
            _ => {
                let (r, m, b, ex) = self.progression().expect("progression");
                p >= b && p % m == r && !ex.contains(&p) && is_prime(p)
            }
        }
    }

    /// Whether the set is infinite. A progression `r mod m` holds infinitely
    /// many primes exactly when `gcd(r, m) = 1`.
    pub fn is_infinite(&self) -> bool {
        match self.progression() {
            None => false,
            Some((r, m, _, _)) => r.gcd(&m) == 1,
        }
    }

    /// The members, ascending, when the set is finite.
    pub fn finite_members(&self) -> Option<Vec<u64>> {
        match self {
            Self::List(ps) => Some(ps.clone()),
            _ if self.is_infinite() => None,
            _ => {
                let (r, m, _, _) = self.progression().expect("progression");
                // every member divides gcd(r, m)
                let g = r.gcd(&m);
                Some(
                    prime_factors(g)
                        .into_iter()
                        .filter(|&p| self.contains(p))
                        .collect(),
                )
            }
        }
    }

    /// Ascending members.
    pub fn iter(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match self.finite_members() {
            Some(ps) => Box::new(ps.into_iter()),
            None => {
                let (_, _, b, _) = self.progression().expect("infinite sets are progressions");
                Box::new(Primes::from(b.max(2)).filter(move |&p| self.contains(p)))
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.iter().next().is_none()
    }

    /// Smallest member satisfying `keep`, searching at most `limit` members.
    pub fn first_where(&self, limit: usize, keep: impl Fn(u64) -> bool) -> Option<u64> {
        self.iter().take(limit).find(|&p| keep(p))
    }

    /// A prime lying in both sets, if any; the smallest one when the
    /// intersection is finite or found by the scan.
    pub fn common_prime(&self, other: &Self) -> Option<u64> {
        if let Some(ps) = self.finite_members() {
            return ps.into_iter().find(|&p| other.contains(p));
        }
        if let Some(ps) = other.finite_members() {
            return ps.into_iter().find(|&p| self.contains(p));
        }
        let (r1, m1, b1, _) = self.progression().expect("infinite");
        let (r2, m2, b2, _) = other.progression().expect("infinite");
        // Two coprime progressions meet in a coprime progression modulo the
        // lcm, which holds infinitely many primes; otherwise they are disjoint.
        let g = m1.gcd(&m2);
        if r1 % g != r2 % g {
            return None;
        }
        let lcm = m1 / g * m2;
        let start = b1.max(b2).max(2);
        let first = (start..start + lcm).find(|n| n % m1 == r1 && n % m2 == r2)?;
        // terminates by Dirichlet's theorem; the exclusions are finite
        (first..)
            .step_by(lcm as usize)
            .find(|&n| self.contains(n) && other.contains(n))
    }
}

fn parse_u64(t: &str) -> Result<u64> {
    t.trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
}

fn parse_list(t: &str) -> Result<Vec<u64>> {
    t.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_u64)
        .collect()
}

/// Splits `">=b[,exclude:...]"` into the bound and the excluded primes.
fn parse_tail(t: &str) -> Result<(u64, Vec<u64>)> {
    let (bound, exclude) = match t.split_once(",exclude:") {
        Some((b, e)) => (b, parse_list(e)?),
        None => (t, Vec::new()),
    };
    let bound = bound
        .trim()
        .strip_prefix(">=")
        .ok_or_else(|| Error::Parse(format!("expected >=<bound> in {t:?}")))?;
    Ok((parse_u64(bound)?, exclude))
}

impl FromStr for PrimeSetDescriptor {
    type Err = Error;

    /// `list:2,3,5` | `all:>=b[,exclude:..]` | `mod:r/m,>=b[,exclude:..]`
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("list:") {
            let ps = parse_list(rest)?;
            if ps.is_empty() {
                return Err(Error::Parse("empty prime list".into()));
            }
            Self::list(&ps)
        } else if let Some(rest) = s.strip_prefix("all:") {
            let (b, ex) = parse_tail(rest)?;
            Ok(Self::all_from(b, &ex))
        } else if let Some(rest) = s.strip_prefix("mod:") {
            let (class, tail) = rest
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected mod:r/m,>=b in {s:?}")))?;
            let (r, m) = class
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("expected r/m in {class:?}")))?;
            let (b, ex) = parse_tail(tail)?;
            Self::residue_class(parse_u64(r)?, parse_u64(m)?, b, &ex)
        } else {
            Err(Error::Parse(format!("unknown prime set {s:?}")))
        }
    }
}

fn join(ps: &[u64]) -> String {
    ps.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for PrimeSetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = |f: &mut fmt::Formatter<'_>, b: u64, ex: &[u64]| {
            write!(f, ">={b}")?;
            if !ex.is_empty() {
                write!(f, ",exclude:{}", join(ex))?;
            }
            Ok(())
        };
        match self {
            Self::List(ps) => write!(f, "list:{}", join(ps)),
            Self::All { min, exclude } => {
                write!(f, "all:")?;
                tail(f, *min, exclude)
            }
            Self::Mod {
                residue,
                modulus,
                min,
                exclude,
            } => {
                write!(f, "mod:{residue}/{modulus},")?;
                tail(f, *min, exclude)
            }
        }
    }
}
