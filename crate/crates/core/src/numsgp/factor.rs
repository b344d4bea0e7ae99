use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::NumericalSemigroup;
use crate::error::{Error, Result};

/// Coefficient tuple over an indexed atom list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization(pub Vec<u64>);

impl Factorization {
    pub fn zero(arity: usize) -> Self {
        Self(vec![0; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// `|z|`
    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Factorization) -> Result<Factorization> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: other.arity(),
            });
        }
        Ok(Factorization(
            self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect(),
        ))
    }

    /// Whether the two share an atom; avoids allocating the gcd.
    pub fn meets(&self, other: &Factorization) -> bool {
        self.0.iter().zip(&other.0).any(|(&a, &b)| a > 0 && b > 0)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Factorization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad factorization {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Factorization(Vec::new()));
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Factorization)
    }
}

impl NumericalSemigroup {
    /// `φ(z)`
    pub fn evaluate(&self, z: &Factorization) -> Result<u64> {
        if z.arity() != self.atoms.len() {
            return Err(Error::ArityMismatch {
                expected: self.atoms.len(),
                got: z.arity(),
            });
        }
        z.0.iter()
            .zip(&self.atoms)
            .try_fold(0u64, |acc, (&c, &a)| {
                c.checked_mul(a).and_then(|t| acc.checked_add(t))
            })
            .ok_or_else(|| Error::TooLarge(z.to_string()))
    }

    /// Visits every factorization of `x` in lexicographic order; the visitor
    /// returns `false` to stop early.
    pub fn for_each_factorization(&self, x: u64, mut visit: impl FnMut(&[u64]) -> bool) {
        if !self.contains(x) {
            return;
        }
        let mut coeffs = vec![0u64; self.atoms.len()];
        self.descend(0, x, &mut coeffs, &mut visit);
    }

    fn descend(
        &self,
        i: usize,
        rem: u64,
        coeffs: &mut [u64],
        visit: &mut impl FnMut(&[u64]) -> bool,
    ) -> bool {
        if i == self.atoms.len() {
            return rem != 0 || visit(coeffs);
        }
        let a = self.atoms[i];
        for c in 0..=rem / a {
            let next = rem - c * a;
            if !self.suffix_contains(i + 1, next) {
                continue;
            }
            coeffs[i] = c;
            if !self.descend(i + 1, next, coeffs, visit) {
                coeffs[i] = 0;
                return false;
            }
        }
        coeffs[i] = 0;
        true
    }

    /// `Z(x)` in lexicographic order; empty iff `x` is not an element.
    pub fn factorizations(&self, x: u64) -> Vec<Factorization> {
        let mut out = Vec::new();
        self.for_each_factorization(x, |c| {
            out.push(Factorization(c.to_vec()));
            true
        });
        out
    }

    /// `Z(x)`, failing once more than `cap` factorizations appear.
    pub fn factorizations_capped(&self, x: u64, cap: usize) -> Result<Vec<Factorization>> {
        let mut out = Vec::new();
        let mut over = false;
        self.for_each_factorization(x, |c| {
            if out.len() == cap {
                over = true;
                return false;
            }
            out.push(Factorization(c.to_vec()));
            true
        });
        if over {
            Err(Error::LimitExceeded(cap))
        } else {
            Ok(out)
        }
    }

    /// `min(|Z(x)|, cap)`
    pub fn factorization_count(&self, x: u64, cap: usize) -> usize {
        let mut n = 0;
        self.for_each_factorization(x, |_| {
            n += 1;
            n < cap
        });
        n
    }

    /// `L(x)`
    pub fn length_set(&self, x: u64) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        self.for_each_factorization(x, |c| {
            out.insert(c.iter().sum());
            true
        });
        out
    }

    /// One factorization of `x`, without enumerating the others.
    pub fn some_factorization(&self, x: u64) -> Option<Factorization> {
        let mut found = None;
        self.for_each_factorization(x, |c| {
            found = Some(Factorization(c.to_vec()));
            false
        });
        found
    }
}
