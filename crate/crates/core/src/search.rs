//! Factorization search over a finite list of positive rational atoms.
//!
//! Everything is scaled by the lcm `L` of the atom denominators, turning a
//! factorization of `x` into a nonnegative solution of `Σ c_i w_i = xL` with
//! `w_i = a_i L`. Atoms are visited in an order where each one tends to own a
//! prime no later atom has in its denominator. If `Q` is the part of `L`
//! coprime to every later denominator, all later weights vanish mod `Q`, so
//! the coefficient of the current atom is pinned to a single class modulo
//! `Q / gcd(w_i, Q)`. This is the p-adic valuation argument in modular form,
//! and for primary-style atom sets it cuts every coordinate to a handful of
//! candidates.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{big_mod_inverse, Rational};

#[derive(Debug, Clone)]
pub struct AtomSearch {
    atoms: Vec<Rational>,
    order: Vec<usize>,
    scale: BigUint,
    weights: Vec<BigUint>,
    moduli: Vec<BigUint>,
    suffix_gcd: Vec<BigUint>,
}

/// Removes from `a` every prime that divides `b`.
fn coprime_part(mut a: BigUint, b: &BigUint) -> BigUint {
    loop {
        let g = a.gcd(b);
        if g.is_one() {
            return a;
        }
        a /= g;
    }
}

fn lcm_of<'a>(it: impl Iterator<Item = &'a BigUint>) -> BigUint {
    it.fold(BigUint::one(), |acc, d| acc.lcm(d))
}

impl AtomSearch {
    pub fn new(atoms: &[Rational]) -> Result<Self> {
        if atoms.iter().any(Rational::is_zero) {
            return Err(Error::OutOfRange("atoms must be positive".into()));
        }
        let n = atoms.len();
        let scale = lcm_of(atoms.iter().map(Rational::denom));

        // Greedy: repeatedly take the atom whose private denominator part
        // (relative to the atoms still waiting) is largest.
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut order = Vec::with_capacity(n);
        while !remaining.is_empty() {
            let mut best: Option<(BigUint, usize)> = None;
            for (pos, &i) in remaining.iter().enumerate() {
                let others = lcm_of(
                    remaining
                        .iter()
                        .filter(|&&j| j != i)
                        .map(|&j| atoms[j].denom()),
                );
                let private = coprime_part(atoms[i].denom().clone(), &others);
                let better = match &best {
                    None => true,
                    Some((bp, bpos)) => {
                        private > *bp
                            || (private == *bp && atoms[i] > atoms[remaining[*bpos]])
                    }
                };
                if better {
                    best = Some((private, pos));
                }
            }
            let (_, pos) = best.expect("remaining is nonempty");
            order.push(remaining.remove(pos));
        }

        let weights: Vec<BigUint> = order
            .iter()
            .map(|&i| {
                let a = &atoms[i];
                a.numer() * (&scale / a.denom())
            })
            .collect();
        let moduli: Vec<BigUint> = (0..n)
            .map(|k| {
                let rest = lcm_of(order[k + 1..].iter().map(|&j| atoms[j].denom()));
                coprime_part(scale.clone(), &rest)
            })
            .collect();
        let mut suffix_gcd = vec![BigUint::zero(); n + 1];
        for k in (0..n).rev() {
            suffix_gcd[k] = suffix_gcd[k + 1].gcd(&weights[k]);
        }
        Ok(Self {
            atoms: atoms.to_vec(),
            order,
            scale,
            weights,
            moduli,
            suffix_gcd,
        })
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    /// Visits each factorization of `x` (coefficients in the caller's atom
    /// order); the visitor returns `false` to stop.
    pub fn for_each(&self, x: &Rational, mut visit: impl FnMut(&[u64]) -> bool) {
        let scaled = x.mul_int(&self.scale);
        if !scaled.is_integer() {
            return;
        }
        let target = scaled.numer().clone();
        let mut coeffs = vec![0u64; self.atoms.len()];
        self.descend(0, target, &mut coeffs, &mut visit);
    }

    fn descend(
        &self,
        k: usize,
        rem: BigUint,
        coeffs: &mut [u64],
        visit: &mut impl FnMut(&[u64]) -> bool,
    ) -> bool {
        if k == self.order.len() {
            return !rem.is_zero() || visit(coeffs);
        }
        if !self.suffix_gcd[k].is_zero() && !(&rem % &self.suffix_gcd[k]).is_zero() {
            return true;
        }
        let w = &self.weights[k];
        let q = &self.moduli[k];
        let (start, step) = if q.is_one() {
            (BigUint::zero(), BigUint::one())
        } else {
            let g = w.gcd(q);
            if !((&rem % q) % &g).is_zero() {
                return true;
            }
            let q_red = q / &g;
            let w_red = (w / &g) % &q_red;
            let r_red = (&rem / &g) % &q_red;
            let inv = big_mod_inverse(&w_red, &q_red).expect("w/g is a unit mod q/g");
            ((r_red * inv) % &q_red, q_red)
        };
        let max = &rem / w;
        let slot = self.order[k];
        let mut c = start;
        while c <= max {
            let next = &rem - &c * w;
            coeffs[slot] = c.to_u64().expect("coefficient fits in u64");
            if !self.descend(k + 1, next, coeffs, visit) {
                coeffs[slot] = 0;
                return false;
            }
            c += &step;
        }
        coeffs[slot] = 0;
        true
    }

    /// `min(|Z(x)|, cap)`
    pub fn count(&self, x: &Rational, cap: usize) -> usize {
        let mut n = 0;
        self.for_each(x, |_| {
            n += 1;
            n < cap
        });
        n
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.count(x, 1) == 1
    }

    /// All factorizations of `x`, sorted; fails past `cap`.
    pub fn factorizations(&self, x: &Rational, cap: usize) -> Result<Vec<Vec<u64>>> {
        let mut out = Vec::new();
        let mut over = false;
        self.for_each(x, |c| {
            if out.len() == cap {
                over = true;
                return false;
            }
            out.push(c.to_vec());
            true
        });
        if over {
            return Err(Error::LimitExceeded(cap));
        }
        out.sort();
        Ok(out)
    }

    /// `Σ c_i a_i`
    pub fn evaluate(&self, coeffs: &[u64]) -> Rational {
        coeffs
            .iter()
            .zip(&self.atoms)
            .map(|(&c, a)| a.mul_int(&BigUint::from(c)))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> Rational {
        Rational::new(n, d)
    }

    /// Unpruned bounded recursion.
    fn brute(atoms: &[Rational], x: &Rational) -> Vec<Vec<u64>> {
        fn rec(atoms: &[Rational], i: usize, rem: Rational, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if i == atoms.len() {
                if rem.is_zero() {
                    out.push(cur.clone());
                }
                return;
            }
            let mut c = 0u64;
            let mut left = Some(rem);
            while let Some(l) = left {
                cur.push(c);
                rec(atoms, i + 1, l.clone(), cur, out);
                cur.pop();
                left = l.checked_sub(&atoms[i]);
                c += 1;
            }
        }
        let mut out = Vec::new();
        rec(atoms, 0, x.clone(), &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    #[test]
    fn agrees_with_brute_force() {
        let sets = [
            vec![r(2, 5), r(3, 5)],
            vec![r(1, 2), r(1, 3), r(2, 15), r(5, 42), r(1, 11)],
            vec![r(1, 2), r(8, 3), r(24, 5)],
            vec![r(1, 2), r(3, 4), r(5, 6)],
            vec![r(3, 1), r(5, 1), r(7, 2)],
        ];
        for atoms in &sets {
            let s = AtomSearch::new(atoms).unwrap();
            let top = if atoms.len() > 3 { 4 } else { 16 };
            for num in 0..top {
                for den in [1u64, 2, 3, 4, 5, 6, 10, 15, 30] {
                    let x = r(num, den);
                    let ours = s.factorizations(&x, usize::MAX).unwrap();
                    assert_eq!(ours, brute(atoms, &x), "{atoms:?} {x}");
                    for z in &ours {
                        assert_eq!(s.evaluate(z), x);
                    }
                }
            }
        }
    }

    #[test]
    fn declared_example_counts() {
        let s = AtomSearch::new(&[r(2, 5), r(3, 5)]).unwrap();
        assert_eq!(s.factorizations(&r(1, 1), 10).unwrap(), vec![vec![1, 1]]);
        assert_eq!(s.count(&r(1, 2), 10), 0);
        assert_eq!(s.factorizations(&r(2, 1), 10).unwrap(), vec![vec![2, 2], vec![5, 0]]);
    }

    #[test]
    fn cap_is_reported() {
        let s = AtomSearch::new(&[r(1, 2), r(1, 3)]).unwrap();
        assert_eq!(s.count(&r(100, 1), 3), 3);
        assert_eq!(s.factorizations(&r(100, 1), 3), Err(Error::LimitExceeded(3)));
    }
}
