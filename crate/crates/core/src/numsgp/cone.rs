//! Membership in the monoid generated by a finite set of positive integers.
//!
//! After dividing out the gcd `g`, the generators span a numerical semigroup
//! and membership is decided by its Apéry table with respect to the smallest
//! generator: `y` is a member iff `g | y` and `y / g >= w[(y / g) mod m]`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rational::mod_u64;

/// Largest modulus for which an Apéry table is materialized.
pub const MAX_MODULUS: u64 = 20_000_000;

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerCone {
    gens: Vec<u64>,
    gcd: u64,
    modulus: u64,
    /// Minimal element (divided by `gcd`) in each residue class; `u64::MAX`
    /// marks a class the generators never reach (only when `gens` is empty).
    table: Vec<u64>,
    parent: Vec<u32>,
}

impl IntegerCone {
    /// Generators must be positive; order is kept for witness indexing.
    pub fn new(gens: &[u64]) -> Result<Self> {
        if gens.contains(&0) {
            return Err(Error::OutOfRange("cone generators must be positive".into()));
        }
        let gcd = gens.iter().fold(0u64, |g, &a| g.gcd(&a));
        if gens.is_empty() {
            return Ok(Self {
                gens: Vec::new(),
                gcd: 0,
                modulus: 1,
                table: vec![0],
                parent: vec![NO_PARENT],
            });
        }
        let modulus = gens.iter().min().copied().unwrap() / gcd;
        let (table, parent) = apery_table(gens.iter().map(|&a| a / gcd), modulus)?;
        Ok(Self {
            gens: gens.to_vec(),
            gcd,
            modulus,
            table,
            parent,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    pub fn contains(&self, y: u64) -> bool {
        if self.gens.is_empty() {
            return y == 0;
        }
        if !y.is_multiple_of(self.gcd) {
            return false;
        }
        let y = y / self.gcd;
        y >= self.table[(y % self.modulus) as usize]
    }

    pub fn contains_big(&self, y: &BigUint) -> bool {
        match y.to_u64() {
            Some(y) => self.contains(y),
            None => {
                if self.gens.is_empty() || mod_u64(y, self.gcd) != 0 {
                    return false;
                }
                let scaled = y / self.gcd;
                match scaled.to_u64() {
                    Some(s) => s >= self.table[(s % self.modulus) as usize],
                    None => true,
                }
            }
        }
    }

    /// One representation of `y` as coefficients over the generators.
    pub fn witness(&self, y: u64) -> Option<Vec<u64>> {
        if !self.contains(y) {
            return None;
        }
        let mut coeffs = vec![0u64; self.gens.len()];
        if y == 0 {
            return Some(coeffs);
        }
        let scaled: Vec<u64> = self.gens.iter().map(|&a| a / self.gcd).collect();
        let y = y / self.gcd;
        let mut r = (y % self.modulus) as usize;
        let base = self.table[r];
        while self.parent[r] != NO_PARENT {
            let i = self.parent[r] as usize;
            coeffs[i] += 1;
            let step = scaled[i] % self.modulus;
            r = ((r as u64 + self.modulus - step) % self.modulus) as usize;
        }
        let smallest = scaled
            .iter()
            .position(|&a| a == self.modulus)
            .expect("modulus is a generator");
        coeffs[smallest] += (y - base) / self.modulus;
        Some(coeffs)
    }

    /// `modulus * gcd`: membership of `y` depends only on `y` modulo this
    /// and is monotone along each residue class.
    pub fn period(&self) -> u64 {
        self.modulus * self.gcd.max(1)
    }

    /// `witness` for arbitrary-precision `y`: the excess over the Apéry
    /// table entry is absorbed by the smallest generator.
    pub fn witness_big(&self, y: &BigUint) -> Option<Vec<BigUint>> {
        if let Some(small) = y.to_u64() {
            return self
                .witness(small)
                .map(|w| w.into_iter().map(BigUint::from).collect());
        }
        if !self.contains_big(y) {
            return None;
        }
        let scaled = y / self.gcd;
        let base = self.table[mod_u64(&scaled, self.modulus) as usize];
        let mut coeffs: Vec<BigUint> = self
            .witness(base * self.gcd)
            .expect("table entries are members")
            .into_iter()
            .map(BigUint::from)
            .collect();
        let smallest = self
            .gens
            .iter()
            .position(|&a| a / self.gcd == self.modulus)
            .expect("modulus is a generator");
        coeffs[smallest] += (scaled - base) / self.modulus;
        Some(coeffs)
    }
}

/// Shortest paths over residues mod `modulus` with one edge per generator.
pub(crate) fn apery_table(
    gens: impl Iterator<Item = u64>,
    modulus: u64,
) -> Result<(Vec<u64>, Vec<u32>)> {
    if modulus > MAX_MODULUS {
        return Err(Error::TooLarge(format!(
            "Apéry modulus {modulus} exceeds {MAX_MODULUS}"
        )));
    }
    let gens: Vec<u64> = gens.collect();
    let m = modulus as usize;
    let mut dist = vec![u64::MAX; m];
    let mut parent = vec![NO_PARENT; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for (i, &a) in gens.iter().enumerate() {
            let nd = d.checked_add(a).ok_or_else(|| Error::TooLarge("overflow".into()))?;
            let nr = ((r as u64 + a % modulus) % modulus) as usize;
            if nd < dist[nr] {
                dist[nr] = nd;
                parent[nr] = i as u32;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    Ok((dist, parent))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(gens: &[u64], y: u64) -> bool {
        let mut reach = vec![false; y as usize + 1];
        reach[0] = true;
        for v in 1..=y as usize {
            reach[v] = gens.iter().any(|&a| a as usize <= v && reach[v - a as usize]);
        }
        reach[y as usize]
    }

    #[test]
    fn matches_dynamic_programming() {
        for gens in [vec![6, 9, 20], vec![4, 6], vec![10, 15, 6], vec![7], vec![12, 18, 27]] {
            let cone = IntegerCone::new(&gens).unwrap();
            for y in 0..200 {
                assert_eq!(cone.contains(y), brute(&gens, y), "{gens:?} {y}");
                if let Some(w) = cone.witness(y) {
                    let total: u64 = w.iter().zip(&gens).map(|(c, a)| c * a).sum();
                    assert_eq!(total, y);
                }
            }
        }
    }

    #[test]
    fn empty_cone_is_zero() {
        let cone = IntegerCone::new(&[]).unwrap();
        assert!(cone.contains(0));
        assert!(!cone.contains(5));
        assert_eq!(cone.witness(0), Some(vec![]));
    }

    #[test]
    fn big_values() {
        let cone = IntegerCone::new(&[4, 6]).unwrap();
        let big = BigUint::from(u64::MAX) * 2u32;
        assert!(cone.contains_big(&big));
        assert!(!cone.contains_big(&(big.clone() + 1u32)));
        let w = cone.witness_big(&big).unwrap();
        assert_eq!(&w[0] * 4u32 + &w[1] * 6u32, big);
    }
}
