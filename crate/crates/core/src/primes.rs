//! Deterministic prime utilities.
//!
//! Primality is decided with Miller-Rabin over the first twelve prime bases,
//! which is exact for every 64-bit input.

use crate::error::{Error, Result};

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= bound`, by sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// The `n`-th prime, 1-indexed (`nth_prime(1) == 2`).
pub fn nth_prime(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::OutOfRange("prime index starts at 1".into()));
    }
    Ok(Primes::from(2).nth(n - 1).expect("primes are infinite"))
}

/// The first `n` primes in ascending order.
pub fn first_primes(n: usize) -> Vec<u64> {
    Primes::from(2).take(n).collect()
}

/// Ascending primes starting at a lower bound.
#[derive(Debug, Clone)]
pub struct Primes {
    next: u64,
}

impl Primes {
    pub fn from(start: u64) -> Self {
        Self { next: start }
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while !is_prime(self.next) {
            self.next = self.next.checked_add(1)?;
        }
        let p = self.next;
        self.next = p.checked_add(1)?;
        Some(p)
    }
}

/// Distinct prime factors of `n` in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while (d as u128) * (d as u128) <= n as u128 {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn require_prime(p: u64) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Query shapes exposed to the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeQuery {
    Nth(usize),
    UpTo(u64),
    IsPrime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeAnswer {
    List(Vec<u64>),
    Flag(bool),
}

pub fn prime_stream(query: PrimeQuery) -> Result<PrimeAnswer> {
    Ok(match query {
        PrimeQuery::Nth(n) => PrimeAnswer::List(vec![nth_prime(n)?]),
        PrimeQuery::UpTo(b) => PrimeAnswer::List(primes_up_to(b)),
        PrimeQuery::IsPrime(n) => PrimeAnswer::Flag(is_prime(n)),
    })
}
