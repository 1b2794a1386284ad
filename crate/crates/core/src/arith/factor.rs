use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::ArithError;

const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000;

/// Prime factorization `n = Π pᵢ^αᵢ` with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn least_prime(&self) -> Option<u64> {
        self.0.first().map(|&(p, _)| p)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.0.last().map(|&(p, _)| p)
    }

    pub fn is_prime_power(&self) -> bool {
        self.0.len() == 1
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u128 {
        self.0.iter().map(|&(p, a)| u128::from(p).pow(a)).product()
    }
}

/// Trial-division factorizer backed by a precomputed Eratosthenes sieve.
#[derive(Clone, Debug)]
pub struct PrimeSieve {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Self {
        let limit = limit.max(2);
        let mut composite = vec![false; limit as usize + 1];
        let mut primes = Vec::new();
        for i in 2..=limit as usize {
            if composite[i] {
                continue;
            }
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit as usize {
                composite[j] = true;
                j += i;
            }
        }
        PrimeSieve { limit, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization, ArithError> {
        if n == 0 {
            return Err(ArithError::Zero);
        }
        let mut rest = n;
        let mut out = Vec::new();
        let mut take = |p: u64, rest: &mut u64| {
            let mut e = 0;
            while (*rest).is_multiple_of(p) {
                *rest /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
        };
        for &p in &self.primes {
            if p.saturating_mul(p) > rest {
                break;
            }
            take(p, &mut rest);
        }
        // Beyond the sieve: plain odd trial division.
        let mut d = self.limit + 1 + (self.limit % 2);
        while d.saturating_mul(d) <= rest {
            take(d, &mut rest);
            d += 2;
        }
        if rest > 1 {
            out.push((rest, 1));
        }
        Ok(Factorization(out))
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.limit {
            return self.primes.binary_search(&n).is_ok();
        }
        matches!(self.factorize(n), Ok(f) if f.0 == [(n, 1)])
    }
}

fn default_sieve() -> &'static PrimeSieve {
    static SIEVE: OnceLock<PrimeSieve> = OnceLock::new();
    SIEVE.get_or_init(|| PrimeSieve::new(DEFAULT_SIEVE_LIMIT))
}

pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    default_sieve().factorize(n)
}

pub fn is_prime(n: u64) -> bool {
    default_sieve().is_prime(n)
}

/// Euler's totient by the textbook trial-division loop.
///
/// Deliberately does not go through the sieve: it backs the divisor-sum
/// oracle, which must not share code with [`super::psi_cyclic`].
pub fn euler_phi(n: u64) -> Result<u64, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut rest = n;
    let mut phi = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    Ok(phi)
}

/// Least `t ≥ 1` with `a^t ≡ 1 (mod m)`. For `m = 1` every unit has order 1.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64, ArithError> {
    if m == 0 {
        return Err(ArithError::Zero);
    }
    if m == 1 {
        return Ok(1);
    }
    if num_integer::gcd(a % m, m) != 1 {
        return Err(ArithError::NotUnit(a, m));
    }
    let a = u128::from(a % m);
    let m128 = u128::from(m);
    let mut x = a;
    let mut t = 1;
    while x != 1 {
        x = x * a % m128;
        t += 1;
    }
    Ok(t)
}
