use num_bigint::BigInt;

use super::{euler_phi, factorize, is_prime, ArithError, Rational};

/// `ψ(C_{p^m}) = (p^{2m+1} + 1) / (p + 1)`.
pub fn psi_cyclic_prime_power(p: u64, m: u32) -> Result<u128, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    let p = u128::from(p);
    let top = m
        .checked_mul(2)
        .and_then(|e| e.checked_add(1))
        .and_then(|e| p.checked_pow(e))
        .and_then(|v| v.checked_add(1))
        .ok_or(ArithError::Overflow("p^(2m+1)"))?;
    debug_assert_eq!(top % (p + 1), 0);
    Ok(top / (p + 1))
}

/// `ψ(C_n)` as the product of the prime-power closed forms over the
/// factorization of `n`.
pub fn psi_cyclic(n: u64) -> Result<u128, ArithError> {
    let fact = factorize(n)?;
    fact.factors().iter().try_fold(1u128, |acc, &(p, a)| {
        acc.checked_mul(psi_cyclic_prime_power(p, a)?).ok_or(ArithError::Overflow("psi_cyclic"))
    })
}

/// Brute-force `ψ(C_n) = Σ_{d | n} d·φ(d)`: `C_n` has exactly `φ(d)`
/// elements of order `d` for each divisor `d`.
pub fn psi_cyclic_oracle(n: u64) -> Result<u128, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut total = 0u128;
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            total += u128::from(d) * u128::from(euler_phi(d)?);
            let e = n / d;
            if e != d {
                total += u128::from(e) * u128::from(euler_phi(e)?);
            }
        }
        d += 1;
    }
    Ok(total)
}

/// `f(x) = ((x² − 1)x + 1)(x + 1) / (x⁵ + 1)` at an arbitrary positive integer.
pub fn f_value(x: u64) -> Rational {
    let x = BigInt::from(x);
    let num = ((&x * &x - 1) * &x + 1) * (&x + 1);
    let den = x.pow(5) + 1;
    Rational::new(num, den).expect("x^5 + 1 > 0")
}

/// The second-maximal ratio `f(q)` at a prime `q`.
pub fn f_ratio(q: u64) -> Result<Rational, ArithError> {
    if !is_prime(q) {
        return Err(ArithError::NotPrime(q));
    }
    Ok(f_value(q))
}

/// `q·n² / (p + 1)` with `q`, `p` the least and largest prime divisors of `n`.
pub fn cyclic_lower_bound(n: u64) -> Result<Rational, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let fact = factorize(n)?;
    let (Some(q), Some(p)) = (fact.least_prime(), fact.largest_prime()) else {
        return Err(ArithError::NoPrimeDivisor(n));
    };
    let n = BigInt::from(n);
    Rational::new(BigInt::from(q) * &n * &n, BigInt::from(p) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_examples() {
        assert_eq!(psi_cyclic_prime_power(2, 3), Ok(43));
        assert_eq!(psi_cyclic_prime_power(5, 0), Ok(1));
        assert_eq!(psi_cyclic_prime_power(3, 2), Ok(psi_cyclic_oracle(9).unwrap()));
        assert_eq!(psi_cyclic_prime_power(3, 2), Ok(61));
        assert_eq!(psi_cyclic_prime_power(4, 1), Err(ArithError::NotPrime(4)));
    }

    #[test]
    fn prime_power_overflow_is_reported() {
        assert_eq!(psi_cyclic_prime_power(2, 100), Err(ArithError::Overflow("p^(2m+1)")));
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(psi_cyclic(8), Ok(43));
        assert_eq!(psi_cyclic(1), Ok(1));
        assert_eq!(psi_cyclic(12), Ok(77));
        assert_eq!(psi_cyclic(0), Err(ArithError::Zero));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(psi_cyclic_oracle(6), Ok(21));
        assert_eq!(psi_cyclic_oracle(1), Ok(1));
        assert_eq!(psi_cyclic_oracle(9), Ok(61));
        assert_eq!(psi_cyclic_oracle(12), Ok(77));
        assert_eq!(psi_cyclic_oracle(30), Ok(441));
        assert_eq!(psi_cyclic_oracle(0), Err(ArithError::Zero));
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_ratio(2).unwrap(), Rational::new(7, 11).unwrap());
        assert_eq!(f_ratio(3).unwrap(), Rational::new(25, 61).unwrap());
        assert_eq!(f_ratio(9), Err(ArithError::NotPrime(9)));
        for q in [2u64, 3, 5, 7, 97] {
            assert!(f_ratio(q).unwrap() < Rational::one());
        }
    }

    #[test]
    fn f_matches_reduced_form() {
        // (x³ − x + 1) / (x⁴ − x³ + x² − x + 1)
        for x in 2u64..40 {
            let x_i = x as i64;
            let reduced = Rational::new(x_i.pow(3) - x_i + 1, x_i.pow(4) - x_i.pow(3) + x_i.pow(2) - x_i + 1).unwrap();
            assert_eq!(f_value(x), reduced);
        }
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(cyclic_lower_bound(12).unwrap(), Rational::from(72u32));
        assert_eq!(cyclic_lower_bound(2).unwrap(), Rational::new(8, 3).unwrap());
        assert_eq!(cyclic_lower_bound(30).unwrap(), Rational::from(300u32));
        assert_eq!(cyclic_lower_bound(1), Err(ArithError::NoPrimeDivisor(1)));
        assert_eq!(cyclic_lower_bound(0), Err(ArithError::Zero));
    }
}
