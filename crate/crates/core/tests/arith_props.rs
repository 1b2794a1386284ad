mod common;

use num_integer::Integer;
use proptest::prelude::*;
use psisum::arith::{
    cyclic_lower_bound, euler_phi, f_ratio, f_value, factorize, psi_cyclic, psi_cyclic_oracle, psi_cyclic_prime_power,
    ArithError, Rational,
};

#[test]
fn closed_form_matches_both_oracles_up_to_5000() {
    for n in 1..=5000u64 {
        let closed = psi_cyclic(n).unwrap();
        assert_eq!(closed, psi_cyclic_oracle(n).unwrap(), "n = {n}");
        assert_eq!(closed, common::psi_cyclic(n), "n = {n}");
    }
}

#[test]
fn lower_bound_up_to_5000() {
    for n in 2..=5000u64 {
        let bound = cyclic_lower_bound(n).unwrap();
        assert!(Rational::from(psi_cyclic(n).unwrap()) >= bound, "n = {n}");
    }
    assert!(matches!(cyclic_lower_bound(1), Err(ArithError::NoPrimeDivisor(1))));
}

#[test]
fn f_strictly_decreasing_on_primes() {
    let primes: Vec<u64> = (2..=97).filter(|&q| common::is_prime(q)).collect();
    for (i, &q1) in primes.iter().enumerate() {
        for &q2 in &primes[i + 1..] {
            assert!(f_ratio(q1).unwrap() > f_ratio(q2).unwrap(), "f({q1}) <= f({q2})");
        }
    }
    for x in 2..200u64 {
        assert!(f_value(x) > f_value(x + 1), "x = {x}");
    }
}

#[test]
fn f_matches_reduced_formula() {
    for q in (2..=97).filter(|&q| common::is_prime(q)) {
        let (num, den) = common::f_pair(q);
        assert_eq!(f_ratio(q).unwrap(), Rational::new(num, den).unwrap(), "q = {q}");
    }
    assert_eq!(f_ratio(2).unwrap().to_string(), "7/11");
    assert_eq!(f_ratio(3).unwrap().to_string(), "25/61");
    assert!(f_ratio(4).is_err());
}

#[test]
fn prime_power_examples() {
    assert_eq!(psi_cyclic_prime_power(2, 3).unwrap(), 43);
    assert_eq!(psi_cyclic_prime_power(3, 2).unwrap(), common::psi_cyclic(9));
    assert_eq!(psi_cyclic_prime_power(7, 0).unwrap(), 1);
    assert!(psi_cyclic_prime_power(6, 2).is_err());
}

proptest! {
    #[test]
    fn psi_is_odd(n in 1u64..200_000) {
        prop_assert_eq!(psi_cyclic(n).unwrap() % 2, 1);
    }

    #[test]
    fn psi_multiplicative_on_coprime(a in 1u64..3000, b in 1u64..3000) {
        prop_assume!(a.gcd(&b) == 1);
        prop_assert_eq!(psi_cyclic(a * b).unwrap(), psi_cyclic(a).unwrap() * psi_cyclic(b).unwrap());
    }

    #[test]
    fn prime_power_closed_form(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), m in 0u32..6) {
        let n = p.pow(m);
        prop_assert_eq!(psi_cyclic_prime_power(p, m).unwrap(), common::psi_cyclic(n));
    }

    #[test]
    fn phi_multiplicative(a in 1u64..5000, b in 1u64..5000) {
        prop_assume!(a.gcd(&b) == 1);
        prop_assert_eq!(euler_phi(a * b).unwrap(), euler_phi(a).unwrap() * euler_phi(b).unwrap());
    }

    #[test]
    fn factorization_reconstructs(n in 1u64..10_000_000) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.value(), u128::from(n));
        prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(f.primes().all(common::is_prime));
    }

    #[test]
    fn rational_field_laws(
        (a, b) in (-50i64..50, 1i64..50),
        (c, d) in (-50i64..50, 1i64..50),
        (e, g) in (-50i64..50, 1i64..50),
    ) {
        let x = Rational::new(a, b).unwrap();
        let y = Rational::new(c, d).unwrap();
        let z = Rational::new(e, g).unwrap();
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        let text = x.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), x.clone());
        // Lowest terms: numerator and denominator coprime, denominator positive.
        prop_assert!(x.denom() > &0.into());
        let g = num_integer::Integer::gcd(x.numer(), x.denom());
        prop_assert!(g == 1.into());
    }
}
