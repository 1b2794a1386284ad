use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{Check, ClaimId, Expect, Relation, Scope, VerificationReport};
use crate::arith::{f_ratio, is_prime, Rational};

fn primes_between(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&x| is_prime(x))
}

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(int(base), exp as usize)
}

fn ratio(numer: BigInt, denom: BigInt) -> Rational {
    Rational::new(numer, denom).expect("positive denominator")
}

fn f(q: u64) -> Rational {
    f_ratio(q).expect("prime argument")
}

/// The standalone numeric inequalities the extremal proofs rest on, checked
/// exactly for primes `q ≤ q_max`, primes `p ≤ p_max` and `1 ≤ s ≤ s_max`.
///
/// * (a) `(q⁴−q³+q−1)p > q⁵+1` for `q ≥ 3`, `p ≥ q+2`, and the tail bound
///   `1/p + 1/p² ≤ (q+3)/(q+2)²`.
/// * (b) `(r^{2s−1}+1)/(r^{2s+1}+1) ≤ 1/(r²−r+1)` for odd primes `r`, and
///   `1/(r²−r+1) ≤ 1/(q²−q+1)` for `r ≥ q`.
/// * (c) `1/(q²−q+1) + (q+3)/(q+2)² < f(q)`, false at `q = 2` (`341 < 336`)
///   and barely true at `q = 3` (`4087 < 4375`).
/// * (d) `1/3 + 6/25 = 43/75 < 7/11`, with `1/p + 1/p² ≤ 6/25` for `p ≥ 5`.
/// * (e) for `n = q^r`, `r ≥ 2`: the index bound `((q²−1)q+1)q > (q⁵+1)/q²`
///   and `(q²+q−1)/(q²(q+1))·n² + 1/(q+1) ≤ f(q)·ψ(C_n)`, which reduces to
///   `q⁴ ≤ n²`.
pub fn proof_inequality_audit(q_max: u64, p_max: u64, s_max: u32) -> VerificationReport {
    let mut checks = Vec::new();
    let a = Scope::Arithmetic;

    for q in primes_between(3, q_max) {
        for p in primes_between(q + 2, p_max) {
            let lhs = (pow(q, 4) - pow(q, 3) + int(q) - 1) * int(p);
            checks.push(
                Check::new("(a) (q^4-q^3+q-1)p > q^5+1", a, lhs, Relation::Gt, pow(q, 5) + 1)
                    .param("q", q)
                    .param("p", p),
            );
            let tail = ratio(int(1), int(p)) + ratio(int(1), pow(p, 2));
            checks.push(
                Check::new("(a) 1/p + 1/p^2 <= (q+3)/(q+2)^2", a, tail, Relation::Le, ratio(int(q + 3), pow(q + 2, 2)))
                    .param("q", q)
                    .param("p", p),
            );
        }
    }

    for r in primes_between(3, p_max) {
        let bound = ratio(int(1), pow(r, 2) - int(r) + 1);
        for s in 1..=s_max {
            let lhs = ratio(pow(r, 2 * s - 1) + 1, pow(r, 2 * s + 1) + 1);
            checks.push(
                Check::new("(b) (r^(2s-1)+1)/(r^(2s+1)+1) <= 1/(r^2-r+1)", a, lhs, Relation::Le, bound.clone())
                    .param("r", r)
                    .param("s", s),
            );
        }
    }
    for q in primes_between(3, q_max) {
        let bound = ratio(int(1), pow(q, 2) - int(q) + 1);
        for r in primes_between(q, p_max) {
            let lhs = ratio(int(1), pow(r, 2) - int(r) + 1);
            checks.push(
                Check::new("(b) 1/(r^2-r+1) <= 1/(q^2-q+1)", a, lhs, Relation::Le, bound.clone())
                    .param("q", q)
                    .param("r", r),
            );
        }
    }

    for q in primes_between(2, q_max) {
        let lhs = ratio(int(1), pow(q, 2) - int(q) + 1) + ratio(int(q + 3), pow(q + 2, 2));
        let rhs = f(q);
        let (l, r) = lhs.cross_multiplied(&rhs);
        let expect = if q == 2 { Expect::Fails } else { Expect::Holds };
        checks.push(
            Check::new("(c) 1/(q^2-q+1) + (q+3)/(q+2)^2 < f(q)", a, lhs, Relation::Lt, rhs)
                .param("q", q)
                .param("cross", format!("{l}<{r}"))
                .expecting(expect),
        );
        if q >= 3 {
            let qr = Rational::from(q);
            let step = &qr + &Rational::one() + ratio(int(q + 3) * (pow(q, 3) + 1), pow(q, 2) + int(4 * q) + 4);
            let middle = &qr * &qr + Rational::from(2u64);
            let top = ratio((pow(q, 3) - int(q) + 1) * (pow(q, 4) + pow(q, 3)), pow(q, 5) + 1);
            checks.push(
                Check::new("(c) q+1 + (q+3)(q^3+1)/(q+2)^2 < q^2+2", a, step, Relation::Lt, middle.clone())
                    .param("q", q),
            );
            checks
                .push(Check::new("(c) q^2+2 < (q^3-q+1)(q^4+q^3)/(q^5+1)", a, middle, Relation::Lt, top).param("q", q));
        }
    }

    let third = ratio(int(1), int(3));
    let six_25 = ratio(int(6), int(25));
    let sum = &third + &six_25;
    checks.push(Check::new("(d) 1/3 + 6/25 = 43/75", a, sum.clone(), Relation::Eq, ratio(int(43), int(75))));
    checks.push(Check::new("(d) 43/75 < 7/11", a, sum, Relation::Lt, f(2)));
    for p in primes_between(5, p_max) {
        let tail = ratio(int(1), int(p)) + ratio(int(1), pow(p, 2));
        checks.push(Check::new("(d) 1/p + 1/p^2 <= 6/25", a, tail, Relation::Le, six_25.clone()).param("p", p));
    }

    for q in primes_between(2, q_max) {
        checks.push(
            Check::new(
                "(e) ((q^2-1)q+1)q > (q^5+1)/q^2",
                a,
                (pow(q, 3) - int(q) + 1) * int(q),
                Relation::Gt,
                ratio(pow(q, 5) + 1, pow(q, 2)),
            )
            .param("q", q),
        );
        let coeff = ratio(pow(q, 2) + int(q) - 1, pow(q, 2) * int(q + 1));
        let tail = ratio(int(1), int(q + 1));
        for r in 2..=s_max.max(2) {
            let n2 = Rational::from(pow(q, 2 * r));
            let lhs = &coeff * &n2 + tail.clone();
            let psi_cn = ratio(int(q) * pow(q, 2 * r) + 1, int(q + 1));
            checks.push(
                Check::new(
                    "(e) (q^2+q-1)/(q^2(q+1)) n^2 + 1/(q+1) <= f(q) psi(C_n)",
                    a,
                    lhs,
                    Relation::Le,
                    f(q) * psi_cn,
                )
                .param("q", q)
                .param("r", r),
            );
            checks.push(
                Check::new("(e) q^4 <= n^2", a, pow(q, 4), Relation::Le, pow(q, 2 * r)).param("q", q).param("r", r),
            );
        }
    }

    let params = BTreeMap::from([
        ("p_max".to_string(), p_max.to_string()),
        ("q_max".to_string(), q_max.to_string()),
        ("s_max".to_string(), s_max.to_string()),
    ]);
    VerificationReport::new(ClaimId::Prop6Audit, params, checks)
}
