//! Independent oracles: element-order sums computed from first principles,
//! without the library's table builders.

#![allow(dead_code)]

use num_integer::Integer;

/// `Σ_{x ∈ Z_n} n / gcd(x, n)`.
pub fn psi_cyclic(n: u64) -> u128 {
    (0..n).map(|x| u128::from(n / x.gcd(&n))).sum()
}

/// ψ of `C_{d₁} × … × C_{d_r}`: the order of a tuple is the lcm of the
/// component orders.
pub fn psi_abelian(ds: &[u64]) -> u128 {
    let total: u64 = ds.iter().product();
    let mut sum = 0u128;
    for mut idx in 0..total {
        let mut order = 1u64;
        for &d in ds {
            let x = idx % d;
            idx /= d;
            order = order.lcm(&(d / x.gcd(&d)));
        }
        sum += u128::from(order);
    }
    sum
}

fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    for _ in 0..exp {
        acc = acc * base % m;
    }
    acc
}

/// ψ of `C_m ⋊ C_k` with `y x y⁻¹ = x^a`: elements `x^i y^j`, and
/// `(i₁, j₁)(i₂, j₂) = (i₁ + a^{j₁} i₂, j₁ + j₂)`.
pub fn psi_semidirect(m: u64, k: u64, a: u64) -> u128 {
    let mul = |(i1, j1): (u64, u64), (i2, j2): (u64, u64)| ((i1 + pow_mod(a, j1, m) * i2) % m, (j1 + j2) % k);
    let mut sum = 0u128;
    for i in 0..m {
        for j in 0..k {
            let g = (i, j);
            let mut x = g;
            let mut order = 1u64;
            while x != (0, 0) {
                x = mul(x, g);
                order += 1;
            }
            sum += u128::from(order);
        }
    }
    sum
}

/// ψ of `M_{q^r} = ⟨a, b | a^{q^{r−1}} = b^q = 1, b a b⁻¹ = a^{1+q^{r−2}}⟩`.
pub fn psi_modular(q: u64, r: u32) -> u128 {
    psi_semidirect(q.pow(r - 1), q, 1 + q.pow(r - 2))
}

/// The quaternion units `±1, ±i, ±j, ±k` as integer 4-vectors under the
/// Hamilton product; returns their order multiset sum.
pub fn psi_quaternion_units() -> u128 {
    type Q = [i64; 4];
    fn mul(p: Q, q: Q) -> Q {
        [
            p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
        ]
    }
    let one = [1, 0, 0, 0];
    let mut units = Vec::new();
    for axis in 0..4 {
        for sign in [1, -1] {
            let mut u = [0; 4];
            u[axis] = sign;
            units.push(u);
        }
    }
    units
        .into_iter()
        .map(|u| {
            let (mut x, mut order) = (u, 1u128);
            while x != one {
                x = mul(x, u);
                order += 1;
            }
            order
        })
        .sum()
}

/// ψ straight from a Cayley table (identity at index 0).
pub fn psi_of_table(rows: &[Vec<u32>]) -> u128 {
    (0..rows.len())
        .map(|g| {
            let (mut x, mut order) = (g, 1u128);
            while x != 0 {
                x = rows[x][g] as usize;
                order += 1;
            }
            order
        })
        .sum()
}

/// `((q²−1)q+1)(q+1) / (q⁵+1)` as a reduced pair.
pub fn f_pair(q: u64) -> (u128, u128) {
    let q = u128::from(q);
    let num = ((q * q - 1) * q + 1) * (q + 1);
    let den = q.pow(5) + 1;
    let g = num.gcd(&den);
    (num / g, den / g)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn least_prime(n: u64) -> u64 {
    (2..=n).find(|d| n.is_multiple_of(*d)).expect("n > 1")
}
