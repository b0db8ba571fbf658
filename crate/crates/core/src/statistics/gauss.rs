//! Quadratic Gauss sums `S_D(k) = Σ_{η=1}^{D} exp(−2πi k η² / D)`.
//!
//! Evaluated through the classical closed form of
//! `G(a; c) = Σ_{n=0}^{c−1} exp(2πi a n² / c)`: after pulling out
//! `g = gcd(a, c)`, for coprime `a, c`
//!
//! - `c` odd: `G = (a/c) ε_c √c` with `ε_c = 1` or `i` for `c ≡ 1, 3 (mod 4)`;
//! - `c ≡ 2 (mod 4)`: `G = 0`;
//! - `c ≡ 0 (mod 4)`: `G = (1 + i) ε_a⁻¹ (c/a) √c`.
//!
//! `S_D(k)` is `conj(G(k; D))`.

use num_complex::Complex64;
use num_integer::Integer;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussSum {
    pub d: u64,
    pub k: i64,
    pub value: Complex64,
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi_symbol(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `(g, c, a')` with `g = gcd(k mod D, D)`, `c = D/g`, `a' = (k mod D)/g`.
fn split(d: u64, k: i64) -> (u64, u64, u64) {
    let a = k.rem_euclid(d as i64) as u64;
    let g = a.gcd(&d);
    (g, d / g, a / g)
}

/// `G(a; c)` for coprime `a, c`.
fn coprime_sum(a: u64, c: u64) -> Complex64 {
    let root = (c as f64).sqrt();
    match c % 4 {
        1 => Complex64::new(jacobi_symbol(a as i64, c) as f64 * root, 0.0),
        3 => Complex64::new(0.0, jacobi_symbol(a as i64, c) as f64 * root),
        2 => Complex64::new(0.0, 0.0),
        _ => {
            // a is odd here because gcd(a, c) = 1 and 4 | c.
            let eps_inv = if a % 4 == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, -1.0)
            };
            let sign = jacobi_symbol(c as i64, a) as f64;
            Complex64::new(1.0, 1.0) * eps_inv * (sign * root)
        }
    }
}

pub fn gauss_sum(d: u64, k: i64) -> GaussSum {
    assert!(d >= 1, "D must be positive");
    let (g, c, a) = split(d, k);
    let value = (coprime_sum(a, c) * g as f64).conj();
    GaussSum { d, k, value }
}

/// `|S_D(k)|²`, an integer: `g²c`, `0` or `2g²c` by the class of `c mod 4`.
pub fn gauss_sum_norm_sqr(d: u64, k: i64) -> u64 {
    assert!(d >= 1, "D must be positive");
    let (g, c, _) = split(d, k);
    match c % 4 {
        1 | 3 => g * g * c,
        2 => 0,
        _ => 2 * g * g * c,
    }
}
