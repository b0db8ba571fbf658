//! The quantum propagator `U_N` in the position representation.
//!
//! ```text
//! (U_N)_{kj} = (1/N) Σ_{l=0}^{N-1} exp(2πi/N · (l k − (l − a)² − (l − a) j))
//! ```
//!
//! The exponent is an integer, so it is reduced mod `N` exactly and looked
//! up in a table of `N`-th roots of unity. Every entry depends only on
//! integer data, which makes the matrix bit-identical however the rows are
//! scheduled.

use std::f64::consts::TAU;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::exact::{fract, to_f64};
use crate::spectrum::phase_offset;
use crate::{Approximant, Error, Result};

/// Largest dimension [`build_propagator`] accepts by default.
pub const DEFAULT_MAX_DIMENSION: u64 = 4096;

/// Unitarity tolerance for the dimensions used in verification (`N ≤ 256`).
pub const DEFAULT_UNITARITY_TOLERANCE: f64 = 1e-12;

/// Dense row-major `N × N` matrix of `U_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagator {
    app: Approximant,
    n: usize,
    entries: Vec<Complex64>,
}

impl Propagator {
    pub fn approximant(&self) -> &Approximant {
        &self.app
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry `(k, j)`: row `k`, column `j`.
    pub fn entry(&self, k: usize, j: usize) -> Complex64 {
        self.entries[k * self.n + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Writes `k,j,re,im` rows in row-major order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "k,j,re,im")?;
        for k in 0..self.n {
            for j in 0..self.n {
                let z = self.entry(k, j);
                writeln!(w, "{k},{j},{},{}", z.re, z.im)?;
            }
        }
        Ok(())
    }
}

/// `e^{2πi r/n}` for `r = 0..n`.
fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|r| Complex64::from_polar(1.0, TAU * r as f64 / n as f64))
        .collect()
}

pub fn build_propagator(app: &Approximant) -> Result<Propagator> {
    build_propagator_with_max(app, DEFAULT_MAX_DIMENSION)
}

pub fn build_propagator_with_max(app: &Approximant, max_dim: u64) -> Result<Propagator> {
    if app.n() > max_dim {
        return Err(Error::DimensionTooLarge {
            n: app.n(),
            max: max_dim,
        });
    }
    let n = app.n() as usize;
    let modulus = n as i64;
    let a = (app.a() % app.n()) as i64;
    let roots = roots_of_unity(n);
    let scale = 1.0 / n as f64;

    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    entries.par_chunks_mut(n).enumerate().for_each(|(k, row)| {
        let k = k as i64;
        for (j, slot) in row.iter_mut().enumerate() {
            let j = j as i64;
            let mut sum = Complex64::new(0.0, 0.0);
            for l in 0..modulus {
                let shifted = l - a;
                let e = (l * k - shifted * shifted - shifted * j).rem_euclid(modulus);
                sum += roots[e as usize];
            }
            *slot = sum * scale;
        }
    });

    Ok(Propagator {
        app: *app,
        n,
        entries,
    })
}

fn matmul(n: usize, lhs: &[Complex64], rhs: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    out.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for k in 0..n {
            let a = lhs[i * n + k];
            let rhs_row = &rhs[k * n..(k + 1) * n];
            for (o, b) in row.iter_mut().zip(rhs_row) {
                *o += a * b;
            }
        }
    });
    out
}

fn trace(n: usize, m: &[Complex64]) -> Complex64 {
    (0..n).map(|i| m[i * n + i]).sum()
}

/// `max |(U U† − I)_{ij}|`.
pub fn unitarity_defect(u: &Propagator) -> f64 {
    let n = u.n;
    let e = &u.entries;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..n {
                s += e[i * n + k] * e[j * n + k].conj();
            }
            if i == j {
                s -= 1.0;
            }
            worst = worst.max(s.norm());
        }
    }
    worst
}

/// `Tr(U^n)` by repeated multiplication. `Tr(U^0) = N`.
pub fn trace_power_numeric(u: &Propagator, power: u64) -> Complex64 {
    if power == 0 {
        return Complex64::new(u.n as f64, 0.0);
    }
    *trace_powers_numeric(u, power).last().expect("power ≥ 1")
}

/// `[Tr U, Tr U², ..., Tr U^max_power]`, one multiplication per power.
pub fn trace_powers_numeric(u: &Propagator, max_power: u64) -> Vec<Complex64> {
    let n = u.n;
    let mut out = Vec::with_capacity(max_power as usize);
    if max_power == 0 {
        return out;
    }
    let mut current = u.entries.clone();
    out.push(trace(n, &current));
    for _ in 1..max_power {
        current = matmul(n, &current, &u.entries);
        out.push(trace(n, &current));
    }
    out
}

/// Analytic `Tr(U^n)`:
///
/// ```text
/// M δ_{n mod M, 0} Σ_{η=1}^{D} exp(2πi n/N · (−η² + η a − a²(M−1)(2M−1)/6))
/// ```
///
/// The bracket is exact rational arithmetic; only the final phase in
/// `[0, 1)` turns into a float. Returns exactly zero when `M ∤ n`.
pub fn trace_power_analytic(app: &Approximant, power: u64) -> Complex64 {
    if power == 0 {
        return Complex64::new(app.n() as f64, 0.0);
    }
    if !power.is_multiple_of(app.m()) {
        return Complex64::new(0.0, 0.0);
    }
    let n_big = BigInt::from(app.n());
    let a = BigInt::from(app.a());
    let power = BigInt::from(power);
    let offset = phase_offset(app);
    let mut sum = Complex64::new(0.0, 0.0);
    for eta in 1..=app.d() {
        let eta = BigInt::from(eta);
        let bracket = BigRational::from_integer(&eta * &a - &eta * &eta) - &offset;
        let turns = fract(&(bracket * BigRational::new(power.clone(), n_big.clone())));
        sum += Complex64::from_polar(1.0, TAU * to_f64(&turns));
    }
    sum * app.m() as f64
}
