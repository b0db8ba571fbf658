//! Exact eigenphases of `U_N`.
//!
//! ```text
//! φ_{η,l} = l D − η² + η a − a² (M−1)(2M−1)/6   (mod N)
//! ```
//!
//! with `η ∈ {1, ..., D}` and `l ∈ {0, ..., M−1}`. Every value is a rational
//! whose denominator divides 6 and is reduced into `[0, N)`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::exact::{fract, rem_euclid, to_f64};
use crate::Approximant;

/// The `η`, `l` independent part `a² (M−1)(2M−1) / 6`.
pub fn phase_offset(app: &Approximant) -> BigRational {
    let a = BigInt::from(app.a());
    let m = BigInt::from(app.m());
    let one = BigInt::from(1);
    let numer = &a * &a * (&m - &one) * (BigInt::from(2) * &m - &one);
    BigRational::new(numer, BigInt::from(6))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenphase {
    pub eta: u64,
    pub l: u64,
    /// In `[0, N)`.
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    app: Approximant,
    phases: Vec<Eigenphase>,
}

impl Spectrum {
    pub fn approximant(&self) -> &Approximant {
        &self.app
    }

    pub fn n(&self) -> u64 {
        self.app.n()
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    /// Sorted ascending, ties kept.
    pub fn phases(&self) -> &[Eigenphase] {
        &self.phases
    }

    pub fn values(&self) -> impl Iterator<Item = &BigRational> {
        self.phases.iter().map(|p| &p.value)
    }

    /// `Σ_j exp(2πi n φ_j / N)`; the phase `n φ_j / N` is reduced mod 1
    /// exactly before the float conversion.
    pub fn power_sum(&self, power: u64) -> Complex64 {
        let scale = BigRational::new(BigInt::from(power), BigInt::from(self.n()));
        self.values()
            .map(|v| Complex64::from_polar(1.0, TAU * to_f64(&fract(&(v * &scale)))))
            .sum()
    }

    /// `eta,l,numerator,denominator,decimal`, in sorted order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "eta,l,numerator,denominator,decimal")?;
        for p in &self.phases {
            writeln!(
                w,
                "{},{},{},{},{}",
                p.eta,
                p.l,
                p.value.numer(),
                p.value.denom(),
                to_f64(&p.value)
            )?;
        }
        Ok(())
    }
}

pub fn eigenphases(app: &Approximant) -> Spectrum {
    let n = BigRational::from_integer(BigInt::from(app.n()));
    let d = BigInt::from(app.d());
    let a = BigInt::from(app.a());
    let offset = phase_offset(app);

    let mut phases = Vec::with_capacity(app.n() as usize);
    for eta in 1..=app.d() {
        let eta_big = BigInt::from(eta);
        let base = &eta_big * &a - &eta_big * &eta_big;
        for l in 0..app.m() {
            let raw = BigRational::from_integer(BigInt::from(l) * &d + &base) - &offset;
            phases.push(Eigenphase {
                eta,
                l,
                value: rem_euclid(&raw, &n),
            });
        }
    }
    phases.sort_by(|x, y| x.value.cmp(&y.value).then((x.eta, x.l).cmp(&(y.eta, y.l))));
    Spectrum { app: *app, phases }
}

/// `{−η² mod D : η = 1..D}`, listed in `η` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSpectrum {
    d: u64,
    residues: Vec<u64>,
}

impl ReducedSpectrum {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn sorted(&self) -> Vec<u64> {
        let mut v = self.residues.clone();
        v.sort_unstable();
        v
    }
}

pub fn reduced_spectrum(d: u64) -> ReducedSpectrum {
    assert!(d >= 1, "D must be positive");
    let residues = (1..=d)
        .map(|eta| {
            let sq = ((eta as u128 * eta as u128) % d as u128) as u64;
            (d - sq) % d
        })
        .collect();
    ReducedSpectrum { d, residues }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyProfile {
    pub counts: BTreeMap<u64, usize>,
    pub max_multiplicity: usize,
}

pub fn degeneracy_profile(rs: &ReducedSpectrum) -> DegeneracyProfile {
    let mut counts = BTreeMap::new();
    for &r in &rs.residues {
        *counts.entry(r).or_insert(0) += 1;
    }
    let max_multiplicity = counts.values().copied().max().unwrap_or(0);
    DegeneracyProfile {
        counts,
        max_multiplicity,
    }
}
