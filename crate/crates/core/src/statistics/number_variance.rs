use std::f64::consts::PI;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::gauss::gauss_sum_norm_sqr;
use crate::exact::{format_rational, fract, integer, ratio, rem_euclid, to_f64};
use crate::spectrum::Spectrum;
use crate::{Error, Result};

/// Fourier truncation order used when none is given.
pub const DEFAULT_FOURIER_ORDER: u64 = 10_000;

/// Number of levels in `[0, φ)` of the `N`-periodic continuation of the
/// spectrum. Negative for `φ < 0`.
pub fn counting_function(spec: &Spectrum, phi: &BigRational) -> BigInt {
    let n = BigInt::from(spec.n());
    let period = BigRational::from_integer(n.clone());
    let wraps = (phi / &period).floor().to_integer();
    let rest = phi - &period * BigRational::from_integer(wraps.clone());
    let phases = spec.phases();
    let below = phases.partition_point(|p| p.value < rest);
    wraps * n + BigInt::from(below)
}

/// `Σ²(L) = (1/N) ∫_0^N (𝒩(φ+L) − 𝒩(φ) − L)² dφ`, exactly.
///
/// The window count is piecewise constant in `φ`, changing only where `φ`
/// or `φ + L` crosses a level. The sweep sorts those breakpoints, evaluates
/// the count at each segment midpoint and sums `length · (count − L)²`.
pub fn number_variance_direct(spec: &Spectrum, window: &BigRational) -> Result<BigRational> {
    if window.is_negative() {
        return Err(Error::InvalidArgument("window length L must be ≥ 0".into()));
    }
    if spec.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let period = integer(spec.n() as i64);
    let mut cuts: Vec<BigRational> = Vec::with_capacity(2 * spec.len() + 2);
    cuts.push(BigRational::zero());
    for v in spec.values() {
        cuts.push(v.clone());
        cuts.push(rem_euclid(&(v - window), &period));
    }
    cuts.sort();
    cuts.dedup();
    cuts.push(period.clone());

    let two = integer(2);
    let mut total = BigRational::zero();
    for seg in cuts.windows(2) {
        let len = &seg[1] - &seg[0];
        if len.is_zero() {
            continue;
        }
        let mid = (&seg[0] + &seg[1]) / &two;
        let count = counting_function(spec, &(&mid + window)) - counting_function(spec, &mid);
        let excess = BigRational::from_integer(count) - window;
        total += len * &excess * &excess;
    }
    Ok(total / period)
}

fn check_closed(d: u64) -> Result<()> {
    match d {
        1 | 2 | 3 | 6 => Ok(()),
        _ => Err(Error::UnsupportedD(d)),
    }
}

/// Exact closed form for `D ∈ {1, 2, 3, 6}`.
pub fn number_variance_closed_exact(d: u64, window: &BigRational) -> Result<BigRational> {
    check_closed(d)?;
    let rigid = |x: &BigRational| {
        let f = fract(x);
        &f - &f * &f
    };
    Ok(match d {
        1 | 2 => rigid(window),
        _ => {
            let three = integer(3);
            let two = integer(2);
            ratio(-8, 9)
                + integer(5) * rigid(&(window / &three))
                + integer(2) * rigid(&((window - &two) / &three))
                + integer(2) * rigid(&((window + &two) / &three))
        }
    })
}

/// Float closed form for `D ∈ {1, 2, 3, 6}`.
pub fn number_variance_closed(d: u64, window: f64) -> Result<f64> {
    check_closed(d)?;
    let rigid = |x: f64| {
        let f = x - x.floor();
        f - f * f
    };
    Ok(match d {
        1 | 2 => rigid(window),
        _ => {
            -8.0 / 9.0
                + 5.0 * rigid(window / 3.0)
                + 2.0 * rigid((window - 2.0) / 3.0)
                + 2.0 * rigid((window + 2.0) / 3.0)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierValue {
    pub value: f64,
    /// Upper bound on the discarded tail, `2D² / (π² K)`.
    pub truncation_bound: f64,
}

/// Truncated Gauss-sum series
/// `(2/π²) Σ_{k=1}^{K} sin²(kπL/D) |S_D(k)|² / k²`.
///
/// Terms are added from `k = K` down to `1` so the small ones go in first;
/// the order is fixed, so repeated calls agree bit for bit.
pub fn number_variance_fourier(d: u64, window: f64, order: u64) -> Result<FourierValue> {
    if d == 0 {
        return Err(Error::InvalidArgument("D must be positive".into()));
    }
    if order == 0 {
        return Err(Error::InvalidArgument(
            "truncation order K must be ≥ 1".into(),
        ));
    }
    let weights: Vec<f64> = (0..d)
        .map(|k| gauss_sum_norm_sqr(d, k as i64) as f64)
        .collect();
    let step = window / d as f64;
    let mut sum = 0.0;
    for k in (1..=order).rev() {
        let w = weights[(k % d) as usize];
        if w == 0.0 {
            continue;
        }
        let x = k as f64 * step;
        let s = (PI * (x - x.floor())).sin();
        sum += s * s * w / (k as f64 * k as f64);
    }
    let d2 = (d * d) as f64;
    Ok(FourierValue {
        value: 2.0 / (PI * PI) * sum,
        truncation_bound: 2.0 * d2 / (PI * PI * order as f64),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    DirectExact,
    Fourier { order: u64 },
    ClosedForm,
}

impl Method {
    pub fn tag(&self) -> String {
        match self {
            Method::DirectExact => "direct-exact".into(),
            Method::Fourier { order } => format!("fourier({order})"),
            Method::ClosedForm => "closed-form".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub window: BigRational,
    pub value: f64,
    /// Present for the exact methods.
    pub exact: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumberVarianceCurve {
    pub method: Method,
    pub d: u64,
    pub samples: Vec<CurveSample>,
    pub truncation_bound: Option<f64>,
}

impl NumberVarianceCurve {
    pub fn direct(spec: &Spectrum, windows: &[BigRational]) -> Result<Self> {
        let samples = windows
            .iter()
            .map(|l| {
                let v = number_variance_direct(spec, l)?;
                Ok(CurveSample {
                    window: l.clone(),
                    value: to_f64(&v),
                    exact: Some(v),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            method: Method::DirectExact,
            d: spec.approximant().d(),
            samples,
            truncation_bound: None,
        })
    }

    /// Evaluated in exact arithmetic, so `L` and `L + D` give identical floats.
    pub fn closed(d: u64, windows: &[BigRational]) -> Result<Self> {
        let samples = windows
            .iter()
            .map(|l| {
                let v = number_variance_closed_exact(d, l)?;
                Ok(CurveSample {
                    window: l.clone(),
                    value: to_f64(&v),
                    exact: Some(v),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            method: Method::ClosedForm,
            d,
            samples,
            truncation_bound: None,
        })
    }

    pub fn fourier(d: u64, windows: &[BigRational], order: u64) -> Result<Self> {
        let mut bound = None;
        let samples = windows
            .iter()
            .map(|l| {
                let v = number_variance_fourier(d, to_f64(l), order)?;
                bound = Some(v.truncation_bound);
                Ok(CurveSample {
                    window: l.clone(),
                    value: v.value,
                    exact: None,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            method: Method::Fourier { order },
            d,
            samples,
            truncation_bound: bound
                .or_else(|| Some(2.0 * (d * d) as f64 / (PI * PI * order as f64))),
        })
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.value).collect()
    }

    /// `L,value,method,D,truncation_bound`; the bound column is empty for
    /// exact methods.
    pub fn write_csv<W: Write>(&self, mut w: W, header: bool) -> io::Result<()> {
        if header {
            writeln!(w, "L,value,method,D,truncation_bound")?;
        }
        let tag = self.method.tag();
        let bound = self
            .truncation_bound
            .map(|b| b.to_string())
            .unwrap_or_default();
        for s in &self.samples {
            writeln!(
                w,
                "{},{},{},{},{}",
                to_f64(&s.window),
                s.value,
                tag,
                self.d,
                bound
            )?;
        }
        Ok(())
    }

    /// Exact `L` as `p/q` next to each value, for the JSON report.
    pub fn window_labels(&self) -> Vec<String> {
        self.samples
            .iter()
            .map(|s| format_rational(&s.window))
            .collect()
    }
}
