//! Rational approximation of the map parameter `α`.
//!
//! `α` is carried as a finite prefix of its (infinite) continued-fraction
//! expansion. A prefix `[a0; a1, ..., an]` pins `α` to the open interval
//! between `p_n/q_n` and `(p_n + p_{n-1})/(q_n + q_{n-1})`, because the
//! unknown tail `x = [a_{n+1}; ...]` of an irrational lies in `(1, ∞)`.
//! All decisions below are made against that interval in exact integer
//! arithmetic; when the interval is too wide to decide, the operation fails
//! with [`Error::PrecisionExhausted`] instead of guessing.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::{Error, Result};

const GOLDEN_TERMS: usize = 64;
const SQRT2_TERMS: usize = 45;

/// An irrational `α > 0` given by a prefix of its continued fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrationalAlpha {
    cf: Vec<u64>,
    name: Option<String>,
}

impl IrrationalAlpha {
    /// `[a0; a1, a2, ...]`. The first coefficient may be zero, the rest
    /// must be positive.
    pub fn from_cf(cf: Vec<u64>) -> Result<Self> {
        if cf.is_empty() {
            return Err(Error::InvalidAlpha("empty coefficient list".into()));
        }
        if cf[1..].contains(&0) {
            return Err(Error::InvalidAlpha(
                "coefficients after the first must be positive".into(),
            ));
        }
        if cf.len() == 1 && cf[0] == 0 {
            // α ∈ (0, 1) is fine, but [0] alone cannot be told apart from α ≤ 0.
            return Err(Error::InvalidAlpha(
                "[0] does not determine a positive α".into(),
            ));
        }
        Ok(Self { cf, name: None })
    }

    /// The golden ratio `(1 + √5) / 2 = [1; 1, 1, ...]`.
    pub fn golden() -> Self {
        Self {
            cf: vec![1; GOLDEN_TERMS],
            name: Some("golden".into()),
        }
    }

    /// `√2 = [1; 2, 2, ...]`.
    pub fn sqrt2() -> Self {
        let mut cf = vec![2; SQRT2_TERMS];
        cf[0] = 1;
        Self {
            cf,
            name: Some("sqrt2".into()),
        }
    }

    pub fn cf(&self) -> &[u64] {
        &self.cf
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    fn convergents_big(&self) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::with_capacity(self.cf.len());
        let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
        let (mut p, mut q) = (BigInt::from(self.cf[0]), BigInt::one());
        out.push((p.clone(), q.clone()));
        for &a in &self.cf[1..] {
            let a = BigInt::from(a);
            let p_next = &a * &p + &p_prev;
            let q_next = &a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            out.push((p.clone(), q.clone()));
        }
        out
    }

    /// Open interval `(lo, hi)` guaranteed to contain `α`.
    pub fn bounds(&self) -> (BigRational, BigRational) {
        let conv = self.convergents_big();
        let (p, q) = conv.last().cloned().expect("non-empty prefix");
        let (p_prev, q_prev) = if conv.len() >= 2 {
            conv[conv.len() - 2].clone()
        } else {
            (BigInt::one(), BigInt::zero())
        };
        let a = BigRational::new(p.clone(), q.clone());
        let b = BigRational::new(p + p_prev, q + q_prev);
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// True when `|α - p/q| < radius` holds for every `α` consistent with
    /// the prefix.
    pub fn certainly_within(&self, p: u64, q: u64, radius: &BigRational) -> bool {
        let (lo, hi) = self.bounds();
        let x = BigRational::new(BigInt::from(p), BigInt::from(q));
        // α lies strictly inside (lo, hi), so the endpoints may touch the radius.
        (&lo - &x).abs() <= *radius && (&hi - &x).abs() <= *radius
    }

    /// Midpoint of [`bounds`](Self::bounds) as a float.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.bounds();
        ((lo + hi) / BigInt::from(2)).to_f64().unwrap_or(f64::NAN)
    }
}

impl FromStr for IrrationalAlpha {
    type Err = Error;

    /// `"golden"`, `"sqrt2"` or `"cf:1,2,2,2"`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "golden" => Ok(Self::golden()),
            "sqrt2" => Ok(Self::sqrt2()),
            other => {
                let list = other.strip_prefix("cf:").ok_or_else(|| {
                    Error::InvalidAlpha(format!(
                        "expected \"golden\", \"sqrt2\" or \"cf:a0,a1,...\", got {other:?}"
                    ))
                })?;
                let cf = list
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::InvalidAlpha(format!("bad coefficient {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::from_cf(cf)
            }
        }
    }
}

impl fmt::Display for IrrationalAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            return f.write_str(name);
        }
        let list: Vec<String> = self.cf.iter().map(u64::to_string).collect();
        write!(f, "cf:{}", list.join(","))
    }
}

/// The pair `(a_N, N)` together with `D = gcd(a_N, N)` and `M = N / D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Approximant {
    a: u64,
    n: u64,
    d: u64,
    m: u64,
}

impl Approximant {
    pub fn new(a: u64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositiveDimension);
        }
        let d = a.gcd(&n);
        Ok(Self { a, n, d, m: n / d })
    }

    /// Numerator `a_N`.
    pub fn a(&self) -> u64 {
        self.a
    }

    /// Hilbert-space dimension `N`.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `gcd(a_N, N)`, the period of the spectrum.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// `N / D`, the number of copies of the reduced spectrum.
    pub fn m(&self) -> u64 {
        self.m
    }
}

impl fmt::Display for Approximant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.n)
    }
}

/// A continued-fraction convergent `p/q` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub p: u64,
    pub q: u64,
}

/// The unique `a_N` with `|α - a_N/N| < 1/(2N)`, i.e. the integer nearest
/// to `Nα`.
pub fn nearest_approximant(alpha: &IrrationalAlpha, n: u64) -> Result<Approximant> {
    if n == 0 {
        return Err(Error::NonPositiveDimension);
    }
    let (lo, hi) = alpha.bounds();
    let n_big = BigInt::from(n);
    let two = BigInt::from(2);

    // Nα ∈ (N·lo, N·hi); round both ends and require that they agree.
    let lo_scaled = &lo * &n_big;
    let hi_scaled = &hi * &n_big;
    let half = BigRational::new(BigInt::one(), two.clone());
    let a = (&lo_scaled + &half).floor().to_integer();
    let a_rat = BigRational::from_integer(a.clone());
    let fits = lo_scaled >= &a_rat - &half && hi_scaled <= &a_rat + &half;
    if !fits {
        return Err(Error::PrecisionExhausted(format!(
            "{} continued-fraction terms of {alpha} cannot resolve the nearest integer to {n}·α",
            alpha.cf.len()
        )));
    }
    let a = a
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("a_N for N = {n} overflows u64")))?;
    Approximant::new(a, n)
}

/// The first `count` convergents `p_k / q_k`.
pub fn convergents(alpha: &IrrationalAlpha, count: usize) -> Result<Vec<Convergent>> {
    if count > alpha.cf.len() {
        return Err(Error::PrecisionExhausted(format!(
            "{count} convergents requested, {alpha} has {} terms",
            alpha.cf.len()
        )));
    }
    alpha
        .convergents_big()
        .into_iter()
        .take(count)
        .map(|(p, q)| match (p.to_u64(), q.to_u64()) {
            (Some(p), Some(q)) => Ok(Convergent { p, q }),
            _ => Err(Error::InvalidArgument(
                "convergent exceeds the u64 range".into(),
            )),
        })
        .collect()
}

/// `count` approximants with `gcd(a_N, N) = d`, sorted by `N`.
///
/// Each one is `(d·p, d·q)` for a convergent `p/q` with `q ≥ 2d`: from
/// `|α - p/q| < 1/q² ≤ 1/(2dq)` the scaled pair satisfies the approximant
/// condition at `N = dq`, and `gcd(dp, dq) = d` since `p/q` is reduced.
/// The condition is re-checked exactly for every returned pair.
pub fn approximants_with_gcd(
    alpha: &IrrationalAlpha,
    d: u64,
    count: usize,
) -> Result<Vec<Approximant>> {
    if d == 0 {
        return Err(Error::InvalidArgument("D must be positive".into()));
    }
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    for c in convergents(alpha, alpha.cf.len())? {
        if c.q < 2 * d {
            continue;
        }
        let (a, n) = match (c.p.checked_mul(d), c.q.checked_mul(d)) {
            (Some(a), Some(n)) => (a, n),
            _ => break,
        };
        let radius = BigRational::new(BigInt::one(), BigInt::from(2) * BigInt::from(n));
        if !alpha.certainly_within(a, n, &radius) {
            // Only the last convergents can be this close to the bracket edge.
            break;
        }
        out.push(Approximant::new(a, n)?);
        if out.len() == count {
            return Ok(out);
        }
    }
    Err(Error::PrecisionExhausted(format!(
        "only {} approximants with gcd {d} available from {alpha}",
        out.len()
    )))
}
