//! The classical skew translation `(p, q) -> (p + α, q + 2p) mod 1`.

use std::f64::consts::TAU;
use std::io::{self, Write};

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    p: f64,
    q: f64,
}

fn wrap(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs.
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl TorusPoint {
    /// Reduces both coordinates mod 1.
    pub fn new(p: f64, q: f64) -> Self {
        Self {
            p: wrap(p),
            q: wrap(q),
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// One application of the map; `q` is shifted by the pre-step `p`.
pub fn step(pt: TorusPoint, alpha: f64) -> TorusPoint {
    TorusPoint::new(pt.p + alpha, pt.q + 2.0 * pt.p)
}

/// The first `len` points of the orbit of `start`.
pub fn orbit(start: TorusPoint, alpha: f64, len: usize) -> Vec<TorusPoint> {
    std::iter::successors(Some(start), |&pt| Some(step(pt, alpha)))
        .take(len)
        .collect()
}

/// Birkhoff average of the character `exp(2πi(m p + n q))` over `T` steps.
///
/// For irrational `α` the map is uniquely ergodic, so this tends to the
/// space average `0` for every mode `(m, n) ≠ (0, 0)`.
pub fn weyl_sum(
    start: TorusPoint,
    alpha: f64,
    mode: (i64, i64),
    steps: usize,
) -> Result<Complex64> {
    if mode == (0, 0) {
        return Err(Error::InvalidArgument(
            "mode (0, 0) is the constant character".into(),
        ));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("need at least one step".into()));
    }
    let (m, n) = (mode.0 as f64, mode.1 as f64);
    let mut pt = start;
    let mut sum = Complex64::new(0.0, 0.0);
    for _ in 0..steps {
        sum += Complex64::from_polar(1.0, TAU * (m * pt.p + n * pt.q));
        pt = step(pt, alpha);
    }
    Ok(sum / steps as f64)
}

/// `t,p,q` rows.
pub fn write_orbit_csv<W: Write>(mut w: W, points: &[TorusPoint]) -> io::Result<()> {
    writeln!(w, "t,p,q")?;
    for (t, pt) in points.iter().enumerate() {
        writeln!(w, "{t},{},{}", pt.p, pt.q)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    const GOLDEN: f64 = 1.618_033_988_749_895;

    #[test]
    fn step_examples() {
        assert_eq!(
            step(TorusPoint::new(0.0, 0.0), 0.5),
            TorusPoint::new(0.5, 0.0)
        );
        assert_eq!(
            step(TorusPoint::new(0.25, 0.1), 0.5),
            TorusPoint::new(0.75, 0.6)
        );
        let s = step(TorusPoint::new(0.75, 0.9), 0.5);
        assert_eq!(s.p(), 0.25);
        assert!((s.q() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn coordinates_stay_in_unit_interval() {
        let pts = orbit(TorusPoint::new(-0.3, 5.7), GOLDEN, 5000);
        assert!(pts
            .iter()
            .all(|x| (0.0..1.0).contains(&x.p()) && (0.0..1.0).contains(&x.q())));
        assert_eq!(TorusPoint::new(-1e-18, 0.0).p(), 0.0);
    }

    #[test]
    fn bijection_on_dyadic_grid() {
        // α = 5/64 and a 64 × 64 grid: every float involved is exact.
        let g = 64usize;
        let alpha = 5.0 / g as f64;
        let mut hit = vec![false; g * g];
        for i in 0..g {
            for j in 0..g {
                let s = step(
                    TorusPoint::new(i as f64 / g as f64, j as f64 / g as f64),
                    alpha,
                );
                let (pi, qj) = (s.p() * g as f64, s.q() * g as f64);
                assert_eq!(pi.fract(), 0.0);
                assert_eq!(qj.fract(), 0.0);
                let idx = pi as usize * g + qj as usize;
                assert!(!hit[idx], "collision at ({i}, {j})");
                hit[idx] = true;
            }
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn weyl_examples() {
        let start = TorusPoint::new(0.1, 0.2);
        assert!(weyl_sum(start, GOLDEN, (1, 0), 100_000).unwrap().norm() < 0.02);
        let stuck = weyl_sum(start, 0.5, (2, 0), 100_000).unwrap();
        assert!((stuck.norm() - 1.0).abs() < 1e-9);
        assert!(weyl_sum(start, GOLDEN, (0, 0), 10).is_err());
        assert!(weyl_sum(start, GOLDEN, (1, 1), 0).is_err());
    }

    #[test]
    fn weyl_sums_decay_on_average() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let starts: Vec<TorusPoint> = (0..24)
            .map(|_| TorusPoint::new(rng.gen(), rng.gen()))
            .collect();
        for alpha in [GOLDEN, std::f64::consts::SQRT_2] {
            for mode in [(1, 0), (0, 1), (1, 1)] {
                let mean = |t: usize| {
                    starts
                        .iter()
                        .map(|&s| weyl_sum(s, alpha, mode, t).unwrap().norm())
                        .sum::<f64>()
                        / starts.len() as f64
                };
                let (a, b, c) = (mean(100), mean(1_000), mean(10_000));
                assert!(a > b && b > c, "alpha={alpha} mode={mode:?}: {a} {b} {c}");
            }
        }
    }

    #[test]
    fn orbit_csv() {
        let mut buf = Vec::new();
        write_orbit_csv(&mut buf, &orbit(TorusPoint::new(0.0, 0.0), 0.5, 2)).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "t,p,q\n0,0,0\n1,0.5,0\n");
    }
}
