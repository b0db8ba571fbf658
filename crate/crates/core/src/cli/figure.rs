//! Number-variance curves for `D = 1, 2, 3, 6, 8, 9`.
//!
//! `D ∈ {1, 2, 3, 6}` come from the exact closed forms, `D ∈ {8, 9}` from the
//! Gauss-sum series with its truncation bound. The Fourier curves are
//! spot-checked against exact sweeps over real spectra with that `D`.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

use crate::diophantine::approximants_with_gcd;
use crate::exact::{format_rational, ratio, to_f64};
use crate::spectrum::eigenphases;
use crate::statistics::{number_variance_direct, number_variance_fourier, NumberVarianceCurve};
use crate::{IrrationalAlpha, Result};

pub const FIGURE_GCDS: [u64; 6] = [1, 2, 3, 6, 8, 9];
const CLOSED_GCDS: [u64; 4] = [1, 2, 3, 6];

#[derive(Debug, Clone, Serialize)]
pub struct SpotCheck {
    pub d: u64,
    pub a: u64,
    pub n: u64,
    pub window: String,
    pub direct: String,
    pub direct_value: f64,
    pub fourier: f64,
    pub truncation_bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct Figure {
    pub curves: Vec<NumberVarianceCurve>,
    pub spot_checks: Vec<SpotCheck>,
}

impl Figure {
    pub fn curve(&self, d: u64) -> Option<&NumberVarianceCurve> {
        self.curves.iter().find(|c| c.d == d)
    }

    /// Wide CSV: one row per `L`, one value column per `D`, then the
    /// truncation bounds of the Fourier columns. Spot checks follow as
    /// `#` comment lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("L");
        for c in &self.curves {
            let _ = write!(out, ",D{}_{}", c.d, c.method.tag());
        }
        for c in self.curves.iter().filter(|c| c.truncation_bound.is_some()) {
            let _ = write!(out, ",D{}_bound", c.d);
        }
        out.push('\n');
        let rows = self.curves.first().map_or(0, |c| c.samples.len());
        for i in 0..rows {
            let _ = write!(out, "{}", to_f64(&self.curves[0].samples[i].window));
            for c in &self.curves {
                let _ = write!(out, ",{}", c.samples[i].value);
            }
            for c in &self.curves {
                if let Some(b) = c.truncation_bound {
                    let _ = write!(out, ",{b}");
                }
            }
            out.push('\n');
        }
        for s in &self.spot_checks {
            let _ = writeln!(
                out,
                "# spot-check D={} (a={}, N={}) L={} direct-exact={} fourier={} bound={} passed={}",
                s.d, s.a, s.n, s.window, s.direct, s.fourier, s.truncation_bound, s.passed
            );
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let curves: Vec<_> = self
            .curves
            .iter()
            .map(|c| {
                serde_json::json!({
                    "D": c.d,
                    "method": c.method.tag(),
                    "truncation_bound": c.truncation_bound,
                    "L": c.window_labels(),
                    "values": c.values(),
                })
            })
            .collect();
        serde_json::json!({ "curves": curves, "spot_checks": self.spot_checks })
    }
}

fn spot_windows(d: u64) -> Vec<BigRational> {
    vec![
        ratio(1, 2),
        ratio(1, 1),
        ratio(3, 2),
        ratio(d as i64, 2),
        ratio(7, 3),
    ]
}

pub fn figure1(alpha: &IrrationalAlpha, windows: &[BigRational], order: u64) -> Result<Figure> {
    let mut curves = Vec::with_capacity(FIGURE_GCDS.len());
    let mut spot_checks = Vec::new();
    for d in FIGURE_GCDS {
        if CLOSED_GCDS.contains(&d) {
            curves.push(NumberVarianceCurve::closed(d, windows)?);
            continue;
        }
        curves.push(NumberVarianceCurve::fourier(d, windows, order)?);
        let app = approximants_with_gcd(alpha, d, 1)?[0];
        let spec = eigenphases(&app);
        for l in spot_windows(d) {
            let exact = number_variance_direct(&spec, &l)?;
            let f = number_variance_fourier(d, to_f64(&l), order)?;
            let direct_value = to_f64(&exact);
            spot_checks.push(SpotCheck {
                d,
                a: app.a(),
                n: app.n(),
                window: format_rational(&l),
                direct: format_rational(&exact),
                direct_value,
                fourier: f.value,
                truncation_bound: f.truncation_bound,
                passed: (direct_value - f.value).abs() <= f.truncation_bound,
            });
        }
    }
    Ok(Figure {
        curves,
        spot_checks,
    })
}
