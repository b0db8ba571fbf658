//! Cross-method checks for a single approximant.

use serde::Serialize;

use crate::exact::{integer, ratio, to_f64};
use crate::propagator::{
    build_propagator_with_max, trace_power_analytic, trace_powers_numeric, unitarity_defect,
    DEFAULT_UNITARITY_TOLERANCE,
};
use crate::spectrum::eigenphases;
use crate::statistics::{
    number_variance_closed_exact, number_variance_direct, number_variance_fourier,
    spacing_distribution_closed, spacings, DEFAULT_FOURIER_ORDER,
};
use crate::{Approximant, Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, residual: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            passed: residual <= tolerance,
            detail,
        }
    }

    /// For exact comparisons: residual 0 or 1, tolerance 0.
    fn exact(name: &str, ok: bool, detail: String) -> Self {
        Self::new(name, if ok { 0.0 } else { 1.0 }, 0.0, detail)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub a: u64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn verify(app: &Approximant, max_dim: u64) -> Result<VerifyReport> {
    let n = app.n();
    let nf = n as f64;
    let u = build_propagator_with_max(app, max_dim)?;
    let spec = eigenphases(app);
    let mut checks = Vec::new();

    let unit_tol = if n <= 256 {
        DEFAULT_UNITARITY_TOLERANCE
    } else {
        DEFAULT_UNITARITY_TOLERANCE * nf / 256.0
    };
    checks.push(Check::new(
        "unitarity",
        unitarity_defect(&u),
        unit_tol,
        "max |U U† − I|".into(),
    ));

    let numeric = trace_powers_numeric(&u, 2 * n);
    let mut worst = 0.0f64;
    let mut zeros = 0;
    for (i, t) in numeric.iter().enumerate() {
        let power = i as u64 + 1;
        let analytic = trace_power_analytic(app, power);
        if !power.is_multiple_of(app.m()) {
            zeros += 1;
        }
        worst = worst.max((t - analytic).norm());
    }
    let at_m = trace_power_analytic(app, app.m());
    checks.push(Check::new(
        "trace-analytic-vs-numeric",
        worst,
        1e-9 * nf,
        format!(
            "n = 1..{}; {zeros} analytic zeros (M ∤ n); Tr U^{} = {:.12}{:+.12}i",
            2 * n,
            app.m(),
            at_m.re,
            at_m.im
        ),
    ));

    let mut worst = 0.0f64;
    for (i, t) in numeric.iter().take(n as usize).enumerate() {
        worst = worst.max((t - spec.power_sum(i as u64 + 1)).norm());
    }
    checks.push(Check::new(
        "spectrum-power-sums",
        worst,
        1e-8 * nf,
        format!("Σ_j exp(2πi n φ_j/N) vs Tr U^n, n = 1..{n}"),
    ));

    let empirical = spacings(&spec)?;
    match spacing_distribution_closed(app.d()) {
        Ok(closed) => checks.push(Check::exact(
            "spacing-closed-vs-empirical",
            empirical.same_law(&closed),
            format!("empirical {empirical}; closed {closed}"),
        )),
        Err(Error::UnsupportedD(_)) => {}
        Err(e) => return Err(e),
    }

    let windows: Vec<_> = (0..=4 * app.d() as i64).map(|i| ratio(i, 4)).collect();
    let mut direct = Vec::with_capacity(windows.len());
    for l in &windows {
        direct.push(number_variance_direct(&spec, l)?);
    }

    let closed: Result<Vec<_>> = windows
        .iter()
        .map(|l| number_variance_closed_exact(app.d(), l))
        .collect();
    match closed {
        Ok(closed) => checks.push(Check::exact(
            "numvar-direct-vs-closed",
            closed == direct,
            format!("{} windows L = 0, 1/4, ..., D (exact)", windows.len()),
        )),
        Err(Error::UnsupportedD(_)) => {}
        Err(e) => return Err(e),
    }

    let mut worst_excess = f64::NEG_INFINITY;
    let mut bound = 0.0;
    for (l, d) in windows.iter().zip(&direct) {
        let f = number_variance_fourier(app.d(), to_f64(l), DEFAULT_FOURIER_ORDER)?;
        bound = f.truncation_bound;
        worst_excess = worst_excess.max((f.value - to_f64(d)).abs());
    }
    checks.push(Check::new(
        "numvar-direct-vs-fourier",
        worst_excess,
        bound,
        format!("K = {DEFAULT_FOURIER_ORDER}, tolerance = truncation bound"),
    ));

    let period = integer(n as i64);
    let mut symmetric = true;
    for l in [ratio(1, 3), ratio(1, 2), integer(1), ratio(5, 2)] {
        if l <= period {
            let mirrored = &period - &l;
            symmetric &=
                number_variance_direct(&spec, &l)? == number_variance_direct(&spec, &mirrored)?;
        }
    }
    checks.push(Check::exact(
        "numvar-symmetry",
        symmetric,
        "Σ²(L) = Σ²(N − L) exactly".into(),
    ));

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        a: app.a(),
        n,
        d: app.d(),
        m: app.m(),
        checks,
        passed,
    })
}
