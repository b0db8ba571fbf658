//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::time::{Duration, Instant};

use clap::Parser;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};

use skew_torus::cli::{render, Cli};
use skew_torus::diophantine::{approximants_with_gcd, nearest_approximant};
use skew_torus::propagator::{
    build_propagator, trace_power_analytic, trace_powers_numeric, unitarity_defect,
};
use skew_torus::spectrum::eigenphases;
use skew_torus::statistics::{
    divergence_witness, number_variance_closed, number_variance_closed_exact,
    number_variance_direct, number_variance_fourier, spacings, SpacingDistribution,
};
use skew_torus::{Approximant, IrrationalAlpha, Spectrum};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn app(a: u64, n: u64) -> Approximant {
    Approximant::new(a, n).unwrap()
}

fn spec(a: u64, n: u64) -> Spectrum {
    eigenphases(&app(a, n))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

/// Atom set written out by hand.
fn law(atoms: &[(i64, i64, i64)]) -> Vec<(BigRational, BigRational)> {
    atoms
        .iter()
        .map(|&(s, wn, wd)| (r(s, 1), r(wn, wd)))
        .collect()
}

fn atoms(d: &SpacingDistribution) -> Vec<(BigRational, BigRational)> {
    d.atoms()
        .iter()
        .map(|a| (a.spacing.clone(), a.weight.clone()))
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let golden = IrrationalAlpha::golden();
    let rigid = law(&[(1, 1, 1)]);
    let three = law(&[(0, 1, 3), (1, 1, 3), (2, 1, 3)]);

    let mut checked = Vec::new();
    let mut cases: Vec<(u64, Approximant)> = Vec::new();
    for (d, ns) in [(1u64, [5u64, 8, 13]), (2, [10, 16, 26]), (3, [15, 24, 39])] {
        for n in ns {
            let a = nearest_approximant(&golden, n).map_err(|e| e.to_string())?;
            ensure(a.d() == d, || {
                format!("N={n}: expected D={d}, got {}", a.d())
            })?;
            cases.push((d, a));
        }
        for a in approximants_with_gcd(&golden, d, 3).map_err(|e| e.to_string())? {
            cases.push((d, a));
        }
    }
    for (d, a) in &cases {
        let got = atoms(&spacings(&eigenphases(a)).map_err(|e| e.to_string())?);
        let want = if *d == 3 { &three } else { &rigid };
        ensure(&got == want, || {
            format!("({}, {}) law {:?}", a.a(), a.n(), got)
        })?;
        checked.push(format!("{}/{}", a.a(), a.n()));
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "{} approximants exact: {}",
        checked.len(),
        checked.join(" ")
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    for alpha in [IrrationalAlpha::golden(), IrrationalAlpha::sqrt2()] {
        let w = divergence_witness(&alpha, 3).map_err(|e| e.to_string())?;
        ensure(w.holds(), || format!("witness fails for {alpha}:\n{w}"))?;
        let text = w.to_string();
        for verbatim in ["P(s) = δ(s−1)", "P(s) = 1/3·δ(s) + 1/3·δ(s−1) + 1/3·δ(s−2)"]
        {
            ensure(text.contains(verbatim), || {
                format!("report lacks {verbatim:?}:\n{text}")
            })?;
        }
        let ns = |i: usize| {
            w.families[i]
                .members
                .iter()
                .map(|m| m.approximant.n().to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        lines.push(format!("{alpha}: D=1 N={} vs D=3 N={}", ns(0), ns(1)));
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "δ(s−1) vs 1/3·δ(s) + 1/3·δ(s−1) + 1/3·δ(s−2); {}",
        lines.join("; ")
    ))
}

fn fractional(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn criterion_3() -> Outcome {
    let mut windows: Vec<BigRational> = (0..48).map(|i| r(i, 16)).collect();
    windows.push(r(1, 3));
    windows.push(r(5, 7));
    ensure(windows.len() == 50, || "grid size".into())?;

    let rigid = spec(8, 5);
    let triple = spec(24, 15);
    for l in &windows {
        let f = fractional(l);
        let expect = &f - &f * &f;
        let got = number_variance_direct(&rigid, l).map_err(|e| e.to_string())?;
        ensure(got == expect, || format!("D=1 L={l}: {got} vs {expect}"))?;

        let expect = number_variance_closed_exact(3, l).map_err(|e| e.to_string())?;
        let got = number_variance_direct(&triple, l).map_err(|e| e.to_string())?;
        ensure(got == expect, || format!("D=3 L={l}: {got} vs {expect}"))?;
    }
    let half = number_variance_direct(&triple, &r(1, 2)).unwrap();
    let one = number_variance_direct(&triple, &r(1, 1)).unwrap();
    ensure(half == r(7, 12) && one == r(2, 3), || {
        format!("Σ²(1/2)={half}, Σ²(1)={one}")
    })?;

    let f = r(1, 2);
    let plus_variant = &f + &f * &f;
    let definitional = number_variance_direct(&rigid, &r(1, 2)).unwrap();
    ensure(plus_variant != definitional, || {
        "plus variant unexpectedly agrees".into()
    })?;
    Ok(format!(
        "50 windows exact for D=1 and D=3; Σ²_3(1/2)=7/12, Σ²_3(1)=2/3; \
         the '{{L}}+{{L}}²' variant fails the gate: predicts {plus_variant} at D=1, L=1/2 vs definitional {definitional}"
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let order = 100_000;
    let mut worst_ratio = 0.0f64;
    for d in [1u64, 2, 3, 6] {
        for i in 0..100 {
            let l = 2.0 * d as f64 * i as f64 / 99.0;
            let f = number_variance_fourier(d, l, order).map_err(|e| e.to_string())?;
            let closed = number_variance_closed(d, l).map_err(|e| e.to_string())?;
            let err = (f.value - closed).abs();
            ensure(err <= f.truncation_bound, || {
                format!(
                    "D={d} L={l}: |{} − {closed}| = {err} > {}",
                    f.value, f.truncation_bound
                )
            })?;
            worst_ratio = worst_ratio.max(err / f.truncation_bound);
        }
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "K=1e5, 4×100 windows, worst error / bound = {worst_ratio:.3}"
    ))
}

fn trace_test_set() -> Vec<(u64, u64)> {
    let mut set: Vec<(u64, u64)> = (1..=16)
        .flat_map(|n| (1..=n).map(move |a| (a, n)))
        .collect();
    set.extend([
        (39, 24),
        (63, 39),
        (104, 64),
        (40, 64),
        (54, 36),
        (21, 48),
        (30, 50),
        (7, 49),
        (45, 60),
        (13, 64),
        (27, 63),
        (32, 64),
    ]);
    set
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut zeros = 0usize;
    let set = trace_test_set();
    for &(a, n) in &set {
        let ap = app(a, n);
        let u = build_propagator(&ap).map_err(|e| e.to_string())?;
        let tol = 1e-9 * n as f64;
        for (i, t) in trace_powers_numeric(&u, 2 * n).into_iter().enumerate() {
            let power = i as u64 + 1;
            let analytic = trace_power_analytic(&ap, power);
            if !power.is_multiple_of(ap.m()) {
                ensure(analytic == Complex64::new(0.0, 0.0), || {
                    format!("({a},{n}) n={power}: analytic not exactly 0")
                })?;
                ensure(t.norm() < tol, || {
                    format!("({a},{n}) n={power}: |numeric| = {}", t.norm())
                })?;
                zeros += 1;
            }
            let diff = (t - analytic).norm();
            ensure(diff < tol, || format!("({a},{n}) n={power}: diff {diff}"))?;
            worst = worst.max(diff / n as f64);
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "{} (a,N) pairs with N ≤ 64, n = 1..2N; {zeros} exact zeros; worst diff/N = {worst:.2e}",
        set.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut set: Vec<(u64, u64)> = (1..=24)
        .flat_map(|n| (1..=n).map(move |a| (a, n)))
        .collect();
    set.extend([
        (39, 24),
        (63, 39),
        (104, 64),
        (5, 100),
        (80, 100),
        (3, 127),
        (96, 128),
        (207, 128),
        (64, 128),
    ]);
    let mut worst = 0.0f64;
    for &(a, n) in &set {
        let defect = unitarity_defect(&build_propagator(&app(a, n)).map_err(|e| e.to_string())?);
        ensure(defect < 1e-12, || format!("({a},{n}): defect {defect}"))?;
        worst = worst.max(defect);
    }
    Ok(format!(
        "{} matrices up to N=128, worst defect {worst:.2e}",
        set.len()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let cli = Cli::try_parse_from(["skew-torus", "figure1"]).map_err(|e| e.to_string())?;
    let rendered = render(&cli).map_err(|e| e.to_string())?;
    ensure(rendered.failure.is_none(), || {
        format!("{:?}", rendered.failure)
    })?;
    let elapsed = start.elapsed();

    let mut lines = rendered.text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let col = |name: &str| header.iter().position(|h| h.starts_with(name)).unwrap();
    let curve_cols = ["D1_", "D2_", "D3_", "D6_", "D8_fourier", "D9_fourier"];
    ensure(
        curve_cols
            .iter()
            .all(|c| header.iter().any(|h| h.starts_with(c))),
        || format!("header {header:?}"),
    )?;

    let column = |name: &str| -> Vec<&str> { rows.iter().map(|r| r[col(name)]).collect() };
    ensure(column("D1_") == column("D2_"), || {
        "D=2 column differs from D=1".into()
    })?;
    ensure(column("D3_") == column("D6_"), || {
        "D=6 column differs from D=3".into()
    })?;

    let values =
        |name: &str| -> Vec<f64> { column(name).iter().map(|s| s.parse().unwrap()).collect() };
    let windows = values("L");
    // Grid is 0:9:901, so L + D sits D·100 rows further down.
    let step = 100usize;
    for (name, d, bound) in [
        ("D1_", 1usize, None),
        ("D2_", 2, None),
        ("D3_", 3, None),
        ("D6_", 6, None),
        ("D8_fourier", 8, Some("D8_bound")),
        ("D9_fourier", 9, Some("D9_bound")),
    ] {
        let v = values(name);
        let tol = bound.map(|b| values(b)[0]).unwrap_or(0.0);
        for i in 0..v.len().saturating_sub(d * step) {
            let dev = (v[i] - v[i + d * step]).abs();
            ensure(dev <= tol, || {
                format!(
                    "{name} period {d}: L={} deviates by {dev} (tolerance {tol})",
                    windows[i]
                )
            })?;
        }
    }
    let max = |name: &str| values(name).into_iter().fold(f64::MIN, f64::max);
    let (m3, m8) = (max("D3_"), max("D8_fourier"));
    ensure(m8 > m3, || format!("max D=8 {m8} ≤ max D=3 {m3}"))?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("6 curves × {} points; D2≡D1, D6≡D3 bitwise; periods hold; max Σ²_8 = {m8:.4} > max Σ²_3 = {m3:.4}; {elapsed:?}", rows.len()))
}

fn criterion_8() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let spectra = [
        (8, 5),
        (13, 8),
        (16, 10),
        (14, 10),
        (24, 15),
        (39, 24),
        (6, 9),
        (12, 18),
        (21, 35),
        (272, 168),
    ];
    let mut checks = 0;
    for &(a, n) in &spectra {
        let s = spec(a, n);
        let period = r(n as i64, 1);
        for _ in 0..20 {
            let den: i64 = rng.gen_range(1..=60);
            let num: i64 = rng.gen_range(0..=den * n as i64);
            let l = r(num, den);
            let lhs = number_variance_direct(&s, &l).map_err(|e| e.to_string())?;
            let rhs = number_variance_direct(&s, &(&period - &l)).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("({a},{n}) L={l}: {lhs} ≠ {rhs}"))?;
            checks += 1;
        }
    }
    Ok(format!(
        "{checks} random rational windows over 10 spectra, exact"
    ))
}

fn criterion_9() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..=32u64 {
        for a in 1..=n {
            let ap = app(a, n);
            let s = eigenphases(&ap);
            let u = build_propagator(&ap).map_err(|e| e.to_string())?;
            for (i, t) in trace_powers_numeric(&u, n).into_iter().enumerate() {
                let diff = (t - s.power_sum(i as u64 + 1)).norm();
                ensure(diff < 1e-8 * n as f64, || {
                    format!("({a},{n}) n={}: {diff}", i + 1)
                })?;
                worst = worst.max(diff / n as f64);
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} (a,N) pairs with N ≤ 32, n = 1..N; worst diff/N = {worst:.2e}"
    ))
}

fn criterion_10() -> Outcome {
    let golden = IrrationalAlpha::golden();
    let mut summary = Vec::new();
    for d in [1u64, 2, 3, 6, 8, 9] {
        let pair = approximants_with_gcd(&golden, d, 2).map_err(|e| e.to_string())?;
        let (s1, s2) = (eigenphases(&pair[0]), eigenphases(&pair[1]));
        let windows: Vec<BigRational> = (0..=4 * d as i64)
            .map(|i| r(i, 4))
            .chain([r(1, 3), r(5, 7), r(11, 6)])
            .collect();
        for l in &windows {
            let v1 = number_variance_direct(&s1, l).map_err(|e| e.to_string())?;
            let v2 = number_variance_direct(&s2, l).map_err(|e| e.to_string())?;
            ensure(v1 == v2, || format!("D={d} L={l}: {} vs {}", v1, v2))?;
        }
        summary.push(format!("D={d}: {}≡{}", pair[0], pair[1]));
    }
    Ok(summary.join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("spacing laws are exact", criterion_1),
        ("no-limit witness", criterion_2),
        ("number variance closed forms (sign-corrected)", criterion_3),
        ("Fourier series within truncation bound", criterion_4),
        ("trace formula", criterion_5),
        ("unitarity", criterion_6),
        ("figure 1 curves", criterion_7),
        ("Σ²(L) = Σ²(N − L)", criterion_8),
        ("spectrum vs propagator power sums", criterion_9),
        ("number variance depends only on D", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name} [{elapsed:.2?}]: {detail}",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{elapsed:.2?}]: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
