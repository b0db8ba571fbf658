//! Command-line front end.
//!
//! Every command renders its whole output into a string first, so the
//! same arguments always produce byte-identical files.

pub mod figure;
pub mod grid;
pub mod verify;

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::classical::{orbit, weyl_sum, write_orbit_csv, TorusPoint};
use crate::diophantine::{approximants_with_gcd, nearest_approximant};
use crate::exact::{format_rational, to_f64};
use crate::propagator::build_propagator_with_max;
use crate::spectrum::eigenphases;
use crate::statistics::{divergence_witness, spacings, NumberVarianceCurve, SpacingSource};
use crate::{Approximant, Error, IrrationalAlpha};

use grid::{GridError, LGrid};

const AFTER_HELP: &str = "\
CSV columns:
  approx    a,N,D
  spectrum  eta,l,numerator,denominator,decimal
  spacing   s_numerator,s_denominator,weight   (weight as exact p/q)
  numvar    L,value,method,D,truncation_bound  (bound empty for exact methods)
  figure1   L,D1_closed-form,...,D8_fourier(K),D9_fourier(K),D8_bound,D9_bound
            followed by '# spot-check' comment lines
  matrix    k,j,re,im
  orbit     t,p,q

Exit codes: 0 ok, 1 failure (verify names the failing check),
2 continued-fraction precision exhausted, 3 no closed form for this D,
4 invalid L grid.";

#[derive(Debug, Parser)]
#[command(name = "skew-torus", version, about = "Spectral statistics of quantized skew translations on the torus", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Fourier,
    Closed,
}

/// Which approximant to use: `--a A --N N`, `--N N` (nearest to α),
/// or `--D D` (first member of the gcd-D family of α).
#[derive(Debug, Clone, Args)]
pub struct Selection {
    /// "golden", "sqrt2" or "cf:a0,a1,...".
    #[arg(long, default_value = "golden")]
    pub alpha: String,

    #[arg(long = "N")]
    pub n: Option<u64>,

    /// Explicit a_N; requires --N.
    #[arg(long = "a")]
    pub a: Option<u64>,

    #[arg(long = "D")]
    pub d: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rational approximants a_N/N of alpha.
    Approx {
        #[command(flatten)]
        sel: Selection,
        /// Family size with --D.
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Exact eigenphases.
    Spectrum {
        #[command(flatten)]
        sel: Selection,
    },
    /// Exact circular level-spacing distribution.
    Spacing {
        #[command(flatten)]
        sel: Selection,
    },
    /// Number variance curve.
    Numvar {
        #[command(flatten)]
        sel: Selection,
        /// "L" or "min:max:steps".
        #[arg(long = "L", default_value = "0:3:301")]
        l: String,
        #[arg(long = "K", default_value_t = 10_000)]
        k: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
        /// Add the Poisson reference line Σ²(L) = L.
        #[arg(long)]
        poisson: bool,
    },
    /// Number variance for D = 1, 2, 3, 6, 8, 9.
    Figure1 {
        #[arg(long, default_value = "golden")]
        alpha: String,
        #[arg(long = "L", default_value = "0:9:901")]
        l: String,
        #[arg(long = "K", default_value_t = 10_000)]
        k: u64,
    },
    /// Run every cross-method check for one approximant.
    Verify {
        #[command(flatten)]
        sel: Selection,
        #[arg(long = "max-N", default_value_t = 256)]
        max_n: u64,
    },
    /// Two approximant families with different limiting statistics.
    Witness {
        #[arg(long, default_value = "golden")]
        alpha: String,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Dump the propagator matrix.
    Matrix {
        #[command(flatten)]
        sel: Selection,
        #[arg(long = "max-N", default_value_t = 256)]
        max_n: u64,
    },
    /// Classical orbit of the skew translation.
    Orbit {
        /// Preset, "cf:..." or a decimal number.
        #[arg(long, default_value = "golden")]
        alpha: String,
        #[arg(long, default_value_t = 0.0)]
        p0: f64,
        #[arg(long, default_value_t = 0.0)]
        q0: f64,
        #[arg(long = "T", default_value_t = 1000)]
        t: usize,
    },
    /// Birkhoff average of exp(2πi(m p + n q)) along an orbit.
    Weyl {
        #[arg(long, default_value = "golden")]
        alpha: String,
        #[arg(long, default_value_t = 0.0)]
        p0: f64,
        #[arg(long, default_value_t = 0.0)]
        q0: f64,
        /// "m,n", not both zero.
        #[arg(long, default_value = "1,0")]
        mode: String,
        #[arg(long = "T", default_value_t = 100_000)]
        t: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::PrecisionExhausted(_)) => 2,
            CliError::Core(Error::UnsupportedD(_)) => 3,
            CliError::Grid(_) => 4,
            _ => 1,
        }
    }
}

/// Rendered output plus an optional failure to report after writing it.
#[derive(Debug)]
pub struct Rendered {
    pub text: String,
    pub failure: Option<String>,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Self {
            text,
            failure: None,
        }
    }
}

fn resolve(sel: &Selection) -> Result<Approximant, CliError> {
    let alpha: IrrationalAlpha = sel.alpha.parse()?;
    match (sel.a, sel.n, sel.d) {
        (Some(a), Some(n), None) => Ok(Approximant::new(a, n)?),
        (None, Some(n), None) => Ok(nearest_approximant(&alpha, n)?),
        (None, None, Some(d)) => Ok(approximants_with_gcd(&alpha, d, 1)?[0]),
        (Some(_), None, _) => Err(Error::InvalidArgument("--a requires --N".into()).into()),
        _ => Err(Error::InvalidArgument("select exactly one of --N or --D".into()).into()),
    }
}

fn float_alpha(s: &str) -> Result<f64, CliError> {
    if let Ok(alpha) = s.parse::<IrrationalAlpha>() {
        return Ok(alpha.to_f64());
    }
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(
            Error::InvalidAlpha(format!("{s:?} is neither a preset nor a positive number")).into(),
        ),
    }
}

fn json_text(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

fn approx_json(apps: &[Approximant]) -> serde_json::Value {
    json!(apps
        .iter()
        .map(|a| json!({"a": a.a(), "N": a.n(), "D": a.d(), "M": a.m()}))
        .collect::<Vec<_>>())
}

pub fn render(cli: &Cli) -> Result<Rendered, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Approx { sel, count } => {
            let alpha: IrrationalAlpha = sel.alpha.parse()?;
            let apps = match (sel.a, sel.n, sel.d) {
                (None, Some(n), None) => vec![nearest_approximant(&alpha, n)?],
                (None, None, Some(d)) => approximants_with_gcd(&alpha, d, *count)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "approx takes exactly one of --N or --D".into(),
                    )
                    .into())
                }
            };
            Ok(Rendered::ok(match format {
                Format::Csv => {
                    let mut s = String::from("a,N,D\n");
                    for a in &apps {
                        let _ = writeln!(s, "{},{},{}", a.a(), a.n(), a.d());
                    }
                    s
                }
                Format::Json => json_text(approx_json(&apps)),
            }))
        }

        Command::Spectrum { sel } => {
            let spec = eigenphases(&resolve(sel)?);
            Ok(Rendered::ok(match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    spec.write_csv(&mut buf)?;
                    String::from_utf8(buf).expect("utf8")
                }
                Format::Json => {
                    let app = spec.approximant();
                    let phases: Vec<_> = spec
                        .phases()
                        .iter()
                        .map(|p| json!({"eta": p.eta, "l": p.l, "value": format_rational(&p.value), "decimal": to_f64(&p.value)}))
                        .collect();
                    json_text(
                        json!({"a": app.a(), "N": app.n(), "D": app.d(), "M": app.m(), "phases": phases}),
                    )
                }
            }))
        }

        Command::Spacing { sel } => {
            let app = resolve(sel)?;
            let law = spacings(&eigenphases(&app))?;
            Ok(Rendered::ok(match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    law.write_csv(&mut buf)?;
                    String::from_utf8(buf).expect("utf8")
                }
                Format::Json => {
                    let atoms: Vec<_> = law
                        .atoms()
                        .iter()
                        .map(|a| json!({"s": format_rational(&a.spacing), "weight": format_rational(&a.weight)}))
                        .collect();
                    let source = match law.source() {
                        SpacingSource::Empirical => "empirical".to_string(),
                        SpacingSource::ClosedForm { d } => format!("closed-form-D{d}"),
                    };
                    json_text(
                        json!({"a": app.a(), "N": app.n(), "D": app.d(), "source": source, "law": law.to_string(), "atoms": atoms}),
                    )
                }
            }))
        }

        Command::Numvar {
            sel,
            l,
            k,
            method,
            poisson,
        } => {
            let grid: LGrid = l.parse()?;
            let windows = grid.points();
            let curve = match method {
                MethodArg::Direct => {
                    NumberVarianceCurve::direct(&eigenphases(&resolve(sel)?), windows)?
                }
                MethodArg::Closed | MethodArg::Fourier => {
                    let d = match (sel.d, sel.n) {
                        (Some(d), None) => d,
                        _ => resolve(sel)?.d(),
                    };
                    if *method == MethodArg::Closed {
                        NumberVarianceCurve::closed(d, windows)?
                    } else {
                        NumberVarianceCurve::fourier(d, windows, *k)?
                    }
                }
            };
            Ok(Rendered::ok(match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    curve.write_csv(&mut buf, true)?;
                    if *poisson {
                        for w in windows {
                            let v = to_f64(w);
                            writeln!(buf, "{v},{v},poisson,{},", curve.d)?;
                        }
                    }
                    String::from_utf8(buf).expect("utf8")
                }
                Format::Json => {
                    let samples: Vec<_> = curve
                        .samples
                        .iter()
                        .map(|s| json!({"L": format_rational(&s.window), "value": s.value, "exact": s.exact.as_ref().map(format_rational)}))
                        .collect();
                    let mut v = json!({"method": curve.method.tag(), "D": curve.d, "truncation_bound": curve.truncation_bound, "samples": samples});
                    if *poisson {
                        v["poisson"] = json!(windows.iter().map(to_f64).collect::<Vec<_>>());
                    }
                    json_text(v)
                }
            }))
        }

        Command::Figure1 { alpha, l, k } => {
            let alpha: IrrationalAlpha = alpha.parse()?;
            let grid: LGrid = l.parse()?;
            let fig = figure::figure1(&alpha, grid.points(), *k)?;
            let failure = fig
                .spot_checks
                .iter()
                .find(|s| !s.passed)
                .map(|s| format!("spot-check D={} L={}", s.d, s.window));
            let text = match format {
                Format::Csv => fig.to_csv(),
                Format::Json => json_text(fig.to_json()),
            };
            Ok(Rendered { text, failure })
        }

        Command::Verify { sel, max_n } => {
            let report = verify::verify(&resolve(sel)?, *max_n)?;
            let failure = report.failures().next().map(|c| c.name.clone());
            let text = match format {
                Format::Json => json_text(serde_json::to_value(&report).expect("serializable")),
                Format::Csv => {
                    let mut s = String::from("check,residual,tolerance,passed\n");
                    for c in &report.checks {
                        let _ =
                            writeln!(s, "{},{},{},{}", c.name, c.residual, c.tolerance, c.passed);
                    }
                    s
                }
            };
            Ok(Rendered { text, failure })
        }

        Command::Witness { alpha, count } => {
            let alpha: IrrationalAlpha = alpha.parse()?;
            let w = divergence_witness(&alpha, *count)?;
            let text = match format {
                Format::Csv => format!("{w}\n"),
                Format::Json => {
                    let families: Vec<_> = w
                        .families
                        .iter()
                        .map(|f| {
                            json!({
                                "D": f.d,
                                "law": f.law.as_ref().map(|l| l.to_string()),
                                "closed_number_variance_at_1": format_rational(&f.closed_number_variance_at_one),
                                "members": f.members.iter().map(|m| json!({
                                    "a": m.approximant.a(),
                                    "N": m.approximant.n(),
                                    "law": m.spacing.to_string(),
                                    "number_variance_at_1": format_rational(&m.number_variance_at_one),
                                })).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    json_text(json!({
                        "alpha": w.alpha,
                        "families": families,
                        "laws_distinct": w.laws_distinct(),
                        "number_variances_distinct": w.number_variances_distinct(),
                        "no_limit": w.holds(),
                    }))
                }
            };
            Ok(Rendered::ok(text))
        }

        Command::Matrix { sel, max_n } => {
            let u = build_propagator_with_max(&resolve(sel)?, *max_n)?;
            let mut buf = Vec::new();
            u.write_csv(&mut buf)?;
            Ok(Rendered::ok(String::from_utf8(buf).expect("utf8")))
        }

        Command::Orbit { alpha, p0, q0, t } => {
            let pts = orbit(TorusPoint::new(*p0, *q0), float_alpha(alpha)?, *t);
            Ok(Rendered::ok(match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_orbit_csv(&mut buf, &pts)?;
                    String::from_utf8(buf).expect("utf8")
                }
                Format::Json => json_text(json!(pts
                    .iter()
                    .map(|p| [p.p(), p.q()])
                    .collect::<Vec<_>>())),
            }))
        }

        Command::Weyl {
            alpha,
            p0,
            q0,
            mode,
            t,
        } => {
            let parsed: Option<(i64, i64)> = mode
                .split_once(',')
                .and_then(|(m, n)| Some((m.trim().parse().ok()?, n.trim().parse().ok()?)));
            let mode =
                parsed.ok_or_else(|| Error::InvalidArgument(format!("bad mode {mode:?}")))?;
            let z = weyl_sum(TorusPoint::new(*p0, *q0), float_alpha(alpha)?, mode, *t)?;
            Ok(Rendered::ok(match format {
                Format::Csv => format!(
                    "m,n,T,re,im,modulus\n{},{},{t},{},{},{}\n",
                    mode.0,
                    mode.1,
                    z.re,
                    z.im,
                    z.norm()
                ),
                Format::Json => json_text(json!({
                    "mode": [mode.0, mode.1], "T": t, "re": z.re, "im": z.im, "modulus": z.norm(),
                    "note": "diagnostic only; decay thresholds are empirical",
                })),
            }))
        }
    }
}

/// Renders, writes the output and surfaces any failure as an error.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let rendered = render(cli)?;
    match &cli.out {
        Some(path) => std::fs::write(path, &rendered.text)?,
        None => io::stdout().lock().write_all(rendered.text.as_bytes())?,
    }
    match rendered.failure {
        Some(name) => Err(CliError::VerificationFailed(name)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("skew-torus").chain(args.iter().copied())).unwrap()
    }

    fn text(args: &[&str]) -> String {
        render(&cli(args)).unwrap().text
    }

    fn code(args: &[&str]) -> i32 {
        render(&cli(args)).unwrap_err().exit_code()
    }

    #[test]
    fn approx_rows() {
        assert_eq!(
            text(&["approx", "--alpha", "golden", "--N", "5"]),
            "a,N,D\n8,5,1\n"
        );
        assert_eq!(
            text(&["approx", "--alpha", "cf:1,2,2,2", "--N", "10"]),
            "a,N,D\n14,10,2\n"
        );
        assert_eq!(
            text(&["approx", "--alpha", "golden", "--D", "3", "--count", "2"]),
            "a,N,D\n39,24,3\n63,39,3\n"
        );
    }

    #[test]
    fn spacing_rows() {
        assert_eq!(
            text(&["spacing", "--a", "3", "--N", "9"]),
            "s_numerator,s_denominator,weight\n0,1,1/3\n1,1,1/3\n2,1,1/3\n"
        );
    }

    #[test]
    fn numvar_closed_has_zeros_at_integers() {
        let out = text(&["numvar", "--D", "1", "--method", "closed", "--L", "0:3:301"]);
        let rows: Vec<_> = out.lines().skip(1).collect();
        assert_eq!(rows.len(), 301);
        assert_eq!(rows[0], "0,0,closed-form,1,");
        assert_eq!(rows[100], "1,0,closed-form,1,");
        assert_eq!(rows[50], "0.5,0.25,closed-form,1,");
    }

    #[test]
    fn numvar_fourier_single_point() {
        let out = text(&[
            "numvar", "--D", "3", "--method", "fourier", "--K", "10000", "--L", "1",
        ]);
        let row: Vec<_> = out.lines().nth(1).unwrap().split(',').collect();
        let v: f64 = row[1].parse().unwrap();
        let bound: f64 = row[4].parse().unwrap();
        assert_eq!(row[2], "fourier(10000)");
        assert!((v - 2.0 / 3.0).abs() <= bound);
    }

    #[test]
    fn numvar_poisson_overlay() {
        let out = text(&["numvar", "--D", "1", "--L", "0:1:3", "--poisson"]);
        assert!(out.contains("0.5,0.5,poisson,1,"));
    }

    #[test]
    fn numvar_direct_uses_spectrum() {
        let out = text(&[
            "numvar", "--a", "3", "--N", "9", "--method", "direct", "--L", "1/2", "--format",
            "json",
        ]);
        assert!(out.contains("\"exact\": \"7/12\""), "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(code(&["approx", "--alpha", "cf:1,1,1", "--N", "1000"]), 2);
        assert_eq!(
            code(&["numvar", "--D", "5", "--method", "closed", "--L", "1"]),
            3
        );
        assert_eq!(code(&["numvar", "--D", "1", "--L", "2:1:10"]), 4);
        assert_eq!(code(&["spectrum", "--N", "5", "--D", "2"]), 1);
        assert_eq!(code(&["spectrum", "--a", "3"]), 1);
    }

    #[test]
    fn verify_examples_are_green() {
        for (a, n) in [("3", "9"), ("8", "5"), ("1", "3")] {
            let r = render(&cli(&["verify", "--a", a, "--N", n, "--format", "json"])).unwrap();
            assert!(r.failure.is_none(), "({a},{n}): {:?}", r.failure);
            assert!(r.text.contains("\"passed\": true"));
        }
    }

    #[test]
    fn witness_text() {
        let out = text(&["witness", "--alpha", "golden", "--count", "3"]);
        assert!(out.contains("P(s) = δ(s−1)"));
        assert!(out.contains("no limit distribution: true"));
        let out = text(&["witness", "--count", "0"]);
        assert!(out.contains("empty"));
    }

    #[test]
    fn orbit_and_weyl() {
        assert_eq!(
            text(&["orbit", "--alpha", "0.5", "--T", "2"]),
            "t,p,q\n0,0,0\n1,0.5,0\n"
        );
        assert!(text(&["weyl", "--T", "1000"]).starts_with("m,n,T,re,im,modulus\n1,0,1000,"));
        assert_eq!(code(&["weyl", "--mode", "0,0"]), 1);
        assert_eq!(code(&["orbit", "--alpha=-1"]), 1);
    }

    #[test]
    fn matrix_dump() {
        let out = text(&["matrix", "--a", "1", "--N", "2"]);
        assert_eq!(out.lines().count(), 5);
        assert_eq!(code(&["matrix", "--a", "1", "--N", "300"]), 1);
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["figure1", "--L", "0:9:46", "--K", "500"];
        assert_eq!(text(&args), text(&args));
    }
}
