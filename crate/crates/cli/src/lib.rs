//! `pcfcheck`: evaluate parabolic cylinder and Kummer functions and verify
//! product identities over parameter grids.

pub mod config;
pub mod literal;
pub mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use pcf_core::hypergeom::{laguerre, phi, psi, SeriesControl};
use pcf_core::identities::{catalog, check_domain, descriptor, verify, ParameterPoint};
use pcf_core::pcf::{erf_via_pcf, pcf_d_traced, PcfEvalPolicy, PcfRoute};
use pcf_core::Error;

use config::{Format, GridConfig};
use literal::{format_complex, format_real, ComplexLit};

/// Error carrying the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    /// Bad input or configuration (exit 2).
    pub fn config(message: String) -> Self {
        Self { code: 2, message }
    }

    /// Evaluation failure in `eval` (exit 3).
    pub fn eval(message: String) -> Self {
        Self { code: 3, message }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

/// Stdout text plus exit code of a successful dispatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug, Parser)]
#[command(
    name = "pcfcheck",
    version,
    about = "Parabolic cylinder function identities, checked numerically"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    D,
    Phi,
    Psi,
    Laguerre,
    Erf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Phi,
    Psi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Nu,
    Mu,
    ZReal,
    ZImag,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function and print its value.
    Eval {
        function: Function,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<ComplexLit>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<ComplexLit>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<ComplexLit>,
        /// Degree of the Laguerre polynomial.
        #[arg(long)]
        n: Option<u32>,
        /// Laguerre parameter.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Evaluation route for D.
        #[arg(long, value_enum, default_value = "phi")]
        route: RouteArg,
    },
    /// Verify the identities of a grid config and write a report.
    Verify {
        config: PathBuf,
        /// Overrides the config's output path; `-` writes to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Include per-identity wall time (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Sweep one parameter of one identity and emit CSV.
    Sweep {
        identity: String,
        #[arg(long, value_enum)]
        axis: Axis,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        step: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "-0.5")]
        nu: ComplexLit,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        mu: ComplexLit,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        z: ComplexLit,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        a: ComplexLit,
        /// Tolerance for the exit code; defaults to the identity's own.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the identity catalog.
    List,
}

fn required(name: &str, v: Option<ComplexLit>) -> Result<Complex64, Failure> {
    v.map(|c| c.0)
        .ok_or_else(|| Failure::config(format!("missing --{name}")))
}

fn eval_error(e: Error) -> Failure {
    Failure::eval(format!("evaluation failed: {e}"))
}

fn cmd_eval(
    function: Function,
    nu: Option<ComplexLit>,
    mu: Option<ComplexLit>,
    z: Option<ComplexLit>,
    n: Option<u32>,
    alpha: Option<f64>,
    route: RouteArg,
) -> Result<Outcome, Failure> {
    let ctl = SeriesControl::default();
    let (value, route_text) = match function {
        Function::D => {
            let policy = PcfEvalPolicy::with_route(match route {
                RouteArg::Phi => PcfRoute::PhiCombination,
                RouteArg::Psi => PcfRoute::PsiForm,
            });
            let (v, taken) = pcf_d_traced(required("nu", nu)?, required("z", z)?, &policy).map_err(eval_error)?;
            let taken = serde_json::to_value(taken).expect("route serializes");
            (v, taken.as_str().unwrap_or_default().to_string())
        }
        Function::Phi => (
            phi(required("nu", nu)?, required("mu", mu)?, required("z", z)?, &ctl).map_err(eval_error)?,
            "kummer".to_string(),
        ),
        Function::Psi => (
            psi(required("nu", nu)?, required("mu", mu)?, required("z", z)?, &ctl).map_err(eval_error)?,
            "two_phi_or_asymptotic".to_string(),
        ),
        Function::Laguerre => {
            let n = n.ok_or_else(|| Failure::config("missing --n".into()))?;
            let alpha = alpha.ok_or_else(|| Failure::config("missing --alpha".into()))?;
            (laguerre(n, alpha, required("z", z)?), "recurrence".to_string())
        }
        Function::Erf => (erf_via_pcf(required("z", z)?).map_err(eval_error)?, "pcf".to_string()),
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Failure::eval(format!("evaluation produced a non-finite value {value}")));
    }
    Ok(Outcome {
        stdout: format!("{}\nroute: {route_text}\n", format_complex(value)),
        stderr: String::new(),
        code: 0,
    })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::write(p, text).map_err(|e| Failure::config(format!("cannot write {}: {e}", p.display())))?;
            Ok(String::new())
        }
        _ => Ok(text.to_string()),
    }
}

fn cmd_verify(config: &Path, output: Option<PathBuf>, timings: bool) -> Result<Outcome, Failure> {
    let cfg = GridConfig::load(config)?;
    let report = report::run_verify(&cfg, timings);
    let text = match cfg.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let stdout = write_output(output.as_deref().or(cfg.output.as_deref()), &text)?;
    let mut stderr = String::new();
    for s in &report.summary {
        let _ = writeln!(
            stderr,
            "{:6} tested {:3} passed {:3} failed {:3} skipped {:3}{}",
            s.id,
            s.tested,
            s.passed,
            s.failed,
            s.skipped,
            if s.report_only { "  (report-only)" } else { "" }
        );
    }
    if report.tested() == 0 {
        stderr.push_str("warning: every point was skipped; 0 tested\n");
    }
    let code = if report.counted_failures() > 0 { 1 } else { 0 };
    Ok(Outcome { stdout, stderr, code })
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    identity: &str,
    axis: Axis,
    from: f64,
    to: f64,
    step: f64,
    base: ParameterPoint,
    tol: Option<f64>,
    output: Option<PathBuf>,
) -> Result<Outcome, Failure> {
    let desc = descriptor(identity).map_err(|e| Failure::config(e.to_string()))?;
    if !(step > 0.0 && step.is_finite() && from.is_finite() && to.is_finite()) {
        return Err(Failure::config("sweep needs finite bounds and a positive step".into()));
    }
    let tol = tol.unwrap_or(desc.default_tol);
    let count = if to < from {
        0
    } else {
        ((to - from) / step + 1e-9).floor() as usize + 1
    };
    let points: Vec<(f64, ParameterPoint)> = (0..count)
        .map(|k| {
            let v = from + k as f64 * step;
            let mut p = base;
            match axis {
                Axis::Nu => p.nu.re = v,
                Axis::Mu => p.mu.re = v,
                Axis::ZReal => p.z.re = v,
                Axis::ZImag => p.z.im = v,
            }
            (v, p)
        })
        .collect();
    use rayon::prelude::*;
    let results: Vec<_> = points
        .par_iter()
        .map(|(v, p)| (*v, p, check_domain(identity, p).and_then(|_| verify(identity, p, tol))))
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["param", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_err", "converged"])
        .expect("in-memory write");
    let mut stderr = String::new();
    let mut failures = 0;
    for (v, p, r) in results {
        match r {
            Ok(r) => {
                let converged = r.diagnostics.error.is_none() && r.diagnostics.quadrature.iter().all(|q| q.converged);
                if !r.pass && !r.report_only {
                    failures += 1;
                }
                let mut row: Vec<String> = [
                    v,
                    r.lhs_value.re,
                    r.lhs_value.im,
                    r.rhs_value.re,
                    r.rhs_value.im,
                    r.rel_err,
                ]
                .map(format_real)
                .to_vec();
                row.push(converged.to_string());
                w.write_record(&row).expect("in-memory write");
            }
            Err(e) => {
                let _ = writeln!(
                    stderr,
                    "skipped {}={} at nu={}: {e}",
                    axis_name(axis),
                    format_real(v),
                    format_complex(p.nu)
                );
            }
        }
    }
    let text = String::from_utf8(w.into_inner().expect("flush")).expect("utf-8");
    let stdout = write_output(output.as_deref(), &text)?;
    Ok(Outcome {
        stdout,
        stderr,
        code: if failures > 0 { 1 } else { 0 },
    })
}

fn axis_name(axis: Axis) -> &'static str {
    match axis {
        Axis::Nu => "nu",
        Axis::Mu => "mu",
        Axis::ZReal => "z-real",
        Axis::ZImag => "z-imag",
    }
}

fn cmd_list() -> Outcome {
    let mut out = String::new();
    for d in catalog() {
        let _ = writeln!(out, "{}  {}", d.id, d.label);
        let _ = writeln!(out, "    domain:    {}", d.domain_text);
        let _ = writeln!(out, "    anchor:    {}", d.anchor);
        let _ = writeln!(
            out,
            "    tolerance: {}{}",
            format_real(d.default_tol),
            if d.report_only { " (report-only)" } else { "" }
        );
        if !d.notes.is_empty() {
            let _ = writeln!(out, "    notes:     {}", d.notes);
        }
    }
    Outcome {
        stdout: out,
        stderr: String::new(),
        code: 0,
    }
}

/// Executes a parsed command line.
pub fn dispatch(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Eval {
            function,
            nu,
            mu,
            z,
            n,
            alpha,
            route,
        } => cmd_eval(function, nu, mu, z, n, alpha, route),
        Command::Verify {
            config,
            output,
            timings,
        } => cmd_verify(&config, output, timings),
        Command::Sweep {
            identity,
            axis,
            from,
            to,
            step,
            nu,
            mu,
            z,
            a,
            tol,
            output,
        } => cmd_sweep(
            &identity,
            axis,
            from,
            to,
            step,
            ParameterPoint::new(nu.0, mu.0, z.0, a.0),
            tol,
            output,
        ),
        Command::List => Ok(cmd_list()),
    }
}

/// Reads `PCF_MAX_THREADS` and sizes the global thread pool.
pub fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("PCF_MAX_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Failure::config(format!("PCF_MAX_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::config(format!("thread pool: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome, Failure> {
        let cli = Cli::try_parse_from(std::iter::once("pcfcheck").chain(args.iter().copied())).unwrap();
        dispatch(cli)
    }

    #[test]
    fn eval_d_zero_order() {
        let out = run(&["eval", "d", "--nu", "0", "--z", "1.3"]).unwrap();
        let first = out.stdout.lines().next().unwrap();
        let v: ComplexLit = first.parse().unwrap();
        assert!((v.0.re - (-0.4225f64).exp()).abs() < 1e-15);
        assert!(out.stdout.contains("route: phi_combination"));
    }

    #[test]
    fn eval_phi_exp() {
        let out = run(&["eval", "phi", "--nu", "1", "--mu", "1", "--z", "1.5"]).unwrap();
        let v: ComplexLit = out.stdout.lines().next().unwrap().parse().unwrap();
        assert!((v.0.re - 4.481689070338065).abs() < 1e-14);
    }

    #[test]
    fn eval_errors_have_codes() {
        assert_eq!(run(&["eval", "d", "--z", "1"]).unwrap_err().code, 2);
        assert_eq!(
            run(&["eval", "psi", "--nu", "1", "--mu", "1", "--z", "1"])
                .unwrap_err()
                .code,
            3
        );
    }

    #[test]
    fn unparsable_literal_is_a_usage_error() {
        let err = Cli::try_parse_from(["pcfcheck", "eval", "d", "--nu", "1+", "--z", "1"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn sweep_rows_and_empty_range() {
        let out = run(&[
            "sweep", "eq24", "--axis", "nu", "--from", "0.2", "--to", "2.2", "--step", "0.5",
        ])
        .unwrap();
        assert_eq!(out.stdout.lines().count(), 6);
        assert_eq!(out.code, 0);
        let empty = run(&[
            "sweep", "eq24", "--axis", "nu", "--from", "1", "--to", "0", "--step", "0.5",
        ])
        .unwrap();
        assert_eq!(empty.stdout, "param,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,converged\n");
    }

    #[test]
    fn list_covers_catalog() {
        let out = cmd_list();
        for d in catalog() {
            assert!(out.stdout.contains(d.id));
        }
    }
}
