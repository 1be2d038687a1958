use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use largebohr::bohr;
use largebohr::modular::{self, CoveringParameter, EXACT_MAX_ORDER};
use largebohr::sweeps::{self, Suite, SweepConfig, IMPOSSIBLE_SLACK};
use largebohr::Complex;
use serde_json::{json, Value};

mod report;

use report::Report;

const MAX_COEFF_ORDER: usize = 4096;

#[derive(Parser, Debug)]
#[command(version, about = "Bohr-type inequalities for functions omitting two values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients A_0..A_N of -J(-z) = 16 z sum A_n z^n, and J's signed coefficients
    Coeffs {
        #[arg(long)]
        order: usize,
        /// Use the integer expansion (N <= 20)
        #[arg(long)]
        exact: bool,
    },
    /// Evaluate J or the covering map Q at a point of the unit disk
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true)]
        im: f64,
        #[arg(long = "fn", value_enum, default_value_t = Func::J)]
        func: Func,
        /// Covering parameter for `--fn q`
        #[arg(long, default_value_t = std::f64::consts::PI)]
        alpha: f64,
    },
    /// Solve -J(-r) = 1 by bisection on [0.01, 0.1]
    BohrRadius {
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(100..=20_000))]
        order: u64,
    },
    /// Run one verification sweep
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Run every sweep at default size
    Report {
        #[arg(long, required = true)]
        all: bool,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Also write a check,lhs,rhs,slack,pass table
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Run this suite with an unattainable tolerance
        #[arg(long, value_parser = parse_suite)]
        force_fail: Option<Suite>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Func {
    J,
    Q,
}

#[derive(clap::Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Defaults per suite (100 for theorem4, 1e5 pairs for univalence, ...)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
    trials: Option<u64>,
    /// Series order (default 64; 40 for littlewood)
    #[arg(long, value_parser = clap::value_parser!(u64).range(8..=256))]
    order: Option<u64>,
    /// Replace every check's slack
    #[arg(long, allow_hyphen_values = true)]
    slack: Option<f64>,
    /// Range of the covering parameter for generated functions (default 1.5..6.5)
    #[arg(long)]
    alpha_min: Option<f64>,
    #[arg(long)]
    alpha_max: Option<f64>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

struct UsageError(String);

impl SweepArgs {
    fn config(&self) -> Result<SweepConfig, UsageError> {
        let mut cfg = SweepConfig::with_seed(self.seed);
        cfg.trials = self.trials.map(|t| t as usize);
        cfg.order = self.order.map(|o| o as usize);
        if let Some(s) = self.slack {
            if !s.is_finite() {
                return Err(UsageError(format!("--slack must be finite, got {s}")));
            }
            cfg.slack = Some(s);
        }
        cfg.alpha_min = self.alpha_min.unwrap_or(cfg.alpha_min);
        cfg.alpha_max = self.alpha_max.unwrap_or(cfg.alpha_max);
        if !(cfg.alpha_min > 0.0 && cfg.alpha_min <= cfg.alpha_max && cfg.alpha_max.is_finite()) {
            return Err(UsageError(format!(
                "need 0 < alpha-min <= alpha-max < inf, got {} and {}",
                cfg.alpha_min, cfg.alpha_max
            )));
        }
        Ok(cfg)
    }

    fn echo(&self, cfg: &SweepConfig) -> Value {
        json!({
            "seed": cfg.seed,
            "trials": cfg.trials,
            "order": cfg.order,
            "slack": cfg.slack,
            "alpha_min": cfg.alpha_min,
            "alpha_max": cfg.alpha_max,
        })
    }
}

fn coeffs(order: usize, exact: bool) -> Result<Report, UsageError> {
    if exact && order > EXACT_MAX_ORDER {
        return Err(UsageError(format!(
            "--exact supports --order up to {EXACT_MAX_ORDER}, got {order}"
        )));
    }
    if order > MAX_COEFF_ORDER {
        return Err(UsageError(format!("--order above {MAX_COEFF_ORDER}")));
    }
    let inputs = json!({ "order": order, "exact": exact });
    let results = if exact {
        let j = modular::j_series_exact(order + 1).map_err(|e| UsageError(e.to_string()))?;
        let a = modular::a_coeffs(order).map_err(|e| UsageError(e.to_string()))?;
        json!({ "A": a.exact(), "j": j.coeffs() })
    } else {
        let a = modular::a_coeffs(order).map_err(|e| UsageError(e.to_string()))?;
        let j: Vec<f64> = modular::j_series(order + 1).coeffs().iter().map(|c| c.re).collect();
        json!({ "A": a.float(), "j": j })
    };
    Ok(Report::new("coeffs", inputs, results, Value::Null, None))
}

fn eval(re: f64, im: f64, func: Func, alpha: f64) -> Result<Report, UsageError> {
    let z = Complex::new(re, im);
    let (name, value) = match func {
        Func::J => ("j", modular::j_eval(z)),
        Func::Q => {
            let alpha = CoveringParameter::new(alpha).map_err(|e| UsageError(e.to_string()))?;
            ("q", modular::q_eval(alpha, z))
        }
    };
    let w = value.map_err(|e| UsageError(e.to_string()))?;
    let mut inputs = json!({ "re": re, "im": im, "fn": name });
    if let Func::Q = func {
        inputs["alpha"] = json!(alpha);
    }
    let results = json!({ "re": w.re, "im": w.im, "abs": w.norm() });
    Ok(Report::new("eval", inputs, results, Value::Null, None))
}

fn bohr_radius(order: usize) -> Report {
    let inputs = json!({ "order": order });
    let tolerances = json!({ "radius": 1e-9, "residual": 1e-12 });
    match bohr::bohr_radius_solve(order) {
        Ok(r) => {
            let target = modular::e_minus_pi();
            let results = json!({
                "radius": r.radius,
                "residual": r.residual,
                "iterations": r.iterations,
                "e_minus_pi": target,
                "abs_error": (r.radius - target).abs(),
            });
            Report::new("bohr-radius", inputs, results, tolerances, Some(true))
        }
        Err(e) => Report::new(
            "bohr-radius",
            inputs,
            json!({ "error": e.to_string() }),
            tolerances,
            Some(false),
        ),
    }
}

fn verify(suite: Suite, args: &SweepArgs) -> Result<Report, UsageError> {
    let cfg = args.config()?;
    let rep = sweeps::run(suite, &cfg);
    for row in rep.failing_rows() {
        eprintln!("FAIL {suite} {}#{}: lhs={:e} rhs={:e} slack={:e}", row.check, row.trial, row.lhs, row.rhs, row.slack);
    }
    let mut inputs = args.echo(&cfg);
    inputs["suite"] = json!(suite);
    let tolerances = json!({ "slack": cfg.slack, "base_slack": bohr::BASE_SLACK });
    let pass = rep.pass;
    let results = serde_json::to_value(&rep).expect("reports serialize");
    Ok(Report::new("verify", inputs, results, tolerances, Some(pass)))
}

fn report_all(
    args: &SweepArgs,
    csv: Option<&PathBuf>,
    force_fail: Option<Suite>,
) -> Result<Report, UsageError> {
    let base = args.config()?;
    let suites: Vec<_> = Suite::ALL
        .iter()
        .map(|&suite| {
            let mut cfg = base.clone();
            if force_fail == Some(suite) {
                cfg.slack = Some(IMPOSSIBLE_SLACK);
            }
            eprintln!("running {suite}");
            sweeps::run(suite, &cfg)
        })
        .collect();
    if let Some(path) = csv {
        let file = File::create(path)
            .map_err(|e| UsageError(format!("cannot create {}: {e}", path.display())))?;
        let mut out = BufWriter::new(file);
        report::write_csv(&mut out, &suites)
            .and_then(|_| out.flush())
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    let pass = suites.iter().all(|s| s.pass);
    let overview: Vec<Value> = suites
        .iter()
        .map(|s| json!({ "suite": s.suite, "pass": s.pass, "checks": s.rows.len(), "failures": s.failures.len() }))
        .collect();
    for s in suites.iter().filter(|s| !s.pass) {
        eprintln!("FAIL {}: {} of {} checks", s.suite, s.failures.len(), s.rows.len());
    }
    let mut inputs = args.echo(&base);
    inputs["force_fail"] = json!(force_fail);
    inputs["csv"] = json!(csv.map(|p| p.display().to_string()));
    let results = json!({
        "overview": overview,
        "suites": serde_json::to_value(&suites).expect("reports serialize"),
    });
    let tolerances = json!({ "slack": base.slack, "base_slack": bohr::BASE_SLACK, "forced": IMPOSSIBLE_SLACK });
    Ok(Report::new("report", inputs, results, tolerances, Some(pass)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = match &cli.command {
        Command::Coeffs { order, exact } => coeffs(*order, *exact),
        Command::Eval { re, im, func, alpha } => eval(*re, *im, *func, *alpha),
        Command::BohrRadius { order } => Ok(bohr_radius(*order as usize)),
        Command::Verify { suite, sweep } => verify(*suite, sweep),
        Command::Report { sweep, csv, force_fail, .. } => report_all(sweep, csv.as_ref(), *force_fail),
    };
    match result {
        Ok(rep) => {
            let stdout = io::stdout().lock();
            if let Err(e) = report::write_json(stdout, &rep) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(1);
            }
            if rep.pass == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
