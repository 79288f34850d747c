//! Command-line front end for the `multihead` library.
//!
//! Exit codes: 0 success, 1 validation mismatch, 2 usage error,
//! 3 resource or capacity limit.

pub mod complex;
pub mod emit;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multihead::analysis::{self, Quantity, SweepTemplate};
use multihead::analytic::{self, Family, StateSpec};
use multihead::grid::{self, GridRequest};
use multihead::oracle;
use multihead::roots::nth_roots;
use multihead::validate::{validate, ValidationReport};
use multihead::{Error, PolarAmplitude};
use serde_json::{json, Value};

use emit::{complex as cjson, envelope, num, real, spec_json, to_json};

/// Largest Fock index accepted by `fock`.
pub const FOCK_MAX_M: usize = 1000;

#[derive(Parser, Debug)]
#[command(name = "multihead", version, about = "Multi-headed coherent-state superpositions")]
pub struct Cli {
    /// Worker threads for grid and sweep evaluation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the N-th roots of α.
    Roots {
        #[command(flatten)]
        state: AmplitudeArgs,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Moments, mean photon number, Mandel Q, quadrature variances and parity.
    Stats {
        #[command(flatten)]
        state: StateArgs,
    },
    /// Wigner function on a rectangular grid, β = (x + iy)/√2.
    Wigner {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = -grid::DEFAULT_EXTENT, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = grid::DEFAULT_EXTENT, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long, default_value_t = -grid::DEFAULT_EXTENT, allow_negative_numbers = true)]
        y_min: f64,
        #[arg(long, default_value_t = grid::DEFAULT_EXTENT, allow_negative_numbers = true)]
        y_max: f64,
        #[arg(long, default_value_t = grid::DEFAULT_POINTS)]
        nx: usize,
        #[arg(long, default_value_t = grid::DEFAULT_POINTS)]
        ny: usize,
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
    },
    /// Sweep a quantity over |α| at fixed argument and report threshold crossings.
    Sweep {
        /// Argument θ_p of α in radians.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long)]
        heads: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Coherent)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        quantity: QuantityArg,
        #[arg(long, default_value_t = 0.0)]
        r_min: f64,
        #[arg(long)]
        r_max: f64,
        #[arg(long, default_value_t = analysis::DEFAULT_STEP)]
        step: f64,
        /// Crossing threshold; defaults to 0 for mandel-q and 0.5 for variances.
        #[arg(long, allow_negative_numbers = true)]
        threshold: Option<f64>,
        #[arg(long, value_enum, default_value_t = DataFormat::Json)]
        format: DataFormat,
    },
    /// Compare every closed form against the truncated Fock-space construction.
    Validate {
        #[command(flatten)]
        state: StateArgs,
        /// Target Poisson tail mass for the cutoff choice.
        #[arg(long, default_value_t = oracle::DEFAULT_EPS)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Fock matrix elements |p_mn| and photon-number distribution p_mm.
    Fock {
        #[command(flatten)]
        state: StateArgs,
        /// Largest Fock index (inclusive).
        #[arg(long, default_value_t = 10)]
        max_m: usize,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
}

#[derive(Args, Debug, Clone)]
pub struct AmplitudeArgs {
    /// Complex amplitude: `a+bi` or `r@theta` (radians).
    #[arg(long, value_parser = complex::parse_amplitude, allow_hyphen_values = true)]
    pub alpha: PolarAmplitude,
    /// Number of heads N.
    #[arg(long)]
    pub heads: usize,
}

#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    #[command(flatten)]
    pub amplitude: AmplitudeArgs,
    #[arg(long, value_enum, default_value_t = FamilyArg::Coherent)]
    pub family: FamilyArg,
}

impl StateArgs {
    fn spec(&self) -> Result<StateSpec, Failure> {
        Ok(StateSpec::new(self.amplitude.alpha, self.amplitude.heads, self.family.into())?)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Incoherent,
    Coherent,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Incoherent => Family::Incoherent,
            FamilyArg::Coherent => Family::Coherent,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    MeanPhoton,
    MandelQ,
    VarX1,
    VarX2,
    Parity,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::MeanPhoton => Quantity::MeanPhoton,
            QuantityArg::MandelQ => Quantity::MandelQ,
            QuantityArg::VarX1 => Quantity::VarX1,
            QuantityArg::VarX2 => Quantity::VarX2,
            QuantityArg::Parity => Quantity::Parity,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DataFormat {
    Csv,
    Json,
}

/// A failed command and its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Capacity(String),
    /// Numerical inconsistency inside the library.
    Numerics(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Numerics(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Capacity(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Capacity(m) | Failure::Numerics(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidInput(_) | Error::UndefinedStatistic(_) => Failure::Usage(msg),
            Error::Capacity { .. } | Error::Truncation { .. } | Error::CutoffInsufficient { .. } => {
                Failure::Capacity(msg)
            }
            Error::Inconsistent { .. } => Failure::Numerics(msg),
        }
    }
}

/// Rendered output plus the exit code it should be reported with.
#[derive(Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub exit_code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, exit_code: 0 }
    }
}

pub fn run(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Roots { state, format } => roots(state, *format),
        Command::Stats { state } => stats(&state.spec()?),
        Command::Wigner {
            state,
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
            format,
        } => {
            let req = GridRequest::new(state.spec()?, (*x_min, *x_max), (*y_min, *y_max), *nx, *ny)?;
            let g = grid::evaluate(&req)?;
            Ok(Output::ok(match format {
                DataFormat::Csv => emit::wigner_csv(&g),
                DataFormat::Json => to_json(&emit::wigner_json(&g)),
            }))
        }
        Command::Sweep {
            theta,
            heads,
            family,
            quantity,
            r_min,
            r_max,
            step,
            threshold,
            format,
        } => {
            let template = SweepTemplate::new(*theta, *heads, (*family).into())?;
            sweep(&template, (*quantity).into(), (*r_min, *r_max, *step), *threshold, *format)
        }
        Command::Validate { state, eps, format } => {
            let spec = state.spec()?;
            let report = validate(&spec, *eps)?;
            let text = match format {
                TextFormat::Text => validation_text(&report),
                TextFormat::Json => to_json(&validation_json(&report)),
            };
            Ok(Output {
                text,
                exit_code: if report.passed() { 0 } else { 1 },
            })
        }
        Command::Fock { state, max_m, format } => fock(&state.spec()?, *max_m, *format),
    }
}

fn roots(args: &AmplitudeArgs, format: TextFormat) -> Result<Output, Failure> {
    let rs = nth_roots(&args.alpha, args.heads)?;
    let text = match format {
        TextFormat::Text => {
            let mut s = String::from("k re im modulus angle\n");
            for (k, z) in rs.iter().enumerate() {
                s.push_str(&format!("{k} {} {} {} {}\n", real(z.re), real(z.im), real(z.norm()), real(z.arg())));
            }
            s
        }
        TextFormat::Json => {
            let items: Vec<Value> = rs
                .iter()
                .enumerate()
                .map(|(k, z)| json!({ "k": k, "value": cjson(*z), "modulus": num(z.norm()), "angle": num(z.arg()) }))
                .collect();
            to_json(&envelope(
                "roots",
                json!({ "alpha": cjson(args.alpha.to_complex()), "n_heads": args.heads, "roots": items }),
            ))
        }
    };
    Ok(Output::ok(text))
}

fn stats(spec: &StateSpec) -> Result<Output, Failure> {
    let table = analytic::moment_table(spec)?;
    let moments: serde_json::Map<String, Value> = [
        ("a_dag", table.a_dag),
        ("a", table.a),
        ("a_dag_a", table.n_mean),
        ("a_dag2", table.a_dag2),
        ("a2", table.a2),
        ("a_dag2_a2", table.a_dag2_a2),
    ]
    .into_iter()
    .map(|(k, z)| (k.to_string(), cjson(z)))
    .collect();
    let mandel = match analytic::mandel_q(spec) {
        Ok(q) => num(q),
        Err(Error::UndefinedStatistic(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let v = analytic::quadrature_variances(spec)?;
    let mut body = json!({
        "spec": spec_json(spec),
        "moments": moments,
        "mean_photon": num(analytic::mean_photon(spec)?),
        "mandel_q": mandel,
        "variances": { "var_x1": num(v.var_x1), "var_x2": num(v.var_x2) },
        "parity": num(analytic::parity(spec)?),
    });
    if spec.family() == Family::Coherent {
        body["normalization"] = num(analytic::normalization(&spec.alpha(), spec.n_heads())?);
    }
    Ok(Output::ok(to_json(&envelope("stats", body))))
}

fn default_threshold(q: Quantity) -> Option<f64> {
    match q {
        Quantity::MandelQ => Some(0.0),
        Quantity::VarX1 | Quantity::VarX2 => Some(0.5),
        Quantity::MeanPhoton | Quantity::Parity => None,
    }
}

fn sweep(
    template: &SweepTemplate,
    quantity: Quantity,
    (r_min, r_max, step): (f64, f64, f64),
    threshold: Option<f64>,
    format: DataFormat,
) -> Result<Output, Failure> {
    let result = analysis::sweep(template, quantity, r_min, r_max, step)?;
    let threshold = threshold.or(default_threshold(quantity));
    let crossings = match threshold {
        Some(t) => analysis::find_crossings(&result, t)?,
        None => Vec::new(),
    };
    let text = match format {
        DataFormat::Csv => {
            let mut s = String::from("r,value\n");
            for p in &result.samples {
                s.push_str(&format!("{},{}\n", real(p.r), real(p.value)));
            }
            s
        }
        DataFormat::Json => {
            let samples: Vec<Value> = result
                .samples
                .iter()
                .map(|p| json!({ "r": num(p.r), "value": num(p.value) }))
                .collect();
            to_json(&envelope(
                "sweep",
                json!({
                    "template": {
                        "theta_p": num(template.theta_p),
                        "n_heads": template.n_heads,
                        "family": template.family.to_string(),
                    },
                    "quantity": quantity.name(),
                    "r_min": num(r_min),
                    "r_max": num(r_max),
                    "step": num(step),
                    "samples": samples,
                    "gaps": result.gaps.iter().map(|&r| num(r)).collect::<Vec<_>>(),
                    "threshold": threshold.map_or(Value::Null, num),
                    "crossings": crossings.iter().map(|&r| num(r)).collect::<Vec<_>>(),
                }),
            ))
        }
    };
    Ok(Output::ok(text))
}

fn validation_text(report: &ValidationReport) -> String {
    let mut s = format!(
        "cutoff {}\n{:<20} {:>9} {:>24} {:>24}  status\n",
        report.cutoff, "quantity", "compared", "max_diff", "tolerance"
    );
    for c in &report.checks {
        s.push_str(&format!(
            "{:<20} {:>9} {:>24} {:>24}  {}\n",
            c.quantity,
            c.compared,
            real(c.max_diff),
            real(c.tolerance),
            if c.passed() { "ok" } else { "MISMATCH" }
        ));
    }
    s.push_str(if report.passed() { "all checks passed\n" } else { "validation failed\n" });
    s
}

fn validation_json(report: &ValidationReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "quantity": c.quantity,
                "compared": c.compared,
                "max_diff": num(c.max_diff),
                "tolerance": num(c.tolerance),
                "passed": c.passed(),
            })
        })
        .collect();
    envelope(
        "validate",
        json!({
            "spec": spec_json(&report.spec),
            "cutoff": report.cutoff,
            "checks": checks,
            "passed": report.passed(),
        }),
    )
}

fn fock(spec: &StateSpec, max_m: usize, format: TextFormat) -> Result<Output, Failure> {
    if max_m > FOCK_MAX_M {
        return Err(Failure::Usage(format!("--max-m must be at most {FOCK_MAX_M}")));
    }
    let mut magnitudes = Vec::with_capacity(max_m + 1);
    for m in 0..=max_m {
        let row = (0..=max_m)
            .map(|n| analytic::fock_element(spec, m, n).map(|z| z.norm()))
            .collect::<multihead::Result<Vec<f64>>>()?;
        magnitudes.push(row);
    }
    let pnd = (0..=max_m)
        .map(|m| analytic::pnd(spec, m))
        .collect::<multihead::Result<Vec<f64>>>()?;
    let text = match format {
        TextFormat::Text => {
            let mut s = String::from("m p_mm\n");
            for (m, p) in pnd.iter().enumerate() {
                s.push_str(&format!("{m} {}\n", real(*p)));
            }
            s.push_str("|p_mn| (row m, column n)\n");
            for row in &magnitudes {
                let cells: Vec<String> = row.iter().map(|&v| real(v)).collect();
                s.push_str(&cells.join(" "));
                s.push('\n');
            }
            s
        }
        TextFormat::Json => to_json(&envelope(
            "fock",
            json!({
                "spec": spec_json(spec),
                "max_m": max_m,
                "pnd": pnd.iter().map(|&p| num(p)).collect::<Vec<_>>(),
                "abs_elements": magnitudes
                    .iter()
                    .map(|row| row.iter().map(|&v| num(v)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }),
        )),
    };
    Ok(Output::ok(text))
}
