//! Command-line front end: `plan` and `power` over files or embedded
//! examples.
//!
//! Input files are either one numeric value per line (raw sample, unit
//! weights), CSV `value,weight` rows, or a two-group frequency table
//! CSV `category,count_g1,count_g2`. The second group can instead be
//! generated from the first by an effect spec: `scale:q[:floor]`,
//! `shift:delta[:round=k]`, or `ordshift:frac:up|down:cats=0,1,2`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::datasets::load_example;
use crate::error::{Error, Result};
use crate::planning::{
    noether_sample_size, plan, Allocation, PlanInput, PlanResult,
};
use crate::powersim::{simulate_power, PowerResult};
use crate::synthetic::{
    from_frequency_table, ordinal_shift, scale_effect, shift_effect, ShiftDirection,
    WeightedSample,
};

/// Sample-size planning and power simulation for the two-sided
/// Wilcoxon-Mann-Whitney test, driven by synthetic data.
#[derive(Debug, Parser)]
#[command(name = "wmw-design", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute estimands, sample sizes, and the allocation diagnostics.
    Plan(PlanArgs),
    /// Monte-Carlo power estimate at given group sizes.
    Power(PowerArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Embedded example: seizures, nasal, kidney, albumin, beta55_32.
    #[arg(long, conflicts_with_all = ["g1", "g2", "effect", "table"])]
    example: Option<String>,
    /// First-group sample file (values, or CSV value,weight).
    #[arg(long)]
    g1: Option<PathBuf>,
    /// Second-group sample file.
    #[arg(long, conflicts_with = "effect")]
    g2: Option<PathBuf>,
    /// Effect spec generating the second group from the first.
    #[arg(long)]
    effect: Option<String>,
    /// Two-group frequency table CSV: category,count_g1,count_g2.
    #[arg(long, conflicts_with_all = ["g1", "g2", "effect"])]
    table: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PlanArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Two-sided type-I error rate (default 0.05, or the example's).
    #[arg(long)]
    alpha: Option<f64>,
    /// Target power 1-beta (default 0.8, or the example's).
    #[arg(long)]
    power: Option<f64>,
    /// balanced | optimal | fixed:T
    #[arg(long, default_value = "balanced")]
    allocation: String,
    /// text | json
    #[arg(long, default_value = "text")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct PowerArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Group sizes; when omitted they are taken from a plan run with
    /// the given allocation policy.
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Target power, used only when sizes are planned implicitly.
    #[arg(long)]
    power: Option<f64>,
    #[arg(long, default_value = "balanced")]
    allocation: String,
    /// Number of Monte-Carlo replications.
    #[arg(long, default_value_t = 10_000)]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "text")]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Parse arguments, run, print the result. Diagnostics go to stderr;
/// nothing is written to stdout on error.
pub fn run() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    let rendered = match &cli.command {
        Command::Plan(args) => cmd_plan(args),
        Command::Power(args) => cmd_power(args),
    };
    match rendered {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

// WMW_DESIGN_THREADS caps the rayon pool used by the power simulation.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("WMW_DESIGN_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn parse_allocation(s: &str) -> Result<Allocation> {
    match s {
        "balanced" => Ok(Allocation::Balanced),
        "optimal" => Ok(Allocation::Optimal),
        other => {
            if let Some(t) = other.strip_prefix("fixed:") {
                let t: f64 = t.parse().map_err(|_| {
                    Error::InvalidArgument(format!("invalid allocation rate '{t}'"))
                })?;
                Ok(Allocation::Fixed(t))
            } else {
                Err(Error::InvalidArgument(format!(
                    "unknown allocation policy '{other}' (expected balanced, optimal, or fixed:T)"
                )))
            }
        }
    }
}

struct LoadedInput {
    f1: WeightedSample,
    f2: WeightedSample,
    default_alpha: f64,
    default_power: f64,
}

fn load_input(input: &InputArgs) -> Result<LoadedInput> {
    if let Some(name) = &input.example {
        let ex = load_example(name)?;
        return Ok(LoadedInput {
            f1: ex.f1,
            f2: ex.f2,
            default_alpha: ex.input.alpha,
            default_power: ex.input.power,
        });
    }
    if let Some(path) = &input.table {
        let (f1, f2) = read_two_group_table(path)?;
        return Ok(LoadedInput {
            f1,
            f2,
            default_alpha: 0.05,
            default_power: 0.8,
        });
    }
    let Some(g1_path) = &input.g1 else {
        return Err(Error::InvalidArgument(
            "no input: pass --example, --table, or --g1".into(),
        ));
    };
    let f1 = read_sample(g1_path)?;
    let f2 = match (&input.g2, &input.effect) {
        (Some(path), None) => read_sample(path)?,
        (None, Some(spec)) => apply_effect(&f1, spec)?,
        (None, None) => {
            return Err(Error::InvalidArgument(
                "second group missing: pass --g2 or --effect".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    Ok(LoadedInput {
        f1,
        f2,
        default_alpha: 0.05,
        default_power: 0.8,
    })
}

fn parse_field(path: &Path, line_no: usize, field: &str, what: &str) -> Result<f64> {
    field.trim().parse().map_err(|_| Error::Parse {
        path: path.display().to_string(),
        line: line_no,
        msg: format!("invalid {what} '{}'", field.trim()),
    })
}

/// One value per line, or CSV `value,weight`.
fn read_sample(path: &Path) -> Result<WeightedSample> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    let mut weights = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        match fields.as_slice() {
            [v] => {
                values.push(parse_field(path, line_no, v, "value")?);
                weights.push(1.0);
            }
            [v, w] => {
                values.push(parse_field(path, line_no, v, "value")?);
                weights.push(parse_field(path, line_no, w, "weight")?);
            }
            _ => {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    line: line_no,
                    msg: format!("expected 1 or 2 fields, found {}", fields.len()),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(Error::Parse {
            path: path.display().to_string(),
            line: 1,
            msg: "file contains no data".into(),
        });
    }
    WeightedSample::new(values, weights)
}

/// CSV `category,count_g1,count_g2`; categories become codes 0,1,2,...
/// in file order. A non-numeric first row is treated as a header.
fn read_two_group_table(path: &Path) -> Result<(WeightedSample, WeightedSample)> {
    let text = std::fs::read_to_string(path)?;
    let mut counts1 = Vec::new();
    let mut counts2 = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                path: path.display().to_string(),
                line: line_no,
                msg: format!("expected 3 fields, found {}", fields.len()),
            });
        }
        if counts1.is_empty() && counts2.is_empty() && fields[1].trim().parse::<f64>().is_err() {
            continue; // header row
        }
        counts1.push(parse_field(path, line_no, fields[1], "count")?);
        counts2.push(parse_field(path, line_no, fields[2], "count")?);
    }
    Ok((from_frequency_table(&counts1)?, from_frequency_table(&counts2)?))
}

fn apply_effect(f1: &WeightedSample, spec: &str) -> Result<WeightedSample> {
    let bad = |msg: String| Error::InvalidArgument(format!("invalid effect spec '{spec}': {msg}"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["scale", q] => scale_effect(f1, parse_num(q, spec)?, false),
        ["scale", q, "floor"] => scale_effect(f1, parse_num(q, spec)?, true),
        ["shift", d] => shift_effect(f1, parse_num(d, spec)?, None),
        ["shift", d, r] => {
            let k = r
                .strip_prefix("round=")
                .and_then(|k| k.parse::<u32>().ok())
                .ok_or_else(|| bad(format!("expected round=K, found '{r}'")))?;
            shift_effect(f1, parse_num(d, spec)?, Some(k))
        }
        ["ordshift", frac, dir, cats] => {
            let frac = parse_num(frac, spec)?;
            let direction = match *dir {
                "up" => ShiftDirection::Up,
                "down" => ShiftDirection::Down,
                other => return Err(bad(format!("expected up or down, found '{other}'"))),
            };
            let cats = cats
                .strip_prefix("cats=")
                .ok_or_else(|| bad(format!("expected cats=..., found '{cats}'")))?;
            let categories = cats
                .split(',')
                .map(|c| c.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad(format!("invalid category list '{cats}'")))?;
            let mut counts = ordinal_counts(f1)?;
            // moving up from the observed top category opens a new one
            if direction == ShiftDirection::Up
                && categories.iter().any(|&c| c + 1 == counts.len())
            {
                counts.push(0.0);
            }
            let shifted = ordinal_shift(&counts, frac, direction, &categories)?;
            from_frequency_table(&shifted)
        }
        _ => Err(bad(
            "expected scale:q[:floor], shift:delta[:round=k], or ordshift:frac:up|down:cats=..."
                .into(),
        )),
    }
}

fn parse_num(s: &str, spec: &str) -> Result<f64> {
    s.parse().map_err(|_| {
        Error::InvalidArgument(format!("invalid effect spec '{spec}': bad number '{s}'"))
    })
}

// An ordinal shift needs per-category counts: the sample's values must
// be nonnegative integer category codes.
fn ordinal_counts(f: &WeightedSample) -> Result<Vec<f64>> {
    let mass = f.mass_function();
    let max = mass.last().map(|(v, _)| *v).unwrap_or(0.0);
    if mass
        .iter()
        .any(|(v, _)| *v < 0.0 || v.fract() != 0.0 || *v > 1e6)
    {
        return Err(Error::InvalidArgument(
            "ordinal shift requires nonnegative integer category codes".into(),
        ));
    }
    let total = f.total_weight();
    let mut counts = vec![0.0; max as usize + 1];
    for (v, m) in mass {
        counts[v as usize] = m * total;
    }
    Ok(counts)
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct PlanReport {
    p_star: f64,
    sigma_null: f64,
    sigma1: f64,
    sigma2: f64,
    kappa: Option<f64>,
    t: f64,
    n1: u64,
    n2: u64,
    #[serde(rename = "N_total")]
    n_total: u64,
    interval_lower: Option<f64>,
    interval_upper: Option<f64>,
    noether_n_per_group: u64,
}

impl PlanReport {
    fn new(result: &PlanResult, noether_per_group: u64) -> Self {
        let e = &result.estimands;
        Self {
            p_star: e.p_star,
            sigma_null: e.sigma2_null.sqrt(),
            sigma1: e.sigma2_1.sqrt(),
            sigma2: e.sigma2_2.sqrt(),
            kappa: e.kappa().ok().filter(|k| k.is_finite()),
            t: result.t,
            n1: result.n1,
            n2: result.n2,
            n_total: result.n_total,
            interval_lower: result.interval.map(|iv| iv.lower),
            interval_upper: result.interval.map(|iv| iv.upper),
            noether_n_per_group: noether_per_group,
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p*            {:.4}", self.p_star);
        let _ = writeln!(out, "sigma*        {:.4}", self.sigma_null);
        let _ = writeln!(out, "sigma1*       {:.4}", self.sigma1);
        let _ = writeln!(out, "sigma2*       {:.4}", self.sigma2);
        match self.kappa {
            Some(k) => {
                let _ = writeln!(out, "kappa         {k:.4}");
            }
            None => {
                let _ = writeln!(out, "kappa         undefined");
            }
        }
        let _ = writeln!(out, "t             {:.4}", self.t);
        if let (Some(lo), Some(hi)) = (self.interval_lower, self.interval_upper) {
            let _ = writeln!(out, "t0 interval   [{lo:.4}, {hi:.4}]");
        }
        let _ = writeln!(out, "n1            {}", self.n1);
        let _ = writeln!(out, "n2            {}", self.n2);
        let _ = writeln!(out, "N             {}", self.n_total);
        let _ = write!(out, "Noether       {0}/{0}", self.noether_n_per_group);
        out
    }
}

fn cmd_plan(args: &PlanArgs) -> Result<String> {
    let loaded = load_input(&args.input)?;
    let allocation = parse_allocation(&args.allocation)?;
    let input = PlanInput::new(
        args.alpha.unwrap_or(loaded.default_alpha),
        args.power.unwrap_or(loaded.default_power),
        allocation,
    )?;
    let result = plan(&loaded.f1, &loaded.f2, &input)?;
    let noether = noether_sample_size(result.estimands.p_star, &input, 0.5)?;
    let report = PlanReport::new(&result, ((noether / 2.0 - 1e-9).ceil().max(1.0)) as u64);
    Ok(match args.format {
        OutputFormat::Text => report.render_text(),
        OutputFormat::Json => serde_json::to_string_pretty(&report).expect("serializable"),
    })
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct PowerReport {
    n1: u64,
    n2: u64,
    alpha: f64,
    power_hat: f64,
    replications: u64,
    rejections: u64,
    seed: u64,
    mc_stderr: f64,
}

impl PowerReport {
    fn new(n1: usize, n2: usize, alpha: f64, r: &PowerResult) -> Self {
        Self {
            n1: n1 as u64,
            n2: n2 as u64,
            alpha,
            power_hat: r.power_hat,
            replications: r.replications,
            rejections: r.rejections,
            seed: r.seed,
            mc_stderr: r.mc_stderr,
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n1            {}", self.n1);
        let _ = writeln!(out, "n2            {}", self.n2);
        let _ = writeln!(out, "alpha         {:.4}", self.alpha);
        let _ = writeln!(out, "power         {:.4}", self.power_hat);
        let _ = writeln!(out, "rejections    {}/{}", self.rejections, self.replications);
        let _ = writeln!(out, "mc stderr     {:.4}", self.mc_stderr);
        let _ = write!(out, "seed          {}", self.seed);
        out
    }
}

fn cmd_power(args: &PowerArgs) -> Result<String> {
    let loaded = load_input(&args.input)?;
    let alpha = args.alpha.unwrap_or(loaded.default_alpha);
    let (n1, n2) = match (args.n1, args.n2) {
        (Some(n1), Some(n2)) => (n1, n2),
        (None, None) => {
            // fall back to a plan run at the requested policy
            let input = PlanInput::new(
                alpha,
                args.power.unwrap_or(loaded.default_power),
                parse_allocation(&args.allocation)?,
            )?;
            let result = plan(&loaded.f1, &loaded.f2, &input)?;
            (result.n1 as usize, result.n2 as usize)
        }
        _ => {
            return Err(Error::InvalidArgument(
                "pass both --n1 and --n2, or neither".into(),
            ))
        }
    };
    let result = simulate_power(&loaded.f1, &loaded.f2, n1, n2, alpha, args.reps, args.seed)?;
    let report = PowerReport::new(n1, n2, alpha, &result);
    Ok(match args.format {
        OutputFormat::Text => report.render_text(),
        OutputFormat::Json => serde_json::to_string_pretty(&report).expect("serializable"),
    })
}
