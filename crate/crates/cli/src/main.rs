//! `heun`: evaluate confluent Heun functions, inspect the identity catalog and
//! run verification checks.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage or domain error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use heun_core::catalog::{
    apply_ties, instantiate, list_identities, ArbitrarySeeds, HChoice, IdentityId, InstanceOptions, SeedMode, Trig,
};
use heun_core::heun::{ode_from_family, seeds_for, taylor_coeffs, Family, ParamSet, Solution, Terms};
use heun_core::numerics::{fmt_cx, parse_cx, Cx, ONE, ZERO};
use heun_core::verify::{
    check_derivative, check_quadrature, check_transcription, linspace, run_suite, CheckReport, Status, SuiteConfig,
};
use heun_core::HeunError;

#[derive(Parser)]
#[command(name = "heun", version, about = "Confluent Heun functions and their integral identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print y and y' of the canonical local solution at x.
    Eval {
        #[arg(long)]
        family: Family,
        /// Comma-separated `re` or `re+imi` tokens in family order.
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Print the catalog with anchors and constraints.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Run one check on one catalog entry and print its report as JSON.
    Check {
        #[arg(long)]
        id: IdentityId,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Canonical)]
        seed_mode: ModeArg,
        #[arg(long, value_enum, default_value_t = ProtocolArg::Derivative)]
        protocol: ProtocolArg,
        /// Overwrite tied parameters with the values the entry requires.
        #[arg(long)]
        apply_ties: bool,
        /// Use the coefficient list exactly as stated.
        #[arg(long)]
        as_printed: bool,
        #[arg(long, default_value_t = 21)]
        grid: usize,
        #[arg(long)]
        tol: Option<f64>,
        /// Real interval `a,b` replacing the automatic choice.
        #[arg(long, allow_hyphen_values = true)]
        domain: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        y0: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0.5")]
        y1: String,
        #[arg(long, allow_hyphen_values = true)]
        anchor: Option<f64>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long, allow_hyphen_values = true, default_value = "0.25")]
        rho: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        k: String,
        #[arg(long, value_enum, default_value_t = TrigArg::Sin)]
        trig: TrigArg,
    },
    /// Run the full suite and write the JSON report.
    Suite {
        /// JSON file with any subset of the suite configuration fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Report path; the report goes to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
    /// Print Taylor coefficients c0..cN of the canonical local solution at 0.
    DumpSeries {
        #[arg(long)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Canonical,
    Arbitrary,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProtocolArg {
    Derivative,
    Quadrature,
    Transcription,
}

#[derive(Clone, Copy, ValueEnum)]
enum TrigArg {
    Sin,
    Cos,
}

fn parse_list(s: &str) -> Result<Vec<Cx>, HeunError> {
    s.split(',').map(parse_cx).collect()
}

fn parse_params(family: Family, s: &str) -> Result<ParamSet, HeunError> {
    ParamSet::from_values(family, &parse_list(s)?)
}

fn parse_domain(s: &str) -> Result<(f64, f64), HeunError> {
    let bad = || HeunError::Parse(format!("domain must be 'a,b' with a < b, got '{s}'"));
    let v: Vec<f64> = s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_, _>>()?;
    match v[..] {
        [a, b] if a < b => Ok((a, b)),
        _ => Err(bad()),
    }
}

fn verdict(report: &CheckReport) -> ExitCode {
    match report.status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail | Status::Flagged { .. } => ExitCode::from(1),
        Status::Skipped { .. } => ExitCode::from(2),
    }
}

fn list(json: bool) -> Result<ExitCode, HeunError> {
    let entries = list_identities();
    if json {
        println!("{}", serde_json::to_string_pretty(&entries).map_err(|e| HeunError::Parse(e.to_string()))?);
        return Ok(ExitCode::SUCCESS);
    }
    let mut out = io::stdout().lock();
    for e in entries {
        let constraints = if e.constraints.is_empty() { "-".to_string() } else { e.constraints.join("; ") };
        // A closed pipe (e.g. `| head`) just ends the listing.
        if writeln!(out, "{:<14} {:<3} \"{}\"  [{}]", e.id.tag(), e.family.tag(), e.anchor, constraints).is_err() {
            break;
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn check(
    id: IdentityId,
    params: &str,
    seed_mode: ModeArg,
    protocol: ProtocolArg,
    ties: bool,
    as_printed: bool,
    grid: usize,
    tol: Option<f64>,
    domain: Option<&str>,
    seeds: (&str, &str, Option<f64>),
    hchoice: HChoice,
) -> Result<ExitCode, HeunError> {
    let mut p = parse_params(id.family(), params)?;
    if ties {
        p = apply_ties(id, &p);
    }
    let seed_mode = match seed_mode {
        ModeArg::Canonical => SeedMode::Canonical,
        ModeArg::Arbitrary => SeedMode::Arbitrary(ArbitrarySeeds {
            x_anchor: seeds.2,
            y0: parse_cx(seeds.0)?,
            y1: parse_cx(seeds.1)?,
            ybar0: ONE,
            ybar1: ZERO,
        }),
    };
    let opts = InstanceOptions {
        hchoice: id.is_elementary().then_some(hchoice),
        as_printed,
        seed_mode,
        domain: domain.map(parse_domain).transpose()?,
        ..InstanceOptions::default()
    };
    let inst = instantiate(id, &p, &opts)?;
    let defaults = SuiteConfig::default().tolerances;
    let (a, b) = inst.domain();
    let report = match protocol {
        ProtocolArg::Derivative => check_derivative(&inst, &linspace(a, b, grid.max(2)), tol.unwrap_or(defaults.deriv)),
        ProtocolArg::Quadrature => check_quadrature(&inst, a, b, tol.unwrap_or(defaults.quad)),
        ProtocolArg::Transcription => {
            check_transcription(&inst, &linspace(a, b, grid.max(2)), tol.unwrap_or(defaults.transcription))
        }
    };
    println!("{}", serde_json::to_string_pretty(&report).map_err(|e| HeunError::Parse(e.to_string()))?);
    Ok(verdict(&report))
}

fn suite(config: Option<PathBuf>, out: Option<PathBuf>, sequential: bool) -> Result<ExitCode, HeunError> {
    let mut cfg = match config {
        Some(path) => {
            let text = fs::read_to_string(&path).map_err(|e| HeunError::Parse(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<SuiteConfig>(&text)
                .map_err(|e| HeunError::Parse(format!("{}: {e}", path.display())))?
        }
        None => SuiteConfig::default(),
    };
    if sequential {
        cfg.parallel = false;
    }
    let report = run_suite(&cfg)?;
    let json = report.to_json();
    match out {
        Some(path) => {
            fs::write(&path, json + "\n").map_err(|e| HeunError::Parse(format!("{}: {e}", path.display())))?
        }
        None => println!("{json}"),
    }
    for c in report.failed() {
        eprintln!("FAIL {} {:?} rel={:.3e} tol={:.1e}", c.subject, c.protocol, c.max_rel_err, c.tolerance);
    }
    let s = &report.summary;
    eprintln!("{} checks: {} pass, {} fail, {} skipped, {} flagged", s.total, s.pass, s.fail, s.skipped, s.flagged);
    Ok(if s.fail > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn run(cli: Cli) -> Result<ExitCode, HeunError> {
    match cli.command {
        Command::Eval { family, params, x } => {
            let sol = Solution::new(parse_params(family, &params)?)?;
            let (y, dy) = sol.eval(parse_cx(&x)?)?;
            println!("y = {}", fmt_cx(y));
            println!("y' = {}", fmt_cx(dy));
            Ok(ExitCode::SUCCESS)
        }
        Command::List { json } => list(json),
        Command::Check {
            id,
            params,
            seed_mode,
            protocol,
            apply_ties,
            as_printed,
            grid,
            tol,
            domain,
            y0,
            y1,
            anchor,
            m,
            ell,
            rho,
            k,
            trig,
        } => {
            let trig = match trig {
                TrigArg::Sin => Trig::Sin,
                TrigArg::Cos => Trig::Cos,
            };
            let h = HChoice { m, ell, rho: parse_cx(&rho)?, k: parse_cx(&k)?, trig };
            check(
                id,
                &params,
                seed_mode,
                protocol,
                apply_ties,
                as_printed,
                grid,
                tol,
                domain.as_deref(),
                (&y0, &y1, anchor),
                h,
            )
        }
        Command::Suite { config, out, sequential } => suite(config, out, sequential),
        Command::DumpSeries { family, params, n } => {
            let p = parse_params(family, &params)?;
            let ode = ode_from_family(&p);
            for ck in taylor_coeffs(&ode, seeds_for(&p)?, Terms::Fixed(n))? {
                println!("{}", fmt_cx(ck));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
