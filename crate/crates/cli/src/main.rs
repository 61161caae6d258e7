use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use primavoid::class_groups::{CurvePoint, DdSetting, EllipticCurve};
use primavoid::families::{verify_example, ExampleOptions};
use primavoid::Report;
use primavoid_cli::{classgroup_report, ddverdict_report, parse_session, run_session};

#[derive(Parser)]
#[command(name = "primavoid", version, about = "Prime avoidance witnesses and verifiers")]
struct Cli {
    /// Seed for every sampled battery.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock time in each report (output is then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session file (`-` reads standard input).
    Run { file: PathBuf },
    /// Class group of an imaginary quadratic discriminant.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: BigInt,
    },
    /// Whether the maximal spectrum minus one point satisfies prime avoidance.
    Ddverdict {
        /// Curve `y^2 = x^3 + A*x + B`.
        #[arg(long, requires = "point", conflicts_with = "disc")]
        curve: Option<String>,
        /// Rational point `x,y` on the curve.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Quadratic discriminant.
        #[arg(long, allow_hyphen_values = true, requires = "prime")]
        disc: Option<BigInt>,
        /// Rational prime below the maximal ideal.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Re-run one of the worked examples.
    Verify {
        example: String,
        /// Polynomial replacing the sampled inputs.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
    },
}

fn timed(timing: bool, f: impl FnOnce() -> Result<Vec<Report>>) -> Result<Vec<Report>> {
    let start = Instant::now();
    let mut reports = f()?;
    if timing {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut reports {
            r.timing_ms = Some(ms);
        }
    }
    Ok(reports)
}

fn execute(cli: &Cli) -> Result<Vec<Report>> {
    let seed = cli.seed;
    timed(cli.timing, || match &cli.command {
        Cmd::Run { file } => {
            let text = if file.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?
            };
            let session = parse_session(&text)?;
            run_session(&session, seed)
        }
        Cmd::Classgroup { disc } => Ok(vec![classgroup_report(disc, seed, &format!("classgroup --disc {disc}"))?]),
        Cmd::Ddverdict { curve, point, disc, prime } => {
            let (setting, echo) = match (curve, point, disc, prime) {
                (Some(c), Some(p), None, None) => (
                    DdSetting::Elliptic { curve: EllipticCurve::parse(c)?, point: CurvePoint::parse(p)? },
                    format!("ddverdict --curve \"{c}\" --point \"{p}\""),
                ),
                (None, None, Some(d), Some(p)) => {
                    (DdSetting::Quadratic { disc: d.clone(), p: *p }, format!("ddverdict --disc {d} --prime {p}"))
                }
                _ => anyhow::bail!("give either --curve and --point, or --disc and --prime"),
            };
            Ok(vec![ddverdict_report(&setting, seed, &echo)?])
        }
        Cmd::Verify { example, f } => {
            let mut r = verify_example(example, &ExampleOptions { seed, f: f.clone() })?;
            r.command = match f {
                Some(f) => format!("verify {example} --f \"{f}\""),
                None => format!("verify {example}"),
            };
            Ok(vec![r])
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(reports) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            if reports.iter().all(Report::all_verified) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
