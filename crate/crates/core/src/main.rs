use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use rn_audit::antipell::{self, Outcome};
use rn_audit::frey;
use rn_audit::mordell::{self, SPoint};
use rn_audit::pipeline::{self, AuditConfig, ExceptionalTable, SearchWindow, Solution};
use rn_audit::{pell, qform, Error};

#[derive(Parser)]
#[command(name = "rn-audit", version, about = "Exact audit of x^2 + (2k-1)^y = k^z for 4 | k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Audit every admissible k with lo < k < hi.
    Audit {
        #[arg(long, default_value_t = 30)]
        lo: u64,
        #[arg(long, default_value_t = 724)]
        hi: u64,
        #[arg(long, default_value_t = 11)]
        ymax: u32,
        #[arg(long, default_value_t = 11)]
        zmax: u32,
        /// Extra fixture table (label conductor [a1,a2,a3,a4,a6] per line).
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Replace the built-in exceptional-triple table (JSON).
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = pipeline::DEFAULT_MAX_A)]
        max_a: u32,
        #[arg(long, default_value_t = pipeline::DEFAULT_MAX_NUM)]
        max_num: u64,
    },
    /// Least solution of u^2 - D v^2 = 1.
    Pell {
        #[arg(long)]
        d: u64,
    },
    /// Form class counts for discriminant 4D.
    Classnum {
        #[arg(long)]
        d: u64,
    },
    /// Least solution of X^2 - D Y^2 = (-q)^Z.
    Antipell {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: u64,
        /// Exponents to search; defaults to divisors of the class-count bound.
        #[arg(long, value_delimiter = ',')]
        z: Vec<u32>,
    },
    /// Pell/anti-Pell elimination of the triple (i, j, k).
    Eliminate {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        cofactor: Option<u64>,
    },
    /// Frey-curve conductor rad(2k-1) rad(k).
    Conductor {
        #[arg(long)]
        k: u64,
    },
    /// Exhaustive search in a (y, z) window.
    Search {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        ymax: u32,
        #[arg(long)]
        zmax: u32,
    },
    /// Check a point on V^2 = U^3 - (2k-1)^i k^(2j).
    MordellVerify {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: u64,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cmd: Command) -> Result<ExitCode, Error> {
    match cmd {
        Command::Audit { lo, hi, ymax, zmax, fixtures, json, table, max_a, max_num } => {
            let window = SearchWindow::new(ymax, zmax)?;
            let mut fx = frey::embedded_fixtures();
            if let Some(path) = fixtures {
                fx.extend(frey::load_fixtures(&path)?);
            }
            let mut config = AuditConfig::new(window, fx);
            if let Some(path) = table {
                config.table = ExceptionalTable::load(&path)?;
            }
            config.max_a = max_a;
            config.max_num = max_num;
            let report = pipeline::run_audit_with(lo, hi, &config)?;
            for r in &report.reports {
                let verdicts: Vec<String> = r
                    .triples
                    .iter()
                    .filter(|t| t.verdict != pipeline::TripleVerdict::BoundedNoSolution)
                    .map(|t| format!("({},{})={}", t.i, t.j, serde_json::to_value(t.verdict).unwrap().as_str().unwrap()))
                    .collect();
                println!(
                    "k={:<4} status={:<22} conductor={:<8} solutions={} {}{}",
                    r.k,
                    r.status,
                    r.conductor.map_or("-".into(), |n| n.to_string()),
                    r.brute_force.solutions.len(),
                    if r.is_consistent() { "ok" } else { "FLAGGED" },
                    if verdicts.is_empty() { String::new() } else { format!(" {}", verdicts.join(" ")) },
                );
                for n in r.notes.iter().filter(|n| n.flag.is_blocking()) {
                    println!("    {:?}: {}", n.flag, n.message);
                }
            }
            if let Some(path) = json {
                let s = serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
                std::fs::write(&path, s)?;
            }
            let ok = report.is_consistent();
            println!(
                "{} admissible k, {}",
                report.reports.len(),
                if ok { "all consistent" } else { "some reports flagged" }
            );
            Ok(code(ok))
        }
        Command::Pell { d } => {
            print_json(&pell::pell_least(d)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classnum { d } => {
            print_json(&qform::class_number_4d(d)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Antipell { d, q, z } => {
            let allowed = if z.is_empty() {
                let bound = qform::class_number_4d(d)?.search_bound();
                rn_audit::arith::divisors(bound).into_iter().map(|v| v as u32).collect()
            } else {
                z
            };
            print_json(&antipell::antipell_search(d, q, &allowed, antipell::DEFAULT_SEARCH_CAP)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Eliminate { i, j, k, d, cofactor } => {
            let (d, cofactor) = match (d, cofactor) {
                (Some(d), Some(c)) => (d, c),
                (Some(d), None) => (d, isqrt_exact(k / d.max(1)).unwrap_or(0)),
                (None, Some(c)) => (k / (c * c).max(1), c),
                (None, None) => (k, 1),
            };
            let v = antipell::eliminate_triple(i, j, k, d, cofactor)?;
            print_json(&v)?;
            Ok(code(v.outcome != Outcome::Unresolved))
        }
        Command::Conductor { k } => {
            let n = frey::conductor_rn(k)?;
            let fx = frey::embedded_fixtures();
            #[derive(Serialize)]
            struct Out {
                k: u64,
                conductor: u64,
                within_table: bool,
                fixtures: Vec<frey::FixtureOutcome>,
            }
            print_json(&Out {
                k,
                conductor: n,
                within_table: n <= frey::CREMONA_CONDUCTOR_LIMIT,
                fixtures: frey::match_fixture(n, &fx, k),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { k, ymax, zmax } => {
            if k < 2 {
                return Err(Error::InvalidArgument(format!("k = {k} must be >= 2")));
            }
            let sols = pipeline::brute_force(k, SearchWindow::new(ymax, zmax)?);
            print_json(&sols)?;
            Ok(code(sols == vec![Solution::trivial(k)]))
        }
        Command::MordellVerify { i, j, k, u, v } => {
            let curve = mordell::build_curve(i, j, k)?;
            let u = pipeline::rational_from_str(&u)?;
            let v = pipeline::rational_from_str(&v)?;
            let verified = mordell::verify_point(&curve, &u, &v);
            let solution = mordell::point_to_solution(&curve, &SPoint::new(u.clone(), v.clone()))
                .map(|(x, y, z)| Solution { x, y, z });
            #[derive(Serialize)]
            struct Out {
                curve: mordell::MordellCurve,
                verified: bool,
                residual: String,
                solution: Option<Solution>,
            }
            print_json(&Out {
                residual: curve.residual(&u, &v).to_string(),
                curve,
                verified,
                solution,
            })?;
            Ok(code(verified))
        }
    }
}

fn isqrt_exact(n: u64) -> Option<u64> {
    let (r, exact) = rn_audit::arith::integer_sqrt(&n.into());
    exact.then(|| u64::try_from(r).expect("at most n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
