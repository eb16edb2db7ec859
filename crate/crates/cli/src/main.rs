use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use su3sp::case::{load_cases, save_cases, to_json};
use su3sp::corpus::{generate, CorpusSpec};
use su3sp::report::save_report;
use su3sp::run::{run, Command, Route, RunOptions};

#[derive(Parser)]
#[command(name = "su3sp", version, about = "Exact SU(3) scalar products: route cross-checks and reports")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Case file (one case or an array of cases).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Report or corpus destination; stdout when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "sum")]
    route: Route,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest l+m: generator bound, and size limit of the integral routes.
    #[arg(long, global = true)]
    max_lm: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one route.
    Compute,
    /// Sum, recursion and both multiple integrals must agree.
    CheckRoutes,
    /// Sum formula against direct contraction on the case's chain.
    OracleCompare,
    /// Factorization of the scalar product when a B-family goes to infinity.
    LimitsCheck,
    /// Residue identities, collision residues, fill independence, actions.
    Identities,
    /// Write random generic cases.
    GenerateCorpus {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 24)]
        window: i64,
        /// Chain sites to attach to each case.
        #[arg(long, default_value_t = 0)]
        sites: usize,
    },
}

fn emit(text: &str, out: &Option<PathBuf>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.cmd {
        Cmd::GenerateCorpus { count, window, sites } => {
            let spec = CorpusSpec { seed: cli.seed, count, max_lm: cli.max_lm.unwrap_or(3), window, sites };
            let res = generate(&spec).map_err(|e| e.to_string()).and_then(|cases| match &cli.output {
                Some(p) => save_cases(&cases, p).map_err(|e| e.to_string()),
                None => emit(&to_json(&cases), &None).map_err(|e| e.to_string()),
            });
            return match res {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            };
        }
        Cmd::Compute => Command::Compute,
        Cmd::CheckRoutes => Command::CheckRoutes,
        Cmd::OracleCompare => Command::OracleCompare,
        Cmd::LimitsCheck => Command::LimitsCheck,
        Cmd::Identities => Command::Identities,
    };
    let Some(input) = cli.input else {
        eprintln!("error: --input is required");
        return ExitCode::from(2);
    };
    let cases = match load_cases(&input) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for c in &cases {
        let v = c.genericity();
        if !v.is_empty() {
            let list: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            let what = if c.allow_nongeneric { "warning" } else { "skipped" };
            eprintln!("{what}: case {} is not generic: {}", c.id, list.join(", "));
        }
    }
    let opts = RunOptions { route: cli.route, seed: cli.seed, max_lm: cli.max_lm, parallel: cli.parallel };
    let report = run(command, &cases, &opts);
    let written = match &cli.output {
        Some(p) => save_report(&report, p),
        None => emit(&report.to_json(), &None),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for c in &report.cases {
        for k in &c.checks {
            if !k.passed {
                eprintln!("FAIL {} {}{}", c.id, k.name, k.error.as_ref().map(|e| format!(": {e}")).unwrap_or_default());
            }
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
