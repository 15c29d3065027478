use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use msod_core::verify::{bundled_names, census, emit_report, load_scenario, run_suite, Format, SUITES};

#[derive(Parser)]
#[command(name = "msod", version, about = "Exact checks of fixed-locus and Ext computations for finite quotient stacks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite against a scenario; exits 1 if a hard check fails.
    Verify {
        /// Scenario file, or the name of a bundled scenario.
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        suite: String,
        #[arg(long)]
        torsion: Option<u32>,
        #[arg(long, default_value = "markdown")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the fixed-locus census of a scenario as JSON.
    Census {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        torsion: Option<u32>,
    },
    /// List suites and bundled scenarios.
    List,
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Verify {
            scenario,
            suite,
            torsion,
            format,
            out,
        } => {
            let spec = load_scenario(&scenario)?;
            let report = run_suite(&spec, &suite, torsion)?;
            let text = emit_report(&report, format);
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            for c in report.failures() {
                eprintln!("FAIL {}", c.anchor);
            }
            eprintln!("{}", report.summary());
            Ok(report.passes())
        }
        Command::Census { scenario, torsion } => {
            let spec = load_scenario(&scenario)?;
            let value = census(&spec, torsion)?;
            println!("{}", serde_json::to_string_pretty(&value)?);
            Ok(true)
        }
        Command::List => {
            println!("suites: {} (alias: fixed-loci = type-c)", SUITES.join(", "));
            println!("bundled scenarios: {}", bundled_names().join(", "));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
