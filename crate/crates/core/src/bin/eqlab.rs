use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use eqlab::cli::{self, CliError};

/// Desk-scale checker for equilogical spaces, partitioned assemblies,
/// and their groupoid presentations.
#[derive(Parser, Debug)]
#[command(name = "eqlab", version, about)]
struct Args {
    /// Instance file (JSON).
    path: String,

    /// Suites to run: `axioms`, `equ-equivalence`, `eff-quotient`, or
    /// `all`.
    #[arg(long, default_value = "all")]
    suite: String,

    /// Evaluation budget override for trackers.
    #[arg(long)]
    budget: Option<u64>,

    /// Zigzag length bound override.
    #[arg(long)]
    zigzag_bound: Option<usize>,

    /// Enumeration cap override.
    #[arg(long)]
    cap: Option<usize>,

    /// Seed override for generated fixtures.
    #[arg(long)]
    seed: Option<u64>,

    /// Emit the named object as DOT and exit.
    #[arg(long, value_name = "NAME")]
    emit_dot: Option<String>,

    /// Output format.
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
}

fn run(args: &Args) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(&args.path).map_err(|e| CliError::Io(e.to_string()))?;
    let mut instance = cli::load_instance(&text)?;
    if let Some(b) = args.budget {
        instance.config.budget = b;
    }
    if let Some(z) = args.zigzag_bound {
        instance.config.zigzag_bound = z;
    }
    if let Some(c) = args.cap {
        instance.config.cap = c;
    }
    if let Some(s) = args.seed {
        // The seed only matters at load time; reload with the override.
        let patched: serde_json::Value = {
            let mut v: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
            v["config"]["seed"] = serde_json::json!(s);
            v
        };
        instance = cli::load_instance(&patched.to_string())?;
        if let Some(b) = args.budget {
            instance.config.budget = b;
        }
        if let Some(z) = args.zigzag_bound {
            instance.config.zigzag_bound = z;
        }
        if let Some(c) = args.cap {
            instance.config.cap = c;
        }
    }
    if let Some(name) = &args.emit_dot {
        print!("{}", cli::emit_dot(&instance, name)?);
        return Ok(true);
    }
    let suites: Vec<String> = if args.suite == "all" {
        ["axioms", "equ-equivalence", "eff-quotient"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        vec![args.suite.clone()]
    };
    let started = Instant::now();
    let reports = cli::run(&instance, &suites)?;
    let mut all_passed = true;
    match args.format.as_str() {
        "json" => {
            let value = serde_json::Value::Array(
                reports.iter().map(|r| r.render_json()).collect(),
            );
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        _ => {
            for report in &reports {
                print!("{}", report.render_text());
            }
        }
    }
    for report in &reports {
        all_passed &= report.passed();
    }
    // Timing is diagnostic only; the report bytes stay deterministic.
    eprintln!("elapsed: {:?}", started.elapsed());
    Ok(all_passed)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
