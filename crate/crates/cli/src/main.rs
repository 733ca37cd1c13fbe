use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand};
use massicot::certificate::to_json;
use massicot::{verify, Certificate, Context, Overrides};
use serde_json::json;

#[derive(Parser)]
#[command(name = "massicot", version, about = "Certified descent and finite models for approximate subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    budget_depth: Option<usize>,
    #[arg(long)]
    budget_candidates: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Fail rather than emit greedy witnesses.
    #[arg(long)]
    exact_only: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Group, action and measure axiom reports.
    Axioms {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Approximate constant, covering and thickness tables.
    Constants {
        #[command(flatten)]
        common: Common,
    },
    /// Run the basic descent and emit its certificate.
    Descent {
        #[command(flatten)]
        common: Common,
    },
    /// Run the recursive chain and emit its certificate.
    Chain {
        #[command(flatten)]
        common: Common,
    },
    /// Run the chain and emit the finite quotient model.
    Model {
        #[command(flatten)]
        common: Common,
    },
    /// Re-check a certificate against its scenario.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        certificate: PathBuf,
    },
}

impl Common {
    fn load(&self) -> Result<Context> {
        let overrides = Overrides {
            budget_depth: self.budget_depth,
            budget_candidates: self.budget_candidates,
            seed: self.seed,
            exact_only: self.exact_only,
        };
        let ctx = Context::from_path(&self.scenario, &overrides)?;
        for w in &ctx.warnings {
            eprintln!("warning: {w}");
        }
        Ok(ctx)
    }

    fn emit(&self, body: &str) -> Result<()> {
        match &self.out {
            Some(path) => write_file(path, body),
            None => {
                println!("{body}");
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, format!("{body}\n")).with_context(|| format!("writing {}", path.display()))
}

fn status(ok: bool, what: &str) -> ExitCode {
    if ok {
        eprintln!("{what}: ok");
        ExitCode::SUCCESS
    } else {
        eprintln!("{what}: FAILED");
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Axioms { common, samples } => {
            let ctx = common.load()?;
            let report = ctx.axioms(samples);
            common.emit(&to_json(&report))?;
            for e in report.errors.iter().chain(&report.group_measure.counterexamples).chain(&report.space_measure.counterexamples) {
                eprintln!("  {e}");
            }
            Ok(status(report.all_pass(), "axioms"))
        }
        Command::Constants { common } => {
            let ctx = common.load()?;
            let report = ctx.constants()?;
            common.emit(&to_json(&report))?;
            if common.exact_only && !report.all_exact() {
                eprintln!("an exact search hit its node limit");
                return Ok(ExitCode::from(1));
            }
            Ok(status(report.all_pass(), "constants"))
        }
        Command::Descent { common } => {
            let ctx = common.load()?;
            let cert = ctx.descent()?;
            common.emit(&to_json(&cert))?;
            eprintln!("k = {}, k_bound = {}, |D| = {}", cert.k, cert.k_bound, cert.d.len());
            Ok(status(cert.power_check && cert.overlap_check && cert.k <= cert.k_bound, "descent"))
        }
        Command::Chain { common } => {
            let ctx = common.load()?;
            let cert = ctx.chain()?;
            common.emit(&to_json(&cert))?;
            eprintln!("steps = {}, termination = {:?}", cert.steps.len(), cert.termination);
            Ok(status(cert.stabilized_at.is_some(), "chain"))
        }
        Command::Model { common } => {
            let ctx = common.load()?;
            let model = ctx.model()?;
            common.emit(&to_json(&model))?;
            eprintln!("|H| = {}, |K| = {}, quotient order = {}", model.h.len(), model.k.len(), model.index);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common, certificate } => {
            let ctx = common.load()?;
            let text = fs::read_to_string(&certificate).with_context(|| format!("reading {}", certificate.display()))?;
            let cert = match Certificate::from_json(&text) {
                Ok(c) => c,
                Err(e) => {
                    common.emit(&to_json(&json!({"passed": false, "failures": [{"name": "parse", "detail": e.to_string()}]})))?;
                    eprintln!("rejected: parse: {e}");
                    return Ok(ExitCode::from(1));
                }
            };
            let verdict = verify(&cert, &ctx.verify_context());
            common.emit(&to_json(&verdict))?;
            for c in verdict.failures() {
                eprintln!("rejected: {}: {}", c.name, c.detail);
            }
            Ok(status(verdict.passed(), "verify"))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
