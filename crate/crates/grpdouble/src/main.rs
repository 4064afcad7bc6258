//! Command-line front end. Exit codes: 0 clean, 1 when a survey refutes a
//! guaranteed check, 2 on usage or runtime errors.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use grpdouble::analyze::{
    analyze_document, convolve_document, cs_witness_document, pipeline_document,
};
use grpdouble::report::Document;
use grpdouble::survey::{parse_checks, run_survey, Check, SubsetMode, SurveyConfig};
use grpdouble::{parse_set_spec, resolve_group};
use grpdouble_core::parse_ratio;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "grpdouble",
    version,
    about = "Product-set doubling, convolution, and coset structure on finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Structured text, one [section] per block
    Text,
    /// Comma-separated values
    Csv,
    /// Aligned columns for reading
    Table,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Doubling report plus structure checks for one (group, set) pair
    Analyze {
        /// Group spec: cyclic:N, dihedral:N, symmetric:N, quaternion:8,
        /// product:<spec>,<spec>, or file:<path> with a JSON Cayley table
        #[arg(long)]
        group: String,
        /// Set spec: comma list of indices, gen:<list>, or random:<k>:<seed>
        #[arg(long)]
        set: String,
        /// Comma list from jump,freiman,kneser,hamidoune,covering,pipeline
        #[arg(long, default_value = "jump,freiman,kneser,hamidoune,covering")]
        checks: String,
        /// Tolerance in (0,1); only the pipeline check reads it
        #[arg(long)]
        epsilon: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run checks across many (group, subset) pairs
    Survey {
        /// Structured-text config file with a [survey] section; command-line
        /// flags override its fields
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "group")]
        groups: Vec<String>,
        /// exhaustive | random:<count>[:<seed>] | all-of-size:<k>
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        checks: Option<String>,
        #[arg(long)]
        epsilon: Option<String>,
        /// Worker threads; row order does not depend on this
        #[arg(long)]
        workers: Option<usize>,
        /// Seed for random mode when the mode string carries none
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Walk the smoothing pipeline on one set and report every step
    Pipeline {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        /// Tolerance in (0,1)
        #[arg(long)]
        epsilon: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convolve the indicator functions of two sets
    Convolve {
        #[arg(long)]
        group: String,
        #[arg(long = "set-a")]
        set_a: String,
        #[arg(long = "set-b")]
        set_b: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Greedy approximate-period witness with X^k inside the level set
    CsWitness {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 8)]
        k: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn write_report(doc: &Document, output: &OutputArgs) -> Result<()> {
    let text = match output.format {
        Format::Text => doc.emit(),
        Format::Csv => doc.to_csv()?,
        Format::Table => doc.to_table()?,
    };
    match &output.out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn survey_config(
    config: Option<PathBuf>,
    groups: Vec<String>,
    mode: Option<String>,
    checks: Option<String>,
    epsilon: Option<String>,
    workers: Option<usize>,
    seed: Option<u64>,
) -> Result<SurveyConfig> {
    let mut cfg = match config {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("reading config {}", path.display()))?;
            let doc = Document::parse(&text)?;
            SurveyConfig::from_document(&doc, seed)?
        }
        None => SurveyConfig {
            groups: Vec::new(),
            subset_mode: SubsetMode::Exhaustive,
            checks: vec![Check::Jump, Check::Freiman],
            epsilon: None,
            output: None,
            workers: 1,
        },
    };
    if !groups.is_empty() {
        cfg.groups = groups;
    }
    if let Some(mode) = mode {
        cfg.subset_mode = SubsetMode::parse(&mode, seed)?;
    }
    if let Some(checks) = checks {
        cfg.checks = parse_checks(&checks)?;
    }
    if let Some(eps) = epsilon {
        cfg.epsilon = Some(parse_ratio(&eps)?);
    }
    if let Some(workers) = workers {
        cfg.workers = workers;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { group, set, checks, epsilon, output } => {
            let g = resolve_group(&group)?;
            let a = parse_set_spec(&g, &set)?;
            let checks = parse_checks(&checks)?;
            let epsilon = epsilon.map(|e| parse_ratio(&e)).transpose()?;
            if checks.contains(&Check::Pipeline) && epsilon.is_none() {
                bail!("the pipeline check needs --epsilon");
            }
            let doc = analyze_document(&a, &checks, epsilon.as_ref())?;
            write_report(&doc, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Survey { config, groups, mode, checks, epsilon, workers, seed, output } => {
            let cfg = survey_config(config, groups, mode, checks, epsilon, workers, seed)?;
            let survey = run_survey(&cfg)?;
            let text = match output.format {
                Format::Text => survey.document().emit(),
                Format::Csv => survey.to_csv()?,
                Format::Table => survey.to_table()?,
            };
            let destination = output
                .out
                .as_ref()
                .map(|p| p.as_path())
                .or_else(|| cfg.output.as_deref().map(std::path::Path::new));
            match destination {
                Some(path) => fs::write(path, text)
                    .with_context(|| format!("writing report to {}", path.display()))?,
                None => print!("{text}"),
            }
            for (check, tally) in &survey.summary.tallies {
                eprintln!(
                    "{}: {} pass, {} fail, {} n/a",
                    check.name(),
                    tally[0],
                    tally[1],
                    tally[2]
                );
            }
            if survey.summary.refuted {
                eprintln!("verdict: refuted ({} rows)", survey.summary.rows);
                Ok(ExitCode::from(1))
            } else {
                eprintln!("verdict: ok ({} rows)", survey.summary.rows);
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Pipeline { group, set, epsilon, output } => {
            let g = resolve_group(&group)?;
            let a = parse_set_spec(&g, &set)?;
            let eps = parse_ratio(&epsilon)?;
            let doc = pipeline_document(&a, &eps)?;
            write_report(&doc, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Convolve { group, set_a, set_b, output } => {
            let g = resolve_group(&group)?;
            let a = parse_set_spec(&g, &set_a)?;
            let b = parse_set_spec(&g, &set_b)?;
            let doc = convolve_document(&a, &b)?;
            write_report(&doc, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CsWitness { group, set, k, output } => {
            let g = resolve_group(&group)?;
            let a = parse_set_spec(&g, &set)?;
            let doc = cs_witness_document(&a, k)?;
            write_report(&doc, &output)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
