//! `brim`: Buchsbaum-Rim functions, multiplicities and coefficients of
//! parameter modules over graded quotient rings.

use brim_cli::problem::parse_field_kind;
use brim_cli::report::Report;
use brim_cli::runner::{run_corpus, run_problem, Command, RunConfig, EXIT_INPUT};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "brim",
    version,
    about = "Buchsbaum-Rim functions, multiplicities and coefficients of parameter modules"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Check that the input presents a parameter module.
    Validate(ProblemArgs),
    /// Length of F/N.
    Length(ProblemArgs),
    /// The table of lengths lambda(nu, t).
    Table(ProblemArgs),
    /// The multiplicity as the Euler characteristic of the
    /// Eagon-Northcott complex.
    Multiplicity(ProblemArgs),
    /// Fit the length polynomial and report its coefficients.
    Coefficients(ProblemArgs),
    /// Ranks (and optionally matrices) of the Eagon-Northcott complex.
    En(ProblemArgs),
    /// Run the whole pipeline and check every bound and equivalence.
    Verify(ProblemArgs),
    /// Equality checks specific to Cohen-Macaulay base rings.
    Remarks(ProblemArgs),
    /// Verify all shipped corpus examples.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Problem file to read.
    #[arg(long)]
    input: PathBuf,
    /// Largest nu in length tables (default: d + r + 3).
    #[arg(long = "nu-max")]
    nu_max: Option<u32>,
    /// Comma-separated t values (default: 0..=d+1 for verify, 1 otherwise).
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<u32>>,
    /// Coefficient field: QQ or GF(p). Overrides the problem file.
    #[arg(long)]
    field: Option<String>,
    /// Output format: table or structured.
    #[arg(long, default_value = "table")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Soft time budget in seconds for table-growing retries.
    #[arg(long)]
    budget: Option<u64>,
    /// Include the differential matrices in `en` reports.
    #[arg(long = "dump-en")]
    dump_en: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// Output format: table or structured.
    #[arg(long, default_value = "table")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Soft time budget in seconds, per entry.
    #[arg(long)]
    budget: Option<u64>,
}

/// Environment override for the default coefficient field only; the
/// problem file and --field still win.
const FIELD_ENV: &str = "BRIM_FIELD";

fn config_from(args: &ProblemArgs) -> Result<RunConfig, String> {
    let field = match &args.field {
        Some(s) => {
            Some(parse_field_kind(s).ok_or_else(|| format!("invalid field `{s}`"))?)
        }
        None => None,
    };
    let default_field = match std::env::var(FIELD_ENV) {
        Ok(s) => Some(
            parse_field_kind(&s)
                .ok_or_else(|| format!("invalid {FIELD_ENV} value `{s}`"))?,
        ),
        Err(_) => None,
    };
    Ok(RunConfig {
        nu_max: args.nu_max,
        ts: args.t.clone(),
        field,
        default_field,
        dump_en: args.dump_en,
        budget_secs: args.budget,
    })
}

fn emit(report_text: String, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, report_text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            println!("{report_text}");
            Ok(())
        }
    }
}

fn format_report(report: &Report, format: &str) -> Result<String, String> {
    match format {
        "structured" => Ok(report.to_json()),
        "table" => Ok(report.render_table()),
        other => Err(format!("unknown format `{other}` (use table or structured)")),
    }
}

fn run_one(cmd: Command, args: &ProblemArgs) -> u8 {
    let cfg = match config_from(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return EXIT_INPUT;
        }
    };
    let (report, exit) = run_problem(&text, cmd, &cfg);
    let rendered = match format_report(&report, &args.format) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if let Err(e) = emit(rendered, args.out.as_ref()) {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    exit
}

fn run_corpus_cmd(args: &CorpusArgs) -> u8 {
    let cfg = RunConfig { budget_secs: args.budget, ..Default::default() };
    let (results, overall) = run_corpus(&cfg);
    let rendered = match args.format.as_str() {
        "structured" => {
            let reports: Vec<serde_json::Value> = results
                .iter()
                .map(|(name, report, exit)| {
                    serde_json::json!({
                        "name": name,
                        "exit": exit.to_string(),
                        "report": serde_json::to_value(report).expect("report serializes"),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({
                "schema_version": brim_cli::report::SCHEMA_VERSION,
                "command": "corpus",
                "entries": reports,
            }))
            .expect("corpus report serializes")
        }
        "table" => {
            let mut out = String::new();
            for (name, report, exit) in &results {
                let status = if *exit == 0 { "ok" } else { "FAILED" };
                let cm = report.cm.map(|b| b.to_string()).unwrap_or_else(|| "?".into());
                let chi = report
                    .multiplicity
                    .as_ref()
                    .map(|m| m.chi.clone())
                    .unwrap_or_else(|| "?".into());
                let e1 = report
                    .corollary
                    .as_ref()
                    .map(|c| c.e1.clone())
                    .unwrap_or_else(|| "?".into());
                out.push_str(&format!(
                    "{name:<22} {status:<7} cm = {cm:<6} e0 = {chi:<4} e1 = {e1}\n"
                ));
            }
            out.push_str(&format!(
                "{} entries, overall: {}\n",
                results.len(),
                if overall == 0 { "ok" } else { "FAILED" }
            ));
            out
        }
        other => {
            eprintln!("error: unknown format `{other}` (use table or structured)");
            return EXIT_INPUT;
        }
    };
    if let Err(e) = emit(rendered, args.out.as_ref()) {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    overall
}

fn main() {
    let cli = Cli::parse();
    let exit = match &cli.command {
        CliCommand::Validate(a) => run_one(Command::Validate, a),
        CliCommand::Length(a) => run_one(Command::Length, a),
        CliCommand::Table(a) => run_one(Command::Table, a),
        CliCommand::Multiplicity(a) => run_one(Command::Multiplicity, a),
        CliCommand::Coefficients(a) => run_one(Command::Coefficients, a),
        CliCommand::En(a) => run_one(Command::En, a),
        CliCommand::Verify(a) => run_one(Command::Verify, a),
        CliCommand::Remarks(a) => run_one(Command::Remarks, a),
        CliCommand::Corpus(a) => run_corpus_cmd(a),
    };
    std::process::exit(i32::from(exit));
}
