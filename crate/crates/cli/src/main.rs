//! `covertime` command-line harness.

mod commands;
mod config;
mod error;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::parser::ValueSource;
use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};

use commands::Ctx;
use config::ConfigFile;
use error::{CliError, CliResult};
use output::{read_file, Format};

#[derive(Debug, Parser)]
#[command(
    name = "covertime",
    version,
    about = "Cover-time experiments on random graphs"
)]
struct Cli {
    /// Master seed; required by every stochastic subcommand.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Output file (stdout if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// `key = value` file with optional `[subcommand]` sections.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Record wall-clock runtime in the output header. Off by default so that
    /// repeated runs are byte-identical.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate graphs from a degree sequence or from G(n, c/n).
    Gen(commands::gen::GenArgs),
    /// Simulate cover times or unvisit probabilities.
    Walk(commands::walk::WalkArgs),
    /// Exact spectral and electrical quantities of a small graph.
    Exact(commands::exact::ExactArgs),
    /// Closed-form cover-time predictions.
    Predict(commands::predict::PredictArgs),
    /// Build the weighted surrogate of a subdivided graph.
    Surrogate(commands::surrogate::SurrogateArgs),
    /// Simulated against predicted cover times.
    Compare(commands::compare::CompareArgs),
}

/// Keys excluded from the embedded config: they change where or how fast
/// output is produced, not what it contains.
const EXECUTION_KEYS: [&str; 6] = ["threads", "out", "config", "timing", "help", "version"];

fn subcommand_of(m: &ArgMatches) -> (&str, &ArgMatches) {
    m.subcommand().expect("subcommand is required")
}

fn given_on_command_line(top: &ArgMatches, sub: &ArgMatches, id: &str) -> bool {
    [top, sub].iter().any(|m| {
        m.try_contains_id(id).unwrap_or(false)
            && m.value_source(id) == Some(ValueSource::CommandLine)
    })
}

fn parse(args: Vec<OsString>) -> CliResult<(Cli, Vec<(String, String)>)> {
    // first pass only finds the subcommand, the config path and the flags
    // given explicitly; required flags may still come from the config file
    let first = Cli::command()
        .ignore_errors(true)
        .try_get_matches_from(&args)
        .unwrap_or_else(|e| e.exit());
    if first.subcommand().is_none() {
        Cli::command()
            .try_get_matches_from(&args)
            .unwrap_or_else(|e| e.exit());
    }
    let (name, sub) = subcommand_of(&first);
    let config_path = sub
        .get_one::<PathBuf>("config")
        .or_else(|| first.get_one::<PathBuf>("config"))
        .cloned();
    let mut merged = args.clone();
    if let Some(path) = config_path {
        let file = ConfigFile::parse(&read_file(&path)?)?;
        let cmd = Cli::command();
        let sub_cmd = cmd.find_subcommand(name).expect("known subcommand");
        for (key, value) in file.entries_for(name) {
            let id = key.replace('-', "_");
            let Some(arg) = cmd
                .get_arguments()
                .chain(sub_cmd.get_arguments())
                .find(|a| a.get_id().as_str() == id)
            else {
                // global keys may target other subcommands
                if file
                    .sections
                    .get(name)
                    .is_some_and(|s| s.contains_key(&key))
                {
                    return Err(CliError::usage(format!(
                        "unknown config key `{key}` for `{name}`"
                    )));
                }
                continue;
            };
            if id == "config" || given_on_command_line(&first, sub, &id) {
                continue;
            }
            if arg.get_action().takes_values() {
                merged.push(format!("--{key}").into());
                merged.push(value.into());
            } else if value
                .parse::<bool>()
                .map_err(|_| CliError::usage(format!("config key `{key}` expects true or false")))?
            {
                merged.push(format!("--{key}").into());
            }
        }
    }
    let matches = Cli::command()
        .try_get_matches_from(&merged)
        .unwrap_or_else(|e| e.exit());
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());

    let (name, sub) = subcommand_of(&matches);
    let cmd = Cli::command();
    let sub_cmd = cmd.find_subcommand(name).expect("known subcommand");
    let mut config = Vec::new();
    for arg in cmd.get_arguments().chain(sub_cmd.get_arguments()) {
        let id = arg.get_id().as_str();
        if EXECUTION_KEYS.contains(&id) {
            continue;
        }
        let source = if sub.try_contains_id(id).unwrap_or(false) {
            sub
        } else {
            &matches
        };
        if let Ok(Some(raw)) = source.try_get_raw(id) {
            let vals: Vec<String> = raw.map(|v| v.to_string_lossy().into_owned()).collect();
            config.push((id.replace('_', "-"), vals.join(",")));
        }
    }
    config.sort();
    Ok((cli, config))
}

fn run(args: Vec<OsString>) -> CliResult<()> {
    let start = Instant::now();
    let (cli, config) = parse(args)?;
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(e.to_string()))?;
    }
    let name = match &cli.command {
        Command::Gen(_) => "gen",
        Command::Walk(_) => "walk",
        Command::Exact(_) => "exact",
        Command::Predict(_) => "predict",
        Command::Surrogate(_) => "surrogate",
        Command::Compare(_) => "compare",
    };
    let ctx = Ctx {
        seed: cli.seed,
        trials: cli.trials,
        out: cli.out,
        format: cli.format,
        command: name.to_string(),
        config,
        timing: cli.timing,
        start,
    };
    match &cli.command {
        Command::Gen(a) => commands::gen::run(&ctx, a),
        Command::Walk(a) => commands::walk::run(&ctx, a),
        Command::Exact(a) => commands::exact::run(&ctx, a),
        Command::Predict(a) => commands::predict::run(&ctx, a),
        Command::Surrogate(a) => commands::surrogate::run(&ctx, a),
        Command::Compare(a) => commands::compare::run(&ctx, a),
    }
}

fn main() {
    let code = match run(std::env::args_os().collect()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
