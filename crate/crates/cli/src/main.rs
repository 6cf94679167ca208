mod commands;
mod error;
mod input;

use std::process::ExitCode;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use hbar::flow::DEFAULT_VERIFY_CAP;
use hbar::saturation::{Strategy, DEFAULT_SATURATION_CAP};

use commands::Document;
use error::CliError;
use input::{load_semigroup, parse_variety, LanguageSource};

#[derive(Debug, Parser)]
#[command(
    name = "hbar",
    version,
    about = "Pointlike sets, membership and separation for semigroup varieties defined by group varieties",
    after_help = "Exit status: 0 computed, 2 input error, 3 resource cap exceeded.\n\
                  FILE is a .sgp table, a .tgen generator list, or corpus:NAME.\n\
                  VARIETY is trivial, all, ab, p:<prime>, pi:<p1,p2,...>, nil, sol or verbal:<file>."
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Kernel,
    Pseudo,
    Both,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Kernel => Strategy::Kernel,
            StrategyArg::Pseudo => Strategy::Pseudoidentity,
            StrategyArg::Both => Strategy::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Green's relations as egg-box diagrams of the J-classes.
    Green { file: String },
    /// Whether every subgroup lies in the variety.
    Member {
        file: String,
        #[arg(long)]
        variety: String,
    },
    /// The maximal subgroup at an idempotent and its kernel.
    Kernel {
        file: String,
        #[arg(long)]
        idempotent: usize,
        #[arg(long)]
        variety: String,
    },
    /// Maximal pointlike sets.
    Pointlikes {
        file: String,
        #[arg(long)]
        variety: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Kernel)]
        strategy: StrategyArg,
        /// Also list every pointlike pair.
        #[arg(long)]
        pairs: bool,
        /// Also list every rule application.
        #[arg(long)]
        trace: bool,
        /// Largest semigroup accepted.
        #[arg(long, default_value_t = DEFAULT_SATURATION_CAP)]
        cap: usize,
    },
    /// Whether two disjoint regular languages are separable by the variety.
    Separate {
        /// DFA files in JSON.
        dfas: Vec<String>,
        /// Inline regular expressions.
        #[arg(long)]
        regex: Vec<String>,
        /// Letters, e.g. `ab`.
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        variety: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Kernel)]
        strategy: StrategyArg,
        /// Largest recognizing semigroup accepted.
        #[arg(long, default_value_t = DEFAULT_SATURATION_CAP)]
        cap: usize,
    },
    /// Builds the flow automaton and checks it.
    Verify {
        file: String,
        #[arg(long)]
        variety: String,
        #[arg(long, default_value_t = DEFAULT_VERIFY_CAP)]
        max_size: usize,
    },
}

/// The two languages in command-line order.
fn language_sources(m: &ArgMatches) -> Result<(LanguageSource, LanguageSource), CliError> {
    let mut found: Vec<(usize, LanguageSource)> = Vec::new();
    for (id, make) in [
        ("dfas", LanguageSource::File as fn(String) -> LanguageSource),
        ("regex", LanguageSource::Regex),
    ] {
        if let (Some(values), Some(indices)) = (m.get_many::<String>(id), m.indices_of(id)) {
            found.extend(indices.zip(values.cloned().map(make)));
        }
    }
    found.sort_by_key(|(i, _)| *i);
    if found.len() != 2 {
        return Err(CliError::input(format!(
            "separate needs exactly two languages (DFA files or --regex), got {}",
            found.len()
        )));
    }
    let mut it = found.into_iter().map(|(_, s)| s);
    Ok((it.next().unwrap(), it.next().unwrap()))
}

fn emit<D: Document>(doc: &D, format: Format) -> String {
    match format {
        Format::Text => doc.to_text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
            s.push('\n');
            s
        }
    }
}

fn run(cli: Cli, matches: &ArgMatches) -> Result<String, CliError> {
    let f = cli.format;
    match cli.command {
        Command::Green { file } => Ok(emit(&commands::green(&load_semigroup(&file)?), f)),
        Command::Member { file, variety } => {
            let k = parse_variety(&variety)?;
            Ok(emit(&commands::member(&load_semigroup(&file)?, &k)?, f))
        }
        Command::Kernel {
            file,
            idempotent,
            variety,
        } => {
            let k = parse_variety(&variety)?;
            Ok(emit(
                &commands::kernel(&load_semigroup(&file)?, idempotent, &k)?,
                f,
            ))
        }
        Command::Pointlikes {
            file,
            variety,
            strategy,
            pairs,
            trace,
            cap,
        } => {
            let k = parse_variety(&variety)?;
            let args = commands::PointlikeArgs {
                strategy: strategy.into(),
                pairs,
                trace,
                cap,
            };
            Ok(emit(
                &commands::pointlikes(&load_semigroup(&file)?, &k, &args)?,
                f,
            ))
        }
        Command::Separate {
            alphabet,
            variety,
            strategy,
            cap,
            ..
        } => {
            let sub = matches
                .subcommand_matches("separate")
                .expect("separate matched");
            let (l1, l2) = language_sources(sub)?;
            let k = parse_variety(&variety)?;
            let args = commands::SeparateArgs {
                alphabet,
                strategy: strategy.into(),
                cap,
            };
            Ok(emit(&commands::separate(&l1, &l2, &k, &args)?, f))
        }
        Command::Verify {
            file,
            variety,
            max_size,
        } => {
            let k = parse_variety(&variety)?;
            Ok(emit(
                &commands::verify(&load_semigroup(&file)?, &k, max_size)?,
                f,
            ))
        }
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli, &matches) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.kind.code() as u8)
        }
    }
}
