use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "tracesim", version, about = "Similarity of matrix tuples via trace words and intertwiners")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print trace values of all canonical words up to a degree.
    Fingerprint {
        file: PathBuf,
        /// Maximal word degree.
        #[arg(short = 'D', long, default_value_t = 2)]
        degree: usize,
        /// Include starred letters.
        #[arg(long)]
        star: bool,
        /// Cap on raw words enumerated.
        #[arg(long, default_value_t = tracesim::words::DEFAULT_ENUMERATION_BUDGET)]
        budget: u128,
    },
    /// Decide simultaneous (orthogonal) similarity of two tuples.
    Similar {
        x: PathBuf,
        y: PathBuf,
        /// Orthogonal/unitary similarity instead of similarity.
        #[arg(long)]
        orthogonal: bool,
        #[command(flatten)]
        search: SearchArgs,
        /// Print the witness matrix as a tuple file.
        #[arg(long)]
        witness: bool,
    },
    /// Check the matrix-unit relations of a file holding N² matrices.
    Units {
        file: PathBuf,
        /// Print a basis of the commutant of the family.
        #[arg(long)]
        center: bool,
    },
    /// Solve A·X - X·B = C, or decide unique solvability.
    Sylvester {
        a: PathBuf,
        b: PathBuf,
        c: Option<PathBuf>,
        /// Report whether every right-hand side has exactly one solution
        #[arg(long)]
        unique: bool,
    },
    /// Bundled example pairs.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    /// Re-run the decision procedures on one or all fixtures.
    Run {
        name: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args, Clone, Copy)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = Mode::MonteCarlo)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on grid points in deterministic mode.
    #[arg(long, default_value_t = tracesim::intertwiner::DEFAULT_GRID_BUDGET)]
    budget: u128,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Mode {
    MonteCarlo,
    Deterministic,
}

impl SearchArgs {
    fn config(self) -> tracesim::intertwiner::SearchConfig {
        use tracesim::intertwiner::SearchConfig;
        let base = match self.mode {
            Mode::MonteCarlo => SearchConfig::monte_carlo(self.seed),
            Mode::Deterministic => SearchConfig::deterministic(self.seed),
        };
        SearchConfig {
            grid_budget: self.budget,
            ..base
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fingerprint {
            file,
            degree,
            star,
            budget,
        } => commands::fingerprint(&file, degree, star, budget, cli.json),
        Command::Similar {
            x,
            y,
            orthogonal,
            search,
            witness,
        } => commands::similar(&x, &y, orthogonal, &search.config(), witness, cli.json),
        Command::Units { file, center } => commands::units(&file, center, cli.json),
        Command::Sylvester { a, b, c, unique } => {
            commands::sylvester(&a, &b, c.as_deref(), unique, cli.json)
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => commands::corpus_list(cli.json),
            CorpusAction::Run { name, search } => {
                commands::corpus_run(name.as_deref(), &search.config(), cli.json)
            }
        },
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
