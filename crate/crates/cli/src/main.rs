//! `passgame`: compute SG values, print golden tables, run verification
//! suites and classify positions.
//!
//! Exit codes: 0 success, 1 verification mismatches, 2 usage or invalid
//! input, 3 search budget exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "passgame", version, about = "Sprague-Grundy values of impartial games with a pass")]
struct Cli {
    /// Maximum positions one evaluation may expand [env: PASSGAME_BUDGET]
    #[arg(long, global = true)]
    budget: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the SG value of a position.
    Sg(PositionArgs),
    /// Print a table of values as CSV.
    Table {
        #[command(subcommand)]
        table: TableKind,
    },
    /// Run a verification suite; mismatches are printed as JSON lines.
    Verify(VerifyArgs),
    /// Report whether a position is a one-move game and whether it is SG-decreasing.
    Classify(PositionArgs),
}

#[derive(Args, Debug)]
struct PositionArgs {
    ruleset: RulesetKind,

    /// Coordinates: piles for nim and nim-pass, `a b` for nim2-single,
    /// `y z` for choco2, `x y z` for choco3, `x y z [p]` for stair-pass.
    #[arg(required = true, value_name = "COORD")]
    coords: Vec<u64>,

    /// Shape of a two-dimensional bar: floor-div:<k>, log-step or table:<path>.
    #[arg(long = "h", value_name = "SHAPE")]
    h: Option<String>,

    /// Shape of a three-dimensional bar: f1, f2, from-h:<shape> or table:<rows>.
    #[arg(long = "f", value_name = "SHAPE")]
    f: Option<String>,

    /// Stair game: the pass is still available.
    #[arg(long)]
    pass: bool,

    /// Nim with pass: the pass has already been used.
    #[arg(long, conflicts_with = "pass")]
    spent: bool,

    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum TableKind {
    /// Two-pile nim with a pass, 0 <= x, y <= max.
    Gp {
        #[arg(long, default_value_t = 12)]
        max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-dimensional bar values for z <= zmax.
    Cb2 {
        #[arg(long = "h", value_name = "SHAPE", default_value = "floor-div:1")]
        h: String,
        #[arg(long, default_value_t = 15)]
        zmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// thm1, thm3, thm4, thm5, thm6, lemma1, lemma2, lemma4, lemma5, cor1..cor4 or counterexample.
    suite: String,
    /// Largest pile for lemma5.
    #[arg(long)]
    max: Option<u32>,
    /// Random compounds for thm6.
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Column bound for the single-variable shape checks.
    #[arg(long)]
    z_max: Option<u32>,
    /// Largest block exponent in NS checks.
    #[arg(long)]
    i_max: Option<u32>,
    /// Bound on x and z for cor2..cor4.
    #[arg(long)]
    stair_bound: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum RulesetKind {
    Nim,
    #[value(name = "nim2-single")]
    Nim2Single,
    NimPass,
    Choco2,
    Choco3,
    StairPass,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Plain,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match commands::budget(cli.budget) {
        Ok(b) => b,
        Err(e) => return e.report(),
    };
    let result = match cli.command {
        Command::Sg(args) => commands::sg(&args, budget),
        Command::Table { table } => commands::table(&table, budget),
        Command::Verify(args) => commands::verify(&args, budget),
        Command::Classify(args) => commands::classify(&args, budget),
    };
    match result {
        Ok(code) => code,
        Err(e) => e.report(),
    }
}
