use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use passgame_core::chocolate::{cb2_table, Choco2, Choco3, FFunction, HFunction};
use passgame_core::classify::{Certificate, Classifier, Witness};
use passgame_core::compound::Compound;
use passgame_core::game::{self, PositionKey, Ruleset, SgCache, DEFAULT_BUDGET};
use passgame_core::nim::{Nim, TwoPileNim};
use passgame_core::nim_pass::gp_table;
use passgame_core::stair::Stair;
use passgame_core::verify::{self, Suite, VerifyConfig};
use passgame_core::GameError;
use serde_json::json;

use crate::{Format, PositionArgs, RulesetKind, TableKind, VerifyArgs};

pub const BUDGET_VAR: &str = "PASSGAME_BUDGET";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Game(GameError),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Game(e) if e.is_resource() => 3,
            _ => 2,
        }
    }

    pub fn report(&self) -> ExitCode {
        eprintln!("passgame: {self}");
        ExitCode::from(self.exit_code())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Game(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        CliError::Game(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// The `--budget` flag, else the environment variable, else the default.
pub fn budget(flag: Option<usize>) -> CliResult<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_VAR}={v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Parses a shape selector; `table:<path>` reads comma or whitespace separated
/// values from a file, falling back to inline values when no such file exists.
fn parse_h(s: &str) -> CliResult<HFunction> {
    if let Some(path) = s.strip_prefix("table:") {
        if Path::new(path).is_file() {
            let text = fs::read_to_string(path)?;
            let values = parse_numbers(&text)?;
            return Ok(HFunction::table(values)?);
        }
    }
    Ok(s.parse()?)
}

/// Like [`parse_h`]; a table file holds one row `F(x, .)` per line.
fn parse_f(s: &str) -> CliResult<FFunction> {
    if let Some(path) = s.strip_prefix("table:") {
        if Path::new(path).is_file() {
            let text = fs::read_to_string(path)?;
            let rows = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(parse_numbers)
                .collect::<CliResult<Vec<_>>>()?;
            return Ok(FFunction::table(rows)?);
        }
    }
    if let Some(h) = s.strip_prefix("from-h:") {
        return Ok(FFunction::from_h(parse_h(h)?));
    }
    Ok(s.parse()?)
}

fn parse_numbers(text: &str) -> CliResult<Vec<u32>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Game(GameError::InvalidFunction(format!("bad table entry {t:?}"))))
        })
        .collect()
}

fn require<'a>(value: &'a Option<String>, flag: &str, kind: &str) -> CliResult<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("{kind} needs --{flag}")))
}

fn arity(args: &PositionArgs, allowed: &[usize], kind: &str) -> CliResult<()> {
    if allowed.contains(&args.coords.len()) {
        Ok(())
    } else {
        let counts: Vec<String> = allowed.iter().map(|n| n.to_string()).collect();
        Err(CliError::Usage(format!(
            "{kind} takes {} coordinates, got {}",
            counts.join(" or "),
            args.coords.len()
        )))
    }
}

/// The ruleset and validated key named by the positional arguments.
fn resolve(args: &PositionArgs) -> CliResult<(Arc<dyn Ruleset>, PositionKey)> {
    let nim_piles = |one_pass: bool, pass: bool| -> CliResult<(Arc<dyn Ruleset>, PositionKey)> {
        let nim = Nim::new();
        let piles = args
            .coords
            .iter()
            .map(|&c| nim.position(&[c]))
            .collect::<Result<Vec<_>, _>>()?;
        let parts: Vec<Arc<dyn Ruleset>> = piles.iter().map(|_| Arc::new(Nim::new()) as Arc<dyn Ruleset>).collect();
        let compound = if one_pass {
            Compound::one_pass(parts)
        } else {
            Compound::disjunctive(parts)
        };
        let key = compound.key(&piles, pass)?;
        Ok((Arc::new(compound), key))
    };

    let (r, coords): (Arc<dyn Ruleset>, Vec<u64>) = match args.ruleset {
        RulesetKind::Nim if args.coords.len() > 1 => return nim_piles(false, false),
        RulesetKind::Nim => (Arc::new(Nim::new()), args.coords.clone()),
        RulesetKind::NimPass => return nim_piles(true, !args.spent),
        RulesetKind::Nim2Single => {
            arity(args, &[2], "nim2-single")?;
            (Arc::new(TwoPileNim::new()), args.coords.clone())
        }
        RulesetKind::Choco2 => {
            arity(args, &[2], "choco2")?;
            let h = parse_h(require(&args.h, "h", "choco2")?)?;
            (Arc::new(Choco2::new(h)), args.coords.clone())
        }
        RulesetKind::Choco3 => {
            arity(args, &[3], "choco3")?;
            let f = parse_f(require(&args.f, "f", "choco3")?)?;
            (Arc::new(Choco3::new(f)), args.coords.clone())
        }
        RulesetKind::StairPass => {
            arity(args, &[3, 4], "stair-pass")?;
            let h = parse_h(require(&args.h, "h", "stair-pass")?)?;
            let mut coords = args.coords.clone();
            if coords.len() == 3 {
                coords.push(args.pass as u64);
            } else if args.pass {
                coords[3] = 1;
            }
            (Arc::new(Stair::new(h)), coords)
        }
    };
    let key = r.position(&coords)?;
    Ok((r, key))
}

fn tuple(payload: &[u32]) -> String {
    let parts: Vec<String> = payload.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn sg(args: &PositionArgs, budget: usize) -> CliResult<ExitCode> {
    let (r, key) = resolve(args)?;
    let value = game::sg(r.as_ref(), &key, &mut SgCache::with_budget(budget))?;
    match args.format {
        Format::Plain => println!("{value}"),
        Format::Json => println!(
            "{}",
            json!({ "position": key.to_string(), "coords": args.coords, "sg": value })
        ),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn table(kind: &TableKind, budget: usize) -> CliResult<ExitCode> {
    let mut cache = SgCache::with_budget(budget);
    let (csv, out) = match kind {
        TableKind::Gp { max, out } => (gp_table(*max, &mut cache)?.to_csv(), out),
        TableKind::Cb2 { h, zmax, out } => (cb2_table(&parse_h(h)?, *zmax, &mut cache)?.to_csv(), out),
    };
    match out {
        Some(path) => fs::write(path, csv)?,
        None => io::stdout().write_all(csv.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: &VerifyArgs, budget: usize) -> CliResult<ExitCode> {
    let suite: Suite = args
        .suite
        .parse()
        .map_err(|e: GameError| match e {
            GameError::Precondition(m) => CliError::Usage(m),
            other => CliError::Game(other),
        })?;
    let defaults = VerifyConfig::default();
    let cfg = VerifyConfig {
        max: args.max.unwrap_or(defaults.max),
        trials: args.trials.unwrap_or(defaults.trials),
        seed: args.seed.unwrap_or(defaults.seed),
        z_max: args.z_max.unwrap_or(defaults.z_max),
        i_max: args.i_max.unwrap_or(defaults.i_max),
        stair_bound: args.stair_bound.unwrap_or(defaults.stair_bound),
        budget,
        ..defaults
    };
    let report = verify::run(suite, &cfg)?;
    let mut stdout = io::stdout().lock();
    writeln!(
        stdout,
        "{}: {} cases, {} mismatches, {:.3}s",
        report.suite,
        report.cases,
        report.mismatches.len(),
        report.elapsed.as_secs_f64()
    )?;
    for note in &report.notes {
        writeln!(stdout, "note: {note}")?;
    }
    for m in &report.mismatches {
        writeln!(stdout, "{}", serde_json::to_string(m).expect("mismatch serializes"))?;
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Follower(g) => tuple(g.payload()),
        Witness::Move { from, to } => format!("{} -> {}", tuple(from.payload()), tuple(to.payload())),
    }
}

fn witness_json(w: &Option<Witness>) -> serde_json::Value {
    match w {
        None => serde_json::Value::Null,
        Some(Witness::Follower(g)) => json!({ "follower": g.payload() }),
        Some(Witness::Move { from, to }) => json!({ "from": from.payload(), "to": to.payload() }),
    }
}

fn verdict_text(c: &Certificate) -> String {
    match &c.witness {
        Some(w) => format!("{} (witness {})", c.verdict, witness_text(w)),
        None => c.verdict.to_string(),
    }
}

pub fn classify(args: &PositionArgs, budget: usize) -> CliResult<ExitCode> {
    let (r, key) = resolve(args)?;
    let mut cl = Classifier::new().with_budget(budget);
    let one_move = cl.is_one_move(r.as_ref(), &key)?;
    let decreasing = cl.is_sg_decreasing(r.as_ref(), &key)?;
    let value = game::sg(r.as_ref(), &key, cl.cache())?;
    match args.format {
        Format::Plain => {
            println!("position: {key}");
            println!("sg: {value}");
            println!("one-move: {}", verdict_text(&one_move));
            println!("sg-decreasing: {}", verdict_text(&decreasing));
        }
        Format::Json => println!(
            "{}",
            json!({
                "position": key.to_string(),
                "sg": value,
                "one_move": { "verdict": one_move.verdict, "witness": witness_json(&one_move.witness) },
                "sg_decreasing": { "verdict": decreasing.verdict, "witness": witness_json(&decreasing.witness) },
            })
        ),
    }
    Ok(ExitCode::SUCCESS)
}
