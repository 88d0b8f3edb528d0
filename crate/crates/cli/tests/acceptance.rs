//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process fails when a criterion fails, except for a failure listed in
//! `KNOWN_TABLE_ERRATA` whose mismatching cells are exactly the listed ones.
//! Set `ACCEPTANCE_STRICT=1` to make every FAIL fatal.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use passgame_core::chocolate::{cb2_table, Choco2, Choco2Position, Choco3, Choco3Position, FFunction, HFunction};
use passgame_core::classify::{Classifier, Witness};
use passgame_core::game::{PositionKey, Ruleset, SgCache};
use passgame_core::nim::{Nim, TwoPileNim};
use passgame_core::nim_pass::gp_table;
use passgame_core::stair::{stair_sg, stair_sg_fast, Stair, StairPosition};
use passgame_core::verify::{self, Suite, VerificationReport, VerifyConfig};

/// The CB2 value table as printed in the published source, rows `y = 0..=7`,
/// columns `z = 0..=15`, blank where the cell is not drawn.
const PUBLISHED_CB2: [&str; 8] = [
    "0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15",
    ",,3,2,5,4,7,6,9,8,11,10,13,12,15,14",
    ",,,,6,7,4,5,10,11,8,9,14,15,13,12",
    ",,,,7,6,5,4,11,10,9,8,15,14,13,12",
    ",,,,,,,,12,13,14,15,8,9,10,11",
    ",,,,,,,,13,12,15,14,9,8,11,10",
    ",,,,,,,,14,15,12,13,10,11,8,9",
    ",,,,,,,,15,14,13,12,11,10,9,8",
];

/// Cells `(y, z)` where the published CB2 table disagrees with brute force:
/// row 2 lists 13, 12 at z = 14, 15 where the values are 2^14 = 12 and
/// 2^15 = 13.
const KNOWN_TABLE_ERRATA: [(u32, u32); 2] = [(2, 14), (2, 15)];

type Criterion = (u32, &'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
    /// Mismatching cells, for criteria compared against published data.
    cells: Vec<(u32, u32)>,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
            cells: Vec::new(),
        }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn suite_line(r: &VerificationReport) -> String {
    format!("{} {} cases {} mismatches", r.suite, r.cases, r.mismatches.len())
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden").join(name);
    std::fs::read_to_string(path).expect("golden file present")
}

fn table3() -> Verdict {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_passgame"))
        .args(["table", "gp", "--max", "12"])
        .env_remove("PASSGAME_BUDGET")
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let got = String::from_utf8(out.stdout).unwrap();
    let want = golden("gp_table_12.csv");
    let differing = got
        .lines()
        .skip(1)
        .zip(want.lines().skip(1))
        .flat_map(|(a, b)| a.split(',').skip(1).zip(b.split(',').skip(1)).filter(|(x, y)| x != y))
        .count();
    let pass = out.status.success() && got == want && elapsed < Duration::from_secs(1);
    Verdict::new(
        pass,
        format!("169 cells, {differing} differ, byte-exact {}, {}", got == want, secs(elapsed)),
    )
}

fn table2() -> Verdict {
    let start = Instant::now();
    let h = HFunction::FloorDiv { k: 1 };
    let table = cb2_table(&h, 15, &mut SgCache::new()).unwrap();
    let mut compared = 0;
    let mut cells = Vec::new();
    let mut details = Vec::new();
    for (y, row) in PUBLISHED_CB2.iter().enumerate() {
        for (z, cell) in row.split(',').enumerate() {
            let (y, z) = (y as u32, z as u32);
            if y > h.eval(z) {
                continue;
            }
            compared += 1;
            let published: Option<u32> = cell.parse().ok();
            let computed = table.get(y, z);
            if published != computed {
                cells.push((y, z));
                details.push(format!("(y={y},z={z}) published {cell:?} computed {computed:?}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let mut detail = format!("{compared} feasible cells, {} differ, {}", cells.len(), secs(elapsed));
    if !details.is_empty() {
        detail.push_str(": ");
        detail.push_str(&details.join("; "));
    }
    Verdict {
        pass: cells.is_empty() && elapsed < Duration::from_secs(1),
        detail,
        cells,
    }
}

fn run_suite(suite: Suite, cfg: &VerifyConfig) -> VerificationReport {
    verify::run(suite, cfg).unwrap_or_else(|e| panic!("{suite}: {e}"))
}

fn lemma5() -> Verdict {
    let r = run_suite(Suite::Lemma5, &VerifyConfig { max: 200, ..VerifyConfig::default() });
    Verdict::new(
        r.passed() && r.elapsed < Duration::from_secs(30),
        format!("{}, {}", suite_line(&r), secs(r.elapsed)),
    )
}

fn theorem5() -> Verdict {
    let r = run_suite(Suite::Thm5, &VerifyConfig { choco3_bound: 16, ..VerifyConfig::default() });
    let witness = r.notes.iter().find(|n| n.contains("witness")).cloned();
    let ns_failed = r.notes.iter().any(|n| n.starts_with("ns_check_f[f1]: fail"));
    Verdict::new(
        r.passed() && witness.is_some() && ns_failed,
        format!("{}; {}", suite_line(&r), r.notes.join("; ")),
    )
}

fn theorem6() -> Verdict {
    let cfg = VerifyConfig { trials: 1000, seed: 42, ..VerifyConfig::default() };
    let r = run_suite(Suite::Thm6, &cfg);
    let c = run_suite(Suite::Counterexample, &cfg);
    Verdict::new(
        r.passed() && c.passed() && !c.notes.is_empty(),
        format!(
            "{}, {}; {}; {}",
            suite_line(&r),
            secs(r.elapsed),
            suite_line(&c),
            c.notes.first().cloned().unwrap_or_default()
        ),
    )
}

fn stair_corollaries() -> Verdict {
    let cfg = VerifyConfig { stair_bound: 20, ..VerifyConfig::default() };
    let reports: Vec<_> = [Suite::Cor2, Suite::Cor3, Suite::Cor4].map(|s| run_suite(s, &cfg)).into();
    let total: Duration = reports.iter().map(|r| r.elapsed).sum();
    let lines: Vec<_> = reports.iter().map(suite_line).collect();
    Verdict::new(
        reports.iter().all(VerificationReport::passed) && total < Duration::from_secs(60),
        format!("{}, {} for all three shapes", lines.join("; "), secs(total)),
    )
}

fn bar_lemmas() -> Verdict {
    let cfg = VerifyConfig { z_max: 512, cb2_z_bound: 64, ..VerifyConfig::default() };
    let reports: Vec<_> = [Suite::Lemma1, Suite::Lemma2, Suite::Lemma4].map(|s| run_suite(s, &cfg)).into();
    let lines: Vec<_> = reports.iter().map(suite_line).collect();
    Verdict::new(reports.iter().all(VerificationReport::passed), lines.join("; "))
}

fn classification() -> Verdict {
    let mut cl = Classifier::new();
    let mut failures = Vec::new();

    let nim = Nim::new();
    for m in 0..=20 {
        let g = nim.pile(m);
        if !cl.is_one_move(&nim, &g).unwrap().verdict || !cl.is_sg_decreasing(&nim, &g).unwrap().verdict {
            failures.push(format!("nim {m} not certified"));
        }
    }

    let bar = Choco2::new(HFunction::FloorDiv { k: 1 });
    let g = bar.key(Choco2Position { y: 1, z: 3 });
    let one = cl.is_one_move(&bar, &g).unwrap();
    let dec = cl.is_sg_decreasing(&bar, &g).unwrap();
    let expected = Witness::Move {
        from: g.clone(),
        to: bar.key(Choco2Position { y: 1, z: 2 }),
    };
    if !one.verdict || dec.verdict || dec.witness.as_ref() != Some(&expected) {
        failures.push(format!("choco2 (1,3): one-move {} sg-decreasing {:?}", one.verdict, dec.witness));
    }
    if !dec.recheck(&bar, &mut SgCache::new()).unwrap() {
        failures.push("choco2 (1,3) witness does not recheck".into());
    }

    let two = TwoPileNim::new();
    let g = two.position(&[1, 1]).unwrap();
    let one = cl.is_one_move(&two, &g).unwrap();
    if one.verdict || one.witness != Some(Witness::Follower(g)) {
        failures.push("nim2-single (1,1) certified one-move".into());
    }

    // containment over a spread of positions
    let mut positions: Vec<(Arc<dyn Ruleset>, PositionKey)> = Vec::new();
    let nim_rule: Arc<dyn Ruleset> = Arc::new(Nim::new());
    for m in 0..=20 {
        positions.push((nim_rule.clone(), nim.pile(m)));
    }
    let two_rule: Arc<dyn Ruleset> = Arc::new(TwoPileNim::new());
    for a in 0..=6u64 {
        for b in 0..=6u64 {
            positions.push((two_rule.clone(), two.position(&[a, b]).unwrap()));
        }
    }
    for h in verify::builtin_ns_shapes() {
        let bar = Choco2::new(h.clone());
        let rule: Arc<dyn Ruleset> = Arc::new(bar.clone());
        for z in 0..=20 {
            for y in 0..=h.eval(z) {
                positions.push((rule.clone(), bar.key(Choco2Position { y, z })));
            }
        }
        let stair = Stair::new(h.clone());
        let rule: Arc<dyn Ruleset> = Arc::new(stair.clone());
        for x in 0..=5 {
            for z in 0..=5 {
                for y in 0..=h.eval(z) {
                    for pass in [false, true] {
                        positions.push((rule.clone(), stair.key(StairPosition { x, y, z, pass })));
                    }
                }
            }
        }
    }
    for f in [FFunction::XPlusZOver3, FFunction::HalfZ] {
        let cube = Choco3::new(f.clone());
        let rule: Arc<dyn Ruleset> = Arc::new(cube.clone());
        for x in 0..=6 {
            for z in 0..=6 {
                for y in 0..=f.eval(x, z) {
                    positions.push((rule.clone(), cube.key(Choco3Position { x, y, z })));
                }
            }
        }
    }
    let mut decreasing = 0;
    for (r, g) in &positions {
        let dec = cl.is_sg_decreasing(r.as_ref(), g).unwrap().verdict;
        let one = cl.is_one_move(r.as_ref(), g).unwrap().verdict;
        decreasing += dec as usize;
        if dec && !one {
            failures.push(format!("{g} is SG-decreasing but not one-move"));
        }
    }
    let mut detail = format!(
        "containment checked on {} positions ({decreasing} SG-decreasing); witness (1,3) -> (1,2)",
        positions.len()
    );
    if !failures.is_empty() {
        detail = format!("{detail}; {}", failures.join("; "));
    }
    Verdict::new(failures.is_empty(), detail)
}

fn stair_speed() -> Verdict {
    let h = HFunction::FloorDiv { k: 1 };
    let mut queries = Vec::new();
    for x in (0..=200).step_by(25) {
        for z in (0..=200).step_by(25) {
            for y in 0..=h.eval(z).min(3) {
                for pass in [false, true] {
                    queries.push(StairPosition { x, y, z, pass });
                }
            }
        }
    }
    let table_max = queries.iter().map(|s| s.x.max(s.y ^ s.z)).max().unwrap();
    let table_start = Instant::now();
    let table = gp_table(table_max, &mut SgCache::new()).unwrap();
    let table_time = table_start.elapsed();

    let start = Instant::now();
    let mut cache = SgCache::new();
    let fast: Vec<u32> = queries
        .iter()
        .map(|&s| stair_sg_fast(&h, s, &mut cache, &table).unwrap())
        .collect();
    let fast_time = start.elapsed();

    let start = Instant::now();
    let mut cache = SgCache::new();
    let brute: Vec<u32> = queries.iter().map(|&s| stair_sg(&h, s, &mut cache).unwrap()).collect();
    let brute_time = start.elapsed();

    let speedup = brute_time.as_secs_f64() / fast_time.as_secs_f64().max(1e-9);
    Verdict::new(
        fast == brute && speedup >= 10.0,
        format!(
            "{} positions with x, z <= 200 agree: {}; brute force {}, fast path {:.4}s ({speedup:.0}x); table up to {table_max} built once in {}",
            queries.len(),
            fast == brute,
            secs(brute_time),
            fast_time.as_secs_f64(),
            secs(table_time)
        ),
    )
}

fn main() -> ExitCode {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [Criterion; 9] = [
        (1, "nim-with-pass table reproduction", table3),
        (2, "two-dimensional bar table reproduction", table2),
        (3, "closed forms for values 0, 1, 2 of two-pile nim with pass", lemma5),
        (4, "three-dimensional bars: NS shapes give XOR, F1 fails", theorem5),
        (5, "one-pass compounds of one-move games via nim image", theorem6),
        (6, "stair game with pass: membership predicates", stair_corollaries),
        (7, "two-dimensional bar bounds and small-value classification", bar_lemmas),
        (8, "one-move and SG-decreasing classification", classification),
        (9, "stair fast path at least 10x faster than brute force", stair_speed),
    ];
    let mut fatal = 0;
    for (n, name, check) in criteria {
        let v = check();
        let status = if v.pass { "PASS" } else { "FAIL" };
        let known = !v.pass && n == 2 && v.cells == KNOWN_TABLE_ERRATA;
        let suffix = if known {
            " [known erratum in the published table: cells transposed in row 2]"
        } else {
            ""
        };
        println!("{status} criterion {n}: {name}: {}{suffix}", v.detail);
        if !v.pass && (strict || !known) {
            fatal += 1;
        }
    }
    if fatal > 0 {
        println!("{fatal} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
