//! Exhaustive and seeded verification sweeps.
//!
//! Each [`Suite`] compares a closed form or fast path against brute-force
//! search over a bounded region and collects every disagreement as a
//! [`Mismatch`]. Reports are deterministic for a given [`VerifyConfig`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chocolate::{
    choco2_sg, choco3_sg, h_bound, lemma16_check, ns_check_f, ns_check_h, small_sg_classify, Choco2,
    Choco2Position, Choco3, Choco3Position, FFunction, HFunction,
};
use crate::classify::Classifier;
use crate::compound::{
    disjunctive_sg_fast, disjunctive_sg_oracle, homomorphism_counterexample_with, hypergraph_sg_fast,
    hypergraph_sg_oracle, one_pass_sg_fast, one_pass_sg_oracle, Component, Compound, CompoundState,
    Hypergraph,
};
use crate::error::{GameError, Result};
use crate::game::{self, outcome_by_minimax, Outcome, PositionKey, Ruleset, SgCache, DEFAULT_BUDGET};
use crate::nim::{Nim, TwoPileNim};
use crate::nim_pass::{gp_is_one, gp_is_two, gp_is_zero, gp_table};
use crate::stair::{in_a, in_b, in_c, stair_sg, Stair, StairPosition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Thm1,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Lemma1,
    Lemma2,
    Lemma4,
    Lemma5,
    Cor1,
    Cor2,
    Cor3,
    Cor4,
    Counterexample,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Thm1,
        Suite::Thm3,
        Suite::Thm4,
        Suite::Thm5,
        Suite::Thm6,
        Suite::Lemma1,
        Suite::Lemma2,
        Suite::Lemma4,
        Suite::Lemma5,
        Suite::Cor1,
        Suite::Cor2,
        Suite::Cor3,
        Suite::Cor4,
        Suite::Counterexample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Thm3 => "thm3",
            Suite::Thm4 => "thm4",
            Suite::Thm5 => "thm5",
            Suite::Thm6 => "thm6",
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Lemma4 => "lemma4",
            Suite::Lemma5 => "lemma5",
            Suite::Cor1 => "cor1",
            Suite::Cor2 => "cor2",
            Suite::Cor3 => "cor3",
            Suite::Cor4 => "cor4",
            Suite::Counterexample => "counterexample",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                GameError::Precondition(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Bounds and seed for a verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Largest pile in the two-pile nim-with-pass sweep.
    pub max: u32,
    /// Number of random compounds in the one-pass trials.
    pub trials: u32,
    pub seed: u64,
    /// Column bound for the single-variable shape sweeps.
    pub z_max: u32,
    /// Largest block exponent in NS checks.
    pub i_max: u32,
    /// Coordinate bound for three-dimensional bars.
    pub choco3_bound: u32,
    /// Bound on `x` and `z` for the stair sweeps.
    pub stair_bound: u32,
    /// Column bound for two-dimensional bar sweeps.
    pub cb2_z_bound: u32,
    pub budget: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max: 200,
            trials: 1000,
            seed: 42,
            z_max: 512,
            i_max: 10,
            choco3_bound: 16,
            stair_bound: 20,
            cb2_z_bound: 64,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// One disagreement: `case` names what was checked, `input` the coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub suite: String,
    pub case: String,
    pub input: Vec<u32>,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub suite: Suite,
    pub cases: u64,
    /// Sorted by `(case, input)`.
    pub mismatches: Vec<Mismatch>,
    pub elapsed: Duration,
    /// Witnesses and other findings worth printing.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// The shapes known to have the NS-property.
pub fn builtin_ns_shapes() -> Vec<HFunction> {
    vec![
        HFunction::FloorDiv { k: 1 },
        HFunction::FloorDiv { k: 2 },
        HFunction::LogStep,
    ]
}

struct Tally {
    suite: Suite,
    cases: u64,
    mismatches: Vec<Mismatch>,
    notes: Vec<String>,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Tally {
            suite,
            cases: 0,
            mismatches: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check<T: Into<Value> + PartialEq>(&mut self, case: impl fmt::Display, input: &[u32], expected: T, actual: T) {
        self.cases += 1;
        if expected != actual {
            self.mismatches.push(Mismatch {
                suite: self.suite.name().to_string(),
                case: case.to_string(),
                input: input.to_vec(),
                expected: expected.into(),
                actual: actual.into(),
            });
        }
    }

    fn finish(mut self, started: Instant) -> VerificationReport {
        self.mismatches
            .sort_by(|a, b| (&a.case, &a.input).cmp(&(&b.case, &b.input)));
        VerificationReport {
            suite: self.suite,
            cases: self.cases,
            mismatches: self.mismatches,
            elapsed: started.elapsed(),
            notes: self.notes,
        }
    }
}

/// Runs one suite. Resource errors (budget, cycles) abort the run; every
/// other disagreement is reported as a mismatch.
pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut t = Tally::new(suite);
    let mut cache = SgCache::with_budget(cfg.budget);
    match suite {
        Suite::Thm1 => thm1(&mut t, cfg, &mut cache)?,
        Suite::Thm3 => thm3(&mut t, &mut cache)?,
        Suite::Thm4 => thm4(&mut t, cfg, &mut cache)?,
        Suite::Thm5 => thm5(&mut t, cfg, &mut cache)?,
        Suite::Thm6 => thm6(&mut t, cfg, &mut cache)?,
        Suite::Lemma1 => lemma1(&mut t, cfg),
        Suite::Lemma2 => lemma2(&mut t, cfg),
        Suite::Lemma4 => lemma4(&mut t, cfg, &mut cache)?,
        Suite::Lemma5 => lemma5(&mut t, cfg, &mut cache)?,
        Suite::Cor1 => cor1(&mut t, cfg, &mut cache)?,
        Suite::Cor2 | Suite::Cor3 | Suite::Cor4 => stair_corollary(&mut t, cfg, &mut cache)?,
        Suite::Counterexample => counterexample(&mut t, &mut cache)?,
    }
    Ok(t.finish(started))
}

fn outcome_label(o: Outcome) -> String {
    o.to_string()
}

fn thm1(t: &mut Tally, cfg: &VerifyConfig, cache: &mut SgCache) -> Result<()> {
    let mut memo = FxHashMap::default();
    let mut check = |t: &mut Tally, r: &dyn Ruleset, g: PositionKey| -> Result<()> {
        let by_search = outcome_by_minimax(r, &g, &mut memo, cfg.budget)?;
        let by_value = game::outcome(r, &g, cache)?;
        t.check(r.id(), g.payload(), outcome_label(by_search), outcome_label(by_value));
        Ok(())
    };

    let nim = Nim::new();
    for m in 0..=64 {
        check(t, &nim, nim.pile(m))?;
    }
    let two = TwoPileNim::new();
    for a in 0..=12 {
        for b in 0..=12 {
            check(t, &two, two.position(&[a, b])?)?;
        }
    }
    for h in builtin_ns_shapes() {
        let bar = Choco2::new(h.clone());
        for z in 0..=cfg.cb2_z_bound {
            for y in 0..=h.eval(z) {
                check(t, &bar, bar.key(Choco2Position { y, z }))?;
            }
        }
        let stair = Stair::new(h.clone());
        for x in 0..=8 {
            for z in 0..=8 {
                for y in 0..=h.eval(z) {
                    for pass in [false, true] {
                        check(t, &stair, stair.key(StairPosition { x, y, z, pass }))?;
                    }
                }
            }
        }
    }
    for f in [FFunction::XPlusZOver3, FFunction::HalfZ] {
        let bar = Choco3::new(f.clone());
        let b = cfg.choco3_bound.min(10);
        for x in 0..=b {
            for z in 0..=b {
                for y in 0..=f.eval(x, z) {
                    check(t, &bar, bar.key(Choco3Position { x, y, z }))?;
                }
            }
        }
    }
    let nim_rule: Arc<dyn Ruleset> = Arc::new(Nim::new());
    let one_pass = Compound::one_pass(vec![nim_rule.clone(), nim_rule.clone(), nim_rule]);
    for a in 0..=5 {
        for b in 0..=5 {
            for c in 0..=5 {
                let key = one_pass.key(&[nim.pile(a), nim.pile(b), nim.pile(c)], true)?;
                check(t, &one_pass, key)?;
            }
        }
    }
    Ok(())
}

/// Nim piles `0..=nim_max` and floor-div:1 bar positions with `z <= bar_z`.
fn palette(nim_max: u32, bar_z: u32) -> Result<Vec<Component>> {
    let nim: Arc<dyn Ruleset> = Arc::new(Nim::new());
    let h = HFunction::FloorDiv { k: 1 };
    let bar = Choco2::new(h.clone());
    let mut out = Vec::new();
    for m in 0..=nim_max {
        out.push(Component::new(nim.clone(), Nim::new().pile(m))?);
    }
    let bar_rule: Arc<dyn Ruleset> = Arc::new(bar.clone());
    for z in 0..=bar_z {
        for y in 0..=h.eval(z) {
            out.push(Component::new(bar_rule.clone(), bar.key(Choco2Position { y, z }))?);
        }
    }
    Ok(out)
}

/// Multisets of size `k` drawn from `0..n`, as nondecreasing index tuples.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

fn compound_input(comps: &[Component]) -> (String, Vec<u32>) {
    let names: Vec<String> = comps.iter().map(|c| c.ruleset().id().to_string()).collect();
    let coords = comps.iter().flat_map(|c| c.position().payload().to_vec()).collect();
    (names.join("+"), coords)
}

fn thm3(t: &mut Tally, cache: &mut SgCache) -> Result<()> {
    let mut pal = Vec::new();
    for c in palette(8, 8)? {
        if game::sg(c.ruleset().as_ref(), c.position(), cache)? <= 8 {
            pal.push(c);
        }
    }
    for k in 1..=3 {
        for idx in multisets(pal.len(), k) {
            let comps: Vec<Component> = idx.iter().map(|&i| pal[i].clone()).collect();
            let state = CompoundState::new(comps, false)?;
            let oracle = disjunctive_sg_oracle(&state, cache)?;
            let fast = disjunctive_sg_fast(&state, cache)?;
            let (case, input) = compound_input(state.components());
            t.check(format!("sum({case})"), &input, oracle, fast);
        }
    }
    Ok(())
}

/// All hypergraphs on two vertices plus a fixed selection on three.
fn test_hypergraphs() -> Result<Vec<Hypergraph>> {
    let subsets2: [&[usize]; 3] = [&[1], &[2], &[1, 2]];
    let mut out = Vec::new();
    for mask in 1u32..8 {
        let edges = (0..3)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| subsets2[b].to_vec())
            .collect();
        out.push(Hypergraph::new(2, edges)?);
    }
    let three: [&[&[usize]]; 6] = [
        &[&[1], &[2], &[3]],
        &[&[1, 2, 3]],
        &[&[1, 2], &[2, 3]],
        &[&[1], &[2, 3]],
        &[&[1, 2], &[1, 3], &[2, 3]],
        &[&[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]],
    ];
    for edges in three {
        out.push(Hypergraph::new(3, edges.iter().map(|e| e.to_vec()).collect())?);
    }
    Ok(out)
}

fn thm4(t: &mut Tally, cfg: &VerifyConfig, cache: &mut SgCache) -> Result<()> {
    let mut cl = Classifier::new().with_budget(cfg.budget);
    let mut certified = |nim_max, bar_z| -> Result<Vec<Component>> {
        let mut keep = Vec::new();
        for c in palette(nim_max, bar_z)? {
            if cl.is_sg_decreasing(c.ruleset().as_ref(), c.position())?.verdict {
                keep.push(c);
            }
        }
        Ok(keep)
    };
    let wide = certified(6, 10)?;
    let narrow = certified(3, 6)?;
    t.notes.push(format!(
        "{} SG-decreasing components for 2-vertex hypergraphs, {} for 3-vertex",
        wide.len(),
        narrow.len()
    ));
    let mut cl = Classifier::new().with_budget(cfg.budget);
    for h in test_hypergraphs()? {
        let pal = if h.vertex_count() == 2 { &wide } else { &narrow };
        for idx in multisets(pal.len(), h.vertex_count()) {
            let comps: Vec<Component> = idx.iter().map(|&i| pal[i].clone()).collect();
            let oracle = hypergraph_sg_oracle(&h, &comps, cache)?;
            let fast = hypergraph_sg_fast(&h, &comps, cache, Some(&mut cl))?;
            let (case, input) = compound_input(&comps);
            t.check(format!("hyper{h}({case})"), &input, oracle, fast);
        }
    }
    Ok(())
}

fn thm5(t: &mut Tally, cfg: &VerifyConfig, cache: &mut SgCache) -> Result<()> {
    let b = cfg.choco3_bound;
    let mut forward: Vec<FFunction> = builtin_ns_shapes().into_iter().map(FFunction::from_h).collect();
    forward.push(FFunction::HalfZ);
    for f in forward {
        let report = ns_check_f(&f, b, cfg.z_max.max(b), cfg.i_max);
        t.check(format!("ns_check_f[{f}]"), &[], true, report.passed());
        for x in 0..=b {
            for z in 0..=b {
                for y in 0..=f.eval(x, z) {
                    let p = Choco3Position { x, y, z };
                    t.check(format!("choco3[{f}]"), &[x, y, z], x ^ y ^ z, choco3_sg(&f, p, cache)?);
                }
            }
        }
    }

    // The converse: a shape failing the NS check must have a position whose
    // value is not the XOR of its coordinates.
    let f = FFunction::XPlusZOver3;
    let report = ns_check_f(&f, b, cfg.z_max.max(b), cfg.i_max);
    t.check(format!("ns_check_f[{f}]"), &[], false, report.passed());
    t.notes.push(format!("ns_check_f[{f}]: {}", report.verdict));
    let mut witness = None;
    'search: for x in 0..=b {
        for z in 0..=b {
            for y in 0..=f.eval(x, z) {
                let v = choco3_sg(&f, Choco3Position { x, y, z }, cache)?;
                if v != x ^ y ^ z {
                    witness = Some((x, y, z, v));
                    break 'search;
                }
            }
        }
    }
    t.cases += 1;
    match witness {
        Some((x, y, z, v)) => t.notes.push(format!(
            "choco3[{f}] witness ({x},{y},{z}): SG {v}, XOR {}",
            x ^ y ^ z
        )),
        None => t.mismatches.push(Mismatch {
            suite: t.suite.name().to_string(),
            case: format!("choco3[{f}] converse"),
            input: vec![b],
            expected: json!("a position with SG != x^y^z"),
            actual: json!("none found"),
        }),
    }
    Ok(())
}

fn thm6(t: &mut Tally, cfg: &VerifyConfig, cache: &mut SgCache) -> Result<()> {
    let mut cl = Classifier::new().with_budget(cfg.budget);
    let pal = palette(15, 15)?;
    let (nims, bars) = pal.split_at(16);
    let mut compare = |t: &mut Tally, cl: &mut Classifier, comps: Vec<Component>, pass: bool| -> Result<()> {
        let state = CompoundState::new(comps, pass)?;
        let oracle = one_pass_sg_oracle(&state, cache)?;
        let fast = one_pass_sg_fast(&state, cache, Some(cl))?;
        let (case, mut input) = compound_input(state.components());
        input.insert(0, pass as u32);
        t.check(format!("one-pass({case})"), &input, oracle, fast);
        Ok(())
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let n = rng.random_range(2..=4);
        let mut comps: Vec<Component> = (0..n)
            .map(|_| {
                if rng.random_bool(0.5) {
                    nims[rng.random_range(0..nims.len())].clone()
                } else {
                    bars[rng.random_range(0..bars.len())].clone()
                }
            })
            .collect();
        // Component order does not change the game; sorting lets trials share
        // one compound ruleset per multiset of component kinds.
        comps.sort_by(|a, b| (a.ruleset().id(), a.position()).cmp(&(b.ruleset().id(), b.position())));
        compare(t, &mut cl, comps, true)?;
    }

    for nim in nims.iter().take(13) {
        for bar in bars {
            for pass in [false, true] {
                compare(t, &mut cl, vec![nim.clone(), bar.clone()], pass)?;
            }
        }
    }
    Ok(())
}

fn lemma1(t: &mut Tally, cfg: &VerifyConfig) {
    for h in builtin_ns_shapes() {
        let verdict = ns_check_h(&h, cfg.z_max, cfg.i_max);
        t.check(format!("ns_check_h[{h}]"), &[], true, verdict.passed());
        for z in 1..=cfg.z_max {
            t.check(format!("h_bound[{h}]"), &[z], true, h_bound(&h, z));
        }
    }
}

fn lemma2(t: &mut Tally, cfg: &VerifyConfig) {
    for h in builtin_ns_shapes() {
        for z in 16..=cfg.z_max {
            t.check(format!("lemma16_check[{h}]"), &[z], true, lemma16_check(&h, z));
        }
    }
}

fn lemma4(t: &mut Tally, cfg: &VerifyConfig, cache: &mut SgCache) -> Result<()> {
    for h in builtin_ns_shapes() {
        let mut cells = Vec::new();
        for z in 0..=cfg.cb2_z_bound {
            for y in 0..=h.eval(z) {
                cells.push((y, z, choco2_sg(&h, Choco2Position { y, z }, cache)?));
            }
        }
        for v in 0..=8 {
            let listed = small_sg_classify(v)?;
            for &(y, z, sg) in &cells {
                t.check(format!("small_sg_classify[{h}]({v})"), &[y, z], sg == v, listed.contains(&(y, z)));
            }
        }
    }
    Ok(())
}

fn lemma5(t: &mut Tally, cfg: &VerifyConfig, cache: &mut SgCache) -> Result<()> {
    let table = gp_table(cfg.max, cache)?;
    for (x, row) in table.rows().iter().enumerate() {
        for (y, &v) in row.iter().enumerate() {
            let (x, y) = (x as u32, y as u32);
            t.check("gp_is_zero", &[x, y], v == 0, gp_is_zero(x, y));
            t.check("gp_is_one", &[x, y], v == 1, gp_is_one(x, y));
            t.check("gp_is_two", &[x, y], v == 2, gp_is_two(x, y));
        }
    }
    Ok(())
}

fn cor1(t: &mut Tally, cfg: &VerifyConfig, cache: &mut SgCache) -> Result<()> {
    for h in builtin_ns_shapes() {
        for z in 0..=cfg.cb2_z_bound {
            for y in 0..=h.eval(z) {
                t.check(format!("choco2[{h}]"), &[y, z], y ^ z, choco2_sg(&h, Choco2Position { y, z }, cache)?);
            }
        }
    }
    Ok(())
}

fn stair_corollary(t: &mut Tally, cfg: &VerifyConfig, cache: &mut SgCache) -> Result<()> {
    let (value, name, pred): (u32, &str, fn(StairPosition) -> bool) = match t.suite {
        Suite::Cor2 => (0, "in_a", in_a),
        Suite::Cor3 => (1, "in_b", in_b),
        _ => (2, "in_c", in_c),
    };
    let b = cfg.stair_bound;
    for h in builtin_ns_shapes() {
        for x in 0..=b {
            for z in 0..=b {
                for y in 0..=h.eval(z) {
                    for pass in [false, true] {
                        let s = StairPosition { x, y, z, pass };
                        let sg = stair_sg(&h, s, cache)?;
                        t.check(format!("{name}[{h}]"), &[x, y, z, pass as u32], sg == value, pred(s));
                    }
                }
            }
        }
    }
    Ok(())
}

fn counterexample(t: &mut Tally, cache: &mut SgCache) -> Result<()> {
    for extra in 0..=2 {
        let state = homomorphism_counterexample_with(extra);
        let oracle = one_pass_sg_oracle(&state, cache)?;
        let fast = one_pass_sg_fast(&state, cache, None)?;
        let (case, input) = compound_input(state.components());
        t.cases += 1;
        if oracle != fast {
            t.notes.push(format!(
                "one-pass({case}) at {input:?} with pass: brute force {oracle}, nim image {fast}"
            ));
        } else {
            t.mismatches.push(Mismatch {
                suite: t.suite.name().to_string(),
                case: format!("one-pass({case})"),
                input,
                expected: json!("nim image differs from brute force"),
                actual: json!(fast),
            });
        }
        // The certified fast path must refuse the non-one-move component.
        let refused = matches!(
            one_pass_sg_fast(&state, cache, Some(&mut Classifier::new())),
            Err(GameError::Precondition(_))
        );
        let (case, input) = compound_input(state.components());
        t.check(format!("certified one-pass({case})"), &input, true, refused);
    }
    Ok(())
}
