//! Generic impartial-game engine: positions, rulesets, memoized SG values.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{BuildHasher, Hash, Hasher};
use std::sync::Arc;

use rustc_hash::{FxBuildHasher, FxHashMap, FxHashSet};
use smallvec::SmallVec;

use crate::error::{GameError, Result};

/// Default cap on the number of positions a single evaluation may expand.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Ruleset-specific coordinates of a position. Inline up to four-part compounds.
pub type Payload = SmallVec<[u32; 14]>;

/// Symbolic name of a ruleset. Cheap to clone and to hash.
#[derive(Clone)]
pub struct RulesetId {
    name: Arc<str>,
    hash: u64,
}

impl RulesetId {
    pub fn new(name: impl AsRef<str>) -> Self {
        let name = name.as_ref();
        RulesetId {
            hash: FxBuildHasher.hash_one(name),
            name: Arc::from(name),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.name
    }
}

impl PartialEq for RulesetId {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.name, &other.name) || (self.hash == other.hash && self.name == other.name)
    }
}

impl Eq for RulesetId {}

impl Hash for RulesetId {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.hash);
    }
}

impl PartialOrd for RulesetId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RulesetId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name.cmp(&other.name)
    }
}

impl fmt::Display for RulesetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for RulesetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.name)
    }
}

/// Canonical encoding of a position: ruleset name plus coordinates.
///
/// Two keys are equal exactly when both the ruleset and the payload are equal,
/// so every ruleset must use a single encoding per position.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionKey {
    ruleset: RulesetId,
    payload: Payload,
}

impl PositionKey {
    /// Builds a key, rejecting coordinates that do not fit in 32 bits.
    pub fn new(ruleset: RulesetId, coords: &[u64]) -> Result<Self> {
        let payload = coords
            .iter()
            .map(|&c| u32::try_from(c).map_err(|_| GameError::CoordinateOverflow { value: c }))
            .collect::<Result<Payload>>()?;
        Ok(PositionKey { ruleset, payload })
    }

    pub fn from_payload(ruleset: RulesetId, payload: Payload) -> Self {
        PositionKey { ruleset, payload }
    }

    pub fn ruleset(&self) -> &RulesetId {
        &self.ruleset
    }

    pub fn payload(&self) -> &[u32] {
        &self.payload
    }
}

impl fmt::Display for PositionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.ruleset)?;
        for (i, c) in self.payload.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for PositionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A move generator for one impartial game.
///
/// `options` must return each option once, and the option relation must be
/// well-founded. A position is terminal exactly when it has no options.
pub trait Ruleset: Send + Sync {
    fn id(&self) -> &RulesetId;

    /// Checks the ruleset's invariants on a payload.
    fn validate(&self, payload: &[u32]) -> Result<()>;

    /// Options of the position with this payload.
    fn options(&self, payload: &[u32]) -> Vec<Payload>;

    fn is_terminal(&self, payload: &[u32]) -> bool {
        self.options(payload).is_empty()
    }

    /// Known-by-proof answer to "is this position a one-move game", if any.
    fn analytic_one_move(&self, _payload: &[u32]) -> Option<bool> {
        None
    }

    /// Known-by-proof answer to "is this position SG-decreasing", if any.
    fn analytic_sg_decreasing(&self, _payload: &[u32]) -> Option<bool> {
        None
    }

    /// Validated key for the given coordinates.
    fn position(&self, coords: &[u64]) -> Result<PositionKey> {
        let key = PositionKey::new(self.id().clone(), coords)?;
        self.validate(key.payload())?;
        Ok(key)
    }
}

/// Keys of the options of `g` under `r`.
pub fn option_keys(r: &dyn Ruleset, g: &PositionKey) -> Vec<PositionKey> {
    debug_assert_eq!(g.ruleset(), r.id(), "position {g} does not belong to {}", r.id());
    r.options(g.payload())
        .into_iter()
        .map(|p| PositionKey::from_payload(r.id().clone(), p))
        .collect()
}

pub fn is_terminal(r: &dyn Ruleset, g: &PositionKey) -> bool {
    r.is_terminal(g.payload())
}

/// Least nonnegative integer absent from `values`. Duplicates are allowed.
pub fn mex(values: &[u32]) -> u32 {
    // The result never exceeds the number of values.
    let mut seen = vec![false; values.len() + 1];
    for &v in values {
        if (v as usize) < seen.len() {
            seen[v as usize] = true;
        }
    }
    seen.iter().position(|&s| !s).unwrap_or(values.len()) as u32
}

/// Insert-only memo of SG values, keyed by position.
///
/// One cache may hold positions of many rulesets at once since keys carry the
/// ruleset name. A cache is confined to a single worker; parallel sweeps use
/// one cache per worker.
///
/// The cache also carries the expansion budget applied by [`sg`].
#[derive(Debug, Clone)]
pub struct SgCache {
    values: FxHashMap<PositionKey, u32>,
    budget: usize,
}

impl Default for SgCache {
    fn default() -> Self {
        SgCache {
            values: FxHashMap::default(),
            budget: DEFAULT_BUDGET,
        }
    }
}

impl SgCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: usize) -> Self {
        SgCache {
            values: FxHashMap::default(),
            budget,
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn get(&self, g: &PositionKey) -> Option<u32> {
        self.values.get(g).copied()
    }

    /// Records a value. Re-inserting a different value for a known key is an
    /// internal error and panics.
    pub fn insert(&mut self, g: PositionKey, value: u32) {
        use std::collections::hash_map::Entry;
        match self.values.entry(g) {
            Entry::Occupied(e) => {
                let old = *e.get();
                assert_eq!(old, value, "SG cache conflict at {}: {old} vs {value}", e.key());
            }
            Entry::Vacant(e) => {
                e.insert(value);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub(crate) trait Memo<T: Copy> {
    fn lookup(&self, g: &PositionKey) -> Option<T>;
    fn store(&mut self, g: PositionKey, value: T);
}

impl Memo<u32> for SgCache {
    fn lookup(&self, g: &PositionKey) -> Option<u32> {
        self.get(g)
    }
    fn store(&mut self, g: PositionKey, value: u32) {
        self.insert(g, value)
    }
}

impl Memo<bool> for FxHashMap<PositionKey, bool> {
    fn lookup(&self, g: &PositionKey) -> Option<bool> {
        self.get(g).copied()
    }
    fn store(&mut self, g: PositionKey, value: bool) {
        self.insert(g, value);
    }
}

struct Frame<T> {
    key: PositionKey,
    options: Vec<PositionKey>,
    next: usize,
    values: Vec<T>,
}

impl<T> Frame<T> {
    fn new(r: &dyn Ruleset, key: PositionKey) -> Self {
        let options = option_keys(r, &key);
        Frame {
            values: Vec::with_capacity(options.len()),
            key,
            options,
            next: 0,
        }
    }
}

/// Post-order evaluation over the game tree below `root` with an explicit
/// stack. `combine` receives the values of all options of a position.
pub(crate) fn evaluate<T, M>(
    r: &dyn Ruleset,
    root: &PositionKey,
    memo: &mut M,
    budget: usize,
    combine: impl Fn(&[T]) -> T,
) -> Result<T>
where
    T: Copy,
    M: Memo<T>,
{
    if let Some(v) = memo.lookup(root) {
        return Ok(v);
    }
    if budget == 0 {
        return Err(GameError::BudgetExceeded { budget });
    }
    let mut expanded = 1usize;
    let mut on_stack: FxHashSet<PositionKey> = FxHashSet::default();
    on_stack.insert(root.clone());
    let mut stack = vec![Frame::<T>::new(r, root.clone())];

    loop {
        let top = stack.last_mut().expect("stack is nonempty");
        if top.next < top.options.len() {
            let child = &top.options[top.next];
            top.next += 1;
            if let Some(v) = memo.lookup(child) {
                top.values.push(v);
                continue;
            }
            if on_stack.contains(child) {
                return Err(GameError::Cycle {
                    position: child.to_string(),
                });
            }
            expanded += 1;
            if expanded > budget {
                return Err(GameError::BudgetExceeded { budget });
            }
            let child = child.clone();
            on_stack.insert(child.clone());
            stack.push(Frame::new(r, child));
        } else {
            let frame = stack.pop().expect("stack is nonempty");
            let v = combine(&frame.values);
            on_stack.remove(&frame.key);
            memo.store(frame.key, v);
            match stack.last_mut() {
                Some(parent) => parent.values.push(v),
                None => return Ok(v),
            }
        }
    }
}

/// Sprague-Grundy value of `g`, expanding at most `cache.budget()` new positions.
pub fn sg(r: &dyn Ruleset, g: &PositionKey, cache: &mut SgCache) -> Result<u32> {
    let budget = cache.budget();
    sg_with_budget(r, g, cache, budget)
}

/// Sprague-Grundy value of `g`; at most `budget` uncached positions are expanded.
pub fn sg_with_budget(
    r: &dyn Ruleset,
    g: &PositionKey,
    cache: &mut SgCache,
    budget: usize,
) -> Result<u32> {
    evaluate(r, g, cache, budget, mex)
}

/// Winner under normal play: `P` when the previous player wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    P,
    N,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P => "P",
            Outcome::N => "N",
        })
    }
}

/// Outcome class derived from the SG value.
pub fn outcome(r: &dyn Ruleset, g: &PositionKey, cache: &mut SgCache) -> Result<Outcome> {
    Ok(if sg(r, g, cache)? == 0 {
        Outcome::P
    } else {
        Outcome::N
    })
}

/// Outcome class by plain win/lose search, without SG values.
pub fn outcome_by_minimax(
    r: &dyn Ruleset,
    g: &PositionKey,
    memo: &mut FxHashMap<PositionKey, bool>,
    budget: usize,
) -> Result<Outcome> {
    // memo holds "the player to move wins"
    let wins = evaluate(r, g, memo, budget, |opts: &[bool]| opts.iter().any(|&w| !w))?;
    Ok(if wins { Outcome::N } else { Outcome::P })
}

/// Positions reachable from `g` in exactly `n` moves.
pub fn followers(
    r: &dyn Ruleset,
    g: &PositionKey,
    n: usize,
    budget: usize,
) -> Result<BTreeSet<PositionKey>> {
    let mut layer: BTreeSet<PositionKey> = BTreeSet::from([g.clone()]);
    let mut visited = 1usize;
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for h in &layer {
            for o in option_keys(r, h) {
                if next.insert(o) {
                    visited += 1;
                    if visited > budget {
                        return Err(GameError::BudgetExceeded { budget });
                    }
                }
            }
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    Ok(layer)
}

/// Every follower of `g` (including `g`), in breadth-first discovery order.
pub fn all_followers(r: &dyn Ruleset, g: &PositionKey, budget: usize) -> Result<Vec<PositionKey>> {
    let mut seen: FxHashSet<PositionKey> = FxHashSet::default();
    seen.insert(g.clone());
    let mut order = vec![g.clone()];
    let mut head = 0;
    while head < order.len() {
        let h = order[head].clone();
        head += 1;
        for o in option_keys(r, &h) {
            if seen.insert(o.clone()) {
                if seen.len() > budget {
                    return Err(GameError::BudgetExceeded { budget });
                }
                order.push(o);
            }
        }
    }
    Ok(order)
}
