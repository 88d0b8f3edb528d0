//! Compounds of games: disjunctive sums, one-pass sums and hypergraph
//! compounds, each evaluable by brute force and by a nim-image fast path.
//!
//! A compound is itself a [`Ruleset`]. Its payload concatenates the component
//! payloads, each prefixed by its length; the one-pass compound additionally
//! starts with the pass bit (1 while the pass is still available).

use std::fmt;
use std::sync::Arc;

use smallvec::{smallvec, SmallVec};

use crate::classify::Classifier;
use crate::error::{GameError, Result};
use crate::game::{self, option_keys, Payload, PositionKey, Ruleset, RulesetId, SgCache};
use crate::nim::Nim;

/// One component of a compound: a position together with its ruleset.
#[derive(Clone)]
pub struct Component {
    ruleset: Arc<dyn Ruleset>,
    position: PositionKey,
}

impl Component {
    pub fn new(ruleset: Arc<dyn Ruleset>, position: PositionKey) -> Result<Self> {
        if position.ruleset() != ruleset.id() {
            return Err(GameError::invalid(
                ruleset.id().as_str(),
                format!("position {position} belongs to another ruleset"),
            ));
        }
        ruleset.validate(position.payload())?;
        Ok(Component { ruleset, position })
    }

    pub fn ruleset(&self) -> &Arc<dyn Ruleset> {
        &self.ruleset
    }

    pub fn position(&self) -> &PositionKey {
        &self.position
    }

    pub fn is_terminal(&self) -> bool {
        self.ruleset.is_terminal(self.position.payload())
    }

    fn with_position(&self, position: PositionKey) -> Self {
        Component {
            ruleset: self.ruleset.clone(),
            position,
        }
    }

    fn options(&self) -> Vec<PositionKey> {
        option_keys(self.ruleset.as_ref(), &self.position)
    }
}

impl PartialEq for Component {
    fn eq(&self, other: &Self) -> bool {
        self.position == other.position
    }
}

impl Eq for Component {}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.position, f)
    }
}

/// Ordered components plus the pass-availability bit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompoundState {
    components: Vec<Component>,
    pass_available: bool,
}

impl CompoundState {
    pub fn new(components: Vec<Component>, pass_available: bool) -> Result<Self> {
        if components.is_empty() {
            return Err(GameError::Precondition(
                "a compound needs at least one component".into(),
            ));
        }
        Ok(CompoundState {
            components,
            pass_available,
        })
    }

    /// Nim piles of the given sizes.
    pub fn nim(piles: &[u32], pass_available: bool) -> Result<Self> {
        let nim: Arc<dyn Ruleset> = Arc::new(Nim::new());
        let comps = piles
            .iter()
            .map(|&m| Component::new(nim.clone(), Nim::new().pile(m)))
            .collect::<Result<Vec<_>>>()?;
        CompoundState::new(comps, pass_available)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn pass_available(&self) -> bool {
        self.pass_available
    }

    pub fn all_terminal(&self) -> bool {
        self.components.iter().all(Component::is_terminal)
    }

    pub fn with_pass(&self, pass_available: bool) -> Self {
        CompoundState {
            components: self.components.clone(),
            pass_available,
        }
    }

    fn parts(&self) -> Vec<Arc<dyn Ruleset>> {
        self.components.iter().map(|c| c.ruleset.clone()).collect()
    }

    fn positions(&self) -> Vec<PositionKey> {
        self.components.iter().map(|c| c.position.clone()).collect()
    }

    fn from_positions(template: &[Component], positions: Vec<PositionKey>, pass: bool) -> Self {
        CompoundState {
            components: template
                .iter()
                .zip(positions)
                .map(|(c, p)| c.with_position(p))
                .collect(),
            pass_available: pass,
        }
    }
}

/// Hypergraph on vertices `1..=n` with nonempty hyperedges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Edges use 1-based vertex labels. Duplicate edges collapse.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(GameError::Precondition("hyperedges must be nonempty".into()));
            }
            if e[0] == 0 || *e.last().unwrap() > n {
                return Err(GameError::Precondition(format!(
                    "hyperedge {e:?} is not a subset of 1..={n}"
                )));
            }
            canon.push(e);
        }
        canon.sort();
        canon.dedup();
        Ok(Hypergraph { n, edges: canon })
    }

    /// The hypergraph whose edges are the singletons; its compound is the disjunctive sum.
    pub fn singletons(n: usize) -> Self {
        Hypergraph {
            n,
            edges: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|e| e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", parts.join("|"))
    }
}

/// Replace exactly one entry of `current` by one of its options.
fn single_moves<T: Clone>(current: &[T], opts: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for (i, list) in opts.iter().enumerate() {
        for o in list {
            let mut next = current.to_vec();
            next[i] = o.clone();
            out.push(next);
        }
    }
    out
}

/// For each edge whose vertices all have options, every simultaneous choice
/// of one option per vertex. Edges are 1-based.
fn edge_moves<T: Clone + Ord>(current: &[T], opts: &[Vec<T>], edges: &[Vec<usize>]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for edge in edges {
        if edge.iter().any(|&v| opts[v - 1].is_empty()) {
            continue;
        }
        let mut partial = vec![current.to_vec()];
        for &v in edge {
            let mut grown = Vec::with_capacity(partial.len() * opts[v - 1].len());
            for base in &partial {
                for o in &opts[v - 1] {
                    let mut next = base.clone();
                    next[v - 1] = o.clone();
                    grown.push(next);
                }
            }
            partial = grown;
        }
        out.extend(partial);
    }
    out.sort();
    out.dedup();
    out
}

/// Options of a disjunctive sum. The pass must already be spent.
pub fn disjunctive_options(c: &CompoundState) -> Result<Vec<CompoundState>> {
    if c.pass_available {
        return Err(GameError::Precondition(
            "disjunctive options are defined for states without a pass".into(),
        ));
    }
    let opts: Vec<_> = c.components.iter().map(Component::options).collect();
    Ok(single_moves(&c.positions(), &opts)
        .into_iter()
        .map(|p| CompoundState::from_positions(&c.components, p, false))
        .collect())
}

/// Options of a one-pass compound: the disjunctive moves (keeping the pass
/// bit) plus, while available and some component can still move, the pass.
pub fn one_pass_options(c: &CompoundState) -> Vec<CompoundState> {
    let opts: Vec<_> = c.components.iter().map(Component::options).collect();
    if opts.iter().all(Vec::is_empty) {
        return Vec::new();
    }
    let mut out: Vec<CompoundState> = single_moves(&c.positions(), &opts)
        .into_iter()
        .map(|p| CompoundState::from_positions(&c.components, p, c.pass_available))
        .collect();
    if c.pass_available {
        out.push(c.with_pass(false));
    }
    out
}

/// Options of the hypergraph compound over `components`.
pub fn hypergraph_options(h: &Hypergraph, components: &[Component]) -> Result<Vec<Vec<Component>>> {
    check_arity(h, components.len())?;
    let current: Vec<PositionKey> = components.iter().map(|c| c.position.clone()).collect();
    let opts: Vec<_> = components.iter().map(Component::options).collect();
    Ok(edge_moves(&current, &opts, &h.edges)
        .into_iter()
        .map(|ps| {
            components
                .iter()
                .zip(ps)
                .map(|(c, p)| c.with_position(p))
                .collect()
        })
        .collect())
}

fn check_arity(h: &Hypergraph, n: usize) -> Result<()> {
    if h.n != n {
        return Err(GameError::Precondition(format!(
            "hypergraph has {} vertices but {n} components were given",
            h.n
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum CompoundKind {
    Disjunctive,
    OnePass,
    Hypergraph(Hypergraph),
}

/// A compound of fixed component rulesets, usable as a [`Ruleset`].
pub struct Compound {
    kind: CompoundKind,
    parts: Vec<Arc<dyn Ruleset>>,
    id: RulesetId,
    /// Groups of part indices sharing a ruleset. In a sum or one-pass compound
    /// their positions can be permuted freely, so keys list them sorted.
    interchangeable: Vec<Vec<usize>>,
}

impl Compound {
    fn build(kind: CompoundKind, parts: Vec<Arc<dyn Ruleset>>) -> Self {
        let names: Vec<&str> = parts.iter().map(|p| p.id().as_str()).collect();
        let prefix = match &kind {
            CompoundKind::Disjunctive => "sum".to_string(),
            CompoundKind::OnePass => "one-pass".to_string(),
            CompoundKind::Hypergraph(h) => format!("hyper{h}"),
        };
        let id = RulesetId::new(format!("{prefix}({})", names.join(",")));
        let mut interchangeable: Vec<Vec<usize>> = Vec::new();
        if !matches!(kind, CompoundKind::Hypergraph(_)) {
            for (i, name) in names.iter().enumerate() {
                match interchangeable.iter_mut().find(|g| names[g[0]] == *name) {
                    Some(g) => g.push(i),
                    None => interchangeable.push(vec![i]),
                }
            }
            interchangeable.retain(|g| g.len() > 1);
        }
        Compound {
            kind,
            parts,
            id,
            interchangeable,
        }
    }

    pub fn disjunctive(parts: Vec<Arc<dyn Ruleset>>) -> Self {
        Self::build(CompoundKind::Disjunctive, parts)
    }

    pub fn one_pass(parts: Vec<Arc<dyn Ruleset>>) -> Self {
        Self::build(CompoundKind::OnePass, parts)
    }

    pub fn hypergraph(h: Hypergraph, parts: Vec<Arc<dyn Ruleset>>) -> Result<Self> {
        check_arity(&h, parts.len())?;
        Ok(Self::build(CompoundKind::Hypergraph(h), parts))
    }

    fn has_pass_bit(&self) -> bool {
        self.kind == CompoundKind::OnePass
    }

    /// Key of `positions` (one per part). `pass` is ignored unless this is a
    /// one-pass compound.
    pub fn key(&self, positions: &[PositionKey], pass: bool) -> Result<PositionKey> {
        if positions.len() != self.parts.len() {
            return Err(GameError::Precondition(format!(
                "{} expects {} components, got {}",
                self.id,
                self.parts.len(),
                positions.len()
            )));
        }
        for (part, pos) in self.parts.iter().zip(positions) {
            if pos.ruleset() != part.id() {
                return Err(GameError::invalid(
                    self.id.as_str(),
                    format!("component {pos} does not belong to {}", part.id()),
                ));
            }
        }
        let parts: Vec<Payload> = positions.iter().map(|p| Payload::from_slice(p.payload())).collect();
        Ok(PositionKey::from_payload(self.id.clone(), self.encode(pass, &parts)))
    }

    /// Key of a compound state whose component rulesets match this compound's parts.
    pub fn key_of(&self, c: &CompoundState) -> Result<PositionKey> {
        self.key(&c.positions(), c.pass_available)
    }

    fn split<'a>(&self, payload: &'a [u32]) -> (bool, Vec<&'a [u32]>) {
        let (pass, mut rest) = if self.has_pass_bit() {
            (payload[0] == 1, &payload[1..])
        } else {
            (false, payload)
        };
        let mut slices = Vec::with_capacity(self.parts.len());
        for _ in 0..self.parts.len() {
            let len = rest[0] as usize;
            slices.push(&rest[1..1 + len]);
            rest = &rest[1 + len..];
        }
        (pass, slices)
    }

    fn encode(&self, pass: bool, parts: &[Payload]) -> Payload {
        let refs: Vec<&[u32]> = parts.iter().map(|p| p.as_slice()).collect();
        self.encode_slices(pass, &refs)
    }

    fn encode_slices(&self, pass: bool, parts: &[&[u32]]) -> Payload {
        let mut parts: SmallVec<[&[u32]; 8]> = SmallVec::from_slice(parts);
        for group in &self.interchangeable {
            let mut members: SmallVec<[&[u32]; 8]> = group.iter().map(|&i| parts[i]).collect();
            members.sort_unstable();
            for (&i, m) in group.iter().zip(members) {
                parts[i] = m;
            }
        }
        let mut payload: Payload = Payload::new();
        if self.has_pass_bit() {
            payload.push(pass as u32);
        }
        for p in parts {
            payload.push(p.len() as u32);
            payload.extend_from_slice(p);
        }
        payload
    }
}

impl Ruleset for Compound {
    fn id(&self) -> &RulesetId {
        &self.id
    }

    fn validate(&self, payload: &[u32]) -> Result<()> {
        let mut rest = payload;
        if self.has_pass_bit() {
            match rest.first() {
                Some(0 | 1) => rest = &rest[1..],
                _ => return Err(GameError::invalid(self.id.as_str(), "missing pass bit")),
            }
        }
        for part in &self.parts {
            let len = *rest
                .first()
                .ok_or_else(|| GameError::invalid(self.id.as_str(), "truncated payload"))?
                as usize;
            if rest.len() < 1 + len {
                return Err(GameError::invalid(self.id.as_str(), "truncated payload"));
            }
            part.validate(&rest[1..1 + len])?;
            rest = &rest[1 + len..];
        }
        if !rest.is_empty() {
            return Err(GameError::invalid(self.id.as_str(), "trailing payload"));
        }
        Ok(())
    }

    fn options(&self, payload: &[u32]) -> Vec<Payload> {
        let (pass, slices) = self.split(payload);
        let opts: Vec<Vec<Payload>> = self
            .parts
            .iter()
            .zip(&slices)
            .map(|(r, s)| r.options(s))
            .collect();
        if opts.iter().all(Vec::is_empty) {
            return Vec::new();
        }
        match &self.kind {
            CompoundKind::Disjunctive | CompoundKind::OnePass => {
                let mut parts = slices.clone();
                let mut out = Vec::new();
                for (i, list) in opts.iter().enumerate() {
                    for o in list {
                        parts[i] = o;
                        out.push(self.encode_slices(pass, &parts));
                    }
                    parts[i] = slices[i];
                }
                if pass {
                    out.push(self.encode_slices(false, &slices));
                }
                out.sort_unstable();
                out.dedup();
                out
            }
            CompoundKind::Hypergraph(h) => {
                let current: Vec<Payload> = slices.iter().map(|s| Payload::from_slice(s)).collect();
                edge_moves(&current, &opts, &h.edges)
                    .iter()
                    .map(|ps| self.encode(false, ps))
                    .collect()
            }
        }
    }

    fn is_terminal(&self, payload: &[u32]) -> bool {
        let (_, slices) = self.split(payload);
        match &self.kind {
            CompoundKind::Hypergraph(_) => self.options(payload).is_empty(),
            _ => self
                .parts
                .iter()
                .zip(slices)
                .all(|(r, s)| r.is_terminal(s)),
        }
    }
}

/// Brute-force SG value of the disjunctive sum of the components.
pub fn disjunctive_sg_oracle(c: &CompoundState, cache: &mut SgCache) -> Result<u32> {
    let r = Compound::disjunctive(c.parts());
    game::sg(&r, &r.key_of(c)?, cache)
}

/// XOR of the component SG values.
pub fn disjunctive_sg_fast(c: &CompoundState, cache: &mut SgCache) -> Result<u32> {
    if c.pass_available {
        return Err(GameError::Precondition(
            "the XOR rule applies to states without a pass".into(),
        ));
    }
    component_values(c.components(), cache).map(|v| v.into_iter().fold(0, |a, b| a ^ b))
}

fn component_values(components: &[Component], cache: &mut SgCache) -> Result<Vec<u32>> {
    components
        .iter()
        .map(|c| game::sg(c.ruleset.as_ref(), &c.position, cache))
        .collect()
}

/// Exact SG value of the one-pass compound by game-tree search.
pub fn one_pass_sg_oracle(c: &CompoundState, cache: &mut SgCache) -> Result<u32> {
    let r = Compound::one_pass(c.parts());
    game::sg(&r, &r.key_of(c)?, cache)
}

/// The nim-image state: one nim pile per component, sized by its SG value.
pub fn nim_image(c: &CompoundState, cache: &mut SgCache) -> Result<CompoundState> {
    let values = component_values(c.components(), cache)?;
    CompoundState::nim(&values, c.pass_available)
}

/// SG value of the one-pass compound through the nim image.
///
/// Valid only when every component is a one-move game. With a classifier the
/// components are certified first and a failure is a precondition error;
/// without one the caller vouches for them.
pub fn one_pass_sg_fast(
    c: &CompoundState,
    cache: &mut SgCache,
    certifier: Option<&mut Classifier>,
) -> Result<u32> {
    if let Some(cl) = certifier {
        for comp in c.components() {
            let cert = cl.is_one_move(comp.ruleset.as_ref(), &comp.position)?;
            if !cert.verdict {
                return Err(GameError::Precondition(format!(
                    "component {} is not a one-move game",
                    comp.position
                )));
            }
        }
    }
    let image = nim_image(c, cache)?;
    one_pass_sg_oracle(&image, cache)
}

/// A one-pass compound on which the nim-image shortcut fails.
///
/// The first component is two-pile nim at `(1, 1)` played as one game: SG 0
/// but not terminal, so not a one-move game. `extra_terminal` empty nim piles
/// follow it.
pub fn homomorphism_counterexample_with(extra_terminal: usize) -> CompoundState {
    use crate::nim::TwoPileNim;
    let two: Arc<dyn Ruleset> = Arc::new(TwoPileNim::new());
    let nim: Arc<dyn Ruleset> = Arc::new(Nim::new());
    let mut comps = vec![Component {
        position: PositionKey::from_payload(two.id().clone(), smallvec![1, 1]),
        ruleset: two,
    }];
    for _ in 0..extra_terminal {
        comps.push(Component {
            position: Nim::new().pile(0),
            ruleset: nim.clone(),
        });
    }
    CompoundState {
        components: comps,
        pass_available: true,
    }
}

pub fn homomorphism_counterexample() -> CompoundState {
    homomorphism_counterexample_with(0)
}

/// Brute-force SG value of the hypergraph compound.
pub fn hypergraph_sg_oracle(h: &Hypergraph, components: &[Component], cache: &mut SgCache) -> Result<u32> {
    let parts = components.iter().map(|c| c.ruleset.clone()).collect();
    let r = Compound::hypergraph(h.clone(), parts)?;
    let positions: Vec<_> = components.iter().map(|c| c.position.clone()).collect();
    game::sg(&r, &r.key(&positions, false)?, cache)
}

/// SG value of the hypergraph compound through its nim image. Valid when
/// every component is SG-decreasing; certified first when a classifier is given.
pub fn hypergraph_sg_fast(
    h: &Hypergraph,
    components: &[Component],
    cache: &mut SgCache,
    certifier: Option<&mut Classifier>,
) -> Result<u32> {
    check_arity(h, components.len())?;
    if let Some(cl) = certifier {
        for comp in components {
            let cert = cl.is_sg_decreasing(comp.ruleset.as_ref(), &comp.position)?;
            if !cert.verdict {
                return Err(GameError::Precondition(format!(
                    "component {} is not SG-decreasing",
                    comp.position
                )));
            }
        }
    }
    let values = component_values(components, cache)?;
    let image = CompoundState::nim(&values, false)?;
    hypergraph_sg_oracle(h, image.components(), cache)
}
