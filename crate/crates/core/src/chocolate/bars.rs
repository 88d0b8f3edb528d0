//! Chocolate-bar rulesets.
//!
//! Payload layouts: [`Choco2`] is `[y, z]`, [`Choco3`] is `[x, y, z]`.

use std::collections::BTreeSet;

use smallvec::smallvec;

use super::shape::{FFunction, HFunction};
use crate::error::{GameError, Result};
use crate::game::{self, Payload, PositionKey, Ruleset, RulesetId, SgCache};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Choco3Position {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Choco3Position {
    pub fn new(f: &FFunction, x: u32, y: u32, z: u32) -> Result<Self> {
        if y > f.eval(x, z) {
            return Err(GameError::invalid(
                format!("choco3[{f}]"),
                format!("y = {y} exceeds F({x}, {z}) = {}", f.eval(x, z)),
            ));
        }
        Ok(Choco3Position { x, y, z })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Choco2Position {
    pub y: u32,
    pub z: u32,
}

impl Choco2Position {
    pub fn new(h: &HFunction, y: u32, z: u32) -> Result<Self> {
        if y > h.eval(z) {
            return Err(GameError::invalid(
                format!("choco2[{h}]"),
                format!("y = {y} exceeds h({z}) = {}", h.eval(z)),
            ));
        }
        Ok(Choco2Position { y, z })
    }
}

/// Positions reachable in one cut from `p` on a bar shaped by `f`.
///
/// Cutting along x to `u` may lower the height to `F(u, z)`; cutting along z
/// to `w` may lower it to `F(x, w)`.
pub fn move_f(f: &FFunction, p: Choco3Position) -> BTreeSet<Choco3Position> {
    let Choco3Position { x, y, z } = p;
    let mut out = BTreeSet::new();
    for u in 0..x {
        out.insert(Choco3Position { x: u, y: f.eval(u, z).min(y), z });
    }
    for v in 0..y {
        out.insert(Choco3Position { x, y: v, z });
    }
    for w in 0..z {
        out.insert(Choco3Position { x, y: y.min(f.eval(x, w)), z: w });
    }
    out
}

/// Three-dimensional chocolate bar game for a fixed shape.
#[derive(Debug, Clone)]
pub struct Choco3 {
    f: FFunction,
    id: RulesetId,
}

impl Choco3 {
    pub fn new(f: FFunction) -> Self {
        let id = RulesetId::new(format!("choco3[{f}]"));
        Choco3 { f, id }
    }

    pub fn shape(&self) -> &FFunction {
        &self.f
    }

    pub fn key(&self, p: Choco3Position) -> PositionKey {
        PositionKey::from_payload(self.id.clone(), smallvec![p.x, p.y, p.z])
    }
}

impl Ruleset for Choco3 {
    fn id(&self) -> &RulesetId {
        &self.id
    }

    fn validate(&self, payload: &[u32]) -> Result<()> {
        match payload {
            [x, y, z] => Choco3Position::new(&self.f, *x, *y, *z).map(|_| ()),
            _ => Err(GameError::invalid(self.id.as_str(), "expected (x, y, z)")),
        }
    }

    fn options(&self, p: &[u32]) -> Vec<Payload> {
        move_f(&self.f, Choco3Position { x: p[0], y: p[1], z: p[2] })
            .into_iter()
            .map(|q| smallvec![q.x, q.y, q.z])
            .collect()
    }

    fn is_terminal(&self, p: &[u32]) -> bool {
        p.iter().all(|&c| c == 0)
    }
}

/// Two-dimensional chocolate bar game: the three-dimensional bar with
/// `F(x, z) = h(z)` and `x = 0`.
#[derive(Debug, Clone)]
pub struct Choco2 {
    h: HFunction,
    id: RulesetId,
}

impl Choco2 {
    pub fn new(h: HFunction) -> Self {
        let id = RulesetId::new(format!("choco2[{h}]"));
        Choco2 { h, id }
    }

    pub fn shape(&self) -> &HFunction {
        &self.h
    }

    pub fn key(&self, p: Choco2Position) -> PositionKey {
        PositionKey::from_payload(self.id.clone(), smallvec![p.y, p.z])
    }
}

impl Ruleset for Choco2 {
    fn id(&self) -> &RulesetId {
        &self.id
    }

    fn validate(&self, payload: &[u32]) -> Result<()> {
        match payload {
            [y, z] => Choco2Position::new(&self.h, *y, *z).map(|_| ()),
            _ => Err(GameError::invalid(self.id.as_str(), "expected (y, z)")),
        }
    }

    fn options(&self, p: &[u32]) -> Vec<Payload> {
        let (y, z) = (p[0], p[1]);
        let mut out: Vec<Payload> = (0..y).map(|v| smallvec![v, z]).collect();
        out.extend((0..z).map(|w| smallvec![y.min(self.h.eval(w)), w]));
        out
    }

    fn is_terminal(&self, p: &[u32]) -> bool {
        p[0] == 0 && p[1] == 0
    }

    fn analytic_one_move(&self, _payload: &[u32]) -> Option<bool> {
        // SG is y XOR z, which vanishes only at the terminal position
        self.h.is_proven_ns().then_some(true)
    }
}

/// Brute-force SG value of the three-dimensional bar.
pub fn choco3_sg(f: &FFunction, p: Choco3Position, cache: &mut SgCache) -> Result<u32> {
    let r = Choco3::new(f.clone());
    game::sg(&r, &r.key(p), cache)
}

/// Brute-force SG value of the two-dimensional bar.
pub fn choco2_sg(h: &HFunction, p: Choco2Position, cache: &mut SgCache) -> Result<u32> {
    let r = Choco2::new(h.clone());
    game::sg(&r, &r.key(p), cache)
}
