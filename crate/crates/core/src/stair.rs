//! Stair chocolate game with a pass.
//!
//! A stair bar has shape `F(x, z) = h(z)`, so the x-direction is an
//! independent nim pile and the bar is the sum of one-pile nim and a
//! two-dimensional bar. Positions are `(x, y, z, p)` with `p = 1` while the
//! pass is available; the payload layout is `[x, y, z, p]`.

use std::collections::BTreeSet;
use std::fmt;

use smallvec::smallvec;

use crate::chocolate::{Choco2, Choco2Position, HFunction};
use crate::error::{GameError, Result};
use crate::game::{self, Payload, PositionKey, Ruleset, RulesetId, SgCache};
use crate::nim_pass::GpTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StairPosition {
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub pass: bool,
}

impl StairPosition {
    /// Validated position; `y` must fit under `h(z)`.
    pub fn new(h: &HFunction, x: u32, y: u32, z: u32, pass: bool) -> Result<Self> {
        Choco2Position::new(h, y, z)?;
        Ok(StairPosition { x, y, z, pass })
    }

    pub fn is_terminal(&self) -> bool {
        self.x == 0 && self.y == 0 && self.z == 0
    }

    fn xyz(&self) -> (u32, u32, u32) {
        (self.x, self.y, self.z)
    }
}

impl fmt::Display for StairPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.x, self.y, self.z, self.pass as u8)
    }
}

/// One-step successors of `s`.
pub fn stair_moves(h: &HFunction, s: StairPosition) -> BTreeSet<StairPosition> {
    let StairPosition { x, y, z, pass } = s;
    let mut out = BTreeSet::new();
    for u in 0..x {
        out.insert(StairPosition { x: u, ..s });
    }
    for v in 0..y {
        out.insert(StairPosition { y: v, ..s });
    }
    for w in 0..z {
        out.insert(StairPosition { y: y.min(h.eval(w)), z: w, ..s });
    }
    if pass && !s.is_terminal() {
        out.insert(StairPosition { pass: false, ..s });
    }
    out
}

#[derive(Debug, Clone)]
pub struct Stair {
    h: HFunction,
    id: RulesetId,
}

impl Stair {
    pub fn new(h: HFunction) -> Self {
        let id = RulesetId::new(format!("stair-pass[{h}]"));
        Stair { h, id }
    }

    pub fn key(&self, s: StairPosition) -> PositionKey {
        PositionKey::from_payload(self.id.clone(), smallvec![s.x, s.y, s.z, s.pass as u32])
    }
}

impl Ruleset for Stair {
    fn id(&self) -> &RulesetId {
        &self.id
    }

    fn validate(&self, payload: &[u32]) -> Result<()> {
        match payload {
            [x, y, z, p @ (0 | 1)] => StairPosition::new(&self.h, *x, *y, *z, *p == 1).map(|_| ()),
            _ => Err(GameError::invalid(self.id.as_str(), "expected (x, y, z, p) with p in {0, 1}")),
        }
    }

    fn options(&self, p: &[u32]) -> Vec<Payload> {
        let s = StairPosition { x: p[0], y: p[1], z: p[2], pass: p[3] == 1 };
        stair_moves(&self.h, s)
            .into_iter()
            .map(|q| smallvec![q.x, q.y, q.z, q.pass as u32])
            .collect()
    }

    fn is_terminal(&self, p: &[u32]) -> bool {
        p[0] == 0 && p[1] == 0 && p[2] == 0
    }
}

/// Brute-force SG value over the full `(x, y, z, p)` game tree.
pub fn stair_sg(h: &HFunction, s: StairPosition, cache: &mut SgCache) -> Result<u32> {
    let r = Stair::new(h.clone());
    game::sg(&r, &r.key(s), cache)
}

/// SG value through the nim image: the pile `x` and the two-dimensional bar
/// `(y, z)` are evaluated without the pass, then combined with XOR (pass
/// spent) or looked up in `gp` (pass available).
///
/// `h` must have the NS-property, which makes the bar a one-move game. A
/// lookup outside the precomputed table is a precondition error.
pub fn stair_sg_fast(h: &HFunction, s: StairPosition, cache: &mut SgCache, gp: &GpTable) -> Result<u32> {
    let bar = Choco2::new(h.clone());
    let bar_value = game::sg(&bar, &bar.key(Choco2Position::new(h, s.y, s.z)?), cache)?;
    if !s.pass {
        return Ok(s.x ^ bar_value);
    }
    gp.get(s.x, bar_value).ok_or_else(|| {
        GameError::Precondition(format!(
            "nim-with-pass table of size {} does not cover ({}, {bar_value})",
            gp.max(),
            s.x
        ))
    })
}

/// Positions with SG value 0.
pub fn in_a(s: StairPosition) -> bool {
    let (x, y, z) = s.xyz();
    if !s.pass {
        return x ^ y ^ z == 0;
    }
    if s.is_terminal() {
        return true;
    }
    if x % 2 == 1 {
        (x + 1) ^ y ^ z == 0
    } else {
        x >= 2 && (x - 1) ^ y ^ z == 0
    }
}

const B_EXTRA: [(u32, u32, u32); 3] = [(0, 0, 2), (0, 1, 3), (2, 0, 0)];
const B_REMOVED: [(u32, u32, u32); 3] = [(0, 0, 0), (2, 0, 2), (2, 1, 3)];

/// Positions with SG value 1.
pub fn in_b(s: StairPosition) -> bool {
    let (x, y, z) = s.xyz();
    if !s.pass {
        return x ^ y ^ z == 1;
    }
    if B_REMOVED.contains(&(x, y, z)) {
        return false;
    }
    B_EXTRA.contains(&(x, y, z)) || x ^ y ^ z == 0
}

/// Sporadic positions with SG value 2 (pass available), grouped by `x`.
const C_EXTRA: [(u32, u32, u32); 30] = [
    // x = 0, 1, 2
    (0, 0, 1),
    (1, 0, 0),
    (2, 0, 2),
    (2, 1, 3),
    // x = 3
    (3, 0, 5),
    (3, 1, 4),
    (3, 2, 7),
    (3, 3, 6),
    // x = 4
    (4, 0, 7),
    (4, 1, 6),
    (4, 2, 5),
    (4, 3, 4),
    // x = 5
    (5, 0, 3),
    (5, 1, 2),
    // x = 6
    (6, 0, 8),
    (6, 1, 9),
    (6, 2, 10),
    (6, 3, 11),
    (6, 4, 12),
    (6, 5, 13),
    (6, 6, 14),
    (6, 7, 15),
    // x = 7
    (7, 0, 4),
    (7, 1, 5),
    (7, 2, 6),
    (7, 3, 7),
    // x = 8
    (8, 0, 6),
    (8, 1, 7),
    (8, 2, 4),
    (8, 3, 5),
];

/// Positions matching the arithmetic rule for value 2 whose value is not 2.
const C_REMOVED: [(u32, u32, u32); 29] = [
    // x = 1
    (1, 0, 4),
    (1, 1, 5),
    (1, 2, 6),
    (1, 3, 7),
    // x = 2
    (2, 0, 3),
    (2, 1, 2),
    // x = 3, 4
    (3, 0, 2),
    (3, 1, 3),
    (4, 0, 1),
    // x = 5
    (5, 0, 8),
    (5, 1, 9),
    (5, 2, 10),
    (5, 3, 11),
    (5, 4, 12),
    (5, 5, 13),
    (5, 6, 14),
    (5, 7, 15),
    // x = 6
    (6, 0, 7),
    (6, 1, 6),
    (6, 2, 5),
    (6, 3, 4),
    // x = 7
    (7, 0, 6),
    (7, 1, 7),
    (7, 2, 4),
    (7, 3, 5),
    // x = 8
    (8, 0, 5),
    (8, 1, 4),
    (8, 2, 7),
    (8, 3, 6),
];

/// Positions with SG value 2.
///
/// The arithmetic rule `((x - 1) ^ 3) + 1 == y ^ z` needs `x >= 1`.
pub fn in_c(s: StairPosition) -> bool {
    let (x, y, z) = s.xyz();
    if !s.pass {
        return x ^ y ^ z == 2;
    }
    if C_REMOVED.contains(&(x, y, z)) {
        return false;
    }
    C_EXTRA.contains(&(x, y, z)) || (x >= 1 && (((x - 1) ^ 3) + 1) ^ y ^ z == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nim_pass::gp_table;

    fn half() -> HFunction {
        HFunction::floor_div(1).unwrap()
    }

    fn st(x: u32, y: u32, z: u32, p: u8) -> StairPosition {
        StairPosition { x, y, z, pass: p == 1 }
    }

    #[test]
    fn move_examples() {
        let h = half();
        assert!(stair_moves(&h, st(0, 0, 0, 1)).is_empty());
        assert_eq!(
            stair_moves(&h, st(1, 0, 0, 1)),
            BTreeSet::from([st(0, 0, 0, 1), st(1, 0, 0, 0)])
        );
        assert_eq!(
            stair_moves(&h, st(0, 1, 3, 0)),
            BTreeSet::from([st(0, 0, 3, 0), st(0, 1, 2, 0), st(0, 0, 1, 0), st(0, 0, 0, 0)])
        );
    }

    #[test]
    fn pass_never_returns() {
        let h = HFunction::log_step();
        for x in 0..5 {
            for z in 0..9 {
                for y in 0..=h.eval(z) {
                    for q in stair_moves(&h, st(x, y, z, 0)) {
                        assert!(!q.pass);
                    }
                }
            }
        }
    }

    #[test]
    fn sg_examples() {
        let h = half();
        let mut cache = SgCache::new();
        assert_eq!(stair_sg(&h, st(0, 0, 0, 1), &mut cache).unwrap(), 0);
        assert_eq!(stair_sg(&h, st(3, 1, 2, 0), &mut cache).unwrap(), 0);
        assert_eq!(stair_sg(&h, st(1, 0, 2, 1), &mut cache).unwrap(), 0);
        assert_eq!(stair_sg(&h, st(2, 0, 1, 1), &mut cache).unwrap(), 0);
        assert_eq!(stair_sg(&h, st(9, 4, 8, 1), &mut cache).unwrap(), 2);
    }

    #[test]
    fn membership_examples() {
        assert!(in_a(st(0, 0, 0, 1)));
        assert!(in_a(st(1, 0, 2, 1)));
        assert!(!in_a(st(2, 1, 3, 1)));
        assert!(in_a(st(2, 0, 1, 1)));
        assert!(in_b(st(0, 0, 2, 1)));
        assert!(in_b(st(3, 1, 2, 1)));
        assert!(!in_b(st(0, 0, 0, 1)));
        assert!(in_c(st(0, 0, 1, 1)));
        assert!(in_c(st(9, 4, 8, 1)));
        assert!(!in_c(st(1, 0, 4, 1)));
        assert!(!in_c(st(0, 0, 0, 1)));
    }

    #[test]
    fn invalid_height_rejected() {
        assert!(StairPosition::new(&half(), 0, 2, 3, true).is_err());
        assert!(Stair::new(half()).position(&[0, 0, 0, 2]).is_err());
    }

    #[test]
    fn fast_path_matches_brute_force_on_small_positions() {
        let h = half();
        let gp = gp_table(15, &mut SgCache::new()).unwrap();
        let mut cache = SgCache::new();
        for x in 0..8 {
            for z in 0..10 {
                for y in 0..=h.eval(z) {
                    for p in [0, 1] {
                        let s = st(x, y, z, p);
                        assert_eq!(
                            stair_sg_fast(&h, s, &mut cache, &gp).unwrap(),
                            stair_sg(&h, s, &mut cache).unwrap(),
                            "{s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fast_path_refuses_uncovered_lookup() {
        let gp = gp_table(3, &mut SgCache::new()).unwrap();
        let err = stair_sg_fast(&half(), st(9, 0, 0, 1), &mut SgCache::new(), &gp);
        assert!(matches!(err, Err(GameError::Precondition(_))));
    }
}
