//! Plain nim rulesets.
//!
//! Payload layouts: [`Nim`] is `[pile]`, [`TwoPileNim`] is `[a, b]`.

use smallvec::smallvec;

use crate::error::{GameError, Result};
use crate::game::{Payload, PositionKey, Ruleset, RulesetId};

/// Single-pile nim: remove any positive number of tokens.
#[derive(Debug, Clone)]
pub struct Nim {
    id: RulesetId,
}

impl Nim {
    pub fn new() -> Self {
        Nim {
            id: RulesetId::new("nim"),
        }
    }

    pub fn pile(&self, m: u32) -> PositionKey {
        PositionKey::from_payload(self.id.clone(), smallvec![m])
    }
}

impl Default for Nim {
    fn default() -> Self {
        Self::new()
    }
}

impl Ruleset for Nim {
    fn id(&self) -> &RulesetId {
        &self.id
    }

    fn validate(&self, payload: &[u32]) -> Result<()> {
        if payload.len() != 1 {
            return Err(GameError::invalid("nim", "expected one pile size"));
        }
        Ok(())
    }

    fn options(&self, payload: &[u32]) -> Vec<Payload> {
        (0..payload[0]).rev().map(|k| smallvec![k]).collect()
    }

    fn is_terminal(&self, payload: &[u32]) -> bool {
        payload[0] == 0
    }

    fn analytic_one_move(&self, _payload: &[u32]) -> Option<bool> {
        Some(true)
    }

    fn analytic_sg_decreasing(&self, _payload: &[u32]) -> Option<bool> {
        Some(true)
    }
}

/// Two-pile nim treated as one indivisible game.
///
/// Used as the canonical example of a component that is not a one-move game:
/// `(1, 1)` has SG value 0 but is not terminal.
#[derive(Debug, Clone)]
pub struct TwoPileNim {
    id: RulesetId,
}

impl TwoPileNim {
    pub fn new() -> Self {
        TwoPileNim {
            id: RulesetId::new("nim2-single"),
        }
    }
}

impl Default for TwoPileNim {
    fn default() -> Self {
        Self::new()
    }
}

impl Ruleset for TwoPileNim {
    fn id(&self) -> &RulesetId {
        &self.id
    }

    fn validate(&self, payload: &[u32]) -> Result<()> {
        if payload.len() != 2 {
            return Err(GameError::invalid("nim2-single", "expected two pile sizes"));
        }
        Ok(())
    }

    fn options(&self, p: &[u32]) -> Vec<Payload> {
        let (a, b) = (p[0], p[1]);
        (0..a)
            .map(|u| smallvec![u, b])
            .chain((0..b).map(|v| smallvec![a, v]))
            .collect()
    }

    fn is_terminal(&self, p: &[u32]) -> bool {
        p[0] == 0 && p[1] == 0
    }
}
