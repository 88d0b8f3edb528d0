//! Sprague-Grundy values of impartial games with a one-time pass move.
//!
//! The crate provides a generic memoized SG engine ([`game`]), compounds of
//! games with brute-force and nim-image evaluation ([`compound`]), nim with a
//! pass ([`nim_pass`]), chocolate bars and the NS-property ([`chocolate`]),
//! one-move / SG-decreasing certification ([`classify`]), the stair chocolate
//! game with a pass ([`stair`]), and exhaustive verification sweeps
//! ([`verify`]) that cross-check closed forms against brute force.

pub mod chocolate;
pub mod classify;
pub mod compound;
pub mod error;
pub mod game;
pub mod nim;
pub mod nim_pass;
pub mod stair;
pub mod verify;

pub use error::{GameError, Result};
pub use game::{mex, sg, Outcome, PositionKey, Ruleset, RulesetId, SgCache};
