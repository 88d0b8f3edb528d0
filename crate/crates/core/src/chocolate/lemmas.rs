//! Small facts about two-dimensional bars whose shape has the NS-property.

use super::shape::HFunction;
use crate::error::{GameError, Result};

/// Whether `h(z) <= 2^floor(log2 z) - 1`, the ceiling every NS shape obeys.
/// `z` must be positive.
pub fn h_bound(h: &HFunction, z: u32) -> bool {
    assert!(z > 0, "h_bound is stated for positive z");
    let top = 1u64 << (31 - z.leading_zeros());
    (h.eval(z) as u64) < top
}

/// Whether every feasible row `y <= h(z)` gives `y ^ z >= 16`.
///
/// Meant for `z >= 16`; below that the inequality is simply evaluated.
pub fn lemma16_check(h: &HFunction, z: u32) -> bool {
    (0..=h.eval(z)).all(|y| y ^ z >= 16)
}

const SMALL_SG: [&[(u32, u32)]; 9] = [
    &[(0, 0)],
    &[(0, 1)],
    &[(0, 2), (1, 3)],
    &[(0, 3), (1, 2)],
    &[(0, 4), (1, 5), (2, 6), (3, 7)],
    &[(0, 5), (1, 4), (2, 7), (3, 6)],
    &[(0, 6), (1, 7), (2, 4), (3, 5)],
    &[(0, 7), (1, 6), (2, 5), (3, 4)],
    &[(0, 8), (1, 9), (2, 10), (3, 11), (4, 12), (5, 13), (6, 14), (7, 15)],
];

/// The `(y, z)` cells of a two-dimensional NS bar with SG value `v`, for
/// `v <= 8`. Callers intersect with `y <= h(z)` for a particular shape.
pub fn small_sg_classify(v: u32) -> Result<&'static [(u32, u32)]> {
    SMALL_SG.get(v as usize).copied().ok_or(GameError::Unsupported {
        value: v as u64,
        reason: "only SG values 0..=8 are classified".into(),
    })
}
