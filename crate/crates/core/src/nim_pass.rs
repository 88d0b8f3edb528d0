//! Nim where either player may pass once, never at a terminal position.

use std::fmt::Write as _;

use crate::compound::{one_pass_sg_oracle, CompoundState};
use crate::error::Result;
use crate::game::SgCache;

/// Piles plus the pass bit. Terminal exactly when every pile is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NimPassPosition {
    pub piles: Vec<u32>,
    pub pass_available: bool,
}

impl NimPassPosition {
    pub fn new(piles: Vec<u32>, pass_available: bool) -> Self {
        NimPassPosition { piles, pass_available }
    }

    pub fn is_terminal(&self) -> bool {
        self.piles.iter().all(|&p| p == 0)
    }

    pub fn sg(&self, cache: &mut SgCache) -> Result<u32> {
        if self.piles.is_empty() {
            return Ok(0);
        }
        one_pass_sg_oracle(&CompoundState::nim(&self.piles, self.pass_available)?, cache)
    }
}

/// SG value of nim on `piles` with the pass still available.
pub fn gp_n(piles: &[u32], cache: &mut SgCache) -> Result<u32> {
    NimPassPosition::new(piles.to_vec(), true).sg(cache)
}

/// SG value of two-pile nim `(x, y)` with the pass available.
pub fn gp(x: u32, y: u32, cache: &mut SgCache) -> Result<u32> {
    gp_n(&[x, y], cache)
}

/// Square table of two-pile values, `values[x][y] = gp(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpTable {
    values: Vec<Vec<u32>>,
}

impl GpTable {
    pub fn max(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    pub fn get(&self, x: u32, y: u32) -> Option<u32> {
        self.values.get(x as usize)?.get(y as usize).copied()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.values
    }

    /// CSV with a header row and a header column of indices, `\n` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x\\y");
        for y in 0..self.values.len() {
            write!(out, ",{y}").unwrap();
        }
        out.push('\n');
        for (x, row) in self.values.iter().enumerate() {
            write!(out, "{x}").unwrap();
            for v in row {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Computes `gp` for every `0 <= x, y <= max`, row by row over one cache.
pub fn gp_table(max: u32, cache: &mut SgCache) -> Result<GpTable> {
    let mut values = Vec::with_capacity(max as usize + 1);
    for x in 0..=max {
        let row = (0..=max).map(|y| gp(x, y, cache)).collect::<Result<Vec<_>>>()?;
        values.push(row);
    }
    Ok(GpTable { values })
}

/// Closed form for `gp(x, y) = 0`: both piles empty, or `{x, y} = {2n-1, 2n}`.
pub fn gp_is_zero(x: u32, y: u32) -> bool {
    let (lo, hi) = (x.min(y), x.max(y));
    (lo == 0 && hi == 0) || (lo >= 1 && hi % 2 == 0 && lo + 1 == hi)
}

/// Closed form for `gp(x, y) = 1`.
pub fn gp_is_one(x: u32, y: u32) -> bool {
    matches!((x, y), (0, 2) | (2, 0)) || (x == y && x != 0 && x != 2)
}

const GP_TWO_SPORADIC: [(u32, u32); 9] = [
    (0, 1),
    (1, 0),
    (2, 2),
    (3, 5),
    (4, 7),
    (5, 3),
    (6, 8),
    (7, 4),
    (8, 6),
];

/// Closed form for `gp(x, y) = 2`.
pub fn gp_is_two(x: u32, y: u32) -> bool {
    GP_TWO_SPORADIC.contains(&(x, y)) || (x >= 9 && y >= 9 && (x - 1) ^ (y - 1) == 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_examples() {
        let mut cache = SgCache::new();
        assert_eq!(gp(0, 0, &mut cache).unwrap(), 0);
        assert_eq!(gp(2, 4, &mut cache).unwrap(), 7);
        assert_eq!(gp(9, 12, &mut cache).unwrap(), 2);
        assert_eq!(gp_n(&[0], &mut cache).unwrap(), 0);
        assert_eq!(gp_n(&[1], &mut cache).unwrap(), 2);
    }

    #[test]
    fn table_shape_and_row_zero() {
        let t = gp_table(12, &mut SgCache::new()).unwrap();
        assert_eq!(t.rows()[0], [0, 2, 1, 4, 3, 6, 5, 8, 7, 10, 9, 12, 11]);
        assert_eq!(t.get(6, 11), Some(16));
        assert_eq!(t.get(13, 0), None);
        for x in 0..=12 {
            for y in 0..=12 {
                assert_eq!(t.get(x, y), t.get(y, x));
            }
        }
    }

    #[test]
    fn single_cell_csv() {
        let t = gp_table(0, &mut SgCache::new()).unwrap();
        assert_eq!(t.to_csv(), "x\\y,0\n0,0\n");
    }

    #[test]
    fn predicate_examples() {
        assert!(gp_is_zero(0, 0));
        assert!(gp_is_zero(5, 6));
        assert!(gp_is_zero(6, 5));
        assert!(!gp_is_zero(2, 2));
        assert!(!gp_is_zero(6, 7));
        assert!(gp_is_one(0, 2));
        assert!(gp_is_one(7, 7));
        assert!(!gp_is_one(2, 2));
        assert!(gp_is_two(3, 5));
        assert!(gp_is_two(9, 12));
        assert!(!gp_is_two(9, 10));
    }

    #[test]
    fn terminal_has_no_pass() {
        let p = NimPassPosition::new(vec![0, 0, 0], true);
        assert!(p.is_terminal());
        assert_eq!(p.sg(&mut SgCache::new()).unwrap(), 0);
    }
}
