use std::fmt::Write as _;

use super::bars::{Choco2, Choco2Position};
use super::shape::HFunction;
use crate::error::Result;
use crate::game::{self, SgCache};

/// SG values of a two-dimensional bar for `z <= z_max`, indexed `[y][z]`.
/// Cells with `y > h(z)` are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cb2Table {
    values: Vec<Vec<Option<u32>>>,
}

impl Cb2Table {
    pub fn get(&self, y: u32, z: u32) -> Option<u32> {
        *self.values.get(y as usize)?.get(z as usize)?
    }

    pub fn rows(&self) -> &[Vec<Option<u32>>] {
        &self.values
    }

    /// CSV with `y\z` in the corner and empty fields for infeasible cells.
    pub fn to_csv(&self) -> String {
        let width = self.values.first().map_or(0, Vec::len);
        let mut out = String::from("y\\z");
        for z in 0..width {
            write!(out, ",{z}").unwrap();
        }
        out.push('\n');
        for (y, row) in self.values.iter().enumerate() {
            write!(out, "{y}").unwrap();
            for v in row {
                out.push(',');
                if let Some(v) = v {
                    write!(out, "{v}").unwrap();
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Brute-force table for every column `z <= z_max`; rows run up to the
/// tallest column.
pub fn cb2_table(h: &HFunction, z_max: u32, cache: &mut SgCache) -> Result<Cb2Table> {
    let bar = Choco2::new(h.clone());
    let tallest = (0..=z_max).map(|z| h.eval(z)).max().unwrap_or(0);
    let mut values = vec![vec![None; z_max as usize + 1]; tallest as usize + 1];
    for z in 0..=z_max {
        for y in 0..=h.eval(z) {
            let v = game::sg(&bar, &bar.key(Choco2Position { y, z }), cache)?;
            values[y as usize][z as usize] = Some(v);
        }
    }
    Ok(Cb2Table { values })
}
