use std::fmt;
use std::str::FromStr;

use crate::error::{GameError, Result};

/// Single-variable shape `h` of a two-dimensional bar: column `z` holds rows
/// `0..=h(z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HFunction {
    /// `h(z) = floor(z / 2k)`.
    FloorDiv { k: u32 },
    /// `h(z) = 2^floor(log2 z) - 1` for `z > 0`, `h(0) = 0`.
    LogStep,
    /// Explicit values; arguments past the end reuse the last value.
    Table(Vec<u32>),
}

impl HFunction {
    pub fn floor_div(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(GameError::InvalidFunction("floor-div needs k >= 1".into()));
        }
        Ok(HFunction::FloorDiv { k })
    }

    pub fn log_step() -> Self {
        HFunction::LogStep
    }

    /// Table-backed function; must be nonempty and monotonically increasing.
    pub fn table(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(GameError::InvalidFunction("empty table".into()));
        }
        if let Some(i) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(GameError::InvalidFunction(format!(
                "table is not monotone: h({}) = {} > h({}) = {}",
                i,
                values[i],
                i + 1,
                values[i + 1]
            )));
        }
        Ok(HFunction::Table(values))
    }

    pub fn eval(&self, z: u32) -> u32 {
        match self {
            HFunction::FloorDiv { k } => (z as u64 / (2 * *k as u64)) as u32,
            HFunction::LogStep => {
                if z == 0 {
                    0
                } else {
                    (1u32 << (31 - z.leading_zeros())) - 1
                }
            }
            HFunction::Table(v) => v[(z as usize).min(v.len() - 1)],
        }
    }

    /// True for the closed forms known to have the NS-property.
    pub fn is_proven_ns(&self) -> bool {
        !matches!(self, HFunction::Table(_))
    }

    /// Largest argument the function is actually defined on, if bounded.
    pub fn domain_limit(&self) -> Option<u32> {
        match self {
            HFunction::Table(v) => Some(v.len() as u32 - 1),
            _ => None,
        }
    }

    /// Notes on properties the shape is not required to have but which a
    /// reader may expect: a value at zero other than 0, or a table that skips values.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.eval(0) != 0 {
            notes.push(format!("h(0) = {} is not 0", self.eval(0)));
        }
        if let HFunction::Table(v) = self {
            if let Some(w) = v.windows(2).find(|w| w[1] > w[0] + 1) {
                notes.push(format!(
                    "table is not surjective onto an initial segment: jumps from {} to {}",
                    w[0], w[1]
                ));
            }
        }
        notes
    }
}

impl fmt::Display for HFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HFunction::FloorDiv { k } => write!(f, "floor-div:{k}"),
            HFunction::LogStep => f.write_str("log-step"),
            HFunction::Table(v) => {
                let vals: Vec<String> = v.iter().map(u32::to_string).collect();
                write!(f, "table:{}", vals.join(","))
            }
        }
    }
}

/// Parses `floor-div:<k>`, `log-step` or an inline `table:<v0>,<v1>,...`.
impl FromStr for HFunction {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "log-step" {
            return Ok(HFunction::LogStep);
        }
        if let Some(k) = s.strip_prefix("floor-div:") {
            let k = k
                .parse()
                .map_err(|_| GameError::InvalidFunction(format!("bad floor-div parameter {k:?}")))?;
            return HFunction::floor_div(k);
        }
        if let Some(list) = s.strip_prefix("table:") {
            let values = list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| GameError::InvalidFunction(format!("bad table entry {t:?}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            return HFunction::table(values);
        }
        Err(GameError::InvalidFunction(format!("unknown shape {s:?}")))
    }
}

/// Two-variable shape `F` of a three-dimensional bar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FFunction {
    /// `F(x, z) = h(z)`: the stair shape.
    FromH(HFunction),
    /// `F(x, z) = floor((x + z) / 3)`.
    XPlusZOver3,
    /// `F(x, z) = floor(z / 2)`.
    HalfZ,
    /// Explicit values indexed `[x][z]`, clamped at the edges.
    Table(Vec<Vec<u32>>),
}

impl FFunction {
    pub fn from_h(h: HFunction) -> Self {
        FFunction::FromH(h)
    }

    /// Rectangular table that is monotone along both axes.
    pub fn table(values: Vec<Vec<u32>>) -> Result<Self> {
        let width = values.first().map_or(0, Vec::len);
        if width == 0 || values.iter().any(|r| r.len() != width) {
            return Err(GameError::InvalidFunction("table must be a nonempty rectangle".into()));
        }
        for x in 0..values.len() {
            for z in 0..width {
                let v = values[x][z];
                if (x + 1 < values.len() && values[x + 1][z] < v) || (z + 1 < width && values[x][z + 1] < v) {
                    return Err(GameError::InvalidFunction(format!(
                        "table is not monotone at ({x}, {z})"
                    )));
                }
            }
        }
        Ok(FFunction::Table(values))
    }

    pub fn eval(&self, x: u32, z: u32) -> u32 {
        match self {
            FFunction::FromH(h) => h.eval(z),
            FFunction::XPlusZOver3 => ((x as u64 + z as u64) / 3) as u32,
            FFunction::HalfZ => z / 2,
            FFunction::Table(t) => {
                let row = &t[(x as usize).min(t.len() - 1)];
                row[(z as usize).min(row.len() - 1)]
            }
        }
    }

    /// Bounds `(x_max, z_max)` of the defined domain for table-backed shapes.
    pub fn domain_limit(&self) -> Option<(u32, u32)> {
        match self {
            FFunction::FromH(h) => h.domain_limit().map(|z| (u32::MAX, z)),
            FFunction::Table(t) => Some((t.len() as u32 - 1, t[0].len() as u32 - 1)),
            _ => None,
        }
    }
}

impl fmt::Display for FFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FFunction::FromH(h) => write!(f, "from-h:{h}"),
            FFunction::XPlusZOver3 => f.write_str("f1"),
            FFunction::HalfZ => f.write_str("f2"),
            FFunction::Table(t) => {
                let rows: Vec<String> = t
                    .iter()
                    .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "table:{}", rows.join(";"))
            }
        }
    }
}

/// Parses `f1`, `f2`, `from-h:<h selector>` or inline `table:<row>;<row>...`.
impl FromStr for FFunction {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f1" => return Ok(FFunction::XPlusZOver3),
            "f2" => return Ok(FFunction::HalfZ),
            _ => {}
        }
        if let Some(h) = s.strip_prefix("from-h:") {
            return Ok(FFunction::FromH(h.parse()?));
        }
        if let Some(rows) = s.strip_prefix("table:") {
            let t = rows
                .split(';')
                .map(|r| {
                    r.split(',')
                        .map(|t| {
                            t.trim().parse().map_err(|_| {
                                GameError::InvalidFunction(format!("bad table entry {t:?}"))
                            })
                        })
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            return FFunction::table(t);
        }
        Err(GameError::InvalidFunction(format!("unknown shape {s:?}")))
    }
}
