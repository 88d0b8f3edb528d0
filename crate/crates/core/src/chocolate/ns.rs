//! Bounded checks of the NS-property.
//!
//! A one-variable `h` has the property when `h(0) = 0` and, for every `i >= 1`,
//! arguments that agree after dividing by `2^i` have values that agree after
//! dividing by `2^(i-1)`. The property quantifies over all integers, so a pass
//! here only covers the checked range.

use std::fmt;

use super::shape::{FFunction, HFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsViolation {
    /// The function is nonzero at 0.
    NonzeroAtZero { value: u32 },
    /// `z / 2^i == z_prime / 2^i` but `h(z) / 2^(i-1) != h(z_prime) / 2^(i-1)`.
    Quotient { z: u32, z_prime: u32, i: u32 },
}

impl fmt::Display for NsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NsViolation::NonzeroAtZero { value } => write!(f, "value at 0 is {value}"),
            NsViolation::Quotient { z, z_prime, i } => write!(f, "quotient clause fails at ({z}, {z_prime}, {i})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsVerdict {
    /// No violation with arguments in `0..=verified_up_to`.
    Pass { verified_up_to: u32 },
    Fail(NsViolation),
}

impl NsVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, NsVerdict::Pass { .. })
    }
}

impl fmt::Display for NsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NsVerdict::Pass { verified_up_to } => write!(f, "pass (verified on [0,{verified_up_to}])"),
            NsVerdict::Fail(v) => write!(f, "fail: {v}"),
        }
    }
}

/// First quotient-clause violation of `f` on `0..=max`, scanning `i` outermost.
fn quotient_violation(f: impl Fn(u32) -> u32, max: u32, i_max: u32) -> Option<NsViolation> {
    for i in 1..=i_max.min(31) {
        let mut block_start = 0u32;
        let mut block_value = f(0) >> (i - 1);
        for z in 1..=max {
            if z >> i != block_start >> i {
                block_start = z;
                block_value = f(z) >> (i - 1);
            } else if f(z) >> (i - 1) != block_value {
                return Some(NsViolation::Quotient {
                    z: block_start,
                    z_prime: z,
                    i,
                });
            }
        }
    }
    None
}

/// Checks the NS-property of `h` on `0..=z_max` for `1 <= i <= i_max`.
///
/// Table-backed functions are only checked on their own domain, and a pass
/// reports that smaller range.
pub fn ns_check_h(h: &HFunction, z_max: u32, i_max: u32) -> NsVerdict {
    let value = h.eval(0);
    if value != 0 {
        return NsVerdict::Fail(NsViolation::NonzeroAtZero { value });
    }
    let max = h.domain_limit().map_or(z_max, |d| d.min(z_max));
    match quotient_violation(|z| h.eval(z), max, i_max) {
        Some(v) => NsVerdict::Fail(v),
        None => NsVerdict::Pass { verified_up_to: max },
    }
}

/// A one-variable slice of a two-variable shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slice {
    /// `z -> F(n, z)`.
    G(u32),
    /// `x -> F(x, m)`.
    H(u32),
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slice::G(n) => write!(f, "g_{n}"),
            Slice::H(m) => write!(f, "h_{m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceViolation {
    pub slice: Slice,
    pub violation: NsViolation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsFVerdict {
    Pass { x_max: u32, z_max: u32 },
    Fail(SliceViolation),
}

impl fmt::Display for SliceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.slice, self.violation)
    }
}

impl fmt::Display for NsFVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NsFVerdict::Pass { x_max, z_max } => write!(f, "pass up to x = {x_max}, z = {z_max}"),
            NsFVerdict::Fail(v) => write!(f, "fail at {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsFReport {
    pub verdict: NsFVerdict,
    /// Slices whose value at 0 is nonzero. Only the slices through the origin
    /// take part in the verdict; the rest are listed for diagnostics.
    pub nonzero_slice_origins: Vec<(Slice, u32)>,
}

impl NsFReport {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, NsFVerdict::Pass { .. })
    }
}

/// Checks the NS-property of `F` slice by slice: the quotient clause on every
/// `g_n` (`n <= x_max`, over `z <= z_max`) and every `h_m` (`m <= z_max`, over
/// `x <= x_max`), and the zero clause at the origin `F(0, 0)`.
///
/// A slice other than `g_0`/`h_0` may be nonzero at 0 without failing: the
/// stair shape `F(x, z) = h(z)` has constant slices `h_m(x) = h(m)`.
pub fn ns_check_f(f: &FFunction, x_max: u32, z_max: u32, i_max: u32) -> NsFReport {
    let (x_max, z_max) = match f.domain_limit() {
        Some((dx, dz)) => (x_max.min(dx), z_max.min(dz)),
        None => (x_max, z_max),
    };
    let mut nonzero = Vec::new();
    for n in 0..=x_max {
        let v = f.eval(n, 0);
        if v != 0 {
            nonzero.push((Slice::G(n), v));
        }
    }
    for m in 0..=z_max {
        let v = f.eval(0, m);
        if v != 0 {
            nonzero.push((Slice::H(m), v));
        }
    }
    let fail = |slice, violation| NsFReport {
        verdict: NsFVerdict::Fail(SliceViolation { slice, violation }),
        nonzero_slice_origins: nonzero.clone(),
    };
    let origin = f.eval(0, 0);
    if origin != 0 {
        return fail(Slice::G(0), NsViolation::NonzeroAtZero { value: origin });
    }
    for n in 0..=x_max {
        if let Some(v) = quotient_violation(|z| f.eval(n, z), z_max, i_max) {
            return fail(Slice::G(n), v);
        }
    }
    for m in 0..=z_max {
        if let Some(v) = quotient_violation(|x| f.eval(x, m), x_max, i_max) {
            return fail(Slice::H(m), v);
        }
    }
    NsFReport {
        verdict: NsFVerdict::Pass { x_max, z_max },
        nonzero_slice_origins: nonzero,
    }
}
