//! Certification of one-move and SG-decreasing positions by exhaustive
//! follower analysis.

use std::fmt;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::Result;
use crate::game::{self, all_followers, is_terminal, option_keys, PositionKey, Ruleset, SgCache, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// Every follower with SG value 0 is terminal.
    OneMove,
    /// Every follower has a larger SG value than each of its options.
    SgDecreasing,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::OneMove => "one-move",
            CertificateKind::SgDecreasing => "sg-decreasing",
        })
    }
}

/// Evidence that a position violates the certified property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A non-terminal follower with SG value 0.
    Follower(PositionKey),
    /// A follower `from` with an option `to` whose SG value is not smaller.
    Move { from: PositionKey, to: PositionKey },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Follower(g) => write!(f, "{g}"),
            Witness::Move { from, to } => write!(f, "{from} -> {to}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub position: PositionKey,
    pub verdict: bool,
    /// Present exactly when `verdict` is false and the check was exhaustive.
    pub witness: Option<Witness>,
    /// True when the verdict comes from a known theorem rather than a search.
    pub analytic: bool,
}

impl Certificate {
    /// Re-derives the violation recorded in the witness. Returns false if the
    /// witness does not actually violate the definition or is missing.
    pub fn recheck(&self, r: &dyn Ruleset, cache: &mut SgCache) -> Result<bool> {
        let Some(w) = &self.witness else {
            return Ok(false);
        };
        let reachable = all_followers(r, &self.position, DEFAULT_BUDGET)?;
        match (self.kind, w) {
            (CertificateKind::OneMove, Witness::Follower(g)) => Ok(reachable.contains(g)
                && game::sg(r, g, cache)? == 0
                && !is_terminal(r, g)),
            (CertificateKind::SgDecreasing, Witness::Move { from, to }) => {
                Ok(reachable.contains(from)
                    && option_keys(r, from).contains(to)
                    && game::sg(r, from, cache)? <= game::sg(r, to, cache)?)
            }
            _ => Ok(false),
        }
    }
}

/// Certifies positions, caching SG values and verdicts across calls.
pub struct Classifier {
    cache: SgCache,
    verdicts: FxHashMap<(CertificateKind, PositionKey), Certificate>,
    budget: usize,
    use_analytic: bool,
}

impl Default for Classifier {
    fn default() -> Self {
        Self::new()
    }
}

impl Classifier {
    pub fn new() -> Self {
        Classifier {
            cache: SgCache::new(),
            verdicts: FxHashMap::default(),
            budget: DEFAULT_BUDGET,
            use_analytic: false,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self.cache = SgCache::with_budget(budget);
        self
    }

    /// Accept rulesets' proven answers (single-pile nim, chocolate bars with
    /// a proven NS shape) instead of searching.
    pub fn with_analytic(mut self, enabled: bool) -> Self {
        self.use_analytic = enabled;
        self
    }

    pub fn cache(&mut self) -> &mut SgCache {
        &mut self.cache
    }

    pub fn is_one_move(&mut self, r: &dyn Ruleset, g: &PositionKey) -> Result<Certificate> {
        let known = if self.use_analytic {
            r.analytic_one_move(g.payload())
        } else {
            None
        };
        self.certify(r, g, CertificateKind::OneMove, known)
    }

    pub fn is_sg_decreasing(&mut self, r: &dyn Ruleset, g: &PositionKey) -> Result<Certificate> {
        let known = if self.use_analytic {
            r.analytic_sg_decreasing(g.payload())
        } else {
            None
        };
        self.certify(r, g, CertificateKind::SgDecreasing, known)
    }

    fn certify(
        &mut self,
        r: &dyn Ruleset,
        g: &PositionKey,
        kind: CertificateKind,
        known: Option<bool>,
    ) -> Result<Certificate> {
        if let Some(verdict) = known {
            return Ok(Certificate {
                kind,
                position: g.clone(),
                verdict,
                witness: None,
                analytic: true,
            });
        }
        if let Some(c) = self.verdicts.get(&(kind, g.clone())) {
            return Ok(c.clone());
        }
        let witness = match kind {
            CertificateKind::OneMove => self.one_move_witness(r, g)?,
            CertificateKind::SgDecreasing => self.decreasing_witness(r, g)?,
        };
        let cert = Certificate {
            kind,
            position: g.clone(),
            verdict: witness.is_none(),
            witness,
            analytic: false,
        };
        self.verdicts.insert((kind, g.clone()), cert.clone());
        Ok(cert)
    }

    fn one_move_witness(&mut self, r: &dyn Ruleset, g: &PositionKey) -> Result<Option<Witness>> {
        for f in all_followers(r, g, self.budget)? {
            if game::sg_with_budget(r, &f, &mut self.cache, self.budget)? == 0 && !is_terminal(r, &f) {
                return Ok(Some(Witness::Follower(f)));
            }
        }
        Ok(None)
    }

    fn decreasing_witness(&mut self, r: &dyn Ruleset, g: &PositionKey) -> Result<Option<Witness>> {
        for f in all_followers(r, g, self.budget)? {
            let v = game::sg_with_budget(r, &f, &mut self.cache, self.budget)?;
            // Report the worst offending option, ties going to the largest payload.
            let mut worst: Option<(u32, PositionKey)> = None;
            for o in option_keys(r, &f) {
                let w = game::sg_with_budget(r, &o, &mut self.cache, self.budget)?;
                if w >= v && worst.as_ref().is_none_or(|(bw, bo)| (w, o.payload()) > (*bw, bo.payload())) {
                    worst = Some((w, o));
                }
            }
            if let Some((_, o)) = worst {
                return Ok(Some(Witness::Move { from: f, to: o }));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chocolate::{Choco2, HFunction};
    use crate::nim::{Nim, TwoPileNim};

    #[test]
    fn nim_is_both() {
        let nim = Nim::new();
        let mut cl = Classifier::new();
        for m in 0..12 {
            assert!(cl.is_one_move(&nim, &nim.pile(m)).unwrap().verdict);
            assert!(cl.is_sg_decreasing(&nim, &nim.pile(m)).unwrap().verdict);
        }
    }

    #[test]
    fn chocolate_is_one_move_but_not_decreasing() {
        let r = Choco2::new(HFunction::floor_div(1).unwrap());
        let mut cl = Classifier::new();
        let g = r.position(&[1, 3]).unwrap();
        assert!(cl.is_one_move(&r, &g).unwrap().verdict);
        let cert = cl.is_sg_decreasing(&r, &g).unwrap();
        assert!(!cert.verdict);
        assert_eq!(
            cert.witness,
            Some(Witness::Move {
                from: g.clone(),
                to: r.position(&[1, 2]).unwrap()
            })
        );
        assert!(cert.recheck(&r, &mut SgCache::new()).unwrap());
    }

    #[test]
    fn two_pile_nim_is_not_one_move() {
        let r = TwoPileNim::new();
        let g = r.position(&[1, 1]).unwrap();
        let cert = Classifier::new().is_one_move(&r, &g).unwrap();
        assert!(!cert.verdict);
        assert_eq!(cert.witness, Some(Witness::Follower(g)));
        assert!(cert.recheck(&r, &mut SgCache::new()).unwrap());
    }

    #[test]
    fn terminal_is_vacuously_decreasing() {
        let r = Choco2::new(HFunction::log_step());
        let g = r.position(&[0, 0]).unwrap();
        let mut cl = Classifier::new();
        assert!(cl.is_sg_decreasing(&r, &g).unwrap().verdict);
        assert!(cl.is_one_move(&r, &g).unwrap().verdict);
    }

    #[test]
    fn analytic_certificates_agree_with_search() {
        let r = Choco2::new(HFunction::floor_div(2).unwrap());
        let mut exact = Classifier::new();
        let mut proven = Classifier::new().with_analytic(true);
        for z in 0..16u64 {
            for y in 0..=(z / 4) {
                let g = r.position(&[y, z]).unwrap();
                let a = proven.is_one_move(&r, &g).unwrap();
                assert!(a.analytic);
                assert_eq!(a.verdict, exact.is_one_move(&r, &g).unwrap().verdict);
            }
        }
    }

    #[test]
    fn forged_witness_fails_recheck() {
        let r = Nim::new();
        let cert = Certificate {
            kind: CertificateKind::OneMove,
            position: r.pile(4),
            verdict: false,
            witness: Some(Witness::Follower(r.pile(2))),
            analytic: false,
        };
        assert!(!cert.recheck(&r, &mut SgCache::new()).unwrap());
    }
}
