//! Exhaustive enumeration of A-parameters of a fixed dimension.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relevance::check_relevant;
use crate::repcore::{validate_parity, AParam, ATerm, Parity, WeilSymbol};

/// Limits for [`enumerate_params`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationBounds {
    pub parity: Parity,
    pub dim: u64,
    /// Largest number of distinct summands; `None` for no limit.
    pub max_terms: Option<usize>,
    /// Largest number of candidate multisets visited before giving up.
    pub budget: u64,
}

impl EnumerationBounds {
    pub fn new(parity: Parity, dim: u64) -> Self {
        EnumerationBounds { parity, dim, max_terms: None, budget: 1_000_000 }
    }
}

/// Parameters found, with the exact number of candidates visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub params: Vec<AParam>,
    pub visited: u64,
}

/// All parameters of the given parity and dimension built from `symbols`,
/// in canonical render order. A candidate is counted as visited when its
/// summands exactly fill the dimension, before the parity filter.
pub fn enumerate_params(symbols: &[WeilSymbol], bounds: &EnumerationBounds) -> Result<Enumeration> {
    if bounds.dim == 0 {
        return Err(Error::NonPositive("enumeration dimension must be positive".to_string()));
    }
    let mut atoms = Vec::new();
    for s in symbols {
        for d in 1..=bounds.dim {
            for a in 1..=bounds.dim {
                if u64::from(s.dim) * d * a <= bounds.dim {
                    atoms.push(ATerm::new(s.clone(), d as u32, a as u32, 1));
                }
            }
        }
    }
    let mut state = Walk { atoms: &atoms, bounds, chosen: Vec::new(), visited: 0, found: Vec::new() };
    state.walk(0, bounds.dim)?;
    let mut params = state.found;
    params.sort_by_key(AParam::render);
    params.dedup();
    Ok(Enumeration { params, visited: state.visited })
}

struct Walk<'a> {
    atoms: &'a [ATerm],
    bounds: &'a EnumerationBounds,
    chosen: Vec<ATerm>,
    visited: u64,
    found: Vec<AParam>,
}

impl Walk<'_> {
    fn walk(&mut self, from: usize, left: u64) -> Result<()> {
        if left == 0 {
            self.visited += 1;
            if self.visited > self.bounds.budget {
                return Err(Error::Budget(self.bounds.budget));
            }
            let p = AParam::new(self.bounds.parity, self.chosen.iter().cloned())?;
            if validate_parity(&p).is_empty() {
                self.found.push(p);
            }
            return Ok(());
        }
        if self.bounds.max_terms.is_some_and(|k| self.chosen.len() >= k) {
            return Ok(());
        }
        for k in from..self.atoms.len() {
            let atom = &self.atoms[k];
            let size = atom.dim();
            let mut mult = 1;
            while size * u64::from(mult) <= left {
                self.chosen.push(ATerm { mult, ..atom.clone() });
                self.walk(k + 1, left - size * u64::from(mult))?;
                self.chosen.pop();
                mult += 1;
            }
        }
        Ok(())
    }
}

/// Which side of the pair is being enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    M,
    N,
}

/// Enumerated parameters relevant to a fixed partner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantSweep {
    pub relevant: Vec<AParam>,
    pub visited: u64,
}

/// Every parameter within `bounds` that forms a relevant pair with `partner`,
/// the enumerated parameter taking the given role.
pub fn enumerate_relevant(
    partner: &AParam,
    role: Role,
    symbols: &[WeilSymbol],
    bounds: &EnumerationBounds,
) -> Result<RelevantSweep> {
    let all = enumerate_params(symbols, bounds)?;
    let relevant = all
        .params
        .into_iter()
        .filter(|p| match role {
            Role::M => check_relevant(p, partner).is_relevant(),
            Role::N => check_relevant(partner, p).is_relevant(),
        })
        .collect();
    Ok(RelevantSweep { relevant, visited: all.visited })
}
