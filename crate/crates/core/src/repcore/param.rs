use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::half::Half;
use crate::repcore::symbol::{Duality, SymbolTable, WeilSymbol};

/// The group type an A-parameter is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Gl,
    Symplectic,
    Orthogonal,
    #[serde(alias = "conj-orthogonal")]
    ConjugateOrthogonal,
    #[serde(alias = "conj-symplectic")]
    ConjugateSymplectic,
}

impl Parity {
    /// Duality every summand must have, `None` for `gl`.
    pub fn duality(self) -> Option<Duality> {
        match self {
            Parity::Gl => None,
            Parity::Symplectic => Some(Duality::Symplectic),
            Parity::Orthogonal => Some(Duality::Orthogonal),
            Parity::ConjugateOrthogonal => Some(Duality::ConjugateOrthogonal),
            Parity::ConjugateSymplectic => Some(Duality::ConjugateSymplectic),
        }
    }

    /// `+1` orthogonal-like, `-1` symplectic-like, `None` for `gl`.
    pub fn sign(self) -> Option<i8> {
        self.duality().and_then(Duality::sign)
    }

    /// The parity of opposite sign (`gl` is fixed).
    pub fn opposite(self) -> Parity {
        match self {
            Parity::Gl => Parity::Gl,
            Parity::Symplectic => Parity::Orthogonal,
            Parity::Orthogonal => Parity::Symplectic,
            Parity::ConjugateOrthogonal => Parity::ConjugateSymplectic,
            Parity::ConjugateSymplectic => Parity::ConjugateOrthogonal,
        }
    }

    pub fn is_classical(self) -> bool {
        self != Parity::Gl
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Parity::Gl => "gl",
            Parity::Symplectic => "symplectic",
            Parity::Orthogonal => "orthogonal",
            Parity::ConjugateOrthogonal => "conjugate-orthogonal",
            Parity::ConjugateSymplectic => "conjugate-symplectic",
        };
        f.write_str(s)
    }
}

/// `mult · (weil ⊠ [d_dim] ⊠ [a_dim])`: Deligne factor `[d_dim]`, Arthur factor `[a_dim]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ATerm {
    pub weil: WeilSymbol,
    pub d_dim: u32,
    pub a_dim: u32,
    pub mult: u32,
}

impl ATerm {
    pub fn new(weil: WeilSymbol, d_dim: u32, a_dim: u32, mult: u32) -> Self {
        ATerm { weil, d_dim, a_dim, mult }
    }

    pub fn dim(&self) -> u64 {
        u64::from(self.mult) * u64::from(self.weil.dim) * u64::from(self.d_dim) * u64::from(self.a_dim)
    }

    pub fn composite_duality(&self) -> Duality {
        self.weil.duality.composite(self.d_dim, self.a_dim)
    }

    fn key(&self) -> (&str, u32, u32) {
        (self.weil.id.as_str(), self.d_dim, self.a_dim)
    }

    /// Canonical rendering of a single term.
    pub fn render(&self) -> String {
        let body = format!("{}:D{}:A{}", self.weil.id, self.d_dim, self.a_dim);
        if self.mult == 1 {
            body
        } else {
            format!("{}*{}", self.mult, body)
        }
    }
}

/// A formal sum of terms `ρ ⊠ [a] ⊠ [b]`, canonically merged and ordered by
/// `(weil id, d_dim, a_dim)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AParam {
    terms: Vec<ATerm>,
    parity: Parity,
}

impl AParam {
    /// Merges the terms into canonical form. Parity is recorded but not
    /// enforced here; see [`crate::repcore::validate_parity`].
    pub fn new(parity: Parity, terms: impl IntoIterator<Item = ATerm>) -> Result<Self> {
        let mut merged: BTreeMap<(String, u32, u32), ATerm> = BTreeMap::new();
        let mut seen: BTreeMap<String, WeilSymbol> = BTreeMap::new();
        for term in terms {
            if term.d_dim == 0 || term.a_dim == 0 || term.weil.dim == 0 {
                return Err(Error::NonPositive(term.render()));
            }
            if term.mult == 0 {
                continue;
            }
            match seen.get(&term.weil.id) {
                Some(sym) if sym != &term.weil => {
                    return Err(Error::SymbolTable(format!(
                        "symbol `{}` used with two different declarations",
                        term.weil.id
                    )))
                }
                Some(_) => {}
                None => {
                    seen.insert(term.weil.id.clone(), term.weil.clone());
                }
            }
            let key = (term.weil.id.clone(), term.d_dim, term.a_dim);
            merged.entry(key).and_modify(|t| t.mult += term.mult).or_insert(term);
        }
        Ok(AParam { terms: merged.into_values().collect(), parity })
    }

    /// The zero parameter.
    pub fn empty(parity: Parity) -> Self {
        AParam { terms: Vec::new(), parity }
    }

    pub(crate) fn from_canonical_parts(parity: Parity, terms: Vec<ATerm>) -> Self {
        AParam::new(parity, terms).expect("terms derived from a valid parameter")
    }

    pub fn terms(&self) -> &[ATerm] {
        &self.terms
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn with_parity(&self, parity: Parity) -> AParam {
        AParam { terms: self.terms.clone(), parity }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> u64 {
        self.terms.iter().map(ATerm::dim).sum()
    }

    /// Multiplicity of `id ⊠ [d] ⊠ [a]`.
    pub fn mult_of(&self, id: &str, d: u32, a: u32) -> u32 {
        self.terms.binary_search_by(|t| t.key().cmp(&(id, d, a))).map(|i| self.terms[i].mult).unwrap_or(0)
    }

    /// Every Arthur factor is `[1]`.
    pub fn is_tempered(&self) -> bool {
        self.terms.iter().all(|t| t.a_dim == 1)
    }

    /// Every Deligne factor is `[1]`.
    pub fn is_deligne_trivial(&self) -> bool {
        self.terms.iter().all(|t| t.d_dim == 1)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.iter().all(|t| t.mult == 1)
    }

    /// Multiplicity free with every summand of the declared classical parity.
    pub fn is_discrete(&self) -> bool {
        self.parity.is_classical()
            && self.is_multiplicity_free()
            && self.terms.iter().all(|t| Some(t.composite_duality()) == self.parity.duality())
    }

    /// Errors with `NotDiscrete` unless [`AParam::is_discrete`] holds.
    pub fn require_discrete(&self) -> Result<()> {
        if self.is_discrete() {
            Ok(())
        } else {
            Err(Error::NotDiscrete(format!("{} ({})", self.render(), self.parity)))
        }
    }

    /// Distinct symbols occurring in the parameter.
    pub fn symbols(&self) -> Vec<WeilSymbol> {
        let mut out: Vec<WeilSymbol> = Vec::new();
        for t in &self.terms {
            if out.last() != Some(&t.weil) {
                out.push(t.weil.clone());
            }
        }
        out
    }

    /// Canonical text form; the zero parameter renders as `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms.iter().map(ATerm::render).collect::<Vec<_>>().join(" + ")
    }

    /// Direct sum; parity is taken from `self`.
    pub fn sum(&self, other: &AParam) -> Result<AParam> {
        AParam::new(self.parity, self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub(crate) fn map_terms(&self, parity: Parity, f: impl Fn(&ATerm) -> Vec<ATerm>) -> AParam {
        AParam::from_canonical_parts(parity, self.terms.iter().flat_map(f).collect())
    }
}

impl fmt::Display for AParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for AParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            parity: Parity,
            param: String,
            dim: u64,
            terms: Vec<TermView<'a>>,
        }
        #[derive(Serialize)]
        struct TermView<'a> {
            weil: &'a str,
            d_dim: u32,
            a_dim: u32,
            mult: u32,
        }
        View {
            parity: self.parity,
            param: self.render(),
            dim: self.dim(),
            terms: self
                .terms
                .iter()
                .map(|t| TermView { weil: &t.weil.id, d_dim: t.d_dim, a_dim: t.a_dim, mult: t.mult })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Parses `[mult "*"] id ":D" int ":A" int` terms joined by `+`.
///
/// Symbols are resolved in `symtab`. When the parity is classical, every
/// summand must have the matching composite duality.
pub fn parse_param(text: &str, symtab: &SymbolTable, parity: Parity) -> Result<AParam> {
    let text = text.trim();
    let mut terms = Vec::new();
    if text != "0" {
        for raw in text.split('+') {
            terms.push(parse_term(raw.trim(), symtab)?);
        }
    }
    let param = AParam::new(parity, terms)?;
    let report = crate::repcore::validate_parity(&param);
    if !report.is_empty() {
        let list: Vec<String> = report.iter().map(|v| v.term.clone()).collect();
        return Err(Error::ParityMismatch(format!("terms [{}] are not {}", list.join(", "), parity)));
    }
    Ok(param)
}

fn parse_term(raw: &str, symtab: &SymbolTable) -> Result<ATerm> {
    let bad = |why: &str| Error::Parse(format!("term `{raw}`: {why}"));
    if raw.is_empty() {
        return Err(bad("empty term"));
    }
    let (mult, body) = match raw.split_once('*') {
        Some((m, rest)) => {
            let m: u32 = m.trim().parse().map_err(|_| bad("multiplicity is not an integer"))?;
            (m, rest.trim())
        }
        None => (1, raw),
    };
    let mut parts = body.rsplitn(3, ':');
    let a_part = parts.next().ok_or_else(|| bad("missing `:A`"))?;
    let d_part = parts.next().ok_or_else(|| bad("missing `:D`"))?;
    let id = parts.next().ok_or_else(|| bad("missing symbol id"))?.trim();
    let dim_of = |part: &str, prefix: char| -> Result<u32> {
        let digits = part
            .trim()
            .strip_prefix(prefix)
            .ok_or_else(|| bad(&format!("expected `{prefix}` before the dimension")))?;
        let value: i64 = digits.trim().parse().map_err(|_| bad("dimension is not an integer"))?;
        if value <= 0 {
            return Err(Error::NonPositive(raw.to_string()));
        }
        u32::try_from(value).map_err(|_| bad("dimension too large"))
    };
    let d_dim = dim_of(d_part, 'D')?;
    let a_dim = dim_of(a_part, 'A')?;
    if mult == 0 {
        return Err(Error::NonPositive(raw.to_string()));
    }
    let weil = symtab.get(id)?.clone();
    Ok(ATerm::new(weil, d_dim, a_dim, mult))
}

/// `mult · (weil ⊠ [d_dim] ⊗ |·|^twist)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LTerm {
    #[serde(serialize_with = "serialize_symbol_id")]
    pub weil: WeilSymbol,
    pub d_dim: u32,
    pub twist: Half,
    pub mult: u32,
}

fn serialize_symbol_id<S: Serializer>(sym: &WeilSymbol, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&sym.id)
}

/// An L-parameter: a canonical multiset of twisted WD-representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LParam {
    pub terms: Vec<LTerm>,
}

impl LParam {
    pub fn new(terms: impl IntoIterator<Item = LTerm>) -> Self {
        let mut merged: BTreeMap<(String, u32, Half), LTerm> = BTreeMap::new();
        for t in terms.into_iter().filter(|t| t.mult > 0) {
            merged.entry((t.weil.id.clone(), t.d_dim, t.twist)).and_modify(|e| e.mult += t.mult).or_insert(t);
        }
        LParam { terms: merged.into_values().collect() }
    }

    pub fn dim(&self) -> u64 {
        self.terms.iter().map(|t| u64::from(t.mult) * u64::from(t.weil.dim) * u64::from(t.d_dim)).sum()
    }

    /// `(ρ, a, t) ↦ (ρ^∨, a, −t)`.
    pub fn dual(&self) -> LParam {
        LParam::new(self.terms.iter().map(|t| LTerm {
            weil: t.weil.dual(),
            d_dim: t.d_dim,
            twist: -t.twist,
            mult: t.mult,
        }))
    }
}

/// A partition `n_1 ≥ n_2 ≥ … ≥ n_r ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::NonPositive("partition part 0".to_string()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }
}
