//! Root-number signs, distinguished characters of component groups and the
//! global automorphy test.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::relevance::{
    check_relevant, endoscopic_blocks, special_pairs_of, Block, EndoscopicBlocks, NotRelevant, Relevance, Side,
};
use crate::repcore::{require_parity, AParam, Parity, WeilSymbol, TRIVIAL_ID};

pub use crate::repcore::swap_sl2;

/// User-declared signs: `ε(½, ρ⊗τ)` on unordered pairs and `(det ρ)(−1)`.
/// Absent entries are errors; the only defaults are the trivial ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignTable {
    eps: BTreeMap<(String, String), i8>,
    detm1: BTreeMap<String, i8>,
}

#[derive(Deserialize, Serialize)]
struct EpsEntry {
    a: String,
    b: String,
    value: i8,
}

#[derive(Deserialize, Serialize)]
struct DetEntry {
    id: String,
    value: i8,
}

#[derive(Deserialize, Serialize)]
struct SignFile {
    #[serde(default)]
    eps: Vec<EpsEntry>,
    #[serde(default)]
    detm1: Vec<DetEntry>,
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

fn check_sign(v: i8, what: &str) -> Result<i8> {
    match v {
        1 | -1 => Ok(v),
        _ => Err(Error::Parse(format!("{what} must be +1 or -1, got {v}"))),
    }
}

impl SignTable {
    pub fn new() -> Self {
        SignTable::default()
    }

    /// Declares `ε(½, a⊗b)`. Conflicting redeclarations and `ε(1⊗1) = −1` are errors.
    pub fn set_eps(&mut self, a: &str, b: &str, value: i8) -> Result<()> {
        let value = check_sign(value, &format!("eps({a},{b})"))?;
        if a == TRIVIAL_ID && b == TRIVIAL_ID && value != 1 {
            return Err(Error::Precondition("eps(1,1) is +1".to_string()));
        }
        match self.eps.insert(pair_key(a, b), value) {
            Some(old) if old != value => Err(Error::Precondition(format!("eps({a},{b}) declared twice"))),
            _ => Ok(()),
        }
    }

    /// Declares `(det ρ)(−1)`.
    pub fn set_detm1(&mut self, id: &str, value: i8) -> Result<()> {
        let value = check_sign(value, &format!("detm1({id})"))?;
        if id == TRIVIAL_ID && value != 1 {
            return Err(Error::Precondition("detm1(1) is +1".to_string()));
        }
        match self.detm1.insert(id.to_string(), value) {
            Some(old) if old != value => Err(Error::Precondition(format!("detm1({id}) declared twice"))),
            _ => Ok(()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SignFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut t = SignTable::new();
        for e in file.eps {
            t.set_eps(&e.a, &e.b, e.value)?;
        }
        for d in file.detm1 {
            t.set_detm1(&d.id, d.value)?;
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let file = SignFile {
            eps: self.eps.iter().map(|((a, b), &value)| EpsEntry { a: a.clone(), b: b.clone(), value }).collect(),
            detm1: self.detm1.iter().map(|(id, &value)| DetEntry { id: id.clone(), value }).collect(),
        };
        serde_json::to_string_pretty(&file).expect("sign tables serialize")
    }

    pub fn base_eps(&self, a: &str, b: &str) -> Result<i8> {
        if a == TRIVIAL_ID && b == TRIVIAL_ID {
            return Ok(1);
        }
        self.eps.get(&pair_key(a, b)).copied().ok_or_else(|| Error::MissingSign(format!("eps({a},{b})")))
    }

    pub fn detm1(&self, id: &str) -> Result<i8> {
        if id == TRIVIAL_ID {
            return Ok(1);
        }
        self.detm1.get(id).copied().ok_or_else(|| Error::MissingSign(format!("detm1({id})")))
    }
}

fn pow_sign(base: i8, exp: u64) -> i8 {
    if base == -1 && exp % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `ε(ρ⊠[a] ⊗ τ⊠[b]) = ε(ρ⊗τ)^{ab}`, times `(−1)^{min(a,b)·(max(a,b)−1)}` when `ρ ≅ τ`.
pub fn eps_block(rho: &WeilSymbol, a: u32, tau: &WeilSymbol, b: u32, t: &SignTable) -> Result<i8> {
    for s in [rho, tau] {
        if !s.is_selfdual() {
            return Err(Error::Precondition(format!("`{}` is not selfdual", s.id)));
        }
    }
    let base = pow_sign(t.base_eps(&rho.id, &tau.id)?, u64::from(a) * u64::from(b));
    if rho.id == tau.id {
        let n = u64::from(a.min(b)) * u64::from(a.max(b) - 1);
        Ok(base * pow_sign(-1, n))
    } else {
        Ok(base)
    }
}

/// An element of the canonical basis of a component group: the summand
/// `weil ⊠ [d_dim] ⊠ [a_dim]` of the parameter on `side`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisElement {
    pub side: Side,
    pub weil: String,
    pub d_dim: u32,
    pub a_dim: u32,
}

impl BasisElement {
    pub fn new(side: Side, weil: &str, d_dim: u32, a_dim: u32) -> Self {
        BasisElement { side, weil: weil.to_string(), d_dim, a_dim }
    }

    fn on_m(block: &Block) -> Self {
        BasisElement::new(Side::M, &block.label.weil.id, block.label.d_dim, block.m_dim)
    }

    fn on_n(block: &Block) -> Self {
        BasisElement::new(Side::N, &block.label.weil.id, block.label.d_dim, block.n_dim)
    }

    pub fn render(&self) -> String {
        format!("{:?}:{}:D{}:A{}", self.side, self.weil, self.d_dim, self.a_dim)
    }
}

/// Values `±1` on basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct CharacterAssignment(BTreeMap<BasisElement, i8>);

impl CharacterAssignment {
    pub fn new() -> Self {
        CharacterAssignment::default()
    }

    pub fn insert(&mut self, e: BasisElement, value: i8) {
        self.0.insert(e, value);
    }

    pub fn get(&self, e: &BasisElement) -> Option<i8> {
        self.0.get(e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisElement, i8)> {
        self.0.iter().map(|(e, &v)| (e, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.values().all(|&v| v == 1)
    }
}

impl Serialize for CharacterAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            element: String,
            side: Side,
            weil: &'a str,
            d_dim: u32,
            a_dim: u32,
            value: i8,
        }
        s.collect_seq(self.0.iter().map(|(e, &value)| Entry {
            element: e.render(),
            side: e.side,
            weil: &e.weil,
            d_dim: e.d_dim,
            a_dim: e.a_dim,
            value,
        }))
    }
}

fn require_tempered_discrete(p: &AParam, what: &str) -> Result<()> {
    p.require_discrete()?;
    if !p.is_tempered() {
        return Err(Error::Precondition(format!("{what} must be tempered")));
    }
    Ok(())
}

/// `det(P)(−1) = ∏ detm1(ρ)^{d·mult}` over the summands `ρ ⊠ [d]` of `P`.
fn det_param(p: &AParam, t: &SignTable) -> Result<i8> {
    p.terms().iter().try_fold(1i8, |acc, term| {
        Ok(acc * pow_sign(t.detm1(&term.weil.id)?, u64::from(term.d_dim) * u64::from(term.mult)))
    })
}

/// `base^{exp/2}`, which must be well defined.
fn half_power(base: i8, exp: u64, what: &str) -> Result<i8> {
    if exp % 2 == 1 {
        if base == -1 {
            return Err(Error::Precondition(format!("{what} is raised to a non-integral power")));
        }
        return Ok(1);
    }
    Ok(pow_sign(base, exp / 2))
}

/// One side of the distinguished character: for each summand `ρ⊠[a]` of
/// `own`, `ε(ρ⊠[a]⊗other) · (det ρ)(−1)^{a·dim other/2} · (det other)(−1)^{a·dim ρ/2}`.
fn character_side(
    own: &AParam,
    other: &AParam,
    side: Side,
    t: &SignTable,
    out: &mut CharacterAssignment,
) -> Result<()> {
    let det_other = det_param(other, t)?;
    let dim_other = other.dim();
    for s in own.terms() {
        let mut value = 1i8;
        for mu in other.terms() {
            value *= pow_sign(eps_block(&s.weil, s.d_dim, &mu.weil, mu.d_dim, t)?, u64::from(mu.mult));
        }
        let a = u64::from(s.d_dim);
        value *= half_power(t.detm1(&s.weil.id)?, a * dim_other, "det(rho)(-1)")?;
        value *= half_power(det_other, a * u64::from(s.weil.dim), "det(N0)(-1)")?;
        out.insert(BasisElement::new(side, &s.weil.id, s.d_dim, s.a_dim), value);
    }
    Ok(())
}

/// The distinguished character for a tempered pair, `m0` symplectic and
/// `n0` orthogonal; the `N_0` side uses the mirrored recipe.
pub fn distinguished_character(m0: &AParam, n0: &AParam, t: &SignTable) -> Result<CharacterAssignment> {
    require_parity(m0, &[Parity::Symplectic], "M0")?;
    require_parity(n0, &[Parity::Orthogonal], "N0")?;
    require_tempered_discrete(m0, "M0")?;
    require_tempered_discrete(n0, "N0")?;
    let mut out = CharacterAssignment::new();
    character_side(m0, n0, Side::M, t, &mut out)?;
    character_side(n0, m0, Side::N, t, &mut out)?;
    Ok(out)
}

/// Present Deligne dimensions per `(ρ, parity of d)`.
fn chains(m: &AParam) -> Result<BTreeMap<(String, u32), Vec<u32>>> {
    require_tempered_discrete(m, "the parameter")?;
    let mut out: BTreeMap<(String, u32), Vec<u32>> = BTreeMap::new();
    for t in m.terms() {
        out.entry((t.weil.id.clone(), t.d_dim % 2)).or_default().push(t.d_dim);
    }
    for v in out.values_mut() {
        v.sort_unstable();
    }
    Ok(out)
}

/// Whether `ρ⊠[a+2] ⊂ M` implies `ρ⊠[a] ⊂ M` for every `ρ` and `a ≥ 1`.
pub fn without_gaps(m: &AParam) -> Result<bool> {
    Ok(chains(m)?.values().all(|ds| ds.iter().all(|&d| d <= 2 || ds.contains(&(d - 2)))))
}

/// Runs of consecutive dimensions `d, d+2, …` within one chain.
fn runs(ds: &[u32]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for &d in ds {
        match out.last_mut() {
            Some(run) if *run.last().expect("runs are non-empty") + 2 == d => run.push(d),
            _ => out.push(vec![d]),
        }
    }
    out
}

/// Maximum number of free signs enumerated by [`alternating_characters`].
pub const MAX_FREE_SIGNS: usize = 20;

/// Every character with `α(ρ⊠[a]) = −α(ρ⊠[a+2])` whenever both occur and
/// `α(ρ⊠[2]) = −1`. Each run not starting at `[2]` carries a free sign.
pub fn alternating_characters(m: &AParam) -> Result<Vec<CharacterAssignment>> {
    let mut runs_all: Vec<(String, Vec<u32>, Option<i8>)> = Vec::new();
    for ((id, _), ds) in chains(m)? {
        for run in runs(&ds) {
            let forced = (run[0] == 2).then_some(-1);
            runs_all.push((id.clone(), run, forced));
        }
    }
    let free: Vec<usize> = (0..runs_all.len()).filter(|&k| runs_all[k].2.is_none()).collect();
    if free.len() > MAX_FREE_SIGNS {
        return Err(Error::Budget(1 << MAX_FREE_SIGNS));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << free.len()) {
        let mut alpha = CharacterAssignment::new();
        for (k, (id, run, forced)) in runs_all.iter().enumerate() {
            let start = forced.unwrap_or_else(|| {
                let bit = free.iter().position(|&f| f == k).expect("free run");
                if mask >> bit & 1 == 1 {
                    -1
                } else {
                    1
                }
            });
            for (step, &d) in run.iter().enumerate() {
                let v = if step % 2 == 0 { start } else { -start };
                alpha.insert(BasisElement::new(Side::M, id, d, 1), v);
            }
        }
        out.push(alpha);
    }
    Ok(out)
}

/// Whether `alpha` alternates along every chain of `m`.
pub fn is_alternating(m: &AParam, alpha: &CharacterAssignment) -> Result<bool> {
    let chains = chains(m)?;
    let domain: usize = chains.values().map(Vec::len).sum();
    let mut ok = alpha.len() == domain;
    for ((id, _), ds) in &chains {
        for &d in ds {
            let here = alpha
                .get(&BasisElement::new(Side::M, id, d, 1))
                .ok_or_else(|| Error::Shape(format!("no value on {id}:D{d}")))?;
            if d == 2 && here != -1 {
                ok = false;
            }
            if ds.contains(&(d + 2)) {
                let next = alpha
                    .get(&BasisElement::new(Side::M, id, d + 2, 1))
                    .ok_or_else(|| Error::Shape(format!("no value on {id}:D{}", d + 2)))?;
                ok &= here == -next;
            }
        }
    }
    Ok(ok)
}

/// The supercuspidality criterion: without gaps and alternating.
pub fn supercuspidal_support(m: &AParam, alpha: &CharacterAssignment) -> Result<bool> {
    Ok(without_gaps(m)? && is_alternating(m, alpha)?)
}

fn block_eps(i: &Block, j: &Block, t: &SignTable) -> Result<i8> {
    eps_block(&i.label.weil, i.label.d_dim, &j.label.weil, j.label.d_dim, t)
}

fn product_over(blocks: &[Block], keep: impl Fn(&Block) -> bool, eps: impl Fn(&Block) -> Result<i8>) -> Result<i8> {
    blocks.iter().filter(|b| keep(b)).try_fold(1i8, |acc, b| Ok(acc * eps(b)?))
}

fn discrete_blocks(m: &AParam, n: &AParam) -> Result<EndoscopicBlocks> {
    endoscopic_blocks(m, n)
}

/// Arthur's character in its restricted-product form:
/// `a_i ↦ ∏_{j: m_i<n_j}`, `b_j ↦ ∏_{i: m_i<n_j}`, `a'_i ↦ ∏_{j: m'_i>n'_j}`, `b'_j ↦ ∏_{i: m'_i>n'_j}`.
pub fn arthur_character(m: &AParam, n: &AParam, t: &SignTable) -> Result<CharacterAssignment> {
    let blocks = discrete_blocks(m, n)?;
    arthur_from_blocks(&blocks, t)
}

fn arthur_from_blocks(blocks: &EndoscopicBlocks, t: &SignTable) -> Result<CharacterAssignment> {
    let (is, js) = (&blocks.i_blocks, &blocks.j_blocks);
    let mut out = CharacterAssignment::new();
    for i in is {
        if i.m_dim > 0 {
            out.insert(BasisElement::on_m(i), product_over(js, |j| i.m_dim < j.m_dim, |j| block_eps(i, j, t))?);
        }
        if i.n_dim > 0 {
            out.insert(BasisElement::on_n(i), product_over(js, |j| i.n_dim > j.n_dim, |j| block_eps(i, j, t))?);
        }
    }
    for j in js {
        if j.m_dim > 0 {
            out.insert(BasisElement::on_m(j), product_over(is, |i| i.m_dim < j.m_dim, |i| block_eps(i, j, t))?);
        }
        if j.n_dim > 0 {
            out.insert(BasisElement::on_n(j), product_over(is, |i| i.n_dim > j.n_dim, |i| block_eps(i, j, t))?);
        }
    }
    Ok(out)
}

/// Arthur's character in its exponent form `∏ ε^{min(·,·)}`; agrees with
/// [`arthur_character`] by a parity argument.
pub fn arthur_character_exponent_form(m: &AParam, n: &AParam, t: &SignTable) -> Result<CharacterAssignment> {
    let blocks = discrete_blocks(m, n)?;
    let (is, js) = (&blocks.i_blocks, &blocks.j_blocks);
    let pow = |b: &Block, c: &Block, e: u32| -> Result<i8> { Ok(pow_sign(block_eps(b, c, t)?, u64::from(e))) };
    let mut out = CharacterAssignment::new();
    for i in is {
        if i.m_dim > 0 {
            out.insert(BasisElement::on_m(i), product_over(js, |_| true, |j| pow(i, j, i.m_dim.min(j.m_dim)))?);
        }
        if i.n_dim > 0 {
            out.insert(BasisElement::on_n(i), product_over(js, |_| true, |j| pow(i, j, i.n_dim.min(j.n_dim)))?);
        }
    }
    for j in js {
        if j.m_dim > 0 {
            out.insert(BasisElement::on_m(j), product_over(is, |_| true, |i| pow(i, j, i.m_dim.min(j.m_dim)))?);
        }
        if j.n_dim > 0 {
            out.insert(BasisElement::on_n(j), product_over(is, |_| true, |i| pow(i, j, i.n_dim.min(j.n_dim)))?);
        }
    }
    Ok(out)
}

fn chi_from_blocks(blocks: &EndoscopicBlocks, t: &SignTable) -> Result<CharacterAssignment> {
    let (is, js) = (&blocks.i_blocks, &blocks.j_blocks);
    let mut out = CharacterAssignment::new();
    for i in is {
        if i.m_dim > 0 {
            out.insert(BasisElement::on_m(i), product_over(js, |_| true, |j| block_eps(i, j, t))?);
        }
        if i.n_dim > 0 {
            out.insert(BasisElement::on_n(i), 1);
        }
    }
    for j in js {
        if j.m_dim > 0 {
            out.insert(BasisElement::on_m(j), 1);
        }
        if j.n_dim > 0 {
            out.insert(BasisElement::on_n(j), product_over(is, |_| true, |i| block_eps(i, j, t))?);
        }
    }
    Ok(out)
}

/// The distinguished character pulled back to the global component group:
/// `χ(a_i) = ∏_j ε(M_i⊗N_j)`, `χ(b'_j) = ∏_i ε(M_i⊗N_j)`, `χ(b_j) = χ(a'_i) = 1`.
pub fn gg_global_character(m: &AParam, n: &AParam, t: &SignTable) -> Result<CharacterAssignment> {
    chi_from_blocks(&discrete_blocks(m, n)?, t)
}

/// One failed product condition; `condition` counts from 1 in the order
/// `a_i`, `a'_i`, `b_j`, `b'_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailedCondition {
    pub condition: u8,
    pub element: BasisElement,
}

/// Outcome of [`automorphy_test`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphyReport {
    pub automorphic: bool,
    pub failed_conditions: Vec<FailedCondition>,
    /// The products over special pairs, evaluated when all conditions hold.
    pub special_identities_hold: Option<bool>,
    pub arthur: CharacterAssignment,
    pub chi: CharacterAssignment,
}

/// Evaluates the four product conditions for `χ = ε_Art`.
pub fn automorphy_test(m: &AParam, n: &AParam, t: &SignTable) -> Result<AutomorphyReport> {
    let blocks = discrete_blocks(m, n)?;
    let (is, js) = (&blocks.i_blocks, &blocks.j_blocks);
    let mut failed = Vec::new();
    for i in is {
        if i.m_dim > 0 && product_over(js, |j| i.m_dim > j.m_dim, |j| block_eps(i, j, t))? != 1 {
            failed.push(FailedCondition { condition: 1, element: BasisElement::on_m(i) });
        }
        if i.n_dim > 0 && product_over(js, |j| i.n_dim > j.n_dim, |j| block_eps(i, j, t))? != 1 {
            failed.push(FailedCondition { condition: 2, element: BasisElement::on_n(i) });
        }
    }
    for j in js {
        if j.m_dim > 0 && product_over(is, |i| i.m_dim < j.m_dim, |i| block_eps(i, j, t))? != 1 {
            failed.push(FailedCondition { condition: 3, element: BasisElement::on_m(j) });
        }
        if j.n_dim > 0 && product_over(is, |i| i.n_dim < j.n_dim, |i| block_eps(i, j, t))? != 1 {
            failed.push(FailedCondition { condition: 4, element: BasisElement::on_n(j) });
        }
    }
    failed.sort_by_key(|f| f.condition);
    let automorphic = failed.is_empty();
    let special_identities_hold = if automorphic {
        let pairs = special_pairs_of(&blocks);
        let mut ok = true;
        for b in is.iter().chain(js.iter()) {
            let mut prod = 1i8;
            for p in pairs.iter().filter(|p| &p.i == b || &p.j == b) {
                prod *= block_eps(&p.i, &p.j, t)?;
            }
            ok &= prod == 1;
        }
        Some(ok)
    } else {
        None
    };
    Ok(AutomorphyReport {
        automorphic,
        failed_conditions: failed,
        special_identities_hold,
        arthur: arthur_from_blocks(&blocks, t)?,
        chi: chi_from_blocks(&blocks, t)?,
    })
}

/// Predicted branching multiplicity and distinguished character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub d: u8,
    pub character: Option<CharacterAssignment>,
    pub not_relevant: Option<NotRelevant>,
}

/// `d = 1` exactly for relevant pairs. Tempered pairs use [`distinguished_character`];
/// otherwise the block products of [`gg_global_character`] are applied to
/// the local labels.
pub fn predict_multiplicity(m: &AParam, n: &AParam, t: &SignTable) -> Result<Prediction> {
    match (m.parity().sign(), n.parity().sign()) {
        (Some(a), Some(b)) if a == -b => {}
        _ => {
            return Err(Error::ParityMismatch(format!(
                "need opposite classical parities, got {} and {}",
                m.parity(),
                n.parity()
            )))
        }
    }
    if let Relevance::NotRelevant { reason } = check_relevant(m, n) {
        return Ok(Prediction { d: 0, character: None, not_relevant: Some(reason) });
    }
    let character = if m.is_tempered() && n.is_tempered() {
        match (m.parity(), n.parity()) {
            (Parity::Symplectic, Parity::Orthogonal) => distinguished_character(m, n, t)?,
            (Parity::Orthogonal, Parity::Symplectic) => {
                let swapped = distinguished_character(n, m, t)?;
                let mut out = CharacterAssignment::new();
                for (e, v) in swapped.iter() {
                    let side = if e.side == Side::M { Side::N } else { Side::M };
                    out.insert(BasisElement { side, ..e.clone() }, v);
                }
                out
            }
            _ => gg_global_character(m, n, t)?,
        }
    } else {
        gg_global_character(m, n, t)?
    };
    Ok(Prediction { d: 1, character: Some(character), not_relevant: None })
}
