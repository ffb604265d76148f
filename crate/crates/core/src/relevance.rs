//! Relevance of pairs of A-parameters and the data derived from the witness.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::repcore::{clebsch_gordan, delta_map, validate_parity, AParam, ATerm, Parity, WeilSymbol};

/// A WD-label `τ = ρ ⊠ [d_dim]`; relevance is decided label by label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub weil: WeilSymbol,
    pub d_dim: u32,
}

impl Label {
    pub fn render(&self) -> String {
        format!("{}:D{}", self.weil.id, self.d_dim)
    }

    /// Duality sign of `ρ ⊠ [d_dim]` as a WD-representation.
    pub fn sign(&self) -> Option<i8> {
        self.weil.duality.composite(self.d_dim, 1).sign()
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// Which parameter of the pair a quantity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    M,
    N,
}

/// The decomposition `M_i = M_i^+ + M_i^-`, `N_i = N_i^+ + N_i^-` for one label.
/// Index `i` stands for the Arthur factor `Sym^i = [i+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelChains {
    pub label: Label,
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    pub mplus: Vec<u32>,
    pub mminus: Vec<u32>,
    pub nplus: Vec<u32>,
    pub nminus: Vec<u32>,
}

impl LabelChains {
    fn at(v: &[u32], i: usize) -> u32 {
        v.get(i).copied().unwrap_or(0)
    }

    pub fn mplus_at(&self, i: usize) -> u32 {
        Self::at(&self.mplus, i)
    }
    pub fn mminus_at(&self, i: usize) -> u32 {
        Self::at(&self.mminus, i)
    }
    pub fn nplus_at(&self, i: usize) -> u32 {
        Self::at(&self.nplus, i)
    }
    pub fn nminus_at(&self, i: usize) -> u32 {
        Self::at(&self.nminus, i)
    }
    pub fn m_at(&self, i: usize) -> u32 {
        Self::at(&self.m, i)
    }
    pub fn n_at(&self, i: usize) -> u32 {
        Self::at(&self.n, i)
    }

    /// Checks the four linking families and the splitting of every multiplicity.
    pub fn is_consistent(&self) -> bool {
        let len = self.m.len().max(self.n.len()) + 1;
        (0..len).all(|i| {
            self.mplus_at(i) + self.mminus_at(i) == self.m_at(i)
                && self.nplus_at(i) + self.nminus_at(i) == self.n_at(i)
                && self.mplus_at(i) == self.nminus_at(i + 1)
                && self.nplus_at(i) == self.mminus_at(i + 1)
        })
    }
}

/// The unique witness of relevance, one entry per label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelevanceWitness {
    pub labels: Vec<LabelChains>,
}

impl RelevanceWitness {
    pub fn label(&self, label: &Label) -> Option<&LabelChains> {
        self.labels.iter().find(|c| &c.label == label)
    }
}

/// Where the descent failed: at `index` on `side` the linking equations
/// require `required` copies but only `available` exist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotRelevant {
    pub label: Label,
    pub index: u32,
    pub side: Side,
    pub required: u32,
    pub available: u32,
    pub deficit: u32,
}

impl NotRelevant {
    pub fn describe(&self) -> String {
        format!(
            "label {} at Arthur index {} on side {:?}: need {} copies, have {}",
            self.label.render(),
            self.index,
            self.side,
            self.required,
            self.available
        )
    }
}

/// Outcome of [`check_relevant`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Relevance {
    Relevant { witness: RelevanceWitness },
    NotRelevant { reason: NotRelevant },
}

impl Relevance {
    pub fn is_relevant(&self) -> bool {
        matches!(self, Relevance::Relevant { .. })
    }

    pub fn witness(&self) -> Option<&RelevanceWitness> {
        match self {
            Relevance::Relevant { witness } => Some(witness),
            Relevance::NotRelevant { .. } => None,
        }
    }

    /// The witness, or an error carrying the certificate.
    pub fn into_witness(self) -> Result<RelevanceWitness> {
        match self {
            Relevance::Relevant { witness } => Ok(witness),
            Relevance::NotRelevant { reason } => Err(Error::NotRelevant(reason.describe())),
        }
    }
}

/// Arthur-index multiplicities of every label occurring in either parameter.
fn label_table(m: &AParam, n: &AParam) -> BTreeMap<Label, (Vec<u32>, Vec<u32>)> {
    let mut table: BTreeMap<Label, (Vec<u32>, Vec<u32>)> = BTreeMap::new();
    let mut add = |t: &ATerm, side: Side| {
        let label = Label { weil: t.weil.clone(), d_dim: t.d_dim };
        let entry = table.entry(label).or_default();
        let v = match side {
            Side::M => &mut entry.0,
            Side::N => &mut entry.1,
        };
        let i = (t.a_dim - 1) as usize;
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] += t.mult;
    };
    m.terms().iter().for_each(|t| add(t, Side::M));
    n.terms().iter().for_each(|t| add(t, Side::N));
    for (m_chain, n_chain) in table.values_mut() {
        let len = m_chain.len().max(n_chain.len());
        m_chain.resize(len, 0);
        n_chain.resize(len, 0);
    }
    table
}

/// Decides relevance by descending from the top Arthur index of each label:
/// `M_i^+ = N_{i+1}^-` and `N_i^+ = M_{i+1}^-`, with nothing above the top.
pub fn check_relevant(m: &AParam, n: &AParam) -> Relevance {
    let mut labels = Vec::new();
    for (label, (mc, nc)) in label_table(m, n) {
        let len = mc.len();
        let (mut mplus, mut mminus, mut nplus, mut nminus) = (vec![0; len], vec![0; len], vec![0; len], vec![0; len]);
        for i in (0..len).rev() {
            let (mp, np) = if i + 1 == len { (0, 0) } else { (nminus[i + 1], mminus[i + 1]) };
            for (side, need, have) in [(Side::M, mp, mc[i]), (Side::N, np, nc[i])] {
                if need > have {
                    let reason = NotRelevant {
                        label: label.clone(),
                        index: i as u32,
                        side,
                        required: need,
                        available: have,
                        deficit: need - have,
                    };
                    return Relevance::NotRelevant { reason };
                }
            }
            mplus[i] = mp;
            nplus[i] = np;
            mminus[i] = mc[i] - mp;
            nminus[i] = nc[i] - np;
        }
        labels.push(LabelChains { label, m: mc, n: nc, mplus, mminus, nplus, nminus });
    }
    Relevance::Relevant { witness: RelevanceWitness { labels } }
}

/// Result of the exhaustive search in [`brute_force_relevant`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteForce {
    /// The first witness found, if any.
    pub witness: Option<RelevanceWitness>,
    /// Number of distinct witnesses (product over labels).
    pub witnesses_found: u64,
    /// Number of splittings examined.
    pub visited: u64,
}

/// Enumerates every splitting `m_i = m_i^+ + m_i^-`, `n_i = n_i^+ + n_i^-`
/// and keeps those satisfying all linking equations.
pub fn brute_force_relevant(m: &AParam, n: &AParam, cap: u32, budget: u64) -> Result<BruteForce> {
    let mut total_found: u64 = 1;
    let mut visited: u64 = 0;
    let mut labels = Vec::new();
    for (label, (mc, nc)) in label_table(m, n) {
        if mc.iter().chain(nc.iter()).any(|&x| x > cap) {
            return Err(Error::Precondition(format!("multiplicity above cap {cap}")));
        }
        let len = mc.len();
        let radix: Vec<u32> = mc.iter().chain(nc.iter()).map(|&x| x + 1).collect();
        let mut digits = vec![0u32; 2 * len];
        let mut found: Vec<LabelChains> = Vec::new();
        loop {
            visited += 1;
            if visited > budget {
                return Err(Error::Budget(budget));
            }
            let mplus = digits[..len].to_vec();
            let nplus = digits[len..].to_vec();
            let mminus: Vec<u32> = (0..len).map(|i| mc[i] - mplus[i]).collect();
            let nminus: Vec<u32> = (0..len).map(|i| nc[i] - nplus[i]).collect();
            let chains =
                LabelChains { label: label.clone(), m: mc.clone(), n: nc.clone(), mplus, mminus, nplus, nminus };
            if chains.is_consistent() {
                found.push(chains);
            }
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < radix[k] {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
        total_found *= found.len() as u64;
        if let Some(first) = found.into_iter().next() {
            labels.push(first);
        }
    }
    let witness = (total_found > 0).then_some(RelevanceWitness { labels });
    Ok(BruteForce { witness, witnesses_found: total_found, visited })
}

/// One failed identity for a label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub label: Label,
    pub identity: &'static str,
    pub lhs: i64,
    pub rhs: i64,
}

/// Checks `Σ_{i odd} M_i = Σ_{i even} N_i − N_0^-` and
/// `Σ_{i odd} N_i = Σ_{i even} M_i − M_0^-` label by label.
pub fn ep_identities(w: &RelevanceWitness) -> Vec<IdentityFailure> {
    let mut failures = Vec::new();
    for c in &w.labels {
        let parity_sum = |v: &[u32], odd: bool| -> i64 {
            v.iter().enumerate().filter(|(i, _)| (i % 2 == 1) == odd).map(|(_, &x)| i64::from(x)).sum()
        };
        let lhs1 = parity_sum(&c.m, true);
        let rhs1 = parity_sum(&c.n, false) - i64::from(c.nminus_at(0));
        let lhs2 = parity_sum(&c.n, true);
        let rhs2 = parity_sum(&c.m, false) - i64::from(c.mminus_at(0));
        if lhs1 != rhs1 {
            failures.push(IdentityFailure {
                label: c.label.clone(),
                identity: "odd M = even N - N0-",
                lhs: lhs1,
                rhs: rhs1,
            });
        }
        if lhs2 != rhs2 {
            failures.push(IdentityFailure {
                label: c.label.clone(),
                identity: "odd N = even M - M0-",
                lhs: lhs2,
                rhs: rhs2,
            });
        }
    }
    failures
}

/// A summand of `M_A` together with its partner in `N_A` (or a free summand
/// of `N_A`). Dimensions are Arthur dimensions; 0 means absent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Block {
    pub label: Label,
    pub m_dim: u32,
    pub n_dim: u32,
}

impl Block {
    pub fn render(&self) -> String {
        format!("{}(M:[{}],N:[{}])", self.label.render(), self.m_dim, self.n_dim)
    }
}

/// The partner decomposition of a relevant discrete pair. `i_blocks` carry
/// labels of the same sign as `M_A`, `j_blocks` the others.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoscopicBlocks {
    pub i_blocks: Vec<Block>,
    pub j_blocks: Vec<Block>,
}

fn require_opposite_classical(m: &AParam, n: &AParam) -> Result<()> {
    match (m.parity().sign(), n.parity().sign()) {
        (Some(a), Some(b)) if a == -b => Ok(()),
        _ => Err(Error::ParityMismatch(format!(
            "need opposite classical parities, got {} and {}",
            m.parity(),
            n.parity()
        ))),
    }
}

/// Pairs every summand with its partner through the witness.
pub fn endoscopic_blocks(m: &AParam, n: &AParam) -> Result<EndoscopicBlocks> {
    m.require_discrete()?;
    n.require_discrete()?;
    require_opposite_classical(m, n)?;
    let witness = check_relevant(m, n).into_witness()?;
    let m_sign = m.parity().sign();
    let mut out = EndoscopicBlocks { i_blocks: Vec::new(), j_blocks: Vec::new() };
    for c in &witness.labels {
        let mut blocks = Vec::new();
        for i in 0..c.m.len() {
            let dim = i as u32 + 1;
            for _ in 0..c.mplus_at(i) {
                blocks.push(Block { label: c.label.clone(), m_dim: dim, n_dim: dim + 1 });
            }
            for _ in 0..c.mminus_at(i) {
                blocks.push(Block { label: c.label.clone(), m_dim: dim, n_dim: dim - 1 });
            }
        }
        for _ in 0..c.nminus_at(0) {
            blocks.push(Block { label: c.label.clone(), m_dim: 0, n_dim: 1 });
        }
        if c.label.sign() == m_sign {
            out.i_blocks.extend(blocks);
        } else {
            out.j_blocks.extend(blocks);
        }
    }
    Ok(out)
}

/// A special pair `(i, j)`: `(m_i, m'_i) = (n'_j, n_j)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SpecialPair {
    pub i: Block,
    pub j: Block,
}

/// Whether the blocks form a special pair.
pub fn is_special(i: &Block, j: &Block) -> bool {
    (i.m_dim, i.n_dim) == (j.n_dim, j.m_dim)
}

/// All special pairs of a relevant discrete pair with opposite parities.
pub fn special_pairs(m: &AParam, n: &AParam) -> Result<Vec<SpecialPair>> {
    let blocks = endoscopic_blocks(m, n)?;
    Ok(special_pairs_of(&blocks))
}

pub fn special_pairs_of(blocks: &EndoscopicBlocks) -> Vec<SpecialPair> {
    let mut out = Vec::new();
    for i in &blocks.i_blocks {
        for j in &blocks.j_blocks {
            if is_special(i, j) {
                out.push(SpecialPair { i: i.clone(), j: j.clone() });
            }
        }
    }
    out
}

/// A graded piece of the correlator: `source ⊗ Sym^{source_index}` maps onto
/// `rank` degrees of `target ⊗ Sym^{target_index}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrelatorMap {
    pub label: Label,
    pub source_side: Side,
    pub source_index: u32,
    pub source_part: char,
    pub target_index: u32,
    pub target_part: char,
    pub mult: u32,
    pub rank: u32,
}

/// Kernel line `V_i^- ⊗ t^i` (top degree of a minus part).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelLine {
    pub label: Label,
    pub side: Side,
    pub index: u32,
    pub degree: u32,
    pub mult: u32,
}

/// Degree-one map data built from the witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correlator {
    pub maps: Vec<CorrelatorMap>,
    pub kernel: Vec<KernelLine>,
}

/// The graded correlator; exists exactly when the pair is relevant. Plus
/// parts map injectively up one Arthur index, minus parts surjectively down
/// one index with kernel the top degree. For `gl` pairs the same data
/// describes the map on `M_A + M_A^∨`.
pub fn correlator_witness(m: &AParam, n: &AParam) -> Result<Correlator> {
    let ok = match (m.parity(), n.parity()) {
        (Parity::Gl, Parity::Gl) => true,
        (a, b) => a.sign() == Some(-1) && b.sign() == Some(1),
    };
    if !ok {
        return Err(Error::ParityMismatch(format!(
            "correlators need (symplectic, orthogonal) or (gl, gl), got ({}, {})",
            m.parity(),
            n.parity()
        )));
    }
    let witness = check_relevant(m, n).into_witness()?;
    let mut maps = Vec::new();
    let mut kernel = Vec::new();
    for c in &witness.labels {
        for (side, plus, minus) in [(Side::M, &c.mplus, &c.mminus), (Side::N, &c.nplus, &c.nminus)] {
            for i in 0..plus.len() {
                let idx = i as u32;
                if plus[i] > 0 {
                    maps.push(CorrelatorMap {
                        label: c.label.clone(),
                        source_side: side,
                        source_index: idx,
                        source_part: '+',
                        target_index: idx + 1,
                        target_part: '-',
                        mult: plus[i],
                        rank: idx + 1,
                    });
                }
                if minus[i] > 0 {
                    if idx > 0 {
                        maps.push(CorrelatorMap {
                            label: c.label.clone(),
                            source_side: side,
                            source_index: idx,
                            source_part: '-',
                            target_index: idx - 1,
                            target_part: '+',
                            mult: minus[i],
                            rank: idx,
                        });
                    }
                    kernel.push(KernelLine { label: c.label.clone(), side, index: idx, degree: idx, mult: minus[i] });
                }
            }
        }
    }
    Ok(Correlator { maps, kernel })
}

/// Decompositions of a multiset of diagonal dimensions into Clebsch–Gordan
/// blocks `[a] ⊗ [b]`.
fn cg_decompositions(
    target: &mut BTreeMap<u32, u32>,
    acc: &mut Vec<(u32, u32)>,
    out: &mut Vec<Vec<(u32, u32)>>,
    nodes: &mut u64,
    node_budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > node_budget {
        return Err(Error::Budget(node_budget));
    }
    let Some((&c, _)) = target.iter().next_back() else {
        out.push(acc.clone());
        return Ok(());
    };
    for a in 1..=c {
        let b = c + 1 - a;
        let parts = clebsch_gordan(a, b);
        if parts.iter().all(|p| target.get(p).copied().unwrap_or(0) > 0) {
            for p in &parts {
                let e = target.get_mut(p).expect("checked");
                *e -= 1;
                if *e == 0 {
                    target.remove(p);
                }
            }
            acc.push((a, b));
            cg_decompositions(target, acc, out, nodes, node_budget)?;
            acc.pop();
            for p in &parts {
                *target.entry(*p).or_insert(0) += 1;
            }
        }
    }
    Ok(())
}

/// Every A-parameter of the same parity and `Δ`-image as `m`. Candidates are
/// deduplicated by canonical form; `m` itself is always included. More than
/// `bound` candidates is an error.
pub fn delta_class_search(m: &AParam, bound: usize) -> Result<Vec<AParam>> {
    m.require_discrete()?;
    let image = delta_map(m);
    let mut per_symbol: BTreeMap<WeilSymbol, BTreeMap<u32, u32>> = BTreeMap::new();
    for t in image.terms() {
        *per_symbol.entry(t.weil.clone()).or_default().entry(t.d_dim).or_insert(0) += t.mult;
    }
    let node_budget = (bound as u64).saturating_mul(10_000).max(100_000);
    let mut options: Vec<Vec<Vec<ATerm>>> = Vec::new();
    for (sym, mut target) in per_symbol {
        let mut decomps = Vec::new();
        let mut nodes = 0;
        cg_decompositions(&mut target, &mut Vec::new(), &mut decomps, &mut nodes, node_budget)?;
        let mut seen = BTreeSet::new();
        let mut choices = Vec::new();
        for d in decomps {
            let mut key = d.clone();
            key.sort_unstable();
            if seen.insert(key) {
                choices.push(d.into_iter().map(|(a, b)| ATerm::new(sym.clone(), a, b, 1)).collect());
            }
        }
        options.push(choices);
    }
    let mut results: BTreeMap<String, AParam> = BTreeMap::new();
    let mut stack: Vec<(usize, Vec<ATerm>)> = vec![(0, Vec::new())];
    while let Some((k, acc)) = stack.pop() {
        if k == options.len() {
            let candidate = AParam::new(m.parity(), acc)?;
            if validate_parity(&candidate).is_empty() {
                results.insert(candidate.render(), candidate);
                if results.len() > bound {
                    return Err(Error::Budget(bound as u64));
                }
            }
            continue;
        }
        for choice in &options[k] {
            let mut next = acc.clone();
            next.extend(choice.iter().cloned());
            stack.push((k + 1, next));
        }
    }
    results.entry(m.render()).or_insert_with(|| m.clone());
    Ok(results.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::{parse_param, Duality, SymbolTable};

    fn table() -> SymbolTable {
        SymbolTable::new([
            WeilSymbol::new("rho", 1, Duality::Orthogonal, None),
            WeilSymbol::new("V", 2, Duality::Symplectic, None),
            WeilSymbol::new("W", 3, Duality::Orthogonal, None),
            WeilSymbol::new("beta", 1, Duality::Orthogonal, None),
        ])
        .unwrap()
    }

    fn p(text: &str, parity: Parity) -> AParam {
        parse_param(text, &table(), parity).unwrap()
    }

    #[test]
    fn trivial_reps_are_relevant() {
        for n in 1..6 {
            let m = p(&format!("1:D1:A{}", n + 1), Parity::Gl);
            let nn = p(&format!("1:D1:A{n}"), Parity::Gl);
            assert!(check_relevant(&m, &nn).is_relevant());
        }
    }

    #[test]
    fn tempered_pairs_are_relevant_with_zero_plus_parts() {
        let m = p("1:D3:A1 + rho:D1:A1", Parity::Gl);
        let n = p("1:D2:A1 + 2*W:D1:A1", Parity::Gl);
        let w = check_relevant(&m, &n).into_witness().unwrap();
        for c in &w.labels {
            assert!(c.mplus.iter().chain(c.nplus.iter()).all(|&x| x == 0));
        }
    }

    #[test]
    fn gap_example_is_not_relevant() {
        let m = p("1:D1:A4 + rho:D2:A1", Parity::Gl);
        let n = p("1:D3:A1 + 1:D1:A1", Parity::Gl);
        let r = check_relevant(&m, &n);
        let Relevance::NotRelevant { reason } = r else { panic!("expected NotRelevant") };
        assert_eq!(reason.label.render(), "1:D1");
        assert!(reason.deficit > 0);
    }

    #[test]
    fn cross_linked_labels_are_relevant() {
        let m = p("V:D1:A2 + W:D1:A1", Parity::Gl);
        let n = p("V:D1:A1 + W:D1:A2", Parity::Gl);
        assert!(check_relevant(&m, &n).is_relevant());
        let bf = brute_force_relevant(&m, &n, 3, 1_000_000).unwrap();
        assert_eq!(bf.witnesses_found, 1);
        assert_eq!(bf.witness.as_ref(), check_relevant(&m, &n).witness());
    }

    #[test]
    fn identities_hold_on_trivial_pair() {
        let m = p("1:D1:A4", Parity::Gl);
        let n = p("1:D1:A3", Parity::Gl);
        let w = check_relevant(&m, &n).into_witness().unwrap();
        assert!(ep_identities(&w).is_empty());
    }

    #[test]
    fn special_pair_basic_instance() {
        // rho orthogonal of sign +1 sits in J, V symplectic of sign -1 in I.
        let m = p("rho:D1:A2 + V:D1:A1", Parity::Symplectic);
        let n = p("rho:D1:A1 + V:D1:A2", Parity::Orthogonal);
        let pairs = special_pairs(&m, &n).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].i.label.weil.id, "V");
        assert_eq!((pairs[0].i.m_dim, pairs[0].i.n_dim), (1, 2));
    }

    #[test]
    fn tempered_pair_makes_every_pair_special() {
        let m = p("V:D1:A1", Parity::Symplectic);
        let n = p("W:D1:A1 + rho:D1:A1", Parity::Orthogonal);
        assert_eq!(special_pairs(&m, &n).unwrap().len(), 2);
    }

    #[test]
    fn same_sign_jumps_are_not_special() {
        let m = p("rho:D1:A4 + V:D1:A1", Parity::Symplectic);
        let n = p("rho:D1:A3 + V:D1:A2", Parity::Orthogonal);
        assert!(special_pairs(&m, &n).unwrap().is_empty());
    }

    #[test]
    fn special_matches_opposite_sign_definition() {
        for m in 0..8i32 {
            for m2 in [m - 1, m + 1] {
                for n in 0..8i32 {
                    for n2 in [n - 1, n + 1] {
                        if m2 < 0 || n2 < 0 || m % 2 == n % 2 {
                            continue;
                        }
                        let lab = Label { weil: WeilSymbol::trivial(), d_dim: 1 };
                        let i = Block { label: lab.clone(), m_dim: m as u32, n_dim: m2 as u32 };
                        let j = Block { label: lab, m_dim: n as u32, n_dim: n2 as u32 };
                        let opposite = (m - n).signum() * (m2 - n2).signum() < 0;
                        assert_eq!(is_special(&i, &j), opposite, "{m} {m2} {n} {n2}");
                    }
                }
            }
        }
    }

    #[test]
    fn correlator_examples() {
        let t = table();
        let m = parse_param("1:D1:A1 + 1:D1:A1", &t, Parity::Gl).unwrap();
        let c = correlator_witness(&m, &p("rho:D1:A1", Parity::Gl)).unwrap();
        assert!(c.maps.is_empty());
        let m = p("1:D1:A2", Parity::Symplectic);
        let n = p("1:D1:A1 + beta:D1:A1", Parity::Orthogonal);
        let c = correlator_witness(&m, &n).unwrap();
        let m_kernel: Vec<&KernelLine> = c.kernel.iter().filter(|k| k.side == Side::M).collect();
        assert_eq!(m_kernel.len(), 1);
        assert_eq!((m_kernel[0].index, m_kernel[0].degree), (1, 1));
        let bad = p("1:D1:A4", Parity::Symplectic);
        assert!(matches!(correlator_witness(&bad, &n), Err(Error::NotRelevant(_))));
    }

    #[test]
    fn delta_class_of_tempered_term_is_itself() {
        let m = p("rho:D1:A1", Parity::Orthogonal);
        let class = delta_class_search(&m, 10).unwrap();
        assert_eq!(class, vec![m]);
    }

    #[test]
    fn delta_class_contains_every_swap_pattern() {
        // [2j] ⊗ [1] chains: every subset J may be moved to the Arthur side.
        let m = p("1:D2:A1 + 1:D4:A1", Parity::Symplectic);
        let class: BTreeSet<String> = delta_class_search(&m, 100).unwrap().iter().map(AParam::render).collect();
        for text in ["1:D2:A1 + 1:D4:A1", "1:D1:A2 + 1:D4:A1", "1:D1:A4 + 1:D2:A1", "1:D1:A2 + 1:D1:A4"] {
            assert!(class.contains(text), "{text} missing from {class:?}");
        }
        for c in delta_class_search(&m, 100).unwrap() {
            assert_eq!(delta_map(&c), delta_map(&m));
        }
    }
}
