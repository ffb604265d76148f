//! Bernstein–Zelevinsky derivatives at the level of cuspidal supports, and
//! the derivative-matching decision for `GL_{n+1} ⊃ GL_n` branching.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::half::Half;
use crate::relevance::check_relevant;
use crate::repcore::{require_parity, AParam, Parity, SymbolTable, WeilSymbol};

/// Speh (`Z`) or generalized Steinberg (`St`) factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FactorKind {
    Z,
    St,
}

/// `ν^twist · Z[length]` or `ν^twist · St[length]` on the cuspidal line of `line`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GLFactor {
    pub line: WeilSymbol,
    pub kind: FactorKind,
    pub length: u32,
    pub twist: Half,
}

impl GLFactor {
    pub fn new(kind: FactorKind, line: WeilSymbol, length: u32, twist: Half) -> Self {
        GLFactor { line, kind, length, twist }
    }

    pub fn z(line: &WeilSymbol, length: u32, twist: Half) -> Self {
        GLFactor::new(FactorKind::Z, line.clone(), length, twist)
    }

    pub fn st(line: &WeilSymbol, length: u32, twist: Half) -> Self {
        GLFactor::new(FactorKind::St, line.clone(), length, twist)
    }

    /// `St[1]` and `Z[1]` are the same representation.
    fn normalized(mut self) -> Self {
        if self.length == 1 {
            self.kind = FactorKind::Z;
        }
        self
    }

    fn normalized_kind(&self) -> FactorKind {
        if self.length == 1 {
            FactorKind::Z
        } else {
            self.kind
        }
    }

    pub fn rank(&self) -> u64 {
        u64::from(self.length) * u64::from(self.line.dim)
    }

    /// Exponents `twist − (length−1)/2, …, twist + (length−1)/2`.
    pub fn exponents(&self) -> impl Iterator<Item = Half> + '_ {
        let low = self.twist.twice() - (i64::from(self.length) - 1);
        (0..i64::from(self.length)).map(move |k| Half::from_twice(low + 2 * k))
    }

    fn top(&self) -> Half {
        self.twist + Half::from_twice(i64::from(self.length) - 1)
    }
}

impl fmt::Display for GLFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.length)?;
        if self.twist != Half::ZERO {
            write!(f, "@{}", self.twist)?;
        }
        if !self.line.is_trivial() {
            write!(f, ":{}", self.line.id)?;
        }
        Ok(())
    }
}

impl Serialize for GLFactor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A product of factors; the order carries no meaning.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GLProduct {
    pub factors: Vec<GLFactor>,
}

impl GLProduct {
    pub fn new(factors: impl IntoIterator<Item = GLFactor>) -> Self {
        GLProduct { factors: factors.into_iter().collect() }
    }

    pub fn rank(&self) -> u64 {
        self.factors.iter().map(GLFactor::rank).sum()
    }

    /// Parses `factor (" x " factor)*` with `factor := ("Z"|"St") length ["@" twist] [":" line]`.
    pub fn parse(text: &str, symtab: &SymbolTable) -> Result<Self> {
        let mut factors = Vec::new();
        let text = text.replace('×', " x ");
        for raw in text.split(" x ").map(str::trim) {
            if raw.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{text}`")));
            }
            let (body, line) = match raw.split_once(':') {
                Some((b, l)) => (b.trim(), symtab.get(l.trim())?.clone()),
                None => (raw, WeilSymbol::trivial()),
            };
            let (head, twist) = match body.split_once('@') {
                Some((h, t)) => (h.trim(), t.parse::<Half>()?),
                None => (body, Half::ZERO),
            };
            let (kind, len) = if let Some(rest) = head.strip_prefix("St") {
                (FactorKind::St, rest)
            } else if let Some(rest) = head.strip_prefix('Z') {
                (FactorKind::Z, rest)
            } else {
                return Err(Error::Parse(format!("factor `{raw}` must start with Z or St")));
            };
            let length: u32 = len.trim().parse().map_err(|_| Error::Parse(format!("bad length in `{raw}`")))?;
            if length == 0 {
                return Err(Error::NonPositive(format!("factor `{raw}` has length 0")));
            }
            factors.push(GLFactor::new(kind, line, length, twist));
        }
        Ok(GLProduct { factors })
    }

    pub fn render(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(" x ")
    }
}

/// Exponent multisets per cuspidal line.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspSupport(BTreeMap<String, BTreeMap<Half, u32>>);

impl CuspSupport {
    pub fn lines(&self) -> &BTreeMap<String, BTreeMap<Half, u32>> {
        &self.0
    }

    pub fn count(&self, line: &str, x: Half) -> u32 {
        self.0.get(line).and_then(|m| m.get(&x)).copied().unwrap_or(0)
    }

    pub fn cardinality(&self) -> u64 {
        self.0.values().flat_map(|m| m.values()).map(|&c| u64::from(c)).sum()
    }

    fn add(&mut self, f: &GLFactor) {
        if f.length == 0 {
            return;
        }
        let line = self.0.entry(f.line.id.clone()).or_default();
        for x in f.exponents() {
            *line.entry(x).or_insert(0) += 1;
        }
    }
}

impl Serialize for CuspSupport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let view: BTreeMap<&String, Vec<String>> = self
            .0
            .iter()
            .map(|(line, m)| {
                let xs = m.iter().flat_map(|(x, &c)| std::iter::repeat_n(x.to_string(), c as usize)).collect();
                (line, xs)
            })
            .collect();
        view.serialize(s)
    }
}

/// Multiset union of the supports of the factors.
pub fn support(p: &GLProduct) -> CuspSupport {
    let mut s = CuspSupport::default();
    p.factors.iter().for_each(|f| s.add(f));
    s
}

/// Upper bound on the number of derivative distributions enumerated.
pub const DERIVATIVE_BUDGET: u64 = 2_000_000;

/// For each factor, its possible derivatives `(order in rank units, result)`:
/// `Z[a]` has order 0 or one step `ν^{−½}Z[a−1]`; `St[d]` has `j` steps `ν^{j/2}St[d−j]`.
fn factor_derivatives(f: &GLFactor) -> Vec<(u64, GLFactor)> {
    let step = u64::from(f.line.dim);
    match f.normalized_kind() {
        FactorKind::Z => vec![
            (0, f.clone()),
            (step, GLFactor { length: f.length - 1, twist: f.twist - Half::ONE_HALF, ..f.clone() }),
        ],
        FactorKind::St => (0..=f.length)
            .map(|j| {
                (
                    step * u64::from(j),
                    GLFactor { length: f.length - j, twist: f.twist + Half::from_twice(i64::from(j)), ..f.clone() },
                )
            })
            .collect(),
    }
}

/// Every distribution of derivatives over the factors, as `(order, product)`.
fn derivative_products(p: &GLProduct) -> Result<Vec<(u64, Vec<GLFactor>)>> {
    let options: Vec<Vec<(u64, GLFactor)>> = p.factors.iter().map(factor_derivatives).collect();
    let total: u64 = options.iter().try_fold(1u64, |acc, o| acc.checked_mul(o.len() as u64)).unwrap_or(u64::MAX);
    if total > DERIVATIVE_BUDGET {
        return Err(Error::Budget(DERIVATIVE_BUDGET));
    }
    let mut out = vec![(0u64, Vec::new())];
    for opts in &options {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for (k, acc) in &out {
            for (dk, f) in opts {
                let mut v = acc.clone();
                if f.length > 0 {
                    v.push(f.clone());
                }
                next.push((k + dk, v));
            }
        }
        out = next;
    }
    Ok(out)
}

/// Supports of the composition factors of the `k`-th derivative (Leibniz rule).
pub fn derivative_supports(p: &GLProduct, k: u64) -> Result<BTreeSet<CuspSupport>> {
    Ok(derivative_products(p)?
        .into_iter()
        .filter(|(order, _)| *order == k)
        .map(|(_, fs)| support(&GLProduct::new(fs)))
        .collect())
}

/// One factor of `V` matched with one factor of `W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedPair {
    pub v: GLFactor,
    pub w: GLFactor,
}

/// Outcome of [`support_match`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SupportMatch {
    /// Supports agree; `conclusions_hold` records `e_i = 1`, `f_j = 0` and a
    /// complete matching.
    Matched { pairs: Vec<MatchedPair>, conclusions_hold: bool },
    /// Supports differ; `x` is the largest exponent on `line` whose counts differ.
    NoMatch { line: String, x: Half, v_count: u32, w_count: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum VClass {
    A,
    B(i64),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum WClass {
    C,
    D,
    G(i64),
}

fn classify_v(f: &GLFactor) -> Result<VClass> {
    match f.twist.twice() {
        0 => Ok(VClass::A),
        t if t > 0 => Ok(VClass::B(t)),
        _ => Err(Error::Shape(format!("`{f}` has a negative twist on the V side"))),
    }
}

fn classify_w(f: &GLFactor) -> Result<WClass> {
    match f.twist.twice() {
        0 => Ok(WClass::C),
        1 => Ok(WClass::D),
        t if t < 0 => Ok(WClass::G(-t)),
        _ => Err(Error::Shape(format!("`{f}` has a twist other than 0, 1/2 or negative on the W side"))),
    }
}

/// Compares `V = Π[a_i] × Π ν^{e_j/2}[b_j]` with
/// `W = Π[c_i] × ν^{½}Π[d_i] × Π ν^{−f_j/2}[g_j]` line by line, after checking
/// `(V)`: `a_i+1 ≠ b_j+e_j−1` when `e_j > 1`, and `(W)`: `d_i+1 ≠ g_j+f_j`.
pub fn support_match(v: &GLProduct, w: &GLProduct) -> Result<SupportMatch> {
    let vc: Vec<(VClass, &GLFactor)> = v.factors.iter().map(|f| Ok((classify_v(f)?, f))).collect::<Result<_>>()?;
    let wc: Vec<(WClass, &GLFactor)> = w.factors.iter().map(|f| Ok((classify_w(f)?, f))).collect::<Result<_>>()?;
    for (ca, fa) in &vc {
        for (cb, fb) in &vc {
            if let (VClass::A, VClass::B(e)) = (ca, cb) {
                if *e > 1 && fa.line == fb.line && i64::from(fa.length) + 1 == i64::from(fb.length) + e - 1 {
                    return Err(Error::HypothesisViolated(format!("(V) fails for {fa} and {fb}")));
                }
            }
        }
    }
    for (ca, fa) in &wc {
        for (cb, fb) in &wc {
            if let (WClass::D, WClass::G(f)) = (ca, cb) {
                if fa.line == fb.line && i64::from(fa.length) + 1 == i64::from(fb.length) + f {
                    return Err(Error::HypothesisViolated(format!("(W) fails for {fa} and {fb}")));
                }
            }
        }
    }
    let (sv, sw) = (support(v), support(w));
    if sv != sw {
        let lines: BTreeSet<&String> = sv.lines().keys().chain(sw.lines().keys()).collect();
        let mut best: Option<(Half, &String)> = None;
        for line in lines {
            let xs: BTreeSet<Half> =
                sv.lines().get(line).into_iter().chain(sw.lines().get(line)).flat_map(|m| m.keys().copied()).collect();
            if let Some(x) = xs.into_iter().rev().find(|&x| sv.count(line, x) != sw.count(line, x)) {
                if best.is_none_or(|(bx, _)| x > bx) {
                    best = Some((x, line));
                }
            }
        }
        let (x, line) = best.expect("supports differ somewhere");
        return Ok(SupportMatch::NoMatch {
            line: line.clone(),
            x,
            v_count: sv.count(line, x),
            w_count: sw.count(line, x),
        });
    }
    // Greedy matching from the largest exponent, as in the lemma's induction.
    let mut v_left: Vec<(VClass, &GLFactor)> = vc;
    let mut w_left: Vec<(WClass, &GLFactor)> = wc;
    let mut pairs = Vec::new();
    let mut complete = true;
    while !v_left.is_empty() {
        let top = v_left.iter().map(|(_, f)| (f.top(), f.line.id.clone())).max().expect("non-empty");
        let pick = v_left
            .iter()
            .enumerate()
            .filter(|(_, (_, f))| (f.top(), f.line.id.clone()) == top)
            .min_by_key(|(_, (c, _))| match c {
                VClass::A => 0,
                VClass::B(e) => *e,
            })
            .map(|(k, _)| k)
            .expect("some factor attains the top");
        let (class, f) = v_left.remove(pick);
        let partner = w_left.iter().position(|(wcl, g)| {
            g.line == f.line
                && g.length == f.length
                && matches!((class, wcl), (VClass::A, WClass::C) | (VClass::B(1), WClass::D))
        });
        match partner {
            Some(k) => {
                let (_, g) = w_left.remove(k);
                pairs.push(MatchedPair { v: f.clone(), w: g.clone() });
            }
            None => {
                complete = false;
                break;
            }
        }
    }
    let e_ok = v.factors.iter().all(|f| f.twist.twice() <= 1);
    let f_ok = w.factors.iter().all(|f| f.twist.twice() >= 0);
    Ok(SupportMatch::Matched { pairs, conclusions_hold: complete && w_left.is_empty() && e_ok && f_ok })
}

/// Whether a product has the shape of the irreducibility lemma: twists in
/// `{0, ½}` and every `St[d]` with `d ≥ 2` at one common twist.
pub fn in_lemma_shape(p: &GLProduct) -> bool {
    let twists_ok = p.factors.iter().all(|f| f.twist == Half::ZERO || f.twist == Half::ONE_HALF);
    let st_twists: BTreeSet<Half> =
        p.factors.iter().filter(|f| f.kind == FactorKind::St && f.length >= 2).map(|f| f.twist).collect();
    twists_ok && st_twists.len() <= 1
}

/// Canonical sorted factor list (`St[1]` written `Z[1]`); two products in
/// the lemma's shape are isomorphic exactly when these lists agree.
pub fn factorization_check(v: &GLProduct) -> Result<Vec<GLFactor>> {
    if !in_lemma_shape(v) {
        return Err(Error::Shape(format!("`{}` is outside the irreducibility lemma's shape", v.render())));
    }
    Ok(canonical(&v.factors))
}

fn canonical(factors: &[GLFactor]) -> Vec<GLFactor> {
    let mut out: Vec<GLFactor> = factors.iter().filter(|f| f.length > 0).cloned().map(GLFactor::normalized).collect();
    out.sort();
    out
}

/// `ρ:D1:Ab ↦ Z[b]`, `ρ:Da:A1 ↦ St[a]`, repeated by multiplicity.
pub fn param_to_product(p: &AParam) -> Result<GLProduct> {
    let mut factors = Vec::new();
    for t in p.terms() {
        let f = match (t.d_dim, t.a_dim) {
            (1, b) => GLFactor::z(&t.weil, b, Half::ZERO),
            (a, 1) => GLFactor::st(&t.weil, a, Half::ZERO),
            _ => return Err(Error::HypothesisViolated(format!("`{}` is non-trivial on both SL2 factors", t.render()))),
        };
        for _ in 0..t.mult {
            factors.push(f.clone());
        }
    }
    Ok(GLProduct::new(factors))
}

/// First summand violating one of the two hypotheses, if any.
pub fn branching_hypothesis_violation(p: &AParam) -> Option<String> {
    if let Some(t) = p.terms().iter().find(|t| t.d_dim > 1 && t.a_dim > 1) {
        return Some(format!("(a): `{}` is non-trivial on both SL2 factors", t.render()));
    }
    for t in p.terms().iter().filter(|t| t.d_dim == 1 && t.a_dim > 1) {
        if p.mult_of(&t.weil.id, t.a_dim, 1) > 0 {
            return Some(format!("(b): both {}:D1:A{k} and {}:D{k}:A1 occur", t.weil.id, t.weil.id, k = t.a_dim));
        }
    }
    None
}

/// A pair `(C̃, D̃)` of derivative products that agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivativeWitness {
    /// `j`: `C̃` comes from the `(j+1)`-th derivative of `π_M`, `D̃` from the `j`-th of `π_N`.
    pub j: u64,
    pub common: Vec<GLFactor>,
}

/// Outcome of [`decide_gl_branching`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GlBranching {
    Decided { hom_nonzero: bool, relevant: bool, derivative_verdict: bool, witness: Option<DerivativeWitness> },
    Inconclusive { reason: String },
}

impl GlBranching {
    /// Whether both methods gave the same answer; `None` when inconclusive.
    pub fn methods_agree(&self) -> Option<bool> {
        match self {
            GlBranching::Decided { relevant, derivative_verdict, .. } => Some(relevant == derivative_verdict),
            GlBranching::Inconclusive { .. } => None,
        }
    }

    pub fn hom_nonzero(&self) -> Option<bool> {
        match self {
            GlBranching::Decided { hom_nonzero, .. } => Some(*hom_nonzero),
            GlBranching::Inconclusive { .. } => None,
        }
    }
}

/// Decides `Hom_{GL_n}(π_M, π_N) ≠ 0` for A-parameters satisfying hypotheses
/// (a) and (b), once by relevance and once by comparing
/// `C̃ = ν^{½}π_M^{(j+1)}` with `D̃ = ((π_N^∨)^{(j)})^∨` factor by factor.
pub fn decide_gl_branching(m: &AParam, n: &AParam) -> Result<GlBranching> {
    require_parity(m, &[Parity::Gl], "M")?;
    require_parity(n, &[Parity::Gl], "N")?;
    if m.dim() != n.dim() + 1 {
        return Err(Error::DimensionMismatch(format!("dim M = {} must be dim N + 1 = {}", m.dim(), n.dim() + 1)));
    }
    for (p, side) in [(m, "M"), (n, "N")] {
        if let Some(reason) = branching_hypothesis_violation(p) {
            return Ok(GlBranching::Inconclusive { reason: format!("{side} violates hypothesis {reason}") });
        }
    }
    let relevant = check_relevant(m, n).is_relevant();
    let (pm, pn) = (param_to_product(m)?, param_to_product(n)?);

    // C̃: ν^{½} times a derivative of π_M of order ≥ 1.
    let mut c_by_support: HashMap<CuspSupport, Vec<(u64, Vec<GLFactor>)>> = HashMap::new();
    for (order, fs) in derivative_products(&pm)? {
        if order == 0 {
            continue;
        }
        let shifted: Vec<GLFactor> =
            fs.into_iter().map(|f| GLFactor { twist: f.twist + Half::ONE_HALF, ..f }).collect();
        c_by_support.entry(support(&GLProduct::new(shifted.clone()))).or_default().push((order, shifted));
    }
    // D̃: derivative of π_N^∨ then contragredient, i.e. `Z ↦ ν^{½}Z[a−1]`, `St ↦ ν^{−f/2}St[d−f]`.
    let mut witness = None;
    let mut inconclusive = None;
    for (order, fs) in derivative_products(&pn)? {
        let dual: Vec<GLFactor> = fs.into_iter().map(|f| GLFactor { twist: -f.twist, ..f }).collect();
        let Some(cands) = c_by_support.get(&support(&GLProduct::new(dual.clone()))) else {
            continue;
        };
        let d_tilde = GLProduct::new(dual);
        for (c_order, c) in cands {
            if *c_order != order + 1 {
                continue;
            }
            let c_tilde = GLProduct::new(c.clone());
            if !in_lemma_shape(&c_tilde) || !in_lemma_shape(&d_tilde) {
                inconclusive.get_or_insert_with(|| {
                    format!("equal supports outside the comparable shape: {} vs {}", c_tilde.render(), d_tilde.render())
                });
                continue;
            }
            if canonical(&c_tilde.factors) == canonical(&d_tilde.factors) && witness.is_none() {
                witness = Some(DerivativeWitness { j: order, common: canonical(&c_tilde.factors) });
            }
        }
    }
    if witness.is_none() {
        if let Some(reason) = inconclusive {
            return Ok(GlBranching::Inconclusive { reason });
        }
    }
    Ok(GlBranching::Decided { hom_nonzero: relevant, relevant, derivative_verdict: witness.is_some(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::parse_param;

    fn prod(text: &str) -> GLProduct {
        GLProduct::parse(text, &SymbolTable::default()).unwrap()
    }

    fn xs(v: &[i64]) -> BTreeMap<Half, u32> {
        let mut m = BTreeMap::new();
        for &t in v {
            *m.entry(Half::from_twice(t)).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn supports() {
        assert_eq!(support(&prod("Z3")).lines()["1"], xs(&[-2, 0, 2]));
        assert_eq!(support(&prod("St2 x Z2")).lines()["1"], xs(&[-1, -1, 1, 1]));
        for n in 2..8 {
            let lhs = prod(&format!("Z{}@1/2 x Z1@{}/2", n - 1, -(n - 1)));
            assert_eq!(support(&lhs), support(&prod(&format!("Z{n}"))));
        }
    }

    #[test]
    fn grammar_round_trip() {
        let p = prod("St2 x Z2@0.5 x Z1@-3/2");
        assert_eq!(p.render(), "St2 x Z2@1/2 x Z1@-3/2");
        assert!(GLProduct::parse("Q2", &SymbolTable::default()).is_err());
        assert!(GLProduct::parse("Z0", &SymbolTable::default()).is_err());
        assert!(GLProduct::parse("Z2:nope", &SymbolTable::default()).is_err());
    }

    #[test]
    fn derivative_rules() {
        let d = derivative_supports(&prod("Z4"), 1).unwrap();
        assert_eq!(d, BTreeSet::from([support(&prod("Z3@-1/2"))]));
        let d = derivative_supports(&prod("St4"), 3).unwrap();
        assert_eq!(d, BTreeSet::from([support(&prod("Z1@3/2"))]));
        let d = derivative_supports(&prod("St3 x Z1"), 4).unwrap();
        assert_eq!(d, BTreeSet::from([CuspSupport::default()]));
        assert!(derivative_supports(&prod("Z3"), 2).unwrap().is_empty());
        assert!(derivative_supports(&prod("St3 x Z2"), 5).unwrap().is_empty());
    }

    #[test]
    fn reducible_examples_violate_hypotheses() {
        for a in 2..6 {
            let v = prod(&format!("Z{a} x Z{a}@1"));
            let w = prod(&format!("Z{}@1/2 x Z{}@1/2", a + 1, a - 1));
            assert_eq!(support(&v), support(&w));
            assert!(matches!(support_match(&v, &w), Err(Error::HypothesisViolated(_))));
        }
        let v = prod("Z3");
        let w = prod("Z2@1/2 x Z1@-1");
        assert_eq!(support(&v), support(&w));
        assert!(matches!(support_match(&v, &w), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn matched_and_unmatched() {
        let v = prod("Z3 x Z2@1/2");
        let w = prod("Z2@1/2 x St3");
        match support_match(&v, &w).unwrap() {
            SupportMatch::Matched { pairs, conclusions_hold } => {
                assert!(conclusions_hold);
                assert_eq!(pairs.len(), 2);
            }
            other => panic!("{other:?}"),
        }
        let w = prod("Z1@1/2 x Z3");
        match support_match(&v, &w).unwrap() {
            SupportMatch::NoMatch { x, .. } => assert_eq!(x, Half::ONE),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(
            factorization_check(&prod("Z2 x Z3@1/2")).unwrap(),
            factorization_check(&prod("Z3@1/2 x Z2")).unwrap()
        );
        assert_ne!(factorization_check(&prod("Z2 x Z2")).unwrap(), factorization_check(&prod("Z3 x Z1")).unwrap());
        assert_eq!(factorization_check(&prod("St2 x Z2")).unwrap(), factorization_check(&prod("Z2 x St2")).unwrap());
        assert_eq!(factorization_check(&prod("St1")).unwrap(), factorization_check(&prod("Z1")).unwrap());
        assert!(factorization_check(&prod("Z2@1")).is_err());
    }

    #[test]
    fn trivial_representations_branch() {
        let t = SymbolTable::default();
        for n in 1..6 {
            let m = parse_param(&format!("1:D1:A{}", n + 1), &t, Parity::Gl).unwrap();
            let nn = parse_param(&format!("1:D1:A{n}"), &t, Parity::Gl).unwrap();
            let r = decide_gl_branching(&m, &nn).unwrap();
            assert_eq!(r.hom_nonzero(), Some(true));
            assert_eq!(r.methods_agree(), Some(true));
        }
    }

    #[test]
    fn open_instance_is_inconclusive() {
        let t = SymbolTable::default();
        let m = parse_param("1:D1:A3 + 2*1:D1:A1", &t, Parity::Gl).unwrap();
        let n = parse_param("1:D2:A1 + 1:D1:A2", &t, Parity::Gl).unwrap();
        assert!(matches!(decide_gl_branching(&m, &n).unwrap(), GlBranching::Inconclusive { .. }));
    }

    #[test]
    fn dimension_is_checked() {
        let t = SymbolTable::default();
        let m = parse_param("1:D1:A3", &t, Parity::Gl).unwrap();
        assert!(matches!(decide_gl_branching(&m, &m), Err(Error::DimensionMismatch(_))));
    }
}
