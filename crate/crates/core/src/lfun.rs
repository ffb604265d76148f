//! Pole orders of local L-factors of formal `W × SL_2 × SL_2` sums.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::half::Half;
use crate::relevance::check_relevant;
use crate::repcore::{alt2_sl2, clebsch_gordan, dual_param, require_parity, sym2_sl2, AParam, Parity, WeilSymbol};

/// The Weil-group part of a formal summand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeilToken {
    Symbol(WeilSymbol),
    /// `ρ ⊗ σ`, stored with ids in increasing order.
    TensorPair(WeilSymbol, WeilSymbol),
    SymSquare(WeilSymbol),
    AltSquare(WeilSymbol),
}

impl WeilToken {
    pub fn tensor(a: &WeilSymbol, b: &WeilSymbol) -> WeilToken {
        if a.id <= b.id {
            WeilToken::TensorPair(a.clone(), b.clone())
        } else {
            WeilToken::TensorPair(b.clone(), a.clone())
        }
    }

    /// Normal form, or `None` when the token is the zero representation.
    fn normalize(self) -> Option<WeilToken> {
        match self {
            WeilToken::SymSquare(r) if r.is_trivial() => Some(WeilToken::Symbol(r)),
            WeilToken::AltSquare(r) if r.dim == 1 => None,
            t => Some(t),
        }
    }

    /// Multiplicity of the trivial representation.
    pub fn trivial_mult(&self) -> u32 {
        match self {
            WeilToken::Symbol(r) => u32::from(r.is_trivial()),
            WeilToken::TensorPair(r, s) => u32::from(r.is_dual_of(s)),
            WeilToken::SymSquare(r) => u32::from(r.is_selfdual() && r.duality.is_orthogonal_like()),
            WeilToken::AltSquare(r) => u32::from(r.is_selfdual() && r.duality.is_symplectic_like()),
        }
    }

    pub fn dim(&self) -> u64 {
        match self {
            WeilToken::Symbol(r) => u64::from(r.dim),
            WeilToken::TensorPair(r, s) => u64::from(r.dim) * u64::from(s.dim),
            WeilToken::SymSquare(r) => u64::from(r.dim) * (u64::from(r.dim) + 1) / 2,
            WeilToken::AltSquare(r) => u64::from(r.dim) * (u64::from(r.dim) - 1) / 2,
        }
    }
}

impl fmt::Display for WeilToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeilToken::Symbol(r) => write!(f, "{}", r.id),
            WeilToken::TensorPair(r, s) => write!(f, "({}x{})", r.id, s.id),
            WeilToken::SymSquare(r) => write!(f, "Sym2({})", r.id),
            WeilToken::AltSquare(r) => write!(f, "Alt2({})", r.id),
        }
    }
}

impl Serialize for WeilToken {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A summand `token ⊠ [d_dim] ⊠ [a_dim]` with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FormalTerm {
    pub token: WeilToken,
    pub d_dim: u32,
    pub a_dim: u32,
    pub mult: u64,
}

/// A formal sum with merged, sorted terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FormalRep {
    terms: Vec<FormalTerm>,
}

impl FormalRep {
    pub fn new(terms: impl IntoIterator<Item = FormalTerm>) -> Self {
        let mut merged: BTreeMap<(WeilToken, u32, u32), u64> = BTreeMap::new();
        for t in terms {
            if t.mult == 0 || t.d_dim == 0 || t.a_dim == 0 {
                continue;
            }
            if let Some(token) = t.token.normalize() {
                *merged.entry((token, t.d_dim, t.a_dim)).or_insert(0) += t.mult;
            }
        }
        let terms =
            merged.into_iter().map(|((token, d_dim, a_dim), mult)| FormalTerm { token, d_dim, a_dim, mult }).collect();
        FormalRep { terms }
    }

    /// The formal sum underlying an A-parameter.
    pub fn from_param(p: &AParam) -> Self {
        FormalRep::new(p.terms().iter().map(|t| FormalTerm {
            token: WeilToken::Symbol(t.weil.clone()),
            d_dim: t.d_dim,
            a_dim: t.a_dim,
            mult: u64::from(t.mult),
        }))
    }

    pub fn terms(&self) -> &[FormalTerm] {
        &self.terms
    }

    pub fn dim(&self) -> u64 {
        self.terms.iter().map(|t| t.mult * t.token.dim() * u64::from(t.d_dim) * u64::from(t.a_dim)).sum()
    }

    pub fn sum(&self, other: &FormalRep) -> FormalRep {
        FormalRep::new(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    /// Raises every Arthur dimension by one.
    pub fn plus(&self) -> FormalRep {
        FormalRep::new(self.terms.iter().map(|t| FormalTerm { a_dim: t.a_dim + 1, ..t.clone() }))
    }
}

/// Order of the pole at `s0` of `L(s, r)`. The factor of `1 ⊠ [a] ⊠ [b]` is
/// `∏_{q<b} ζ(s + (a−1)/2 + (b−1−2q)/2)`, which has a pole at `s0` exactly
/// when `q = s0 + (a+b)/2 − 1` is an integer in `[0, b−1]`.
pub fn ord_at(r: &FormalRep, s0: Half) -> Result<u64> {
    if s0.twice() <= 0 {
        return Err(Error::Precondition(format!("evaluation point must be positive, got {s0}")));
    }
    let mut total = 0;
    for t in &r.terms {
        let tm = u64::from(t.token.trivial_mult());
        if tm == 0 {
            continue;
        }
        let twice_q = s0.twice() + i64::from(t.d_dim) + i64::from(t.a_dim) - 2;
        if twice_q % 2 == 0 && (0..i64::from(t.a_dim)).contains(&(twice_q / 2)) {
            total += tm * t.mult;
        }
    }
    Ok(total)
}

/// `m ⊗ n`, expanding both `SL_2` factors by Clebsch–Gordan.
pub fn tensor_formal(m: &AParam, n: &AParam) -> FormalRep {
    let mut out = Vec::new();
    for s in m.terms() {
        for t in n.terms() {
            let token = WeilToken::tensor(&s.weil, &t.weil);
            for d in clebsch_gordan(s.d_dim, t.d_dim) {
                for a in clebsch_gordan(s.a_dim, t.a_dim) {
                    out.push(FormalTerm {
                        token: token.clone(),
                        d_dim: d,
                        a_dim: a,
                        mult: u64::from(s.mult) * u64::from(t.mult),
                    });
                }
            }
        }
    }
    FormalRep::new(out)
}

/// Product of two `SL_2 × SL_2` constituent lists.
fn sl2_pairs(ds: &[u32], as_: &[u32]) -> Vec<(u32, u32)> {
    ds.iter().flat_map(|&d| as_.iter().map(move |&a| (d, a))).collect()
}

/// `Sym²([a] ⊠ [b]) = Sym²[a] ⊠ Sym²[b] + Λ²[a] ⊠ Λ²[b]`.
fn sym2_x(a: u32, b: u32) -> Vec<(u32, u32)> {
    let mut v = sl2_pairs(&sym2_sl2(a), &sym2_sl2(b));
    v.extend(sl2_pairs(&alt2_sl2(a), &alt2_sl2(b)));
    v
}

/// `Λ²([a] ⊠ [b]) = Sym²[a] ⊠ Λ²[b] + Λ²[a] ⊠ Sym²[b]`.
fn alt2_x(a: u32, b: u32) -> Vec<(u32, u32)> {
    let mut v = sl2_pairs(&sym2_sl2(a), &alt2_sl2(b));
    v.extend(sl2_pairs(&alt2_sl2(a), &sym2_sl2(b)));
    v
}

fn square_formal(m: &AParam, symmetric: bool) -> FormalRep {
    let mut out = Vec::new();
    let mut push = |token: WeilToken, pairs: Vec<(u32, u32)>, mult: u64| {
        for (d, a) in pairs {
            out.push(FormalTerm { token: token.clone(), d_dim: d, a_dim: a, mult });
        }
    };
    let terms = m.terms();
    for (k, s) in terms.iter().enumerate() {
        let c = u64::from(s.mult);
        let (same, other) = if symmetric {
            (sym2_x(s.d_dim, s.a_dim), alt2_x(s.d_dim, s.a_dim))
        } else {
            (alt2_x(s.d_dim, s.a_dim), sym2_x(s.d_dim, s.a_dim))
        };
        // Sym²(ρ ⊠ X) = Sym²ρ ⊠ Sym²X + Λ²ρ ⊠ Λ²X, and Λ² swaps the X-parts.
        push(WeilToken::SymSquare(s.weil.clone()), same, c);
        push(WeilToken::AltSquare(s.weil.clone()), other, c);
        let cross = sl2_pairs(&clebsch_gordan(s.d_dim, s.d_dim), &clebsch_gordan(s.a_dim, s.a_dim));
        push(WeilToken::tensor(&s.weil, &s.weil), cross, c * c.saturating_sub(1) / 2);
        for t in &terms[k + 1..] {
            let pairs = sl2_pairs(&clebsch_gordan(s.d_dim, t.d_dim), &clebsch_gordan(s.a_dim, t.a_dim));
            push(WeilToken::tensor(&s.weil, &t.weil), pairs, c * u64::from(t.mult));
        }
    }
    FormalRep::new(out)
}

/// `Sym²(m)`.
pub fn sym2_formal(m: &AParam) -> FormalRep {
    square_formal(m, true)
}

/// `Λ²(n)`.
pub fn alt2_formal(n: &AParam) -> FormalRep {
    square_formal(n, false)
}

/// Orders of numerator and denominator of a ratio, and their difference
/// (positive for a pole at `s = 0`, negative for a zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RatioOrder {
    pub numerator_order: u64,
    pub denominator_order: u64,
    pub signed_order: i64,
}

impl RatioOrder {
    pub fn new(numerator_order: u64, denominator_order: u64) -> Self {
        RatioOrder {
            numerator_order,
            denominator_order,
            signed_order: numerator_order as i64 - denominator_order as i64,
        }
    }
}

/// `L(M⊗N^∨, s+½) L(M^∨⊗N, s+½) / L(M⊗M^∨, s+1) L(N⊗N^∨, s+1)` at `s = 0`.
pub fn gl_ratio_order(m: &AParam, n: &AParam) -> Result<RatioOrder> {
    require_parity(m, &[Parity::Gl], "M")?;
    require_parity(n, &[Parity::Gl], "N")?;
    let (md, nd) = (dual_param(m), dual_param(n));
    let num = ord_at(&tensor_formal(m, &nd), Half::ONE_HALF)? + ord_at(&tensor_formal(&md, n), Half::ONE_HALF)?;
    let den = ord_at(&tensor_formal(m, &md), Half::ONE)? + ord_at(&tensor_formal(n, &nd), Half::ONE)?;
    Ok(RatioOrder::new(num, den))
}

/// `L(M⊗N, s+½) / L(Sym²M ⊕ Λ²N, s+1)` at `s = 0`.
pub fn bessel_ratio_order(m: &AParam, n: &AParam) -> Result<RatioOrder> {
    require_parity(m, &[Parity::Symplectic, Parity::ConjugateSymplectic], "M")?;
    require_parity(n, &[Parity::Orthogonal, Parity::ConjugateOrthogonal], "N")?;
    let num = ord_at(&tensor_formal(m, n), Half::ONE_HALF)?;
    let den = ord_at(&sym2_formal(m), Half::ONE)? + ord_at(&alt2_formal(n), Half::ONE)?;
    Ok(RatioOrder::new(num, den))
}

/// Pole order of [`gl_ratio_order`] for a relevant Deligne-trivial pair, as
/// `Σ_i dim Hom[M_i, N_{i−1}] + Hom[M_i, N_{i+1}] − Hom[M_i^+, N_{i−1}^-] − Hom[M_i^-, N_{i+1}^+]`
/// plus the boundary term `Hom[M_1^-, N_2^-] + Hom[N_1^-, M_2^-]`, with `i`
/// the Arthur dimension and Hom counted on `W(k)`-symbols.
///
/// Without the boundary term (see [`gl_hom_formula_printed_order`]) the count
/// falls short, e.g. by one on `M = 2·[1]`, `N = [2]`.
pub fn gl_hom_formula_order(m: &AParam, n: &AParam) -> Result<i64> {
    hom_formula(m, n, true)
}

/// The sum above without the boundary term.
pub fn gl_hom_formula_printed_order(m: &AParam, n: &AParam) -> Result<i64> {
    hom_formula(m, n, false)
}

fn hom_formula(m: &AParam, n: &AParam, boundary: bool) -> Result<i64> {
    require_parity(m, &[Parity::Gl], "M")?;
    require_parity(n, &[Parity::Gl], "N")?;
    if !m.is_deligne_trivial() || !n.is_deligne_trivial() {
        return Err(Error::Precondition("the Deligne SL2 must act trivially".to_string()));
    }
    let witness = check_relevant(m, n).into_witness()?;
    // Per Arthur index: symbol id → (M, M+, M-, N, N+, N-).
    type Row = [i64; 6];
    let mut rows: BTreeMap<usize, BTreeMap<String, Row>> = BTreeMap::new();
    for c in &witness.labels {
        let len = c.m.len().max(c.n.len());
        for i in 0..len {
            let row = rows.entry(i).or_default().entry(c.label.weil.id.clone()).or_insert([0; 6]);
            let vals = [c.m_at(i), c.mplus_at(i), c.mminus_at(i), c.n_at(i), c.nplus_at(i), c.nminus_at(i)];
            for (slot, v) in row.iter_mut().zip(vals) {
                *slot += i64::from(v);
            }
        }
    }
    let empty = BTreeMap::new();
    let at = |i: Option<usize>| i.and_then(|i| rows.get(&i)).unwrap_or(&empty);
    let hom = |a: &BTreeMap<String, Row>, ka: usize, b: &BTreeMap<String, Row>, kb: usize| -> i64 {
        a.iter().map(|(id, ra)| ra[ka] * b.get(id).map_or(0, |rb| rb[kb])).sum()
    };
    let top = rows.keys().next_back().copied().unwrap_or(0);
    let mut total = 0;
    for i in 0..=top {
        let here = at(Some(i));
        let below = at(i.checked_sub(1));
        let above = at(Some(i + 1));
        total += hom(here, 0, below, 3) + hom(here, 0, above, 3) - hom(here, 1, below, 5) - hom(here, 2, above, 4);
    }
    if boundary {
        let (first, second) = (at(Some(0)), at(Some(1)));
        total += hom(first, 2, second, 5) + hom(first, 5, second, 2);
    }
    Ok(total)
}
