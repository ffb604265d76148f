//! Global L-orders at `s = 0` as linear expressions in the unknown central
//! vanishing orders `z`.
//!
//! Convention: for cuspidal `Π1, Π2`, `L(Π1 ⊗ Π2, s)` has a simple pole at
//! `s = 1` when `Π2 ≅ Π1^∨`, no pole at `s = 0`, and a zero of order
//! `z(Π1, Π2) ≥ 0` at `s = ½`. The same applies to `Sym²Π`, `Λ²Π` and `Π`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::half::Half;
use crate::lfun::{alt2_formal, sym2_formal, tensor_formal, FormalRep, WeilToken};
use crate::relevance::check_relevant;
use crate::repcore::{AParam, ATerm, Parity, WeilSymbol};

/// A cuspidal symbol; the same data as a Weil symbol.
pub type CuspSymbol = WeilSymbol;

/// An unknown central vanishing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZToken {
    /// `z(A, B) = z(B, A)`, stored with ids in increasing order.
    Pair(String, String),
    Sym(String),
    Alt(String),
    Single(String),
}

impl ZToken {
    pub fn pair(a: &str, b: &str) -> ZToken {
        if a <= b {
            ZToken::Pair(a.to_string(), b.to_string())
        } else {
            ZToken::Pair(b.to_string(), a.to_string())
        }
    }

    fn of(token: &WeilToken) -> ZToken {
        match token {
            WeilToken::Symbol(r) => ZToken::Single(r.id.clone()),
            WeilToken::TensorPair(r, s) => ZToken::pair(&r.id, &s.id),
            WeilToken::SymSquare(r) => ZToken::Sym(r.id.clone()),
            WeilToken::AltSquare(r) => ZToken::Alt(r.id.clone()),
        }
    }
}

impl fmt::Display for ZToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZToken::Pair(a, b) => write!(f, "z({a},{b})"),
            ZToken::Sym(a) => write!(f, "zsym({a})"),
            ZToken::Alt(a) => write!(f, "zalt({a})"),
            ZToken::Single(a) => write!(f, "z({a})"),
        }
    }
}

impl FromStr for ZToken {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not an unknown like z(V,W), zsym(V), zalt(V) or z(V)"));
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let args: Vec<&str> = inner.split(',').map(str::trim).collect();
        if args.iter().any(|a| a.is_empty()) {
            return Err(bad());
        }
        match (head.trim(), args.as_slice()) {
            ("z", [a, b]) => Ok(ZToken::pair(a, b)),
            ("z", [a]) => Ok(ZToken::Single(a.to_string())),
            ("zsym", [a]) => Ok(ZToken::Sym(a.to_string())),
            ("zalt", [a]) => Ok(ZToken::Alt(a.to_string())),
            _ => Err(bad()),
        }
    }
}

/// `constant + Σ coef · z`, kept canonical (no zero coefficients).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderExpr {
    pub constant: i64,
    coeffs: BTreeMap<ZToken, i64>,
}

impl OrderExpr {
    pub fn constant(c: i64) -> Self {
        OrderExpr { constant: c, coeffs: BTreeMap::new() }
    }

    pub fn unknown(z: ZToken, coef: i64) -> Self {
        let mut e = OrderExpr::default();
        e.add_term(z, coef);
        e
    }

    fn add_term(&mut self, z: ZToken, coef: i64) {
        let entry = self.coeffs.entry(z.clone()).or_insert(0);
        *entry += coef;
        if *entry == 0 {
            self.coeffs.remove(&z);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<ZToken, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, z: &ZToken) -> i64 {
        self.coeffs.get(z).copied().unwrap_or(0)
    }

    /// Evaluates with every unknown bound; unbound unknowns are an error.
    pub fn evaluate(&self, bindings: &Bindings) -> Result<i64> {
        let mut total = self.constant;
        for (z, c) in &self.coeffs {
            let v = bindings.0.get(z).ok_or_else(|| Error::Precondition(format!("no binding for {z}")))?;
            total += c * v;
        }
        Ok(total)
    }

    /// The value with every unknown set to zero.
    pub fn at_zero(&self) -> i64 {
        self.constant
    }
}

impl Add for OrderExpr {
    type Output = OrderExpr;
    fn add(mut self, rhs: OrderExpr) -> OrderExpr {
        self.constant += rhs.constant;
        for (z, c) in rhs.coeffs {
            self.add_term(z, c);
        }
        self
    }
}

impl Neg for OrderExpr {
    type Output = OrderExpr;
    fn neg(self) -> OrderExpr {
        OrderExpr { constant: -self.constant, coeffs: self.coeffs.into_iter().map(|(z, c)| (z, -c)).collect() }
    }
}

impl Sub for OrderExpr {
    type Output = OrderExpr;
    fn sub(self, rhs: OrderExpr) -> OrderExpr {
        self + (-rhs)
    }
}

impl fmt::Display for OrderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, String)> = self.coeffs.iter().map(|(z, &c)| (c, z.to_string())).collect();
        if self.constant != 0 || parts.is_empty() {
            parts.push((self.constant, String::new()));
        }
        for (k, (c, name)) in parts.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            match k {
                0 if *c < 0 => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let abs = c.unsigned_abs();
            match (name.is_empty(), abs) {
                (true, _) => write!(f, "{abs}")?,
                (false, 1) => write!(f, "{name}")?,
                (false, _) => write!(f, "{abs}*{name}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for OrderExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Values for the unknowns, read from `{"z(V,W)": 1, ...}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings(BTreeMap<ZToken, i64>);

impl Bindings {
    pub fn new(values: impl IntoIterator<Item = (ZToken, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (z, v) in values {
            if v < 0 {
                return Err(Error::Precondition(format!("{z} must be nonnegative, got {v}")));
            }
            map.insert(z, v);
        }
        Ok(Bindings(map))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, i64> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let parsed = raw.into_iter().map(|(k, v)| Ok((k.parse::<ZToken>()?, v))).collect::<Result<Vec<_>>>()?;
        Bindings::new(parsed)
    }
}

fn block_order(token: &WeilToken, d: u32, shift: Half) -> Result<OrderExpr> {
    let pole = i64::from(token.trivial_mult());
    let z = || OrderExpr::unknown(ZToken::of(token), -1);
    if shift == Half::ONE_HALF {
        Ok(match d {
            0 => OrderExpr::default(),
            d if d % 2 == 0 => OrderExpr::constant(pole),
            _ => z(),
        })
    } else if shift == Half::ONE {
        Ok(match d {
            0 => OrderExpr::default(),
            d if d % 2 == 1 => OrderExpr::constant(pole),
            _ => z(),
        })
    } else {
        Err(Error::Precondition(format!("shift must be 1/2 or 1, got {shift}")))
    }
}

/// Order at `s = 0` of `L((Π1 ⊗ Π2) ⊠ Sym^{d−1}, s + shift)`.
pub fn global_block_order(p1: &CuspSymbol, p2: &CuspSymbol, d: u32, shift: Half) -> Result<OrderExpr> {
    block_order(&WeilToken::tensor(p1, p2), d, shift)
}

fn formal_order(r: &FormalRep, shift: Half) -> Result<OrderExpr> {
    let mut total = OrderExpr::default();
    for t in r.terms() {
        if t.d_dim != 1 {
            return Err(Error::Precondition("global parameters carry no Deligne factor".to_string()));
        }
        let block = block_order(&t.token, t.a_dim, shift)?;
        for _ in 0..t.mult {
            total = total + block.clone();
        }
    }
    Ok(total)
}

/// `L(M⊗N, s+½) / L(Sym²S ⊕ Λ²O, s+1)` at `s = 0`, where `S` is the
/// symplectic and `O` the orthogonal member of the pair.
pub fn global_ratio_order(m: &AParam, n: &AParam) -> Result<OrderExpr> {
    for p in [m, n] {
        p.require_discrete()?;
        if !p.is_deligne_trivial() {
            return Err(Error::Precondition("global parameters carry no Deligne factor".to_string()));
        }
    }
    let (s, o) = match (m.parity(), n.parity()) {
        (Parity::Symplectic, Parity::Orthogonal) => (m, n),
        (Parity::Orthogonal, Parity::Symplectic) => (n, m),
        (a, b) => return Err(Error::ParityMismatch(format!("need symplectic and orthogonal, got {a} and {b}"))),
    };
    check_relevant(m, n).into_witness()?;
    let num = formal_order(&tensor_formal(s, o), Half::ONE_HALF)?;
    let den = formal_order(&sym2_formal(s), Half::ONE)? + formal_order(&alt2_formal(o), Half::ONE)?;
    Ok(num - den)
}

/// The contribution of the diagonal pair `V ⊠ [b] ⊂ M_A`, `V ⊠ [b'] ⊂ N_A`:
/// `V⊗V ⊠ [b]⊗[b']` at `½` against `Sym²(V⊠[b])` and `Λ²(V⊠[b'])` at `1`.
pub fn diagonal_block_order(v: &CuspSymbol, b: u32, b_prime: u32) -> Result<OrderExpr> {
    if !v.is_selfdual() || v.duality.sign().is_none() {
        return Err(Error::Precondition(format!("`{}` must be selfdual", v.id)));
    }
    if b.abs_diff(b_prime) != 1 {
        return Err(Error::Precondition(format!("Arthur dims {b} and {b_prime} must differ by one")));
    }
    let term = |dim: u32| {
        let parity = match v.duality.composite(1, dim).sign() {
            Some(-1) => Parity::Symplectic,
            _ => Parity::Orthogonal,
        };
        if dim == 0 {
            Ok(AParam::empty(parity))
        } else {
            AParam::new(parity, [ATerm::new(v.clone(), 1, dim, 1)])
        }
    };
    let (mb, nb) = (term(b)?, term(b_prime)?);
    let num = formal_order(&tensor_formal(&mb, &nb), Half::ONE_HALF)?;
    let den = formal_order(&sym2_formal(&mb), Half::ONE)? + formal_order(&alt2_formal(&nb), Half::ONE)?;
    Ok(num - den)
}
