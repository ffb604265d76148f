use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Id reserved for the trivial representation.
pub const TRIVIAL_ID: &str = "1";

/// Duality type of an irreducible representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Duality {
    Orthogonal,
    Symplectic,
    #[serde(alias = "conj-orthogonal")]
    ConjugateOrthogonal,
    #[serde(alias = "conj-symplectic")]
    ConjugateSymplectic,
    None,
}

impl Duality {
    /// `+1` for orthogonal types, `-1` for symplectic types, `None` when not selfdual.
    pub fn sign(self) -> Option<i8> {
        match self {
            Duality::Orthogonal | Duality::ConjugateOrthogonal => Some(1),
            Duality::Symplectic | Duality::ConjugateSymplectic => Some(-1),
            Duality::None => None,
        }
    }

    pub fn is_conjugate(self) -> bool {
        matches!(self, Duality::ConjugateOrthogonal | Duality::ConjugateSymplectic)
    }

    pub fn is_orthogonal_like(self) -> bool {
        self.sign() == Some(1)
    }

    pub fn is_symplectic_like(self) -> bool {
        self.sign() == Some(-1)
    }

    fn from_sign(sign: i8, conjugate: bool) -> Duality {
        match (sign > 0, conjugate) {
            (true, false) => Duality::Orthogonal,
            (false, false) => Duality::Symplectic,
            (true, true) => Duality::ConjugateOrthogonal,
            (false, true) => Duality::ConjugateSymplectic,
        }
    }

    /// Duality of `self ⊠ [a] ⊠ [b]`, where `[m]` is orthogonal for odd `m`
    /// and symplectic for even `m`.
    pub fn composite(self, a: u32, b: u32) -> Duality {
        match self.sign() {
            None => Duality::None,
            Some(s) => {
                let flips = (a + 1) % 2 + (b + 1) % 2;
                let sign = if flips.is_multiple_of(2) { s } else { -s };
                Duality::from_sign(sign, self.is_conjugate())
            }
        }
    }
}

/// An inert irreducible bounded representation of the Weil group (or a
/// cuspidal automorphic representation in global use).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeilSymbol {
    pub id: String,
    pub dim: u32,
    pub duality: Duality,
    pub dual_id: String,
}

impl WeilSymbol {
    /// Builds a symbol; `dual_id` defaults to `id`.
    pub fn new(id: &str, dim: u32, duality: Duality, dual_id: Option<&str>) -> Self {
        WeilSymbol { id: id.to_string(), dim, duality, dual_id: dual_id.unwrap_or(id).to_string() }
    }

    pub fn trivial() -> Self {
        WeilSymbol::new(TRIVIAL_ID, 1, Duality::Orthogonal, None)
    }

    pub fn is_trivial(&self) -> bool {
        self.id == TRIVIAL_ID
    }

    pub fn is_selfdual(&self) -> bool {
        self.dual_id == self.id
    }

    /// The contragredient symbol, built from the data carried here.
    pub fn dual(&self) -> WeilSymbol {
        WeilSymbol { id: self.dual_id.clone(), dim: self.dim, duality: self.duality, dual_id: self.id.clone() }
    }

    /// Whether `other` is the contragredient of `self`.
    pub fn is_dual_of(&self, other: &WeilSymbol) -> bool {
        self.dual_id == other.id
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::SymbolTable(format!("symbol `{}`: {msg}", self.id)));
        if self.id.is_empty() || self.id.contains(['+', ':', '*', ' ']) {
            return bad("ids must be non-empty and avoid `+`, `:`, `*` and spaces");
        }
        if self.dim == 0 {
            return bad("dimension must be positive");
        }
        if matches!(self.duality, Duality::Orthogonal | Duality::Symplectic) && !self.is_selfdual() {
            return bad("orthogonal and symplectic symbols must be their own dual");
        }
        if self.duality == Duality::None && self.is_selfdual() {
            return bad("a symbol of duality `none` needs a distinct dual_id");
        }
        if self.is_trivial() && *self != WeilSymbol::trivial() {
            return bad("the trivial symbol is 1-dimensional, orthogonal and selfdual");
        }
        Ok(())
    }
}

/// Declared symbols, always containing the trivial symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    symbols: BTreeMap<String, WeilSymbol>,
}

#[derive(Serialize, Deserialize)]
struct SymbolTableFile {
    symbols: Vec<WeilSymbol>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        let mut symbols = BTreeMap::new();
        symbols.insert(TRIVIAL_ID.to_string(), WeilSymbol::trivial());
        SymbolTable { symbols }
    }
}

impl SymbolTable {
    /// Validates the declarations: ids unique, the dual map an involution
    /// preserving dimension and duality type.
    pub fn new(declared: impl IntoIterator<Item = WeilSymbol>) -> Result<Self> {
        let mut table = SymbolTable::default();
        for sym in declared {
            sym.check()?;
            match table.symbols.get(&sym.id) {
                Some(existing) if existing == &sym => {}
                Some(_) if sym.is_trivial() => unreachable!("checked above"),
                Some(_) => return Err(Error::SymbolTable(format!("symbol `{}` declared twice", sym.id))),
                None => {
                    table.symbols.insert(sym.id.clone(), sym);
                }
            }
        }
        for sym in table.symbols.values() {
            let dual = table
                .symbols
                .get(&sym.dual_id)
                .ok_or_else(|| Error::SymbolTable(format!("dual `{}` of `{}` is not declared", sym.dual_id, sym.id)))?;
            if dual.dual_id != sym.id || dual.dim != sym.dim || dual.duality != sym.duality {
                return Err(Error::SymbolTable(format!(
                    "`{}` and `{}` are not a consistent dual pair",
                    sym.id, sym.dual_id
                )));
            }
        }
        Ok(table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SymbolTableFile = serde_json::from_str(text).map_err(|e| Error::SymbolTable(e.to_string()))?;
        SymbolTable::new(file.symbols)
    }

    pub fn to_json(&self) -> String {
        let file = SymbolTableFile { symbols: self.symbols.values().cloned().collect() };
        serde_json::to_string_pretty(&file).expect("symbol tables serialize")
    }

    pub fn get(&self, id: &str) -> Result<&WeilSymbol> {
        self.symbols.get(id).ok_or_else(|| Error::UndeclaredSymbol(id.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeilSymbol> {
        self.symbols.values()
    }

    /// Merges another table into this one, rejecting conflicting declarations.
    pub fn merged(&self, other: &SymbolTable) -> Result<SymbolTable> {
        SymbolTable::new(self.iter().chain(other.iter()).cloned())
    }
}
