//! JSON file formats shared by the command-line tools.
//!
//! A parameter file is `{"parity": "symplectic", "param": "1:D1:A2",
//! "symbols": [...]}`, where `symbols` is optional and uses the symbol table
//! entry format.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repcore::{parse_param, AParam, Parity, SymbolTable, WeilSymbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub parity: Parity,
    pub param: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symbols: Vec<WeilSymbol>,
}

impl ParamFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("parameter file: {e}")))
    }

    /// Parses the parameter against its own symbols merged into `extra`.
    pub fn resolve(&self, extra: &SymbolTable) -> Result<(AParam, SymbolTable)> {
        let own = SymbolTable::new(self.symbols.iter().cloned())?;
        let table = extra.merged(&own)?;
        let p = parse_param(&self.param, &table, self.parity)?;
        Ok((p, table))
    }

    /// The file describing `p`, declaring every non-trivial symbol it uses
    /// together with its contragredient.
    pub fn describe(p: &AParam) -> Self {
        let mut symbols: Vec<WeilSymbol> =
            p.symbols().into_iter().flat_map(|s| [s.dual(), s]).filter(|s| !s.is_trivial()).collect();
        symbols.sort();
        symbols.dedup();
        ParamFile { parity: p.parity(), param: p.render(), symbols }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("parameter files always serialize")
    }
}
